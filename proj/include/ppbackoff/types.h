// types.h
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Copyright 2026 The ppbackoff Authors.
//
// \file
// Head-word slots shared by the corpus, count and estimator layers, plus the
// exception types used throughout the library.

#ifndef PPBACKOFF_TYPES_H_
#define PPBACKOFF_TYPES_H_

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace ppbackoff {

// Head-word positions of a VP with up to three PPs, in linear order:
// verb, direct object, then (preposition, object noun) pairs.
enum class Slot : int { kV = 0, kN1, kP1, kN2, kP2, kN3, kP3 };

inline constexpr int kNumSlots = 7;

inline constexpr int SlotIndex(Slot s) { return static_cast<int>(s); }

const char *SlotName(Slot s);

// Head words indexed by Slot. An empty string marks an unset slot.
struct Heads {
  std::array<std::string, kNumSlots> words;

  std::string &operator[](Slot s) { return words[SlotIndex(s)]; }
  const std::string &operator[](Slot s) const { return words[SlotIndex(s)]; }

  bool operator==(const Heads &) const = default;
};

// Word case policy applied to every extracted head word.
enum class Normalization { kLower, kNone };

const char *NormalizationName(Normalization n);
// Parses "lower" / "none"; throws std::invalid_argument otherwise.
Normalization ParseNormalization(const std::string &name);

// Applies the policy to one word. Only ASCII letters are folded.
std::string NormalizeWord(const std::string &word, Normalization n);

// Caller broke a documented precondition (illegal mask, bad arity, ...).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed external data: tuple files, model files, fixtures.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t line, const std::string &what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ppbackoff

#endif  // PPBACKOFF_TYPES_H_
