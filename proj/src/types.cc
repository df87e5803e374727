// types.cc
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

#include "ppbackoff/types.h"

#include <cctype>

namespace ppbackoff {

const char *SlotName(Slot s) {
  static const char *const kNames[kNumSlots] = {"v",  "n1", "p1", "n2",
                                                "p2", "n3", "p3"};
  return kNames[SlotIndex(s)];
}

const char *NormalizationName(Normalization n) {
  return n == Normalization::kLower ? "lower" : "none";
}

Normalization ParseNormalization(const std::string &name) {
  if (name == "lower") return Normalization::kLower;
  if (name == "none") return Normalization::kNone;
  throw std::invalid_argument("unknown normalization policy '" + name +
                              "' (expected lower|none)");
}

std::string NormalizeWord(const std::string &word, Normalization n) {
  if (n == Normalization::kNone) return word;
  std::string out = word;
  for (char &c : out) {
    auto u = static_cast<unsigned char>(c);
    if (u < 0x80) c = static_cast<char>(std::tolower(u));
  }
  return out;
}

}  // namespace ppbackoff
