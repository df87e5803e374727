// counts.h
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
// Frequency databases over head-word tuples.
//
// Each table holds, for every legal pattern mask and every observed value of
// the mask's slots, the number of training events per configuration and
// their total. Only full-tuple events are ever added; every sub-mask entry is
// the projection of those. Absent keys read as zero.
//
// Model files (UTF-8, LF):
//
//   ppbackoff-model v1
//   normalization=<lower|none>
//   kind<TAB>config<TAB>v<TAB>n1<TAB>p1[<TAB>n2<TAB>p2[<TAB>n3<TAB>p3]]<TAB>count
//   ...
//   checksum<TAB><16 hex digits>
//
// Count lines hold full tuples only and are sorted bytewise. Kind 4 lines
// carry the four-word (v, n1, p, n2) table. The checksum is FNV-1a 64 over
// every count line including its LF.

#ifndef PPBACKOFF_COUNTS_H_
#define PPBACKOFF_COUNTS_H_

#include <array>
#include <cstdint>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ppbackoff/corpus.h"
#include "ppbackoff/types.h"

namespace ppbackoff {

// kPp1..kPp3 are keyed by (v, n1, p1[, n2, p2[, n3, p3]]); kQuad by
// (v, n1, p, n2) stored in slots v, n1, p1, n2, where n2 is the object of p.
enum class Table : int { kPp1 = 0, kPp2, kPp3, kQuad };

inline constexpr int kNumTables = 4;

Table TableForKind(int kind);
int NumConfigs(Table t);
const char *TableName(Table t);

class PatternMask {
 public:
  constexpr PatternMask() = default;
  constexpr PatternMask(std::initializer_list<Slot> slots) {
    for (Slot s : slots) bits_ |= static_cast<std::uint8_t>(1u << SlotIndex(s));
  }

  constexpr bool Has(Slot s) const { return bits_ & (1u << SlotIndex(s)); }
  constexpr PatternMask Without(Slot s) const {
    PatternMask m = *this;
    m.bits_ &= static_cast<std::uint8_t>(~(1u << SlotIndex(s)));
    return m;
  }
  int size() const;
  std::uint8_t bits() const { return bits_; }
  // Present slots in slot order.
  std::vector<Slot> slots() const;
  std::string ToString() const;

  constexpr bool operator==(const PatternMask &) const = default;

 private:
  std::uint8_t bits_ = 0;
};

// Full-tuple mask first, then decreasing size.
std::span<const PatternMask> LegalMasks(Table t);
PatternMask FullMask(Table t);
bool IsLegalMask(Table t, PatternMask m);

struct Evidence {
  std::int64_t total = 0;
  std::vector<std::int64_t> per_config;  // index config-1

  std::int64_t count(int config) const {
    return per_config.empty() ? 0 : per_config.at(config - 1);
  }
};

struct FullTupleEntry {
  std::vector<std::string> words;
  Evidence evidence;
};

class FrequencyDatabase {
 public:
  explicit FrequencyDatabase(Normalization norm = Normalization::kLower);

  // Adds `n` events of `config` for the full tuple read from `heads`.
  void Add(Table t, const Heads &heads, int config, std::int64_t n = 1);

  // `words` are the mask's slot values in slot order. Throws ContractError
  // on an illegal mask or arity mismatch; absent keys give zero evidence.
  Evidence Query(Table t, PatternMask m,
                 std::span<const std::string> words) const;
  Evidence Query(Table t, PatternMask m, const Heads &heads) const;

  std::int64_t Count(Table t, PatternMask m,
                     std::span<const std::string> words, int config) const;
  std::int64_t Total(Table t, PatternMask m,
                     std::span<const std::string> words) const;

  // Stored full tuples, sorted by words.
  std::vector<FullTupleEntry> FullTuples(Table t) const;
  // Number of distinct keys stored under a mask.
  std::size_t NumKeys(Table t, PatternMask m) const;

  // Recounts every sub-mask table from the full tuples and checks the
  // total = sum-of-configs invariant. Throws std::logic_error on mismatch.
  void CheckConsistency() const;

  Normalization normalization() const { return norm_; }
  // Checksum of the canonical model body.
  std::string Fingerprint() const;
  bool empty() const;

 private:
  using KeyMap = std::unordered_map<std::string, Evidence>;
  // One map per legal mask, parallel to LegalMasks(t).
  std::array<std::vector<KeyMap>, kNumTables> tables_;
  Normalization norm_;
};

// Every record adds its own full tuple plus its projections: a kind-2/3
// record contributes its first-PP event to kPp1 (and a kind-3 record its
// first-two-PP event to kPp2). Each first-PP event with a known object noun
// is also added to kQuad. Throws std::invalid_argument if a record violates
// its invariants or is not normalized under `norm`.
FrequencyDatabase BuildDatabase(std::span<const TupleRecord> records,
                                Normalization norm = Normalization::kLower);

void SaveModel(const FrequencyDatabase &db, std::ostream &out);
std::string SaveModel(const FrequencyDatabase &db);

// Throws FormatError naming the offending line.
FrequencyDatabase LoadModel(std::istream &in);
FrequencyDatabase LoadModel(const std::string &contents);

}  // namespace ppbackoff

#endif  // PPBACKOFF_COUNTS_H_
