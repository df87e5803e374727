// eval.h
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
// Train/test splitting, scoring, baselines and the preposition-distance
// statistics.
//
// Throughout, the kind-k view of a record list is every record with at least
// k PPs, projected onto its first k PPs. A three-PP VP therefore also counts
// as a two-PP and a one-PP item.

#ifndef PPBACKOFF_EVAL_H_
#define PPBACKOFF_EVAL_H_

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppbackoff/corpus.h"
#include "ppbackoff/counts.h"
#include "ppbackoff/estimator.h"

namespace ppbackoff {

// Kind-k view: records with kind >= k projected to kind k.
std::vector<TupleRecord> KindView(std::span<const TupleRecord> records,
                                  int kind);

// "84.3%" style, rounded to one decimal.
std::string FormatPercent(std::int64_t num, std::int64_t den);
// One decimal, truncated toward zero: 706/939 -> "75.1".
std::string FormatPercentTruncated(std::int64_t num, std::int64_t den);

// ---------------------------------------------------------------- splitting

struct SplitSpec {
  // Test fraction of the kind-1, kind-2 and kind-3 views.
  std::array<double, 3> test_fraction = {0.05, 0.10, 0.10};
  std::uint64_t seed = 0;
};

// test3 is a subset of test2, which is a subset of test1, all holding whole
// source records; train is everything else. testK holds exactly the test1
// records with kind >= K.
struct Split {
  std::vector<TupleRecord> train;
  std::vector<TupleRecord> test1;
  std::vector<TupleRecord> test2;
  std::vector<TupleRecord> test3;
  std::vector<std::string> warnings;
};

// Stratified by configuration within each kind view. Kind 3 is sampled
// first, then kind 2 and kind 1 are topped up per stratum to
// round(stratum size * fraction), counting records already drawn for a
// higher kind. Deterministic in (records, spec). Throws
// std::invalid_argument on fractions outside (0,1) or duplicate ids.
Split StratifiedSplit(std::span<const TupleRecord> records,
                      const SplitSpec &spec);

// --------------------------------------------------------------- reporting

struct LevelTally {
  std::int64_t total = 0;
  std::int64_t correct = 0;
};

struct KindReport {
  // Indexed by BackoffLevel.
  std::array<LevelTally, 6> by_level{};

  LevelTally &at(BackoffLevel l) { return by_level[static_cast<int>(l)]; }
  const LevelTally &at(BackoffLevel l) const {
    return by_level[static_cast<int>(l)];
  }
  std::int64_t total() const;
  std::int64_t correct() const;
  // nullopt when no items were scored.
  std::optional<double> accuracy() const;
};

struct EvalReport {
  std::array<KindReport, 3> kinds{};

  KindReport &kind(int k) { return kinds.at(k - 1); }
  const KindReport &kind(int k) const { return kinds.at(k - 1); }

  // Rows No back-off / Back-off 1 / Back-off 2 / Competitive / Default /
  // Total / Percent, with a Total+Correct column pair per kind.
  std::string ToText() const;
  // One `level<TAB>kind<TAB>total<TAB>correct` line per row.
  std::string ToTsv() const;
};

// Scores testK on its kind-K projection with the matching estimator.
EvalReport Evaluate(const FrequencyDatabase &db,
                    std::span<const TupleRecord> test1,
                    std::span<const TupleRecord> test2,
                    std::span<const TupleRecord> test3);

// Scores every kind view of a single test file.
EvalReport EvaluateTestFile(const FrequencyDatabase &db,
                            std::span<const TupleRecord> test);

// ---------------------------------------------------------------- baselines

struct ConfigCounts {
  int kind = 1;
  std::vector<std::int64_t> counts;  // index config-1

  std::int64_t total() const;
  // Argmax configuration, ties to the lower attachment; 0 when empty.
  int most_frequent() const;
};

ConfigCounts CountConfigurations(std::span<const TupleRecord> records,
                                 int kind);

// 1 / number of configurations.
double BaselineChance(int kind);

// Accuracy of always predicting train's most frequent configuration on
// `test`; nullopt when either side is empty.
std::optional<double> BaselineMostFrequent(const ConfigCounts &train,
                                           const ConfigCounts &test);

struct BaselineRow {
  int kind = 1;
  ConfigCounts train;
  ConfigCounts test;
  int most_frequent = 0;
  std::int64_t correct = 0;
  std::optional<double> accuracy;
  double chance = 0.0;
};

std::array<BaselineRow, 3> Baselines(std::span<const TupleRecord> train,
                                     std::span<const TupleRecord> test);
std::string FormatBaselines(const std::array<BaselineRow, 3> &rows);

// Configuration count fixture: `kind<TAB>config<TAB>count` lines plus one
// `total<TAB>kind<TAB>N` line per kind; '#' lines are comments. Every
// configuration must be listed and each declared total must equal the sum.
// Throws FormatError.
std::array<ConfigCounts, 3> LoadConfigCounts(std::istream &in);

// ----------------------------------------------------------------- distance

// One (preposition, distance) cell. The prediction is the majority class,
// low (noun) attachment on ties.
struct DistanceCell {
  std::string preposition;
  int distance = 1;
  std::int64_t count = 0;
  std::int64_t low = 0;

  std::int64_t correct() const { return low >= count - low ? low : count - low; }
};

struct DistanceRow {
  std::int64_t count = 0;
  std::int64_t correct = 0;
  std::int64_t low = 0;
};

struct DistanceTable {
  std::vector<DistanceCell> cells;  // sorted by (preposition, distance)
  std::array<DistanceRow, 3> by_distance{};
  DistanceRow total;
  // Majority per preposition with distance ignored.
  std::int64_t preposition_only_correct = 0;

  // Accuracy and %Low summaries (truncated percentages) followed by the
  // per-cell breakdown.
  std::string ToText() const;
};

// Each preposition of each record is one event: its ordinal position d and
// whether it attaches low (to any noun). Figures are training-set figures:
// majorities are scored on the data they were computed from.
DistanceTable DistanceAnalysis(std::span<const TupleRecord> records);

// Summary-only table, e.g. from published counts.
DistanceTable DistanceTableFromRows(const std::array<DistanceRow, 3> &rows,
                                    std::int64_t preposition_only_correct);

}  // namespace ppbackoff

#endif  // PPBACKOFF_EVAL_H_
