// fixtures.h
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
// Readers for the published-number fixtures under tests/fixtures.

#ifndef PPBACKOFF_TESTS_SUPPORT_FIXTURES_H_
#define PPBACKOFF_TESTS_SUPPORT_FIXTURES_H_

#include <array>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>

#include "ppbackoff/corpus.h"
#include "ppbackoff/eval.h"

namespace fixtures {

inline std::string Path(const std::string &name) {
  return std::string(PPBACKOFF_FIXTURE_DIR) + "/" + name;
}

inline std::ifstream Open(const std::string &name) {
  std::ifstream in(Path(name));
  if (!in) throw std::runtime_error("cannot open fixture " + Path(name));
  return in;
}

// Rows `level kind total correct`, level named as in BackoffLevelName.
inline ppbackoff::EvalReport ReadEvalRows() {
  auto in = Open("eval_rows.tsv");
  ppbackoff::EvalReport report;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto f = ppbackoff::SplitTabs(line);
    int level = -1;
    for (int l = 0; l <= static_cast<int>(ppbackoff::BackoffLevel::kDefault); ++l)
      if (f.at(0) == ppbackoff::BackoffLevelName(static_cast<ppbackoff::BackoffLevel>(l)))
        level = l;
    if (level < 0) throw std::runtime_error("bad level in " + line);
    auto &tally = report.kind(std::stoi(f.at(1))).by_level[level];
    tally.total = std::stoll(f.at(2));
    tally.correct = std::stoll(f.at(3));
  }
  return report;
}

struct DistanceFixture {
  std::array<ppbackoff::DistanceRow, 3> rows{};
  std::int64_t all_count = 0;
  std::int64_t all_correct = 0;
};

inline DistanceFixture ReadDistanceRows() {
  auto in = Open("distance_rows.tsv");
  DistanceFixture fx;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto f = ppbackoff::SplitTabs(line);
    if (f.at(0) == "all") {
      fx.all_count = std::stoll(f.at(1));
      fx.all_correct = std::stoll(f.at(2));
      continue;
    }
    auto &row = fx.rows.at(std::stoi(f.at(0)) - 1);
    row.count = std::stoll(f.at(1));
    row.correct = std::stoll(f.at(2));
    row.low = std::stoll(f.at(3));
  }
  return fx;
}

}  // namespace fixtures

#endif  // PPBACKOFF_TESTS_SUPPORT_FIXTURES_H_
