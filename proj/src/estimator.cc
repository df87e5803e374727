// estimator.cc
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

#include "ppbackoff/estimator.h"

#include <optional>
#include <span>

#include "ppbackoff/configuration.h"

namespace ppbackoff {
namespace {

using S = Slot;
using MaskGroup = std::vector<PatternMask>;

// Cascade levels (after the full tuple) per table.
const std::vector<MaskGroup> &BackoffGroups(Table t) {
  static const std::vector<MaskGroup> kPp1 = {
      {{S::kV, S::kP1}, {S::kN1, S::kP1}},
      {{S::kP1}}};
  static const std::vector<MaskGroup> kQuad = {
      {{S::kV, S::kN1, S::kP1}, {S::kV, S::kP1, S::kN2}, {S::kN1, S::kP1, S::kN2}},
      {{S::kV, S::kP1}, {S::kN1, S::kP1}, {S::kP1, S::kN2}},
      {{S::kP1}}};
  static const std::vector<MaskGroup> kPp2 = {
      {{S::kN1, S::kP1, S::kN2, S::kP2},
       {S::kV, S::kP1, S::kN2, S::kP2},
       {S::kV, S::kN1, S::kP1, S::kP2}},
      {{S::kP1, S::kN2, S::kP2},
       {S::kV, S::kP1, S::kP2},
       {S::kN1, S::kP1, S::kP2}}};
  // Drop one, then two, of v, n1, n2, n3.
  static const std::vector<MaskGroup> kPp3 = [] {
    const S droppable[] = {S::kV, S::kN1, S::kN2, S::kN3};
    const PatternMask full = FullMask(Table::kPp3);
    std::vector<MaskGroup> groups(2);
    for (int i = 0; i < 4; ++i) groups[0].push_back(full.Without(droppable[i]));
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        groups[1].push_back(full.Without(droppable[i]).Without(droppable[j]));
    return groups;
  }();
  switch (t) {
    case Table::kPp1: return kPp1;
    case Table::kPp2: return kPp2;
    case Table::kPp3: return kPp3;
    case Table::kQuad: return kQuad;
  }
  throw ContractError("unknown table");
}

int KindOf(Table t) { return t == Table::kQuad ? 1 : static_cast<int>(t) + 1; }

// Argmax over pooled numerators; ties to the lower attachment.
int ArgmaxLowest(int kind, std::span<const std::int64_t> numerators) {
  int best = 1;
  for (int c = 2; c <= static_cast<int>(numerators.size()); ++c) {
    const auto a = numerators[c - 1];
    const auto b = numerators[best - 1];
    if (a > b || (a == b && CompareLowness(kind, c, best) > 0)) best = c;
  }
  return best;
}

AttachmentDecision FromCounts(int kind, BackoffLevel level,
                              std::vector<std::int64_t> numerators,
                              std::int64_t denominator) {
  AttachmentDecision d;
  d.kind = kind;
  d.level = level;
  d.config = ArgmaxLowest(kind, numerators);
  d.distribution.reserve(numerators.size());
  for (auto n : numerators)
    d.distribution.push_back(static_cast<double>(n) /
                             static_cast<double>(denominator));
  d.numerators = std::move(numerators);
  d.denominator = denominator;
  return d;
}

AttachmentDecision Degenerate(int kind, int config, BackoffLevel level) {
  AttachmentDecision d;
  d.kind = kind;
  d.config = config;
  d.level = level;
  d.distribution.assign(NumConfigurations(kind), 0.0);
  d.distribution[config - 1] = 1.0;
  d.numerators.assign(NumConfigurations(kind), 0);
  return d;
}

// Runs the standard levels; nullopt when every denominator is zero.
std::optional<AttachmentDecision> Cascade(const FrequencyDatabase &db,
                                          Table t, const Heads &heads) {
  const int kind = KindOf(t);
  const int nconf = NumConfigs(t);
  auto level_of = [](std::size_t depth) {
    return static_cast<BackoffLevel>(static_cast<int>(depth));
  };
  Evidence full = db.Query(t, FullMask(t), heads);
  if (full.total > 0)
    return FromCounts(kind, BackoffLevel::kNone, full.per_config, full.total);
  const auto &groups = BackoffGroups(t);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    std::vector<std::int64_t> num(nconf, 0);
    std::int64_t den = 0;
    for (const PatternMask &m : groups[g]) {
      Evidence e = db.Query(t, m, heads);
      for (int c = 0; c < nconf; ++c) num[c] += e.per_config[c];
      den += e.total;
    }
    if (den > 0) return FromCounts(kind, level_of(g + 1), std::move(num), den);
  }
  return std::nullopt;
}

Heads TripleHeads(const std::string &v, const std::string &n,
                  const std::string &p) {
  Heads h;
  h[S::kV] = v;
  h[S::kN1] = n;
  h[S::kP1] = p;
  return h;
}

}  // namespace

const char *BackoffLevelName(BackoffLevel level) {
  switch (level) {
    case BackoffLevel::kNone: return "0";
    case BackoffLevel::kBackoff1: return "1";
    case BackoffLevel::kBackoff2: return "2";
    case BackoffLevel::kBackoff3: return "3";
    case BackoffLevel::kCompetitive: return "competitive";
    case BackoffLevel::kDefault: return "default";
  }
  return "?";
}

AttachmentDecision EstimateCb4(const FrequencyDatabase &db,
                               const std::string &v, const std::string &n1,
                               const std::string &p, const std::string &n2) {
  Heads h = TripleHeads(v, n1, p);
  h[S::kN2] = n2;
  if (auto d = Cascade(db, Table::kQuad, h)) return *d;
  return Degenerate(1, 2, BackoffLevel::kDefault);
}

AttachmentDecision EstimatePp1(const FrequencyDatabase &db,
                               const std::string &v, const std::string &n,
                               const std::string &p) {
  if (auto d = Cascade(db, Table::kPp1, TripleHeads(v, n, p))) return *d;
  return Degenerate(1, 2, BackoffLevel::kDefault);
}

AttachmentDecision EstimatePp2(const FrequencyDatabase &db,
                               const Heads &heads) {
  if (auto d = Cascade(db, Table::kPp2, heads)) return *d;
  return CompetitivePp2(db, heads);
}

AttachmentDecision CompetitivePp2(const FrequencyDatabase &db,
                                  const Heads &heads) {
  const auto &v = heads[S::kV];
  const auto first = EstimatePp1(db, v, heads[S::kN1], heads[S::kP1]);
  const auto wrt_n2 = EstimatePp1(db, v, heads[S::kN2], heads[S::kP2]);
  const auto wrt_n1 = EstimatePp1(db, v, heads[S::kN1], heads[S::kP2]);
  const int code = FindBestConfiguration(first.config, wrt_n2.config,
                                         wrt_n1.config, wrt_n2.support(),
                                         wrt_n1.support());
  return Degenerate(2, code, BackoffLevel::kCompetitive);
}

int FindBestConfiguration(int first, int second_wrt_n2, int second_wrt_n1,
                          std::int64_t support_n2, std::int64_t support_n1) {
  auto check = [](int c) {
    if (c != 1 && c != 2)
      throw ContractError("single-PP preference must be 1 or 2, got " +
                          std::to_string(c));
  };
  check(first);
  check(second_wrt_n2);
  check(second_wrt_n1);
  if (first == 1) return second_wrt_n2 == 1 ? 1 : 4;
  if (second_wrt_n2 == 1) return 2;
  if (second_wrt_n1 == 1) return 3;
  return support_n2 < support_n1 ? 5 : 3;
}

AttachmentDecision EstimatePp3(const FrequencyDatabase &db,
                               const Heads &heads) {
  if (auto d = Cascade(db, Table::kPp3, heads)) return *d;
  return CompetitivePp3(db, heads);
}

AttachmentDecision CompetitivePp3(const FrequencyDatabase &db,
                                  const Heads &heads) {
  Heads two = heads;
  two[S::kN3].clear();
  two[S::kP3].clear();
  const int first_two = EstimatePp2(db, two).config;

  Site site = Site::kVerb;
  std::int64_t best = -1;
  for (Site s : RightFrontier(SitesOf(2, first_two))) {
    if (s == Site::kVerb) continue;
    const auto &noun = heads.words[SlotIndex(S::kN1) + 2 * (static_cast<int>(s) - 1)];
    const auto pref = EstimatePp1(db, heads[S::kV], noun, heads[S::kP3]);
    if (pref.config != 2) continue;
    // Frontier order is left to right, so >= keeps the rightmost on ties.
    if (pref.support() >= best) {
      best = pref.support();
      site = s;
    }
  }
  return Degenerate(3, *ExtendCode(2, first_two, site),
                    BackoffLevel::kCompetitive);
}

AttachmentDecision Estimate(const FrequencyDatabase &db,
                            const TupleRecord &query) {
  switch (query.kind) {
    case 1:
      return EstimatePp1(db, query.heads[S::kV], query.heads[S::kN1],
                         query.heads[S::kP1]);
    case 2: return EstimatePp2(db, query.heads);
    case 3: return EstimatePp3(db, query.heads);
  }
  throw ContractError("query kind must be 1..3");
}

}  // namespace ppbackoff
