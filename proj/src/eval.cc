// eval.cc
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

#include "ppbackoff/eval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ppbackoff/configuration.h"

namespace ppbackoff {
namespace {

constexpr BackoffLevel kRowLevels[] = {
    BackoffLevel::kNone, BackoffLevel::kBackoff1, BackoffLevel::kBackoff2,
    BackoffLevel::kCompetitive, BackoffLevel::kDefault};

const char *RowName(BackoffLevel l) {
  switch (l) {
    case BackoffLevel::kNone: return "No back-off";
    case BackoffLevel::kBackoff1: return "Back-off 1";
    case BackoffLevel::kBackoff2: return "Back-off 2";
    case BackoffLevel::kBackoff3: return "Back-off 3";
    case BackoffLevel::kCompetitive: return "Competitive";
    case BackoffLevel::kDefault: return "Default";
  }
  return "?";
}

// Levels an estimator of the given kind can report.
bool LevelApplies(int kind, BackoffLevel l) {
  if (l == BackoffLevel::kCompetitive) return kind > 1;
  if (l == BackoffLevel::kDefault) return kind == 1;
  return l != BackoffLevel::kBackoff3;
}

// Uniform integer in [0, n) from raw engine output; the mapping is fixed so
// splits are identical across standard libraries.
std::uint64_t Below(std::mt19937_64 &rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

void Shuffle(std::vector<std::size_t> &v, std::mt19937_64 &rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[Below(rng, i)]);
}

std::string Cell(std::int64_t v) { return std::to_string(v); }

}  // namespace

std::vector<TupleRecord> KindView(std::span<const TupleRecord> records,
                                  int kind) {
  std::vector<TupleRecord> out;
  for (const auto &r : records)
    if (r.kind >= kind) out.push_back(ProjectRecord(r, kind));
  return out;
}

std::string FormatPercent(std::int64_t num, std::int64_t den) {
  if (den <= 0) return "undefined";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f%%",
                100.0 * static_cast<double>(num) / static_cast<double>(den));
  return buf;
}

std::string FormatPercentTruncated(std::int64_t num, std::int64_t den) {
  if (den <= 0) return "undefined";
  // Integer arithmetic avoids 60.2 printing as 60.1999.
  const std::int64_t tenths = (num * 1000) / den;
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

// ---------------------------------------------------------------- splitting

Split StratifiedSplit(std::span<const TupleRecord> records,
                      const SplitSpec &spec) {
  for (double f : spec.test_fraction)
    if (!(f > 0.0 && f < 1.0))
      throw std::invalid_argument("test fractions must lie in (0,1)");
  {
    std::set<std::string> ids;
    for (const auto &r : records)
      if (!ids.insert(r.id).second)
        throw std::invalid_argument("duplicate record id '" + r.id + "'");
  }

  Split split;
  std::vector<bool> chosen(records.size(), false);
  std::mt19937_64 rng(spec.seed);
  for (int kind = kMaxKind; kind >= 1; --kind) {
    const double fraction = spec.test_fraction[kind - 1];
    std::map<int, std::vector<std::size_t>> strata;
    for (std::size_t i = 0; i < records.size(); ++i)
      if (records[i].kind >= kind)
        strata[ProjectCode(records[i].kind, records[i].config, kind)].push_back(i);
    for (auto &[code, members] : strata) {
      const auto quota = static_cast<std::int64_t>(
          std::llround(static_cast<double>(members.size()) * fraction));
      if (quota == 0) {
        split.warnings.push_back(
            "kind " + std::to_string(kind) + " config " + std::to_string(code) +
            ": stratum of " + std::to_string(members.size()) +
            " records contributes no test items");
        continue;
      }
      std::int64_t have = 0;
      std::vector<std::size_t> candidates;
      for (std::size_t i : members) {
        if (chosen[i]) ++have;
        else if (records[i].kind == kind) candidates.push_back(i);
      }
      Shuffle(candidates, rng);
      const auto need = std::max<std::int64_t>(0, quota - have);
      const auto take = std::min<std::size_t>(candidates.size(), need);
      for (std::size_t j = 0; j < take; ++j) chosen[candidates[j]] = true;
    }
  }

  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto &r = records[i];
    if (!chosen[i]) {
      split.train.push_back(r);
      continue;
    }
    split.test1.push_back(r);
    if (r.kind >= 2) split.test2.push_back(r);
    if (r.kind >= 3) split.test3.push_back(r);
  }
  return split;
}

// --------------------------------------------------------------- reporting

std::int64_t KindReport::total() const {
  std::int64_t n = 0;
  for (const auto &t : by_level) n += t.total;
  return n;
}

std::int64_t KindReport::correct() const {
  std::int64_t n = 0;
  for (const auto &t : by_level) n += t.correct;
  return n;
}

std::optional<double> KindReport::accuracy() const {
  const auto n = total();
  if (n == 0) return std::nullopt;
  return static_cast<double>(correct()) / static_cast<double>(n);
}

std::string EvalReport::ToText() const {
  std::ostringstream out;
  auto row = [&](const std::string &name, auto cells) {
    out << std::left << std::setw(13) << name;
    for (const auto &c : cells) out << std::right << std::setw(8) << c;
    out << '\n';
  };
  out << std::left << std::setw(13) << "";
  for (int k = 1; k <= kMaxKind; ++k)
    out << std::right << std::setw(16) << ("PP" + std::to_string(k));
  out << '\n';
  row("", std::vector<std::string>{"Total", "Correct", "Total", "Correct",
                                   "Total", "Correct"});
  for (BackoffLevel l : kRowLevels) {
    std::vector<std::string> cells;
    for (int k = 1; k <= kMaxKind; ++k) {
      if (!LevelApplies(k, l)) {
        cells.insert(cells.end(), {"NA", "NA"});
        continue;
      }
      cells.push_back(Cell(kind(k).at(l).total));
      cells.push_back(Cell(kind(k).at(l).correct));
    }
    row(RowName(l), cells);
  }
  std::vector<std::string> totals;
  for (int k = 1; k <= kMaxKind; ++k) {
    totals.push_back(Cell(kind(k).total()));
    totals.push_back(Cell(kind(k).correct()));
  }
  row("Total", totals);
  out << std::left << std::setw(13) << "Percent";
  for (int k = 1; k <= kMaxKind; ++k)
    out << std::right << std::setw(16)
        << FormatPercent(kind(k).correct(), kind(k).total());
  out << '\n';
  return out.str();
}

std::string EvalReport::ToTsv() const {
  std::ostringstream out;
  for (int k = 1; k <= kMaxKind; ++k) {
    for (BackoffLevel l : kRowLevels) {
      if (!LevelApplies(k, l)) continue;
      out << BackoffLevelName(l) << '\t' << k << '\t' << kind(k).at(l).total
          << '\t' << kind(k).at(l).correct << '\n';
    }
    out << "total\t" << k << '\t' << kind(k).total() << '\t'
        << kind(k).correct() << '\n';
  }
  return out.str();
}

EvalReport Evaluate(const FrequencyDatabase &db,
                    std::span<const TupleRecord> test1,
                    std::span<const TupleRecord> test2,
                    std::span<const TupleRecord> test3) {
  EvalReport report;
  const std::span<const TupleRecord> sets[] = {test1, test2, test3};
  for (int k = 1; k <= kMaxKind; ++k) {
    for (const auto &r : sets[k - 1]) {
      if (r.kind < k)
        throw ContractError("record " + r.id + " has fewer than " +
                            std::to_string(k) + " PPs");
      const TupleRecord item = ProjectRecord(r, k);
      const auto d = Estimate(db, item);
      auto &tally = report.kind(k).at(d.level);
      ++tally.total;
      if (d.config == item.config) ++tally.correct;
    }
  }
  return report;
}

EvalReport EvaluateTestFile(const FrequencyDatabase &db,
                            std::span<const TupleRecord> test) {
  std::vector<TupleRecord> two, three;
  for (const auto &r : test) {
    if (r.kind >= 2) two.push_back(r);
    if (r.kind >= 3) three.push_back(r);
  }
  return Evaluate(db, test, two, three);
}

// ---------------------------------------------------------------- baselines

std::int64_t ConfigCounts::total() const {
  std::int64_t n = 0;
  for (auto c : counts) n += c;
  return n;
}

int ConfigCounts::most_frequent() const {
  if (total() == 0) return 0;
  int best = 1;
  for (int c = 2; c <= static_cast<int>(counts.size()); ++c) {
    if (counts[c - 1] > counts[best - 1] ||
        (counts[c - 1] == counts[best - 1] && CompareLowness(kind, c, best) > 0))
      best = c;
  }
  return best;
}

ConfigCounts CountConfigurations(std::span<const TupleRecord> records,
                                 int kind) {
  ConfigCounts cc{kind, std::vector<std::int64_t>(NumConfigurations(kind), 0)};
  for (const auto &r : records)
    if (r.kind >= kind) ++cc.counts[ProjectCode(r.kind, r.config, kind) - 1];
  return cc;
}

double BaselineChance(int kind) {
  return 1.0 / static_cast<double>(NumConfigurations(kind));
}

std::optional<double> BaselineMostFrequent(const ConfigCounts &train,
                                           const ConfigCounts &test) {
  const int guess = train.most_frequent();
  if (guess == 0 || test.total() == 0) return std::nullopt;
  return static_cast<double>(test.counts.at(guess - 1)) /
         static_cast<double>(test.total());
}

std::array<BaselineRow, 3> Baselines(std::span<const TupleRecord> train,
                                     std::span<const TupleRecord> test) {
  std::array<BaselineRow, 3> rows;
  for (int k = 1; k <= kMaxKind; ++k) {
    auto &row = rows[k - 1];
    row.kind = k;
    row.train = CountConfigurations(train, k);
    row.test = CountConfigurations(test, k);
    row.most_frequent = row.train.most_frequent();
    row.correct = row.most_frequent ? row.test.counts[row.most_frequent - 1] : 0;
    row.accuracy = BaselineMostFrequent(row.train, row.test);
    row.chance = BaselineChance(k);
  }
  return rows;
}

std::string FormatBaselines(const std::array<BaselineRow, 3> &rows) {
  std::ostringstream out;
  auto line = [&](const std::string &name, const std::vector<std::string> &c) {
    out << std::left << std::setw(16) << name;
    for (const auto &s : c) out << std::right << std::setw(12) << s;
    out << '\n';
  };
  std::vector<std::string> head, total, most, pct, chance;
  for (const auto &r : rows) {
    head.push_back("PP" + std::to_string(r.kind) + "(" +
                   std::to_string(NumConfigurations(r.kind)) + ")");
    total.push_back(std::to_string(r.test.total()));
    most.push_back(r.most_frequent
                       ? std::to_string(r.correct) + "(" +
                             std::to_string(r.most_frequent) + ")"
                       : "NA");
    pct.push_back(r.most_frequent ? FormatPercent(r.correct, r.test.total())
                                  : "undefined");
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.2f%%", 100.0 * r.chance);
    chance.push_back(buf);
  }
  line("", head);
  line("Total", total);
  line("Most Frequent", most);
  line("Percent Correct", pct);
  line("Chance", chance);
  return out.str();
}

std::array<ConfigCounts, 3> LoadConfigCounts(std::istream &in) {
  std::array<ConfigCounts, 3> counts;
  std::array<std::vector<bool>, 3> seen;
  std::array<std::optional<std::int64_t>, 3> declared;
  for (int k = 1; k <= kMaxKind; ++k) {
    counts[k - 1] = {k, std::vector<std::int64_t>(NumConfigurations(k), 0)};
    seen[k - 1].assign(NumConfigurations(k), false);
  }
  auto number = [](const std::string &s, std::size_t line) {
    std::size_t used = 0;
    long long v = -1;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception &) {
    }
    if (used != s.size() || v < 0)
      throw FormatError(line, "expected a non-negative integer, got '" + s + "'");
    return static_cast<std::int64_t>(v);
  };
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto f = SplitTabs(line);
    if (f.size() != 3) throw FormatError(lineno, "expected 3 fields");
    if (f[0] == "total") {
      const auto k = number(f[1], lineno);
      if (k < 1 || k > kMaxKind) throw FormatError(lineno, "kind out of range");
      declared[k - 1] = number(f[2], lineno);
      continue;
    }
    const auto k = number(f[0], lineno);
    const auto c = number(f[1], lineno);
    if (!IsValidCode(static_cast<int>(k), static_cast<int>(c)))
      throw FormatError(lineno, "configuration out of range");
    if (seen[k - 1][c - 1]) throw FormatError(lineno, "duplicate configuration");
    seen[k - 1][c - 1] = true;
    counts[k - 1].counts[c - 1] = number(f[2], lineno);
  }
  for (int k = 1; k <= kMaxKind; ++k) {
    for (std::size_t c = 0; c < seen[k - 1].size(); ++c)
      if (!seen[k - 1][c])
        throw FormatError(lineno, "kind " + std::to_string(k) + " config " +
                                      std::to_string(c + 1) + " missing");
    if (!declared[k - 1])
      throw FormatError(lineno, "no declared total for kind " + std::to_string(k));
    if (*declared[k - 1] != counts[k - 1].total())
      throw FormatError(lineno, "kind " + std::to_string(k) + " counts sum to " +
                                    std::to_string(counts[k - 1].total()) +
                                    ", declared total is " +
                                    std::to_string(*declared[k - 1]));
  }
  return counts;
}

// ----------------------------------------------------------------- distance

DistanceTable DistanceAnalysis(std::span<const TupleRecord> records) {
  std::map<std::pair<std::string, int>, DistanceCell> cells;
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> by_prep;  // count, low
  for (const auto &r : records) {
    const auto &sites = r.sites();
    for (int i = 0; i < r.kind; ++i) {
      const auto &p = r.heads.words[SlotIndex(Slot::kP1) + 2 * i];
      auto &cell = cells[{p, i + 1}];
      cell.preposition = p;
      cell.distance = i + 1;
      const bool low = sites[i] != Site::kVerb;
      ++cell.count;
      cell.low += low;
      auto &bp = by_prep[p];
      ++bp.first;
      bp.second += low;
    }
  }
  DistanceTable table;
  for (auto &[key, cell] : cells) {
    auto &row = table.by_distance[cell.distance - 1];
    row.count += cell.count;
    row.low += cell.low;
    row.correct += cell.correct();
    table.cells.push_back(std::move(cell));
  }
  for (const auto &row : table.by_distance) {
    table.total.count += row.count;
    table.total.low += row.low;
    table.total.correct += row.correct;
  }
  for (const auto &[p, cl] : by_prep)
    table.preposition_only_correct += std::max(cl.second, cl.first - cl.second);
  return table;
}

DistanceTable DistanceTableFromRows(const std::array<DistanceRow, 3> &rows,
                                    std::int64_t preposition_only_correct) {
  DistanceTable table;
  table.by_distance = rows;
  for (const auto &row : rows) {
    table.total.count += row.count;
    table.total.low += row.low;
    table.total.correct += row.correct;
  }
  table.preposition_only_correct = preposition_only_correct;
  return table;
}

std::string DistanceTable::ToText() const {
  std::ostringstream out;
  auto line = [&](const std::string &name, const std::vector<std::string> &c) {
    out << std::left << std::setw(10) << name;
    for (const auto &s : c) out << std::right << std::setw(10) << s;
    out << '\n';
  };
  std::vector<std::string> count, correct, pct, low, pct_low;
  for (const auto &row : by_distance) {
    count.push_back(std::to_string(row.count));
    correct.push_back(std::to_string(row.correct));
    pct.push_back(FormatPercentTruncated(row.correct, row.count));
    low.push_back(std::to_string(row.low));
    pct_low.push_back(FormatPercentTruncated(row.low, row.count));
  }
  count.push_back(std::to_string(total.count));
  correct.push_back(std::to_string(total.correct));
  pct.push_back(FormatPercentTruncated(total.correct, total.count));
  low.push_back(std::to_string(total.low));
  pct_low.push_back(FormatPercentTruncated(total.low, total.count));
  auto with_all = [&](std::vector<std::string> v, const std::string &all) {
    v.push_back(all);
    return v;
  };

  line("", {"1 PP", "2 PP", "3 PP", "Total", "All"});
  line("Count", with_all(count, std::to_string(total.count)));
  line("Correct", with_all(correct, std::to_string(preposition_only_correct)));
  line("%", with_all(pct, FormatPercentTruncated(preposition_only_correct,
                                                  total.count)));
  out << '\n';
  line("", {"1 PP", "2 PP", "3 PP", "Total"});
  line("Count", count);
  line("Low", low);
  line("% Low", pct_low);
  if (!cells.empty()) {
    out << '\n';
    out << "prep\td\tcount\tlow\tcorrect\taccuracy\n";
    for (const auto &c : cells)
      out << c.preposition << '\t' << c.distance << '\t' << c.count << '\t'
          << c.low << '\t' << c.correct() << '\t'
          << FormatPercentTruncated(c.correct(), c.count) << '\n';
  }
  return out.str();
}

}  // namespace ppbackoff
