// acceptance.cc
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
// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracle/brute_force.h"
#include "ppbackoff/configuration.h"
#include "ppbackoff/corpus.h"
#include "ppbackoff/counts.h"
#include "ppbackoff/estimator.h"
#include "ppbackoff/eval.h"
#include "support/fixtures.h"
#include "support/synthetic.h"

using namespace ppbackoff;

namespace {

// A criterion body fills `detail` and returns whether it holds.
using Check = std::function<bool(std::string &detail)>;

int failures = 0;

void Criterion(const std::string &name, double limit_seconds, const Check &check) {
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = check(detail);
  } catch (const std::exception &e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && secs >= limit_seconds) {
    ok = false;
    detail += " [over time limit]";
  }
  char timing[64];
  std::snprintf(timing, sizeof(timing), "%.3fs", secs);
  std::printf("%s  %-22s %s (%s)\n", ok ? "PASS" : "FAIL", name.c_str(),
              detail.c_str(), timing);
  failures += !ok;
}

std::string Fmt(const char *f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, x);
  return buf;
}

bool BaselineArithmetic(std::string &detail) {
  auto in = fixtures::Open("config_counts.tsv");
  const auto counts = LoadConfigCounts(in);
  const double want_mf[] = {61.2, 29.8, 18.5};
  const double want_chance[] = {50.0, 20.0, 7.14};
  bool ok = true;
  for (int k = 1; k <= 3; ++k) {
    const auto &c = counts[k - 1];
    const double mf = 100.0 * BaselineMostFrequent(c, c).value();
    const double chance = 100.0 * BaselineChance(k);
    ok &= std::abs(mf - want_mf[k - 1]) <= 0.05;
    ok &= std::abs(chance - want_chance[k - 1]) <= 0.005;
    detail += "PP" + std::to_string(k) + " " + Fmt("%.2f%%", mf) + " chance " +
              Fmt("%.2f%%", chance) + (k < 3 ? "; " : "");
  }
  return ok;
}

bool CountConsistency(std::string &detail) {
  auto in = fixtures::Open("config_counts.tsv");
  const auto counts = LoadConfigCounts(in);  // rejects undeclared sums
  const std::int64_t want[] = {19963, 4683, 907};
  bool ok = true;
  for (int k = 1; k <= 3; ++k) {
    ok &= static_cast<int>(counts[k - 1].counts.size()) == NumConfigurations(k);
    ok &= counts[k - 1].total() == want[k - 1];
    detail += std::to_string(counts[k - 1].counts.size()) + " counts sum to " +
              std::to_string(counts[k - 1].total()) + (k < 3 ? "; " : "");
  }
  return ok;
}

bool ReportArithmetic(std::string &detail) {
  const auto report = fixtures::ReadEvalRows();
  const std::string want[] = {"84.3%", "69.6%", "43.6%"};
  const std::int64_t want_rows[][2] = {{855, 1014}, {323, 464}, {41, 94}};
  bool ok = true;
  for (int k = 1; k <= 3; ++k) {
    const auto &r = report.kind(k);
    const std::string got = FormatPercent(r.correct(), r.total());
    ok &= got == want[k - 1];
    ok &= r.correct() == want_rows[k - 1][0] && r.total() == want_rows[k - 1][1];
    detail += std::to_string(r.correct()) + "/" + std::to_string(r.total()) + "=" + got +
              (k < 3 ? " " : "");
  }
  ok &= report.ToText().find("84.3%") != std::string::npos;
  return ok;
}

bool Same(const AttachmentDecision &d, const oracle::Decision &o) {
  if (d.config != o.config || static_cast<int>(d.level) != o.level ||
      d.support() != o.support || d.distribution.size() != o.p.size())
    return false;
  for (std::size_t i = 0; i < o.p.size(); ++i)
    if (std::abs(d.distribution[i] - o.p[i]) > 1e-12) return false;
  return true;
}

bool OracleEquivalence(std::string &detail) {
  std::mt19937_64 rng(20260101);
  std::int64_t queries = 0, agree = 0;
  std::map<int, std::int64_t> levels;
  for (int corpus_no = 0; corpus_no < 1000; ++corpus_no) {
    const auto vocab = synth::RandomVocab(rng, 8);
    const auto corpus = synth::RandomSmallCorpus(rng, vocab, 200);
    const auto db = BuildDatabase(corpus);
    const oracle::BruteForce bf(corpus);
    for (int q = 0; q < 10; ++q) {
      // Half the probes reuse training heads so deep levels are hit too.
      Heads h = synth::RandomHeads(rng, vocab, 3, 1);
      if (!corpus.empty() && q % 2 == 0) {
        const auto &r = corpus[synth::Pick(rng, corpus.size())];
        for (int i = 0; i < 1 + 2 * r.kind; ++i) h.words[i] = r.heads.words[i];
      }
      const auto &w = h.words;
      Heads two = h;
      two.words[5].clear();
      two.words[6].clear();
      const auto d1 = EstimatePp1(db, w[0], w[1], w[2]);
      const auto d2 = EstimatePp2(db, two);
      const auto d3 = EstimatePp3(db, h);
      agree += Same(d1, bf.B1(w[0], w[1], w[2]));
      agree += Same(d2, bf.B2(two));
      agree += Same(d3, bf.B3(h));
      queries += 3;
      ++levels[static_cast<int>(d1.level)];
      ++levels[static_cast<int>(d2.level)];
      ++levels[static_cast<int>(d3.level)];
    }
  }
  detail = std::to_string(agree) + "/" + std::to_string(queries) + " agree; levels";
  for (const auto &[l, n] : levels)
    detail += " " + std::string(BackoffLevelName(static_cast<BackoffLevel>(l))) + ":" +
              std::to_string(n);
  return agree == queries;
}

bool TruthTable(std::string &detail) {
  // Expected code per (c1, c2, c3) for evidence n2 <, =, > n1.
  struct Row {
    int c1, c2, c3, lt, eq, gt;
  };
  const Row rows[] = {
      {1, 1, 1, 1, 1, 1}, {1, 1, 2, 1, 1, 1}, {1, 2, 1, 4, 4, 4},
      {1, 2, 2, 4, 4, 4}, {2, 1, 1, 2, 2, 2}, {2, 1, 2, 2, 2, 2},
      {2, 2, 1, 3, 3, 3}, {2, 2, 2, 5, 3, 3}};
  int cases = 0, match = 0;
  for (const auto &r : rows) {
    const std::pair<int, int> evidence[] = {{4, 7}, {3, 3}, {7, 4}};
    const int want[] = {r.lt, r.eq, r.gt};
    for (int i = 0; i < 3; ++i) {
      ++cases;
      match += FindBestConfiguration(r.c1, r.c2, r.c3, evidence[i].first,
                                     evidence[i].second) == want[i];
    }
  }
  detail = std::to_string(match) + "/" + std::to_string(cases) + " cases";
  return match == cases && cases == 24;
}

bool Taxonomy(std::string &detail) {
  bool ok = true;
  for (int k = 1; k <= 3; ++k) {
    const auto e = EnumerateAttachments(k);
    ok &= static_cast<int>(e.size()) == NumConfigurations(k);
    std::set<std::vector<Site>> distinct(e.begin(), e.end());
    ok &= distinct.size() == e.size();
    for (const auto &s : e) ok &= CodeOf(s).has_value();
    detail += std::to_string(e.size()) + (k < 3 ? "/" : " configurations; ");
  }
  ok &= NumConfigurations(1) == 2 && NumConfigurations(2) == 5 && NumConfigurations(3) == 14;

  std::set<int> image;
  int pairs = 0;
  for (int c5 = 1; c5 <= 5; ++c5)
    for (Site s : RightFrontier(SitesOf(2, c5))) {
      ++pairs;
      if (auto c = ExtendCode(2, c5, s)) image.insert(*c);
    }
  ok &= pairs == 14 && image.size() == 14u && *image.begin() == 1 && *image.rbegin() == 14;
  detail += std::to_string(pairs) + " legal pairs -> " + std::to_string(image.size()) +
            " codes; ";

  auto in = fixtures::Open("exemplars.mrg");
  const auto records = ExtractTuples(in, Normalization::kLower);
  auto manifest = fixtures::Open("exemplars.manifest");
  std::map<std::string, std::pair<int, int>> want;
  std::string line;
  while (std::getline(manifest, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto f = SplitTabs(line);
    want[f[0]] = {std::stoi(f[1]), std::stoi(f[2])};
  }
  int correct = 0;
  for (const auto &r : records) {
    const auto it = want.find(r.id.substr(0, r.id.find('.')));
    correct += it != want.end() && it->second == std::make_pair(r.kind, r.config);
  }
  ok &= want.size() == 21u && records.size() == 21u && correct == 21;
  detail += "exemplars " + std::to_string(correct) + "/" + std::to_string(want.size());
  return ok;
}

bool Persistence(std::string &detail) {
  auto in = fixtures::Open("exemplars.mrg");
  const auto corpus = ExtractTuples(in, Normalization::kLower);
  const auto db = BuildDatabase(corpus);
  const std::string saved = SaveModel(db);
  const auto back = LoadModel(saved);

  std::int64_t queries = 0, same_queries = 0;
  for (int t = 0; t < kNumTables; ++t) {
    const Table table = static_cast<Table>(t);
    for (const auto &entry : db.FullTuples(table)) {
      Heads h;
      const auto slots = FullMask(table).slots();
      for (std::size_t i = 0; i < slots.size(); ++i) h[slots[i]] = entry.words[i];
      for (PatternMask m : LegalMasks(table)) {
        const auto a = db.Query(table, m, h), b = back.Query(table, m, h);
        ++queries;
        same_queries += a.total == b.total && a.per_config == b.per_config;
      }
    }
  }

  // Decisions on every record and on every record's heads crossed with
  // other records' prepositions.
  std::int64_t decisions = 0, same_decisions = 0;
  auto compare = [&](const TupleRecord &q) {
    const auto a = Estimate(db, q), b = Estimate(back, q);
    ++decisions;
    same_decisions += a.config == b.config && a.level == b.level &&
                      a.distribution == b.distribution;
  };
  for (const auto &r : corpus) {
    compare(r);
    for (const auto &other : corpus) {
      TupleRecord q = r;
      q.heads[Slot::kP1] = other.heads[Slot::kP1];
      compare(q);
    }
  }

  const bool bytes = SaveModel(back) == saved && SaveModel(BuildDatabase(corpus)) == saved;
  detail = std::to_string(same_queries) + "/" + std::to_string(queries) + " queries, " +
           std::to_string(same_decisions) + "/" + std::to_string(decisions) +
           " decisions, bytes " + (bytes ? "identical" : "differ");
  return queries > 0 && same_queries == queries && same_decisions == decisions && bytes;
}

bool SplitProperties(std::string &detail) {
  synth::BiasedSpec bs;
  bs.records = 2000;
  bs.seed = 77;
  const auto corpus = synth::BiasedCorpus(bs);
  SplitSpec spec;
  spec.seed = 12345;
  const auto a = StratifiedSplit(corpus, spec);
  const auto b = StratifiedSplit(corpus, spec);
  const bool deterministic = WriteTupleFile(a.train) == WriteTupleFile(b.train) &&
                             WriteTupleFile(a.test1) == WriteTupleFile(b.test1) &&
                             WriteTupleFile(a.test2) == WriteTupleFile(b.test2) &&
                             WriteTupleFile(a.test3) == WriteTupleFile(b.test3);
  auto ids = [](const std::vector<TupleRecord> &rs) {
    std::set<std::string> s;
    for (const auto &r : rs) s.insert(r.id);
    return s;
  };
  const auto train = ids(a.train), t1 = ids(a.test1), t2 = ids(a.test2), t3 = ids(a.test3);
  bool nested = true, disjoint = true;
  for (const auto &id : t3) nested &= t2.count(id) == 1;
  for (const auto &id : t2) nested &= t1.count(id) == 1;
  for (const auto &id : t1) disjoint &= train.count(id) == 0;
  const bool covers = train.size() + t1.size() == corpus.size();
  detail = "train " + std::to_string(train.size()) + ", test " + std::to_string(t1.size()) +
           "/" + std::to_string(t2.size()) + "/" + std::to_string(t3.size()) +
           (deterministic ? ", deterministic" : ", NOT deterministic") +
           (nested ? ", nested" : ", NOT nested") + (disjoint ? ", disjoint" : ", NOT disjoint");
  return deterministic && nested && disjoint && covers && !t3.empty();
}

bool LearningSignal(std::string &detail) {
  synth::BiasedSpec bs;
  bs.records = 6000;
  bs.bias = 0.85;
  bs.seed = 4242;
  const auto corpus = synth::BiasedCorpus(bs);
  SplitSpec spec;
  spec.seed = 99;
  const auto split = StratifiedSplit(corpus, spec);
  const auto db = BuildDatabase(split.train);
  const auto report = Evaluate(db, split.test1, split.test2, split.test3);
  bool ok = true;
  for (int k = 1; k <= 2; ++k) {
    const auto &test = k == 1 ? split.test1 : split.test2;
    const double model = 100.0 * report.kind(k).accuracy().value();
    const double base = 100.0 * BaselineMostFrequent(CountConfigurations(split.train, k),
                                                     CountConfigurations(test, k))
                                     .value();
    ok &= model - base >= 5.0;
    detail += "PP" + std::to_string(k) + " " + Fmt("%.1f%%", model) + " vs " +
              Fmt("%.1f%%", base) + (k < 2 ? "; " : "");
  }
  return ok;
}

bool Distance(std::string &detail) {
  const auto fx = fixtures::ReadDistanceRows();
  const std::string acc1 = FormatPercentTruncated(fx.rows[0].correct, fx.rows[0].count);
  const std::string want_low[] = {"60.2", "65.0", "75.1"};
  bool ok = acc1 == "74.7";
  detail = "d=1 " + acc1 + "%; %Low";
  const auto table = DistanceTableFromRows(fx.rows, fx.all_correct);
  for (int d = 0; d < 3; ++d) {
    const auto &row = table.by_distance[d];
    const std::string low = FormatPercentTruncated(row.low, row.count);
    ok &= low == want_low[d];
    detail += " " + low;
  }
  ok &= table.total.count == fx.all_count;
  return ok;
}

}  // namespace

int main() {
  Criterion("baseline-arithmetic", 1.0, BaselineArithmetic);
  Criterion("count-consistency", 1.0, CountConsistency);
  Criterion("report-arithmetic", 0, ReportArithmetic);
  Criterion("oracle-equivalence", 60.0, OracleEquivalence);
  Criterion("truth-table", 0, TruthTable);
  Criterion("taxonomy", 0, Taxonomy);
  Criterion("persistence", 0, Persistence);
  Criterion("split-properties", 0, SplitProperties);
  Criterion("learning-signal", 30.0, LearningSignal);
  Criterion("distance-analysis", 0, Distance);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
