// counts_test.cc
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

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracle/brute_force.h"
#include "ppbackoff/counts.h"
#include "support/synthetic.h"

using namespace ppbackoff;

namespace {

TupleRecord Kind1(const std::string &id, int config, const std::string &v,
                  const std::string &n, const std::string &p) {
  TupleRecord r{id, 1, config, {}, ""};
  r.heads.words = {v, n, p, "", "", "", ""};
  return r;
}

std::vector<std::string> WordsFor(PatternMask m, const Heads &h) {
  std::vector<std::string> w;
  for (Slot s : m.slots()) w.push_back(h[s]);
  return w;
}

oracle::BruteForce::Pattern PatternFor(PatternMask m, const Heads &h) {
  oracle::BruteForce::Pattern p;
  for (Slot s : m.slots()) p.emplace_back(SlotName(s), h[s]);
  return p;
}

Heads QuadHeads(const TupleRecord &r) {
  Heads h;
  for (int i = 0; i < 3; ++i) h.words[i] = r.heads.words[i];
  h[Slot::kN2] = r.kind > 1 ? r.heads[Slot::kN2] : r.final_noun;
  return h;
}

std::vector<TupleRecord> FixtureCorpus() {
  std::ifstream in(std::string(PPBACKOFF_FIXTURE_DIR) + "/exemplars.mrg");
  return ExtractTuples(in, Normalization::kLower);
}

}  // namespace

TEST_CASE("empty database answers zero") {
  FrequencyDatabase db = BuildDatabase({});
  CHECK(db.empty());
  const std::vector<std::string> w = {"read", "article", "about"};
  CHECK(db.Total(Table::kPp1, FullMask(Table::kPp1), w) == 0);
  CHECK(db.Count(Table::kPp1, FullMask(Table::kPp1), w, 2) == 0);
  CHECK(db.Query(Table::kPp1, {Slot::kP1}, std::vector<std::string>{"x"}).count(1) == 0);
}

TEST_CASE("identical records accumulate") {
  std::vector<TupleRecord> rs;
  for (int i = 0; i < 3; ++i) rs.push_back(Kind1("r" + std::to_string(i), 2, "read", "article", "about"));
  FrequencyDatabase db = BuildDatabase(rs);
  const std::vector<std::string> w = {"read", "article", "about"};
  CHECK(db.Count(Table::kPp1, FullMask(Table::kPp1), w, 2) == 3);
  CHECK(db.Total(Table::kPp1, FullMask(Table::kPp1), w) == 3);
  CHECK(db.Count(Table::kPp1, FullMask(Table::kPp1), w, 1) == 0);
}

TEST_CASE("multi-PP records also count as their first PP") {
  TupleRecord r{"a", 2, 3, {}, "z"};
  r.heads.words = {"v", "n1", "p1", "n2", "p2", "", ""};
  FrequencyDatabase db = BuildDatabase(std::vector<TupleRecord>{r});
  const std::vector<std::string> w = {"v", "n1", "p1"};
  CHECK(db.Count(Table::kPp1, FullMask(Table::kPp1), w, 2) == 1);
  CHECK(db.Total(Table::kPp1, FullMask(Table::kPp1), w) == 1);
  CHECK(db.Count(Table::kQuad, FullMask(Table::kQuad),
                 std::vector<std::string>{"v", "n1", "p1", "n2"}, 2) == 1);
}

TEST_CASE("mask legality") {
  CHECK(LegalMasks(Table::kPp1).size() == 4u);
  CHECK(LegalMasks(Table::kPp2).size() == 7u);
  CHECK(LegalMasks(Table::kPp3).size() == 11u);
  CHECK(LegalMasks(Table::kQuad).size() == 8u);
  for (int t = 0; t < kNumTables; ++t) {
    const Table table = static_cast<Table>(t);
    CHECK(LegalMasks(table).front() == FullMask(table));
    for (PatternMask m : LegalMasks(table)) {
      CHECK(m.Has(Slot::kP1));
      if (table == Table::kPp2 || table == Table::kPp3) CHECK(m.Has(Slot::kP2));
      if (table == Table::kPp3) CHECK(m.Has(Slot::kP3));
    }
  }
  FrequencyDatabase db;
  const std::vector<std::string> one = {"x"};
  CHECK_THROWS_AS(db.Query(Table::kPp1, {Slot::kV}, one), ContractError);
  CHECK_THROWS_AS(db.Query(Table::kPp2, {Slot::kP1}, one), ContractError);
  CHECK_THROWS_AS(db.Query(Table::kPp1, {Slot::kV, Slot::kP1}, one), ContractError);
  CHECK_THROWS_AS(db.Add(Table::kPp1, Heads{}, 3), ContractError);
}

TEST_CASE("normalization mismatch is rejected") {
  auto r = Kind1("a", 1, "Read", "article", "about");
  CHECK_THROWS_AS(BuildDatabase(std::vector<TupleRecord>{r}, Normalization::kLower),
                  std::invalid_argument);
  CHECK_NOTHROW(BuildDatabase(std::vector<TupleRecord>{r}, Normalization::kNone));
}

TEST_CASE("property: every masked count equals a raw recount") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto vocab = synth::RandomVocab(rng, 5);
    const auto corpus = synth::RandomSmallCorpus(rng, vocab, 80);
    const oracle::BruteForce bf(corpus);
    const FrequencyDatabase db = BuildDatabase(corpus);
    CHECK_NOTHROW(db.CheckConsistency());
    for (int q = 0; q < 40; ++q) {
      const int kind = 1 + static_cast<int>(synth::Pick(rng, 3));
      TupleRecord probe{"q", kind, 1, synth::RandomHeads(rng, vocab, kind, 1),
                        synth::Word("n", synth::Pick(rng, vocab.size[kNumSlots]))};
      struct Case {
        Table table;
        int oracle_table;
        Heads heads;
      };
      std::vector<Case> cases = {{TableForKind(kind), kind, probe.heads}};
      if (kind == 1) cases.push_back({Table::kQuad, 4, QuadHeads(probe)});
      for (const auto &c : cases) {
        for (PatternMask m : LegalMasks(c.table)) {
          const auto ev = db.Query(c.table, m, c.heads);
          const auto pat = PatternFor(m, c.heads);
          CHECK(ev.total == bf.F(c.oracle_table, 0, pat));
          for (int conf = 1; conf <= NumConfigs(c.table); ++conf)
            CHECK(ev.count(conf) == bf.F(c.oracle_table, conf, pat));
        }
      }
    }
  }
}

TEST_CASE("property: dropping slots never lowers a total") {
  std::mt19937_64 rng(5);
  const auto vocab = synth::RandomVocab(rng, 4);
  const auto corpus = synth::RandomSmallCorpus(rng, vocab, 200);
  const FrequencyDatabase db = BuildDatabase(corpus);
  for (const auto &r : corpus) {
    const Table t = TableForKind(r.kind);
    for (PatternMask big : LegalMasks(t))
      for (PatternMask small : LegalMasks(t)) {
        if ((big.bits() & small.bits()) != small.bits()) continue;
        CHECK(db.Total(t, small, WordsFor(small, r.heads)) >=
              db.Total(t, big, WordsFor(big, r.heads)));
      }
  }
}

TEST_CASE("model round trip on the exemplar corpus") {
  const auto corpus = FixtureCorpus();
  REQUIRE(corpus.size() == 21u);
  const FrequencyDatabase db = BuildDatabase(corpus);
  const std::string saved = SaveModel(db);
  const FrequencyDatabase back = LoadModel(saved);
  CHECK(SaveModel(back) == saved);
  CHECK(back.Fingerprint() == db.Fingerprint());

  // Exhaustive sweep: every mask over every stored tuple's words.
  for (int t = 0; t < kNumTables; ++t) {
    const Table table = static_cast<Table>(t);
    const auto tuples = db.FullTuples(table);
    CHECK(tuples.size() == back.FullTuples(table).size());
    for (const auto &entry : tuples) {
      Heads h;
      const auto slots = FullMask(table).slots();
      for (std::size_t i = 0; i < slots.size(); ++i) h[slots[i]] = entry.words[i];
      for (PatternMask m : LegalMasks(table)) {
        const auto a = db.Query(table, m, h);
        const auto b = back.Query(table, m, h);
        CHECK(a.total == b.total);
        CHECK(a.per_config == b.per_config);
      }
    }
  }

  // Input order does not affect the bytes.
  auto reversed = corpus;
  std::reverse(reversed.begin(), reversed.end());
  CHECK(SaveModel(BuildDatabase(reversed)) == saved);
}

TEST_CASE("empty model") {
  const std::string saved = SaveModel(BuildDatabase({}));
  std::istringstream in(saved);
  std::string l1, l2, l3, l4;
  std::getline(in, l1);
  std::getline(in, l2);
  std::getline(in, l3);
  CHECK(l1 == "ppbackoff-model v1");
  CHECK(l2 == "normalization=lower");
  CHECK(l3.rfind("checksum\t", 0) == 0);
  CHECK_FALSE(std::getline(in, l4));
  CHECK(LoadModel(saved).empty());
}

namespace {

std::size_t LoadErrorLine(const std::string &text) {
  try {
    LoadModel(text);
  } catch (const FormatError &e) {
    return e.line();
  }
  return 0;
}

std::vector<std::string> Lines(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l)) out.push_back(l);
  return out;
}

std::string Join(const std::vector<std::string> &lines) {
  std::string s;
  for (const auto &l : lines) s += l + "\n";
  return s;
}

}  // namespace

TEST_CASE("model load errors") {
  const auto lines = Lines(SaveModel(BuildDatabase(FixtureCorpus())));
  REQUIRE(lines.size() > 6u);

  auto tampered = lines;
  auto &target = tampered[5];
  target = target.substr(0, target.rfind('\t')) + "\t-1";
  CHECK(LoadErrorLine(Join(tampered)) == 6);

  auto version = lines;
  version[0] = "ppbackoff-model v9";
  CHECK(LoadErrorLine(Join(version)) == 1);
  try {
    LoadModel(Join(version));
  } catch (const FormatError &e) {
    CHECK(std::string(e.what()).find("version") != std::string::npos);
  }

  auto edited = lines;
  edited[4] = edited[4].substr(0, edited[4].rfind('\t')) + "\t77";
  CHECK(LoadErrorLine(Join(edited)) == lines.size());  // checksum line

  auto truncated = lines;
  truncated.pop_back();
  CHECK(LoadErrorLine(Join(truncated)) > 0);

  auto trailing = lines;
  trailing.push_back("1\t1\ta\tb\tc\t1");
  CHECK(LoadErrorLine(Join(trailing)) == lines.size() + 1);

  CHECK(LoadErrorLine("") == 1);
  CHECK(LoadErrorLine("ppbackoff-model v1\nnormalization=upper\n") == 2);
}
