// counts.cc
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

#include "ppbackoff/counts.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>

namespace ppbackoff {
namespace {

constexpr char kModelHeader[] = "ppbackoff-model v1";
constexpr char kChecksumTag[] = "checksum";

using S = Slot;

constexpr PatternMask kPp1Masks[] = {
    {S::kV, S::kN1, S::kP1}, {S::kV, S::kP1}, {S::kN1, S::kP1}, {S::kP1}};

constexpr PatternMask kPp2Masks[] = {
    {S::kV, S::kN1, S::kP1, S::kN2, S::kP2},
    {S::kN1, S::kP1, S::kN2, S::kP2},
    {S::kV, S::kP1, S::kN2, S::kP2},
    {S::kV, S::kN1, S::kP1, S::kP2},
    {S::kP1, S::kN2, S::kP2},
    {S::kV, S::kP1, S::kP2},
    {S::kN1, S::kP1, S::kP2}};

// Full mask, then dropping one, then two, of {v, n1, n2, n3}.
constexpr PatternMask kPp3Masks[] = {
    {S::kV, S::kN1, S::kP1, S::kN2, S::kP2, S::kN3, S::kP3},
    {S::kN1, S::kP1, S::kN2, S::kP2, S::kN3, S::kP3},
    {S::kV, S::kP1, S::kN2, S::kP2, S::kN3, S::kP3},
    {S::kV, S::kN1, S::kP1, S::kP2, S::kN3, S::kP3},
    {S::kV, S::kN1, S::kP1, S::kN2, S::kP2, S::kP3},
    {S::kP1, S::kN2, S::kP2, S::kN3, S::kP3},
    {S::kN1, S::kP1, S::kP2, S::kN3, S::kP3},
    {S::kN1, S::kP1, S::kN2, S::kP2, S::kP3},
    {S::kV, S::kP1, S::kP2, S::kN3, S::kP3},
    {S::kV, S::kP1, S::kN2, S::kP2, S::kP3},
    {S::kV, S::kN1, S::kP1, S::kP2, S::kP3}};

constexpr PatternMask kQuadMasks[] = {
    {S::kV, S::kN1, S::kP1, S::kN2},
    {S::kV, S::kN1, S::kP1},
    {S::kV, S::kP1, S::kN2},
    {S::kN1, S::kP1, S::kN2},
    {S::kV, S::kP1},
    {S::kN1, S::kP1},
    {S::kP1, S::kN2},
    {S::kP1}};

int MaskIndex(Table t, PatternMask m) {
  auto masks = LegalMasks(t);
  for (std::size_t i = 0; i < masks.size(); ++i)
    if (masks[i] == m) return static_cast<int>(i);
  return -1;
}

std::string JoinKey(std::span<const std::string> words) {
  std::string key;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) key += '\t';
    key += words[i];
  }
  return key;
}

std::string KeyFromHeads(PatternMask m, const Heads &heads) {
  std::string key;
  bool first = true;
  for (int i = 0; i < kNumSlots; ++i) {
    if (!m.Has(static_cast<Slot>(i))) continue;
    if (!first) key += '\t';
    key += heads.words[i];
    first = false;
  }
  return key;
}

std::uint64_t Fnv1a(std::uint64_t h, const std::string &s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t kFnvBasis = 0xcbf29ce484222325ULL;

std::string Hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Count lines (with trailing LF) in canonical order.
std::vector<std::string> CanonicalLines(const FrequencyDatabase &db) {
  std::vector<std::string> lines;
  for (int t = 0; t < kNumTables; ++t) {
    const Table table = static_cast<Table>(t);
    for (const auto &entry : db.FullTuples(table)) {
      for (int c = 1; c <= NumConfigs(table); ++c) {
        const auto n = entry.evidence.count(c);
        if (n == 0) continue;
        std::string line = std::to_string(t + 1) + '\t' + std::to_string(c);
        for (const auto &w : entry.words) line += '\t' + w;
        line += '\t' + std::to_string(n) + '\n';
        lines.push_back(std::move(line));
      }
    }
  }
  std::sort(lines.begin(), lines.end());
  return lines;
}

bool IsLowerCased(const std::string &w) {
  return NormalizeWord(w, Normalization::kLower) == w;
}

}  // namespace

Table TableForKind(int kind) {
  switch (kind) {
    case 1: return Table::kPp1;
    case 2: return Table::kPp2;
    case 3: return Table::kPp3;
  }
  throw ContractError("kind must be 1..3, got " + std::to_string(kind));
}

int NumConfigs(Table t) {
  switch (t) {
    case Table::kPp1: return 2;
    case Table::kPp2: return 5;
    case Table::kPp3: return 14;
    case Table::kQuad: return 2;
  }
  return 0;
}

const char *TableName(Table t) {
  switch (t) {
    case Table::kPp1: return "pp1";
    case Table::kPp2: return "pp2";
    case Table::kPp3: return "pp3";
    case Table::kQuad: return "quad";
  }
  return "?";
}

int PatternMask::size() const {
  int n = 0;
  for (int i = 0; i < kNumSlots; ++i)
    if (Has(static_cast<Slot>(i))) ++n;
  return n;
}

std::vector<Slot> PatternMask::slots() const {
  std::vector<Slot> out;
  for (int i = 0; i < kNumSlots; ++i)
    if (Has(static_cast<Slot>(i))) out.push_back(static_cast<Slot>(i));
  return out;
}

std::string PatternMask::ToString() const {
  std::string out = "{";
  bool first = true;
  for (Slot s : slots()) {
    if (!first) out += ",";
    out += SlotName(s);
    first = false;
  }
  return out + "}";
}

std::span<const PatternMask> LegalMasks(Table t) {
  switch (t) {
    case Table::kPp1: return kPp1Masks;
    case Table::kPp2: return kPp2Masks;
    case Table::kPp3: return kPp3Masks;
    case Table::kQuad: return kQuadMasks;
  }
  throw ContractError("unknown table");
}

PatternMask FullMask(Table t) { return LegalMasks(t)[0]; }

bool IsLegalMask(Table t, PatternMask m) { return MaskIndex(t, m) >= 0; }

FrequencyDatabase::FrequencyDatabase(Normalization norm) : norm_(norm) {
  for (int t = 0; t < kNumTables; ++t)
    tables_[t].resize(LegalMasks(static_cast<Table>(t)).size());
}

void FrequencyDatabase::Add(Table t, const Heads &heads, int config,
                            std::int64_t n) {
  const int nconf = NumConfigs(t);
  if (config < 1 || config > nconf)
    throw ContractError("config " + std::to_string(config) +
                        " out of range for table " + TableName(t));
  if (n < 0) throw ContractError("negative event count");
  for (Slot s : FullMask(t).slots())
    if (heads[s].empty())
      throw ContractError(std::string("slot ") + SlotName(s) +
                          " unset for table " + TableName(t));
  auto masks = LegalMasks(t);
  auto &maps = tables_[static_cast<int>(t)];
  for (std::size_t i = 0; i < masks.size(); ++i) {
    Evidence &e = maps[i][KeyFromHeads(masks[i], heads)];
    if (e.per_config.empty()) e.per_config.assign(nconf, 0);
    e.per_config[config - 1] += n;
    e.total += n;
  }
}

Evidence FrequencyDatabase::Query(Table t, PatternMask m,
                                  std::span<const std::string> words) const {
  const int index = MaskIndex(t, m);
  if (index < 0)
    throw ContractError("mask " + m.ToString() + " is not legal for table " +
                        TableName(t));
  if (static_cast<int>(words.size()) != m.size())
    throw ContractError("mask " + m.ToString() + " takes " +
                        std::to_string(m.size()) + " words, got " +
                        std::to_string(words.size()));
  const auto &map = tables_[static_cast<int>(t)][index];
  auto it = map.find(JoinKey(words));
  if (it == map.end())
    return Evidence{0, std::vector<std::int64_t>(NumConfigs(t), 0)};
  return it->second;
}

Evidence FrequencyDatabase::Query(Table t, PatternMask m,
                                  const Heads &heads) const {
  std::vector<std::string> words;
  for (Slot s : m.slots()) words.push_back(heads[s]);
  return Query(t, m, words);
}

std::int64_t FrequencyDatabase::Count(Table t, PatternMask m,
                                      std::span<const std::string> words,
                                      int config) const {
  if (config < 1 || config > NumConfigs(t))
    throw ContractError("config out of range for table " +
                        std::string(TableName(t)));
  return Query(t, m, words).count(config);
}

std::int64_t FrequencyDatabase::Total(Table t, PatternMask m,
                                      std::span<const std::string> words) const {
  return Query(t, m, words).total;
}

std::vector<FullTupleEntry> FrequencyDatabase::FullTuples(Table t) const {
  std::vector<FullTupleEntry> out;
  for (const auto &[key, ev] : tables_[static_cast<int>(t)][0])
    out.push_back({SplitTabs(key), ev});
  std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
    return a.words < b.words;
  });
  return out;
}

std::size_t FrequencyDatabase::NumKeys(Table t, PatternMask m) const {
  const int index = MaskIndex(t, m);
  if (index < 0) throw ContractError("illegal mask " + m.ToString());
  return tables_[static_cast<int>(t)][index].size();
}

void FrequencyDatabase::CheckConsistency() const {
  for (int t = 0; t < kNumTables; ++t) {
    const Table table = static_cast<Table>(t);
    FrequencyDatabase rebuilt(norm_);
    const auto full_slots = FullMask(table).slots();
    for (const auto &entry : FullTuples(table)) {
      Heads h;
      for (std::size_t i = 0; i < full_slots.size(); ++i)
        h[full_slots[i]] = entry.words[i];
      for (int c = 1; c <= NumConfigs(table); ++c)
        if (entry.evidence.count(c) > 0)
          rebuilt.Add(table, h, c, entry.evidence.count(c));
    }
    const auto &mine = tables_[t];
    const auto &theirs = rebuilt.tables_[t];
    for (std::size_t i = 0; i < mine.size(); ++i) {
      for (const auto &[key, ev] : mine[i]) {
        std::int64_t sum = 0;
        for (auto c : ev.per_config) {
          if (c < 0) throw std::logic_error("negative count in database");
          sum += c;
        }
        if (sum != ev.total)
          throw std::logic_error("total != sum of configs for key '" + key + "'");
        auto it = theirs[i].find(key);
        if (ev.total == 0 && it == theirs[i].end()) continue;
        if (it == theirs[i].end() || it->second.per_config != ev.per_config)
          throw std::logic_error(std::string("projection mismatch in table ") +
                                 TableName(table) + " mask " +
                                 LegalMasks(table)[i].ToString());
      }
      if (theirs[i].size() > mine[i].size())
        throw std::logic_error("sub-mask table is missing keys");
    }
  }
}

std::string FrequencyDatabase::Fingerprint() const {
  std::uint64_t h = kFnvBasis;
  for (const auto &line : CanonicalLines(*this)) h = Fnv1a(h, line);
  return Hex64(h);
}

bool FrequencyDatabase::empty() const {
  for (const auto &maps : tables_)
    if (!maps[0].empty()) return false;
  return true;
}

FrequencyDatabase BuildDatabase(std::span<const TupleRecord> records,
                                Normalization norm) {
  FrequencyDatabase db(norm);
  for (const auto &r : records) {
    ValidateRecord(r);
    if (norm == Normalization::kLower) {
      auto check = [&](const std::string &w) {
        if (!IsLowerCased(w))
          throw std::invalid_argument("record " + r.id + ": word '" + w +
                                      "' is not lower-cased; tuples were "
                                      "extracted under a different "
                                      "normalization policy");
      };
      for (const auto &w : r.heads.words) check(w);
      check(r.final_noun);
    }
    db.Add(TableForKind(r.kind), r.heads, r.config);
    if (r.kind == 3) {
      TupleRecord two = ProjectRecord(r, 2);
      db.Add(Table::kPp2, two.heads, two.config);
    }
    TupleRecord one = ProjectRecord(r, 1);
    if (r.kind > 1) db.Add(Table::kPp1, one.heads, one.config);
    if (!one.final_noun.empty()) {
      Heads quad = one.heads;
      quad[Slot::kN2] = one.final_noun;
      db.Add(Table::kQuad, quad, one.config);
    }
  }
  return db;
}

void SaveModel(const FrequencyDatabase &db, std::ostream &out) {
  out << kModelHeader << '\n'
      << "normalization=" << NormalizationName(db.normalization()) << '\n';
  std::uint64_t h = kFnvBasis;
  for (const auto &line : CanonicalLines(db)) {
    out << line;
    h = Fnv1a(h, line);
  }
  out << kChecksumTag << '\t' << Hex64(h) << '\n';
}

std::string SaveModel(const FrequencyDatabase &db) {
  std::ostringstream out;
  SaveModel(db, out);
  return out.str();
}

FrequencyDatabase LoadModel(std::istream &in) {
  std::string line;
  if (!std::getline(in, line) || line != kModelHeader) {
    if (line.rfind("ppbackoff-model ", 0) == 0)
      throw FormatError(1, "unsupported model version '" + line + "'");
    throw FormatError(1, std::string("missing header '") + kModelHeader + "'");
  }
  if (!std::getline(in, line) || line.rfind("normalization=", 0) != 0)
    throw FormatError(2, "expected normalization=<lower|none>");
  Normalization norm;
  try {
    norm = ParseNormalization(line.substr(14));
  } catch (const std::invalid_argument &e) {
    throw FormatError(2, e.what());
  }

  FrequencyDatabase db(norm);
  std::map<std::pair<int, std::string>, std::size_t> seen;  // -> first line
  std::uint64_t h = kFnvBasis;
  std::size_t lineno = 2;
  bool have_checksum = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (have_checksum) throw FormatError(lineno, "data after checksum line");
    auto f = SplitTabs(line);
    if (f[0] == kChecksumTag) {
      if (f.size() != 2) throw FormatError(lineno, "malformed checksum line");
      if (f[1] != Hex64(h))
        throw FormatError(lineno, "checksum mismatch: file says " + f[1] +
                                      ", contents hash to " + Hex64(h));
      have_checksum = true;
      continue;
    }
    h = Fnv1a(h, line + '\n');
    int kind = 0;
    if (f[0].size() == 1 && f[0][0] >= '1' && f[0][0] <= '4') kind = f[0][0] - '0';
    if (kind == 0) throw FormatError(lineno, "field 'kind': expected 1..4, got '" + f[0] + "'");
    const Table table = static_cast<Table>(kind - 1);
    const auto slots = FullMask(table).slots();
    if (f.size() != slots.size() + 3)
      throw FormatError(lineno, "expected " + std::to_string(slots.size() + 3) +
                                    " fields for kind " + f[0] + ", got " +
                                    std::to_string(f.size()));
    int config = 0;
    auto [cp, cec] = std::from_chars(f[1].data(), f[1].data() + f[1].size(), config);
    if (cec != std::errc() || cp != f[1].data() + f[1].size() || config < 1 ||
        config > NumConfigs(table))
      throw FormatError(lineno, "field 'config': '" + f[1] + "' out of range 1.." +
                                    std::to_string(NumConfigs(table)));
    const std::string &cs = f.back();
    if (!cs.empty() && cs[0] == '-')
      throw FormatError(lineno, "field 'count': negative count " + cs);
    std::int64_t count = 0;
    auto [np, nec] = std::from_chars(cs.data(), cs.data() + cs.size(), count);
    if (nec != std::errc() || np != cs.data() + cs.size())
      throw FormatError(lineno, "field 'count': bad integer '" + cs + "'");
    Heads heads;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const auto &w = f[2 + i];
      if (w.empty())
        throw FormatError(lineno, std::string("field '") + SlotName(slots[i]) + "': empty word");
      heads[slots[i]] = w;
    }
    auto key = std::make_pair(kind, line.substr(0, line.size() - cs.size()));
    if (auto [it, fresh] = seen.emplace(key, lineno); !fresh)
      throw FormatError(lineno, "duplicate tuple (first seen on line " +
                                    std::to_string(it->second) + ")");
    if (count > 0) db.Add(table, heads, config, count);
  }
  if (!have_checksum) throw FormatError(lineno + 1, "missing checksum line");
  db.CheckConsistency();
  return db;
}

FrequencyDatabase LoadModel(const std::string &contents) {
  std::istringstream in(contents);
  return LoadModel(in);
}

}  // namespace ppbackoff
