// corpus.cc
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

#include "ppbackoff/corpus.h"

#include <functional>
#include <sstream>

namespace ppbackoff {
namespace {

constexpr Slot kKind1Slots[] = {Slot::kV, Slot::kN1, Slot::kP1};
constexpr Slot kKind2Slots[] = {Slot::kV, Slot::kN1, Slot::kP1, Slot::kN2,
                                Slot::kP2};
constexpr Slot kKind3Slots[] = {Slot::kV,  Slot::kN1, Slot::kP1, Slot::kN2,
                                Slot::kP2, Slot::kN3, Slot::kP3};

constexpr int kTupleColumns = 11;

// Category without function tags or indices: NP-SBJ-1 -> NP.
std::string BaseCategory(const std::string &label) {
  if (label.empty() || label[0] == '-') return label;
  auto cut = label.find_first_of("-=");
  return cut == std::string::npos ? label : label.substr(0, cut);
}

bool IsVerbLeaf(const Tree &t) {
  return t.is_leaf() && BaseCategory(t.label())[0] == 'V';
}

bool IsNounLeaf(const Tree &t) {
  return t.is_leaf() && BaseCategory(t.label())[0] == 'N';
}

bool IsPrepLeaf(const Tree &t) {
  if (!t.is_leaf()) return false;
  auto c = BaseCategory(t.label());
  return c == "P" || c == "IN" || c == "TO";
}

bool IsPhrase(const Tree &t, const char *category) {
  return !t.is_leaf() && BaseCategory(t.label()) == category;
}

bool ValidWord(const std::string &w) {
  return !w.empty() && w.find_first_of("\t\n\r") == std::string::npos;
}

// Accumulates heads and attachment sites during a left-to-right walk.
class VpWalker {
 public:
  explicit VpWalker(Normalization norm) : norm_(norm) {}

  bool Vp(const Tree &vp) {
    const auto &kids = vp.children();
    if (kids.size() < 2 || !IsVerbLeaf(kids[0])) return false;
    verb_ = NormalizeWord(kids[0].token(), norm_);
    if (!Np(kids[1])) return false;
    for (std::size_t i = 2; i < kids.size(); ++i)
      if (!Pp(kids[i], Site::kVerb)) return false;
    return true;
  }

  std::optional<VpMatch> Result() const {
    const int kind = static_cast<int>(preps_.size());
    if (kind < 1 || kind > kMaxKind) return std::nullopt;
    auto code = CodeOf(sites_);
    if (!code) return std::nullopt;
    VpMatch m;
    m.kind = kind;
    m.config = *code;
    m.heads[Slot::kV] = verb_;
    for (int k = 0; k < kind; ++k) {
      m.heads.words[SlotIndex(Slot::kN1) + 2 * k] = nouns_[k];
      m.heads.words[SlotIndex(Slot::kP1) + 2 * k] = preps_[k];
    }
    m.final_noun = nouns_[kind];
    return m;
  }

 private:
  static const Tree *HeadNoun(const Tree &flat_np) {
    const Tree *head = nullptr;
    for (const Tree &c : flat_np.children()) {
      if (!c.is_leaf()) return nullptr;
      if (IsNounLeaf(c)) head = &c;
    }
    return head;
  }

  bool Np(const Tree &np) {
    if (!IsPhrase(np, "NP")) return false;
    if (const Tree *head = HeadNoun(np)) {
      nouns_.push_back(NormalizeWord(head->token(), norm_));
      return true;
    }
    // NP over a flat base NP followed by its PP modifiers. A complex base
    // would be a left-recursive stack, which is out of scope.
    const auto &kids = np.children();
    if (kids.size() < 2 || !IsPhrase(kids[0], "NP")) return false;
    const Tree *head = HeadNoun(kids[0]);
    if (!head) return false;
    nouns_.push_back(NormalizeWord(head->token(), norm_));
    const int index = static_cast<int>(nouns_.size());
    for (std::size_t i = 1; i < kids.size(); ++i) {
      // A fourth noun can only carry a fourth PP.
      if (index > kMaxKind) return false;
      if (!Pp(kids[i], NounSite(index))) return false;
    }
    return true;
  }

  bool Pp(const Tree &pp, Site site) {
    if (!IsPhrase(pp, "PP")) return false;
    const auto &kids = pp.children();
    if (kids.size() != 2 || !IsPrepLeaf(kids[0])) return false;
    if (preps_.size() == static_cast<std::size_t>(kMaxKind)) return false;
    preps_.push_back(NormalizeWord(kids[0].token(), norm_));
    sites_.push_back(site);
    return Np(kids[1]);
  }

  Normalization norm_;
  std::string verb_;
  std::vector<std::string> nouns_;
  std::vector<std::string> preps_;
  std::vector<Site> sites_;
};

void CollectVps(const Tree &t, std::vector<const Tree *> &out) {
  if (t.is_leaf()) return;
  if (IsVpNode(t)) out.push_back(&t);
  for (const Tree &c : t.children()) CollectVps(c, out);
}

int ParseInt(const std::string &s, std::size_t line, const char *field) {
  if (s.empty() || s.size() > 9)
    throw FormatError(line, std::string("field '") + field + "': bad integer '" + s + "'");
  int v = 0;
  for (char c : s) {
    if (c < '0' || c > '9')
      throw FormatError(line, std::string("field '") + field + "': bad integer '" + s + "'");
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace

std::span<const Slot> SlotsForKind(int kind) {
  switch (kind) {
    case 1: return kKind1Slots;
    case 2: return kKind2Slots;
    case 3: return kKind3Slots;
  }
  throw std::out_of_range("kind must be 1..3, got " + std::to_string(kind));
}

void ValidateRecord(const TupleRecord &r) {
  if (r.id.empty() || !ValidWord(r.id))
    throw std::invalid_argument("field 'id': empty or contains tab/newline");
  if (!IsValidKind(r.kind))
    throw std::invalid_argument("field 'kind': " + std::to_string(r.kind) +
                                " not in 1..3");
  if (!IsValidCode(r.kind, r.config))
    throw std::invalid_argument(
        "field 'config': " + std::to_string(r.config) + " out of range 1.." +
        std::to_string(NumConfigurations(r.kind)) + " for kind " +
        std::to_string(r.kind));
  const int required = static_cast<int>(SlotsForKind(r.kind).size());
  for (int i = 0; i < kNumSlots; ++i) {
    const auto &w = r.heads.words[i];
    const char *name = SlotName(static_cast<Slot>(i));
    if (i < required) {
      if (!ValidWord(w))
        throw std::invalid_argument(std::string("field '") + name +
                                    "': empty or contains tab/newline");
    } else if (!w.empty()) {
      throw std::invalid_argument(std::string("field '") + name +
                                  "': must be empty for kind " +
                                  std::to_string(r.kind));
    }
  }
  if (!r.final_noun.empty() && !ValidWord(r.final_noun))
    throw std::invalid_argument("field 'final_noun': contains tab/newline");
}

TupleRecord ProjectRecord(const TupleRecord &r, int to_kind) {
  if (to_kind < 1 || to_kind > r.kind)
    throw ContractError("cannot project a kind-" + std::to_string(r.kind) +
                        " record to kind " + std::to_string(to_kind));
  if (to_kind == r.kind) return r;
  TupleRecord p;
  p.id = r.id;
  p.kind = to_kind;
  p.config = ProjectCode(r.kind, r.config, to_kind);
  const int keep = static_cast<int>(SlotsForKind(to_kind).size());
  for (int i = 0; i < keep; ++i) p.heads.words[i] = r.heads.words[i];
  // Object of preposition to_kind is noun to_kind + 1.
  p.final_noun = r.heads.words[SlotIndex(Slot::kN1) + 2 * to_kind];
  return p;
}

bool IsVpNode(const Tree &t) { return IsPhrase(t, "VP"); }

std::optional<VpMatch> ClassifyVp(const Tree &vp, Normalization norm) {
  if (!IsVpNode(vp)) return std::nullopt;
  VpWalker walker(norm);
  if (!walker.Vp(vp)) return std::nullopt;
  return walker.Result();
}

Tree RenderVp(std::span<const Site> sites, const Heads &heads,
              const std::string &final_noun) {
  const int kind = static_cast<int>(sites.size());
  if (!IsValidKind(kind) || !IsNonCrossing(sites))
    throw ContractError("RenderVp needs a non-crossing site sequence of 1..3");
  // nouns[k] is noun k+1; the last one is the object of the last PP.
  std::vector<std::string> nouns;
  for (int k = 0; k < kind; ++k)
    nouns.push_back(heads.words[SlotIndex(Slot::kN1) + 2 * k]);
  nouns.push_back(final_noun);
  std::vector<std::vector<int>> attached(kind + 2);  // by site index
  for (int i = 0; i < kind; ++i)
    attached[static_cast<int>(sites[i])].push_back(i);

  auto prep = [&](int i) { return heads.words[SlotIndex(Slot::kP1) + 2 * i]; };
  std::function<Tree(int)> render_np;
  auto render_pp = [&](int i) {
    return Tree::Node("PP", {Tree::Leaf("P", prep(i)), render_np(i + 2)});
  };
  render_np = [&](int noun) {
    Tree base = Tree::Node("NP", {Tree::Leaf("N", nouns[noun - 1])});
    if (noun > kMaxKind || attached[noun].empty()) return base;
    std::vector<Tree> kids = {std::move(base)};
    for (int i : attached[noun]) kids.push_back(render_pp(i));
    return Tree::Node("NP", std::move(kids));
  };
  std::vector<Tree> vp = {Tree::Leaf("V", heads[Slot::kV]), render_np(1)};
  for (int i : attached[0]) vp.push_back(render_pp(i));
  return Tree::Node("VP", std::move(vp));
}

void ExtractFromTree(const Tree &tree, std::size_t tree_index,
                     Normalization norm, std::vector<TupleRecord> &out) {
  std::vector<const Tree *> vps;
  CollectVps(tree, vps);
  for (std::size_t v = 0; v < vps.size(); ++v) {
    auto m = ClassifyVp(*vps[v], norm);
    if (!m) continue;
    TupleRecord r;
    r.id = "t" + std::to_string(tree_index) + ".v" + std::to_string(v);
    r.kind = m->kind;
    r.config = m->config;
    r.heads = std::move(m->heads);
    r.final_noun = std::move(m->final_noun);
    out.push_back(std::move(r));
  }
}

std::vector<TupleRecord> ExtractTuples(std::istream &treebank,
                                       Normalization norm) {
  std::vector<TupleRecord> out;
  TreebankReader reader(treebank);
  std::size_t index = 0;
  while (auto block = reader.Next()) {
    Tree tree = [&] {
      try {
        return ParseBracketedTree(*block);
      } catch (const TreeParseError &e) {
        throw TreebankError(index, e.what());
      }
    }();
    ExtractFromTree(tree, index, norm, out);
    ++index;
  }
  return out;
}

std::vector<TupleRecord> ExtractTuples(std::span<const Tree> trees,
                                       Normalization norm) {
  std::vector<TupleRecord> out;
  for (std::size_t i = 0; i < trees.size(); ++i)
    ExtractFromTree(trees[i], i, norm, out);
  return out;
}

void WriteTupleFile(std::span<const TupleRecord> records, std::ostream &out) {
  out << kTupleFileHeader << '\n';
  for (const auto &r : records) {
    ValidateRecord(r);
    out << r.id << '\t' << r.kind << '\t' << r.config;
    for (const auto &w : r.heads.words) out << '\t' << w;
    out << '\t' << r.final_noun << '\n';
  }
}

std::string WriteTupleFile(std::span<const TupleRecord> records) {
  std::ostringstream out;
  WriteTupleFile(records, out);
  return out.str();
}

std::vector<std::string> SplitTabs(const std::string &line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::vector<TupleRecord> ReadTupleFile(std::istream &in) {
  std::string line;
  if (!std::getline(in, line) || line != kTupleFileHeader)
    throw FormatError(1, std::string("missing header '") + kTupleFileHeader + "'");
  std::vector<TupleRecord> records;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    auto f = SplitTabs(line);
    if (f.size() != kTupleColumns)
      throw FormatError(lineno, "expected " + std::to_string(kTupleColumns) +
                                    " tab-separated fields, got " +
                                    std::to_string(f.size()));
    TupleRecord r;
    r.id = f[0];
    r.kind = ParseInt(f[1], lineno, "kind");
    r.config = ParseInt(f[2], lineno, "config");
    for (int i = 0; i < kNumSlots; ++i) r.heads.words[i] = f[3 + i];
    r.final_noun = f[10];
    try {
      ValidateRecord(r);
    } catch (const std::invalid_argument &e) {
      throw FormatError(lineno, e.what());
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<TupleRecord> ReadTupleFile(const std::string &contents) {
  std::istringstream in(contents);
  return ReadTupleFile(in);
}

}  // namespace ppbackoff
