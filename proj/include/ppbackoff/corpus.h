// corpus.h
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
// Tuple extraction from treebank VPs and the tuple file format.
//
// A TupleRecord is one VP with 1-3 PPs: its gold configuration and head
// words (v, n1, p1[, n2, p2[, n3, p3]]) plus the object of its last PP.
// Tuple files are UTF-8 with LF line endings: a `ppbackoff-tuples v1` header
// and one 11-column tab-separated line per record,
//
//   id kind config v n1 p1 n2 p2 n3 p3 final_noun
//
// with unset optional columns left empty.

#ifndef PPBACKOFF_CORPUS_H_
#define PPBACKOFF_CORPUS_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppbackoff/configuration.h"
#include "ppbackoff/tree.h"
#include "ppbackoff/types.h"

namespace ppbackoff {

inline constexpr char kTupleFileHeader[] = "ppbackoff-tuples v1";

struct TupleRecord {
  std::string id;
  int kind = 1;
  int config = 1;
  Heads heads;
  // Object of the last PP; empty when unknown. Only the four-word reference
  // estimator reads it.
  std::string final_noun;

  const std::vector<Site> &sites() const { return SitesOf(kind, config); }
  bool operator==(const TupleRecord &) const = default;
};

// Slots that must be set for a record of the given kind, in slot order.
std::span<const Slot> SlotsForKind(int kind);

// Throws std::invalid_argument naming the offending field.
void ValidateRecord(const TupleRecord &record);

// The record restricted to its first `to_kind` PPs. The projected final
// noun is the object of the last kept preposition.
TupleRecord ProjectRecord(const TupleRecord &record, int to_kind);

// Result of matching one VP against the configuration taxonomy.
struct VpMatch {
  int kind = 1;
  int config = 1;
  Heads heads;
  std::string final_noun;
};

// Matches `vp` against the 2/5/14 bracketing shapes:
//
//   VP -> V NP PP*     NP -> flat-NP | NP(flat-NP) PP+     PP -> P NP
//
// where a flat NP has only preterminal children. The verb is the V child,
// each NP's head is its rightmost noun-tagged leaf and each PP's head is its
// leading preposition. Anything else, including left-recursive NP stacks and
// VPs with zero or more than three PPs, is nullopt.
std::optional<VpMatch> ClassifyVp(const Tree &vp,
                                  Normalization norm = Normalization::kLower);

// Canonical bracketing for a site sequence, using V/N/P/VP/NP/PP labels.
// `heads` must hold the words for the sequence's kind.
Tree RenderVp(std::span<const Site> sites, const Heads &heads,
              const std::string &final_noun);

// True for VP nodes, including function-tagged ones (VP-TPC, ...).
bool IsVpNode(const Tree &t);

// Every matching VP of one tree, in preorder, with ids t<tree>.v<vp> where
// <vp> counts all VP nodes of the tree.
void ExtractFromTree(const Tree &tree, std::size_t tree_index,
                     Normalization norm, std::vector<TupleRecord> &out);

class TreebankError : public std::runtime_error {
 public:
  TreebankError(std::size_t tree_index, const std::string &what)
      : std::runtime_error("tree " + std::to_string(tree_index) + ": " + what),
        tree_index_(tree_index) {}

  std::size_t tree_index() const { return tree_index_; }

 private:
  std::size_t tree_index_;
};

// Reads blank-line separated bracketings and extracts every matching VP.
// Parse failures are rethrown as TreebankError carrying the tree index.
std::vector<TupleRecord> ExtractTuples(std::istream &treebank,
                                       Normalization norm);
std::vector<TupleRecord> ExtractTuples(std::span<const Tree> trees,
                                       Normalization norm);

void WriteTupleFile(std::span<const TupleRecord> records, std::ostream &out);
std::string WriteTupleFile(std::span<const TupleRecord> records);

// Throws FormatError with the 1-based line number.
std::vector<TupleRecord> ReadTupleFile(std::istream &in);
std::vector<TupleRecord> ReadTupleFile(const std::string &contents);

// Splits on tabs, keeping empty fields.
std::vector<std::string> SplitTabs(const std::string &line);

}  // namespace ppbackoff

#endif  // PPBACKOFF_CORPUS_H_
