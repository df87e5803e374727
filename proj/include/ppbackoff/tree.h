// tree.h
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
// Labeled-bracketing constituency trees: (LABEL child ...) or (TAG token).

#ifndef PPBACKOFF_TREE_H_
#define PPBACKOFF_TREE_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ppbackoff {

// A node has either a token (it is a preterminal leaf) or at least one
// child, never both. Labels and tokens are non-empty and contain no
// whitespace or parentheses.
class Tree {
 public:
  static Tree Leaf(std::string label, std::string token);
  static Tree Node(std::string label, std::vector<Tree> children);

  const std::string &label() const { return label_; }
  bool is_leaf() const { return token_.has_value(); }
  // Throws std::logic_error on an interior node.
  const std::string &token() const;
  const std::vector<Tree> &children() const { return children_; }

  bool operator==(const Tree &) const = default;

 private:
  Tree() = default;

  std::string label_;
  std::vector<Tree> children_;
  std::optional<std::string> token_;
};

class TreeParseError : public std::runtime_error {
 public:
  TreeParseError(std::size_t offset, const std::string &what)
      : std::runtime_error("offset " + std::to_string(offset) + ": " + what),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Parses exactly one bracketing; surrounding whitespace is allowed.
Tree ParseBracketedTree(std::string_view text);

// Single-line, single-space serialization; re-parses to an equal tree.
std::string ToBracketedString(const Tree &tree);

// Splits a treebank stream into blank-line separated blocks, one bracketing
// per block.
class TreebankReader {
 public:
  explicit TreebankReader(std::istream &in) : in_(in) {}

  // Next non-empty block, or nullopt at end of stream.
  std::optional<std::string> Next();

 private:
  std::istream &in_;
};

}  // namespace ppbackoff

#endif  // PPBACKOFF_TREE_H_
