// tree.cc
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

#include "ppbackoff/tree.h"

#include <cctype>

namespace ppbackoff {
namespace {

bool IsAtomChar(char c) {
  return c != '(' && c != ')' &&
         !std::isspace(static_cast<unsigned char>(c));
}

bool IsAtom(const std::string &s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!IsAtomChar(c)) return false;
  return true;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Tree ParseTop() {
    SkipSpace();
    if (pos_ == text_.size()) throw TreeParseError(pos_, "empty input");
    Tree t = ParseNode();
    SkipSpace();
    if (pos_ != text_.size())
      throw TreeParseError(pos_, "trailing characters after tree");
    return t;
  }

 private:
  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  std::string Atom() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && IsAtomChar(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void Expect(char c) {
    if (pos_ == text_.size())
      throw TreeParseError(pos_, std::string("unexpected end of input, expected '") + c + "'");
    if (text_[pos_] != c)
      throw TreeParseError(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  Tree ParseNode() {
    Expect('(');
    SkipSpace();
    std::size_t label_pos = pos_;
    std::string label = Atom();
    if (label.empty()) throw TreeParseError(label_pos, "empty label");
    SkipSpace();
    if (pos_ == text_.size())
      throw TreeParseError(pos_, "unexpected end of input in '" + label + "'");
    if (text_[pos_] != '(') {
      std::size_t token_pos = pos_;
      std::string token = Atom();
      if (token.empty())
        throw TreeParseError(token_pos, "node '" + label + "' has no children");
      SkipSpace();
      if (pos_ < text_.size() && text_[pos_] != ')')
        throw TreeParseError(pos_, "leaf '" + label + "' has more than one token");
      Expect(')');
      return Tree::Leaf(std::move(label), std::move(token));
    }
    std::vector<Tree> children;
    while (true) {
      SkipSpace();
      if (pos_ == text_.size())
        throw TreeParseError(pos_, "unexpected end of input in '" + label + "'");
      if (text_[pos_] == ')') break;
      if (text_[pos_] != '(')
        throw TreeParseError(pos_, "token mixed with subtrees in '" + label + "'");
      children.push_back(ParseNode());
    }
    Expect(')');
    return Tree::Node(std::move(label), std::move(children));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void Serialize(const Tree &t, std::string &out) {
  out += '(';
  out += t.label();
  if (t.is_leaf()) {
    out += ' ';
    out += t.token();
  } else {
    for (const Tree &c : t.children()) {
      out += ' ';
      Serialize(c, out);
    }
  }
  out += ')';
}

}  // namespace

Tree Tree::Leaf(std::string label, std::string token) {
  if (!IsAtom(label)) throw std::invalid_argument("invalid tree label '" + label + "'");
  if (!IsAtom(token)) throw std::invalid_argument("invalid tree token '" + token + "'");
  Tree t;
  t.label_ = std::move(label);
  t.token_ = std::move(token);
  return t;
}

Tree Tree::Node(std::string label, std::vector<Tree> children) {
  if (!IsAtom(label)) throw std::invalid_argument("invalid tree label '" + label + "'");
  if (children.empty())
    throw std::invalid_argument("interior node '" + label + "' needs children");
  Tree t;
  t.label_ = std::move(label);
  t.children_ = std::move(children);
  return t;
}

const std::string &Tree::token() const {
  if (!token_) throw std::logic_error("token() on interior node '" + label_ + "'");
  return *token_;
}

Tree ParseBracketedTree(std::string_view text) { return Parser(text).ParseTop(); }

std::string ToBracketedString(const Tree &tree) {
  std::string out;
  Serialize(tree, out);
  return out;
}

std::optional<std::string> TreebankReader::Next() {
  std::string block;
  std::string line;
  while (std::getline(in_, line)) {
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank) {
      if (!block.empty()) return block;
      continue;
    }
    block += line;
    block += '\n';
  }
  if (!block.empty()) return block;
  return std::nullopt;
}

}  // namespace ppbackoff
