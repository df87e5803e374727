// configuration.cc
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

#include "ppbackoff/configuration.h"

#include <algorithm>
#include <stdexcept>

namespace ppbackoff {
namespace {

constexpr Site V = Site::kVerb;
constexpr Site N1 = Site::kN1;
constexpr Site N2 = Site::kN2;
constexpr Site N3 = Site::kN3;

const std::vector<std::vector<Site>> &Table(int kind) {
  static const std::vector<std::vector<Site>> kOne = {{V}, {N1}};
  static const std::vector<std::vector<Site>> kTwo = {
      {V, V}, {N1, V}, {N1, N2}, {V, N2}, {N1, N1}};
  static const std::vector<std::vector<Site>> kThree = {
      {V, V, V},    {V, V, N3},    {N1, V, V},    {N1, V, N3},
      {N1, N2, V},  {N1, N2, N1},  {N1, N2, N2},  {N1, N2, N3},
      {V, N2, V},   {V, N2, N2},   {V, N2, N3},   {N1, N1, V},
      {N1, N1, N1}, {N1, N1, N3}};
  switch (kind) {
    case 1: return kOne;
    case 2: return kTwo;
    case 3: return kThree;
  }
  throw std::out_of_range("configuration kind must be 1..3, got " +
                          std::to_string(kind));
}

}  // namespace

const char *SiteName(Site s) {
  switch (s) {
    case Site::kVerb: return "V";
    case Site::kN1: return "N1";
    case Site::kN2: return "N2";
    case Site::kN3: return "N3";
  }
  return "?";
}

Site NounSite(int k) {
  if (k < 1 || k > 3) throw std::out_of_range("noun site index must be 1..3");
  return static_cast<Site>(k);
}

int NumConfigurations(int kind) {
  return static_cast<int>(Table(kind).size());
}

bool IsValidKind(int kind) { return kind >= 1 && kind <= kMaxKind; }

bool IsValidCode(int kind, int code) {
  return IsValidKind(kind) && code >= 1 && code <= NumConfigurations(kind);
}

const std::vector<Site> &SitesOf(int kind, int code) {
  const auto &table = Table(kind);
  if (code < 1 || code > static_cast<int>(table.size())) {
    throw std::out_of_range("configuration code " + std::to_string(code) +
                            " out of range for kind " + std::to_string(kind));
  }
  return table[code - 1];
}

std::optional<int> CodeOf(std::span<const Site> sites) {
  const int kind = static_cast<int>(sites.size());
  if (!IsValidKind(kind)) return std::nullopt;
  const auto &table = Table(kind);
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (std::equal(sites.begin(), sites.end(), table[i].begin()))
      return static_cast<int>(i) + 1;
  }
  return std::nullopt;
}

std::vector<Site> RightFrontier(std::span<const Site> prefix) {
  if (prefix.size() >= static_cast<std::size_t>(kMaxKind))
    throw std::out_of_range("right frontier is only tracked up to 3 PPs");
  std::vector<Site> frontier = {V, N1};
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    auto it = std::find(frontier.begin(), frontier.end(), prefix[i]);
    if (it == frontier.end()) return {};
    frontier.erase(it + 1, frontier.end());
    // The object of preposition i+1 is noun i+2.
    frontier.push_back(NounSite(static_cast<int>(i) + 2));
  }
  return frontier;
}

bool IsNonCrossing(std::span<const Site> sites) {
  for (std::size_t i = 0; i < sites.size(); ++i) {
    auto frontier = RightFrontier(sites.first(i));
    if (std::find(frontier.begin(), frontier.end(), sites[i]) ==
        frontier.end())
      return false;
  }
  return true;
}

std::vector<std::vector<Site>> EnumerateAttachments(int kind) {
  if (!IsValidKind(kind))
    throw std::out_of_range("kind must be 1..3");
  if (kind == 1) {
    std::vector<std::vector<Site>> out;
    for (Site s : RightFrontier({})) out.push_back({s});
    return out;
  }
  std::vector<std::vector<Site>> out;
  for (int code = 1; code <= NumConfigurations(kind - 1); ++code) {
    const auto &prefix = SitesOf(kind - 1, code);
    for (Site s : RightFrontier(prefix)) {
      auto seq = prefix;
      seq.push_back(s);
      out.push_back(std::move(seq));
    }
  }
  return out;
}

int ProjectCode(int kind, int code, int to_kind) {
  if (to_kind < 1 || to_kind > kind)
    throw std::out_of_range("projection target kind out of range");
  const auto &sites = SitesOf(kind, code);
  auto code_of = CodeOf(std::span(sites).first(to_kind));
  // Prefixes of right-frontier sequences are right-frontier sequences.
  return *code_of;
}

std::optional<int> ExtendCode(int kind, int code, Site site) {
  auto seq = SitesOf(kind, code);
  seq.push_back(site);
  return CodeOf(seq);
}

int CompareLowness(int kind, int code_a, int code_b) {
  const auto &a = SitesOf(kind, code_a);
  const auto &b = SitesOf(kind, code_b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return static_cast<int>(a[i]) < static_cast<int>(b[i]) ? -1 : 1;
  }
  return 0;
}

std::string FormatSites(std::span<const Site> sites) {
  std::string out = "(";
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (i) out += ",";
    out += SiteName(sites[i]);
  }
  return out + ")";
}

}  // namespace ppbackoff
