// configuration.h
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
// The attachment-configuration taxonomy for VPs with one, two or three PPs.
//
// A configuration is the sequence of attachment sites, one per preposition.
// Site N_k names the k-th noun head in linear order: n1 is the direct object
// and n(k+1) is the object of the k-th preposition. Only non-crossing
// sequences are legal, i.e. every preposition attaches to a node on the
// right frontier of the structure built from the preceding ones. There are
// 2, 5 and 14 of them for one, two and three PPs; the integer codes used
// below are the conventional numbering of those structures.

#ifndef PPBACKOFF_CONFIGURATION_H_
#define PPBACKOFF_CONFIGURATION_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ppbackoff {

enum class Site : int { kVerb = 0, kN1 = 1, kN2 = 2, kN3 = 3 };

const char *SiteName(Site s);

// Noun site for the k-th noun head, k in 1..3.
Site NounSite(int k);

inline constexpr int kMaxKind = 3;

// Number of configurations for a VP with `kind` PPs: 2, 5 or 14.
int NumConfigurations(int kind);

bool IsValidKind(int kind);
bool IsValidCode(int kind, int code);

// Site sequence for a configuration code. Throws std::out_of_range on an
// invalid (kind, code).
const std::vector<Site> &SitesOf(int kind, int code);

// Inverse of SitesOf; nullopt for crossing or out-of-range sequences.
std::optional<int> CodeOf(std::span<const Site> sites);

// Legal sites for the next preposition given the sites already chosen,
// in V < N1 < N2 < N3 order.
std::vector<Site> RightFrontier(std::span<const Site> prefix);

bool IsNonCrossing(std::span<const Site> sites);

// All non-crossing site sequences of length `kind`. Kind 1 lists V, N1;
// longer sequences extend each configuration of the previous kind, taken in
// code order, with its frontier sites in ascending order.
std::vector<std::vector<Site>> EnumerateAttachments(int kind);

// Code of the length-`to_kind` prefix of a configuration.
int ProjectCode(int kind, int code, int to_kind);

// Configuration obtained by attaching one more preposition at `site` to the
// structure `code` of kind `kind`. nullopt if `site` is not on the frontier.
std::optional<int> ExtendCode(int kind, int code, Site site);

// Lexicographic comparison of site sequences with V < N1 < N2 < N3.
// Positive when `a` attaches lower than `b`.
int CompareLowness(int kind, int code_a, int code_b);

struct Configuration {
  int kind = 1;
  int code = 1;

  const std::vector<Site> &sites() const { return SitesOf(kind, code); }
  bool operator==(const Configuration &) const = default;
};

std::string FormatSites(std::span<const Site> sites);

}  // namespace ppbackoff

#endif  // PPBACKOFF_CONFIGURATION_H_
