// estimator.h
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
// Backed-off attachment estimators for one, two and three PPs.
//
// Each estimator walks a cascade of pattern-mask groups, most specific
// first. At the first level whose pooled denominator is positive the
// attachment probability of configuration c is
//
//   p(c) = sum_m f(c, m) / sum_m f(m)
//
// over the masks m of that level, and the decision is the argmax. All masks
// keep every preposition. When the two- and three-PP cascades run dry, the
// competitive procedures resolve later prepositions with single-PP
// preferences: each candidate noun's (v, noun, p) triple is run through the
// single-PP estimator and the preferences are combined into a structure.
//
// Argmax ties go to the lower attachment: the configuration whose site
// sequence is lexicographically latest under V < N1 < N2 < N3. For a single
// PP this is noun attachment, matching the default.

#ifndef PPBACKOFF_ESTIMATOR_H_
#define PPBACKOFF_ESTIMATOR_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ppbackoff/corpus.h"
#include "ppbackoff/counts.h"

namespace ppbackoff {

enum class BackoffLevel : int {
  kNone = 0,       // full tuple
  kBackoff1 = 1,
  kBackoff2 = 2,
  kBackoff3 = 3,   // preposition alone; four-word estimator only
  kCompetitive = 4,
  kDefault = 5,    // nothing observed; noun attachment
};

// "0".."3", "competitive", "default".
const char *BackoffLevelName(BackoffLevel level);

struct AttachmentDecision {
  int kind = 1;
  int config = 2;
  BackoffLevel level = BackoffLevel::kDefault;
  // p(c) for c = 1..NumConfigurations(kind), stored at index c-1.
  std::vector<double> distribution;
  // Pooled per-configuration counts and denominator at `level`. All zero for
  // the competitive and default levels.
  std::vector<std::int64_t> numerators;
  std::int64_t denominator = 0;

  double probability() const { return distribution.at(config - 1); }
  // Number of observations backing the chosen configuration.
  std::int64_t support() const {
    return numerators.empty() ? 0 : numerators.at(config - 1);
  }
};

// Four-word estimator over (v, n1, p, n2): full quadruple, then the three
// triples, the three pairs and the preposition alone, each containing p.
AttachmentDecision EstimateCb4(const FrequencyDatabase &db,
                               const std::string &v, const std::string &n1,
                               const std::string &p, const std::string &n2);

// Single PP over (v, n, p): full triple, then (v,p)+(n,p), then (p), then
// the noun-attachment default.
AttachmentDecision EstimatePp1(const FrequencyDatabase &db,
                               const std::string &v, const std::string &n,
                               const std::string &p);

// Two PPs: full 5-tuple, the three 4-slot masks, the three 3-slot masks,
// then CompetitivePp2. Reads slots v, n1, p1, n2, p2 of `heads`.
AttachmentDecision EstimatePp2(const FrequencyDatabase &db, const Heads &heads);

AttachmentDecision CompetitivePp2(const FrequencyDatabase &db,
                                  const Heads &heads);

// Combines the first-PP preference `first` with the second preposition's
// preferences relative to n2 and to n1 (1 = verb, 2 = noun) into a
// two-PP configuration. When p2 prefers both nouns the one with more
// supporting observations wins; equal support goes to n2.
int FindBestConfiguration(int first, int second_wrt_n2, int second_wrt_n1,
                          std::int64_t support_n2, std::int64_t support_n1);

// Three PPs: full 7-tuple, the four 6-slot masks (one of v, n1, n2, n3
// dropped), the six 5-slot masks (two dropped), then CompetitivePp3.
AttachmentDecision EstimatePp3(const FrequencyDatabase &db, const Heads &heads);

// Fixes p1 and p2 with EstimatePp2, then attaches p3 to the verb unless a
// legal noun site prefers it; among preferring nouns the best supported
// wins, ties to the rightmost.
AttachmentDecision CompetitivePp3(const FrequencyDatabase &db,
                                  const Heads &heads);

// Dispatches on the record's kind; the gold config is ignored.
AttachmentDecision Estimate(const FrequencyDatabase &db,
                            const TupleRecord &query);

}  // namespace ppbackoff

#endif  // PPBACKOFF_ESTIMATOR_H_
