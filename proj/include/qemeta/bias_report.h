// Copyright 2026 The qemeta Authors.
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

// Bias analyses:
//  - per-domain system rankings from domain-wise z-scores, and the pairs on
//    which a metric's ranking reverses or compresses the human one;
//  - domain score shift, mean metric z minus mean human z per domain with
//    each scorer normalized over all its scores.

#ifndef QEMETA_BIAS_REPORT_H_
#define QEMETA_BIAS_REPORT_H_

#include <map>
#include <string>
#include <vector>

#include "qemeta/types.h"

namespace qemeta {

struct RankedSystem {
  std::string system_id;
  double mean_z = 0.0;
};

// Sorted by mean_z descending, ties by system id.
using Ranking = std::vector<RankedSystem>;

// Throws CoverageError when the scorer covers fewer than two systems in the
// domain.
Ranking SystemRanking(const ScoreTable& table, const std::string& scorer,
                      const std::string& domain);

// Ranking of a group of scorers: per system, the mean of the members'
// mean z-scores.
Ranking GroupSystemRanking(const ScoreTable& table,
                           const std::vector<std::string>& members,
                           const std::string& domain);

enum class DivergenceKind { kReversal, kAttenuation };

struct DivergenceFlag {
  // `higher` is the system the human ranking puts first.
  std::string higher;
  std::string lower;
  DivergenceKind kind = DivergenceKind::kReversal;
  double human_gap = 0.0;   // mean_z(higher) - mean_z(lower) for humans
  double metric_gap = 0.0;  // same difference under the metric
};

// Flags every system pair the metric orders differently (reversal), and
// every pair kept in order whose gap shrinks by at least
// `attenuation_factor` of the human gap (attenuation).
// Throws InvalidArgument when the system sets differ.
std::vector<DivergenceFlag> RankingDivergence(const Ranking& human,
                                              const Ranking& metric,
                                              double attenuation_factor = 0.5);

// Per domain: mean metric z minus mean human z. Negative values mean the
// metric scores the domain lower than humans do.
std::map<std::string, double> DomainShift(
    const ScoreTable& table, const std::vector<std::string>& humans,
    const std::string& metric, const std::vector<std::string>& domains);

}  // namespace qemeta

#endif  // QEMETA_BIAS_REPORT_H_
