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

// Segment-level pairwise accuracy with tie calibration.
//
// Two scorers are compared on every pair of translations of the same
// source. Each scorer either calls the pair a tie (|difference| <= its
// threshold) or prefers one side. Pairs are tallied as concordant,
// discordant, tied by the metric only, by the human only, or by both, and
//
//   acc_eq = (C + T_mh) / (C + D + T_m + T_h + T_mh).
//
// Tie calibration picks the metric threshold that maximizes acc_eq.

#ifndef QEMETA_SEGMENT_AGREEMENT_H_
#define QEMETA_SEGMENT_AGREEMENT_H_

#include <optional>
#include <string>
#include <vector>

#include "qemeta/types.h"

namespace qemeta {

struct PairItem {
  std::string domain;
  std::string source_id;
  std::string system_a;  // system_a < system_b
  std::string system_b;
  double score_a = 0.0;
  double score_b = 0.0;

  double difference() const { return score_a - score_b; }
};

// All within-source system pairs of one scorer, sorted by
// (domain, source_id, system_a, system_b).
using PairSet = std::vector<PairItem>;

// Throws InvalidArgument if the scorer is absent.
PairSet BuildPairs(const ScoreTable& table, const std::string& scorer);

// Tallies the pairs both sets cover. The first set plays the metric role
// (T_m counts its lone ties). Throws CoverageError on an empty intersection.
PairTally Tally(const PairSet& metric_pairs, const PairSet& human_pairs,
                TieThreshold metric_eps, TieThreshold human_eps);

// Throws InvalidArgument when the tally is empty.
double AccEq(const PairTally& tally);

struct Calibration {
  TieThreshold epsilon;
  double accuracy = 0.0;
  PairTally tally;
};

// Candidate thresholds: 0, the midpoints between consecutive distinct
// absolute metric differences, and the largest difference plus one. Returns
// the candidate with the highest acc_eq, preferring the smallest threshold.
Calibration CalibrateTies(const PairSet& metric_pairs,
                          const PairSet& human_pairs, TieThreshold human_eps);

// The candidate thresholds CalibrateTies sweeps, ascending.
std::vector<double> TieCandidates(const PairSet& metric_pairs,
                                  const PairSet& human_pairs);

// Mean acc_eq over all unordered annotator pairs, both sides using the same
// threshold. Throws InvalidArgument for fewer than two annotators.
double InterAnnotatorAcc(const ScoreTable& table,
                         const std::vector<std::string>& annotators,
                         TieThreshold eps);

struct AnnotatorAgreement {
  std::string annotator;
  TieThreshold metric_eps;
  double accuracy = 0.0;
};

struct MetricHumanResult {
  double accuracy = 0.0;  // mean over annotators
  std::vector<AnnotatorAgreement> per_annotator;
};

// Treats each annotator as ground truth in turn. With no fixed metric
// threshold, the threshold is calibrated per annotator; otherwise the
// given threshold is applied as is (held-out mode).
MetricHumanResult MetricHumanAcc(
    const ScoreTable& table, const std::string& metric,
    const std::vector<std::string>& annotators, TieThreshold human_eps,
    std::optional<TieThreshold> fixed_metric_eps = std::nullopt);

}  // namespace qemeta

#endif  // QEMETA_SEGMENT_AGREEMENT_H_
