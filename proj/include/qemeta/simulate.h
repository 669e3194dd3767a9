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

// Synthetic annotators: each translation has a latent quality and every
// annotator reports it with independent Gaussian noise, optionally rounded
// to a score grid. Used to check what averaging and grouping do to
// agreement when the ground truth is known.

#ifndef QEMETA_SIMULATE_H_
#define QEMETA_SIMULATE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qemeta/types.h"

namespace qemeta {

struct NoiseModel {
  std::map<ItemKey, double> true_quality;
  double sigma = 0.0;
  int k_annotators = 1;
  std::uint64_t seed = 0;
  // Scores are rounded to the nearest multiple of this step when set.
  std::optional<double> tie_rounding;
};

// Throws InvalidArgument for sigma < 0, k_annotators < 1 or a rounding step
// <= 0.
void ValidateNoiseModel(const NoiseModel& model);

// Latent quality laid out as
//   mean + system effect + item effect + system x item interaction,
// each effect Gaussian with the given spread.
struct QualityLayout {
  std::vector<std::string> domains{"sim"};
  int items = 100;  // sources per domain
  int systems = 5;
  double mean = 70.0;
  double system_sd = 4.0;
  double item_sd = 10.0;
  double interaction_sd = 2.0;
  std::uint64_t seed = 0;
};

std::map<ItemKey, double> MakeTrueQuality(const QualityLayout& layout);

// Id of synthetic annotator i ("sim_h0", "sim_h1", ...).
std::string SimulatedAnnotatorId(int i);

// One human scorer per annotator. Noise for (annotator, key) depends only on
// (seed, annotator, key).
ScoreTable SimulateAnnotations(const NoiseModel& model);

// Metric scorers as latent quality plus their own noise (no rounding),
// kind kMetric, ids "sim_m0", ...
ScoreTable SimulateMetrics(const std::map<ItemKey, double>& true_quality,
                           int count, double sigma, std::uint64_t seed);

struct CurvePoint {
  int n = 1;
  double inter_annotator = 0.0;
  std::map<std::string, double> metric;  // metric -> calibrated acc_eq
};

// For n = 1..max_n: group segments (shuffled, seeded by the model seed),
// then measure inter-annotator acc_eq at `eps` and, for each metric in
// `metrics`, calibrated metric-human acc_eq.
std::vector<CurvePoint> AgreementCurve(const NoiseModel& model, int max_n,
                                       TieThreshold eps,
                                       const ScoreTable& metrics = {});

// Same curve over an existing table (human scorers of kind kHuman, metrics
// of kind kMetric/kBaseline).
std::vector<CurvePoint> AgreementCurveFor(const ScoreTable& table, int max_n,
                                          TieThreshold eps,
                                          std::uint64_t grouping_seed);

struct AveragingGain {
  double single_single = 0.0;
  double pair_pair = 0.0;
};

// Single-single: mean acc_eq over annotator pairs. Pair-pair: mean acc_eq
// between the averages of disjoint annotator groups of `group_size`. Scores
// are z-normalized per annotator before averaging; a group average covers
// the keys all its members share. Throws InvalidArgument when fewer than
// 2 * group_size annotators exist.
AveragingGain ComputeAveragingGain(const NoiseModel& model,
                                   std::size_t group_size);

AveragingGain AveragingGainFor(const ScoreTable& table,
                               const std::vector<std::string>& annotators,
                               std::size_t group_size, TieThreshold eps = {});

// Bisects sigma so that mean single-single acc_eq over `seeds` hits
// `target`. The model's sigma and seed fields are ignored.
double CalibrateSigma(const NoiseModel& model, double target,
                      const std::vector<std::uint64_t>& seeds,
                      double sigma_hi = 200.0, int iterations = 40);

}  // namespace qemeta

#endif  // QEMETA_SIMULATE_H_
