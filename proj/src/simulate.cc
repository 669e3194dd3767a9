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

#include "qemeta/simulate.h"

#include <cmath>

#include "qemeta/errors.h"
#include "qemeta/parallel.h"
#include "qemeta/rng.h"
#include "qemeta/segment_agreement.h"
#include "qemeta/transform.h"

namespace qemeta {
namespace {

std::uint64_t ItemHash(const ItemKey& key) {
  return HashCombine(
      HashCombine(HashString(key.domain), HashString(key.source_id)),
      HashString(key.system_id));
}

std::string Padded(const char* prefix, int index, int count) {
  std::string digits = std::to_string(index);
  const std::size_t width = std::to_string(std::max(count - 1, 0)).size();
  return prefix + std::string(width - std::min(width, digits.size()), '0') +
         digits;
}

std::vector<std::string> ScorersOfKinds(const ScoreTable& table,
                                        std::initializer_list<ScorerKind> kinds) {
  std::vector<std::string> out;
  for (const std::string& s : table.Scorers()) {
    for (ScorerKind k : kinds) {
      if (table.KindOf(s) == k) {
        out.push_back(s);
        break;
      }
    }
  }
  return out;
}

}  // namespace

void ValidateNoiseModel(const NoiseModel& model) {
  if (!(model.sigma >= 0.0)) throw InvalidArgument("sigma must be >= 0");
  if (model.k_annotators < 1) {
    throw InvalidArgument("k_annotators must be >= 1");
  }
  if (model.tie_rounding && !(*model.tie_rounding > 0.0)) {
    throw InvalidArgument("rounding step must be > 0");
  }
}

std::map<ItemKey, double> MakeTrueQuality(const QualityLayout& layout) {
  if (layout.items < 1 || layout.systems < 1 || layout.domains.empty()) {
    throw InvalidArgument("layout needs >= 1 domain, item and system");
  }
  const KeyedRng system_rng(layout.seed, HashString("system-effect"));
  const KeyedRng item_rng(layout.seed, HashString("item-effect"));
  const KeyedRng cell_rng(layout.seed, HashString("interaction"));

  std::vector<std::string> systems;
  std::vector<double> system_effect;
  for (int s = 0; s < layout.systems; ++s) {
    systems.push_back(Padded("sys", s, layout.systems));
    system_effect.push_back(layout.system_sd *
                            system_rng.Normal(HashString(systems.back())));
  }
  std::map<ItemKey, double> quality;
  for (const std::string& domain : layout.domains) {
    for (int i = 0; i < layout.items; ++i) {
      const std::string source = Padded("s", i, layout.items);
      const double item_effect =
          layout.item_sd *
          item_rng.Normal(HashCombine(HashString(domain), HashString(source)));
      for (int s = 0; s < layout.systems; ++s) {
        ItemKey key{domain, source, systems[s]};
        const double interaction =
            layout.interaction_sd * cell_rng.Normal(ItemHash(key));
        quality.emplace(std::move(key), layout.mean + system_effect[s] +
                                            item_effect + interaction);
      }
    }
  }
  return quality;
}

std::string SimulatedAnnotatorId(int i) { return "sim_h" + std::to_string(i); }

ScoreTable SimulateAnnotations(const NoiseModel& model) {
  ValidateNoiseModel(model);
  const auto k = static_cast<std::size_t>(model.k_annotators);
  std::vector<std::vector<std::pair<const ItemKey*, double>>> columns(k);
  ParallelFor(k, [&](std::size_t a) {
    const std::string id = SimulatedAnnotatorId(static_cast<int>(a));
    const KeyedRng rng(model.seed, HashString(id));
    auto& column = columns[a];
    column.reserve(model.true_quality.size());
    for (const auto& [key, quality] : model.true_quality) {
      double score = quality;
      if (model.sigma > 0.0) score += model.sigma * rng.Normal(ItemHash(key));
      if (model.tie_rounding) {
        score = std::round(score / *model.tie_rounding) * *model.tie_rounding;
      }
      column.emplace_back(&key, score);
    }
  });
  ScoreTable table;
  for (std::size_t a = 0; a < k; ++a) {
    const std::string id = SimulatedAnnotatorId(static_cast<int>(a));
    table.SetKind(id, ScorerKind::kHuman);
    for (const auto& [key, score] : columns[a]) {
      table.Insert({id, key->domain, key->source_id, key->system_id}, score);
    }
  }
  return table;
}

ScoreTable SimulateMetrics(const std::map<ItemKey, double>& true_quality,
                           int count, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw InvalidArgument("sigma must be >= 0");
  ScoreTable table;
  for (int m = 0; m < count; ++m) {
    const std::string id = "sim_m" + std::to_string(m);
    const KeyedRng rng(seed, HashString(id));
    table.SetKind(id, ScorerKind::kMetric);
    for (const auto& [key, quality] : true_quality) {
      double score = quality;
      if (sigma > 0.0) score += sigma * rng.Normal(ItemHash(key));
      table.Insert({id, key.domain, key.source_id, key.system_id}, score);
    }
  }
  return table;
}

std::vector<CurvePoint> AgreementCurveFor(const ScoreTable& table, int max_n,
                                          TieThreshold eps,
                                          std::uint64_t grouping_seed) {
  if (max_n < 1) throw InvalidArgument("max_n must be >= 1");
  const std::vector<std::string> annotators =
      ScorersOfKinds(table, {ScorerKind::kHuman});
  const std::vector<std::string> metrics =
      ScorersOfKinds(table, {ScorerKind::kMetric, ScorerKind::kBaseline});
  std::vector<CurvePoint> curve;
  for (int n = 1; n <= max_n; ++n) {
    const ScoreTable grouped = GroupSegments(
        table, {.n = n, .seed = grouping_seed,
                .strategy = GroupingStrategy::kShuffled});
    CurvePoint point;
    point.n = n;
    point.inter_annotator = InterAnnotatorAcc(grouped, annotators, eps);
    for (const std::string& m : metrics) {
      point.metric[m] = MetricHumanAcc(grouped, m, annotators, eps).accuracy;
    }
    curve.push_back(std::move(point));
  }
  return curve;
}

std::vector<CurvePoint> AgreementCurve(const NoiseModel& model, int max_n,
                                       TieThreshold eps,
                                       const ScoreTable& metrics) {
  ScoreTable table = SimulateAnnotations(model);
  table.Merge(metrics);
  return AgreementCurveFor(table, max_n, eps, model.seed);
}

AveragingGain AveragingGainFor(const ScoreTable& table,
                               const std::vector<std::string>& annotators,
                               std::size_t group_size, TieThreshold eps) {
  const auto splits = DisjointGroupPairs(annotators, group_size);
  const ScoreTable z =
      ZNormalize(table.Select(annotators), {.per_domain = false});
  AveragingGain gain;
  gain.single_single = InterAnnotatorAcc(z, annotators, eps);

  std::vector<double> acc(splits.size());
  ParallelFor(splits.size(), [&](std::size_t i) {
    const ScoreTable averaged =
        AverageScorers(z,
                       {{"group_a", splits[i].first},
                        {"group_b", splits[i].second}},
                       {.restrict_to_intersection = true});
    acc[i] = AccEq(Tally(BuildPairs(averaged, "group_a"),
                         BuildPairs(averaged, "group_b"), eps, eps));
  });
  double sum = 0.0;
  for (double a : acc) sum += a;
  gain.pair_pair = sum / static_cast<double>(acc.size());
  return gain;
}

AveragingGain ComputeAveragingGain(const NoiseModel& model,
                                   std::size_t group_size) {
  if (static_cast<std::size_t>(model.k_annotators) < 2 * group_size) {
    throw InvalidArgument("averaging gain needs >= 2 * group_size annotators");
  }
  const ScoreTable table = SimulateAnnotations(model);
  std::vector<std::string> annotators;
  for (int a = 0; a < model.k_annotators; ++a) {
    annotators.push_back(SimulatedAnnotatorId(a));
  }
  return AveragingGainFor(table, annotators, group_size);
}

double CalibrateSigma(const NoiseModel& model, double target,
                      const std::vector<std::uint64_t>& seeds, double sigma_hi,
                      int iterations) {
  if (seeds.empty()) throw InvalidArgument("calibration needs seeds");
  if (model.k_annotators < 2) {
    throw InvalidArgument("calibration needs >= 2 annotators");
  }
  std::vector<std::string> annotators;
  for (int a = 0; a < model.k_annotators; ++a) {
    annotators.push_back(SimulatedAnnotatorId(a));
  }
  auto agreement = [&](double sigma) {
    double sum = 0.0;
    for (std::uint64_t seed : seeds) {
      NoiseModel m = model;
      m.sigma = sigma;
      m.seed = seed;
      sum += InterAnnotatorAcc(SimulateAnnotations(m), annotators, {});
    }
    return sum / static_cast<double>(seeds.size());
  };
  double lo = 0.0;
  double hi = sigma_hi;
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (agreement(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace qemeta
