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

#include "qemeta/system_agreement.h"

#include <cmath>
#include <set>

#include "qemeta/errors.h"
#include "qemeta/parallel.h"
#include "qemeta/rng.h"

namespace qemeta {
namespace {

// Relative tolerance for calling a permuted statistic equal to the observed
// one; absorbs summation-order rounding only.
constexpr double kEqualityTolerance = 1e-10;

struct Counts {
  std::uint64_t greater = 0;
  std::uint64_t equal = 0;
};

void Classify(double sum, double observed, double tol, Counts& counts) {
  if (sum > observed + tol) {
    ++counts.greater;
  } else if (sum >= observed - tol) {
    ++counts.equal;
  }
}

// All 2^m signed partial sums of diffs[offset, offset + m); bit k of the
// index keeps segment offset + k positive.
std::vector<double> SignedSums(const std::vector<double>& diffs,
                               std::size_t offset, std::size_t m) {
  std::vector<double> sums(std::size_t{1} << m);
  for (std::size_t mask = 0; mask < sums.size(); ++mask) {
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double d = diffs[offset + k];
      s += (mask >> k & 1) ? d : -d;
    }
    sums[mask] = s;
  }
  return sums;
}

Counts ExhaustiveCounts(const std::vector<double>& diffs, double tol) {
  const std::size_t k = diffs.size();
  const std::size_t low_bits = k / 2;
  const std::vector<double> low = SignedSums(diffs, 0, low_bits);
  const std::vector<double> high = SignedSums(diffs, low_bits, k - low_bits);
  const double observed = low.back() + high.back();
  Counts counts;
  for (double h : high) {
    for (double l : low) Classify(l + h, observed, tol, counts);
  }
  return counts;
}

Counts SampledCounts(const std::vector<double>& diffs,
                     const SignFlipPlan& plan, double tol) {
  double observed = 0.0;
  for (double d : diffs) observed += d;
  Counts counts;
  for (std::uint64_t r = 0; r < plan.draws(); ++r) {
    double s = 0.0;
    for (std::size_t k = 0; k < diffs.size(); ++k) {
      s += plan.Keeps(r, k) ? diffs[k] : -diffs[k];
    }
    Classify(s, observed, tol, counts);
  }
  return counts;
}

}  // namespace

SignFlipPlan::SignFlipPlan(std::vector<std::uint64_t> segment_keys,
                           const PermutationConfig& config)
    : keys_(std::move(segment_keys)), seed_(config.seed) {
  if (config.n_perm < 1) throw InvalidArgument("n_perm must be >= 1");
  exhaustive_ = config.exhaustive_cap >= 0 &&
                keys_.size() <= static_cast<std::size_t>(config.exhaustive_cap) &&
                keys_.size() < 63;
  draws_ = exhaustive_ ? (std::uint64_t{1} << keys_.size())
                       : static_cast<std::uint64_t>(config.n_perm);
}

bool SignFlipPlan::Keeps(std::uint64_t r, std::size_t k) const {
  if (exhaustive_) return (r >> k) & 1;
  return HashCombine(HashCombine(seed_, r), keys_[k]) >> 63;
}

std::uint64_t SegmentKey(const std::string& domain,
                         const std::string& source_id) {
  return HashCombine(HashString(domain), HashString(source_id));
}

double PermPValue(const std::vector<double>& diffs, const SignFlipPlan& plan) {
  if (diffs.empty()) throw InvalidArgument("permutation test on no segments");
  if (diffs.size() != plan.segments()) {
    throw InvalidArgument("difference count does not match the plan");
  }
  double scale = 0.0;
  for (double d : diffs) scale += std::fabs(d);
  const double tol = kEqualityTolerance * scale;
  const Counts counts = plan.exhaustive() ? ExhaustiveCounts(diffs, tol)
                                          : SampledCounts(diffs, plan, tol);
  return (static_cast<double>(counts.greater) +
          0.5 * static_cast<double>(counts.equal)) /
         static_cast<double>(plan.draws());
}

double PermPValue(const std::vector<double>& diffs,
                  const PermutationConfig& config) {
  std::vector<std::uint64_t> keys(diffs.size());
  for (std::size_t k = 0; k < keys.size(); ++k) keys[k] = SplitMix64(k);
  return PermPValue(diffs, SignFlipPlan(std::move(keys), config));
}

PValueMatrix BuildPValueMatrix(const ScoreTable& table,
                               const std::string& scorer,
                               const PermutationConfig& config) {
  // system -> (domain, source) -> score
  std::map<std::string, std::map<std::pair<std::string, std::string>, double>>
      by_system;
  auto [first, last] = table.ScorerRange(scorer);
  for (auto it = first; it != last; ++it) {
    by_system[it->first.system_id][{it->first.domain, it->first.source_id}] =
        it->second;
  }
  if (by_system.size() < 2) {
    throw InvalidArgument("scorer '" + scorer +
                          "' covers fewer than two systems");
  }
  PValueMatrix matrix;
  std::vector<const std::map<std::pair<std::string, std::string>, double>*>
      columns;
  for (const auto& [system, scores] : by_system) {
    matrix.systems.push_back(system);
    columns.push_back(&scores);
  }
  const std::size_t m = matrix.systems.size();
  matrix.p.assign(m, std::vector<double>(m, 0.5));

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
  }
  ParallelFor(pairs.size(), [&](std::size_t c) {
    auto [i, j] = pairs[c];
    std::vector<double> forward, backward;
    std::vector<std::uint64_t> keys;
    for (const auto& [segment, score_i] : *columns[i]) {
      auto other = columns[j]->find(segment);
      if (other == columns[j]->end()) continue;
      forward.push_back(score_i - other->second);
      backward.push_back(other->second - score_i);
      keys.push_back(SegmentKey(segment.first, segment.second));
    }
    if (forward.empty()) {
      throw CoverageError("systems '" + matrix.systems[i] + "' and '" +
                          matrix.systems[j] + "' share no segments for '" +
                          scorer + "'");
    }
    const SignFlipPlan plan(std::move(keys), config);
    matrix.p[i][j] = PermPValue(forward, plan);
    matrix.p[j][i] = PermPValue(backward, plan);
  });
  return matrix;
}

double Spa(const PValueMatrix& human, const PValueMatrix& metric) {
  if (human.systems != metric.systems) {
    throw InvalidArgument("SPA needs identical system sets");
  }
  const std::size_t m = human.size();
  if (m < 2) throw InvalidArgument("SPA needs at least two systems");
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      sum += 1.0 - std::fabs(human.p[i][j] - metric.p[i][j]);
    }
  }
  return sum / (static_cast<double>(m * (m - 1)) / 2.0);
}

std::map<std::string, DomainSpa> SystemSpaReport(
    const ScoreTable& table, const std::vector<std::string>& annotators,
    const std::vector<std::string>& metrics, const PermutationConfig& config,
    bool per_domain) {
  if (annotators.empty()) throw InvalidArgument("no annotators given");
  std::map<std::string, DomainSpa> report;
  const std::vector<std::string> domains =
      per_domain ? table.Domains() : std::vector<std::string>{"all"};
  for (const std::string& domain : domains) {
    const ScoreTable slice =
        per_domain ? table.RestrictToDomain(domain) : table;
    std::vector<PValueMatrix> human;
    for (const std::string& a : annotators) {
      human.push_back(BuildPValueMatrix(slice, a, config));
    }
    DomainSpa& out = report[domain];
    for (const std::string& metric : metrics) {
      const PValueMatrix pm = BuildPValueMatrix(slice, metric, config);
      double sum = 0.0;
      for (const PValueMatrix& ph : human) sum += Spa(ph, pm);
      out.metric_spa[metric] = sum / static_cast<double>(human.size());
    }
    if (human.size() >= 2) {
      double sum = 0.0;
      std::size_t count = 0;
      for (std::size_t i = 0; i < human.size(); ++i) {
        for (std::size_t j = i + 1; j < human.size(); ++j) {
          sum += Spa(human[i], human[j]);
          ++count;
        }
      }
      out.inter_annotator_spa = sum / static_cast<double>(count);
    }
  }
  return report;
}

}  // namespace qemeta
