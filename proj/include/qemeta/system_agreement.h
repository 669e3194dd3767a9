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

// System-level Soft Pairwise Accuracy.
//
// For every system pair (i, j) a paired sign-flip permutation test over
// per-segment score differences gives a one-sided mid-p value p_ij, the
// confidence that i is preferred over j. SPA averages 1 - |p^h_ij - p^m_ij|
// over all pairs i < j.
//
// Sign vectors are a function of (seed, draw index, segment key) only, so
// two scorers evaluated on the same segments see identical null draws.

#ifndef QEMETA_SYSTEM_AGREEMENT_H_
#define QEMETA_SYSTEM_AGREEMENT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qemeta/types.h"

namespace qemeta {

struct PermutationConfig {
  int n_perm = 1000;
  std::uint64_t seed = 0;
  // Enumerate all 2^K sign vectors when K <= exhaustive_cap.
  int exhaustive_cap = 20;
};

// Null draws for a fixed list of segment keys.
class SignFlipPlan {
 public:
  SignFlipPlan(std::vector<std::uint64_t> segment_keys,
               const PermutationConfig& config);

  bool exhaustive() const { return exhaustive_; }
  std::uint64_t draws() const { return draws_; }
  std::size_t segments() const { return keys_.size(); }
  // True when segment k keeps its sign in draw r.
  bool Keeps(std::uint64_t r, std::size_t k) const;

 private:
  std::vector<std::uint64_t> keys_;
  std::uint64_t seed_;
  std::uint64_t draws_;
  bool exhaustive_;
};

// Segment keys built from (domain, source_id) strings.
std::uint64_t SegmentKey(const std::string& domain,
                         const std::string& source_id);

// One-sided right-tail mid-p of the mean difference under sign flips:
// [#(stat > observed) + 0.5 #(stat == observed)] / #draws. diffs[k] belongs
// to plan segment k. Throws InvalidArgument on empty input.
double PermPValue(const std::vector<double>& diffs, const SignFlipPlan& plan);

// Convenience overload keyed by segment index.
double PermPValue(const std::vector<double>& diffs,
                  const PermutationConfig& config);

// Pairwise p-values for all systems one scorer covers. Throws
// InvalidArgument for fewer than two systems and CoverageError when a pair
// shares no segment.
PValueMatrix BuildPValueMatrix(const ScoreTable& table,
                               const std::string& scorer,
                               const PermutationConfig& config);

// Throws InvalidArgument when the system lists differ.
double Spa(const PValueMatrix& human, const PValueMatrix& metric);

struct DomainSpa {
  // metric -> SPA averaged over annotators
  std::map<std::string, double> metric_spa;
  // Mean SPA over annotator pairs; absent with fewer than two annotators.
  std::optional<double> inter_annotator_spa;
};

// Per-domain SPA of every metric against every annotator, plus the
// annotator-annotator upper bound. With per_domain false the whole table is
// one slice reported under "all".
std::map<std::string, DomainSpa> SystemSpaReport(
    const ScoreTable& table, const std::vector<std::string>& annotators,
    const std::vector<std::string>& metrics, const PermutationConfig& config,
    bool per_domain = true);

}  // namespace qemeta

#endif  // QEMETA_SYSTEM_AGREEMENT_H_
