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

// Lower-bound scorers: a seeded random metric and a constant that ties
// every pair.

#ifndef QEMETA_BASELINES_H_
#define QEMETA_BASELINES_H_

#include <cstdint>
#include <set>
#include <string>

#include "qemeta/types.h"

namespace qemeta {

inline constexpr const char* kRandomBaselineId = "baseline:random";
inline constexpr const char* kConstantBaselineId = "baseline:constant";

// Uniform [0, 1) scores, each a pure function of (seed, key).
ScoreTable RandomMetric(const std::set<ItemKey>& keys, std::uint64_t seed,
                        const std::string& scorer_id = kRandomBaselineId);

// Every score is 0.
ScoreTable ConstantTieBaseline(
    const std::set<ItemKey>& keys,
    const std::string& scorer_id = kConstantBaselineId);

}  // namespace qemeta

#endif  // QEMETA_BASELINES_H_
