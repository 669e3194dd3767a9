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

// Noise-mitigation transforms over score tables: z-normalization, averaging
// of scorers into pseudo-scorers, and grouping of same-system segments into
// larger evaluation units.

#ifndef QEMETA_TRANSFORM_H_
#define QEMETA_TRANSFORM_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qemeta/types.h"

namespace qemeta {

struct NormalizationMode {
  bool per_domain = false;
};

// Z-normalizes each scorer (or each scorer x domain when per_domain) with
// the population standard deviation. Zero-variance groups become zeros.
// Throws InvalidArgument on an empty table.
ScoreTable ZNormalize(const ScoreTable& table, NormalizationMode mode);

struct AveragingOptions {
  // When false, every member must cover exactly the same keys. When true,
  // only keys covered by all members are kept.
  bool restrict_to_intersection = false;
};

// Replaces each group of scorers by one pseudo-scorer named after the group,
// whose score on a key is the arithmetic mean of its members. The pseudo
// scorer inherits the kind of the first member.
ScoreTable AverageScorers(
    const ScoreTable& table,
    const std::map<std::string, std::vector<std::string>>& groups,
    AveragingOptions options = {});

// Averages n same-system segments into one unit. The source partition is
// drawn once per domain and shared by every scorer and system. The final
// incomplete group is dropped. Group ids are "g" followed by a zero-padded
// index; n == 1 returns the input unchanged.
ScoreTable GroupSegments(const ScoreTable& table, const GroupingConfig& cfg);

// The source ids of each group for one domain, in group order.
std::vector<std::vector<std::string>> SegmentPartition(
    const ScoreTable& table, const std::string& domain,
    const GroupingConfig& cfg);

// All unordered pairs of disjoint, size-`group_size` subsets of `members`.
// For 4 members and size 2 this yields the 3 possible splits.
std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>
DisjointGroupPairs(const std::vector<std::string>& members,
                   std::size_t group_size);

}  // namespace qemeta

#endif  // QEMETA_TRANSFORM_H_
