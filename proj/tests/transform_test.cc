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

#include "qemeta/transform.h"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "qemeta/errors.h"
#include "test_util.h"

namespace qemeta {
namespace {

using testing::AddScorer;

double At(const ScoreTable& t, const std::string& scorer,
          const std::string& domain, const std::string& source,
          const std::string& system) {
  return t.Find({scorer, domain, source, system}).value();
}

TEST(ZNormalize, ZeroVarianceGroupMapsToZero) {
  ScoreTable t;
  AddScorer(t, "m", {{50, 50, 50}});
  const ScoreTable z = ZNormalize(t, {});
  for (const auto& [key, score] : z.entries()) EXPECT_EQ(score, 0.0);
}

TEST(ZNormalize, TwoPointGroup) {
  ScoreTable t;
  AddScorer(t, "m", {{0, 100}});
  const ScoreTable z = ZNormalize(t, {});
  EXPECT_EQ(At(z, "m", "d", "src0", "sys0"), -1.0);
  EXPECT_EQ(At(z, "m", "d", "src0", "sys1"), 1.0);
}

TEST(ZNormalize, PerDomainVersusGlobal) {
  ScoreTable t;
  AddScorer(t, "m", {{0, 10}}, ScorerKind::kMetric, "a");
  AddScorer(t, "m", {{100, 110}}, ScorerKind::kMetric, "b");
  const ScoreTable per = ZNormalize(t, {.per_domain = true});
  EXPECT_EQ(At(per, "m", "a", "src0", "sys0"), -1.0);
  EXPECT_EQ(At(per, "m", "b", "src0", "sys1"), 1.0);
  const ScoreTable global = ZNormalize(t, {.per_domain = false});
  EXPECT_LT(At(global, "m", "a", "src0", "sys1"), 0.0);
  EXPECT_GT(At(global, "m", "b", "src0", "sys0"), 0.0);
}

TEST(ZNormalize, KeepsKindsAndRejectsEmpty) {
  ScoreTable t;
  AddScorer(t, "h", {{1, 2}}, ScorerKind::kHuman);
  EXPECT_EQ(ZNormalize(t, {}).KindOf("h"), ScorerKind::kHuman);
  EXPECT_THROW(ZNormalize(ScoreTable{}, {}), InvalidArgument);
}

TEST(AverageScorers, SingleMemberIsRenamedCopy) {
  ScoreTable t;
  AddScorer(t, "a", {{1, 2}, {3, 4}});
  const ScoreTable avg = AverageScorers(t, {{"g", {"a"}}});
  EXPECT_EQ(avg.entries(), t.Renamed("a", "g").entries());
}

TEST(AverageScorers, ArithmeticMean) {
  ScoreTable t;
  AddScorer(t, "a", {{1}});
  AddScorer(t, "b", {{3}});
  EXPECT_EQ(At(AverageScorers(t, {{"g", {"a", "b"}}}), "g", "d", "src0",
               "sys0"),
            2.0);
}

TEST(AverageScorers, Errors) {
  ScoreTable t;
  AddScorer(t, "a", {{1, 2}});
  AddScorer(t, "b", {{3}});
  EXPECT_THROW(AverageScorers(t, {{"g", {}}}), InvalidArgument);
  EXPECT_THROW(AverageScorers(t, {{"g", {"a", "b"}}}), CoverageError);
  const ScoreTable meet =
      AverageScorers(t, {{"g", {"a", "b"}}}, {.restrict_to_intersection = true});
  EXPECT_EQ(meet.size(), 1u);
  EXPECT_EQ(At(meet, "g", "d", "src0", "sys0"), 2.0);
}

TEST(GroupSegments, IdentityAtNOne) {
  ScoreTable t;
  AddScorer(t, "m", {{1, 2}, {3, 4}, {5, 6}});
  EXPECT_EQ(GroupSegments(t, {.n = 1}).entries(), t.entries());
}

TEST(GroupSegments, OrderedPairsDropRemainder) {
  ScoreTable t;
  AddScorer(t, "m", {{10}, {30}, {50}});
  const ScoreTable g =
      GroupSegments(t, {.n = 2, .strategy = GroupingStrategy::kOrdered});
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g.entries().begin()->second, 20.0);
}

TEST(GroupSegments, SharedPartitionAcrossScorersAndSystems) {
  ScoreTable t;
  // Each score encodes its source so the group mean identifies the members.
  std::vector<std::vector<double>> a, b;
  for (int s = 0; s < 12; ++s) {
    a.push_back({std::pow(2.0, s), std::pow(2.0, s)});
    b.push_back({std::pow(2.0, s), std::pow(2.0, s)});
  }
  AddScorer(t, "a", a);
  AddScorer(t, "b", b);
  const ScoreTable g = GroupSegments(t, {.n = 3, .seed = 7});
  EXPECT_EQ(g.size(), 2u * 2u * 4u);
  for (const auto& [key, score] : g.entries()) {
    EXPECT_EQ(score, At(g, "a", key.domain, key.source_id, "sys0"));
  }
  std::set<double> distinct;
  for (const auto& [key, score] : g.entries()) distinct.insert(score);
  EXPECT_EQ(distinct.size(), 4u);
}

TEST(GroupSegments, SeedChangesPartitionDeterministically) {
  ScoreTable t;
  std::vector<std::vector<double>> rows;
  for (int s = 0; s < 20; ++s) rows.push_back({double(s)});
  AddScorer(t, "m", rows);
  const GroupingConfig c1{.n = 4, .seed = 1};
  EXPECT_EQ(SegmentPartition(t, "d", c1), SegmentPartition(t, "d", c1));
  EXPECT_NE(SegmentPartition(t, "d", c1),
            SegmentPartition(t, "d", {.n = 4, .seed = 2}));
}

TEST(GroupSegments, Errors) {
  ScoreTable t;
  AddScorer(t, "m", {{1, 2}, {3, 4}});
  EXPECT_THROW(GroupSegments(t, {.n = 0}), InvalidArgument);
  EXPECT_THROW(GroupSegments(t, {.n = 3}), CoverageError);
  t.Insert({"m", "d", "src2", "sys0"}, 5);
  t.Insert({"m", "d", "src3", "sys1"}, 6);
  EXPECT_THROW(
      GroupSegments(t, {.n = 4, .strategy = GroupingStrategy::kOrdered}),
      CoverageError);
}

TEST(DisjointGroupPairs, FourMembersInPairs) {
  const auto splits = DisjointGroupPairs({"a", "b", "c", "d"}, 2);
  ASSERT_EQ(splits.size(), 3u);
  for (const auto& [left, right] : splits) {
    std::set<std::string> all(left.begin(), left.end());
    all.insert(right.begin(), right.end());
    EXPECT_EQ(all.size(), 4u);
  }
  EXPECT_EQ(DisjointGroupPairs({"a", "b", "c", "d"}, 1).size(), 6u);
  EXPECT_THROW(DisjointGroupPairs({"a", "b", "c"}, 2), InvalidArgument);
}

}  // namespace
}  // namespace qemeta
