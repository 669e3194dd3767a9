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

// Randomized property checks over seeded instances.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "qemeta/bias_report.h"
#include "qemeta/ingest.h"
#include "qemeta/segment_agreement.h"
#include "qemeta/span_overlap.h"
#include "qemeta/system_agreement.h"
#include "qemeta/transform.h"
#include "test_util.h"

namespace qemeta {
namespace {

using testing::AddScorer;
using testing::RandomGrid;

constexpr int kInstances = 100;

struct Instance {
  ScoreTable table;
  std::size_t sources;
  std::size_t systems;
};

// Metric "m" on a coarse grid and human "h" on integers, both tie-prone.
Instance RandomInstance(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> sys(2, 5), src(1, 8);
  Instance inst{{}, src(rng), sys(rng)};
  AddScorer(inst.table, "m", RandomGrid(rng, inst.sources, inst.systems, 6, 0.1));
  AddScorer(inst.table, "h", RandomGrid(rng, inst.sources, inst.systems, 5, 25),
            ScorerKind::kHuman);
  return inst;
}

TEST(SegmentProperties, AccEqInUnitIntervalAndRoleSymmetric) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> eps(0.0, 0.3);
  for (int i = 0; i < kInstances; ++i) {
    const Instance inst = RandomInstance(rng);
    const PairSet m = BuildPairs(inst.table, "m");
    const PairSet h = BuildPairs(inst.table, "h");
    const TieThreshold em(eps(rng)), eh(eps(rng) * 100);
    const PairTally ab = Tally(m, h, em, eh);
    const PairTally ba = Tally(h, m, eh, em);
    EXPECT_EQ(ab.concordant, ba.concordant);
    EXPECT_EQ(ab.discordant, ba.discordant);
    EXPECT_EQ(ab.tie_both, ba.tie_both);
    EXPECT_EQ(ab.tie_metric_only, ba.tie_human_only);
    EXPECT_EQ(ab.tie_human_only, ba.tie_metric_only);
    EXPECT_EQ(static_cast<std::size_t>(ab.total()), m.size());
    const double acc = AccEq(ab);
    EXPECT_GE(acc, 0.0);
    EXPECT_LE(acc, 1.0);
    EXPECT_EQ(acc, AccEq(ba));
  }
}

TEST(SegmentProperties, MonotoneTransformInvariance) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < kInstances; ++i) {
    Instance inst = RandomInstance(rng);
    ScoreTable warped;
    warped.SetKind("h", ScorerKind::kHuman);
    for (const auto& [key, score] : inst.table.entries()) {
      const double v = key.scorer == "m" ? std::exp(3 * score) - 7 : score;
      warped.Insert(key, v);
    }
    EXPECT_EQ(Tally(BuildPairs(inst.table, "m"), BuildPairs(inst.table, "h"),
                    {}, {}),
              Tally(BuildPairs(warped, "m"), BuildPairs(warped, "h"), {}, {}));
  }
}

TEST(SegmentProperties, SystemRelabelingConservesTally) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < kInstances; ++i) {
    const Instance inst = RandomInstance(rng);
    std::vector<std::string> names;
    for (std::size_t s = 0; s < inst.systems; ++s) {
      names.push_back(testing::SystemName(s));
    }
    std::vector<std::string> shuffled = names;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    ScoreTable relabeled;
    relabeled.SetKind("h", ScorerKind::kHuman);
    for (const auto& [key, score] : inst.table.entries()) {
      const auto pos = std::find(names.begin(), names.end(), key.system_id) -
                       names.begin();
      relabeled.Insert({key.scorer, key.domain, key.source_id,
                        "x" + shuffled[pos]},
                       score);
    }
    const TieThreshold e(0.1);
    EXPECT_EQ(Tally(BuildPairs(inst.table, "m"), BuildPairs(inst.table, "h"),
                    e, {}),
              Tally(BuildPairs(relabeled, "m"), BuildPairs(relabeled, "h"), e,
                    {}));
  }
}

TEST(SegmentProperties, CalibrationDominatesZeroThreshold) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < kInstances; ++i) {
    const Instance inst = RandomInstance(rng);
    const PairSet m = BuildPairs(inst.table, "m");
    const PairSet h = BuildPairs(inst.table, "h");
    const Calibration c = CalibrateTies(m, h, {});
    EXPECT_GE(c.accuracy, AccEq(Tally(m, h, {}, {})));
    EXPECT_EQ(c.accuracy, AccEq(Tally(m, h, c.epsilon, {})));
    EXPECT_EQ(c.tally, Tally(m, h, c.epsilon, {}));
  }
}

TEST(TransformProperties, ZNormIdempotentAndOrderPreserving) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(50, 20);
  for (int i = 0; i < kInstances; ++i) {
    ScoreTable t;
    std::vector<std::vector<double>> grid(6, std::vector<double>(4));
    for (auto& row : grid) {
      for (double& v : row) v = noise(rng);
    }
    AddScorer(t, "m", grid, ScorerKind::kMetric, i % 2 ? "a" : "b");
    AddScorer(t, "m", grid, ScorerKind::kMetric, "c");
    const NormalizationMode mode{.per_domain = i % 3 == 0};
    const ScoreTable z = ZNormalize(t, mode);
    const ScoreTable zz = ZNormalize(z, mode);
    auto zi = z.entries().begin();
    for (const auto& [key, score] : zz.entries()) {
      EXPECT_NEAR(score, zi->second, 1e-9);
      ++zi;
    }
    auto a = t.entries().begin();
    for (auto b = std::next(a); b != t.entries().end(); ++b) {
      if (a->first.domain == b->first.domain && a->second < b->second) {
        EXPECT_LT(z.Find(a->first).value(), z.Find(b->first).value());
      }
    }
  }
}

TEST(SystemProperties, SpaSymmetricAndRelabelInvariant) {
  std::mt19937_64 rng(6);
  const PermutationConfig cfg{.n_perm = 200, .seed = 4, .exhaustive_cap = 6};
  for (int i = 0; i < 30; ++i) {
    ScoreTable t;
    std::uniform_int_distribution<std::size_t> src(3, 10);
    const std::size_t sources = src(rng);
    AddScorer(t, "a", RandomGrid(rng, sources, 4, 10, 1.0));
    AddScorer(t, "b", RandomGrid(rng, sources, 4, 10, 1.0));
    const PValueMatrix pa = BuildPValueMatrix(t, "a", cfg);
    const PValueMatrix pb = BuildPValueMatrix(t, "b", cfg);
    EXPECT_EQ(Spa(pa, pb), Spa(pb, pa));
    EXPECT_EQ(Spa(pa, pa), 1.0);

    // Reverse the system order by renaming; the matrix is permuted.
    ScoreTable renamed;
    for (const auto& [key, score] : t.entries()) {
      renamed.Insert({key.scorer, key.domain, key.source_id,
                      "z" + std::to_string(9 - (key.system_id.back() - '0'))},
                     score);
    }
    const PValueMatrix ra = BuildPValueMatrix(renamed, "a", cfg);
    const PValueMatrix rb = BuildPValueMatrix(renamed, "b", cfg);
    for (std::size_t x = 0; x < 4; ++x) {
      for (std::size_t y = 0; y < 4; ++y) {
        if (x != y) EXPECT_EQ(ra.at(3 - x, 3 - y), pa.at(x, y));
      }
    }
    EXPECT_NEAR(Spa(ra, rb), Spa(pa, pb), 1e-12);
  }
}

SegmentSpans RandomSpans(std::mt19937_64& rng, int segments) {
  SegmentSpans out;
  std::uniform_int_distribution<int> count(0, 3), len(5, 30);
  for (int s = 0; s < segments; ++s) {
    const std::size_t n = len(rng);
    std::uniform_int_distribution<std::size_t> pos(0, n);
    MaskedSegment seg{{}, n};
    for (int k = count(rng); k > 0; --k) {
      std::size_t a = pos(rng), b = pos(rng);
      if (a > b) std::swap(a, b);
      seg.spans.push_back({a, b, Severity::kMinor, false});
    }
    out[{"d", "s" + std::to_string(s), "m"}] = seg;
  }
  return out;
}

SegmentSpans WithLengthsOf(SegmentSpans spans, const SegmentSpans& like) {
  auto it = like.begin();
  for (auto& [key, seg] : spans) {
    seg.text_len = it->second.text_len;
    for (ErrorSpan& e : seg.spans) {
      e.start = std::min(e.start, seg.text_len);
      e.end = std::min(e.end, seg.text_len);
    }
    ++it;
  }
  return spans;
}

TEST(SpanProperties, SwapSymmetryHarmonicMeanAndIdempotence) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < kInstances; ++i) {
    const SegmentSpans gold = RandomSpans(rng, 4);
    const SegmentSpans pred = WithLengthsOf(RandomSpans(rng, 4), gold);
    const PrecisionRecall ab = SpanPrf(pred, gold);
    const PrecisionRecall ba = SpanPrf(gold, pred);
    EXPECT_EQ(ab.precision, ba.recall);
    EXPECT_EQ(ab.recall, ba.precision);
    EXPECT_EQ(ab.f1, ba.f1);
    for (double v : {ab.precision, ab.recall, ab.f1}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    const double sum = ab.precision + ab.recall;
    EXPECT_NEAR(ab.f1, sum > 0 ? 2 * ab.precision * ab.recall / sum : 0.0,
                1e-15);

    SegmentSpans nested = pred;
    for (auto& [key, seg] : nested) {
      if (seg.spans.empty()) continue;
      const ErrorSpan& outer = seg.spans.front();
      seg.spans.push_back({outer.start, (outer.start + outer.end) / 2,
                           Severity::kMajor, false});
    }
    const PrecisionRecall same = SpanPrf(nested, gold);
    EXPECT_EQ(same.precision, ab.precision);
    EXPECT_EQ(same.recall, ab.recall);
  }
}

TEST(BiasProperties, SameTableRankingsNeverDiverge) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < kInstances; ++i) {
    ScoreTable t;
    AddScorer(t, "h", RandomGrid(rng, 5, 4, 100, 1.0));
    const Ranking r = SystemRanking(t, "h", "d");
    EXPECT_TRUE(RankingDivergence(r, SystemRanking(t, "h", "d")).empty());
    double sum = 0;
    for (const RankedSystem& s : r) sum += s.mean_z;
    EXPECT_NEAR(sum, 0.0, 1e-9);
  }
}

TEST(IngestProperties, RandomRecordsRoundTrip) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> score(0, 100), len(0, 12), spans(0, 3);
  std::uniform_real_distribution<double> frac(0, 100);
  for (int i = 0; i < kInstances; ++i) {
    std::vector<AnnotationRecord> records;
    for (int r = 0; r < 5; ++r) {
      AnnotationRecord rec;
      rec.domain = "d\"" + std::to_string(i);
      rec.lang_pair = "en-zh";
      rec.source_id = "s" + std::to_string(r);
      rec.system_id = "m";
      rec.annotator_id = "a";
      rec.score = r % 2 ? score(rng) : std::round(frac(rng) * 1e3) / 1e3;
      rec.target_text = std::string(len(rng), 'x') + "\xE4\xB8\xAD";
      const std::size_t n = CodePointLength(rec.target_text);
      std::uniform_int_distribution<std::size_t> pos(0, n);
      for (int k = spans(rng); k > 0; --k) {
        std::size_t a = pos(rng), b = pos(rng);
        if (a > b) std::swap(a, b);
        rec.spans.push_back({a, b, k % 2 ? Severity::kMajor : Severity::kMinor,
                             a == b});
      }
      rec.source_text = "src \n tab\t";
      records.push_back(rec);
    }
    std::ostringstream out;
    WriteAnnotations(records, out);
    std::istringstream in(out.str());
    EXPECT_EQ(ParseAnnotations(in), records);
  }
}

}  // namespace
}  // namespace qemeta
