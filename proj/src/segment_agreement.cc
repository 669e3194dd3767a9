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

#include "qemeta/segment_agreement.h"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "qemeta/errors.h"
#include "qemeta/parallel.h"

namespace qemeta {
namespace {

auto PairKey(const PairItem& p) {
  return std::tie(p.domain, p.source_id, p.system_a, p.system_b);
}

int Sign(double x) { return (x > 0.0) - (x < 0.0); }

// Walks the pairs covered by both sets in key order.
template <typename Visitor>
std::size_t ForEachShared(const PairSet& a, const PairSet& b, Visitor visit) {
  std::size_t shared = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (PairKey(*ia) < PairKey(*ib)) {
      ++ia;
    } else if (PairKey(*ib) < PairKey(*ia)) {
      ++ib;
    } else {
      visit(*ia, *ib);
      ++shared;
      ++ia;
      ++ib;
    }
  }
  return shared;
}

// A shared pair reduced to what calibration needs.
struct SweepPair {
  double metric_gap;     // |metric difference|
  bool human_tie;
  bool concordant;       // same nonzero direction when neither side ties
};

std::vector<SweepPair> SharedSweepPairs(const PairSet& metric_pairs,
                                        const PairSet& human_pairs,
                                        TieThreshold human_eps) {
  std::vector<SweepPair> out;
  ForEachShared(metric_pairs, human_pairs,
                [&](const PairItem& m, const PairItem& h) {
                  const double dm = m.difference();
                  const double dh = h.difference();
                  const bool human_tie = human_eps.IsTie(dh);
                  out.push_back({std::fabs(dm), human_tie,
                                 !human_tie && Sign(dm) == Sign(dh)});
                });
  if (out.empty()) {
    throw CoverageError("metric and human share no translation pairs");
  }
  std::sort(out.begin(), out.end(),
            [](const SweepPair& x, const SweepPair& y) {
              return x.metric_gap < y.metric_gap;
            });
  return out;
}

std::vector<double> CandidatesFromSorted(const std::vector<SweepPair>& pairs) {
  std::vector<double> candidates{0.0};
  for (std::size_t i = 0; i + 1 < pairs.size(); ++i) {
    const double lo = pairs[i].metric_gap;
    const double hi = pairs[i + 1].metric_gap;
    if (hi > lo) candidates.push_back(lo + (hi - lo) / 2.0);
  }
  candidates.push_back(pairs.back().metric_gap + 1.0);
  // The first midpoint can coincide with 0 only when lo == 0 and hi is
  // denormal; keep the list strictly increasing.
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  return candidates;
}

}  // namespace

PairSet BuildPairs(const ScoreTable& table, const std::string& scorer) {
  auto [first, last] = table.ScorerRange(scorer);
  if (first == last) {
    throw InvalidArgument("scorer '" + scorer + "' not in table");
  }
  PairSet pairs;
  auto run_begin = first;
  while (run_begin != last) {
    auto run_end = run_begin;
    while (run_end != last && run_end->first.domain == run_begin->first.domain &&
           run_end->first.source_id == run_begin->first.source_id) {
      ++run_end;
    }
    for (auto a = run_begin; a != run_end; ++a) {
      for (auto b = std::next(a); b != run_end; ++b) {
        pairs.push_back({a->first.domain, a->first.source_id,
                         a->first.system_id, b->first.system_id, a->second,
                         b->second});
      }
    }
    run_begin = run_end;
  }
  return pairs;
}

PairTally Tally(const PairSet& metric_pairs, const PairSet& human_pairs,
                TieThreshold metric_eps, TieThreshold human_eps) {
  PairTally tally;
  const std::size_t shared = ForEachShared(
      metric_pairs, human_pairs, [&](const PairItem& m, const PairItem& h) {
        const double dm = m.difference();
        const double dh = h.difference();
        const bool metric_tie = metric_eps.IsTie(dm);
        const bool human_tie = human_eps.IsTie(dh);
        if (metric_tie && human_tie) {
          ++tally.tie_both;
        } else if (metric_tie) {
          ++tally.tie_metric_only;
        } else if (human_tie) {
          ++tally.tie_human_only;
        } else if (Sign(dm) == Sign(dh)) {
          ++tally.concordant;
        } else {
          ++tally.discordant;
        }
      });
  if (shared == 0) {
    throw CoverageError("scorers share no translation pairs");
  }
  return tally;
}

double AccEq(const PairTally& tally) {
  const std::int64_t total = tally.total();
  if (total <= 0) throw InvalidArgument("acc_eq of an empty tally");
  return static_cast<double>(tally.concordant + tally.tie_both) /
         static_cast<double>(total);
}

std::vector<double> TieCandidates(const PairSet& metric_pairs,
                                  const PairSet& human_pairs) {
  return CandidatesFromSorted(
      SharedSweepPairs(metric_pairs, human_pairs, TieThreshold(0.0)));
}

Calibration CalibrateTies(const PairSet& metric_pairs,
                          const PairSet& human_pairs, TieThreshold human_eps) {
  const std::vector<SweepPair> pairs =
      SharedSweepPairs(metric_pairs, human_pairs, human_eps);
  const std::vector<double> candidates = CandidatesFromSorted(pairs);

  // Correct pairs when nothing is a metric tie.
  std::int64_t correct = 0;
  for (const SweepPair& p : pairs) correct += p.concordant;

  std::size_t next = 0;
  std::int64_t best_correct = -1;
  double best_eps = 0.0;
  for (double eps : candidates) {
    while (next < pairs.size() && pairs[next].metric_gap <= eps) {
      correct += static_cast<std::int64_t>(pairs[next].human_tie) -
                 static_cast<std::int64_t>(pairs[next].concordant);
      ++next;
    }
    if (correct > best_correct) {
      best_correct = correct;
      best_eps = eps;
    }
  }

  Calibration result;
  result.epsilon = TieThreshold(best_eps);
  result.tally = Tally(metric_pairs, human_pairs, result.epsilon, human_eps);
  result.accuracy = AccEq(result.tally);
  return result;
}

double InterAnnotatorAcc(const ScoreTable& table,
                         const std::vector<std::string>& annotators,
                         TieThreshold eps) {
  if (annotators.size() < 2) {
    throw InvalidArgument("inter-annotator agreement needs >= 2 annotators");
  }
  std::vector<PairSet> pairs(annotators.size());
  ParallelFor(annotators.size(),
              [&](std::size_t i) { pairs[i] = BuildPairs(table, annotators[i]); });

  std::vector<std::pair<std::size_t, std::size_t>> combos;
  for (std::size_t i = 0; i < annotators.size(); ++i) {
    for (std::size_t j = i + 1; j < annotators.size(); ++j) {
      combos.emplace_back(i, j);
    }
  }
  std::vector<double> acc(combos.size());
  ParallelFor(combos.size(), [&](std::size_t c) {
    auto [i, j] = combos[c];
    acc[c] = AccEq(Tally(pairs[i], pairs[j], eps, eps));
  });
  double sum = 0.0;
  for (double a : acc) sum += a;
  return sum / static_cast<double>(acc.size());
}

MetricHumanResult MetricHumanAcc(const ScoreTable& table,
                                 const std::string& metric,
                                 const std::vector<std::string>& annotators,
                                 TieThreshold human_eps,
                                 std::optional<TieThreshold> fixed_metric_eps) {
  if (annotators.empty()) throw InvalidArgument("no annotators given");
  const PairSet metric_pairs = BuildPairs(table, metric);

  MetricHumanResult result;
  result.per_annotator.resize(annotators.size());
  ParallelFor(annotators.size(), [&](std::size_t i) {
    const PairSet human_pairs = BuildPairs(table, annotators[i]);
    AnnotatorAgreement& out = result.per_annotator[i];
    out.annotator = annotators[i];
    if (fixed_metric_eps) {
      out.metric_eps = *fixed_metric_eps;
      out.accuracy = AccEq(
          Tally(metric_pairs, human_pairs, *fixed_metric_eps, human_eps));
    } else {
      Calibration c = CalibrateTies(metric_pairs, human_pairs, human_eps);
      out.metric_eps = c.epsilon;
      out.accuracy = c.accuracy;
    }
  });
  double sum = 0.0;
  for (const AnnotatorAgreement& a : result.per_annotator) sum += a.accuracy;
  result.accuracy = sum / static_cast<double>(annotators.size());
  return result;
}

}  // namespace qemeta
