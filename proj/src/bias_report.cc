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

#include "qemeta/bias_report.h"

#include <algorithm>
#include <set>

#include "qemeta/errors.h"
#include "qemeta/transform.h"

namespace qemeta {
namespace {

void SortRanking(Ranking& ranking) {
  std::sort(ranking.begin(), ranking.end(),
            [](const RankedSystem& a, const RankedSystem& b) {
              if (a.mean_z != b.mean_z) return a.mean_z > b.mean_z;
              return a.system_id < b.system_id;
            });
}

// Mean z-score of one scorer in one domain; nullopt without coverage.
std::optional<double> DomainMean(const ScoreTable& normalized,
                                 const std::string& scorer,
                                 const std::string& domain) {
  double sum = 0.0;
  std::size_t n = 0;
  auto [first, last] = normalized.ScorerRange(scorer);
  for (auto it = first; it != last; ++it) {
    if (it->first.domain != domain) continue;
    sum += it->second;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

}  // namespace

Ranking SystemRanking(const ScoreTable& table, const std::string& scorer,
                      const std::string& domain) {
  const ScoreTable slice = table.Select({scorer}).RestrictToDomain(domain);
  if (slice.Systems(scorer, domain).size() < 2) {
    throw CoverageError("scorer '" + scorer + "' covers fewer than two systems "
                        "in domain '" + domain + "'");
  }
  const ScoreTable z = ZNormalize(slice, {.per_domain = true});
  std::map<std::string, std::pair<double, std::size_t>> sums;
  for (const auto& [key, score] : z.entries()) {
    auto& slot = sums[key.system_id];
    slot.first += score;
    slot.second += 1;
  }
  Ranking ranking;
  for (const auto& [system, sum] : sums) {
    ranking.push_back({system, sum.first / static_cast<double>(sum.second)});
  }
  SortRanking(ranking);
  return ranking;
}

Ranking GroupSystemRanking(const ScoreTable& table,
                           const std::vector<std::string>& members,
                           const std::string& domain) {
  if (members.empty()) throw InvalidArgument("empty ranker group");
  std::map<std::string, std::pair<double, std::size_t>> sums;
  for (const std::string& member : members) {
    for (const RankedSystem& r : SystemRanking(table, member, domain)) {
      auto& slot = sums[r.system_id];
      slot.first += r.mean_z;
      slot.second += 1;
    }
  }
  Ranking ranking;
  for (const auto& [system, sum] : sums) {
    if (sum.second != members.size()) {
      throw CoverageError("system '" + system +
                          "' is not ranked by every group member");
    }
    ranking.push_back({system, sum.first / static_cast<double>(sum.second)});
  }
  SortRanking(ranking);
  return ranking;
}

std::vector<DivergenceFlag> RankingDivergence(const Ranking& human,
                                              const Ranking& metric,
                                              double attenuation_factor) {
  std::map<std::string, std::pair<std::size_t, double>> metric_pos;
  for (std::size_t i = 0; i < metric.size(); ++i) {
    metric_pos[metric[i].system_id] = {i, metric[i].mean_z};
  }
  std::set<std::string> human_systems;
  for (const RankedSystem& r : human) human_systems.insert(r.system_id);
  if (human_systems.size() != metric_pos.size() ||
      !std::all_of(human_systems.begin(), human_systems.end(),
                   [&](const std::string& s) { return metric_pos.count(s); })) {
    throw InvalidArgument("rankings cover different systems");
  }

  std::vector<DivergenceFlag> flags;
  for (std::size_t i = 0; i < human.size(); ++i) {
    for (std::size_t j = i + 1; j < human.size(); ++j) {
      const auto& [pos_hi, z_hi] = metric_pos[human[i].system_id];
      const auto& [pos_lo, z_lo] = metric_pos[human[j].system_id];
      DivergenceFlag flag{human[i].system_id, human[j].system_id,
                          DivergenceKind::kReversal,
                          human[i].mean_z - human[j].mean_z, z_hi - z_lo};
      if (pos_hi > pos_lo) {
        flags.push_back(flag);
      } else if (flag.human_gap > 0.0 &&
                 flag.metric_gap <=
                     (1.0 - attenuation_factor) * flag.human_gap) {
        flag.kind = DivergenceKind::kAttenuation;
        flags.push_back(flag);
      }
    }
  }
  return flags;
}

std::map<std::string, double> DomainShift(
    const ScoreTable& table, const std::vector<std::string>& humans,
    const std::string& metric, const std::vector<std::string>& domains) {
  if (humans.empty()) throw InvalidArgument("no human scorers given");
  std::vector<std::string> scorers = humans;
  scorers.push_back(metric);
  const ScoreTable z =
      ZNormalize(table.Select(scorers), {.per_domain = false});

  std::map<std::string, double> shift;
  for (const std::string& domain : domains) {
    auto metric_mean = DomainMean(z, metric, domain);
    if (!metric_mean) {
      throw CoverageError("metric '" + metric + "' has no scores in domain '" +
                          domain + "'");
    }
    double human_sum = 0.0;
    for (const std::string& h : humans) {
      auto mean = DomainMean(z, h, domain);
      if (!mean) {
        throw CoverageError("annotator '" + h + "' has no scores in domain '" +
                            domain + "'");
      }
      human_sum += *mean;
    }
    shift[domain] = *metric_mean - human_sum / static_cast<double>(humans.size());
  }
  return shift;
}

}  // namespace qemeta
