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

#include <algorithm>
#include <cmath>
#include <set>

#include "qemeta/errors.h"
#include "qemeta/rng.h"

namespace qemeta {
namespace {

using Entry = std::pair<const ScoreKey, double>;

void NormalizeGroup(const std::vector<const Entry*>& group, ScoreTable& out) {
  double lo = group.front()->second;
  double hi = lo;
  double sum = 0.0;
  for (const Entry* e : group) {
    lo = std::min(lo, e->second);
    hi = std::max(hi, e->second);
    sum += e->second;
  }
  if (lo == hi) {
    for (const Entry* e : group) out.Insert(e->first, 0.0);
    return;
  }
  const double n = static_cast<double>(group.size());
  const double mean = sum / n;
  double squares = 0.0;
  for (const Entry* e : group) {
    const double d = e->second - mean;
    squares += d * d;
  }
  const double sd = std::sqrt(squares / n);
  for (const Entry* e : group) out.Insert(e->first, (e->second - mean) / sd);
}

std::string GroupId(std::size_t index, std::size_t count) {
  std::string digits = std::to_string(index);
  const std::size_t width = std::to_string(count > 0 ? count - 1 : 0).size();
  return "g" + std::string(width - std::min(width, digits.size()), '0') +
         digits;
}

void Combinations(std::size_t n, std::size_t k, std::size_t first,
                  std::vector<std::size_t>& current,
                  std::vector<std::vector<std::size_t>>& out) {
  if (current.size() == k) {
    out.push_back(current);
    return;
  }
  for (std::size_t i = first; i < n; ++i) {
    current.push_back(i);
    Combinations(n, k, i + 1, current, out);
    current.pop_back();
  }
}

}  // namespace

ScoreTable ZNormalize(const ScoreTable& table, NormalizationMode mode) {
  if (table.empty()) throw InvalidArgument("cannot normalize an empty table");
  ScoreTable out;
  out.set_partial(table.partial());
  for (const std::string& scorer : table.Scorers()) {
    out.SetKind(scorer, table.KindOf(scorer));
    std::map<std::string, std::vector<const Entry*>> groups;
    auto [first, last] = table.ScorerRange(scorer);
    for (auto it = first; it != last; ++it) {
      groups[mode.per_domain ? it->first.domain : std::string()].push_back(
          &*it);
    }
    for (const auto& [domain, group] : groups) NormalizeGroup(group, out);
  }
  return out;
}

ScoreTable AverageScorers(
    const ScoreTable& table,
    const std::map<std::string, std::vector<std::string>>& groups,
    AveragingOptions options) {
  ScoreTable out;
  out.set_partial(table.partial());
  for (const auto& [group_id, members] : groups) {
    if (members.empty()) {
      throw InvalidArgument("scorer group '" + group_id + "' is empty");
    }
    std::map<ItemKey, std::pair<double, std::size_t>> sums;
    for (const std::string& member : members) {
      if (!table.HasScorer(member)) {
        throw InvalidArgument("scorer '" + member + "' not in table");
      }
      auto [first, last] = table.ScorerRange(member);
      for (auto it = first; it != last; ++it) {
        auto& slot = sums[{it->first.domain, it->first.source_id,
                           it->first.system_id}];
        slot.first += it->second;
        slot.second += 1;
      }
    }
    for (const auto& [item, sum] : sums) {
      if (sum.second != members.size()) {
        if (options.restrict_to_intersection) continue;
        throw CoverageError("members of group '" + group_id +
                            "' do not cover identical keys");
      }
      out.Insert({group_id, item.domain, item.source_id, item.system_id},
                 sum.first / static_cast<double>(sum.second));
    }
    out.SetKind(group_id, table.KindOf(members.front()));
  }
  return out;
}

std::vector<std::vector<std::string>> SegmentPartition(
    const ScoreTable& table, const std::string& domain,
    const GroupingConfig& cfg) {
  if (cfg.n < 1) throw InvalidArgument("group size must be >= 1");
  std::set<std::string> source_set;
  for (const auto& [key, score] : table.entries()) {
    if (key.domain == domain) source_set.insert(key.source_id);
  }
  std::vector<std::string> sources(source_set.begin(), source_set.end());
  if (cfg.strategy == GroupingStrategy::kShuffled) {
    const KeyedRng rng(cfg.seed, HashString(domain));
    for (std::size_t i = sources.size(); i > 1; --i) {
      const std::size_t j = rng.Bits(i) % i;
      std::swap(sources[i - 1], sources[j]);
    }
  }
  const std::size_t n = static_cast<std::size_t>(cfg.n);
  std::vector<std::vector<std::string>> groups;
  for (std::size_t begin = 0; begin + n <= sources.size(); begin += n) {
    groups.emplace_back(sources.begin() + begin, sources.begin() + begin + n);
  }
  return groups;
}

ScoreTable GroupSegments(const ScoreTable& table, const GroupingConfig& cfg) {
  if (cfg.n < 1) throw InvalidArgument("group size must be >= 1");
  if (cfg.n == 1) return table;

  ScoreTable out;
  out.set_partial(table.partial());
  for (const std::string& scorer : table.Scorers()) {
    out.SetKind(scorer, table.KindOf(scorer));
  }
  for (const std::string& domain : table.Domains()) {
    const auto groups = SegmentPartition(table, domain, cfg);
    if (groups.empty()) {
      throw CoverageError("domain '" + domain + "' has fewer sources than n=" +
                          std::to_string(cfg.n));
    }
    // (scorer, system) -> source -> score
    std::map<std::pair<std::string, std::string>,
             std::map<std::string, double>>
        cells;
    for (const auto& [key, score] : table.entries()) {
      if (key.domain == domain) {
        cells[{key.scorer, key.system_id}][key.source_id] = score;
      }
    }
    for (const auto& [cell, scores] : cells) {
      for (std::size_t g = 0; g < groups.size(); ++g) {
        double sum = 0.0;
        std::size_t covered = 0;
        for (const std::string& source : groups[g]) {
          auto it = scores.find(source);
          if (it != scores.end()) {
            sum += it->second;
            ++covered;
          }
        }
        if (covered == 0) continue;
        if (covered != groups[g].size()) {
          throw CoverageError("scorer '" + cell.first + "' covers only " +
                              std::to_string(covered) + " of " +
                              std::to_string(groups[g].size()) +
                              " segments of a group for system '" +
                              cell.second + "' in domain '" + domain + "'");
        }
        out.Insert({cell.first, domain, GroupId(g, groups.size()), cell.second},
                   sum / static_cast<double>(covered));
      }
    }
  }
  return out;
}

std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>
DisjointGroupPairs(const std::vector<std::string>& members,
                   std::size_t group_size) {
  if (group_size == 0) throw InvalidArgument("group size must be >= 1");
  if (members.size() < 2 * group_size) {
    throw InvalidArgument("need at least " + std::to_string(2 * group_size) +
                          " members for two disjoint groups");
  }
  std::vector<std::vector<std::size_t>> combos;
  std::vector<std::size_t> current;
  Combinations(members.size(), group_size, 0, current, combos);

  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>
      out;
  for (std::size_t a = 0; a < combos.size(); ++a) {
    for (std::size_t b = a + 1; b < combos.size(); ++b) {
      bool disjoint = true;
      for (std::size_t i : combos[a]) {
        if (std::find(combos[b].begin(), combos[b].end(), i) !=
            combos[b].end()) {
          disjoint = false;
          break;
        }
      }
      if (!disjoint) continue;
      std::vector<std::string> left, right;
      for (std::size_t i : combos[a]) left.push_back(members[i]);
      for (std::size_t i : combos[b]) right.push_back(members[i]);
      out.emplace_back(std::move(left), std::move(right));
    }
  }
  return out;
}

}  // namespace qemeta
