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

#include "qemeta/baselines.h"

#include "qemeta/errors.h"
#include "qemeta/rng.h"

namespace qemeta {
namespace {

std::uint64_t ItemHash(const ItemKey& key) {
  return HashCombine(HashCombine(HashString(key.domain), HashString(key.source_id)),
                     HashString(key.system_id));
}

}  // namespace

ScoreTable RandomMetric(const std::set<ItemKey>& keys, std::uint64_t seed,
                        const std::string& scorer_id) {
  if (keys.empty()) throw InvalidArgument("random baseline needs keys");
  const KeyedRng rng(seed, HashString("random-metric"));
  ScoreTable table;
  table.SetKind(scorer_id, ScorerKind::kBaseline);
  for (const ItemKey& key : keys) {
    table.Insert({scorer_id, key.domain, key.source_id, key.system_id},
                 rng.Uniform(ItemHash(key)));
  }
  return table;
}

ScoreTable ConstantTieBaseline(const std::set<ItemKey>& keys,
                               const std::string& scorer_id) {
  if (keys.empty()) throw InvalidArgument("constant baseline needs keys");
  ScoreTable table;
  table.SetKind(scorer_id, ScorerKind::kBaseline);
  for (const ItemKey& key : keys) {
    table.Insert({scorer_id, key.domain, key.source_id, key.system_id}, 0.0);
  }
  return table;
}

}  // namespace qemeta
