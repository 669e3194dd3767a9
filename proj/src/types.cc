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

#include "qemeta/types.h"

#include <cmath>
#include <string>

#include "qemeta/errors.h"

namespace qemeta {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage:
      return "usage";
    case ErrorKind::kSchema:
      return "schema";
    case ErrorKind::kCoverage:
      return "coverage";
    case ErrorKind::kInvalidArgument:
      return "invalid_argument";
    case ErrorKind::kIo:
      return "io";
  }
  return "unknown";
}

std::string_view SeverityName(Severity severity) {
  return severity == Severity::kMajor ? "major" : "minor";
}

std::optional<Severity> ParseSeverity(std::string_view name) {
  if (name == "minor") return Severity::kMinor;
  if (name == "major") return Severity::kMajor;
  return std::nullopt;
}

std::size_t CodePointLength(std::string_view utf8) {
  std::size_t n = 0;
  for (unsigned char c : utf8) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

void ValidateRecord(const AnnotationRecord& record) {
  if (!(record.score >= 0.0 && record.score <= 100.0)) {
    throw SchemaError("score " + std::to_string(record.score) +
                      " outside [0, 100]");
  }
  const std::size_t length = CodePointLength(record.target_text);
  for (const ErrorSpan& span : record.spans) {
    if (span.start > span.end || span.end > length) {
      throw SchemaError("span [" + std::to_string(span.start) + ", " +
                        std::to_string(span.end) +
                        ") out of bounds for target of length " +
                        std::to_string(length));
    }
  }
}

std::string_view ScorerKindName(ScorerKind kind) {
  switch (kind) {
    case ScorerKind::kHuman:
      return "human";
    case ScorerKind::kMetric:
      return "metric";
    case ScorerKind::kBaseline:
      return "baseline";
  }
  return "metric";
}

std::optional<ScorerKind> ParseScorerKind(std::string_view name) {
  if (name == "human") return ScorerKind::kHuman;
  if (name == "metric") return ScorerKind::kMetric;
  if (name == "baseline") return ScorerKind::kBaseline;
  return std::nullopt;
}

void ScoreTable::Insert(ScoreKey key, double score) {
  auto [it, inserted] = entries_.emplace(std::move(key), score);
  if (!inserted) {
    const ScoreKey& k = it->first;
    throw SchemaError("duplicate score key (" + k.scorer + ", " + k.domain +
                      ", " + k.source_id + ", " + k.system_id + ")");
  }
}

void ScoreTable::SetKind(const std::string& scorer, ScorerKind kind) {
  kinds_[scorer] = kind;
}

std::optional<double> ScoreTable::Find(const ScoreKey& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool ScoreTable::HasScorer(std::string_view scorer) const {
  auto [first, last] = ScorerRange(scorer);
  return first != last;
}

ScorerKind ScoreTable::KindOf(std::string_view scorer) const {
  auto it = kinds_.find(scorer);
  return it == kinds_.end() ? ScorerKind::kMetric : it->second;
}

std::vector<std::string> ScoreTable::Scorers() const {
  std::vector<std::string> out;
  for (const auto& [key, score] : entries_) {
    if (out.empty() || out.back() != key.scorer) out.push_back(key.scorer);
  }
  return out;
}

std::vector<std::string> ScoreTable::ScorersOfKind(ScorerKind kind) const {
  std::vector<std::string> out;
  for (std::string& scorer : Scorers()) {
    if (KindOf(scorer) == kind) out.push_back(std::move(scorer));
  }
  return out;
}

std::vector<std::string> ScoreTable::Domains() const {
  std::set<std::string> domains;
  for (const auto& [key, score] : entries_) domains.insert(key.domain);
  return {domains.begin(), domains.end()};
}

std::vector<std::string> ScoreTable::Systems(std::string_view scorer,
                                             std::string_view domain) const {
  std::set<std::string> systems;
  auto [first, last] = ScorerRange(scorer);
  for (auto it = first; it != last; ++it) {
    if (it->first.domain == domain) systems.insert(it->first.system_id);
  }
  return {systems.begin(), systems.end()};
}

std::set<ItemKey> ScoreTable::Items() const {
  std::set<ItemKey> items;
  for (const auto& [key, score] : entries_) {
    items.insert({key.domain, key.source_id, key.system_id});
  }
  return items;
}

std::pair<ScoreTable::Entries::const_iterator,
          ScoreTable::Entries::const_iterator>
ScoreTable::ScorerRange(std::string_view scorer) const {
  std::string id(scorer);
  auto first = entries_.lower_bound(ScoreKey{id, "", "", ""});
  // id + '\0' is the smallest string ordered after id.
  auto last = entries_.lower_bound(ScoreKey{id + '\0', "", "", ""});
  return {first, last};
}

bool ScoreTable::IsComplete() const {
  // (scorer, domain) -> system -> sources
  std::map<std::pair<std::string, std::string>,
           std::map<std::string, std::set<std::string>>>
      coverage;
  for (const auto& [key, score] : entries_) {
    coverage[{key.scorer, key.domain}][key.system_id].insert(key.source_id);
  }
  for (const auto& [scorer_domain, systems] : coverage) {
    const std::set<std::string>* reference = nullptr;
    for (const auto& [system, sources] : systems) {
      if (reference == nullptr) {
        reference = &sources;
      } else if (sources != *reference) {
        return false;
      }
    }
  }
  return true;
}

ScoreTable ScoreTable::Select(const std::vector<std::string>& scorers) const {
  ScoreTable out;
  out.partial_ = partial_;
  for (const std::string& scorer : scorers) {
    auto [first, last] = ScorerRange(scorer);
    for (auto it = first; it != last; ++it) out.entries_.insert(*it);
    out.SetKind(scorer, KindOf(scorer));
  }
  return out;
}

ScoreTable ScoreTable::RestrictToDomain(std::string_view domain) const {
  ScoreTable out;
  out.partial_ = partial_;
  out.kinds_ = kinds_;
  for (const auto& entry : entries_) {
    if (entry.first.domain == domain) out.entries_.insert(out.entries_.end(), entry);
  }
  return out;
}

void ScoreTable::Merge(const ScoreTable& other) {
  for (const auto& [key, score] : other.entries_) Insert(key, score);
  for (const auto& [scorer, kind] : other.kinds_) kinds_[scorer] = kind;
  partial_ = partial_ || other.partial_;
}

ScoreTable ScoreTable::Renamed(std::string_view scorer,
                               const std::string& new_id) const {
  ScoreTable out;
  out.partial_ = partial_;
  auto [first, last] = ScorerRange(scorer);
  for (auto it = first; it != last; ++it) {
    ScoreKey key = it->first;
    key.scorer = new_id;
    out.entries_.emplace(std::move(key), it->second);
  }
  out.SetKind(new_id, KindOf(scorer));
  return out;
}

PairTally& PairTally::operator+=(const PairTally& other) {
  concordant += other.concordant;
  discordant += other.discordant;
  tie_metric_only += other.tie_metric_only;
  tie_human_only += other.tie_human_only;
  tie_both += other.tie_both;
  return *this;
}

TieThreshold::TieThreshold(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon >= 0.0)) {
    throw InvalidArgument("tie threshold must be a nonnegative number");
  }
}

bool TieThreshold::IsTie(double difference) const {
  return std::fabs(difference) <= epsilon_;
}

}  // namespace qemeta
