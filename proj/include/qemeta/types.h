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

// Core value types shared by every module: annotations, score tables,
// pair tallies, tie thresholds and p-value matrices.

#ifndef QEMETA_TYPES_H_
#define QEMETA_TYPES_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qemeta {

enum class Severity { kMinor, kMajor };

std::string_view SeverityName(Severity severity);
std::optional<Severity> ParseSeverity(std::string_view name);

// Half-open character range [start, end) in the target text. Offsets count
// Unicode code points. Omissions are zero-width spans at the insertion point.
struct ErrorSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  Severity severity = Severity::kMinor;
  bool omission = false;

  bool operator==(const ErrorSpan&) const = default;
};

// Number of Unicode code points in a UTF-8 string.
std::size_t CodePointLength(std::string_view utf8);

// One annotator's judgment of one translation.
struct AnnotationRecord {
  std::string domain;
  std::string lang_pair;
  std::string source_id;
  std::string system_id;
  std::string annotator_id;
  double score = 0.0;
  std::vector<ErrorSpan> spans;
  std::string source_text;
  std::string target_text;

  bool operator==(const AnnotationRecord&) const = default;
};

// Throws SchemaError if the score is outside [0, 100] or a span does not fit
// the target text.
void ValidateRecord(const AnnotationRecord& record);

enum class ScorerKind { kHuman, kMetric, kBaseline };

std::string_view ScorerKindName(ScorerKind kind);
std::optional<ScorerKind> ParseScorerKind(std::string_view name);

struct ScoreKey {
  std::string scorer;
  std::string domain;
  std::string source_id;
  std::string system_id;

  auto operator<=>(const ScoreKey&) const = default;
  bool operator==(const ScoreKey&) const = default;
};

// A translation identified independently of who scored it.
struct ItemKey {
  std::string domain;
  std::string source_id;
  std::string system_id;

  auto operator<=>(const ItemKey&) const = default;
  bool operator==(const ItemKey&) const = default;
};

// Scores indexed by (scorer, domain, source, system). Entries are kept
// sorted by key, so iteration order is deterministic and all entries of a
// scorer are contiguous.
class ScoreTable {
 public:
  using Entries = std::map<ScoreKey, double>;

  // Throws SchemaError on a duplicate key.
  void Insert(ScoreKey key, double score);
  // Registers a scorer kind; scorers default to kMetric.
  void SetKind(const std::string& scorer, ScorerKind kind);

  std::optional<double> Find(const ScoreKey& key) const;
  bool HasScorer(std::string_view scorer) const;
  ScorerKind KindOf(std::string_view scorer) const;

  const Entries& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::vector<std::string> Scorers() const;
  std::vector<std::string> ScorersOfKind(ScorerKind kind) const;
  std::vector<std::string> Domains() const;
  std::vector<std::string> Systems(std::string_view scorer,
                                   std::string_view domain) const;
  std::set<ItemKey> Items() const;

  // Iterator range over one scorer's entries.
  std::pair<Entries::const_iterator, Entries::const_iterator> ScorerRange(
      std::string_view scorer) const;

  // True when every (domain, source) a scorer covers for one system is
  // covered for all systems the scorer has in that domain.
  bool IsComplete() const;

  bool partial() const { return partial_; }
  void set_partial(bool partial) { partial_ = partial; }

  // Subtable with only the listed scorers (kinds carried along).
  ScoreTable Select(const std::vector<std::string>& scorers) const;
  // Subtable with only entries from one domain.
  ScoreTable RestrictToDomain(std::string_view domain) const;
  // Adds every entry of `other`; throws SchemaError on key collisions.
  void Merge(const ScoreTable& other);

  // Copy of `scorer`'s entries under a new scorer id.
  ScoreTable Renamed(std::string_view scorer, const std::string& new_id) const;

 private:
  Entries entries_;
  std::map<std::string, ScorerKind, std::less<>> kinds_;
  bool partial_ = false;
};

// Counts behind tie-aware pairwise accuracy. The "metric" role is the first
// scorer handed to Tally(), the "human" role the second.
struct PairTally {
  std::int64_t concordant = 0;
  std::int64_t discordant = 0;
  std::int64_t tie_metric_only = 0;
  std::int64_t tie_human_only = 0;
  std::int64_t tie_both = 0;

  std::int64_t total() const {
    return concordant + discordant + tie_metric_only + tie_human_only +
           tie_both;
  }
  PairTally& operator+=(const PairTally& other);
  bool operator==(const PairTally&) const = default;
};

// Largest absolute score difference still called a tie.
class TieThreshold {
 public:
  TieThreshold() = default;
  // Throws InvalidArgument for negative or NaN values.
  explicit TieThreshold(double epsilon);

  double epsilon() const { return epsilon_; }
  bool IsTie(double difference) const;

 private:
  double epsilon_ = 0.0;
};

// p[i][j] is the one-sided confidence that system i is preferred over j.
struct PValueMatrix {
  std::vector<std::string> systems;
  std::vector<std::vector<double>> p;

  std::size_t size() const { return systems.size(); }
  double at(std::size_t i, std::size_t j) const { return p[i][j]; }
};

enum class GroupingStrategy { kShuffled, kOrdered };

struct GroupingConfig {
  int n = 1;
  std::uint64_t seed = 0;
  GroupingStrategy strategy = GroupingStrategy::kShuffled;
};

}  // namespace qemeta

#endif  // QEMETA_TYPES_H_
