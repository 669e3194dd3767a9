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

#include "qemeta/ingest.h"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>
#include <tuple>

#include "json.hpp"
#include "qemeta/errors.h"

namespace qemeta {
namespace {

using Json = nlohmann::json;

[[noreturn]] void FailAt(std::size_t line, std::string_view field,
                         std::string_view what) {
  std::string message = "line " + std::to_string(line);
  if (!field.empty()) message += ": field '" + std::string(field) + "'";
  message += ": " + std::string(what);
  throw SchemaError(message);
}

std::string RequireString(const Json& obj, const char* field,
                          std::size_t line) {
  auto it = obj.find(field);
  if (it == obj.end()) FailAt(line, field, "missing");
  if (!it->is_string()) FailAt(line, field, "expected a string");
  return it->get<std::string>();
}

std::size_t RequireOffset(const Json& obj, const char* field,
                          std::size_t line) {
  auto it = obj.find(field);
  if (it == obj.end()) FailAt(line, field, "missing");
  if (!it->is_number_unsigned()) {
    FailAt(line, field, "expected a nonnegative integer");
  }
  return it->get<std::size_t>();
}

ErrorSpan ParseSpan(const Json& obj, std::size_t line) {
  if (!obj.is_object()) FailAt(line, "spans", "each span must be an object");
  ErrorSpan span;
  span.start = RequireOffset(obj, "start", line);
  span.end = RequireOffset(obj, "end", line);
  const std::string severity = RequireString(obj, "severity", line);
  auto parsed = ParseSeverity(severity);
  if (!parsed) FailAt(line, "severity", "must be 'minor' or 'major'");
  span.severity = *parsed;
  auto omission = obj.find("omission");
  if (omission != obj.end()) {
    if (!omission->is_boolean()) FailAt(line, "omission", "expected a boolean");
    span.omission = omission->get<bool>();
  }
  return span;
}

AnnotationRecord ParseRecord(std::string_view text, std::size_t line) {
  Json obj = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (obj.is_discarded()) FailAt(line, "", "invalid JSON");
  if (!obj.is_object()) FailAt(line, "", "expected a JSON object");

  AnnotationRecord record;
  record.domain = RequireString(obj, "domain", line);
  record.lang_pair = RequireString(obj, "lang_pair", line);
  record.source_id = RequireString(obj, "source_id", line);
  record.system_id = RequireString(obj, "system_id", line);
  record.annotator_id = RequireString(obj, "annotator_id", line);
  record.source_text = RequireString(obj, "source_text", line);
  record.target_text = RequireString(obj, "target_text", line);

  auto score = obj.find("score");
  if (score == obj.end()) FailAt(line, "score", "missing");
  if (!score->is_number()) FailAt(line, "score", "expected a number");
  record.score = score->get<double>();
  if (!(record.score >= 0.0 && record.score <= 100.0)) {
    FailAt(line, "score", "outside [0, 100]");
  }

  auto spans = obj.find("spans");
  if (spans == obj.end()) FailAt(line, "spans", "missing");
  if (!spans->is_array()) FailAt(line, "spans", "expected an array");
  const std::size_t length = CodePointLength(record.target_text);
  for (const Json& s : *spans) {
    ErrorSpan span = ParseSpan(s, line);
    if (span.start > span.end || span.end > length) {
      FailAt(line, "spans",
             "span [" + std::to_string(span.start) + ", " +
                 std::to_string(span.end) + ") out of bounds for target of " +
                 std::to_string(length) + " characters");
    }
    record.spans.push_back(span);
  }
  return record;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    std::size_t comma = line.find(',', begin);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(begin));
      return fields;
    }
    fields.push_back(line.substr(begin, comma - begin));
    begin = comma + 1;
  }
}

std::string_view StripCarriageReturn(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

bool IsBlank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace

std::string FormatNumber(double value) {
  char buffer[64];
  auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::vector<AnnotationRecord> ParseAnnotations(std::istream& in) {
  std::vector<AnnotationRecord> records;
  std::set<std::tuple<std::string, std::string, std::string, std::string>>
      seen;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (IsBlank(text)) continue;
    AnnotationRecord record = ParseRecord(text, line);
    auto key = std::make_tuple(record.domain, record.source_id,
                               record.system_id, record.annotator_id);
    if (!seen.insert(std::move(key)).second) {
      FailAt(line, "",
             "duplicate (domain, source_id, system_id, annotator_id) = (" +
                 record.domain + ", " + record.source_id + ", " +
                 record.system_id + ", " + record.annotator_id + ")");
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::string SerializeAnnotation(const AnnotationRecord& record) {
  nlohmann::ordered_json obj;
  obj["domain"] = record.domain;
  obj["lang_pair"] = record.lang_pair;
  obj["source_id"] = record.source_id;
  obj["system_id"] = record.system_id;
  obj["annotator_id"] = record.annotator_id;
  if (record.score == std::floor(record.score)) {
    obj["score"] = static_cast<std::int64_t>(record.score);
  } else {
    obj["score"] = record.score;
  }
  obj["spans"] = nlohmann::ordered_json::array();
  for (const ErrorSpan& span : record.spans) {
    nlohmann::ordered_json s;
    s["start"] = span.start;
    s["end"] = span.end;
    s["severity"] = std::string(SeverityName(span.severity));
    s["omission"] = span.omission;
    obj["spans"].push_back(std::move(s));
  }
  obj["source_text"] = record.source_text;
  obj["target_text"] = record.target_text;
  return obj.dump();
}

void WriteAnnotations(const std::vector<AnnotationRecord>& records,
                      std::ostream& out) {
  for (const AnnotationRecord& record : records) {
    out << SerializeAnnotation(record) << '\n';
  }
}

ScoreTable ParseScores(std::istream& in) {
  ScoreTable table;
  std::map<std::string, ScorerKind> kinds;
  std::string text;
  std::size_t line = 0;
  bool has_kind_column = false;
  bool header_seen = false;
  while (std::getline(in, text)) {
    ++line;
    std::string_view row = StripCarriageReturn(text);
    if (IsBlank(row)) continue;
    std::vector<std::string_view> fields = SplitFields(row);
    if (!header_seen) {
      header_seen = true;
      const bool base = fields.size() >= 5 && fields[0] == "scorer_id" &&
                        fields[1] == "domain" && fields[2] == "source_id" &&
                        fields[3] == "system_id" && fields[4] == "score";
      has_kind_column = fields.size() == 6 && fields[5] == "kind";
      if (!base || (fields.size() != 5 && !has_kind_column)) {
        FailAt(line, "",
               "expected header scorer_id,domain,source_id,system_id,score"
               "[,kind]");
      }
      continue;
    }
    const std::size_t expected = has_kind_column ? 6 : 5;
    if (fields.size() != expected) {
      FailAt(line, "", "expected " + std::to_string(expected) +
                           " columns, got " + std::to_string(fields.size()));
    }
    double score = 0.0;
    std::string_view number = fields[4];
    auto [ptr, ec] =
        std::from_chars(number.data(), number.data() + number.size(), score);
    if (number.empty() || ec != std::errc() ||
        ptr != number.data() + number.size() || !std::isfinite(score)) {
      FailAt(line, "score", "not a finite number: '" + std::string(number) +
                                "'");
    }
    std::string scorer(fields[0]);
    ScorerKind kind = ScorerKind::kMetric;
    if (has_kind_column) {
      auto parsed = ParseScorerKind(fields[5]);
      if (!parsed) FailAt(line, "kind", "must be human, metric or baseline");
      kind = *parsed;
    }
    auto [it, inserted] = kinds.emplace(scorer, kind);
    if (!inserted && it->second != kind) {
      FailAt(line, "kind", "conflicting kind for scorer " + scorer);
    }
    try {
      table.Insert({scorer, std::string(fields[1]), std::string(fields[2]),
                    std::string(fields[3])},
                   score);
    } catch (const SchemaError& e) {
      FailAt(line, "", e.what());
    }
  }
  for (const auto& [scorer, kind] : kinds) table.SetKind(scorer, kind);
  table.set_partial(!table.IsComplete());
  return table;
}

void WriteScores(const ScoreTable& table, std::ostream& out) {
  out << "scorer_id,domain,source_id,system_id,score,kind\n";
  for (const auto& [key, score] : table.entries()) {
    for (const std::string* field :
         {&key.scorer, &key.domain, &key.source_id, &key.system_id}) {
      if (field->find_first_of(",\n\r") != std::string::npos) {
        throw SchemaError("identifier '" + *field +
                          "' cannot be written to a score file");
      }
    }
    out << key.scorer << ',' << key.domain << ',' << key.source_id << ','
        << key.system_id << ',' << FormatNumber(score) << ','
        << ScorerKindName(table.KindOf(key.scorer)) << '\n';
  }
}

std::size_t DatasetStats::TypicalAnnotators(
    const std::string& lang_pair) const {
  auto it = annotators_per_segment.find(lang_pair);
  if (it == annotators_per_segment.end()) return 0;
  std::size_t best = 0;
  std::size_t best_count = 0;
  for (const auto& [annotators, segments] : it->second) {
    if (segments >= best_count) {
      best = annotators;
      best_count = segments;
    }
  }
  return best;
}

DatasetStats ComputeDatasetStats(
    const std::vector<AnnotationRecord>& records) {
  if (records.empty()) throw InvalidArgument("no records to summarize");
  DatasetStats stats;
  stats.n_annotations = records.size();

  // (domain, source) -> source text; (domain, source, system) -> annotators
  std::map<std::pair<std::string, std::string>, std::string> sources;
  std::map<std::tuple<std::string, std::string, std::string>,
           std::pair<std::string, std::size_t>>
      segments;
  double score_sum = 0.0;
  std::size_t spans = 0;
  std::size_t minor = 0;
  std::size_t major = 0;
  for (const AnnotationRecord& r : records) {
    score_sum += r.score;
    spans += r.spans.size();
    for (const ErrorSpan& span : r.spans) {
      (span.severity == Severity::kMajor ? major : minor) += 1;
    }
    sources.emplace(std::make_pair(r.domain, r.source_id), r.source_text);
    auto& segment = segments[{r.domain, r.source_id, r.system_id}];
    segment.first = r.lang_pair;
    segment.second += 1;
  }
  stats.n_sources = sources.size();
  stats.n_annotated_segments = segments.size();

  std::size_t words = 0;
  for (const auto& [key, text] : sources) {
    std::istringstream tokens(text);
    std::string token;
    while (tokens >> token) ++words;
  }
  stats.avg_words_per_source =
      static_cast<double>(words) / static_cast<double>(sources.size());
  for (const auto& [key, value] : segments) {
    stats.annotators_per_segment[value.first][value.second] += 1;
  }
  const double n = static_cast<double>(records.size());
  stats.avg_esa_score = score_sum / n;
  stats.avg_errors_per_segment = static_cast<double>(spans) / n;
  if (spans > 0) {
    stats.minor_pct = 100.0 * static_cast<double>(minor) / spans;
    stats.major_pct = 100.0 * static_cast<double>(major) / spans;
  }
  return stats;
}

ScoreTable ScoresFromAnnotations(
    const std::vector<AnnotationRecord>& records) {
  ScoreTable table;
  for (const AnnotationRecord& r : records) {
    table.Insert({r.annotator_id, r.domain, r.source_id, r.system_id},
                 r.score);
    table.SetKind(r.annotator_id, ScorerKind::kHuman);
  }
  table.set_partial(!table.IsComplete());
  return table;
}

}  // namespace qemeta
