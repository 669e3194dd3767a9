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

// Reading and writing annotation and score files.
//
// Annotation files are JSON Lines, one AnnotationRecord per line:
//
//   {"domain":"wmt23","lang_pair":"en-de","source_id":"17","system_id":"DeepL",
//    "annotator_id":"a1","score":85,
//    "spans":[{"start":0,"end":4,"severity":"minor","omission":false}],
//    "source_text":"...","target_text":"..."}
//
// Score files are comma-separated with the header
//
//   scorer_id,domain,source_id,system_id,score[,kind]
//
// where the optional kind column is one of human, metric, baseline.

#ifndef QEMETA_INGEST_H_
#define QEMETA_INGEST_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qemeta/types.h"

namespace qemeta {

// Parses an annotation stream. Blank lines are skipped. Errors carry the
// 1-based line number and the offending field. Duplicate
// (domain, source_id, system_id, annotator_id) keys are rejected.
std::vector<AnnotationRecord> ParseAnnotations(std::istream& in);

// One JSON object per record, no trailing whitespace. Integral scores are
// written without a fractional part.
std::string SerializeAnnotation(const AnnotationRecord& record);
void WriteAnnotations(const std::vector<AnnotationRecord>& records,
                      std::ostream& out);

// Parses a score table. Scorers default to kMetric unless the kind column
// says otherwise. An incomplete table is marked partial.
ScoreTable ParseScores(std::istream& in);
void WriteScores(const ScoreTable& table, std::ostream& out);

// Shortest decimal representation that round-trips to the same double.
std::string FormatNumber(double value);

struct DatasetStats {
  std::size_t n_annotations = 0;
  std::size_t n_annotated_segments = 0;  // distinct (domain, source, system)
  std::size_t n_sources = 0;             // distinct (domain, source)
  double avg_words_per_source = 0.0;
  // lang_pair -> {annotators per segment -> number of segments}
  std::map<std::string, std::map<std::size_t, std::size_t>>
      annotators_per_segment;
  double avg_esa_score = 0.0;
  double avg_errors_per_segment = 0.0;
  // Absent when no error spans exist at all.
  std::optional<double> minor_pct;
  std::optional<double> major_pct;

  // Most frequent annotators-per-segment count for a language pair (ties go
  // to the larger count); 0 if the pair is unknown.
  std::size_t TypicalAnnotators(const std::string& lang_pair) const;
};

// Throws InvalidArgument on empty input.
DatasetStats ComputeDatasetStats(const std::vector<AnnotationRecord>& records);

// One human-scorer entry per record, keyed by annotator id.
ScoreTable ScoresFromAnnotations(const std::vector<AnnotationRecord>& records);

}  // namespace qemeta

#endif  // QEMETA_INGEST_H_
