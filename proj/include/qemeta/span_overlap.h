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

// Character-level overlap of error masks, micro-aggregated over a corpus.
// Minor and major spans count the same; zero-width omission spans are
// ignored.

#ifndef QEMETA_SPAN_OVERLAP_H_
#define QEMETA_SPAN_OVERLAP_H_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qemeta/types.h"

namespace qemeta {

// Reserved annotator id marking predicted spans in an annotation file.
inline constexpr const char* kPredictionAnnotator = "prediction";

// mask[i] is true iff character i lies in some non-omission span. Throws
// InvalidArgument for spans outside [0, text_len].
std::vector<bool> CharMask(const std::vector<ErrorSpan>& spans,
                           std::size_t text_len);

struct MaskedSegment {
  std::vector<ErrorSpan> spans;
  std::size_t text_len = 0;
};

// Segments keyed by (domain, source_id, system_id).
using SegmentSpans = std::map<ItemKey, MaskedSegment>;

struct OverlapCounts {
  std::size_t true_positive = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;
};

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Throws InvalidArgument when the two maps do not have the same keys or a
// segment's text lengths disagree.
OverlapCounts CountOverlap(const SegmentSpans& pred, const SegmentSpans& gold);

// P = TP / predicted, R = TP / gold, F1 their harmonic mean. A 0/0 ratio is
// 1 when neither side marks anything, otherwise 0.
PrecisionRecall ScoreOverlap(const OverlapCounts& counts);

PrecisionRecall SpanPrf(const SegmentSpans& pred, const SegmentSpans& gold);

// The spans one annotator placed, keyed by segment.
SegmentSpans SpansOf(const std::vector<AnnotationRecord>& records,
                     const std::string& annotator);

// Mean of SpanPrf over ordered annotator pairs (one as prediction, the
// other as gold), each restricted to the segments both annotated. Pairs
// with no shared segment are skipped. Throws InvalidArgument for fewer than
// two annotators and CoverageError if no pair shares a segment.
PrecisionRecall AnnotatorSpanAgreement(
    const std::vector<AnnotationRecord>& records,
    const std::vector<std::string>& annotators);

// Mean of SpanPrf of `prediction` against each annotator in turn, each
// restricted to the segments both cover. Annotators sharing no segment with
// the prediction are skipped; CoverageError if none is left.
PrecisionRecall PredictionSpanAgreement(
    const SegmentSpans& prediction,
    const std::vector<AnnotationRecord>& gold_records,
    const std::vector<std::string>& annotators);

// Restricts both maps to their common keys.
std::pair<SegmentSpans, SegmentSpans> SharedSegments(const SegmentSpans& a,
                                                     const SegmentSpans& b);

}  // namespace qemeta

#endif  // QEMETA_SPAN_OVERLAP_H_
