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

#include "qemeta/span_overlap.h"

#include "qemeta/errors.h"

namespace qemeta {

std::vector<bool> CharMask(const std::vector<ErrorSpan>& spans,
                           std::size_t text_len) {
  std::vector<bool> mask(text_len, false);
  for (const ErrorSpan& span : spans) {
    if (span.start > span.end || span.end > text_len) {
      throw InvalidArgument("span [" + std::to_string(span.start) + ", " +
                            std::to_string(span.end) +
                            ") invalid for text length " +
                            std::to_string(text_len));
    }
    if (span.omission) continue;
    for (std::size_t i = span.start; i < span.end; ++i) mask[i] = true;
  }
  return mask;
}

OverlapCounts CountOverlap(const SegmentSpans& pred, const SegmentSpans& gold) {
  if (pred.size() != gold.size()) {
    throw InvalidArgument("prediction and gold cover different segments");
  }
  OverlapCounts counts;
  auto g = gold.begin();
  for (auto p = pred.begin(); p != pred.end(); ++p, ++g) {
    if (p->first != g->first) {
      throw InvalidArgument("prediction and gold cover different segments");
    }
    if (p->second.text_len != g->second.text_len) {
      throw InvalidArgument("segment " + p->first.source_id + "/" +
                            p->first.system_id +
                            " has different text lengths");
    }
    const std::vector<bool> pm = CharMask(p->second.spans, p->second.text_len);
    const std::vector<bool> gm = CharMask(g->second.spans, g->second.text_len);
    for (std::size_t i = 0; i < pm.size(); ++i) {
      counts.predicted += pm[i];
      counts.gold += gm[i];
      counts.true_positive += pm[i] && gm[i];
    }
  }
  return counts;
}

PrecisionRecall ScoreOverlap(const OverlapCounts& counts) {
  const bool nothing_marked = counts.predicted == 0 && counts.gold == 0;
  auto ratio = [&](std::size_t num, std::size_t den) {
    if (den == 0) return nothing_marked ? 1.0 : 0.0;
    return static_cast<double>(num) / static_cast<double>(den);
  };
  PrecisionRecall out;
  out.precision = ratio(counts.true_positive, counts.predicted);
  out.recall = ratio(counts.true_positive, counts.gold);
  const double sum = out.precision + out.recall;
  out.f1 = sum > 0.0 ? 2.0 * out.precision * out.recall / sum : 0.0;
  return out;
}

PrecisionRecall SpanPrf(const SegmentSpans& pred, const SegmentSpans& gold) {
  return ScoreOverlap(CountOverlap(pred, gold));
}

SegmentSpans SpansOf(const std::vector<AnnotationRecord>& records,
                     const std::string& annotator) {
  SegmentSpans out;
  for (const AnnotationRecord& r : records) {
    if (r.annotator_id != annotator) continue;
    out[{r.domain, r.source_id, r.system_id}] =
        MaskedSegment{r.spans, CodePointLength(r.target_text)};
  }
  return out;
}

std::pair<SegmentSpans, SegmentSpans> SharedSegments(const SegmentSpans& a,
                                                     const SegmentSpans& b) {
  SegmentSpans left, right;
  for (const auto& [key, segment] : a) {
    auto it = b.find(key);
    if (it == b.end()) continue;
    left.emplace(key, segment);
    right.emplace(key, it->second);
  }
  return {std::move(left), std::move(right)};
}

PrecisionRecall AnnotatorSpanAgreement(
    const std::vector<AnnotationRecord>& records,
    const std::vector<std::string>& annotators) {
  if (annotators.size() < 2) {
    throw InvalidArgument("span agreement needs >= 2 annotators");
  }
  std::vector<SegmentSpans> spans;
  for (const std::string& a : annotators) spans.push_back(SpansOf(records, a));

  PrecisionRecall mean;
  std::size_t count = 0;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    for (std::size_t j = 0; j < spans.size(); ++j) {
      if (i == j) continue;
      auto [pred, gold] = SharedSegments(spans[i], spans[j]);
      if (pred.empty()) continue;
      const PrecisionRecall prf = SpanPrf(pred, gold);
      mean.precision += prf.precision;
      mean.recall += prf.recall;
      mean.f1 += prf.f1;
      ++count;
    }
  }
  if (count == 0) throw CoverageError("no annotator pair shares a segment");
  const double n = static_cast<double>(count);
  mean.precision /= n;
  mean.recall /= n;
  mean.f1 /= n;
  return mean;
}

PrecisionRecall PredictionSpanAgreement(
    const SegmentSpans& prediction,
    const std::vector<AnnotationRecord>& gold_records,
    const std::vector<std::string>& annotators) {
  PrecisionRecall mean;
  std::size_t count = 0;
  for (const std::string& a : annotators) {
    auto [pred, gold] = SharedSegments(prediction, SpansOf(gold_records, a));
    if (pred.empty()) continue;
    const PrecisionRecall prf = SpanPrf(pred, gold);
    mean.precision += prf.precision;
    mean.recall += prf.recall;
    mean.f1 += prf.f1;
    ++count;
  }
  if (count == 0) {
    throw CoverageError("prediction shares no segment with any annotator");
  }
  const double n = static_cast<double>(count);
  mean.precision /= n;
  mean.recall /= n;
  mean.f1 /= n;
  return mean;
}

}  // namespace qemeta
