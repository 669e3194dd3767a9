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

#include "qemeta/cli.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "qemeta/baselines.h"
#include "qemeta/bias_report.h"
#include "qemeta/errors.h"
#include "qemeta/ingest.h"
#include "qemeta/parallel.h"
#include "qemeta/segment_agreement.h"
#include "qemeta/simulate.h"
#include "qemeta/span_overlap.h"
#include "qemeta/system_agreement.h"
#include "qemeta/transform.h"

namespace qemeta {
namespace {

using Json = nlohmann::json;

constexpr const char* kPooledDomain = "all";
constexpr const char* kAveragedHuman = "human:avg";
constexpr const char* kAveragedMetric = "metric:avg";

std::ifstream OpenInput(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return in;
}

bool LooksLikeAnnotations(const std::string& path) {
  std::ifstream in = OpenInput(path);
  char c = 0;
  while (in.get(c)) {
    if (!std::isspace(static_cast<unsigned char>(c))) return c == '{';
  }
  return false;
}

std::vector<AnnotationRecord> LoadRecords(const std::string& path) {
  std::ifstream in = OpenInput(path);
  return ParseAnnotations(in);
}

ScoreTable LoadTable(const std::string& path) {
  if (LooksLikeAnnotations(path)) {
    return ScoresFromAnnotations(LoadRecords(path));
  }
  std::ifstream in = OpenInput(path);
  return ParseScores(in);
}

Json PrfJson(const PrecisionRecall& prf) {
  return {{"precision", prf.precision}, {"recall", prf.recall}, {"f1", prf.f1}};
}

Json RankingJson(const Ranking& ranking) {
  Json out = Json::array();
  for (const RankedSystem& r : ranking) {
    out.push_back({{"system", r.system_id}, {"mean_z", r.mean_z}});
  }
  return out;
}

Json OptionalJson(const std::optional<double>& value) {
  return value ? Json(*value) : Json(nullptr);
}

void FlattenInto(const Json& node, const std::string& path,
                 std::ostringstream& out) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      FlattenInto(value, path.empty() ? key : path + "." + key, out);
    }
  } else if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i) {
      FlattenInto(node[i], path + "[" + std::to_string(i) + "]", out);
    }
  } else if (node.is_number_float()) {
    out << path << " = " << FormatNumber(node.get<double>()) << '\n';
  } else {
    out << path << " = " << node.dump() << '\n';
  }
}

// Shared options of report-producing subcommands.
struct Common {
  std::string human;
  std::string metric;
  std::string out;
  bool json = false;
  bool per_domain = false;
  std::uint64_t seed = 0;
  double eps_h = 0.0;
};

struct Slice {
  std::string domain;
  ScoreTable table;
};

std::vector<Slice> Slices(const ScoreTable& table, bool per_domain) {
  std::vector<Slice> slices;
  if (!per_domain) {
    slices.push_back({kPooledDomain, table});
    return slices;
  }
  for (const std::string& domain : table.Domains()) {
    slices.push_back({domain, table.RestrictToDomain(domain)});
  }
  return slices;
}

Json Envelope(const std::string& command, Json config) {
  return {{"tool", "qemeta"},
          {"tool_version", kToolVersion},
          {"command", command},
          {"config", std::move(config)}};
}

void Emit(const Json& report, const Common& common, std::ostream& out) {
  const std::string text =
      common.json ? report.dump(2) + "\n" : RenderText(report);
  if (common.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(common.out);
  if (!file) throw IoError("cannot write '" + common.out + "'");
  file << text;
}

Json ScoresJson(const ScoreTable& table) {
  Json rows = Json::array();
  for (const auto& [key, score] : table.entries()) {
    rows.push_back({{"scorer_id", key.scorer},
                    {"domain", key.domain},
                    {"source_id", key.source_id},
                    {"system_id", key.system_id},
                    {"score", score},
                    {"kind", ScorerKindName(table.KindOf(key.scorer))}});
  }
  return rows;
}

// Score tables are CSV by default and a JSON array of rows with --json.
void EmitScores(const ScoreTable& table, const Common& common,
                std::ostream& out) {
  std::ofstream file;
  if (!common.out.empty()) {
    file.open(common.out);
    if (!file) throw IoError("cannot write '" + common.out + "'");
  }
  std::ostream& sink = common.out.empty() ? out : file;
  if (common.json) {
    sink << ScoresJson(table).dump(2) << '\n';
  } else {
    WriteScores(table, sink);
  }
}

struct Roles {
  ScoreTable table;
  std::vector<std::string> annotators;
  std::vector<std::string> metrics;
};

Roles LoadRoles(const Common& common, bool metric_required) {
  Roles roles;
  ScoreTable humans = LoadScorers(common.human, InputRole::kHuman);
  roles.annotators = humans.Scorers();
  if (common.metric.empty()) {
    if (metric_required) throw Error(ErrorKind::kUsage, "--metric is required");
    roles.table = std::move(humans);
    return roles;
  }
  ScoreTable metrics = LoadScorers(common.metric, InputRole::kMetric);
  roles.table = MergeRoles(humans, metrics, &roles.metrics);
  return roles;
}

std::optional<double> MaybeInterAnnotator(const ScoreTable& table,
                                          const std::vector<std::string>& ids,
                                          TieThreshold eps) {
  if (ids.size() < 2) return std::nullopt;
  return InterAnnotatorAcc(table, ids, eps);
}

Json MetricAccJson(const MetricHumanResult& r) {
  Json per = Json::array();
  for (const AnnotatorAgreement& a : r.per_annotator) {
    per.push_back({{"annotator", a.annotator},
                   {"epsilon", a.metric_eps.epsilon()},
                   {"acc_eq", a.accuracy}});
  }
  return {{"acc_eq", r.accuracy}, {"per_annotator", std::move(per)}};
}

// ---- subcommands ----------------------------------------------------------

Json RunValidate(const std::string& path) {
  Json result;
  if (LooksLikeAnnotations(path)) {
    const auto records = LoadRecords(path);
    std::set<std::string> annotators;
    std::set<ItemKey> segments;
    for (const AnnotationRecord& r : records) {
      annotators.insert(r.annotator_id);
      segments.insert({r.domain, r.source_id, r.system_id});
    }
    result = {{"format", "annotations"},
              {"records", records.size()},
              {"annotators", annotators.size()},
              {"segments", segments.size()}};
  } else {
    const ScoreTable table = LoadTable(path);
    result = {{"format", "scores"},
              {"entries", table.size()},
              {"scorers", table.Scorers().size()},
              {"complete", table.IsComplete()}};
  }
  result["valid"] = true;
  Json report = Envelope("validate", {{"file", path}});
  report["result"] = std::move(result);
  return report;
}

Json RunStats(const std::string& path) {
  const DatasetStats s = ComputeDatasetStats(LoadRecords(path));
  Json per_pair = Json::object();
  for (const auto& [pair, histogram] : s.annotators_per_segment) {
    Json h = Json::object();
    for (const auto& [k, n] : histogram) h[std::to_string(k)] = n;
    per_pair[pair] = {{"typical", s.TypicalAnnotators(pair)},
                      {"histogram", std::move(h)}};
  }
  Json report = Envelope("stats", {{"file", path}});
  report["result"] = {{"n_annotations", s.n_annotations},
                      {"n_annotated_segments", s.n_annotated_segments},
                      {"n_sources", s.n_sources},
                      {"avg_words_per_source", s.avg_words_per_source},
                      {"annotators_per_segment", std::move(per_pair)},
                      {"avg_esa_score", s.avg_esa_score},
                      {"avg_errors_per_segment", s.avg_errors_per_segment},
                      {"minor_pct", OptionalJson(s.minor_pct)},
                      {"major_pct", OptionalJson(s.major_pct)}};
  return report;
}

struct SegmentOptions {
  bool calibrate = false;
  double eps_m = 0.0;
};

Json RunSegmentAgreement(const Common& common, const SegmentOptions& opts) {
  const Roles roles = LoadRoles(common, /*metric_required=*/true);
  const TieThreshold eps_h(common.eps_h);
  std::optional<TieThreshold> fixed;
  if (!opts.calibrate) fixed = TieThreshold(opts.eps_m);

  Json table = Json::object();
  for (const Slice& slice : Slices(roles.table, common.per_domain)) {
    Json metrics = Json::object();
    for (const std::string& m : roles.metrics) {
      metrics[m] = MetricAccJson(
          MetricHumanAcc(slice.table, m, roles.annotators, eps_h, fixed));
    }
    const std::set<ItemKey> keys =
        slice.table.Select(roles.annotators).Items();
    ScoreTable with_baselines = slice.table;
    with_baselines.Merge(RandomMetric(keys, common.seed));
    with_baselines.Merge(ConstantTieBaseline(keys));
    Json baselines = {
        {"random", MetricAccJson(MetricHumanAcc(with_baselines,
                                                kRandomBaselineId,
                                                roles.annotators, eps_h,
                                                fixed))},
        {"constant", MetricAccJson(MetricHumanAcc(with_baselines,
                                                  kConstantBaselineId,
                                                  roles.annotators, eps_h,
                                                  fixed))}};
    table[slice.domain] = {
        {"metrics", std::move(metrics)},
        {"inter_annotator",
         OptionalJson(MaybeInterAnnotator(slice.table, roles.annotators,
                                          eps_h))},
        {"baselines", std::move(baselines)}};
  }
  Json report = Envelope(
      "segment-agreement",
      {{"human", common.human},
       {"metric", common.metric},
       {"eps_h", common.eps_h},
       {"calibrate", opts.calibrate},
       {"eps_m", opts.calibrate ? Json(nullptr) : Json(opts.eps_m)},
       {"per_domain", common.per_domain},
       {"seed", common.seed}});
  report["result"] = {{"segment_level", std::move(table)}};
  return report;
}

Json RunSystemAgreement(const Common& common, const PermutationConfig& perm) {
  const Roles roles = LoadRoles(common, /*metric_required=*/true);
  const std::set<ItemKey> keys =
      roles.table.Select(roles.annotators).Items();
  ScoreTable table = roles.table;
  table.Merge(RandomMetric(keys, common.seed));
  table.Merge(ConstantTieBaseline(keys));
  std::vector<std::string> scorers = roles.metrics;
  scorers.push_back(kRandomBaselineId);
  scorers.push_back(kConstantBaselineId);

  const auto spa = SystemSpaReport(table, roles.annotators, scorers, perm,
                                   common.per_domain);
  Json out = Json::object();
  for (const auto& [domain, d] : spa) {
    Json metrics = Json::object();
    for (const std::string& m : roles.metrics) metrics[m] = d.metric_spa.at(m);
    out[domain] = {
        {"metrics", std::move(metrics)},
        {"inter_annotator", OptionalJson(d.inter_annotator_spa)},
        {"baselines",
         {{"random", d.metric_spa.at(kRandomBaselineId)},
          {"constant", d.metric_spa.at(kConstantBaselineId)}}}};
  }
  Json report = Envelope("system-agreement",
                         {{"human", common.human},
                          {"metric", common.metric},
                          {"n_perm", perm.n_perm},
                          {"exhaustive_cap", perm.exhaustive_cap},
                          {"per_domain", common.per_domain},
                          {"seed", common.seed}});
  report["result"] = {{"system_level", std::move(out)}};
  return report;
}

Json RunGroupingCurve(const Common& common, int max_n) {
  const Roles roles = LoadRoles(common, /*metric_required=*/false);
  Json out = Json::object();
  for (const Slice& slice : Slices(roles.table, common.per_domain)) {
    Json points = Json::array();
    for (const CurvePoint& p : AgreementCurveFor(
             slice.table, max_n, TieThreshold(common.eps_h), common.seed)) {
      points.push_back({{"n", p.n},
                        {"inter_annotator", p.inter_annotator},
                        {"metrics", p.metric}});
    }
    out[slice.domain] = std::move(points);
  }
  Json report = Envelope("grouping-curve", {{"human", common.human},
                                            {"metric", common.metric},
                                            {"max_n", max_n},
                                            {"eps_h", common.eps_h},
                                            {"per_domain", common.per_domain},
                                            {"seed", common.seed},
                                            {"strategy", "shuffled"}});
  report["result"] = {{"grouping_curve", std::move(out)}};
  return report;
}

Json RunAveragingGain(const Common& common, int group_size) {
  const Roles roles = LoadRoles(common, /*metric_required=*/false);
  const TieThreshold eps_h(common.eps_h);
  Json out = Json::object();
  for (const Slice& slice : Slices(roles.table, common.per_domain)) {
    const AveragingGain gain = AveragingGainFor(
        slice.table, roles.annotators, static_cast<std::size_t>(group_size),
        eps_h);
    Json entry = {{"single_single", gain.single_single},
                  {"pair_pair", gain.pair_pair}};
    if (!roles.metrics.empty()) {
      // Each metric against single annotators and against their mean.
      const ScoreTable z = ZNormalize(slice.table, {.per_domain = false});
      ScoreTable averaged = z;
      averaged.Merge(AverageScorers(z, {{kAveragedHuman, roles.annotators}},
                                    {.restrict_to_intersection = true}));
      Json metrics = Json::object();
      for (const std::string& m : roles.metrics) {
        metrics[m] = {
            {"vs_single_human",
             MetricHumanAcc(z, m, roles.annotators, eps_h).accuracy},
            {"vs_averaged_human",
             MetricHumanAcc(averaged, m, {kAveragedHuman}, eps_h).accuracy}};
      }
      entry["metrics"] = std::move(metrics);
      if (roles.metrics.size() >= 2) {
        ScoreTable with_avg_metric = z;
        with_avg_metric.Merge(
            AverageScorers(z, {{kAveragedMetric, roles.metrics}},
                           {.restrict_to_intersection = true}));
        entry["averaged_metric_vs_single_human"] =
            MetricHumanAcc(with_avg_metric, kAveragedMetric, roles.annotators,
                           eps_h)
                .accuracy;
      } else {
        entry["averaged_metric_vs_single_human"] = nullptr;
      }
    }
    out[slice.domain] = std::move(entry);
  }
  Json report = Envelope("averaging-gain", {{"human", common.human},
                                            {"metric", common.metric},
                                            {"group_size", group_size},
                                            {"eps_h", common.eps_h},
                                            {"per_domain", common.per_domain}});
  report["result"] = {{"averaging", std::move(out)}};
  return report;
}

std::map<std::string, std::vector<std::string>> ParseHumanGroups(
    const std::vector<std::string>& specs,
    const std::vector<std::string>& annotators) {
  std::map<std::string, std::vector<std::string>> groups;
  if (specs.empty()) {
    for (const std::string& a : annotators) groups[a] = {a};
    return groups;
  }
  for (const std::string& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      throw Error(ErrorKind::kUsage,
                  "--human-group expects NAME=annotator[,annotator...]");
    }
    std::vector<std::string> members;
    std::stringstream list(spec.substr(eq + 1));
    std::string member;
    while (std::getline(list, member, ',')) {
      if (std::find(annotators.begin(), annotators.end(), member) ==
          annotators.end()) {
        throw Error(ErrorKind::kUsage, "unknown annotator '" + member + "'");
      }
      members.push_back(member);
    }
    groups[spec.substr(0, eq)] = std::move(members);
  }
  return groups;
}

Json RunBiasReport(const Common& common,
                   const std::vector<std::string>& group_specs,
                   double attenuation) {
  const Roles roles = LoadRoles(common, /*metric_required=*/true);
  const auto groups = ParseHumanGroups(group_specs, roles.annotators);
  const std::vector<std::string> domains = roles.table.Domains();

  Json rankings = Json::object();
  Json divergence = Json::object();
  for (const std::string& domain : domains) {
    std::map<std::string, Ranking> human_rankings;
    Json rankers = Json::object();
    for (const auto& [name, members] : groups) {
      human_rankings[name] = GroupSystemRanking(roles.table, members, domain);
      rankers[name] = RankingJson(human_rankings[name]);
    }
    Json flags_by_metric = Json::object();
    for (const std::string& m : roles.metrics) {
      const Ranking metric_ranking = SystemRanking(roles.table, m, domain);
      rankers[m] = RankingJson(metric_ranking);
      Json per_human = Json::object();
      for (const auto& [name, ranking] : human_rankings) {
        Json flags = Json::array();
        for (const DivergenceFlag& f :
             RankingDivergence(ranking, metric_ranking, attenuation)) {
          flags.push_back(
              {{"higher", f.higher},
               {"lower", f.lower},
               {"kind", f.kind == DivergenceKind::kReversal ? "reversal"
                                                             : "attenuation"},
               {"human_gap", f.human_gap},
               {"metric_gap", f.metric_gap}});
        }
        per_human[name] = std::move(flags);
      }
      flags_by_metric[m] = std::move(per_human);
    }
    rankings[domain] = std::move(rankers);
    divergence[domain] = std::move(flags_by_metric);
  }
  Json shifts = Json::object();
  for (const std::string& m : roles.metrics) {
    shifts[m] = DomainShift(roles.table, roles.annotators, m, domains);
  }
  Json group_echo = Json::object();
  for (const auto& [name, members] : groups) group_echo[name] = members;
  Json report = Envelope("bias-report", {{"human", common.human},
                                         {"metric", common.metric},
                                         {"human_groups", group_echo},
                                         {"attenuation", attenuation}});
  report["result"] = {{"rankings", std::move(rankings)},
                      {"divergence", std::move(divergence)},
                      {"domain_shift", std::move(shifts)}};
  return report;
}

Json RunSpanOverlap(const std::string& pred_path, const std::string& gold_path) {
  std::vector<AnnotationRecord> pred_records;
  for (AnnotationRecord& r : LoadRecords(pred_path)) {
    if (r.annotator_id == kPredictionAnnotator) {
      pred_records.push_back(std::move(r));
    }
  }
  if (pred_records.empty()) {
    throw SchemaError("no records with annotator_id '" +
                      std::string(kPredictionAnnotator) + "' in " + pred_path);
  }
  std::vector<AnnotationRecord> gold_records;
  for (AnnotationRecord& r : LoadRecords(gold_path)) {
    if (r.annotator_id != kPredictionAnnotator) {
      gold_records.push_back(std::move(r));
    }
  }
  std::set<std::string> domains;
  for (const AnnotationRecord& r : gold_records) domains.insert(r.domain);

  Json out = Json::object();
  for (const std::string& domain : domains) {
    std::vector<AnnotationRecord> gold, pred;
    std::set<std::string> annotator_set;
    for (const AnnotationRecord& r : gold_records) {
      if (r.domain != domain) continue;
      gold.push_back(r);
      annotator_set.insert(r.annotator_id);
    }
    for (const AnnotationRecord& r : pred_records) {
      if (r.domain == domain) pred.push_back(r);
    }
    const std::vector<std::string> annotators(annotator_set.begin(),
                                              annotator_set.end());
    const SegmentSpans predicted = SpansOf(pred, kPredictionAnnotator);
    try {
      out[domain]["human_metric"] =
          PrfJson(PredictionSpanAgreement(predicted, gold, annotators));
    } catch (const CoverageError&) {
      throw CoverageError("predictions share no segment with any annotator "
                          "in domain '" + domain + "'");
    }
    out[domain]["human_human"] =
        annotators.size() >= 2
            ? PrfJson(AnnotatorSpanAgreement(gold, annotators))
            : Json(nullptr);
  }
  Json report = Envelope("span-overlap", {{"pred", pred_path},
                                          {"gold", gold_path},
                                          {"aggregation", "micro"},
                                          {"omissions", "excluded"}});
  report["result"] = {{"span_overlap", std::move(out)}};
  return report;
}

struct SimulateOptions {
  int items = 100;
  int systems = 5;
  int annotators = 2;
  double sigma = 0.0;
  double rounding = 0.0;
  std::string domains = "sim";
  int metrics = 0;
  double metric_sigma = 10.0;
  double system_sd = 4.0;
  double item_sd = 10.0;
  double interaction_sd = 2.0;
};

std::vector<std::string> SplitList(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

ScoreTable RunSimulate(const SimulateOptions& opts, std::uint64_t seed) {
  QualityLayout layout;
  layout.domains = SplitList(opts.domains);
  if (layout.domains.empty()) {
    throw Error(ErrorKind::kUsage, "--domains must name at least one domain");
  }
  layout.items = opts.items;
  layout.systems = opts.systems;
  layout.system_sd = opts.system_sd;
  layout.item_sd = opts.item_sd;
  layout.interaction_sd = opts.interaction_sd;
  layout.seed = seed;

  NoiseModel model;
  model.true_quality = MakeTrueQuality(layout);
  model.sigma = opts.sigma;
  model.k_annotators = opts.annotators;
  model.seed = seed;
  if (opts.rounding > 0.0) model.tie_rounding = opts.rounding;
  ScoreTable table = SimulateAnnotations(model);
  if (opts.metrics > 0) {
    table.Merge(SimulateMetrics(model.true_quality, opts.metrics,
                                opts.metric_sigma, seed));
  }
  return table;
}

}  // namespace

ScoreTable LoadScorers(const std::string& path, InputRole role) {
  ScoreTable table = LoadTable(path);
  std::vector<std::string> chosen;
  for (const std::string& s : table.Scorers()) {
    const ScorerKind kind = table.KindOf(s);
    const bool wanted = role == InputRole::kHuman
                            ? kind == ScorerKind::kHuman
                            : kind != ScorerKind::kHuman;
    if (wanted) chosen.push_back(s);
  }
  if (chosen.empty()) {
    const ScorerKind kind =
        role == InputRole::kHuman ? ScorerKind::kHuman : ScorerKind::kMetric;
    for (const std::string& s : table.Scorers()) table.SetKind(s, kind);
    if (table.empty()) throw SchemaError("'" + path + "' contains no scores");
    return table;
  }
  return table.Select(chosen);
}

ScoreTable MergeRoles(const ScoreTable& humans, const ScoreTable& metrics,
                      std::vector<std::string>* metric_ids) {
  ScoreTable merged = humans;
  for (const std::string& m : metrics.Scorers()) {
    std::string id = m;
    if (humans.HasScorer(id)) id += "@metric";
    merged.Merge(metrics.Renamed(m, id));
    if (metric_ids != nullptr) metric_ids->push_back(id);
  }
  return merged;
}

std::string RenderText(const Json& report) {
  std::ostringstream out;
  FlattenInto(report, "", out);
  return out.str();
}

int RunPipeline(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"Meta-evaluation of MT quality-estimation metrics against "
               "human error-span annotations",
               "qemeta"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads,
                 "Worker threads (default: $QEMETA_THREADS or 1)");

  Common common;
  auto add_roles = [&](CLI::App* sub, bool metric_required) {
    sub->add_option("--human", common.human,
                    "Human annotations (JSONL) or scores (CSV)")
        ->required();
    auto* metric = sub->add_option("--metric", common.metric,
                                   "Metric scores (CSV)");
    if (metric_required) metric->required();
    sub->add_flag("--json", common.json, "Emit JSON");
    sub->add_option("--out", common.out, "Write the report to a file");
  };

  std::string file;
  auto* validate = app.add_subcommand("validate", "Check an input file");
  validate->add_option("file", file)->required();
  validate->add_flag("--json", common.json);

  auto* stats = app.add_subcommand("stats", "Summarize an annotation file");
  stats->add_option("file", file)->required();
  stats->add_flag("--json", common.json);
  stats->add_option("--out", common.out);

  auto* normalize = app.add_subcommand("normalize", "Z-normalize scores");
  normalize->add_option("file", file)->required();
  normalize->add_flag("--per-domain", common.per_domain);
  normalize->add_flag("--json", common.json, "Emit JSON rows instead of CSV");
  normalize->add_option("--out", common.out);

  GroupingConfig grouping;
  std::string strategy = "shuffled";
  auto* group = app.add_subcommand("group", "Average groups of n segments");
  group->add_option("file", file)->required();
  group->add_option("-n", grouping.n)->required()->check(CLI::PositiveNumber);
  group->add_option("--seed", grouping.seed)->required();
  group->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"shuffled", "ordered"}));
  group->add_flag("--json", common.json, "Emit JSON rows instead of CSV");
  group->add_option("--out", common.out);

  SegmentOptions segment_opts;
  auto* segment = app.add_subcommand("segment-agreement",
                                     "Tie-calibrated pairwise accuracy");
  add_roles(segment, true);
  segment->add_option("--eps-h", common.eps_h)->check(CLI::NonNegativeNumber);
  segment->add_flag("--calibrate", segment_opts.calibrate);
  segment->add_option("--eps-m", segment_opts.eps_m,
                      "Fixed metric tie threshold (held-out mode)")
      ->check(CLI::NonNegativeNumber);
  segment->add_flag("--per-domain", common.per_domain);
  segment->add_option("--seed", common.seed, "Random baseline seed");

  PermutationConfig perm;
  auto* system = app.add_subcommand("system-agreement",
                                    "Soft pairwise accuracy");
  add_roles(system, true);
  system->add_option("--n-perm", perm.n_perm)->check(CLI::PositiveNumber);
  system->add_option("--exhaustive-cap", perm.exhaustive_cap);
  system->add_option("--seed", common.seed);
  system->add_flag("--per-domain", common.per_domain);

  int max_n = 16;
  auto* curve = app.add_subcommand("grouping-curve",
                                   "Agreement as a function of group size");
  add_roles(curve, false);
  curve->add_option("--max-n", max_n)->check(CLI::PositiveNumber);
  curve->add_option("--seed", common.seed);
  curve->add_option("--eps-h", common.eps_h)->check(CLI::NonNegativeNumber);
  curve->add_flag("--per-domain", common.per_domain);

  int group_size = 2;
  auto* averaging = app.add_subcommand(
      "averaging-gain", "Single-single vs group-group annotator agreement");
  add_roles(averaging, false);
  averaging->add_option("--group-size", group_size)
      ->check(CLI::PositiveNumber);
  averaging->add_option("--eps-h", common.eps_h)
      ->check(CLI::NonNegativeNumber);
  averaging->add_flag("--per-domain", common.per_domain);

  std::vector<std::string> human_groups;
  double attenuation = 0.5;
  auto* bias = app.add_subcommand("bias-report",
                                  "Domain rankings and score shifts");
  add_roles(bias, true);
  bias->add_option("--human-group", human_groups,
                   "Ranker NAME=annotator,annotator (repeatable)");
  bias->add_option("--attenuation", attenuation)
      ->check(CLI::Range(0.0, 1.0));

  std::string pred_path, gold_path;
  auto* span = app.add_subcommand("span-overlap",
                                  "Character-level error-span P/R/F1");
  span->add_option("--pred", pred_path)->required();
  span->add_option("--gold", gold_path)->required();
  span->add_flag("--json", common.json);
  span->add_option("--out", common.out);

  std::string keys_from;
  auto* baseline = app.add_subcommand("baseline", "Baseline score tables");
  baseline->require_subcommand(1);
  auto* random = baseline->add_subcommand("random", "Uniform random scores");
  random->add_option("--seed", common.seed)->required();
  random->add_option("--keys-from", keys_from)->required();
  random->add_flag("--json", common.json, "Emit JSON rows instead of CSV");
  random->add_option("--out", common.out);
  auto* constant = baseline->add_subcommand("constant", "All-tie scores");
  constant->add_option("--keys-from", keys_from)->required();
  constant->add_flag("--json", common.json, "Emit JSON rows instead of CSV");
  constant->add_option("--out", common.out);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Synthetic annotators");
  simulate->add_option("--items", sim.items)->required()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--systems", sim.systems)->required()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--annotators", sim.annotators)->required()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--sigma", sim.sigma)->required()
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--seed", common.seed)->required();
  simulate->add_flag("--json", common.json, "Emit JSON rows instead of CSV");
  simulate->add_option("--out", common.out);
  simulate->add_option("--rounding", sim.rounding,
                       "Round human scores to this step (0 = off)")
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--domains", sim.domains, "Comma-separated domains");
  simulate->add_option("--metrics", sim.metrics, "Synthetic metrics to add")
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--metric-sigma", sim.metric_sigma)
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--system-sd", sim.system_sd)
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--item-sd", sim.item_sd)
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--interaction-sd", sim.interaction_sd)
      ->check(CLI::NonNegativeNumber);

  auto fail = [&](ErrorKind kind, const std::string& message) {
    err << Json{{"error", ErrorKindName(kind)}, {"message", message}}.dump()
        << '\n';
    return static_cast<int>(kind);
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    return fail(ErrorKind::kUsage, e.what());
  }

  const int previous_threads = ThreadCount();
  if (threads > 0) SetThreadCount(threads);
  struct RestoreThreads {
    int value;
    ~RestoreThreads() { SetThreadCount(value); }
  } restore{previous_threads};

  try {
    if (validate->parsed()) {
      Emit(RunValidate(file), common, out);
    } else if (stats->parsed()) {
      Emit(RunStats(file), common, out);
    } else if (normalize->parsed()) {
      EmitScores(ZNormalize(LoadTable(file), {.per_domain = common.per_domain}),
                 common, out);
    } else if (group->parsed()) {
      grouping.strategy = strategy == "ordered" ? GroupingStrategy::kOrdered
                                                : GroupingStrategy::kShuffled;
      EmitScores(GroupSegments(LoadTable(file), grouping), common, out);
    } else if (segment->parsed()) {
      Emit(RunSegmentAgreement(common, segment_opts), common, out);
    } else if (system->parsed()) {
      perm.seed = common.seed;
      Emit(RunSystemAgreement(common, perm), common, out);
    } else if (curve->parsed()) {
      Emit(RunGroupingCurve(common, max_n), common, out);
    } else if (averaging->parsed()) {
      Emit(RunAveragingGain(common, group_size), common, out);
    } else if (bias->parsed()) {
      Emit(RunBiasReport(common, human_groups, attenuation), common, out);
    } else if (span->parsed()) {
      Emit(RunSpanOverlap(pred_path, gold_path), common, out);
    } else if (random->parsed()) {
      const std::set<ItemKey> keys = LoadTable(keys_from).Items();
      EmitScores(RandomMetric(keys, common.seed), common, out);
    } else if (constant->parsed()) {
      const std::set<ItemKey> keys = LoadTable(keys_from).Items();
      EmitScores(ConstantTieBaseline(keys), common, out);
    } else if (simulate->parsed()) {
      EmitScores(RunSimulate(sim, common.seed), common, out);
    }
  } catch (const Error& e) {
    return fail(e.kind(), e.what());
  } catch (const std::exception& e) {
    return fail(ErrorKind::kInvalidArgument, e.what());
  }
  return 0;
}

}  // namespace qemeta
