/*
 * Copyright 2026 The Tomaco Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "tomaco/evaluation_harness.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>

#include "json.hpp"
#include "tomaco/errors.h"

namespace tomaco {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int GradeOf(const RelevanceJudgments::Grades& grades, const std::string& id) {
  auto it = grades.find(id);
  return it == grades.end() ? 0 : it->second;
}

// Grades of the query plus its relevant count, validated.
struct QueryView {
  const RelevanceJudgments::Grades& grades;
  int cutoff;
  int relevant;

  bool IsRelevant(const std::string& id) const {
    return GradeOf(grades, id) >= cutoff;
  }
};

QueryView View(const RelevanceJudgments& judged, std::string_view query_id) {
  const auto& grades = judged.For(query_id);
  const int relevant = judged.RelevantCount(query_id);
  if (relevant == 0) {
    throw MissingJudgmentsError("query '" + std::string(query_id) +
                                "' has no relevant service");
  }
  return {grades, judged.binary_cutoff(), relevant};
}

std::vector<int> IdealGains(const RelevanceJudgments::Grades& grades) {
  std::vector<int> gains;
  for (const auto& [id, g] : grades) {
    if (g > 0) gains.push_back(g);
  }
  std::sort(gains.rbegin(), gains.rend());
  return gains;
}

std::vector<double> MacroAverage(const std::vector<std::vector<double>>& rows,
                                 int levels) {
  std::vector<double> mean(levels, 0.0);
  if (rows.empty()) return mean;
  for (const auto& row : rows) {
    for (int k = 0; k < levels; ++k) mean[k] += row[k];
  }
  for (double& v : mean) v /= static_cast<double>(rows.size());
  return mean;
}

double NumberOr(const nlohmann::json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) {
    throw ParseError(std::string("config field '") + key + "' must be a number");
  }
  return obj[key].get<double>();
}

}  // namespace

RelevanceJudgments RelevanceJudgments::ParseTsv(std::string_view text,
                                                int binary_cutoff) {
  RelevanceJudgments judged(binary_cutoff);
  int line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos || t1 == 0 || t2 == t1 + 1) {
      throw ParseError("judgments line " + std::to_string(line_no) +
                       ": expected query_id<TAB>service_id<TAB>grade");
    }
    const std::string_view g = line.substr(t2 + 1);
    int grade = 0;
    auto [ptr, ec] = std::from_chars(g.data(), g.data() + g.size(), grade);
    if (ec != std::errc() || ptr != g.data() + g.size() || grade < 0) {
      throw ParseError("judgments line " + std::to_string(line_no) +
                       ": grade must be a non-negative integer");
    }
    judged.Set(std::string(line.substr(0, t1)),
               std::string(line.substr(t1 + 1, t2 - t1 - 1)), grade);
  }
  return judged;
}

void RelevanceJudgments::Set(std::string query_id, std::string service_id,
                             int grade) {
  grades_[std::move(query_id)][std::move(service_id)] = grade;
}

bool RelevanceJudgments::Has(std::string_view query_id) const {
  return grades_.find(query_id) != grades_.end();
}

const RelevanceJudgments::Grades& RelevanceJudgments::For(
    std::string_view query_id) const {
  auto it = grades_.find(query_id);
  if (it == grades_.end()) {
    throw MissingJudgmentsError("no judgments for query '" +
                                std::string(query_id) + "'");
  }
  return it->second;
}

int RelevanceJudgments::RelevantCount(std::string_view query_id) const {
  int n = 0;
  for (const auto& [id, g] : For(query_id)) n += g >= binary_cutoff_ ? 1 : 0;
  return n;
}

std::vector<std::string> RelevanceJudgments::QueryIds() const {
  std::vector<std::string> ids;
  for (const auto& [id, g] : grades_) ids.push_back(id);
  return ids;
}

double AveragePrecision(std::span<const std::string> ranking,
                        const RelevanceJudgments& judged,
                        std::string_view query_id) {
  const QueryView q = View(judged, query_id);
  double sum = 0.0;
  int hits = 0;
  for (size_t r = 0; r < ranking.size(); ++r) {
    if (!q.IsRelevant(ranking[r])) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(r + 1);
  }
  return sum / q.relevant;
}

double Ndcg(std::span<const std::string> ranking,
            const RelevanceJudgments& judged, std::string_view query_id) {
  const QueryView q = View(judged, query_id);
  double dcg = 0.0;
  for (size_t r = 0; r < ranking.size(); ++r) {
    dcg += GradeOf(q.grades, ranking[r]) / std::log2(static_cast<double>(r + 2));
  }
  double ideal = 0.0;
  const auto gains = IdealGains(q.grades);
  for (size_t r = 0; r < gains.size(); ++r) {
    ideal += gains[r] / std::log2(static_cast<double>(r + 2));
  }
  return ideal > 0.0 ? dcg / ideal : 0.0;
}

double QMeasure(std::span<const std::string> ranking,
                const RelevanceJudgments& judged, std::string_view query_id) {
  const QueryView q = View(judged, query_id);
  const auto gains = IdealGains(q.grades);
  double sum = 0.0;
  double cg = 0.0;
  double cig = 0.0;
  int count = 0;
  for (size_t r = 0; r < ranking.size(); ++r) {
    cg += GradeOf(q.grades, ranking[r]);
    if (r < gains.size()) cig += gains[r];
    if (!q.IsRelevant(ranking[r])) continue;
    ++count;
    sum += (cg + count) / (cig + static_cast<double>(r + 1));
  }
  return sum / q.relevant;
}

std::vector<double> InterpolatedPrecision(std::span<const std::string> ranking,
                                          const RelevanceJudgments& judged,
                                          std::string_view query_id,
                                          int levels) {
  const QueryView q = View(judged, query_id);
  // best[h] = best precision among ranks holding h relevant items.
  std::vector<double> best(q.relevant + 1, 0.0);
  int hits = 0;
  for (size_t r = 0; r < ranking.size(); ++r) {
    if (q.IsRelevant(ranking[r])) ++hits;
    best[hits] = std::max(best[hits],
                          static_cast<double>(hits) / static_cast<double>(r + 1));
  }
  // Suffix maximum: precision at any recall at least as high.
  for (int h = q.relevant - 1; h >= 0; --h) best[h] = std::max(best[h], best[h + 1]);
  std::vector<double> curve(levels, 0.0);
  for (int k = 1; k <= levels; ++k) {
    // smallest h with h / relevant >= k / levels
    const int h = (k * q.relevant + levels - 1) / levels;
    curve[k - 1] = best[h];
  }
  return curve;
}

std::vector<double> F1AtLambda(std::span<const std::string> ranking,
                               const RelevanceJudgments& judged,
                               std::string_view query_id, int levels) {
  const QueryView q = View(judged, query_id);
  std::vector<int> hits_at(ranking.size() + 1, 0);
  for (size_t r = 0; r < ranking.size(); ++r) {
    hits_at[r + 1] = hits_at[r] + (q.IsRelevant(ranking[r]) ? 1 : 0);
  }
  std::vector<double> curve(levels, 0.0);
  const size_t n = ranking.size();
  for (int k = 1; k <= levels; ++k) {
    const size_t cutoff = (static_cast<size_t>(k) * n + levels - 1) / levels;
    const int hits = hits_at[cutoff];
    if (cutoff == 0 || hits == 0) continue;
    const double p = static_cast<double>(hits) / static_cast<double>(cutoff);
    const double rc = static_cast<double>(hits) / q.relevant;
    curve[k - 1] = 2.0 * p * rc / (p + rc);
  }
  return curve;
}

std::vector<double> MacroPrecisionAtRecall(std::span<const RankedQuery> runs,
                                           const RelevanceJudgments& judged,
                                           int levels) {
  std::vector<std::vector<double>> rows;
  for (const auto& run : runs) {
    rows.push_back(InterpolatedPrecision(run.ranking, judged, run.query_id, levels));
  }
  return MacroAverage(rows, levels);
}

std::vector<double> MacroF1AtLambda(std::span<const RankedQuery> runs,
                                    const RelevanceJudgments& judged,
                                    int levels) {
  std::vector<std::vector<double>> rows;
  for (const auto& run : runs) {
    rows.push_back(F1AtLambda(run.ranking, judged, run.query_id, levels));
  }
  return MacroAverage(rows, levels);
}

std::vector<std::string> ServiceRanking(std::span<const MatchResult> results) {
  std::vector<std::string> ranking;
  std::set<std::string_view> seen;
  for (const auto& r : results) {
    if (seen.insert(r.service_id).second) ranking.push_back(r.service_id);
  }
  return ranking;
}

std::vector<NamedConfig> ParseConfigList(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("config: expected a JSON array");
  std::vector<NamedConfig> configs;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("strategy") ||
        !item["strategy"].is_string()) {
      throw ParseError("config: every entry needs a \"strategy\" string");
    }
    NamedConfig nc;
    const auto strategy = ParseStrategy(item["strategy"].get<std::string>());
    if (!strategy) {
      throw InvalidConfigError("config: unknown strategy '" +
                             item["strategy"].get<std::string>() + "'");
    }
    nc.config.strategy = *strategy;
    if (item.contains("sim")) {
      const auto kind = item["sim"].is_string()
                            ? ParseSimKind(item["sim"].get<std::string>())
                            : std::nullopt;
      if (!kind) throw InvalidConfigError("config: unknown sim algorithm");
      nc.config.sim = *kind == SimKind::kJaro ? SimAlgorithm::Jaro()
                                              : SimAlgorithm::MongeElkan();
    }
    nc.config.sim.match_threshold =
        NumberOr(item, "sim_threshold", nc.config.sim.match_threshold);
    nc.config.weight = NumberOr(item, "weight", nc.config.weight);
    nc.config.rating_threshold =
        NumberOr(item, "rating_threshold", nc.config.rating_threshold);
    nc.config.upper_rate = NumberOr(item, "upper_rate", nc.config.upper_rate);
    nc.config.lower_rate = NumberOr(item, "lower_rate", nc.config.lower_rate);
    nc.config.Validate();
    if (item.contains("name") && item["name"].is_string()) {
      nc.name = item["name"].get<std::string>();
    } else {
      nc.name = std::string(StrategyName(nc.config.strategy)) + "/" +
                std::string(SimKindName(nc.config.sim.kind));
    }
    configs.push_back(std::move(nc));
  }
  return configs;
}

EvaluationReport RunEvaluation(const EvaluationInput& input) {
  EvaluationReport report;

  const auto setup_start = Clock::now();
  auto start = setup_start;
  const ClassGraph graph = BuildClassGraph(input.ontologies, &report.warnings);
  report.init_seconds = SecondsSince(start);

  start = Clock::now();
  const auto index = BuildCollectionIndex(input.services, &report.warnings);
  report.extraction_seconds = SecondsSince(start);
  const double setup_seconds = SecondsSince(setup_start);

  std::vector<const NamedQuery*> usable;
  for (const NamedQuery& q : input.queries) {
    if (input.judgments.Has(q.id) && input.judgments.RelevantCount(q.id) > 0) {
      usable.push_back(&q);
    } else {
      report.skipped_queries.push_back(q.id);
    }
  }
  report.query_count = usable.size();

  for (const NamedConfig& nc : input.configs) {
    StrategyReport sr;
    sr.name = nc.name;
    sr.init_seconds = report.init_seconds;
    sr.extraction_seconds = report.extraction_seconds;
    std::vector<RankedQuery> runs;
    start = Clock::now();
    for (const NamedQuery* q : usable) {
      std::vector<std::string> warnings;
      const auto results = Match(q->query, index, graph, nc.config, &warnings);
      runs.push_back({q->id, ServiceRanking(results)});
    }
    sr.all_queries_seconds = SecondsSince(start);
    sr.per_query_seconds =
        usable.empty() ? 0.0 : sr.all_queries_seconds / usable.size();
    sr.total_seconds = setup_seconds + sr.all_queries_seconds;

    for (const RankedQuery& run : runs) {
      QueryScores s{run.query_id,
                    AveragePrecision(run.ranking, input.judgments, run.query_id),
                    Ndcg(run.ranking, input.judgments, run.query_id),
                    QMeasure(run.ranking, input.judgments, run.query_id)};
      sr.average_precision += s.average_precision;
      sr.ndcg += s.ndcg;
      sr.q_measure += s.q_measure;
      sr.per_query.push_back(std::move(s));
    }
    if (!runs.empty()) {
      const double n = static_cast<double>(runs.size());
      sr.average_precision /= n;
      sr.ndcg /= n;
      sr.q_measure /= n;
    }
    sr.precision_at_recall =
        MacroPrecisionAtRecall(runs, input.judgments, input.levels);
    sr.f1_at_lambda = MacroF1AtLambda(runs, input.judgments, input.levels);
    report.strategies.push_back(std::move(sr));
  }
  return report;
}

void WriteMetricsCsv(const EvaluationReport& report, std::ostream& out) {
  out << "config,ap,ndcg,q\n";
  for (const auto& s : report.strategies) {
    out << s.name << ',' << FormatFixed(s.average_precision, 4) << ','
        << FormatFixed(s.ndcg, 4) << ',' << FormatFixed(s.q_measure, 4) << '\n';
  }
}

void WritePerQueryCsv(const EvaluationReport& report, std::ostream& out) {
  out << "config,query,ap,ndcg,q\n";
  for (const auto& s : report.strategies) {
    for (const auto& q : s.per_query) {
      out << s.name << ',' << q.query_id << ','
          << FormatFixed(q.average_precision, 4) << ','
          << FormatFixed(q.ndcg, 4) << ',' << FormatFixed(q.q_measure, 4)
          << '\n';
    }
  }
}

namespace {

void WriteCurve(const EvaluationReport& report, int levels,
                const char* level_header,
                std::vector<double> StrategyReport::*curve, std::ostream& out) {
  out << level_header;
  for (const auto& s : report.strategies) out << ',' << s.name;
  out << '\n';
  for (int k = 1; k <= levels; ++k) {
    out << FormatFixed(static_cast<double>(k) / levels, 2);
    for (const auto& s : report.strategies) {
      out << ',' << FormatFixed((s.*curve)[k - 1], 4);
    }
    out << '\n';
  }
}

}  // namespace

void WritePrecisionRecallCsv(const EvaluationReport& report, int levels,
                             std::ostream& out) {
  WriteCurve(report, levels, "recall", &StrategyReport::precision_at_recall,
             out);
}

void WriteF1Csv(const EvaluationReport& report, int levels, std::ostream& out) {
  WriteCurve(report, levels, "lambda", &StrategyReport::f1_at_lambda, out);
}

void WriteTimingCsv(const EvaluationReport& report, std::ostream& out) {
  out << "config,init_s,extraction_s,all_queries_s,per_query_s,total_s,queries\n";
  for (const auto& s : report.strategies) {
    out << s.name << ',' << FormatFixed(s.init_seconds, 6) << ','
        << FormatFixed(s.extraction_seconds, 6) << ','
        << FormatFixed(s.all_queries_seconds, 6) << ','
        << FormatFixed(s.per_query_seconds, 6) << ','
        << FormatFixed(s.total_seconds, 6) << ',' << report.query_count
        << '\n';
  }
}

void WriteReport(const EvaluationReport& report, int levels,
                 const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw Error("cannot write '" + (dir / name).string() + "'");
    return out;
  };
  {
    auto out = open("metrics.csv");
    WriteMetricsCsv(report, out);
  }
  {
    auto out = open("per_query.csv");
    WritePerQueryCsv(report, out);
  }
  {
    auto out = open("precision_recall.csv");
    WritePrecisionRecallCsv(report, levels, out);
  }
  {
    auto out = open("f1_lambda.csv");
    WriteF1Csv(report, levels, out);
  }
  {
    auto out = open("timing.csv");
    WriteTimingCsv(report, out);
  }
}

}  // namespace tomaco
