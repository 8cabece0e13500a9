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

// Ranking quality metrics over graded relevance judgments, and an
// evaluation runner that times index construction separately from the
// query loop.

#ifndef TOMACO_EVALUATION_HARNESS_H_
#define TOMACO_EVALUATION_HARNESS_H_

#include <filesystem>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tomaco/corpus.h"
#include "tomaco/matching_engine.h"

namespace tomaco {

inline constexpr int kDefaultCurveLevels = 20;

class RelevanceJudgments {
 public:
  // query_id -> service_id -> grade (0 = irrelevant).
  using Grades = std::map<std::string, int, std::less<>>;

  explicit RelevanceJudgments(int binary_cutoff = 1)
      : binary_cutoff_(binary_cutoff) {}

  // Lines of `query_id<TAB>service_id<TAB>grade`; blank lines and lines
  // starting with '#' are skipped. Throws ParseError with the line number.
  static RelevanceJudgments ParseTsv(std::string_view text,
                                     int binary_cutoff = 1);

  void Set(std::string query_id, std::string service_id, int grade);
  bool Has(std::string_view query_id) const;
  // Throws MissingJudgmentsError for unknown queries.
  const Grades& For(std::string_view query_id) const;
  int RelevantCount(std::string_view query_id) const;
  int binary_cutoff() const { return binary_cutoff_; }
  std::vector<std::string> QueryIds() const;

 private:
  int binary_cutoff_;
  std::map<std::string, Grades, std::less<>> grades_;
};

// `ranking` lists distinct service ids, best first. Every metric throws
// MissingJudgmentsError when the query is unknown or has no relevant item.
double AveragePrecision(std::span<const std::string> ranking,
                        const RelevanceJudgments& judged,
                        std::string_view query_id);
double Ndcg(std::span<const std::string> ranking,
            const RelevanceJudgments& judged, std::string_view query_id);
double QMeasure(std::span<const std::string> ranking,
                const RelevanceJudgments& judged, std::string_view query_id);

// Interpolated precision at recall levels k/levels, k = 1..levels.
std::vector<double> InterpolatedPrecision(std::span<const std::string> ranking,
                                          const RelevanceJudgments& judged,
                                          std::string_view query_id,
                                          int levels = kDefaultCurveLevels);
// F1 at cutoffs ceil(k/levels * |ranking|), k = 1..levels.
std::vector<double> F1AtLambda(std::span<const std::string> ranking,
                               const RelevanceJudgments& judged,
                               std::string_view query_id,
                               int levels = kDefaultCurveLevels);

struct RankedQuery {
  std::string query_id;
  std::vector<std::string> ranking;
};

std::vector<double> MacroPrecisionAtRecall(std::span<const RankedQuery> runs,
                                           const RelevanceJudgments& judged,
                                           int levels = kDefaultCurveLevels);
std::vector<double> MacroF1AtLambda(std::span<const RankedQuery> runs,
                                    const RelevanceJudgments& judged,
                                    int levels = kDefaultCurveLevels);

// Maps operation results to services, keeping each service's first (best)
// occurrence.
std::vector<std::string> ServiceRanking(std::span<const MatchResult> results);

struct NamedConfig {
  std::string name;
  MatchConfig config;
};

// A JSON array of objects with keys name, strategy, sim, sim_threshold,
// weight, rating_threshold, upper_rate, lower_rate; all but strategy are
// optional. Throws ParseError / InvalidConfigError.
std::vector<NamedConfig> ParseConfigList(std::string_view json_text);

struct QueryScores {
  std::string query_id;
  double average_precision = 0.0;
  double ndcg = 0.0;
  double q_measure = 0.0;
};

struct StrategyReport {
  std::string name;
  double average_precision = 0.0;  // macro means over queries
  double ndcg = 0.0;
  double q_measure = 0.0;
  std::vector<double> precision_at_recall;
  std::vector<double> f1_at_lambda;
  std::vector<QueryScores> per_query;
  double init_seconds = 0.0;
  double extraction_seconds = 0.0;
  double all_queries_seconds = 0.0;
  double per_query_seconds = 0.0;
  // Wall time of setup (init and extraction together) plus this query loop.
  double total_seconds = 0.0;
};

struct EvaluationReport {
  std::vector<StrategyReport> strategies;
  double init_seconds = 0.0;        // ontology loading and closure
  double extraction_seconds = 0.0;  // parsing and indexing services
  size_t query_count = 0;
  std::vector<std::string> skipped_queries;  // no usable judgments
  std::vector<std::string> warnings;
};

struct EvaluationInput {
  std::vector<SourceDocument> services;
  std::vector<SourceDocument> ontologies;
  std::vector<NamedQuery> queries;
  RelevanceJudgments judgments;
  std::vector<NamedConfig> configs;
  int levels = kDefaultCurveLevels;
};

EvaluationReport RunEvaluation(const EvaluationInput& input);

// CSV writers; numbers use '.' decimals and 4 fractional digits except
// timings (6).
void WriteMetricsCsv(const EvaluationReport& report, std::ostream& out);
void WritePerQueryCsv(const EvaluationReport& report, std::ostream& out);
void WritePrecisionRecallCsv(const EvaluationReport& report, int levels,
                             std::ostream& out);
void WriteF1Csv(const EvaluationReport& report, int levels, std::ostream& out);
void WriteTimingCsv(const EvaluationReport& report, std::ostream& out);
// Writes metrics.csv, per_query.csv, precision_recall.csv, f1_lambda.csv
// and timing.csv into `dir`, creating it if needed.
void WriteReport(const EvaluationReport& report, int levels,
                 const std::filesystem::path& dir);

}  // namespace tomaco

#endif  // TOMACO_EVALUATION_HARNESS_H_
