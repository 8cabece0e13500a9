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

// Operation-centric service matching. Every offered operation is rated
// against a concept query: per requested concept the best offered item is
// taken, the per-concept maxima are averaged per side, and the two sides are
// blended with the input weight.

#ifndef TOMACO_MATCHING_ENGINE_H_
#define TOMACO_MATCHING_ENGINE_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tomaco/ontology_store.h"
#include "tomaco/operation_index.h"
#include "tomaco/text_similarity.h"

namespace tomaco {

enum class Strategy { kLogic, kSynOnSem, kSynOnSyn, kHybrid, kTomacoS3 };
enum class Side { kInput, kOutput };
enum class MatchCase {
  kExact,
  kSynSemMatch,
  kSynSynMatch,
  kDesired,
  kLessDesired,
  kFail,
};
// Tiers order results before ratings do; only the S3 strategy assigns
// kNameMatch.
enum class Tier { kNormal = 0, kNameMatch = 1 };

std::string_view StrategyName(Strategy strategy);
std::string_view SideName(Side side);
std::string_view MatchCaseName(MatchCase match_case);
std::string_view TierName(Tier tier);
// Accepts the names produced by StrategyName / SimKindName.
std::optional<Strategy> ParseStrategy(std::string_view name);
std::optional<SimKind> ParseSimKind(std::string_view name);

struct Query {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::optional<std::string> name;  // compared against names by S3 only
};

struct MatchConfig {
  Strategy strategy = Strategy::kHybrid;
  SimAlgorithm sim = SimAlgorithm::MongeElkan();
  double weight = 0.5;  // share of the input rating
  double rating_threshold = 0.0;
  double upper_rate = 0.75;
  double lower_rate = 0.25;

  // Throws InvalidConfigError.
  void Validate() const;
};

struct Justification {
  std::string requested_concept;
  Side side = Side::kInput;
  std::string matched_element_name;  // empty when nothing was offered
  std::optional<NodeKind> matched_element_kind;
  std::optional<std::string> matched_annotation;
  double pair_rating = 0.0;
  MatchCase match_case = MatchCase::kFail;
};

struct MatchResult {
  std::string service_id;
  std::string service_name;
  std::string interface_name;
  std::string operation_name;
  double rating = 0.0;
  Tier tier = Tier::kNormal;
  std::vector<Justification> justifications;  // inputs first, query order
};

struct PairRating {
  double rating = 0.0;
  MatchCase match_case = MatchCase::kFail;
};

double LogicRatePair(std::string_view offered, std::string_view requested,
                     Side side, const ClassGraph& graph,
                     const MatchConfig& cfg);

// Exact, then syntactic on the unfolded annotation, then syntactic on the
// element name, then Desired/LessDesired; the first hit wins.
PairRating HybridRatePair(const std::optional<std::string>& annotation,
                          std::string_view offered_name,
                          std::string_view requested, Side side,
                          const ClassGraph& graph, const MatchConfig& cfg);

// Rates one operation with cfg.strategy (S3 is rated as hybrid; the tier is
// left kNormal). Throws InvalidQueryError for an empty query.
MatchResult RateOperation(const OperationIndexEntry& entry, const Query& query,
                          const ClassGraph& graph, const MatchConfig& cfg);

// Ranks every operation of the collection. Results below
// cfg.rating_threshold are dropped; order is tier, rating (both
// descending), then service_id, operation_name and interface_name
// ascending. A kTomacoS3 config is routed to MatchS3.
std::vector<MatchResult> Match(const Query& query,
                               std::span<const OperationIndexEntry> index,
                               const ClassGraph& graph, const MatchConfig& cfg,
                               std::vector<std::string>* warnings = nullptr);

// Hybrid ranking with a name pre-pass: operations whose service or
// operation name matches query.name form the kNameMatch tier. Without a
// query name this degrades to plain hybrid and appends a warning.
std::vector<MatchResult> MatchS3(const Query& query,
                                 std::span<const OperationIndexEntry> index,
                                 const ClassGraph& graph,
                                 const MatchConfig& cfg,
                                 std::vector<std::string>* warnings = nullptr);

}  // namespace tomaco

#endif  // TOMACO_MATCHING_ENGINE_H_
