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

#include "tomaco/matching_engine.h"

#include <algorithm>
#include <tuple>

#include "tomaco/errors.h"

namespace tomaco {
namespace {

// Logic-based case for an offered/requested relation on one side.
MatchCase LogicCase(ClassRelation relation, Side side) {
  switch (relation) {
    case ClassRelation::kEquivalent:
      return MatchCase::kExact;
    case ClassRelation::kOfferedIsSuper:
      return side == Side::kInput ? MatchCase::kDesired
                                  : MatchCase::kLessDesired;
    case ClassRelation::kOfferedIsSub:
      return side == Side::kOutput ? MatchCase::kDesired
                                   : MatchCase::kLessDesired;
    case ClassRelation::kUnrelated:
      break;
  }
  return MatchCase::kFail;
}

double CaseRating(MatchCase c, const MatchConfig& cfg) {
  switch (c) {
    case MatchCase::kExact:
    case MatchCase::kSynSemMatch:
    case MatchCase::kSynSynMatch:
      return 1.0;
    case MatchCase::kDesired:
      return cfg.upper_rate;
    case MatchCase::kLessDesired:
      return cfg.lower_rate;
    case MatchCase::kFail:
      break;
  }
  return 0.0;
}

bool Eligible(const IndexItem& item, Strategy strategy) {
  switch (strategy) {
    case Strategy::kLogic:
    case Strategy::kSynOnSem:
      return item.annotation.has_value();
    case Strategy::kSynOnSyn:
      return !item.element_name.empty();
    case Strategy::kHybrid:
    case Strategy::kTomacoS3:
      return true;
  }
  return false;
}

PairRating RateItem(const IndexItem& item, std::string_view requested,
                    Side side, const ClassGraph& graph,
                    const MatchConfig& cfg) {
  switch (cfg.strategy) {
    case Strategy::kLogic: {
      const MatchCase c = LogicCase(graph.Relate(*item.annotation, requested), side);
      return {CaseRating(c, cfg), c};
    }
    case Strategy::kSynOnSem: {
      const SimMatch m = IsMatch(Unfold(*item.annotation), Unfold(requested), cfg.sim);
      return {m.score, m.matched ? MatchCase::kSynSemMatch : MatchCase::kFail};
    }
    case Strategy::kSynOnSyn: {
      const SimMatch m = IsMatch(item.element_name, Unfold(requested), cfg.sim);
      return {m.score, m.matched ? MatchCase::kSynSynMatch : MatchCase::kFail};
    }
    case Strategy::kHybrid:
    case Strategy::kTomacoS3:
      break;
  }
  return HybridRatePair(item.annotation, item.element_name, requested, side,
                        graph, cfg);
}

// Average over the requested concepts of the best rating among the offered
// items; one justification per concept.
double RateSide(std::span<const IndexItem> offered,
                const std::vector<std::string>& requested, Side side,
                const ClassGraph& graph, const MatchConfig& cfg,
                std::vector<Justification>& justifications) {
  double sum = 0.0;
  for (const std::string& requested_iri : requested) {
    Justification best;
    best.requested_concept = requested_iri;
    best.side = side;
    bool have = false;
    for (const IndexItem& item : offered) {
      if (!Eligible(item, cfg.strategy)) continue;
      const PairRating pr = RateItem(item, requested_iri, side, graph, cfg);
      if (have && pr.rating <= best.pair_rating) continue;
      have = true;
      best.matched_element_name = item.element_name;
      best.matched_element_kind = item.node_kind;
      best.matched_annotation = item.annotation;
      best.pair_rating = pr.rating;
      best.match_case = pr.match_case;
    }
    sum += best.pair_rating;
    justifications.push_back(std::move(best));
  }
  return sum / static_cast<double>(requested.size());
}

void ValidateQuery(const Query& query) {
  if (query.inputs.empty() && query.outputs.empty()) {
    throw InvalidQueryError("query requests neither inputs nor outputs");
  }
}

bool RanksBefore(const MatchResult& a, const MatchResult& b) {
  return std::tie(b.tier, b.rating, a.service_id, a.operation_name,
                  a.interface_name) < std::tie(a.tier, a.rating, b.service_id,
                                               b.operation_name,
                                               b.interface_name);
}

std::vector<MatchResult> RankAll(const Query& query,
                                 std::span<const OperationIndexEntry> index,
                                 const ClassGraph& graph,
                                 const MatchConfig& cfg,
                                 const std::optional<std::string>& name) {
  std::vector<MatchResult> results;
  results.reserve(index.size());
  for (const OperationIndexEntry& entry : index) {
    MatchResult result = RateOperation(entry, query, graph, cfg);
    if (result.rating < cfg.rating_threshold) continue;
    if (name && (IsMatch(*name, entry.service_name, cfg.sim).matched ||
                 IsMatch(*name, entry.operation_name, cfg.sim).matched)) {
      result.tier = Tier::kNameMatch;
    }
    results.push_back(std::move(result));
  }
  std::sort(results.begin(), results.end(), RanksBefore);
  return results;
}

}  // namespace

std::string_view StrategyName(Strategy strategy) {
  switch (strategy) {
    case Strategy::kLogic:
      return "logic";
    case Strategy::kSynOnSem:
      return "syn-on-sem";
    case Strategy::kSynOnSyn:
      return "syn-on-syn";
    case Strategy::kHybrid:
      return "hybrid";
    case Strategy::kTomacoS3:
      return "tomaco-s3";
  }
  return "hybrid";
}

std::string_view SideName(Side side) {
  return side == Side::kInput ? "input" : "output";
}

std::string_view MatchCaseName(MatchCase match_case) {
  switch (match_case) {
    case MatchCase::kExact:
      return "exact";
    case MatchCase::kSynSemMatch:
      return "syn-sem-match";
    case MatchCase::kSynSynMatch:
      return "syn-syn-match";
    case MatchCase::kDesired:
      return "desired";
    case MatchCase::kLessDesired:
      return "less-desired";
    case MatchCase::kFail:
      return "fail";
  }
  return "fail";
}

std::string_view TierName(Tier tier) {
  return tier == Tier::kNameMatch ? "name-match" : "normal";
}

std::optional<Strategy> ParseStrategy(std::string_view name) {
  for (Strategy s : {Strategy::kLogic, Strategy::kSynOnSem, Strategy::kSynOnSyn,
                     Strategy::kHybrid, Strategy::kTomacoS3}) {
    if (StrategyName(s) == name) return s;
  }
  return std::nullopt;
}

std::optional<SimKind> ParseSimKind(std::string_view name) {
  if (name == SimKindName(SimKind::kMongeElkan)) return SimKind::kMongeElkan;
  if (name == SimKindName(SimKind::kJaro)) return SimKind::kJaro;
  return std::nullopt;
}

void MatchConfig::Validate() const {
  if (!(weight > 0.0 && weight < 1.0)) {
    throw InvalidConfigError("weight must lie strictly inside (0, 1)");
  }
  if (!(rating_threshold >= 0.0 && rating_threshold <= 1.0)) {
    throw InvalidConfigError("rating_threshold must lie in [0, 1]");
  }
  if (!(lower_rate >= 0.0 && lower_rate < upper_rate && upper_rate <= 1.0)) {
    throw InvalidConfigError(
        "rates must satisfy 0 <= lower_rate < upper_rate <= 1");
  }
  if (!(sim.match_threshold >= 0.0 && sim.match_threshold <= 1.0)) {
    throw InvalidConfigError("similarity threshold must lie in [0, 1]");
  }
}

double LogicRatePair(std::string_view offered, std::string_view requested,
                     Side side, const ClassGraph& graph,
                     const MatchConfig& cfg) {
  return CaseRating(LogicCase(graph.Relate(offered, requested), side), cfg);
}

PairRating HybridRatePair(const std::optional<std::string>& annotation,
                          std::string_view offered_name,
                          std::string_view requested, Side side,
                          const ClassGraph& graph, const MatchConfig& cfg) {
  const std::string requested_name = Unfold(requested);
  ClassRelation relation = ClassRelation::kUnrelated;
  if (annotation) {
    relation = graph.Relate(*annotation, requested);
    if (relation == ClassRelation::kEquivalent) return {1.0, MatchCase::kExact};
    if (IsMatch(Unfold(*annotation), requested_name, cfg.sim).matched) {
      return {1.0, MatchCase::kSynSemMatch};
    }
  }
  if (IsMatch(offered_name, requested_name, cfg.sim).matched) {
    return {1.0, MatchCase::kSynSynMatch};
  }
  const MatchCase c = LogicCase(relation, side);
  return {CaseRating(c, cfg), c};
}

MatchResult RateOperation(const OperationIndexEntry& entry, const Query& query,
                          const ClassGraph& graph, const MatchConfig& cfg) {
  ValidateQuery(query);
  MatchResult result;
  result.service_id = entry.service_id;
  result.service_name = entry.service_name;
  result.interface_name = entry.interface_name;
  result.operation_name = entry.operation_name;
  double in = 0.0;
  double out = 0.0;
  if (!query.inputs.empty()) {
    in = RateSide(entry.inputs, query.inputs, Side::kInput, graph, cfg,
                  result.justifications);
  }
  if (!query.outputs.empty()) {
    out = RateSide(entry.outputs, query.outputs, Side::kOutput, graph, cfg,
                   result.justifications);
  }
  if (query.inputs.empty()) {
    result.rating = out;
  } else if (query.outputs.empty()) {
    result.rating = in;
  } else {
    result.rating = cfg.weight * in + (1.0 - cfg.weight) * out;
  }
  return result;
}

std::vector<MatchResult> Match(const Query& query,
                               std::span<const OperationIndexEntry> index,
                               const ClassGraph& graph, const MatchConfig& cfg,
                               std::vector<std::string>* warnings) {
  if (cfg.strategy == Strategy::kTomacoS3) {
    return MatchS3(query, index, graph, cfg, warnings);
  }
  cfg.Validate();
  ValidateQuery(query);
  return RankAll(query, index, graph, cfg, std::nullopt);
}

std::vector<MatchResult> MatchS3(const Query& query,
                                 std::span<const OperationIndexEntry> index,
                                 const ClassGraph& graph,
                                 const MatchConfig& cfg,
                                 std::vector<std::string>* warnings) {
  cfg.Validate();
  ValidateQuery(query);
  MatchConfig hybrid = cfg;
  hybrid.strategy = Strategy::kHybrid;
  if (!query.name || query.name->empty()) {
    if (warnings) {
      warnings->push_back(
          "tomaco-s3 needs a query name; falling back to hybrid");
    }
    return RankAll(query, index, graph, hybrid, std::nullopt);
  }
  return RankAll(query, index, graph, hybrid, query.name);
}

}  // namespace tomaco
