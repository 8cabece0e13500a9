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

#ifndef TOMACO_TEXT_SIMILARITY_H_
#define TOMACO_TEXT_SIMILARITY_H_

#include <string>
#include <string_view>
#include <vector>

namespace tomaco {

enum class SimKind { kMongeElkan, kJaro };

// A similarity measure together with the score at which two strings count
// as a match.
struct SimAlgorithm {
  SimKind kind = SimKind::kMongeElkan;
  double match_threshold = 1.0;

  static SimAlgorithm MongeElkan() { return {SimKind::kMongeElkan, 1.0}; }
  static SimAlgorithm Jaro() { return {SimKind::kJaro, 0.7}; }
};

std::string_view SimKindName(SimKind kind);

// Local class name of an IRI: the text after the last '#', else after the
// last '/', else the input itself.
std::string Unfold(std::string_view iri);

// Splits CamelCase / snake_case / kebab-case identifiers into lowercase
// tokens. Upper-case runs stay together ("HTTPServer" -> http, server) and
// digit runs form their own tokens.
std::vector<std::string> Tokenize(std::string_view identifier);

// Jaro similarity of the lowercased strings; 0 when nothing matches.
double Jaro(std::string_view a, std::string_view b);

// Mean over the tokens of `a` of the best exact-equality hit among the
// tokens of `b`. Not symmetric. 0 if either side has no tokens.
double MongeElkan(std::string_view a, std::string_view b);

double Similarity(std::string_view a, std::string_view b,
                  const SimAlgorithm& alg);

struct SimMatch {
  bool matched = false;
  double score = 0.0;
};

SimMatch IsMatch(std::string_view a, std::string_view b,
                 const SimAlgorithm& alg);

}  // namespace tomaco

#endif  // TOMACO_TEXT_SIMILARITY_H_
