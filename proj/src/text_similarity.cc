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

#include "tomaco/text_similarity.h"

#include <algorithm>
#include <cctype>

namespace tomaco {
namespace {

char Lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}
bool IsUpper(char c) { return std::isupper(static_cast<unsigned char>(c)); }
bool IsLower(char c) { return std::islower(static_cast<unsigned char>(c)); }
bool IsDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }
bool IsAlpha(char c) { return std::isalpha(static_cast<unsigned char>(c)); }

std::string ToLower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), Lower);
  return out;
}

}  // namespace

std::string_view SimKindName(SimKind kind) {
  return kind == SimKind::kJaro ? "jaro" : "monge-elkan";
}

std::string Unfold(std::string_view iri) {
  if (const auto hash = iri.rfind('#'); hash != std::string_view::npos) {
    return std::string(iri.substr(hash + 1));
  }
  if (const auto slash = iri.rfind('/'); slash != std::string_view::npos) {
    return std::string(iri.substr(slash + 1));
  }
  return std::string(iri);
}

std::vector<std::string> Tokenize(std::string_view id) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (size_t i = 0; i < id.size(); ++i) {
    const char c = id[i];
    if (!IsAlpha(c) && !IsDigit(c)) {
      flush();
      continue;
    }
    if (!current.empty()) {
      const char prev = id[i - 1];
      const bool digit_boundary = IsDigit(c) != IsDigit(prev);
      const bool lower_to_upper = IsLower(prev) && IsUpper(c);
      // "HTTPServer": the 'S' opens a token once a lowercase letter follows.
      const bool acronym_end = IsUpper(prev) && IsUpper(c) &&
                               i + 1 < id.size() && IsLower(id[i + 1]);
      if (digit_boundary || lower_to_upper || acronym_end) flush();
    }
    current.push_back(Lower(c));
  }
  flush();
  return tokens;
}

double Jaro(std::string_view a_in, std::string_view b_in) {
  const std::string a = ToLower(a_in);
  const std::string b = ToLower(b_in);
  if (a.empty() || b.empty()) return 0.0;
  if (a == b) return 1.0;
  const size_t window =
      std::max<size_t>(std::max(a.size(), b.size()) / 2, 1) - 1;
  std::vector<bool> a_hit(a.size(), false);
  std::vector<bool> b_hit(b.size(), false);
  size_t matches = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    const size_t lo = i > window ? i - window : 0;
    const size_t hi = std::min(b.size(), i + window + 1);
    for (size_t j = lo; j < hi; ++j) {
      if (b_hit[j] || a[i] != b[j]) continue;
      a_hit[i] = b_hit[j] = true;
      ++matches;
      break;
    }
  }
  if (matches == 0) return 0.0;
  size_t half_transpositions = 0;
  for (size_t i = 0, j = 0; i < a.size(); ++i) {
    if (!a_hit[i]) continue;
    while (!b_hit[j]) ++j;
    if (a[i] != b[j]) ++half_transpositions;
    ++j;
  }
  const double m = static_cast<double>(matches);
  const double t = static_cast<double>(half_transpositions) / 2.0;
  return (m / static_cast<double>(a.size()) +
          m / static_cast<double>(b.size()) + (m - t) / m) /
         3.0;
}

double MongeElkan(std::string_view a, std::string_view b) {
  const auto left = Tokenize(a);
  const auto right = Tokenize(b);
  if (left.empty() || right.empty()) return 0.0;
  size_t hits = 0;
  for (const auto& token : left) {
    if (std::find(right.begin(), right.end(), token) != right.end()) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(left.size());
}

double Similarity(std::string_view a, std::string_view b,
                  const SimAlgorithm& alg) {
  return alg.kind == SimKind::kJaro ? Jaro(a, b) : MongeElkan(a, b);
}

SimMatch IsMatch(std::string_view a, std::string_view b,
                 const SimAlgorithm& alg) {
  const double score = Similarity(a, b, alg);
  return {score >= alg.match_threshold, score};
}

}  // namespace tomaco
