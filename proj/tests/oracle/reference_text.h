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

// Textbook similarity measures written independently of text_similarity.cc:
// tokens come from a regular expression, Jaro is the classic two-pass form.

#ifndef TOMACO_TESTS_ORACLE_REFERENCE_TEXT_H_
#define TOMACO_TESTS_ORACLE_REFERENCE_TEXT_H_

#include <cctype>
#include <regex>
#include <string>
#include <vector>

namespace tomaco::oracle {

inline std::vector<std::string> RefTokenize(const std::string& s) {
  static const std::regex kToken("[A-Z]+(?![a-z])|[A-Z]?[a-z]+|[0-9]+");
  std::vector<std::string> out;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), kToken);
       it != std::sregex_iterator(); ++it) {
    std::string t = it->str();
    for (char& c : t) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    out.push_back(t);
  }
  return out;
}

inline std::string RefUnfold(const std::string& iri) {
  const auto hash = iri.find_last_of('#');
  if (hash != std::string::npos) return iri.substr(hash + 1);
  const auto slash = iri.find_last_of('/');
  if (slash != std::string::npos) return iri.substr(slash + 1);
  return iri;
}

inline double RefJaro(std::string a, std::string b) {
  for (char& c : a) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (char& c : b) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const int la = static_cast<int>(a.size());
  const int lb = static_cast<int>(b.size());
  if (la == 0 || lb == 0) return 0.0;
  int window = std::max(la, lb) / 2 - 1;
  if (window < 0) window = 0;
  std::vector<int> a_match(la, 0), b_match(lb, 0);
  int m = 0;
  for (int i = 0; i < la; ++i) {
    for (int j = std::max(0, i - window); j <= std::min(lb - 1, i + window); ++j) {
      if (!b_match[j] && a[i] == b[j]) {
        a_match[i] = b_match[j] = 1;
        ++m;
        break;
      }
    }
  }
  if (m == 0) return 0.0;
  std::string sa, sb;
  for (int i = 0; i < la; ++i) if (a_match[i]) sa += a[i];
  for (int j = 0; j < lb; ++j) if (b_match[j]) sb += b[j];
  int half = 0;
  for (size_t k = 0; k < sa.size(); ++k) half += sa[k] != sb[k];
  const double md = m;
  const double t = half / 2.0;
  return (md / la + md / lb + (md - t) / md) / 3.0;
}

inline double RefMongeElkan(const std::string& a, const std::string& b) {
  const auto ta = RefTokenize(a);
  const auto tb = RefTokenize(b);
  if (ta.empty() || tb.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& x : ta) {
    double best = 0.0;
    for (const auto& y : tb) best = std::max(best, x == y ? 1.0 : 0.0);
    sum += best;
  }
  return sum / ta.size();
}

}  // namespace tomaco::oracle

#endif  // TOMACO_TESTS_ORACLE_REFERENCE_TEXT_H_
