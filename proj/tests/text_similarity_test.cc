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

#include <gtest/gtest.h>

#include <random>

#include "oracle/reference_text.h"

namespace tomaco {
namespace {

using Tokens = std::vector<std::string>;

TEST(UnfoldTest, Rules) {
  EXPECT_EQ(Unfold("http://x/books.owl#Science_Fiction"), "Science_Fiction");
  EXPECT_EQ(Unfold("Genre"), "Genre");
  EXPECT_EQ(Unfold("http://x/onto/City"), "City");
  EXPECT_EQ(Unfold("http://x/a#b/c#D"), "D");
  EXPECT_EQ(Unfold(""), "");
}

TEST(TokenizeTest, Conventions) {
  EXPECT_EQ(Tokenize("Science_Fiction"), (Tokens{"science", "fiction"}));
  EXPECT_EQ(Tokenize(""), Tokens{});
  EXPECT_EQ(Tokenize("getAUTHOR_GENRE"), (Tokens{"get", "author", "genre"}));
  EXPECT_EQ(Tokenize("get_AUTHOR_GENRE"), (Tokens{"get", "author", "genre"}));
  EXPECT_EQ(Tokenize("HTTPServer"), (Tokens{"http", "server"}));
  EXPECT_EQ(Tokenize("Address2"), (Tokens{"address", "2"}));
  EXPECT_EQ(Tokenize("kebab-case  words"), (Tokens{"kebab", "case", "words"}));
  EXPECT_EQ(Tokenize("__"), Tokens{});
}

TEST(JaroTest, GoldenValues) {
  EXPECT_NEAR(Jaro("martha", "marhta"), 17.0 / 18.0, 1e-12);
  EXPECT_NEAR(Jaro("dixon", "dicksonx"), 0.7667, 1e-4);
  EXPECT_EQ(Jaro("abc", "abc"), 1.0);
  EXPECT_EQ(Jaro("", "x"), 0.0);
  EXPECT_EQ(Jaro("", ""), 0.0);
  EXPECT_EQ(Jaro("abc", "xyz"), 0.0);
  EXPECT_EQ(Jaro("MARTHA", "martha"), 1.0);
}

TEST(MongeElkanTest, GoldenValues) {
  EXPECT_EQ(MongeElkan("ScienceFiction", "Science_Fiction"), 1.0);
  EXPECT_NEAR(MongeElkan("GetBookPrice", "BookPriceService"), 2.0 / 3.0, 1e-12);
  EXPECT_EQ(MongeElkan("BookPriceService", "Price"), 1.0 / 3.0);
  EXPECT_EQ(MongeElkan("Price", "BookPriceService"), 1.0);
  EXPECT_EQ(MongeElkan("", "x"), 0.0);
  EXPECT_EQ(MongeElkan("Genre", "Weapon"), 0.0);
}

TEST(IsMatchTest, Thresholds) {
  const auto me = IsMatch("Science_Fiction", "ScienceFiction",
                          SimAlgorithm::MongeElkan());
  EXPECT_TRUE(me.matched);
  EXPECT_EQ(me.score, 1.0);
  const auto jaro = IsMatch("x", "x", SimAlgorithm::Jaro());
  EXPECT_TRUE(jaro.matched);
  EXPECT_EQ(jaro.score, 1.0);
  const auto miss = IsMatch("Genre", "Weapon", SimAlgorithm::MongeElkan());
  EXPECT_FALSE(miss.matched);
  EXPECT_EQ(miss.score, 0.0);
  EXPECT_EQ(SimAlgorithm::Jaro().match_threshold, 0.7);
  EXPECT_EQ(SimAlgorithm::MongeElkan().match_threshold, 1.0);
}

std::string RandomString(std::mt19937& rng) {
  static const std::string alphabet = "abcdeABCDE_-19 xyZ";
  std::uniform_int_distribution<int> len(0, 12);
  std::uniform_int_distribution<size_t> ch(0, alphabet.size() - 1);
  std::string s;
  for (int i = len(rng); i > 0; --i) s += alphabet[ch(rng)];
  return s;
}

std::string Upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

TEST(SimilarityPropertyTest, BoundsSymmetryCaseAndOracle) {
  std::mt19937 rng(7);
  for (int i = 0; i < 5000; ++i) {
    const std::string a = RandomString(rng);
    const std::string b = RandomString(rng);
    const double j = Jaro(a, b);
    ASSERT_GE(j, 0.0);
    ASSERT_LE(j, 1.0);
    ASSERT_EQ(j, Jaro(b, a)) << a << " / " << b;
    ASSERT_EQ(j, Jaro(Upper(a), b));
    ASSERT_EQ(j, oracle::RefJaro(a, b));
    const double me = MongeElkan(a, b);
    ASSERT_GE(me, 0.0);
    ASSERT_LE(me, 1.0);
    ASSERT_EQ(me, oracle::RefMongeElkan(a, b)) << a << " / " << b;
    ASSERT_EQ(Tokenize(a), oracle::RefTokenize(a)) << a;
    if (!a.empty()) ASSERT_EQ(Jaro(a, a), 1.0);
    if (!Tokenize(a).empty()) ASSERT_EQ(MongeElkan(a, a), 1.0);
  }
}

TEST(SimilarityPropertyTest, RaisingThresholdNeverCreatesMatch) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> thr(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const std::string a = RandomString(rng);
    const std::string b = RandomString(rng);
    double lo = thr(rng), hi = thr(rng);
    if (lo > hi) std::swap(lo, hi);
    for (SimKind kind : {SimKind::kJaro, SimKind::kMongeElkan}) {
      const bool at_lo = IsMatch(a, b, {kind, lo}).matched;
      const bool at_hi = IsMatch(a, b, {kind, hi}).matched;
      ASSERT_TRUE(at_lo || !at_hi);
    }
  }
}

}  // namespace
}  // namespace tomaco
