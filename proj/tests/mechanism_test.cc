// Copyright 2026 The levpriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "levpriv/mechanism.h"

#include <cmath>
#include <map>

#include "gtest/gtest.h"
#include "test_util.h"

namespace levpriv {
namespace {

using testing::AllWords;
using testing::Chars;
using testing::ErrorOf;
using testing::Hamming;
using testing::W;

std::vector<BigNat> Counts(std::initializer_list<int> values) {
  return std::vector<BigNat>(values.begin(), values.end());
}

MechanismParams Params(double epsilon, std::size_t k,
                       Support support = Support::kFullLength,
                       Weighting weighting = Weighting::kExact) {
  MechanismParams p;
  p.epsilon = epsilon;
  p.k = k;
  p.support = support;
  p.weighting = weighting;
  return p;
}

TEST(ExponentWeightTest, Examples) {
  EXPECT_DOUBLE_EQ(ExponentWeight(0, Params(1, 2)), 0.75);
  EXPECT_DOUBLE_EQ(ExponentWeight(2, Params(1, 2)), 0.25);
  EXPECT_DOUBLE_EQ(ExponentWeight(1, Params(1, 2)), 0.375);
  EXPECT_DOUBLE_EQ(ExponentWeight(3, Params(0, 2)), 0.0);
  MechanismParams p = Params(2, 3);
  p.alpha = 0.5;
  EXPECT_DOUBLE_EQ(ExponentWeight(1, p), 2 * 0.5 * 3.5 / (2 * 3 * 1.5));
}

TEST(ExponentWeightTest, DecreasesWithDistance) {
  MechanismParams p = Params(3, 4);
  for (std::size_t l = 0; l < 10; ++l) {
    EXPECT_GT(ExponentWeight(l, p), ExponentWeight(l + 1, p));
  }
}

TEST(DistanceDistributionTest, WithinRadiusTwo) {
  ASSERT_OK_AND_ASSIGN(auto d, MakeDistanceDistribution(
                                   Counts({1, 6, 12}), Params(1, 2)));
  ASSERT_EQ(d.support, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_NEAR(d.prob[0], 0.08063148261904245, 1e-12);
  EXPECT_NEAR(d.prob[1], 0.33250292122253094, 1e-12);
  EXPECT_NEAR(d.prob[2], 0.5868655961584265, 1e-12);
}

TEST(DistanceDistributionTest, FullLengthClass) {
  ASSERT_OK_AND_ASSIGN(auto d, MakeDistanceDistribution(
                                   Counts({1, 6, 12, 8}), Params(1, 2)));
  const double expected[] = {0.058960991111026505, 0.24313954234498997,
                             0.4291397860305794, 0.26875968051340415};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(d.prob[i], expected[i], 1e-12);
}

TEST(DistanceDistributionTest, ZeroEpsilonFollowsClassSizes) {
  ASSERT_OK_AND_ASSIGN(auto d, MakeDistanceDistribution(
                                   Counts({1, 6, 12}), Params(0, 2)));
  EXPECT_NEAR(d.prob[0], 1.0 / 19, 1e-15);
  EXPECT_NEAR(d.prob[1], 6.0 / 19, 1e-15);
  EXPECT_NEAR(d.prob[2], 12.0 / 19, 1e-15);
}

TEST(DistanceDistributionTest, PaperLiteralIgnoresClassSizes) {
  ASSERT_OK_AND_ASSIGN(
      auto d, MakeDistanceDistribution(
                  Counts({1, 6, 12}),
                  Params(0, 2, Support::kFullLength, Weighting::kPaperLiteral)));
  for (double p : d.prob) EXPECT_NEAR(p, 1.0 / 3, 1e-15);
}

TEST(DistanceDistributionTest, EmptyClassesAreDropped) {
  ASSERT_OK_AND_ASSIGN(auto d, MakeDistanceDistribution(
                                   Counts({1, 0, 12}), Params(1, 2)));
  EXPECT_EQ(d.support, (std::vector<std::size_t>{0, 2}));
  EXPECT_FALSE(d.IndexOf(1).has_value());
  EXPECT_EQ(d.IndexOf(2), 1u);
  EXPECT_NEAR(d.prob[0] + d.prob[1], 1.0, 1e-15);
}

TEST(DistanceDistributionTest, LargeEpsilonConcentratesOnTheInput) {
  ASSERT_OK_AND_ASSIGN(auto d, MakeDistanceDistribution(
                                   Counts({1, 6, 12}), Params(500, 2)));
  EXPECT_NEAR(d.prob[0], 1.0, 1e-12);
  for (double p : d.prob) EXPECT_TRUE(std::isfinite(p));
}

TEST(DistanceDistributionTest, HugeCountsStayFinite) {
  std::vector<BigNat> counts(40);
  for (std::size_t l = 0; l < counts.size(); ++l) {
    counts[l] = BigNat(1) << (4 * l);
  }
  ASSERT_OK_AND_ASSIGN(auto d, MakeDistanceDistribution(counts, Params(1, 39)));
  double sum = 0;
  for (double p : d.prob) {
    ASSERT_TRUE(std::isfinite(p));
    sum += p;
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(DistanceDistributionTest, Errors) {
  EXPECT_EQ(ErrorOf(MakeDistanceDistribution(Counts({0, 0}), Params(1, 1))),
            ErrorKind::kEmptySupport);
  EXPECT_EQ(ErrorOf(MakeDistanceDistribution(Counts({1}), Params(-1, 1))),
            ErrorKind::kInvalidParams);
  EXPECT_EQ(ErrorOf(MakeDistanceDistribution(Counts({1}), Params(1, 0))),
            ErrorKind::kZeroK);
  MechanismParams bad_alpha = Params(1, 1);
  bad_alpha.alpha = 0;
  EXPECT_EQ(ErrorOf(MakeDistanceDistribution(Counts({1}), bad_alpha)),
            ErrorKind::kNonPositiveAlpha);
}

TEST(DistanceDistributionTest, Csv) {
  ASSERT_OK_AND_ASSIGN(auto d, MakeDistanceDistribution(
                                   Counts({1, 6, 12}), Params(1, 2)));
  std::string csv = d.ToCsv();
  EXPECT_EQ(csv.rfind("distance,count,log_weight,prob\n", 0), 0u);
  EXPECT_NE(csv.find("\n2,12,"), std::string::npos);
  EXPECT_NE(csv.find("0.080631482619042"), std::string::npos);
}

TEST(ModeNamesTest, RoundTrip) {
  EXPECT_EQ(*ParseWeighting("exact"), Weighting::kExact);
  EXPECT_EQ(*ParseWeighting("paper-literal"), Weighting::kPaperLiteral);
  EXPECT_EQ(*ParseWeighting(WeightingName(Weighting::kPaperLiteral)),
            Weighting::kPaperLiteral);
  EXPECT_EQ(*ParseSupport("within-k"), Support::kWithinK);
  EXPECT_EQ(*ParseSupport(SupportName(Support::kFullLength)),
            Support::kFullLength);
  EXPECT_EQ(ErrorOf(ParseWeighting("fuzzy")), ErrorKind::kInvalidParams);
  EXPECT_EQ(ErrorOf(ParseSupport("none")), ErrorKind::kInvalidParams);
}

TEST(AnalyticPmfTest, PerWordValuesAndNormalization) {
  ASSERT_OK_AND_ASSIGN(auto pmf,
                       MakeAnalyticPmf(Counts({1, 6, 12, 8}), Params(1, 2)));
  const double expected[] = {0.058960991111026505, 0.040523257057498326,
                             0.035761648835881614, 0.03359496006417552};
  double total = 0;
  for (std::size_t l = 0; l < 4; ++l) {
    EXPECT_NEAR(pmf.ProbabilityAt(l), expected[l], 1e-12);
    EXPECT_NEAR(pmf.LogProbabilityAt(l), std::log(expected[l]), 1e-10);
    total += pmf.counts[l].convert_to<double>() * pmf.per_word[l];
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_EQ(pmf.ProbabilityAt(4), 0.0);
  EXPECT_EQ(pmf.LogProbabilityAt(4), -std::numeric_limits<double>::infinity());
}

TEST(AnalyticPmfTest, PerWordProbabilityDecreasesWithDistance) {
  for (double eps : {0.1, 1.0, 4.0}) {
    ASSERT_OK_AND_ASSIGN(auto pmf,
                         MakeAnalyticPmf(Counts({1, 9, 27, 27}), Params(eps, 3)));
    for (std::size_t l = 0; l + 1 < 4; ++l) {
      EXPECT_GT(pmf.per_word[l], pmf.per_word[l + 1]);
    }
  }
}

TEST(ExponentialMechanismTest, ClassCountsFromTheAutomaton) {
  Alphabet abc = Chars("abc");
  ASSERT_OK_AND_ASSIGN(auto m, BuildSubstitutionAutomaton(abc, W(abc, "abc"), 3));
  ASSERT_OK_AND_ASSIGN(auto counts, DistanceClassCounts(m, 3));
  EXPECT_EQ(counts, Counts({1, 6, 12, 8}));
  ASSERT_OK_AND_ASSIGN(auto mech, ExponentialMechanism::Create(m, Params(1, 2)));
  EXPECT_EQ(mech.class_counts(), Counts({1, 6, 12, 8}));
  EXPECT_NEAR(mech.distribution().prob[3], 0.26875968051340415, 1e-12);
  EXPECT_EQ(mech.path_counts(2).total, 12);
}

TEST(ExponentialMechanismTest, DrawsMatchTheirDistance) {
  Alphabet abc = Chars("abc");
  ASSERT_OK_AND_ASSIGN(auto m, BuildSubstitutionAutomaton(abc, W(abc, "abc"), 3));
  ASSERT_OK_AND_ASSIGN(auto mech, ExponentialMechanism::Create(m, Params(1, 2)));
  Rng rng = MakeStream(5);
  for (int i = 0; i < 500; ++i) {
    ASSERT_OK_AND_ASSIGN(auto draw, mech.Sample(rng));
    EXPECT_EQ(Hamming(draw.word, W(abc, "abc")), draw.distance);
  }
}

TEST(WordPrivatizerTest, FullSupportCoversTheLengthClass) {
  Alphabet abc = Chars("abc");
  ASSERT_OK_AND_ASSIGN(auto priv,
                       WordPrivatizer::Create(abc, W(abc, "abc"), Params(1, 1)));
  EXPECT_EQ(priv.mechanism().distribution().support,
            (std::vector<std::size_t>{0, 1, 2, 3}));
  for (const Word& w : AllWords(abc, 3)) EXPECT_TRUE(*priv.automaton().Accepts(w));
}

TEST(WordPrivatizerTest, WithinKTruncatesTheSupport) {
  Alphabet abc = Chars("abc");
  ASSERT_OK_AND_ASSIGN(
      auto priv, WordPrivatizer::Create(abc, W(abc, "abc"),
                                        Params(1, 2, Support::kWithinK)));
  EXPECT_EQ(priv.mechanism().class_counts(), Counts({1, 6, 12}));
  EXPECT_NEAR(priv.mechanism().distribution().prob[0], 0.08063148261904245,
              1e-12);
}

TEST(WordPrivatizerTest, EmpiricalLawMatchesAnalyticPmf) {
  Alphabet ab = Chars("ab");
  Word x = W(ab, "abab");
  ASSERT_OK_AND_ASSIGN(auto priv, WordPrivatizer::Create(ab, x, Params(2, 2)));
  ASSERT_OK_AND_ASSIGN(auto pmf, priv.mechanism().Pmf());
  Rng rng = MakeStream(77);
  std::map<Word, int> hits;
  constexpr int kTrials = 160000;
  for (int i = 0; i < kTrials; ++i) ++hits[*priv.Sample(rng)];
  for (const Word& w : AllWords(ab, 4)) {
    double expected = pmf.ProbabilityAt(Hamming(w, x));
    EXPECT_NEAR(static_cast<double>(hits[w]) / kTrials, expected, 0.005);
  }
}

TEST(WordPrivatizerTest, SeededRunsRepeat) {
  Alphabet abc = Chars("abc");
  Rng a = MakeStream(9, 3), b = MakeStream(9, 3);
  for (int i = 0; i < 20; ++i) {
    EXPECT_EQ(*PrivatizeWord(abc, W(abc, "cab"), Params(1, 2), a),
              *PrivatizeWord(abc, W(abc, "cab"), Params(1, 2), b));
  }
}

TEST(WordPrivatizerTest, Errors) {
  Alphabet abc = Chars("abc");
  EXPECT_EQ(ErrorOf(WordPrivatizer::Create(abc, Word{abc.id(), {}}, Params(1, 1))),
            ErrorKind::kEmptyWord);
  Alphabet single = Chars("a");
  EXPECT_EQ(ErrorOf(WordPrivatizer::Create(single, W(single, "aa"), Params(1, 1))),
            ErrorKind::kDegenerateAlphabet);
  EXPECT_EQ(ErrorOf(WordPrivatizer::Create(abc, W(abc, "ab"), Params(1, 0))),
            ErrorKind::kZeroK);
}

}  // namespace
}  // namespace levpriv
