// Copyright 2026 The infomono Authors
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


#include "infomono/cost.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "infomono/errors.h"
#include "infomono/numeric.h"
#include "infomono/rng.h"
#include "test_util.h"

namespace infomono {
namespace {

using testing::binary;
using testing::throws_code;

constexpr double kInf = std::numeric_limits<double>::infinity();

Experiment shifted(const Experiment& f, std::size_t i, std::size_t j, std::size_t k, double h) {
  Matrix m = f.matrix();
  m(i, j) += h;
  m(i, k) -= h;
  return Experiment::validate(m);
}

// Central difference along e_ij - e_ik, which keeps rows stochastic.
double projected_difference(const CostFunction& c, const Experiment& f, std::size_t i,
                            std::size_t j, std::size_t k, double h = 1e-5) {
  return (c.evaluate(shifted(f, i, j, k, h)) - c.evaluate(shifted(f, i, j, k, -h))) / (2 * h);
}

// Checks the analytic gradient of `c` on `trials` random interior experiments.
void expect_gradient_matches(const CostFunction& c, std::size_t n, std::size_t m, int trials,
                             std::uint64_t seed) {
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    Experiment f = sample_experiment(rng, n, m, 0.02);
    std::optional<Matrix> g = c.gradient(f);
    ASSERT_TRUE(g.has_value()) << c.id();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = j + 1; k < m; ++k) {
          const double analytic = (*g)(i, j) - (*g)(i, k);
          const double numeric = projected_difference(c, f, i, j, k);
          EXPECT_NEAR(analytic, numeric, 1e-5 * std::max(1.0, std::abs(numeric)))
              << c.id() << " trial " << t << " (" << i << "," << j << "," << k << ")";
        }
  }
}

double binary_entropy(double p) { return -p * std::log(p) - (1 - p) * std::log(1 - p); }

TEST(LikelihoodSeparableTest, UninformativeCostsZero) {
  CostPtr c = make_likelihood_separable(weighted_p_norm({1.0, 2.0, 0.5}, 2.0));
  Matrix flat(3, 4, 0.25);
  EXPECT_NEAR(c->evaluate(Experiment::validate(flat)), 0.0, 1e-15);
}

TEST(LikelihoodSeparableTest, QuadraticFormCostIsFinite) {
  CostPtr c = make_likelihood_separable(quadratic_form_root(testing::quadratic_form_matrix()));
  const double v = c->evaluate(testing::four_signal_mlrp());
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_GT(v, 0.0);
}

TEST(LikelihoodSeparableTest, SplitInvariantForHomogeneousPsi) {
  Rng rng(1);
  CostPtr c = make_likelihood_separable(weighted_p_norm({1.0, 3.0, 2.0}, 1.5));
  for (int t = 0; t < 50; ++t) {
    Experiment f = sample_experiment(rng, 3, 4);
    const double lambda = rng.uniform();
    Experiment g = split_signal(f, rng.index(4), lambda);
    EXPECT_NEAR(c->evaluate(f), c->evaluate(g), 1e-12);
  }
}

TEST(LikelihoodSeparableTest, SublinearPsiIsGarblingMonotone) {
  Rng rng(2);
  for (double p : {1.5, 2.0, 3.0}) {
    CostPtr c = make_likelihood_separable(weighted_p_norm({1.0, 2.0, 0.5}, p));
    for (int t = 0; t < 100; ++t) {
      Experiment f = sample_experiment(rng, 3, 2 + rng.index(4));
      Experiment g = garble(f, sample_stochastic(rng, f.signals(), 2 + rng.index(4)));
      EXPECT_GE(c->evaluate(f) + 1e-12, c->evaluate(g));
    }
  }
}

TEST(LikelihoodSeparableTest, PNormSatisfiesReverseReplacementInequalities) {
  Rng rng(3);
  for (double p : {1.5, 2.0, 3.0}) {
    CostPtr c = make_likelihood_separable(weighted_p_norm({0.7, 1.3, 2.0}, p));
    for (int t = 0; t < 100; ++t) {
      Experiment f = sample_mlrp_experiment(rng, 3, 4);
      const Matrix g = *c->gradient(f);
      for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t l = 0; l < 3; ++l) {
          if (j + 1 < 4 && reverse_up_margin(f, j, l) > kMlrpSlack) {
            EXPECT_LE(inner(g, reverse_up(f, j, l).direction.delta), 1e-7);
          }
          if (j >= 1 && reverse_down_margin(f, j, l) > kMlrpSlack) {
            EXPECT_LE(inner(g, reverse_down(f, j, l).direction.delta), 1e-7);
          }
        }
    }
  }
}

TEST(LikelihoodSeparableTest, WeightCountMustMatchStates) {
  CostPtr c = make_likelihood_separable(weighted_p_norm({1.0, 1.0}, 2.0));
  EXPECT_TRUE(throws_code([&] { c->evaluate(testing::four_signal_mlrp()); },
                          ErrorCode::kDimensionMismatch));
  EXPECT_TRUE(throws_code([] { weighted_p_norm({1.0}, 0.5); }, ErrorCode::kInvalidParameter));
}

TEST(PosteriorSeparableTest, EntropyOfIdentity) {
  Experiment id = Experiment::validate(Matrix::identity(2));
  EXPECT_NEAR(eval_entropy_cost({0.5, 0.5}, id), std::log(2.0), 1e-15);
  EXPECT_NEAR(make_entropy_cost()->evaluate(id), std::log(2.0), 1e-15);
}

TEST(PosteriorSeparableTest, EntropyOfUninformativeIsZero) {
  Experiment flat = Experiment::validate(Matrix{{0.2, 0.8}, {0.2, 0.8}});
  EXPECT_NEAR(eval_entropy_cost({0.3, 0.7}, flat), 0.0, 1e-15);
}

TEST(PosteriorSeparableTest, EntropyIsMutualInformation) {
  Experiment f = Experiment::validate(Matrix{{0.9, 0.1}, {0.1, 0.9}});
  EXPECT_NEAR(eval_entropy_cost({0.5, 0.5}, f), std::log(2.0) - binary_entropy(0.9), 1e-14);
}

TEST(PosteriorSeparableTest, GradientFormula) {
  // -mu_i H(q^j) - tau^j sum_i' dH/dq_i' dq_i'/df_i^j, written out for entropy.
  Experiment f = testing::four_signal_mlrp();
  const std::vector<double> mu = {0.2, 0.5, 0.3};
  Matrix g = posterior_separable_gradient(shannon_entropy(), mu, f);
  for (std::size_t j = 0; j < 4; ++j) {
    double tau = 0.0;
    for (std::size_t i = 0; i < 3; ++i) tau += mu[i] * f(i, j);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_NEAR(g(i, j), mu[i] * std::log(mu[i] * f(i, j) / tau), 1e-12);
    }
  }
}

TEST(PosteriorSeparableTest, NonnegativeAndZeroAtUninformative) {
  Rng rng(4);
  for (CostPtr c : {make_entropy_cost(), make_posterior_separable(gini_impurity()),
                    make_posterior_separable(gini_impurity(), std::vector<double>{0.1, 0.6, 0.3})}) {
    for (int t = 0; t < 100; ++t) {
      EXPECT_GE(c->evaluate(sample_experiment(rng, 3, 2 + rng.index(4))), -1e-15);
      std::vector<double> row = sample_simplex(rng, 4);
      Experiment flat = Experiment::validate(Matrix::from_rows({row, row, row}));
      EXPECT_NEAR(c->evaluate(flat), 0.0, 1e-14);
    }
  }
}

TEST(PosteriorSeparableTest, EntropySufficientConditionsOnFosdPairs) {
  Rng rng(5);
  const SimplexFunction h = shannon_entropy();
  int tested = 0;
  while (tested < 500) {
    const std::size_t n = 2 + rng.index(4);
    std::vector<double> q = sample_simplex(rng, n), q2 = sample_simplex(rng, n);
    double c = 0.0, c2 = 0.0;
    bool fosd = true;
    for (std::size_t s = 0; s < n; ++s) {
      c += q[s];
      c2 += q2[s];
      fosd = fosd && c >= c2;
    }
    if (!fosd) continue;
    ++tested;
    const auto d = h.gradient(q), d2 = h.gradient(q2);
    for (std::size_t l = 0; l < n; ++l) {
      double low = 0.0, high = 0.0;
      for (std::size_t i = 0; i <= l; ++i) low += (d[i] - d2[i]) * q[i];
      for (std::size_t i = l; i < n; ++i) high += (d2[i] - d[i]) * q2[i];
      EXPECT_LE(low, 1e-12);
      EXPECT_LE(high, 1e-12);
    }
  }
}

TEST(PosteriorSeparableTest, PriorMustHaveFullSupport) {
  EXPECT_TRUE(throws_code([] { validate_prior({0.0, 1.0}); }, ErrorCode::kPriorSupportError));
  EXPECT_TRUE(throws_code([] { validate_prior({0.3, 0.3}); }, ErrorCode::kPriorSupportError));
  EXPECT_TRUE(throws_code([] { make_entropy_cost(std::vector<double>{0.5, 0.5, 0.0}); },
                          ErrorCode::kPriorSupportError));
}

TEST(PosteriorSeparableTest, EmptySignalsContributeNothing) {
  Experiment f = split_signal(testing::four_signal_mlrp(), 1, 0.0);
  EXPECT_NEAR(make_entropy_cost()->evaluate(f),
              make_entropy_cost()->evaluate(testing::four_signal_mlrp()), 1e-15);
  Matrix g = *make_entropy_cost()->gradient(f);
  EXPECT_TRUE(std::isnan(g(0, 2)));
}

TEST(BregmanTest, UnitXiEqualsEntropy) {
  Rng rng(6);
  const std::vector<double> mu = {0.3, 0.7};
  for (int t = 0; t < 50; ++t) {
    Experiment f = sample_experiment(rng, 2, 4);
    EXPECT_NEAR(eval_bregman_nested_logit(mu, {{0, 1}, {2, 3}}, 1.0, f), eval_entropy_cost(mu, f),
                1e-12);
    EXPECT_NEAR(eval_bregman_nested_logit(mu, {{0}, {1}, {2}, {3}}, 0.4, f),
                eval_entropy_cost(mu, f), 1e-12);
  }
}

TEST(BregmanTest, ViolatesSignalReplacementAtConstructedPoint) {
  // Search a small grid for f whose signals 0, 2, 3 share one likelihood ratio
  // while signal 1 does not: then q^0 = q^2 = q^{nest of 2} != q^{nest of 0}.
  const std::vector<double> mu = {0.5, 0.5};
  const std::vector<std::vector<std::size_t>> nests = {{0, 1}, {2, 3}};
  const double xi = 0.5;
  CostPtr c = make_bregman_nested_logit(mu, nests, xi);
  int found = 0;
  for (int a = 1; a <= 5; ++a)
    for (int r10 = 5; r10 <= 15; ++r10) {
      const double base = 0.1 * a / 3.0;   // mass of each of signals 0, 2, 3 in state 0
      const double r = r10 / 10.0;         // shared likelihood ratio
      const double row0[] = {base, 1 - 3 * base, base, base};
      const double rest = 1 - 3 * r * base;
      if (rest <= 0) continue;
      const double row1[] = {r * base, rest, r * base, r * base};
      if (std::abs(rest / row0[1] - r) < 1e-3) continue;
      Experiment f = Experiment::validate(Matrix{{row0[0], row0[1], row0[2], row0[3]},
                                                 {row1[0], row1[1], row1[2], row1[3]}});
      const Matrix g = *c->gradient(f);
      const double d = inner(g, signal_replacement(f, 0, 2).direction.delta);
      // (1 - xi) sum_i mu_i f_i^0 (log q_i^0 - log q_i^{nest of 0})
      double expected = 0.0;
      const double tau0 = mu[0] * row0[0] + mu[1] * row1[0];
      const double taun = mu[0] * (row0[0] + row0[1]) + mu[1] * (row1[0] + row1[1]);
      const double rows[2][2] = {{row0[0], row0[0] + row0[1]}, {row1[0], row1[0] + row1[1]}};
      for (int i = 0; i < 2; ++i) {
        expected += (1 - xi) * mu[i] * rows[i][0] *
                    (std::log(mu[i] * rows[i][0] / tau0) - std::log(mu[i] * rows[i][1] / taun));
      }
      EXPECT_NEAR(d, expected, 1e-12);
      EXPECT_GT(d, 0.0);
      ++found;
    }
  EXPECT_GT(found, 10);
}

TEST(BregmanTest, GradientMatchesFiniteDifferences) {
  CostPtr c = make_bregman_nested_logit({0.2, 0.3, 0.5}, {{0, 2}, {1}, {3}}, 0.35);
  expect_gradient_matches(*c, 3, 4, 100, 7);
}

TEST(BregmanTest, RejectsBadParameters) {
  EXPECT_TRUE(throws_code([] { make_bregman_nested_logit({0.5, 0.5}, {{0, 1}, {1, 2}}, 0.5); },
                          ErrorCode::kInvalidNestPartition));
  EXPECT_TRUE(throws_code([] { make_bregman_nested_logit({0.5, 0.5}, {{0, 2}}, 0.5); },
                          ErrorCode::kInvalidNestPartition));
  EXPECT_TRUE(throws_code([] { make_bregman_nested_logit({0.5, 0.5}, {{0}, {1}}, 0.0); },
                          ErrorCode::kInvalidXi));
  EXPECT_TRUE(throws_code([] { make_bregman_nested_logit({0.5, 0.5}, {{0}, {1}}, 1.5); },
                          ErrorCode::kInvalidXi));
}

TEST(DivergenceTest, UninformativeIsZeroAndIdentityIsInfinite) {
  DivergenceSpec kl_sum{Divergence::kKl, 1.0, Aggregator::kWeightedSum, {}};
  EXPECT_EQ(eval_statewise_divergence(kl_sum, Experiment::validate(Matrix{{0.3, 0.7}, {0.3, 0.7}})),
            0.0);
  EXPECT_EQ(eval_statewise_divergence(kl_sum, Experiment::validate(Matrix::identity(2))), kInf);
  EXPECT_EQ(make_statewise_divergence({})->evaluate(Experiment::validate(Matrix::identity(2))), kInf);
}

TEST(DivergenceTest, KnownValues) {
  Experiment f = Experiment::validate(Matrix{{0.9, 0.1}, {0.1, 0.9}});
  DivergenceSpec kl{Divergence::kKl, 1.0, Aggregator::kMax, {}};
  EXPECT_NEAR(eval_statewise_divergence(kl, f), 0.8 * std::log(9.0), 1e-14);
  DivergenceSpec renyi;  // order 2, max
  EXPECT_NEAR(eval_statewise_divergence(renyi, f), std::log(0.81 / 0.1 + 0.01 / 0.9), 1e-13);
  DivergenceSpec near_one{Divergence::kRenyi, 1.0 + 1e-7, Aggregator::kMax, {}};
  EXPECT_NEAR(eval_statewise_divergence(near_one, f), 0.8 * std::log(9.0), 1e-6);
}

TEST(DivergenceTest, DataProcessingInequality) {
  Rng rng(8);
  for (const DivergenceSpec& spec :
       {DivergenceSpec{Divergence::kKl, 1.0, Aggregator::kMax, {}},
        DivergenceSpec{Divergence::kRenyi, 0.5, Aggregator::kMax, {}},
        DivergenceSpec{Divergence::kRenyi, 2.0, Aggregator::kMax, {}},
        DivergenceSpec{Divergence::kRenyi, 3.0, Aggregator::kMax, {}}}) {
    for (int t = 0; t < 200; ++t) {
      const std::size_t m = 2 + rng.index(4);
      Experiment f = sample_experiment(rng, 3, m);
      Experiment g = garble(f, sample_stochastic(rng, m, 2 + rng.index(4)));
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t i2 = 0; i2 < 3; ++i2) {
          if (i == i2) continue;
          EXPECT_LE(divergence(spec, g.matrix().row(i), g.matrix().row(i2)),
                    divergence(spec, f.matrix().row(i), f.matrix().row(i2)) + 1e-12);
        }
    }
  }
}

TEST(DivergenceTest, WeightedSumUsesWeights) {
  Experiment f = Experiment::validate(Matrix{{0.9, 0.1}, {0.1, 0.9}});
  DivergenceSpec only_one{Divergence::kKl, 1.0, Aggregator::kWeightedSum, Matrix{{0, 2}, {0, 0}}};
  EXPECT_NEAR(eval_statewise_divergence(only_one, f), 2 * 0.8 * std::log(9.0), 1e-13);
  DivergenceSpec negative{Divergence::kKl, 1.0, Aggregator::kWeightedSum, Matrix{{0, -1}, {0, 0}}};
  EXPECT_TRUE(throws_code([&] { make_statewise_divergence(negative); },
                          ErrorCode::kInvalidParameter));
}

TEST(BinaryExampleTest, MinRatioValues) {
  EXPECT_DOUBLE_EQ(eval_binary_example(BinaryExample::kMinRatio, binary(0.0, 0.5)), 2.0);
  EXPECT_DOUBLE_EQ(eval_binary_example(BinaryExample::kMinRatio, binary(0.5, 1.0)), 2.0);
  EXPECT_DOUBLE_EQ(eval_binary_example(BinaryExample::kMinRatio, binary(0.25, 0.75)), 3.0);
}

TEST(BinaryExampleTest, ClosedForms) {
  EXPECT_EQ(eval_binary_example(BinaryExample::kC3, binary(0.3, 0.3)), 0.0);
  EXPECT_NEAR(eval_binary_example(BinaryExample::kC4, binary(0.5, 0.6)), -0.4, 1e-15);
  // C1 = (f2/f1 - 1)^2 (1 - (1-f2)/(1-f1)); C2 = f2(1-f2)/(f1(1-f1)) - 1.
  EXPECT_NEAR(eval_binary_example(BinaryExample::kC1, binary(0.2, 0.6)), 4.0 * 0.5, 1e-14);
  EXPECT_NEAR(eval_binary_example(BinaryExample::kC2, binary(0.2, 0.6)), 0.24 / 0.16 - 1, 1e-14);
  EXPECT_EQ(eval_binary_example(BinaryExample::kC1, binary(0.0, 0.5)), kInf);
  EXPECT_EQ(eval_binary_example(BinaryExample::kC1, binary(0.0, 0.0)), 0.0);
}

TEST(BinaryExampleTest, SteepTradeoffViolatesSlopeCondition) {
  const auto d = binary_example_partials(BinaryExample::kC4, 0.5, 0.6);
  const double mrit = -d[0] / d[1];
  EXPECT_DOUBLE_EQ(mrit, 2.0);
  EXPECT_FALSE(0.6 / 0.5 >= mrit && mrit >= 0.4 / 0.5);
  const auto d3 = binary_example_partials(BinaryExample::kC3, 0.5, 0.6);
  EXPECT_DOUBLE_EQ(-d3[0] / d3[1], 1.0);
}

TEST(BinaryExampleTest, StrictEvaluatorRequiresNormalization) {
  EXPECT_TRUE(throws_code([] { eval_binary_example(BinaryExample::kC1, binary(0.6, 0.2)); },
                          ErrorCode::kNotNormalized));
  EXPECT_TRUE(throws_code([] { eval_binary_example(BinaryExample::kC1, testing::four_signal_mlrp()); },
                          ErrorCode::kNotBinary));
  EXPECT_TRUE(throws_code([] { parse_binary_example("C9"); }, ErrorCode::kUnknownFamily));
}

TEST(BinaryExampleTest, CostRelabelsSignals) {
  CostPtr c = make_binary_example(BinaryExample::kC2);
  EXPECT_DOUBLE_EQ(c->evaluate(binary(0.6, 0.2)),
                   eval_binary_example(BinaryExample::kC2, binary(0.4, 0.8)));
}

TEST(GradientTest, AnalyticGradientsMatchFiniteDifferences) {
  const Matrix a = testing::quadratic_form_matrix();
  expect_gradient_matches(*make_likelihood_separable(weighted_p_norm({0.5, 1.0, 2.0}, 1.5)), 3, 4,
                          100, 11);
  expect_gradient_matches(*make_likelihood_separable(weighted_p_norm({0.5, 1.0, 2.0}, 2.0)), 3, 4,
                          100, 12);
  expect_gradient_matches(*make_likelihood_separable(weighted_p_norm({0.5, 1.0, 2.0}, 3.0)), 3, 4,
                          100, 13);
  expect_gradient_matches(*make_likelihood_separable(quadratic_form_root(a)), 3, 4, 100, 14);
  expect_gradient_matches(*make_entropy_cost(std::vector<double>{0.2, 0.3, 0.5}), 3, 4, 100, 15);
  expect_gradient_matches(*make_posterior_separable(gini_impurity()), 3, 4, 100, 16);
  for (BinaryExample e : {BinaryExample::kC1, BinaryExample::kC2, BinaryExample::kC3,
                          BinaryExample::kC4}) {
    expect_gradient_matches(*make_binary_example(e), 2, 2, 100, 17);
  }
}

TEST(CustomCostTest, WrapsCallables) {
  CostPtr c = make_custom("constant", [](const Experiment&) { return 4.0; }, {}, false);
  EXPECT_EQ(c->evaluate(binary(0.1, 0.2)), 4.0);
  EXPECT_FALSE(c->gradient(binary(0.1, 0.2)).has_value());
  EXPECT_FALSE(c->reentrant());
  EXPECT_EQ(c->id(), "constant");
}

}  // namespace
}  // namespace infomono
