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


#include "infomono/audit.h"

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "infomono/errors.h"
#include "infomono/order.h"
#include "test_util.h"

namespace infomono {
namespace {

using testing::binary;
using testing::four_signal_mlrp;
using testing::quadratic_form_matrix;
using testing::throws_code;

std::size_t count_status(const std::vector<Check>& checks, CheckStatus s) {
  std::size_t k = 0;
  for (const Check& ch : checks) k += ch.status == s;
  return k;
}

TEST(DirectionalDerivativeTest, ConstantCostHasZeroDerivative) {
  CostPtr c = make_custom("constant", [](const Experiment&) { return 3.0; });
  Rng rng(1);
  const Experiment f = sample_experiment(rng, 3, 3);
  const DirectionalDerivative d = directional_derivative(*c, f, signal_replacement(f, 0, 1));
  EXPECT_EQ(d.method, "richardson");
  EXPECT_NEAR(d.value, 0.0, 1e-12);
}

TEST(DirectionalDerivativeTest, QuadraticFormRootIncreasesAlongReverseMove) {
  CostPtr c = make_likelihood_separable(quadratic_form_root(quadratic_form_matrix()));
  const Experiment f = four_signal_mlrp();
  const BoundedDirection d = reverse_up(f, 1, 0);
  const DirectionalDerivative analytic = directional_derivative(*c, f, d);
  EXPECT_EQ(analytic.method, "analytic");
  EXPECT_GT(analytic.value, 0.0008);
  CostPtr opaque = make_custom("opaque", [c](const Experiment& g) { return c->evaluate(g); });
  const DirectionalDerivative numeric = directional_derivative(*opaque, f, d);
  EXPECT_EQ(numeric.method, "richardson");
  EXPECT_NEAR(numeric.value, analytic.value, 1e-5);
}

TEST(DirectionalDerivativeTest, ZeroStepIsInfeasible) {
  CostPtr c = make_entropy_cost();
  const Experiment f = binary(0.2, 0.7);
  BoundedDirection d = signal_replacement(f, 0, 1);
  d.max_step = 0.0;
  EXPECT_TRUE(throws_code([&] { directional_derivative(*c, f, d); },
                          ErrorCode::kDirectionInfeasible));
}

TEST(GradientEstimateTest, NumericMatchesAnalyticDifferences) {
  CostPtr c = make_entropy_cost();
  CostPtr opaque = make_custom("opaque", [c](const Experiment& g) { return c->evaluate(g); });
  Rng rng(4);
  const Experiment f = sample_experiment(rng, 3, 4, 0.05);
  const GradientEstimate a = estimate_gradient(*c, f);
  const GradientEstimate n = estimate_gradient(*opaque, f);
  EXPECT_EQ(a.method, "analytic");
  EXPECT_EQ(n.method, "central_difference");
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 1; j < 4; ++j) {
      EXPECT_NEAR(n.matrix(i, j), a.matrix(i, j) - a.matrix(i, 0), 1e-6);
    }
}

TEST(LocalChecksTest, EntropyPassesSignalReplacement) {
  CostPtr c = make_entropy_cost();
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const auto checks = check_signal_replacement(*c, sample_experiment(rng, 3, 4));
    EXPECT_EQ(checks.size(), 12u);
    EXPECT_EQ(count_status(checks, CheckStatus::kPass), checks.size());
  }
}

TEST(LocalChecksTest, ReverseReplacementRequiresMlrp) {
  CostPtr c = make_entropy_cost();
  const Experiment f = Experiment::validate(Matrix{{0.2, 0.8}, {0.7, 0.3}});
  EXPECT_TRUE(throws_code([&] { check_reverse_signal_replacement(*c, f); },
                          ErrorCode::kMlrpViolated));
}

TEST(LocalChecksTest, InactiveReverseMovesAreSkipped) {
  CostPtr c = make_entropy_cost();
  // Equal rows: only the untruncated moves, which cover every state, are active.
  const Experiment f = Experiment::validate(Matrix{{0.5, 0.5}, {0.5, 0.5}});
  const auto checks = check_reverse_signal_replacement(*c, f);
  EXPECT_EQ(checks.size(), 4u);
  EXPECT_EQ(count_status(checks, CheckStatus::kSkipped), 2u);
  EXPECT_EQ(count_status(checks, CheckStatus::kPass), 2u);
}

TEST(LocalChecksTest, EntropyPassesReverseReplacementOnMlrpSamples) {
  CostPtr c = make_entropy_cost();
  Rng rng(6);
  std::size_t active = 0;
  for (int t = 0; t < 200; ++t) {
    const Experiment f = sample_mlrp_experiment(rng, 2 + rng.index(4), 2 + rng.index(4));
    const auto checks = check_reverse_signal_replacement(*c, f);
    EXPECT_EQ(count_status(checks, CheckStatus::kFail), 0u);
    active += count_status(checks, CheckStatus::kPass);
  }
  EXPECT_GT(active, 500u);
}

TEST(InvarianceTest, EntropyIsPermutationAndSplitInvariant) {
  CostPtr c = make_entropy_cost();
  Rng rng(7);
  const Experiment f = sample_experiment(rng, 3, 4);
  const auto perms = check_permutation_invariance(*c, f, 3, rng);
  EXPECT_EQ(perms.size(), 23u);
  EXPECT_EQ(count_status(perms, CheckStatus::kPass), perms.size());
  const auto splits = check_split_invariance(*c, f, 5, rng);
  EXPECT_EQ(splits.size(), 7u);
  EXPECT_EQ(count_status(splits, CheckStatus::kPass), splits.size());
}

TEST(InvarianceTest, NestedLogitIsNotPermutationInvariant) {
  CostPtr c = make_bregman_nested_logit({0.5, 0.5}, {{0, 1}, {2, 3}}, 0.5);
  Rng rng(8);
  const Experiment f = sample_experiment(rng, 2, 4);
  const auto perms = check_permutation_invariance(*c, f, 3, rng);
  EXPECT_GT(count_status(perms, CheckStatus::kFail), 0u);
  const auto splits = check_split_invariance(*c, f, 3, rng);
  ASSERT_EQ(splits.size(), 1u);
  EXPECT_EQ(splits[0].status, CheckStatus::kSkipped);
}

TEST(QuasiconvexityTest, MinRatioTripleIsFlagged) {
  CostPtr c = make_binary_example(BinaryExample::kMinRatio);
  const auto checks = check_quasiconvexity(*c, binary(0, 0.5), binary(0.5, 1), {0.5});
  ASSERT_EQ(checks.size(), 1u);
  EXPECT_EQ(checks[0].status, CheckStatus::kFail);
  EXPECT_DOUBLE_EQ(checks[0].value, 1.0);
}

TEST(QuasiconvexityTest, EntropySweepPasses) {
  CostPtr c = make_entropy_cost();
  Rng rng(9);
  for (bool garbling : {false, true}) {
    const auto checks = quasiconvexity_sweep(*c, 100, rng, 3, 3, garbling);
    EXPECT_EQ(checks.size(), 300u);
    EXPECT_EQ(count_status(checks, CheckStatus::kPass), checks.size());
  }
}

TEST(BinarySlopeTest, SteepTradeoffFailsAtKnownPoint) {
  CostPtr c = make_binary_example(BinaryExample::kC4);
  const Check ch = binary_mrit_check(*c, binary(0.5, 0.6));
  EXPECT_EQ(ch.status, CheckStatus::kFail);
  EXPECT_NEAR(ch.parameter, 2.0, 1e-9);
  EXPECT_NEAR(ch.value, 2.0 - 1.2, 1e-9);
}

TEST(BinarySlopeTest, UnitTradeoffPassesAtDiagonal) {
  CostPtr c = make_binary_example(BinaryExample::kC3);
  EXPECT_EQ(binary_mrit_check(*c, binary(0.5, 0.5)).status, CheckStatus::kPass);
  EXPECT_EQ(binary_mrit_check(*c, binary(0.2, 0.9)).status, CheckStatus::kPass);
}

TEST(BinarySlopeTest, RatioFormAgreesWithConeForm) {
  Rng rng(10);
  std::size_t agreed = 0, compared = 0;
  for (BinaryExample e : {BinaryExample::kC1, BinaryExample::kC2, BinaryExample::kC3,
                          BinaryExample::kC4}) {
    CostPtr c = make_binary_example(e);
    for (int a = 1; a < 40; ++a)
      for (int b = a + 1; b < 40; ++b) {
        const Experiment f = binary(a / 40.0, b / 40.0);
        const Check ratio_form = binary_mrit_check(*c, f);
        const Check cone_form = binary_cone_check(*c, f);
        // Skip points within tolerance of the boundary, where rounding decides.
        if (std::abs(cone_form.value) < 1e-6) continue;
        ++compared;
        agreed += ratio_form.status == cone_form.status;
      }
  }
  EXPECT_GT(compared, 1000u);
  EXPECT_EQ(agreed, compared);
}

TEST(BinarySlopeTest, RejectsNonBinaryExperiments) {
  CostPtr c = make_entropy_cost();
  Rng rng(11);
  EXPECT_TRUE(throws_code([&] { binary_mrit_check(*c, sample_experiment(rng, 2, 3)); },
                          ErrorCode::kNotBinary));
}

TEST(GridAuditTest, ExamplesOnFullGrid) {
  const auto start = std::chrono::steady_clock::now();
  EXPECT_EQ(audit_binary_grid(*make_binary_example(BinaryExample::kC1), 200).verdict,
            Verdict::kConsistent);
  EXPECT_EQ(audit_binary_grid(*make_binary_example(BinaryExample::kC3), 200).verdict,
            Verdict::kConsistent);
  const AuditReport c2 = audit_binary_grid(*make_binary_example(BinaryExample::kC2), 200);
  EXPECT_EQ(c2.verdict, Verdict::kCounterexample);
  ASSERT_TRUE(c2.summary.count("necessity_blackwell"));
  EXPECT_GT(c2.summary.at("necessity_blackwell").failed, 0u);
  EXPECT_EQ(audit_binary_grid(*make_binary_example(BinaryExample::kC4), 200).verdict,
            Verdict::kCounterexample);
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 30);
}

TEST(GridAuditTest, GlobalCounterexamplesAreOrderedAndIncreasing) {
  CostPtr c = make_binary_example(BinaryExample::kC2);
  const AuditReport r = audit_binary_grid(*c, 50, {}, 1000);
  std::size_t seen = 0;
  for (const Check& ch : r.checks) {
    if (ch.condition != "necessity_blackwell") continue;
    ++seen;
    ASSERT_TRUE(ch.other.has_value());
    EXPECT_TRUE(blackwell_dominates(ch.point, *ch.other));
    EXPECT_GT(c->evaluate(*ch.other), c->evaluate(ch.point) + 1e-9);
  }
  EXPECT_GT(seen, 0u);
}

AuditConfig config(std::size_t budget, std::size_t states, std::size_t signals) {
  AuditConfig cfg;
  cfg.budget = budget;
  cfg.seed = 42;
  cfg.max_states = states;
  cfg.max_signals = signals;
  return cfg;
}

TEST(AuditTest, EntropyConsistentUnderBothOrders) {
  CostPtr c = make_entropy_cost();
  const AuditReport b = audit_blackwell(*c, config(200, 4, 4));
  EXPECT_EQ(b.verdict, Verdict::kConsistent) << b.checks.size();
  const AuditReport l = audit_lehmann(*c, config(1000, 5, 5));
  EXPECT_EQ(l.verdict, Verdict::kConsistent);
  EXPECT_GT(l.summary.at("reverse_up").passed, 1000u);
  EXPECT_GT(l.summary.at("global_lehmann").passed, 900u);
}

TEST(AuditTest, PNormConsistentUnderLehmann) {
  Rng rng(12);
  for (double p : {1.5, 2.0, 3.0}) {
    std::vector<double> w(3);
    for (double& x : w) x = 0.1 + rng.uniform();
    CostPtr c = make_likelihood_separable(weighted_p_norm(w, p));
    const AuditReport r = audit_lehmann(*c, config(1000, 3, 5));
    EXPECT_EQ(r.verdict, Verdict::kConsistent) << "p = " << p;
    EXPECT_GT(r.summary.at("global_lehmann").passed, 900u);
  }
}

TEST(AuditTest, QuadraticFormRootIsBlackwellButNotLehmannMonotone) {
  CostPtr c = make_likelihood_separable(quadratic_form_root(quadratic_form_matrix()));
  const AuditReport b = audit_blackwell(*c, config(300, 3, 4));
  EXPECT_EQ(b.verdict, Verdict::kConsistent);
  const AuditReport l = audit_lehmann(*c, config(1000, 3, 4));
  EXPECT_EQ(l.verdict, Verdict::kCounterexample);
  EXPECT_EQ(verdict_exit_code(l.verdict), 2);
  ASSERT_TRUE(l.summary.count("necessity_lehmann"));
  EXPECT_GT(l.summary.at("necessity_lehmann").failed, 0u);
}

TEST(AuditTest, NestedLogitFails) {
  CostPtr c = make_bregman_nested_logit({0.5, 0.5}, {{0, 1}, {2, 3}}, 0.5);
  const AuditReport r = audit_blackwell(*c, config(100, 2, 4));
  EXPECT_EQ(r.verdict, Verdict::kCounterexample);
}

TEST(AuditTest, SlopeExampleFailsUnderRandomAudit) {
  CostPtr c = make_binary_example(BinaryExample::kC2);
  EXPECT_EQ(audit_blackwell(*c, config(500, 2, 2)).verdict, Verdict::kCounterexample);
}

TEST(AuditTest, NanCostYieldsWarning) {
  CostPtr c = make_custom("nan", [](const Experiment&) { return std::nan(""); });
  const AuditReport r = audit_blackwell(*c, config(5, 2, 2));
  EXPECT_EQ(r.verdict, Verdict::kNumericalWarning);
  EXPECT_EQ(verdict_exit_code(r.verdict), 3);
}

TEST(AuditTest, ReportIsDeterministicAcrossWorkerCounts) {
  CostPtr c = make_likelihood_separable(quadratic_form_root(quadratic_form_matrix()));
  AuditConfig cfg = config(300, 3, 4);
  cfg.max_listed = 1000;
  const AuditReport one = audit_lehmann(*c, cfg);
  cfg.workers = 4;
  const AuditReport four = audit_lehmann(*c, cfg);
  EXPECT_GT(one.checks.size(), 0u);
  ASSERT_EQ(one.checks.size(), four.checks.size());
  EXPECT_TRUE(one.checks == four.checks);
  EXPECT_EQ(one.summary.size(), four.summary.size());
  for (const auto& [k, s] : one.summary) {
    EXPECT_EQ(s.failed, four.summary.at(k).failed) << k;
    EXPECT_EQ(s.passed, four.summary.at(k).passed) << k;
  }
}

TEST(AuditTest, ListingIsCapped) {
  CostPtr c = make_binary_example(BinaryExample::kC2);
  AuditConfig cfg = config(300, 2, 2);
  cfg.max_listed = 3;
  const AuditReport r = audit_blackwell(*c, cfg);
  EXPECT_EQ(r.checks.size(), 3u);
  EXPECT_GT(r.unlisted, 0u);
}

TEST(NamesTest, RoundTrip) {
  for (Verdict v : {Verdict::kConsistent, Verdict::kCounterexample, Verdict::kNumericalWarning}) {
    EXPECT_EQ(parse_verdict(verdict_name(v)), v);
  }
  for (CheckStatus s : {CheckStatus::kPass, CheckStatus::kFail, CheckStatus::kSkipped,
                        CheckStatus::kWarning}) {
    EXPECT_EQ(parse_check_status(check_status_name(s)), s);
  }
  EXPECT_TRUE(throws_code([] { parse_verdict("maybe"); }, ErrorCode::kParseError));
}

}  // namespace
}  // namespace infomono
