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


#include "infomono/path.h"

#include <gtest/gtest.h>

#include <cmath>

#include "infomono/errors.h"
#include "infomono/order.h"
#include "infomono/rng.h"
#include "test_util.h"

namespace infomono {
namespace {

using testing::binary;
using testing::throws_code;

Experiment i3() { return make_derived(Matrix::identity(3)); }

Matrix rotation_kernel() {
  Matrix m(3, 3);
  const double rows[3][3] = {{0.8, 0.2, 0.0}, {0.0, 0.8, 0.2}, {0.2, 0.0, 0.8}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = rows[i][j];
  return m;
}

std::size_t count_ops(const Path& p, StepOp op) {
  std::size_t k = 0;
  for (const PathStep& s : p.steps) k += s.op == op;
  return k;
}

void expect_verified(const Path& p, const PathCheckOptions& options = {}) {
  const PathVerification v = verify_path(p, options);
  for (const PathIssue& issue : v.issues) {
    ADD_FAILURE() << "step " << issue.step << " " << issue.check << ": " << issue.detail;
  }
  EXPECT_TRUE(v.ok);
  EXPECT_LE(v.endpoint_error, 1e-9);
}

// Cumulative likelihood points of states (i, i + 1).
std::vector<std::pair<double, double>> cumulative(const Experiment& f, std::size_t i) {
  std::vector<std::pair<double, double>> pts{{0.0, 0.0}};
  for (std::size_t s = 0; s < f.signals(); ++s) {
    pts.push_back({pts.back().first + f(i, s), pts.back().second + f(i + 1, s)});
  }
  return pts;
}

// Distance from p to the polyline through pts.
double polyline_distance(const std::vector<std::pair<double, double>>& pts,
                         std::pair<double, double> p) {
  double best = INFINITY;
  for (std::size_t s = 1; s < pts.size(); ++s) {
    const double ax = pts[s - 1].first, ay = pts[s - 1].second;
    const double dx = pts[s].first - ax, dy = pts[s].second - ay;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((p.first - ax) * dx + (p.second - ay) * dy) / len2 : 0.0;
    t = std::min(1.0, std::max(0.0, t));
    best = std::min(best, std::hypot(p.first - ax - t * dx, p.second - ay - t * dy));
  }
  return best;
}

TEST(MoveDeltaTest, ReverseMovesOnlyTouchTheirStates) {
  const Experiment f = testing::four_signal_mlrp();
  Direction up;
  up.kind = DirectionKind::kReverseUp;
  up.from = 1;
  up.to = 2;
  up.cutoff = 1;
  const Matrix d = move_delta(f, up);
  for (std::size_t i = 0; i < f.states(); ++i) {
    const double moved = i <= 1 ? f(i, 1) : 0.0;
    EXPECT_DOUBLE_EQ(d(i, 1), -moved);
    EXPECT_DOUBLE_EQ(d(i, 2), moved);
  }
  up.to = 3;
  EXPECT_TRUE(throws_code([&] { move_delta(f, up); }, ErrorCode::kInvalidParameter));
  up.to = 9;
  EXPECT_TRUE(throws_code([&] { move_delta(f, up); }, ErrorCode::kIndexOutOfRange));
}

TEST(BinaryBlackwellPathTest, FigureExampleHalvesTheHighColumn) {
  const Experiment f = binary(0.2, 0.75), g = binary(0.55, 0.6875);
  const Path p = binary_blackwell_path(f, g, 4);
  // Independent solve of g = a f + b (1 - f).
  const double a = (0.6875 * 0.8 - 0.55 * 0.25) / (0.75 * 0.8 - 0.2 * 0.25);
  const double b = (0.55 - 0.2 * a) / 0.8;
  const double gamma = (a - b) / (1.0 - b);
  EXPECT_NEAR(gamma, 0.5, 1e-12);
  bool found = false;
  for (const PathStep& s : p.steps) {
    if (s.segment == 0 && s.t == 1.0) {
      found = true;
      EXPECT_NEAR(s.experiment(0, 1), 0.1, 1e-12);
      EXPECT_NEAR(s.experiment(1, 1), 0.375, 1e-12);
    }
  }
  EXPECT_TRUE(found);
  EXPECT_LT(max_abs_diff(p.final_experiment().matrix(), g.matrix()), 1e-12);
  expect_verified(p);
}

TEST(BinaryBlackwellPathTest, IdenticalEndpointsGiveStartOnlyPath) {
  const Experiment f = binary(0.3, 0.6);
  const Path p = binary_blackwell_path(f, f);
  EXPECT_EQ(p.steps.size(), 1u);
  expect_verified(p);
}

TEST(BinaryBlackwellPathTest, QuarterSamplesSatisfySandwich) {
  const Experiment f = binary(0.2, 0.75), g = binary(0.55, 0.6875);
  const Path p = binary_blackwell_path(f, g, 4);
  for (std::size_t s = 0; s + 1 < p.steps.size(); ++s) {
    EXPECT_TRUE(blackwell_geq_binary(f, p.steps[s].experiment).dominates());
    EXPECT_TRUE(blackwell_geq_binary(p.steps[s].experiment, p.steps[s + 1].experiment).dominates());
    EXPECT_TRUE(blackwell_geq_binary(p.steps[s].experiment, g).dominates());
  }
}

TEST(BinaryBlackwellPathTest, RandomHullPointsAreReached) {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.index(4);
    const Experiment f = sample_experiment(rng, n, 2);
    const double a = rng.uniform(), b = rng.uniform();
    std::vector<double> hg(n);
    for (std::size_t i = 0; i < n; ++i) hg[i] = a * f(i, 1) + b * f(i, 0);
    const Experiment g = binary_experiment(hg);
    const Path p = binary_blackwell_path(f, g, 3);
    const PathVerification v = verify_path(p);
    EXPECT_LE(v.endpoint_error, 1e-12) << "trial " << trial;
    EXPECT_TRUE(v.ok) << "trial " << trial;
    if (a < b) EXPECT_EQ(count_ops(p, StepOp::kPermute), 1u);
  }
}

TEST(BinaryBlackwellPathTest, IncomparablePairThrows) {
  EXPECT_TRUE(throws_code([] { binary_blackwell_path(binary(0.3, 0.6), binary(0.1, 0.9)); },
                          ErrorCode::kNotComparable));
}

TEST(BinaryLehmannPathTest, UpwardShiftHasConstantFractions) {
  const std::vector<double> h{0.1, 0.3, 0.5, 0.8};
  const double eps = 0.25;
  std::vector<double> hg = h;
  for (std::size_t i = 0; i <= 1; ++i) hg[i] = h[i] + eps * (1.0 - h[i]);
  const BinaryLehmannDecomposition d =
      binary_lehmann_fractions(binary_experiment(h), binary_experiment(hg));
  EXPECT_GE(d.k, 2u);
  EXPECT_NEAR(d.epsilon[0], eps, 1e-12);
  EXPECT_NEAR(d.epsilon[1], eps, 1e-12);
  EXPECT_NEAR(d.epsilon[2], 0.0, 1e-12);
  EXPECT_NEAR(d.epsilon[3], 0.0, 1e-12);
}

TEST(BinaryLehmannPathTest, IdenticalEndpointsHaveZeroFractions) {
  const Experiment f = binary_experiment({0.2, 0.4, 0.7});
  const BinaryLehmannDecomposition d = binary_lehmann_fractions(f, f);
  EXPECT_EQ(d.k, 3u);
  for (double e : d.epsilon) EXPECT_EQ(e, 0.0);
  EXPECT_EQ(binary_lehmann_path(f, f).steps.size(), 1u);
}

TEST(BinaryLehmannPathTest, RandomComparablePairsChainInOrder) {
  Rng rng(21);
  int built = 0;
  for (int trial = 0; built < 100 && trial < 2000; ++trial) {
    const std::size_t n = 2 + rng.index(5);
    const Experiment f = sample_mlrp_experiment(rng, n, 2);
    // Random upward shift on low states and downward shift on high states.
    const std::size_t l = rng.index(n + 1);
    std::vector<double> hg = high_column(f);
    const double up = rng.uniform(), down = rng.uniform();
    for (std::size_t i = 0; i < n; ++i) {
      hg[i] = i < l ? hg[i] + up * (1.0 - hg[i]) * (1.0 - 0.5 * i / n)
                    : hg[i] * (1.0 - down * (0.5 + 0.5 * i / n));
    }
    const Experiment g = binary_experiment(hg);
    if (!is_mlrp(g) || !lehmann_geq_binary(f, g).dominates()) continue;
    ++built;
    const BinaryLehmannDecomposition d = binary_lehmann_fractions(f, g);
    for (std::size_t i = 0; i + 1 < d.k; ++i) EXPECT_GE(d.epsilon[i], d.epsilon[i + 1] - 1e-12);
    for (std::size_t i = d.k; i + 1 < n; ++i) EXPECT_LE(d.epsilon[i], d.epsilon[i + 1] + 1e-12);
    const Path p = binary_lehmann_path(f, g, 2);
    for (std::size_t s = 1; s < p.steps.size(); ++s) {
      EXPECT_TRUE(lehmann_geq_binary(p.steps[s - 1].experiment, p.steps[s].experiment).dominates());
      const Direction& dir = p.steps[s].direction;
      ASSERT_EQ(dir.components.size(), 1u);
      EXPECT_NE(dir.components[0].kind, DirectionKind::kSignalReplacement);
    }
    expect_verified(p);
  }
  EXPECT_EQ(built, 100);
}

TEST(GeneralBlackwellPathTest, IdentityKernelKeepsEquivalence) {
  Rng rng(3);
  const Experiment f = sample_experiment(rng, 3, 3);
  const Path p = general_blackwell_path(f, f, Matrix::identity(3), 4);
  for (const PathStep& s : p.steps) {
    EXPECT_TRUE(blackwell_geq(s.experiment, f).dominates());
    EXPECT_TRUE(blackwell_geq(f, s.experiment).dominates());
  }
  expect_verified(p);
}

TEST(GeneralBlackwellPathTest, IdentityReachesRotationGarblingInSixSignals) {
  const Experiment f = i3();
  const Experiment g = garble(f, rotation_kernel());
  const Path p = general_blackwell_path(f, g, rotation_kernel(), 10);
  EXPECT_EQ(p.final_experiment().signals(), 6u);
  // Pairwise order at t = 0.1, ..., 0.9 through the LP checker.
  std::vector<const Experiment*> interior;
  for (const PathStep& s : p.steps)
    if (s.op == StepOp::kMove && s.t < 1.0) interior.push_back(&s.experiment);
  ASSERT_EQ(interior.size(), 9u);
  for (std::size_t a = 0; a < interior.size(); ++a)
    for (std::size_t b = a + 1; b < interior.size(); ++b)
      EXPECT_TRUE(blackwell_geq(*interior[a], *interior[b]).dominates());
  PathCheckOptions options;
  options.costs = {make_entropy_cost()};
  expect_verified(p, options);
}

TEST(GeneralBlackwellPathTest, KernelFoundByLinearProgram) {
  const Experiment g = garble(i3(), rotation_kernel());
  expect_verified(general_blackwell_path(i3(), g, 4));
}

TEST(GeneralBlackwellPathTest, WrongWitnessIsRejected) {
  const Experiment g = garble(i3(), rotation_kernel());
  EXPECT_TRUE(throws_code([&] { general_blackwell_path(i3(), g, Matrix::identity(3)); },
                          ErrorCode::kWitnessInvalid));
}

TEST(LehmannRemovalTest, ThreeSignalsAlignOnTheChord) {
  const Experiment f = make_derived(Matrix{{0.5, 0.3, 0.2}, {0.2, 0.3, 0.5}});
  const RemovalResult r = lehmann_removal(f, 0, 0, 3, 8);
  EXPECT_FALSE(r.degenerate);
  const auto pts = cumulative(r.result, 0);
  for (const auto& p : pts) {
    // Every point lies on the diagonal from (0,0) to (1,1).
    EXPECT_NEAR(p.first, p.second, 1e-12);
  }
  for (const PathStep& s : r.path.steps) EXPECT_TRUE(is_mlrp(s.experiment));
  expect_verified(r.path);
}

TEST(LehmannRemovalTest, CollinearPointsAreDegenerate) {
  const Experiment f = make_derived(Matrix{{0.2, 0.2, 0.6}, {0.1, 0.1, 0.8}});
  const RemovalResult r = lehmann_removal(f, 0, 0, 2);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.path.steps.size(), 1u);
}

TEST(LehmannRemovalTest, OtherStatePairsKeepTheirCurves) {
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + rng.index(2), m = 3 + rng.index(3);
    const Experiment f = sample_mlrp_experiment(rng, n, m, 1e-3);
    const std::size_t i = rng.index(n - 1);
    const std::size_t j = rng.index(m - 1);
    if (j + 2 > m) continue;
    const std::size_t k = j + 2 + rng.index(m - j - 1);
    const RemovalResult r = lehmann_removal(f, i, j, k, 4);
    const PathVerification v = verify_path(r.path);
    EXPECT_TRUE(v.ok) << "trial " << trial << ": "
                      << (v.issues.empty() ? "" : v.issues[0].check + " " + v.issues[0].detail);
    for (std::size_t ip = 0; ip + 1 < n; ++ip) {
      const auto before = cumulative(f, ip);
      for (const auto& p : cumulative(r.result, ip)) {
        if (ip == i) {
          // The removed region leaves points on or above the original curve.
          continue;
        }
        EXPECT_LE(polyline_distance(before, p), 1e-12) << "trial " << trial << " pair " << ip;
      }
    }
    // Points between j and k now lie on the chord.
    const auto before = cumulative(f, i);
    const double dx = before[k].first - before[j].first, dy = before[k].second - before[j].second;
    for (const auto& p : cumulative(r.result, i)) {
      if (p.first < before[j].first - 1e-12 || p.first > before[k].first + 1e-12) continue;
      if (p.second < before[j].second - 1e-12 || p.second > before[k].second + 1e-12) continue;
      const double cross = dx * (p.second - before[j].second) - dy * (p.first - before[j].first);
      EXPECT_NEAR(cross, 0.0, 1e-10) << "trial " << trial;
    }
    EXPECT_TRUE(lehmann_geq_mlrp(f, r.result).dominates());
  }
}

TEST(LehmannRemovalTest, ZeroLikelihoodInBlockIsRejected) {
  const Experiment f = make_derived(Matrix{{0.5, 0.5, 0.0}, {0.2, 0.3, 0.5}});
  EXPECT_TRUE(throws_code([&] { lehmann_removal(f, 0, 0, 3); }, ErrorCode::kDomainError));
}

TEST(LehmannPathTest, SplitTargetNeedsOnlySplits) {
  Rng rng(5);
  const Experiment f = sample_mlrp_experiment(rng, 3, 3);
  const Experiment g = split_signal(split_signal(f, 1, 0.4), 0, 0.7);
  const Path p = lehmann_path(f, g);
  EXPECT_EQ(count_ops(p, StepOp::kMove), 0u);
  expect_verified(p);
}

TEST(LehmannPathTest, RandomReverseMovesAreUndone) {
  Rng rng(17);
  int built = 0;
  for (int trial = 0; built < 50 && trial < 500; ++trial) {
    const std::size_t n = 2 + rng.index(3), m = 2 + rng.index(3);
    const Experiment f = sample_mlrp_experiment(rng, n, m, 1e-3);
    Experiment g = f;
    for (int op = 0; op < 3; ++op) {
      const std::size_t l = rng.index(n);
      if (rng.uniform() < 0.5) {
        const std::size_t j = rng.index(m - 1);
        if (reverse_up_margin(g, j, l) <= kMlrpSlack) continue;
        const BoundedDirection d = reverse_up(g, j, l);
        g = step(g, d.direction, rng.uniform() * d.max_step);
      } else {
        const std::size_t j = 1 + rng.index(m - 1);
        if (reverse_down_margin(g, j, l) <= kMlrpSlack) continue;
        const BoundedDirection d = reverse_down(g, j, l);
        g = step(g, d.direction, rng.uniform() * d.max_step);
      }
    }
    if (!is_mlrp(g) || !lehmann_geq_mlrp(f, g).dominates()) continue;
    ++built;
    const Path p = lehmann_path(f, g, 4);
    PathCheckOptions options;
    options.costs = {make_entropy_cost(),
                     make_likelihood_separable(weighted_p_norm(std::vector<double>(n, 1.0), 2.0))};
    const PathVerification v = verify_path(p, options);
    EXPECT_TRUE(v.ok) << "trial " << trial << ": "
                      << (v.issues.empty() ? ""
                                           : std::to_string(v.issues[0].step) + " " +
                                                 v.issues[0].check + " " + v.issues[0].detail);
    EXPECT_LE(v.endpoint_error, 1e-9) << "trial " << trial;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const auto target = cumulative(g, i);
      for (const auto& q : cumulative(p.final_experiment(), i))
        EXPECT_LE(polyline_distance(target, q), 1e-9) << "trial " << trial;
    }
  }
  EXPECT_EQ(built, 50);
}

TEST(LehmannPathTest, NonDominatedTargetThrows) {
  const Experiment f = binary_experiment({0.3, 0.5});
  const Experiment g = binary_experiment({0.1, 0.9});
  EXPECT_TRUE(throws_code([&] { lehmann_path(f, g); }, ErrorCode::kNotComparable));
}

TEST(VerifyPathTest, TamperedStepIsReported) {
  const Experiment f = binary(0.2, 0.75), g = binary(0.55, 0.6875);
  Path p = binary_blackwell_path(f, g, 4);
  p.steps[2].experiment = binary(0.25, 0.7);
  const PathVerification v = verify_path(p);
  EXPECT_FALSE(v.ok);
  bool operation = false;
  for (const PathIssue& issue : v.issues) operation = operation || issue.check == "operation";
  EXPECT_TRUE(operation);
}

TEST(VerifyPathTest, IncreasingCostIsReported) {
  const Experiment f = binary(0.2, 0.75), g = binary(0.55, 0.6875);
  const Path p = binary_blackwell_path(f, g, 4);
  PathCheckOptions options;
  options.costs = {make_custom("negated_entropy", [](const Experiment& h) {
    return -make_entropy_cost()->evaluate(h);
  })};
  const PathVerification v = verify_path(p, options);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.issues.front().check, "cost");
}

TEST(VerifyPathTest, WorkerCountDoesNotChangeIssues) {
  const Experiment g = garble(i3(), rotation_kernel());
  Path p = general_blackwell_path(i3(), g, 6);
  p.steps[3].experiment = p.steps[4].experiment;
  PathCheckOptions one, four;
  four.workers = 4;
  const PathVerification a = verify_path(p, one), b = verify_path(p, four);
  ASSERT_EQ(a.issues.size(), b.issues.size());
  for (std::size_t s = 0; s < a.issues.size(); ++s) {
    EXPECT_EQ(a.issues[s].step, b.issues[s].step);
    EXPECT_EQ(a.issues[s].check, b.issues[s].check);
  }
}

}  // namespace
}  // namespace infomono
