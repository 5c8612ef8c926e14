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


#include "infomono/reproduce.h"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>

#include "infomono/audit.h"
#include "infomono/cost.h"
#include "infomono/errors.h"
#include "infomono/order.h"
#include "infomono/rng.h"

namespace infomono {

Experiment three_state_identity() { return Experiment::validate(Matrix::identity(3)); }

Matrix cyclic_garbling_kernel() { return Matrix{{.8, .2, 0}, {0, .8, .2}, {.2, 0, .8}}; }

Experiment four_signal_example() {
  return Experiment::validate(Matrix{{.78, .1, .1, .02}, {.2, .3, .4, .1}, {.05, .1, .3, .55}});
}

Matrix quadratic_form_example() { return Matrix{{10, 10, 10}, {10, 20, 10}, {10, 10, 20}}; }

Experiment mlrp_mix_left() {
  return Experiment::validate(Matrix{{.04, .36, .60}, {.02, .18, .80}, {.02, .18, .80}});
}

Experiment mlrp_mix_right() {
  return Experiment::validate(Matrix{{.60, .04, .36}, {.40, .06, .54}, {.40, .06, .54}});
}

std::vector<double> symmetric_eigenvalues(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::kDimensionMismatch, "matrix is not square");
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  std::vector<double> out(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(out.rbegin(), out.rend());
  return out;
}

namespace {

std::vector<std::vector<std::size_t>> all_permutations(std::size_t m) {
  std::vector<std::size_t> p(m);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Matrix near_identity(Rng& rng, double s) {
  const Matrix q = sample_stochastic(rng, 3, 3);
  return (1.0 - s) * Matrix::identity(3) + s * q;
}

// Rows supported on two of the three signals, like the cyclic garbling.
Experiment two_point_rows(Rng& rng) {
  Matrix m(3, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t zero = rng.index(3);
    const double w = rng.uniform();
    std::size_t k = 0;
    for (std::size_t j = 0; j < 3; ++j) {
      if (j == zero) continue;
      m(i, j) = k++ == 0 ? w : 1.0 - w;
    }
  }
  return Experiment::validate(m);
}

}  // namespace

DominatorSweep cyclic_dominator_sweep(std::size_t samples, std::uint64_t seed) {
  const Experiment id = three_state_identity();
  const Experiment g = garble(id, cyclic_garbling_kernel());
  const auto perms = all_permutations(3);
  std::vector<Experiment> targets;
  for (const auto& p : perms) {
    targets.push_back(permute(id, p));
    targets.push_back(permute(g, p));
  }
  const Tolerances tol;
  DominatorSweep out;
  out.samples = samples;
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng = Rng::for_item(seed, s);
    Experiment f = id;
    const auto& sigma = perms[rng.index(perms.size())];
    const auto& tau = perms[rng.index(perms.size())];
    switch (s % 5) {
      case 0:
        f = sample_experiment(rng, 3, 3, 0.0);
        break;
      case 1: {
        const double w = rng.uniform() < 0.1 ? 0.0 : 0.3 * rng.uniform();
        f = garble(permute(id, sigma), near_identity(rng, w));
        break;
      }
      case 2: {
        const double u = rng.uniform();
        const double w = u < 0.1 ? 0.0 : (u < 0.2 ? 1.0 : rng.uniform());
        f = make_derived((1.0 - w) * permute(id, sigma).matrix() + w * permute(g, tau).matrix());
        break;
      }
      case 3: {
        const double w = rng.uniform() < 0.1 ? 0.0 : 1e-3 + 0.2 * rng.uniform();
        f = garble(permute(g, tau), near_identity(rng, w));
        break;
      }
      default:
        f = two_point_rows(rng);
        break;
    }
    const GarblingFit fit = fit_garbling(f, g, tol);
    if (fit.residual > tol.lp && fit.residual <= 100.0 * tol.lp) {
      ++out.gray_zone;
      continue;
    }
    if (!fit.feasible) continue;
    ++out.dominating;
    double best = std::numeric_limits<double>::infinity();
    for (const Experiment& t : targets) best = std::min(best, max_abs_diff(f.matrix(), t.matrix()));
    out.worst_distance = std::max(out.worst_distance, best);
    if (best > 1e-6) out.offenders.push_back(f);
  }
  return out;
}

NestedLogitWitness find_nested_logit_violation(double xi) {
  NestedLogitWitness w{binary_experiment({0.5, 0.5}), {0.5, 0.5}, {{0, 1}, {2, 3}}, xi, 0, 2, 0.0};
  const CostPtr c = make_bregman_nested_logit(w.prior, w.nests, xi);
  // Signals 0, 2, 3 carry mass b in the low state and r b in the high state.
  for (int a = 1; a <= 9; ++a)
    for (int r10 = 1; r10 <= 30; ++r10) {
      const double b = 0.1 * a / 3.0, r = 0.1 * r10;
      const double low = 1.0 - 3.0 * b, high = 1.0 - 3.0 * r * b;
      if (low <= 0.0 || high <= 0.0 || std::abs(high / low - r) < 1e-3) continue;
      const Experiment f =
          Experiment::validate(Matrix{{b, low, b, b}, {r * b, high, r * b, r * b}});
      const double d = directional_derivative(*c, f, signal_replacement(f, 0, 2)).value;
      if (d > 0.0) {
        w.f = f;
        w.derivative = d;
        return w;
      }
    }
  throw Error(ErrorCode::kIterationLimit, "grid search found no violating experiment");
}

bool ReproResult::pass() const {
  return !rows.empty() &&
         std::all_of(rows.begin(), rows.end(), [](const ReproRow& r) { return r.pass; });
}

namespace {

std::string num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

ReproRow row(std::string quantity, std::string expected, std::string computed, bool pass) {
  return {std::move(quantity), std::move(expected), std::move(computed), pass};
}

AuditConfig audit_config(std::size_t budget, std::uint64_t seed, std::size_t workers,
                         std::size_t states, std::size_t signals) {
  AuditConfig c;
  c.budget = budget;
  c.seed = seed;
  c.workers = workers;
  c.max_states = states;
  c.max_signals = signals;
  return c;
}

ReproResult case_cyclic_dominators(std::uint64_t seed, std::size_t) {
  ReproResult r{"prop_d1", "identity on three states dominates its cyclic garbling", {}};
  const Experiment id = three_state_identity();
  const Experiment g = garble(id, cyclic_garbling_kernel());
  const OrderVerdict v = blackwell_geq(id, g);
  r.rows.push_back(row("blackwell(I3, g)", "geq", relation_name(v.relation),
                       v.relation == Relation::kGeq));
  double residual = std::numeric_limits<double>::infinity();
  if (v.witness_forward) {
    residual = max_abs_diff((id.matrix() * *v.witness_forward), g.matrix());
  }
  r.rows.push_back(row("witness residual", "<= 1e-07", num(residual), residual <= 1e-7));
  const DominatorSweep s = cyclic_dominator_sweep(10000, seed);
  r.rows.push_back(row("sampled dominators", "> 0", std::to_string(s.dominating) + " of " +
                                                        std::to_string(s.samples),
                       s.dominating > 0));
  r.rows.push_back(row("dominators off a permutation of I3 or g", "0",
                       std::to_string(s.offenders.size()) + " (worst distance " +
                           num(s.worst_distance) + ")",
                       s.offenders.empty()));
  return r;
}

ReproResult case_min_ratio(std::uint64_t, std::size_t) {
  ReproResult r{"example_d1", "min-ratio cost is monotone but not quasiconvex", {}};
  const CostPtr c = make_binary_example(BinaryExample::kMinRatio);
  const Experiment f = binary_experiment({0.0, 0.5}), g = binary_experiment({0.5, 1.0}),
                   h = binary_experiment({0.25, 0.75});
  const double cf = c->evaluate(f), cg = c->evaluate(g), ch = c->evaluate(h);
  r.rows.push_back(row("C(0, 1/2)", "2", num(cf, 17), cf == 2.0));
  r.rows.push_back(row("C(1/2, 1)", "2", num(cg, 17), cg == 2.0));
  r.rows.push_back(row("C(1/4, 3/4)", "3", num(ch, 17), ch == 3.0));
  const std::vector<Check> q = check_quasiconvexity(*c, f, g, {0.5});
  const bool flagged = q.size() == 1 && q[0].status == CheckStatus::kFail;
  r.rows.push_back(row("quasiconvexity at the midpoint", "fail",
                       q.empty() ? "none" : check_status_name(q[0].status), flagged));
  return r;
}

ReproResult grid_case(const std::string& id, const std::string& title, BinaryExample good,
                      BinaryExample bad) {
  ReproResult r{id, title, {}};
  for (BinaryExample e : {good, bad}) {
    const CostPtr c = make_binary_example(e);
    const AuditReport rep = audit_binary_grid(*c, 200);
    const Verdict want = e == good ? Verdict::kConsistent : Verdict::kCounterexample;
    std::string computed = verdict_name(rep.verdict);
    if (!rep.checks.empty()) {
      const Experiment& p = rep.checks.front().point;
      const std::size_t hc = p(0, 1) <= p(1, 1) ? 1 : 0;
      computed += " at (" + num(p(0, hc)) + ", " + num(p(1, hc)) + ")";
    }
    r.rows.push_back(row(std::string(binary_example_name(e)) + " on the 200x200 grid",
                         verdict_name(want), computed, rep.verdict == want));
  }
  return r;
}

ReproResult case_grid_c1_c2(std::uint64_t, std::size_t) {
  return grid_case("example_e1", "two-signal costs C1 (monotone) and C2 (not)", BinaryExample::kC1,
                   BinaryExample::kC2);
}

ReproResult case_grid_c3_c4(std::uint64_t, std::size_t) {
  ReproResult r = grid_case("example_e2", "two-signal costs C3 (monotone) and C4 (not)",
                            BinaryExample::kC3, BinaryExample::kC4);
  const CostPtr c = make_binary_example(BinaryExample::kC4);
  const Check ch = binary_mrit_check(*c, binary_experiment({0.5, 0.6}));
  r.rows.push_back(row("C4 slope condition at (0.5, 0.6)", "fail",
                       std::string(check_status_name(ch.status)) + " (MRIT " + num(ch.parameter) +
                           ")",
                       ch.status == CheckStatus::kFail));
  return r;
}

ReproResult case_mlrp_nonconvex(std::uint64_t, std::size_t) {
  ReproResult r{"mlrp_nonconvex", "the average of two MLRP experiments violates MLRP", {}};
  const Experiment f = mlrp_mix_left(), g = mlrp_mix_right();
  const Matrix h = 0.5 * f.matrix() + 0.5 * g.matrix();
  r.rows.push_back(row("f is MLRP", "true", is_mlrp(f) ? "true" : "false", is_mlrp(f)));
  r.rows.push_back(row("g is MLRP", "true", is_mlrp(g) ? "true" : "false", is_mlrp(g)));
  const MlrpReport rep = check_mlrp(h);
  r.rows.push_back(row("h = (f + g) / 2 is MLRP", "false", rep.holds ? "true" : "false",
                       !rep.holds));
  const double expected[3][3] = {{.32, .20, .48}, {.21, .12, .67}, {.21, .12, .67}};
  double dev = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) dev = std::max(dev, std::abs(h(i, j) - expected[i][j]));
  r.rows.push_back(row("h entries", "[[.32,.20,.48],[.21,.12,.67],[.21,.12,.67]]",
                       "max deviation " + num(dev), dev <= 1e-12));
  const double r0 = h(1, 0) / h(0, 0), r1 = h(1, 1) / h(0, 1), r2 = h(1, 2) / h(0, 2);
  r.rows.push_back(row("ratios state 2 vs 1", "0.21/0.32 > 0.12/0.20 < 0.67/0.48",
                       num(r0) + " > " + num(r1) + " < " + num(r2),
                       std::abs(r0 - 0.21 / 0.32) <= 1e-12 && std::abs(r1 - 0.6) <= 1e-12 &&
                           std::abs(r2 - 0.67 / 0.48) <= 1e-12 && r0 > r1 && r1 < r2));
  const bool witness = rep.violation && rep.violation->state == 0 && rep.violation->state2 == 1 &&
                       rep.violation->signal == 0 && rep.violation->signal2 == 1;
  r.rows.push_back(row("first violating quadruple", "states (0,1), signals (0,1)",
                       rep.violation ? "states (" + std::to_string(rep.violation->state) + "," +
                                           std::to_string(rep.violation->state2) +
                                           "), signals (" +
                                           std::to_string(rep.violation->signal) + "," +
                                           std::to_string(rep.violation->signal2) + ")"
                                     : "none",
                       witness));
  return r;
}

ReproResult case_quadratic_form(std::uint64_t, std::size_t) {
  ReproResult r{"prop42i_counterexample",
                "square-root quadratic likelihood cost increases along a reverse move", {}};
  const std::vector<double> ev = symmetric_eigenvalues(quadratic_form_example());
  const double want[3] = {37.3, 10.0, 2.7};
  bool close = ev.size() == 3;
  for (std::size_t k = 0; close && k < 3; ++k) close = std::abs(ev[k] - want[k]) <= 0.1;
  r.rows.push_back(row("eigenvalues of A", "~(37.3, 10, 2.7)",
                       "(" + num(ev[0], 4) + ", " + num(ev[1], 4) + ", " + num(ev[2], 4) + ")",
                       close));
  const Experiment f = four_signal_example();
  r.rows.push_back(row("f is MLRP", "true", is_mlrp(f) ? "true" : "false", is_mlrp(f)));
  const CostPtr c = make_likelihood_separable(quadratic_form_root(quadratic_form_example()));
  // Signal 2 -> 3 in state 1, with 1-based labels.
  const BoundedDirection d = reverse_up(f, 1, 0);
  const DirectionalDerivative a = directional_derivative(*c, f, d);
  r.rows.push_back(row("analytic <grad C, f^{2->3}_{<=1}>", "> 0.0008", num(a.value, 8),
                       a.method == "analytic" && a.value > 0.0008));
  const CostPtr opaque =
      make_custom("quadratic_form_root_values", [c](const Experiment& h) { return c->evaluate(h); });
  const DirectionalDerivative n = directional_derivative(*opaque, f, d);
  r.rows.push_back(row("finite-difference estimate", "within 1e-5 of analytic",
                       num(n.value, 8) + " (diff " + num(std::abs(n.value - a.value), 3) + ")",
                       std::abs(n.value - a.value) <= 1e-5));
  return r;
}

ReproResult case_bregman(std::uint64_t, std::size_t) {
  ReproResult r{"bregman_violation", "nested-logit cost increases under a signal replacement", {}};
  const NestedLogitWitness w = find_nested_logit_violation(0.5);
  std::string shape;
  for (std::size_t i = 0; i < 2; ++i) {
    shape += i ? "; " : "";
    for (std::size_t j = 0; j < 4; ++j) shape += (j ? "," : "") + num(w.f(i, j), 4);
  }
  r.rows.push_back(row("grid-search witness f", "found", shape, true));
  r.rows.push_back(row("<grad C, f^{0->2}> at xi = 0.5", "> 0", num(w.derivative, 8),
                       w.derivative > 0.0));
  return r;
}

ReproResult case_entropy(std::uint64_t seed, std::size_t workers) {
  ReproResult r{"entropy_lehmann", "entropy cost is Lehmann monotone on sampled MLRP experiments",
                {}};
  const CostPtr c = make_entropy_cost();
  const AuditReport rep = audit_lehmann(*c, audit_config(1000, seed, workers, 5, 5));
  r.rows.push_back(row("audit verdict", "consistent-with-monotone", verdict_name(rep.verdict),
                       rep.verdict == Verdict::kConsistent));
  for (const char* cond : {"reverse_up", "reverse_down", "global_lehmann"}) {
    const auto it = rep.summary.find(cond);
    const std::size_t passed = it == rep.summary.end() ? 0 : it->second.passed;
    const std::size_t failed = it == rep.summary.end() ? 0 : it->second.failed;
    r.rows.push_back(row(std::string(cond) + " checks", "no failures",
                         std::to_string(passed) + " passed, " + std::to_string(failed) + " failed",
                         passed > 0 && failed == 0));
  }
  return r;
}

ReproResult case_pnorm(std::uint64_t seed, std::size_t workers) {
  ReproResult r{"pnorm_lehmann", "weighted p-norm costs are Lehmann monotone", {}};
  Rng rng(seed);
  for (double p : {1.5, 2.0, 3.0}) {
    std::size_t failed = 0, passed = 0;
    bool consistent = true;
    for (std::size_t n = 2; n <= 5; ++n) {
      std::vector<double> w(n);
      for (double& x : w) x = 0.1 + rng.uniform();
      const CostPtr c = make_likelihood_separable(weighted_p_norm(w, p));
      const AuditReport rep =
          audit_lehmann(*c, audit_config(250, seed + n, workers, n, 5));
      consistent = consistent && rep.verdict == Verdict::kConsistent;
      for (const auto& [name, s] : rep.summary) {
        failed += s.failed;
        passed += s.passed;
      }
    }
    r.rows.push_back(row("p = " + num(p) + ", n = 2..5", "no failures",
                         std::to_string(passed) + " passed, " + std::to_string(failed) + " failed",
                         consistent && failed == 0 && passed > 0));
  }
  return r;
}

using CaseFn = ReproResult (*)(std::uint64_t, std::size_t);

const std::vector<std::pair<std::string, CaseFn>>& registry() {
  static const std::vector<std::pair<std::string, CaseFn>> cases = {
      {"prop_d1", case_cyclic_dominators},
      {"example_d1", case_min_ratio},
      {"example_e1", case_grid_c1_c2},
      {"example_e2", case_grid_c3_c4},
      {"mlrp_nonconvex", case_mlrp_nonconvex},
      {"prop42i_counterexample", case_quadratic_form},
      {"bregman_violation", case_bregman},
      {"entropy_lehmann", case_entropy},
      {"pnorm_lehmann", case_pnorm},
  };
  return cases;
}

}  // namespace

const std::vector<std::string>& reproduction_cases() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, fn] : registry()) out.push_back(id);
    return out;
  }();
  return ids;
}

ReproResult reproduce(const std::string& id, std::uint64_t seed, std::size_t workers) {
  for (const auto& [name, fn] : registry()) {
    if (name == id) return fn(seed, workers);
  }
  throw Error(ErrorCode::kUnknownCase, "unknown reproduction case '" + id + "'");
}

}  // namespace infomono
