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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "infomono/errors.h"
#include "infomono/order.h"

namespace infomono {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kEps = std::numeric_limits<double>::epsilon();

// value <= threshold passes; NaN is a warning.
CheckStatus judge(double value, double threshold) {
  if (std::isnan(value) || std::isnan(threshold)) return CheckStatus::kWarning;
  return value <= threshold ? CheckStatus::kPass : CheckStatus::kFail;
}

// |C(a) - C(b)| with equal infinities treated as equal.
double cost_gap(double a, double b) {
  if (std::isinf(a) && std::isinf(b) && (a > 0) == (b > 0)) return 0.0;
  return std::abs(a - b);
}

// C(b) - C(a) with equal infinities treated as equal.
double cost_increase(double a, double b) {
  if (std::isinf(a) && std::isinf(b) && (a > 0) == (b > 0)) return 0.0;
  return b - a;
}

Check local_check(const std::string& condition, const CostFunction& c, const Experiment& f,
                  const BoundedDirection& d, std::vector<std::size_t> indices,
                  const Tolerances& tol) {
  Check ch{condition, f};
  ch.indices = std::move(indices);
  ch.parameter = d.max_step;
  const DirectionalDerivative dd = directional_derivative(c, f, d);
  ch.value = dd.value;
  ch.threshold = tol.audit + dd.error;
  ch.status = judge(ch.value, ch.threshold);
  ch.note = dd.method;
  return ch;
}

Check skipped(const std::string& condition, const Experiment& f, std::vector<std::size_t> indices,
              const std::string& note) {
  Check ch{condition, f};
  ch.indices = std::move(indices);
  ch.status = CheckStatus::kSkipped;
  ch.note = note;
  return ch;
}

Check invariance_check(const std::string& condition, const CostFunction& c, const Experiment& f,
                       const Experiment& g, std::vector<std::size_t> indices, double parameter,
                       const Tolerances& tol) {
  Check ch{condition, f};
  ch.other = g;
  ch.indices = std::move(indices);
  ch.parameter = parameter;
  const double cf = c.evaluate(f);
  ch.value = cost_gap(cf, c.evaluate(g));
  ch.threshold = tol.equality_bound(std::isinf(cf) ? 0.0 : cf);
  ch.status = judge(ch.value, ch.threshold);
  return ch;
}

// C(g) <= C(f) for a pair already known to satisfy f >= g.
Check global_check(const std::string& condition, const CostFunction& c, const Experiment& f,
                   const Experiment& g, const Tolerances& tol) {
  Check ch{condition, f};
  ch.other = g;
  const double cf = c.evaluate(f);
  ch.value = cost_increase(cf, c.evaluate(g));
  ch.threshold = tol.equality_bound(std::isinf(cf) ? 0.0 : cf);
  ch.status = judge(ch.value, ch.threshold);
  return ch;
}

std::optional<BoundedDirection> direction_of(const Check& ch) {
  if (ch.indices.size() != 2) return std::nullopt;
  if (ch.condition == "signal_replacement") {
    return signal_replacement(ch.point, ch.indices[0], ch.indices[1]);
  }
  if (ch.condition == "reverse_up") return reverse_up(ch.point, ch.indices[0], ch.indices[1]);
  if (ch.condition == "reverse_down") return reverse_down(ch.point, ch.indices[0], ch.indices[1]);
  return std::nullopt;
}

// Follows a violated local direction with halving steps until the cost
// increase exceeds the equality tolerance; returns the verified pair.
std::optional<Check> necessity_search(const CostFunction& c, const Check& failed, bool lehmann,
                                      const Tolerances& tol) {
  std::optional<BoundedDirection> d;
  try {
    d = direction_of(failed);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!d || d->max_step <= 0.0) return std::nullopt;
  const Experiment& f = failed.point;
  const double cf = c.evaluate(f);
  double eps = d->max_step;
  for (int k = 0; k < 40; ++k, eps *= 0.5) {
    Experiment g = step(f, d->direction, eps);
    const double rise = cost_increase(cf, c.evaluate(g));
    const double threshold = tol.equality_bound(std::isinf(cf) ? 0.0 : cf);
    if (!(rise > threshold)) continue;
    try {
      const bool ordered = lehmann ? lehmann_geq_mlrp(f, g, tol).dominates()
                                   : blackwell_dominates(f, g, tol);
      if (!ordered) continue;
    } catch (const Error&) {
      continue;
    }
    Check ch{lehmann ? "necessity_lehmann" : "necessity_blackwell", f};
    ch.other = g;
    ch.indices = failed.indices;
    ch.parameter = eps;
    ch.value = rise;
    ch.threshold = threshold;
    ch.status = CheckStatus::kFail;
    ch.note = "global counterexample along " + failed.condition;
    return ch;
  }
  return std::nullopt;
}

// Per-sample accumulation; merged in sample order.
struct SampleResult {
  std::map<std::string, ConditionSummary> summary;
  std::vector<Check> listed;
};

void record(SampleResult& r, const Check& ch) {
  ConditionSummary& s = r.summary[ch.condition];
  ++s.checked;
  switch (ch.status) {
    case CheckStatus::kPass: ++s.passed; break;
    case CheckStatus::kFail: ++s.failed; break;
    case CheckStatus::kSkipped: ++s.skipped; break;
    case CheckStatus::kWarning: ++s.warnings; break;
  }
  if (ch.status == CheckStatus::kPass || ch.status == CheckStatus::kFail) {
    const double excess = ch.value - ch.threshold;
    if (std::isfinite(excess) || excess > 0) s.worst_excess = std::max(s.worst_excess, excess);
  }
  if (ch.status == CheckStatus::kFail || ch.status == CheckStatus::kWarning) r.listed.push_back(ch);
}

void record_local(SampleResult& r, const CostFunction& c, const std::vector<Check>& checks,
                  bool lehmann, const AuditConfig& config) {
  for (const Check& ch : checks) {
    record(r, ch);
    if (ch.status == CheckStatus::kFail && config.necessity_search) {
      if (auto found = necessity_search(c, ch, lehmann, config.tol)) record(r, *found);
    }
  }
}

void record_error(SampleResult& r, const Experiment& f, const Error& e) {
  Check ch{"evaluation", f};
  ch.status = CheckStatus::kWarning;
  ch.value = kNaN;
  ch.threshold = kNaN;
  ch.note = e.what();
  record(r, ch);
}

std::size_t pick(Rng& rng, std::optional<std::size_t> fixed, std::size_t max) {
  if (fixed) return *fixed;
  return 2 + rng.index(std::max<std::size_t>(max, 2) - 1);
}

SampleResult blackwell_sample(const CostFunction& c, const AuditConfig& config, std::size_t s) {
  SampleResult r;
  Rng rng = Rng::for_item(config.seed, s);
  const std::size_t n = pick(rng, c.required_states(), config.max_states);
  const std::size_t m = pick(rng, c.required_signals(), config.max_signals);
  const Experiment f = sample_experiment(rng, n, m);
  try {
    record_local(r, c, check_signal_replacement(c, f, config.tol), false, config);
    for (const Check& ch : check_permutation_invariance(c, f, 3, rng, config.tol)) record(r, ch);
    for (const Check& ch : check_split_invariance(c, f, 2, rng, config.tol)) record(r, ch);
    const std::size_t m2 = pick(rng, c.required_signals(), config.max_signals);
    const Experiment g = garble(f, sample_stochastic(rng, m, m2));
    bool ordered = false;
    try {
      ordered = blackwell_dominates(f, g, config.tol);
    } catch (const Error& e) {
      record(r, skipped("global_blackwell", f, {}, e.what()));
      return r;
    }
    if (ordered) {
      record(r, global_check("global_blackwell", c, f, g, config.tol));
    } else {
      record(r, skipped("global_blackwell", f, {}, "generated pair failed verification"));
    }
  } catch (const Error& e) {
    record_error(r, f, e);
  }
  return r;
}

// Random chain of active reverse moves, splits and adjacent merges; each
// keeps MLRP and weakly lowers Lehmann informativeness.
Experiment lehmann_descendant(Rng& rng, const Experiment& f, bool fixed_signals,
                              std::size_t max_signals) {
  Experiment g = f;
  const int ops = 1 + static_cast<int>(rng.index(4));
  for (int op = 0, attempts = 0; op < ops && attempts < 50; ++attempts) {
    const std::size_t n = g.states(), m = g.signals();
    const double u = rng.uniform();
    if (!fixed_signals && u < 0.2 && m < max_signals + 2) {
      g = split_signal(g, rng.index(m), rng.uniform());
      ++op;
      continue;
    }
    if (!fixed_signals && u < 0.35 && m > 2) {
      const std::size_t j = rng.index(m - 1);
      g = merge_signals(g, j, j + 1);
      ++op;
      continue;
    }
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
    ++op;
  }
  return g;
}

SampleResult lehmann_sample(const CostFunction& c, const AuditConfig& config, std::size_t s) {
  SampleResult r;
  Rng rng = Rng::for_item(config.seed, s);
  const std::size_t n = pick(rng, c.required_states(), config.max_states);
  const std::size_t m = pick(rng, c.required_signals(), config.max_signals);
  const Experiment f = sample_mlrp_experiment(rng, n, m);
  try {
    record_local(r, c, check_reverse_signal_replacement(c, f, config.tol), true, config);
    for (const Check& ch : check_split_invariance(c, f, 2, rng, config.tol)) record(r, ch);
    const Experiment g =
        lehmann_descendant(rng, f, c.required_signals().has_value(), config.max_signals);
    bool ordered = false;
    try {
      ordered = is_mlrp(g) && lehmann_geq_mlrp(f, g, config.tol).dominates();
    } catch (const Error& e) {
      record(r, skipped("global_lehmann", f, {}, e.what()));
      return r;
    }
    if (ordered) {
      record(r, global_check("global_lehmann", c, f, g, config.tol));
    } else {
      record(r, skipped("global_lehmann", f, {}, "generated pair failed verification"));
    }
  } catch (const Error& e) {
    record_error(r, f, e);
  }
  return r;
}

template <typename Fn>
std::vector<SampleResult> run_samples(std::size_t count, std::size_t workers, Fn&& fn) {
  std::vector<SampleResult> results(count);
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t s = 0; s < count; ++s) results[s] = fn(s);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t s = next++; s < count; s = next++) results[s] = fn(s);
    });
  }
  for (auto& t : pool) t.join();
  return results;
}

AuditReport assemble(const std::string& cost_id, const std::string& order, std::uint64_t seed,
                     std::size_t budget, std::size_t max_listed,
                     const std::vector<SampleResult>& results) {
  AuditReport report;
  report.cost_id = cost_id;
  report.order = order;
  report.seed = seed;
  report.budget = budget;
  bool failed = false, warned = false;
  for (const SampleResult& r : results) {
    for (const auto& [name, s] : r.summary) {
      ConditionSummary& t = report.summary[name];
      t.checked += s.checked;
      t.passed += s.passed;
      t.failed += s.failed;
      t.skipped += s.skipped;
      t.warnings += s.warnings;
      t.worst_excess = std::max(t.worst_excess, s.worst_excess);
      failed = failed || s.failed > 0;
      warned = warned || s.warnings > 0;
    }
    for (const Check& ch : r.listed) {
      if (report.checks.size() < max_listed) {
        report.checks.push_back(ch);
      } else {
        ++report.unlisted;
      }
    }
  }
  report.verdict = failed   ? Verdict::kCounterexample
                   : warned ? Verdict::kNumericalWarning
                            : Verdict::kConsistent;
  return report;
}

}  // namespace

DirectionalDerivative directional_derivative(const CostFunction& c, const Experiment& f,
                                             const BoundedDirection& d) {
  if (!(d.max_step > 0.0)) {
    throw Error(ErrorCode::kDirectionInfeasible, "no admissible step along this direction");
  }
  const Matrix& delta = d.direction.delta;
  if (delta.rows() != f.states() || delta.cols() != f.signals()) {
    throw Error(ErrorCode::kDimensionMismatch, "direction shape differs from the experiment");
  }
  if (std::optional<Matrix> g = c.gradient(f)) {
    double sum = 0.0, scale = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < delta.rows(); ++i)
      for (std::size_t j = 0; j < delta.cols(); ++j) {
        if (delta(i, j) == 0.0) continue;
        const double term = (*g)(i, j) * delta(i, j);
        finite = finite && std::isfinite(term);
        sum += term;
        scale += std::abs(term);
      }
    if (finite) return {sum, 64 * kEps * scale, "analytic"};
  }
  const double c0 = c.evaluate(f);
  if (!std::isfinite(c0)) return {kNaN, kNaN, "richardson"};
  double q[3];
  const double factors[3] = {1e-4, 1e-5, 1e-6};
  for (int k = 0; k < 3; ++k) {
    const double h = factors[k] * d.max_step;
    q[k] = (c.evaluate(step(f, d.direction, h)) - c0) / h;
    if (!std::isfinite(q[k])) return {q[k], 0.0, "richardson"};
  }
  const double r12 = (10.0 * q[1] - q[0]) / 9.0;
  const double r23 = (10.0 * q[2] - q[1]) / 9.0;
  const double roundoff = 4.0 * kEps * std::max(1.0, std::abs(c0)) / (factors[2] * d.max_step);
  return {r23, std::abs(r23 - r12) + roundoff, "richardson"};
}

GradientEstimate estimate_gradient(const CostFunction& c, const Experiment& f, double step_size) {
  GradientEstimate est;
  if (std::optional<Matrix> g = c.gradient(f)) {
    bool finite = true;
    for (double v : g->data()) finite = finite && std::isfinite(v);
    if (finite) {
      est.matrix = *g;
      est.method = "analytic";
      return est;
    }
  }
  est.method = "central_difference";
  est.step = step_size;
  est.matrix = Matrix(f.states(), f.signals());
  auto derivative = [&](std::size_t i, std::size_t j, double h) {
    // Along e_ij - e_i0, central where both entries allow it.
    const double up = std::min(h, f(i, 0));
    const double down = std::min(h, f(i, j));
    auto at = [&](double t) {
      Matrix m = f.matrix();
      m(i, j) += t;
      m(i, 0) -= t;
      return c.evaluate(make_derived(m));
    };
    if (up > 0 && down > 0) return (at(up) - at(-down)) / (up + down);
    if (up > 0) return (at(up) - c.evaluate(f)) / up;
    if (down > 0) return (c.evaluate(f) - at(-down)) / down;
    return kNaN;
  };
  for (std::size_t i = 0; i < f.states(); ++i)
    for (std::size_t j = 1; j < f.signals(); ++j) {
      const double full = derivative(i, j, step_size);
      const double half = derivative(i, j, step_size / 2);
      est.matrix(i, j) = half;
      est.error_bound = std::max(est.error_bound, std::abs(full - half));
    }
  return est;
}

const char* check_status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kSkipped: return "skipped";
    case CheckStatus::kWarning: return "warning";
  }
  return "unknown";
}

CheckStatus parse_check_status(const std::string& name) {
  for (CheckStatus s : {CheckStatus::kPass, CheckStatus::kFail, CheckStatus::kSkipped,
                        CheckStatus::kWarning}) {
    if (name == check_status_name(s)) return s;
  }
  throw Error(ErrorCode::kParseError, "unknown check status '" + name + "'");
}

std::vector<Check> check_signal_replacement(const CostFunction& c, const Experiment& f,
                                            const Tolerances& tol) {
  std::vector<Check> out;
  for (std::size_t j = 0; j < f.signals(); ++j)
    for (std::size_t k = 0; k < f.signals(); ++k) {
      if (j == k) continue;
      out.push_back(local_check("signal_replacement", c, f, signal_replacement(f, j, k), {j, k}, tol));
    }
  return out;
}

std::vector<Check> check_reverse_signal_replacement(const CostFunction& c, const Experiment& f,
                                                    const Tolerances& tol) {
  if (!is_mlrp(f)) throw Error(ErrorCode::kMlrpViolated, "reverse replacement checks need MLRP");
  std::vector<Check> out;
  const std::size_t n = f.states(), m = f.signals();
  for (std::size_t j = 0; j + 1 < m; ++j)
    for (std::size_t l = 0; l < n; ++l) {
      if (reverse_up_margin(f, j, l) > kMlrpSlack) {
        out.push_back(local_check("reverse_up", c, f, reverse_up(f, j, l), {j, l}, tol));
      } else {
        out.push_back(skipped("reverse_up", f, {j, l}, "inactive"));
      }
    }
  for (std::size_t j = 1; j < m; ++j)
    for (std::size_t l = 0; l < n; ++l) {
      if (reverse_down_margin(f, j, l) > kMlrpSlack) {
        out.push_back(local_check("reverse_down", c, f, reverse_down(f, j, l), {j, l}, tol));
      } else {
        out.push_back(skipped("reverse_down", f, {j, l}, "inactive"));
      }
    }
  return out;
}

std::vector<Check> check_permutation_invariance(const CostFunction& c, const Experiment& f,
                                                std::size_t trials, Rng& rng,
                                                const Tolerances& tol) {
  const std::size_t m = f.signals();
  std::vector<std::vector<std::size_t>> perms;
  if (m <= 5) {
    std::vector<std::size_t> p(m);
    std::iota(p.begin(), p.end(), 0);
    while (std::next_permutation(p.begin(), p.end())) perms.push_back(p);
  } else {
    for (std::size_t t = 0; t < trials; ++t) perms.push_back(sample_permutation(rng, m));
  }
  std::vector<Check> out;
  for (const auto& p : perms) {
    out.push_back(invariance_check("permutation_invariance", c, f, permute(f, p), p, 0.0, tol));
  }
  return out;
}

std::vector<Check> check_split_invariance(const CostFunction& c, const Experiment& f,
                                          std::size_t trials, Rng& rng, const Tolerances& tol) {
  if (c.required_signals()) {
    return {skipped("split_invariance", f, {}, "cost is defined for a fixed signal count")};
  }
  std::vector<std::pair<std::size_t, double>> cases;
  cases.emplace_back(rng.index(f.signals()), 0.0);
  cases.emplace_back(rng.index(f.signals()), 1.0);
  for (std::size_t t = 0; t < trials; ++t) cases.emplace_back(rng.index(f.signals()), rng.uniform());
  std::vector<Check> out;
  for (const auto& [j, lambda] : cases) {
    out.push_back(invariance_check("split_invariance", c, f, split_signal(f, j, lambda), {j},
                                   lambda, tol));
  }
  return out;
}

namespace {

Experiment mix(const Experiment& f, const Experiment& g, double w) {
  if (f.states() != g.states() || f.signals() != g.signals()) {
    throw Error(ErrorCode::kDimensionMismatch, "mixtures need experiments of the same shape");
  }
  return make_derived((1.0 - w) * f.matrix() + w * g.matrix());
}

Check quasi_check(const std::string& condition, const CostFunction& c, const Experiment& a,
                  const Experiment& b, double w, const Tolerances& tol) {
  Check ch{condition, a};
  ch.other = b;
  ch.parameter = w;
  const double top = std::max(c.evaluate(a), c.evaluate(b));
  ch.value = cost_increase(top, c.evaluate(mix(a, b, w)));
  ch.threshold = tol.equality_bound(std::isinf(top) ? 0.0 : top);
  ch.status = judge(ch.value, ch.threshold);
  return ch;
}

}  // namespace

std::vector<Check> check_quasiconvexity(const CostFunction& c, const Experiment& f,
                                        const Experiment& g, const std::vector<double>& weights,
                                        const Tolerances& tol) {
  std::vector<Check> out;
  for (double w : weights) out.push_back(quasi_check("quasiconvexity", c, f, g, w, tol));
  return out;
}

std::vector<Check> check_garbling_quasiconvexity(const CostFunction& c, const Experiment& f,
                                                 const Matrix& m1, const Matrix& m2,
                                                 const std::vector<double>& weights,
                                                 const Tolerances& tol) {
  const Experiment g1 = garble(f, m1);
  const Experiment g2 = garble(f, m2);
  std::vector<Check> out;
  for (double w : weights) out.push_back(quasi_check("garbling_quasiconvexity", c, g1, g2, w, tol));
  return out;
}

std::vector<Check> quasiconvexity_sweep(const CostFunction& c, std::size_t trials, Rng& rng,
                                        std::size_t n, std::size_t m, bool garbling,
                                        const Tolerances& tol) {
  const std::vector<double> weights = {0.25, 0.5, 0.75};
  std::vector<Check> out;
  for (std::size_t t = 0; t < trials; ++t) {
    const Experiment f = sample_experiment(rng, n, m);
    std::vector<Check> part;
    if (garbling) {
      const std::size_t m2 = c.required_signals().value_or(m);
      part = check_garbling_quasiconvexity(c, f, sample_stochastic(rng, m, m2),
                                           sample_stochastic(rng, m, m2), weights, tol);
    } else {
      part = check_quasiconvexity(c, f, sample_experiment(rng, n, m), weights, tol);
    }
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

namespace {

struct BinaryPartials {
  std::size_t high = 1;
  double f1 = 0.0, f2 = 0.0, d1 = 0.0, d2 = 0.0, error = 0.0;
  std::string method;
};

BinaryPartials binary_partials(const CostFunction& c, const Experiment& f) {
  if (f.signals() != 2) throw Error(ErrorCode::kNotBinary, "slope checks need two signals");
  if (f.states() != 2) throw Error(ErrorCode::kDimensionMismatch, "slope checks need two states");
  BinaryPartials p;
  p.high = f(0, 1) <= f(1, 1) ? 1 : 0;
  const std::size_t low = 1 - p.high;
  p.f1 = f(0, p.high);
  p.f2 = f(1, p.high);
  const GradientEstimate g = estimate_gradient(c, f);
  p.d1 = g.matrix(0, p.high) - g.matrix(0, low);
  p.d2 = g.matrix(1, p.high) - g.matrix(1, low);
  p.error = g.error_bound;
  p.method = g.method;
  return p;
}

Check binary_cone(const BinaryPartials& p, const Experiment& f, const std::string& condition,
                  const Tolerances& tol) {
  Check ch{condition, f};
  ch.indices = {p.high};
  const double toward_one = p.d1 * (1.0 - p.f1) + p.d2 * (1.0 - p.f2);
  const double toward_zero = -(p.d1 * p.f1 + p.d2 * p.f2);
  ch.value = std::max(toward_one, toward_zero);
  ch.threshold = tol.audit + 2.0 * p.error;
  ch.status = judge(ch.value, ch.threshold);
  ch.note = "cross-multiplied form (" + p.method + ")";
  return ch;
}

}  // namespace

Check binary_mrit_check(const CostFunction& c, const Experiment& f, const Tolerances& tol) {
  const BinaryPartials p = binary_partials(c, f);
  if (!(p.d2 > tol.audit)) return binary_cone(p, f, "mrit", tol);
  Check ch{"mrit", f};
  ch.indices = {p.high};
  const double mrit = -p.d1 / p.d2;
  const double upper = ratio(p.f2, p.f1);
  const double lower = ratio(1.0 - p.f2, 1.0 - p.f1);
  ch.value = std::max(mrit - upper, lower - mrit);
  ch.parameter = mrit;
  ch.threshold = tol.audit + 2.0 * p.error / p.d2;
  ch.status = judge(ch.value, ch.threshold);
  ch.note = "ratio form (" + p.method + ")";
  return ch;
}

Check binary_cone_check(const CostFunction& c, const Experiment& f, const Tolerances& tol) {
  return binary_cone(binary_partials(c, f), f, "cone", tol);
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kConsistent: return "consistent-with-monotone";
    case Verdict::kCounterexample: return "counterexample";
    case Verdict::kNumericalWarning: return "numerical-warning";
  }
  return "unknown";
}

Verdict parse_verdict(const std::string& name) {
  for (Verdict v : {Verdict::kConsistent, Verdict::kCounterexample, Verdict::kNumericalWarning}) {
    if (name == verdict_name(v)) return v;
  }
  throw Error(ErrorCode::kParseError, "unknown verdict '" + name + "'");
}

int verdict_exit_code(Verdict v) {
  switch (v) {
    case Verdict::kConsistent: return 0;
    case Verdict::kCounterexample: return 2;
    case Verdict::kNumericalWarning: return 3;
  }
  return 3;
}

AuditReport audit_blackwell(const CostFunction& c, const AuditConfig& config) {
  const std::size_t workers = c.reentrant() ? config.workers : 1;
  auto results = run_samples(config.budget, workers,
                             [&](std::size_t s) { return blackwell_sample(c, config, s); });
  return assemble(c.id(), "blackwell", config.seed, config.budget, config.max_listed, results);
}

AuditReport audit_lehmann(const CostFunction& c, const AuditConfig& config) {
  const std::size_t workers = c.reentrant() ? config.workers : 1;
  auto results = run_samples(config.budget, workers,
                             [&](std::size_t s) { return lehmann_sample(c, config, s); });
  return assemble(c.id(), "lehmann", config.seed, config.budget, config.max_listed, results);
}

AuditReport audit_binary_grid(const CostFunction& c, std::size_t resolution,
                              const Tolerances& tol, std::size_t max_listed) {
  AuditConfig config;
  config.tol = tol;
  SampleResult all;
  std::size_t points = 0;
  const double denom = static_cast<double>(resolution + 1);
  for (std::size_t a = 1; a <= resolution; ++a)
    for (std::size_t b = a; b <= resolution; ++b) {
      const Experiment f = binary_experiment({a / denom, b / denom});
      ++points;
      try {
        record_local(all, c, check_signal_replacement(c, f, tol), false, config);
        record(all, binary_mrit_check(c, f, tol));
      } catch (const Error& e) {
        record_error(all, f, e);
      }
    }
  return assemble(c.id(), "binary_grid", 0, points, max_listed, {all});
}

}  // namespace infomono
