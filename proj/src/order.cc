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

#include "infomono/order.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>

#include "infomono/errors.h"
#include "infomono/simplex.h"

namespace infomono {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void require_same_states(const Experiment& f, const Experiment& g) {
  if (f.states() != g.states()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "experiments have " + std::to_string(f.states()) + " and " +
                    std::to_string(g.states()) + " states");
  }
}

void require_binary(const Experiment& f) {
  if (f.signals() != 2) {
    throw Error(ErrorCode::kNotBinary,
                "expected two signals, got " + std::to_string(f.signals()));
  }
}

void require_mlrp(const Experiment& f, const char* which) {
  if (!check_mlrp(f).holds) {
    throw Error(ErrorCode::kMlrpViolated, std::string(which) + " does not satisfy MLRP");
  }
}

enum class Feasibility { kFeasible, kGray, kInfeasible };

Feasibility classify(double residual, const Tolerances& tol) {
  if (residual <= tol.lp) return Feasibility::kFeasible;
  if (residual <= 100.0 * tol.lp) return Feasibility::kGray;
  return Feasibility::kInfeasible;
}

Relation combine(bool forward, bool backward) {
  if (forward && backward) return Relation::kEquivalent;
  if (forward) return Relation::kGeq;
  if (backward) return Relation::kLeq;
  return Relation::kIncomparable;
}

double garbling_residual(const Experiment& f, const Matrix& kernel, const Experiment& g) {
  return max_abs_diff(f.matrix() * kernel, g.matrix());
}

// a >= b up to tol, with +inf handled exactly.
bool ge_tol(double a, double b, double tol) {
  if (std::isinf(b)) return std::isinf(a);
  if (std::isinf(a)) return true;
  return a >= b - tol * (1.0 + std::abs(b));
}

// First index where the two-signal Lehmann ratio chains fail, or -1.
long binary_lehmann_violation(const std::vector<double>& f, const std::vector<double>& g,
                              double tol) {
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    const bool low_ok = ge_tol(ratio(g[i], f[i]), ratio(g[i + 1], f[i + 1]), tol);
    const bool high_ok =
        ge_tol(ratio(1.0 - g[i + 1], 1.0 - f[i + 1]), ratio(1.0 - g[i], 1.0 - f[i]), tol);
    if (!low_ok || !high_ok) return static_cast<long>(i);
  }
  return -1;
}

// Piecewise-linear CDF inverse: inf {x in [0, m] : F~(x) >= u}.
double inverse_cdf(const Matrix& f, std::size_t i, double u) {
  if (u <= 0.0) return 0.0;
  double cum = 0.0;
  for (std::size_t k = 0; k < f.cols(); ++k) {
    const double p = f(i, k);
    if (p > 0.0 && cum + p >= u) return static_cast<double>(k) + (u - cum) / p;
    cum += p;
  }
  return static_cast<double>(f.cols());
}

double cdf(const Matrix& g, std::size_t i, double y) {
  const std::size_t m = g.cols();
  if (y <= 0.0) return 0.0;
  if (y >= static_cast<double>(m)) return 1.0;
  const std::size_t k = static_cast<std::size_t>(std::floor(y));
  double cum = 0.0;
  for (std::size_t s = 0; s < k; ++s) cum += g(i, s);
  return cum + (y - static_cast<double>(k)) * g(i, k);
}

}  // namespace

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::kGeq: return "geq";
    case Relation::kLeq: return "leq";
    case Relation::kEquivalent: return "equivalent";
    case Relation::kIncomparable: return "incomparable";
  }
  return "unknown";
}

Relation parse_relation(const std::string& name) {
  for (Relation r : {Relation::kGeq, Relation::kLeq, Relation::kEquivalent,
                     Relation::kIncomparable}) {
    if (name == relation_name(r)) return r;
  }
  throw Error(ErrorCode::kParseError, "unknown relation '" + name + "'");
}

GarblingFit fit_garbling(const Experiment& f, const Experiment& g, const Tolerances& tol) {
  require_same_states(f, g);
  const std::size_t n = f.states();
  const std::size_t m = f.signals();
  const std::size_t m2 = g.signals();
  Matrix a(n * m2 + m, m * m2);
  std::vector<double> b(n * m2 + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < m2; ++k) {
      const std::size_t row = i * m2 + k;
      for (std::size_t j = 0; j < m; ++j) a(row, j * m2 + k) = f(i, j);
      b[row] = g(i, k);
    }
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < m2; ++k) a(n * m2 + j, j * m2 + k) = 1.0;
    b[n * m2 + j] = 1.0;
  }
  PhaseOneResult lp = phase_one(a, b, kPivotTolerance);

  GarblingFit fit;
  Matrix raw(m, m2);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m2; ++k) raw(j, k) = lp.x[j * m2 + k];
  double violation = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    double s = -b[r];
    for (std::size_t c = 0; c < a.cols(); ++c) s += a(r, c) * lp.x[c];
    violation = std::max(violation, std::abs(s));
  }
  fit.kernel = raw;
  for (std::size_t j = 0; j < m; ++j) {
    double sum = 0.0;
    for (std::size_t k = 0; k < m2; ++k) sum += raw(j, k);
    for (std::size_t k = 0; k < m2; ++k) {
      fit.kernel(j, k) = sum > 0.0 ? raw(j, k) / sum : 1.0 / static_cast<double>(m2);
    }
  }
  fit.residual = std::max(violation, garbling_residual(f, fit.kernel, g));
  fit.feasible = fit.residual <= tol.lp;
  if (!fit.feasible) fit.certificate = lp.farkas;
  return fit;
}

OrderVerdict blackwell_geq(const Experiment& f, const Experiment& g, const Tolerances& tol) {
  require_same_states(f, g);
  GarblingFit fwd = fit_garbling(f, g, tol);
  GarblingFit bwd = fit_garbling(g, f, tol);
  const Feasibility cf = classify(fwd.residual, tol);
  const Feasibility cb = classify(bwd.residual, tol);
  if (cf == Feasibility::kGray || cb == Feasibility::kGray) {
    throw Error(ErrorCode::kNumericallyIllConditioned,
                "garbling residuals " + fmt(fwd.residual) + " / " + fmt(bwd.residual) +
                    " fall between the feasibility tolerance and 100 times it");
  }
  OrderVerdict v;
  v.relation = combine(cf == Feasibility::kFeasible, cb == Feasibility::kFeasible);
  if (cf == Feasibility::kFeasible) v.witness_forward = fwd.kernel;
  if (cb == Feasibility::kFeasible) v.witness_backward = bwd.kernel;
  if (cf != Feasibility::kFeasible) {
    double bt = 0.0;
    for (std::size_t i = 0; i < g.states(); ++i)
      for (std::size_t k = 0; k < g.signals(); ++k)
        bt += fwd.certificate[i * g.signals() + k] * g(i, k);
    for (std::size_t j = 0; j < f.signals(); ++j) bt += fwd.certificate[g.states() * g.signals() + j];
    v.refutation = "no kernel maps the first experiment to the second: minimum residual " +
                   fmt(fwd.residual) + ", Farkas multipliers give b'y = " + fmt(bt) + " > 0";
  }
  return v;
}

bool blackwell_dominates(const Experiment& f, const Experiment& g, const Tolerances& tol) {
  const GarblingFit fit = fit_garbling(f, g, tol);
  if (classify(fit.residual, tol) == Feasibility::kGray) {
    throw Error(ErrorCode::kNumericallyIllConditioned,
                "garbling residual " + fmt(fit.residual) +
                    " falls between the feasibility tolerance and 100 times it");
  }
  return fit.feasible;
}

ParallelogramFit fit_parallelogram(const Experiment& f, const Experiment& g) {
  require_binary(f);
  require_binary(g);
  require_same_states(f, g);
  const std::vector<double> h = f.column(1);
  const std::vector<double> y = g.column(1);
  double shh = 0, sh1 = 0, s11 = 0, rh = 0, r1 = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    shh += h[i] * h[i];
    sh1 += h[i] * (1 - h[i]);
    s11 += (1 - h[i]) * (1 - h[i]);
    rh += h[i] * y[i];
    r1 += (1 - h[i]) * y[i];
  }
  auto sq_error = [&](double a, double b) {
    double e = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      const double d = a * h[i] + b * (1 - h[i]) - y[i];
      e += d * d;
    }
    return e;
  };
  auto clamp01 = [](double v) { return std::min(1.0, std::max(0.0, v)); };
  std::vector<std::array<double, 2>> candidates;
  const double det = shh * s11 - sh1 * sh1;
  if (det > 1e-14 * (shh * s11 + 1e-300)) {
    const double a = (rh * s11 - r1 * sh1) / det;
    const double b = (r1 * shh - rh * sh1) / det;
    if (a >= 0 && a <= 1 && b >= 0 && b <= 1) candidates.push_back({a, b});
  }
  for (double a : {0.0, 1.0}) {
    candidates.push_back({a, s11 > 0 ? clamp01((r1 - a * sh1) / s11) : 0.0});
  }
  for (double b : {0.0, 1.0}) {
    candidates.push_back({shh > 0 ? clamp01((rh - b * sh1) / shh) : 0.0, b});
  }
  ParallelogramFit best;
  double best_err = kInf;
  for (const auto& c : candidates) {
    const double e = sq_error(c[0], c[1]);
    if (e < best_err) {
      best_err = e;
      best.a = c[0];
      best.b = c[1];
    }
  }
  for (std::size_t i = 0; i < h.size(); ++i) {
    best.residual =
        std::max(best.residual, std::abs(best.a * h[i] + best.b * (1 - h[i]) - y[i]));
  }
  return best;
}

OrderVerdict blackwell_geq_binary(const Experiment& f, const Experiment& g,
                                  const Tolerances& tol) {
  ParallelogramFit fwd = fit_parallelogram(f, g);
  ParallelogramFit bwd = fit_parallelogram(g, f);
  const Feasibility cf = classify(fwd.residual, tol);
  const Feasibility cb = classify(bwd.residual, tol);
  if (cf == Feasibility::kGray || cb == Feasibility::kGray) {
    throw Error(ErrorCode::kNumericallyIllConditioned,
                "parallelogram residuals " + fmt(fwd.residual) + " / " + fmt(bwd.residual) +
                    " fall between the feasibility tolerance and 100 times it");
  }
  auto kernel = [](const ParallelogramFit& p) {
    return Matrix{{1.0 - p.b, p.b}, {1.0 - p.a, p.a}};
  };
  OrderVerdict v;
  v.relation = combine(cf == Feasibility::kFeasible, cb == Feasibility::kFeasible);
  if (cf == Feasibility::kFeasible) v.witness_forward = kernel(fwd);
  if (cb == Feasibility::kFeasible) v.witness_backward = kernel(bwd);
  if (cf != Feasibility::kFeasible) {
    v.refutation = "second experiment lies outside the parallelogram hull of the first "
                   "(closest a = " + fmt(fwd.a) + ", b = " + fmt(fwd.b) +
                   ", residual " + fmt(fwd.residual) + ")";
  }
  return v;
}

AlphaBeta binary_alpha_beta(const Experiment& f) {
  require_binary(f);
  if (f.states() != 2) throw Error(ErrorCode::kDimensionMismatch, "expected two states");
  const double f1 = f(0, 1);
  const double f2 = f(1, 1);
  if (f1 > f2) {
    throw Error(ErrorCode::kNotNormalized, "high-signal probabilities must satisfy f1 <= f2");
  }
  return AlphaBeta{ratio(f2, f1), ratio(1.0 - f1, 1.0 - f2)};
}

Experiment binary_from_alpha_beta(double alpha, double beta) {
  if (!(alpha >= 1.0 && beta >= 1.0 && alpha * beta > 1.0) || std::isinf(alpha) ||
      std::isinf(beta)) {
    throw Error(ErrorCode::kInvalidParameter, "need finite alpha, beta >= 1 with alpha*beta > 1");
  }
  const double f1 = (beta - 1.0) / (alpha * beta - 1.0);
  return binary_experiment({f1, alpha * f1});
}

OrderVerdict lehmann_geq_binary(const Experiment& f, const Experiment& g, const Tolerances& tol) {
  require_binary(f);
  require_binary(g);
  require_same_states(f, g);
  require_mlrp(f, "first experiment");
  require_mlrp(g, "second experiment");
  const std::vector<double> fh = f.column(1);
  const std::vector<double> gh = g.column(1);
  const long fwd = binary_lehmann_violation(fh, gh, tol.order);
  const long bwd = binary_lehmann_violation(gh, fh, tol.order);
  OrderVerdict v;
  v.relation = combine(fwd < 0, bwd < 0);
  if (fwd >= 0) {
    v.refutation = "likelihood-ratio chain fails between states " + std::to_string(fwd) +
                   " and " + std::to_string(fwd + 1);
  }
  return v;
}

bool PpCurve::is_convex(double tol) const {
  std::array<double, 2> prev{0.0, 0.0};
  bool have_prev = false;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    const std::array<double, 2> d{points[k + 1][0] - points[k][0],
                                  points[k + 1][1] - points[k][1]};
    if (std::abs(d[0]) <= 1e-15 && std::abs(d[1]) <= 1e-15) continue;
    if (have_prev && prev[0] * d[1] - prev[1] * d[0] < -tol) return false;
    prev = d;
    have_prev = true;
  }
  return true;
}

double PpCurve::lower_boundary(double x) const {
  // First vertex after the origin with abscissa >= x.
  const auto it = std::lower_bound(points.begin() + 1, points.end(), x,
                                   [](const std::array<double, 2>& p, double v) { return p[0] < v; });
  if (it == points.end()) return points.back()[1];
  const auto& p = *(it - 1);
  const auto& q = *it;
  if (x <= p[0] || q[0] - p[0] <= 0.0) return p[1];
  return p[1] + (x - p[0]) / (q[0] - p[0]) * (q[1] - p[1]);
}

PpCurve pp_curve(const Experiment& f, std::size_t i) {
  if (i + 1 >= f.states()) {
    throw Error(ErrorCode::kIndexOutOfRange, "state pair " + std::to_string(i) + " out of range");
  }
  return pp_curve(f, i, i + 1);
}

PpCurve pp_curve(const Experiment& f, std::size_t i, std::size_t i2) {
  if (i >= f.states() || i2 >= f.states()) {
    throw Error(ErrorCode::kIndexOutOfRange, "state index out of range");
  }
  PpCurve c;
  c.state = i;
  c.state2 = i2;
  c.points.push_back({0.0, 0.0});
  double x = 0.0, y = 0.0;
  for (std::size_t j = 0; j < f.signals(); ++j) {
    x += f(i, j);
    y += f(i2, j);
    c.points.push_back({x, y});
  }
  return c;
}

double pp_shortfall(const Experiment& f, const Experiment& g, std::size_t i, std::size_t i2) {
  const PpCurve cf = pp_curve(f, i, i2);
  const PpCurve cg = pp_curve(g, i, i2);
  const auto& pts = cf.points;
  const auto segment_distance = [&](std::size_t k, const std::array<double, 2>& v) {
    const auto& p = pts[k];
    const auto& q = pts[k + 1];
    const double dx = q[0] - p[0];
    const double dy = q[1] - p[1];
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((v[0] - p[0]) * dx + (v[1] - p[1]) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(v[0] - p[0] - t * dx, v[1] - p[1] - t * dy);
  };
  double worst = -kInf;
  for (const auto& v : cg.points) {
    // Euclidean distance to f's curve, positive when v lies below it. Short
    // segments only affect nearby points, unlike their supporting lines.
    // Both coordinates are nondecreasing along the curve, so the distance to
    // segments further left is at least max(v - upper corner) and further
    // right at least max(lower corner - v); the scans stop once those bounds
    // reach the best distance so far.
    const auto start = std::lower_bound(pts.begin() + 1, pts.end(), v[0] + v[1],
                                        [](const std::array<double, 2>& p, double s) {
                                          return p[0] + p[1] < s;
                                        });
    const std::size_t mid = std::min<std::size_t>(start - pts.begin(), pts.size() - 1) - 1;
    double dist = segment_distance(mid, v);
    for (std::size_t k = mid; k-- > 0;) {
      if (std::max(v[0] - pts[k + 1][0], v[1] - pts[k + 1][1]) >= dist) break;
      dist = std::min(dist, segment_distance(k, v));
    }
    for (std::size_t k = mid + 1; k + 1 < pts.size(); ++k) {
      if (std::max(pts[k][0] - v[0], pts[k][1] - v[1]) >= dist) break;
      dist = std::min(dist, segment_distance(k, v));
    }
    const bool below = v[1] < cf.lower_boundary(v[0]);
    worst = std::max(worst, below ? dist : -dist);
  }
  return worst;
}

OrderVerdict lehmann_geq_mlrp(const Experiment& f, const Experiment& g, const Tolerances& tol,
                              const LehmannOptions& options) {
  if (f.states() != g.states()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "Lehmann comparisons need experiments over the same states");
  }
  require_mlrp(f, "first experiment");
  require_mlrp(g, "second experiment");
  bool fwd = true, bwd = true;
  std::optional<std::string> refutation;
  for (std::size_t i = 0; i + 1 < f.states(); ++i) {
    const double sf = pp_shortfall(f, g, i, i + 1);
    const double sb = pp_shortfall(g, f, i, i + 1);
    if (sf > tol.order && fwd) {
      refutation = "states (" + std::to_string(i) + "," + std::to_string(i + 1) +
                   "): PP curve of the second experiment dips " + fmt(sf) +
                   " below that of the first";
    }
    fwd = fwd && sf <= tol.order;
    bwd = bwd && sb <= tol.order;
  }
  if (options.verify_all_pairs) {
    bool all_fwd = true, all_bwd = true;
    for (std::size_t i = 0; i < f.states(); ++i)
      for (std::size_t i2 = i + 1; i2 < f.states(); ++i2) {
        all_fwd = all_fwd && pp_shortfall(f, g, i, i2) <= tol.order;
        all_bwd = all_bwd && pp_shortfall(g, f, i, i2) <= tol.order;
      }
    if (all_fwd != fwd || all_bwd != bwd) {
      std::cerr << "lehmann_geq_mlrp: all-pairs containment differs from adjacent pairs\n";
    }
  }
  OrderVerdict v;
  v.relation = combine(fwd, bwd);
  if (!fwd) v.refutation = refutation;
  return v;
}

double quantile_transform(const Experiment& f, const Experiment& g, std::size_t i, double y) {
  return inverse_cdf(f.matrix(), i, cdf(g.matrix(), i, y));
}

bool lehmann_oracle_quantile(const Experiment& f, const Experiment& g, std::size_t grid,
                             const Tolerances& tol) {
  require_same_states(f, g);
  require_mlrp(f, "first experiment");
  require_mlrp(g, "second experiment");
  const double m2 = static_cast<double>(g.signals());
  std::vector<double> ys;
  ys.reserve(grid + 1 + g.signals() * (f.signals() + 1) * f.states());
  for (std::size_t s = 0; s <= grid; ++s) ys.push_back(m2 * static_cast<double>(s) / grid);
  // Breakpoints of every transform: integer y, and y where G~(y|i) crosses a
  // cumulative level of F(.|i).
  for (std::size_t k = 0; k <= g.signals(); ++k) ys.push_back(static_cast<double>(k));
  for (std::size_t i = 0; i < f.states(); ++i) {
    double gcum = 0.0;
    for (std::size_t k = 0; k < g.signals(); ++k) {
      const double p = g(i, k);
      double fcum = 0.0;
      for (std::size_t j = 0; j <= f.signals(); ++j) {
        if (p > 0.0 && fcum > gcum && fcum < gcum + p) {
          ys.push_back(static_cast<double>(k) + (fcum - gcum) / p);
        }
        if (j < f.signals()) fcum += f(i, j);
      }
      gcum += p;
    }
  }
  for (double y : ys) {
    for (std::size_t i = 0; i + 1 < f.states(); ++i) {
      if (quantile_transform(f, g, i, y) > quantile_transform(f, g, i + 1, y) + tol.order) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace infomono
