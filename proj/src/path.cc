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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numeric>
#include <thread>

#include "infomono/errors.h"
#include "infomono/order.h"

namespace infomono {
namespace {

Direction component(DirectionKind kind, std::size_t from, std::size_t to, std::size_t cutoff) {
  Direction d;
  d.kind = kind;
  d.from = from;
  d.to = to;
  d.cutoff = cutoff;
  return d;
}

// Builds a mixture of weighted components and its delta at `h`.
Direction combine(const Experiment& h, std::vector<Direction> parts, std::vector<double> weights) {
  Direction d;
  d.kind = DirectionKind::kMixture;
  d.components = std::move(parts);
  d.coefficients = std::move(weights);
  d.delta = move_delta(h, d);
  return d;
}

void push_start(Path& path) {
  PathStep s(path.source);
  s.op = StepOp::kStart;
  path.steps.push_back(std::move(s));
}

void push_move(Path& path, Experiment next, Direction d, std::size_t segment, double t) {
  PathStep s(std::move(next));
  s.op = StepOp::kMove;
  s.direction = std::move(d);
  s.segment = segment;
  s.t = t;
  path.steps.push_back(std::move(s));
}

const Experiment& push_split(Path& path, std::size_t signal, double lambda, std::size_t segment) {
  PathStep s(split_signal(path.steps.back().experiment, signal, lambda));
  s.op = StepOp::kSplit;
  s.signal = signal;
  s.lambda = lambda;
  s.segment = segment;
  path.steps.push_back(std::move(s));
  return path.steps.back().experiment;
}

const Experiment& push_merge(Path& path, std::size_t signal, std::size_t other,
                             std::size_t segment) {
  PathStep s(merge_signals(path.steps.back().experiment, signal, other));
  s.op = StepOp::kMerge;
  s.signal = signal;
  s.other = other;
  s.segment = segment;
  path.steps.push_back(std::move(s));
  return path.steps.back().experiment;
}

std::vector<std::vector<std::size_t>> identity_groups(std::size_t m) {
  std::vector<std::vector<std::size_t>> groups(m);
  for (std::size_t k = 0; k < m; ++k) groups[k] = {k};
  return groups;
}

bool zero_column(const Experiment& f, std::size_t j, double tol = 1e-15) {
  for (std::size_t i = 0; i < f.states(); ++i)
    if (f(i, j) > tol) return false;
  return true;
}

// Merges every column with entries at most `tol` into a neighbour.
void drop_zero_columns(Path& path, std::size_t segment, double tol = 1e-15) {
  for (std::size_t c = path.steps.back().experiment.signals(); c-- > 0;) {
    const Experiment& h = path.steps.back().experiment;
    if (h.signals() < 2 || !zero_column(h, c, tol)) continue;
    if (c > 0) {
      push_merge(path, c - 1, c, segment);
    } else {
      push_merge(path, 1, 0, segment);
    }
  }
}

void require_two_signals(const Experiment& f, const Experiment& g) {
  if (f.signals() != 2 || g.signals() != 2) {
    throw Error(ErrorCode::kNotBinary, "binary paths need two-signal experiments");
  }
  if (f.states() != g.states()) {
    throw Error(ErrorCode::kDimensionMismatch, "experiments have different state counts");
  }
}

std::vector<double> sample_grid(std::size_t samples) {
  samples = std::max<std::size_t>(samples, 1);
  std::vector<double> t(samples + 1);
  for (std::size_t s = 0; s <= samples; ++s) t[s] = static_cast<double>(s) / samples;
  return t;
}

// Sampled single-move segment on the high column: `at(s)` gives the high
// column at parameter s and `coefficient(s1, s2)` the fraction moved.
template <typename At, typename Coefficient>
void binary_segment(Path& path, std::size_t segment, std::size_t samples, Direction move, At at,
                    Coefficient coefficient) {
  const std::vector<double> grid = sample_grid(samples);
  for (std::size_t s = 1; s < grid.size(); ++s) {
    const Experiment& prev = path.steps.back().experiment;
    const double c = coefficient(grid[s - 1], grid[s]);
    Direction d = combine(prev, {move}, {c});
    push_move(path, binary_experiment(at(grid[s])), std::move(d), segment, grid[s]);
  }
}

}  // namespace

const char* path_kind_name(PathKind k) {
  switch (k) {
    case PathKind::kBinaryBlackwell: return "binary_blackwell";
    case PathKind::kBinaryLehmann: return "binary_lehmann";
    case PathKind::kGeneralBlackwell: return "general_blackwell";
    case PathKind::kLehmannRemoval: return "lehmann_removal";
    case PathKind::kLehmannFull: return "lehmann_full";
  }
  return "unknown";
}

PathKind parse_path_kind(const std::string& name) {
  for (PathKind k : {PathKind::kBinaryBlackwell, PathKind::kBinaryLehmann,
                     PathKind::kGeneralBlackwell, PathKind::kLehmannRemoval,
                     PathKind::kLehmannFull}) {
    if (name == path_kind_name(k)) return k;
  }
  throw Error(ErrorCode::kParseError, "unknown path kind '" + name + "'");
}

bool is_lehmann_kind(PathKind k) {
  return k == PathKind::kBinaryLehmann || k == PathKind::kLehmannRemoval ||
         k == PathKind::kLehmannFull;
}

const char* step_op_name(StepOp op) {
  switch (op) {
    case StepOp::kStart: return "start";
    case StepOp::kMove: return "move";
    case StepOp::kSplit: return "split";
    case StepOp::kMerge: return "merge";
    case StepOp::kPermute: return "permute";
  }
  return "unknown";
}

StepOp parse_step_op(const std::string& name) {
  for (StepOp op : {StepOp::kStart, StepOp::kMove, StepOp::kSplit, StepOp::kMerge,
                    StepOp::kPermute}) {
    if (name == step_op_name(op)) return op;
  }
  throw Error(ErrorCode::kParseError, "unknown step operation '" + name + "'");
}

Matrix move_delta(const Experiment& h, const Direction& d) {
  const std::size_t n = h.states(), m = h.signals();
  Matrix delta(n, m);
  if (d.kind == DirectionKind::kMixture) {
    if (d.components.size() != d.coefficients.size()) {
      throw Error(ErrorCode::kInvalidParameter, "mixture needs one coefficient per component");
    }
    for (std::size_t c = 0; c < d.components.size(); ++c) {
      delta = delta + d.coefficients[c] * move_delta(h, d.components[c]);
    }
    return delta;
  }
  if (d.from >= m || d.to >= m || d.from == d.to) {
    throw Error(ErrorCode::kIndexOutOfRange, "move signals out of range");
  }
  std::size_t lo = 0, hi = n;
  if (d.kind == DirectionKind::kReverseUp) {
    if (d.to != d.from + 1) throw Error(ErrorCode::kInvalidParameter, "upward moves go to from + 1");
    hi = d.cutoff + 1;
  } else if (d.kind == DirectionKind::kReverseDown) {
    if (d.to + 1 != d.from) {
      throw Error(ErrorCode::kInvalidParameter, "downward moves go to from - 1");
    }
    lo = d.cutoff;
  }
  if (lo >= n || hi > n) throw Error(ErrorCode::kIndexOutOfRange, "move cutoff out of range");
  for (std::size_t i = lo; i < hi; ++i) {
    delta(i, d.from) -= h(i, d.from);
    delta(i, d.to) += h(i, d.from);
  }
  return delta;
}

// ---------------------------------------------------------------------------
// Two-signal Blackwell path.

Path binary_blackwell_path(const Experiment& f, const Experiment& g, std::size_t samples,
                           const Tolerances& tol) {
  require_two_signals(f, g);
  const ParallelogramFit fit = fit_parallelogram(f, g);
  if (fit.residual > tol.lp) {
    throw Error(ErrorCode::kNotComparable, "g is not a garbling of f");
  }
  const bool swapped = fit.a < fit.b;
  const double a = swapped ? 1.0 - fit.a : fit.a;
  const double b = swapped ? 1.0 - fit.b : fit.b;
  const std::vector<double> h = high_column(f);
  const std::size_t n = h.size();

  Path path(PathKind::kBinaryBlackwell, f, g);
  push_start(path);
  path.target_groups = identity_groups(2);

  std::vector<double> fprime(n);
  const Direction to_low = component(DirectionKind::kSignalReplacement, 1, 0, 0);
  const Direction to_high = component(DirectionKind::kSignalReplacement, 0, 1, 0);
  if (b >= 1.0) {
    std::fill(fprime.begin(), fprime.end(), 1.0);
    bool moves = false;
    for (double x : h) moves = moves || x < 1.0;
    if (moves) {
      binary_segment(
          path, 0, samples, to_high,
          [&](double s) {
            std::vector<double> y(n);
            for (std::size_t i = 0; i < n; ++i) y[i] = h[i] + s * (1.0 - h[i]);
            return y;
          },
          [](double s1, double s2) { return (s2 - s1) / (1.0 - s1); });
    }
  } else {
    const double gamma = (a - b) / (1.0 - b);
    for (std::size_t i = 0; i < n; ++i) fprime[i] = gamma * h[i];
    if (gamma < 1.0) {
      binary_segment(
          path, 0, samples, to_low,
          [&](double s) {
            std::vector<double> y(n);
            for (std::size_t i = 0; i < n; ++i) y[i] = (1.0 - s * (1.0 - gamma)) * h[i];
            return y;
          },
          [&](double s1, double s2) {
            return (s2 - s1) * (1.0 - gamma) / (1.0 - s1 * (1.0 - gamma));
          });
    }
    if (b > 0.0) {
      binary_segment(
          path, 1, samples, to_high,
          [&](double s) {
            std::vector<double> y(n);
            for (std::size_t i = 0; i < n; ++i) y[i] = fprime[i] + s * b * (1.0 - fprime[i]);
            return y;
          },
          [&](double s1, double s2) { return (s2 - s1) * b / (1.0 - s1 * b); });
    }
  }
  if (swapped) {
    PathStep s(permute(path.steps.back().experiment, {1, 0}));
    s.op = StepOp::kPermute;
    s.permutation = {1, 0};
    s.segment = 2;
    s.t = 1.0;
    path.steps.push_back(std::move(s));
  }
  return path;
}

// ---------------------------------------------------------------------------
// Two-signal Lehmann chain.

BinaryLehmannDecomposition binary_lehmann_fractions(const Experiment& f, const Experiment& g,
                                                    const Tolerances& tol) {
  require_two_signals(f, g);
  if (!lehmann_geq_binary(f, g, tol).dominates()) {
    throw Error(ErrorCode::kNotComparable, "f is not Lehmann more informative than g");
  }
  const std::vector<double> hf = high_column(f), hg = high_column(g);
  const std::size_t n = hf.size();
  BinaryLehmannDecomposition out;
  for (std::size_t i = 0; i < n; ++i)
    if (hg[i] >= hf[i]) out.k = i + 1;
  const std::size_t k = out.k;
  auto clamp01 = [](double v) { return std::min(1.0, std::max(0.0, v)); };
  out.epsilon.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.epsilon[i] = clamp01(i < k ? 1.0 - ratio(1.0 - hg[i], 1.0 - hf[i])
                                   : 1.0 - ratio(hg[i], hf[i]));
  }
  // Chained fractions: applying e_{k-1}, ..., e_i in turn moves epsilon_i.
  auto chained = [&](double outer, double inner) {
    return inner < 1.0 ? clamp01((outer - inner) / (1.0 - inner)) : 0.0;
  };
  out.e.resize(n);
  for (std::size_t i = 0; i < k; ++i) {
    out.e[i] = i + 1 == k ? out.epsilon[i] : chained(out.epsilon[i], out.epsilon[i + 1]);
  }
  for (std::size_t i = k; i < n; ++i) {
    out.e[i] = i == k ? out.epsilon[i] : chained(out.epsilon[i], out.epsilon[i - 1]);
  }
  return out;
}

Path binary_lehmann_path(const Experiment& f, const Experiment& g, std::size_t samples,
                         const Tolerances& tol) {
  const BinaryLehmannDecomposition dec = binary_lehmann_fractions(f, g, tol);
  Path path(PathKind::kBinaryLehmann, f, g);
  push_start(path);
  path.target_groups = identity_groups(2);
  const std::size_t n = f.states();
  std::vector<double> cur = high_column(f);
  std::size_t segment = 0;
  auto run = [&](std::size_t cutoff, bool up) {
    const double e = dec.e[cutoff];
    if (e <= 0.0) return;
    const std::vector<double> base = cur;
    auto at = [&](double s) {
      std::vector<double> y = base;
      for (std::size_t i = 0; i < n; ++i) {
        if (up && i <= cutoff) y[i] = base[i] + s * e * (1.0 - base[i]);
        if (!up && i >= cutoff) y[i] = base[i] * (1.0 - s * e);
      }
      return y;
    };
    const Direction move = up ? component(DirectionKind::kReverseUp, 0, 1, cutoff)
                              : component(DirectionKind::kReverseDown, 1, 0, cutoff);
    binary_segment(path, segment++, samples, move, at,
                   [&](double s1, double s2) { return (s2 - s1) * e / (1.0 - s1 * e); });
    cur = at(1.0);
  };
  for (std::size_t i = dec.k; i-- > 0;) run(i, true);
  for (std::size_t i = dec.k; i < n; ++i) run(i, false);
  return path;
}

// ---------------------------------------------------------------------------
// General Blackwell path.

Path general_blackwell_path(const Experiment& f, const Experiment& g, const Matrix& kernel,
                            std::size_t samples, const Tolerances& tol) {
  const std::size_t m = f.signals(), m2 = g.signals(), n = f.states();
  if (g.states() != n) throw Error(ErrorCode::kDimensionMismatch, "state counts differ");
  if (kernel.rows() != m || kernel.cols() != m2) {
    throw Error(ErrorCode::kWitnessInvalid, "witness kernel has the wrong shape");
  }
  for (std::size_t j = 0; j < m; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < m2; ++k) {
      if (!(kernel(j, k) >= 0.0)) throw Error(ErrorCode::kWitnessInvalid, "negative kernel entry");
      s += kernel(j, k);
    }
    if (std::abs(s - 1.0) > 1e-9) throw Error(ErrorCode::kWitnessInvalid, "kernel row sum != 1");
  }
  const Matrix fm = f.matrix() * kernel;
  if (max_abs_diff(fm, g.matrix()) > tol.lp) {
    throw Error(ErrorCode::kWitnessInvalid, "f * kernel does not reproduce g");
  }
  Path path(PathKind::kGeneralBlackwell, f, g);
  push_start(path);
  for (std::size_t k = 0; k < m2; ++k) push_split(path, m + k - 1, 0.0, 0);
  auto phi = [&](double t) {
    Matrix out(n, m + m2);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) out(i, j) = (1.0 - t) * f(i, j);
      for (std::size_t k = 0; k < m2; ++k) out(i, m + k) = t * fm(i, k);
    }
    return make_derived(out);
  };
  const std::vector<double> grid = sample_grid(samples);
  for (std::size_t s = 1; s < grid.size(); ++s) {
    const double t1 = grid[s - 1], t2 = grid[s];
    std::vector<Direction> parts;
    std::vector<double> weights;
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m2; ++k) {
        if (kernel(j, k) <= 0.0) continue;
        parts.push_back(component(DirectionKind::kSignalReplacement, j, m + k, 0));
        weights.push_back(kernel(j, k) * (t2 - t1) / (1.0 - t1));
      }
    const Experiment& prev = path.steps.back().experiment;
    Direction d = combine(prev, std::move(parts), std::move(weights));
    push_move(path, phi(t2), std::move(d), 1, t2);
  }
  path.target_groups.resize(m2);
  for (std::size_t k = 0; k < m2; ++k) path.target_groups[k] = {m + k};
  return path;
}

Path general_blackwell_path(const Experiment& f, const Experiment& g, std::size_t samples,
                            const Tolerances& tol) {
  const GarblingFit fit = fit_garbling(f, g, tol);
  if (!fit.feasible) throw Error(ErrorCode::kNotComparable, "g is not a garbling of f");
  return general_blackwell_path(f, g, fit.kernel, samples, tol);
}

// ---------------------------------------------------------------------------
// Chord removal by rotating a line about a cumulative point.

namespace {

// A point on the rotating line: `u` indexes the low-state quantile scale and
// `v` the high-state one (fractional signal positions of the base experiment).
struct Breakpoint {
  double t = 0.0;  // horizontal distance from the pivot
  double u = 0.0;
  double v = 0.0;
  bool horizontal = false;  // crossing of a horizontal grid line (moves in u)
};

class Rotation {
 public:
  Rotation(const Experiment& f, std::size_t state, std::size_t j)
      : f_(f), i_(state), j_(j), m_(f.signals()) {
    x_.assign(m_ + 1, 0.0);
    y_.assign(m_ + 1, 0.0);
    for (std::size_t s = 0; s < m_; ++s) {
      x_[s + 1] = x_[s] + f(i_, s);
      y_[s + 1] = y_[s] + f(i_ + 1, s);
    }
  }

  double slope(std::size_t s) const { return (y_[s] - y_[j_]) / (x_[s] - x_[j_]); }
  double x(std::size_t s) const { return x_[s]; }
  double y(std::size_t s) const { return y_[s]; }

  // Breakpoints of stage `kp` at slope l, in order along the line.
  std::vector<Breakpoint> breakpoints(std::size_t kp, double l) const {
    std::vector<Breakpoint> out;
    for (std::size_t q = j_ + 1; q < kp; ++q) {
      Breakpoint b;
      b.horizontal = true;
      b.t = (y_[q] - y_[j_]) / l;
      b.u = inverse(x_, i_, x_[j_] + b.t, kp);
      b.v = static_cast<double>(q);
      out.push_back(b);
    }
    for (std::size_t p = j_ + 1; p < kp; ++p) {
      Breakpoint b;
      b.t = x_[p] - x_[j_];
      b.u = static_cast<double>(p);
      b.v = inverse(y_, i_ + 1, y_[j_] + l * b.t, kp);
      out.push_back(b);
    }
    return out;
  }

  // Sort order of breakpoints valid on an open slope interval.
  std::vector<std::size_t> order(std::size_t kp, double l) const {
    const std::vector<Breakpoint> b = breakpoints(kp, l);
    std::vector<std::size_t> idx(b.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t c) {
      if (b[a].t != b[c].t) return b[a].t < b[c].t;
      if (b[a].u != b[c].u) return b[a].u < b[c].u;
      return b[a].v < b[c].v;
    });
    return idx;
  }

  // Ordered breakpoints with the pivot and end point, coordinates made
  // monotone.
  std::vector<Breakpoint> chain(std::size_t kp, double l,
                                const std::vector<std::size_t>& idx) const {
    const std::vector<Breakpoint> b = breakpoints(kp, l);
    std::vector<Breakpoint> pts;
    Breakpoint start;
    start.u = start.v = static_cast<double>(j_);
    pts.push_back(start);
    for (std::size_t k : idx) {
      Breakpoint p = b[k];
      p.u = std::max(p.u, pts.back().u);
      p.v = std::max(p.v, pts.back().v);
      pts.push_back(p);
    }
    Breakpoint end;
    end.u = end.v = static_cast<double>(kp);
    end.t = x_[kp] - x_[j_];
    pts.push_back(end);
    return pts;
  }

  Experiment experiment(std::size_t kp, const std::vector<Breakpoint>& pts) const {
    const std::size_t n = f_.states();
    const std::size_t block = pts.size() - 1;
    Matrix out(n, j_ + block + (m_ - kp));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < j_; ++c) out(r, c) = f_(r, c);
      for (std::size_t c = 0; c < block; ++c) {
        out(r, j_ + c) = r <= i_ ? mass(r, pts[c].u, pts[c + 1].u)
                                 : mass(r, pts[c].v, pts[c + 1].v);
      }
      for (std::size_t c = kp; c < m_; ++c) out(r, j_ + block + c - kp) = f_(r, c);
    }
    return make_derived(out);
  }

 private:
  // Fractional position in [j, kp] where the cumulative row reaches `level`.
  double inverse(const std::vector<double>& cum, std::size_t row, double level,
                 std::size_t kp) const {
    for (std::size_t s = j_; s < kp; ++s) {
      if (level <= cum[s + 1] || s + 1 == kp) {
        const double w = f_(row, s);
        double frac = w > 0.0 ? (level - cum[s]) / w : 0.0;
        // Snap rounding noise so that coinciding points leave empty columns.
        if (frac < 1e-12) frac = 0.0;
        if (frac > 1.0 - 1e-12) frac = 1.0;
        return static_cast<double>(s) + frac;
      }
    }
    return static_cast<double>(kp);
  }

  // Mass of row r between fractional positions a <= b.
  double mass(std::size_t r, double a, double b) const {
    double total = 0.0;
    const std::size_t first = static_cast<std::size_t>(std::floor(a));
    for (std::size_t s = first; s < m_ && static_cast<double>(s) < b; ++s) {
      const double lo = std::max(a, static_cast<double>(s));
      const double hi = std::min(b, static_cast<double>(s + 1));
      if (hi > lo) total += (hi - lo) * f_(r, s);
    }
    return total;
  }

  const Experiment& f_;
  std::size_t i_, j_, m_;
  std::vector<double> x_, y_;
};

// Appends the moves of one rotation stage between slopes l0 < l1.
void rotation_stage(Path& path, const Rotation& rot, std::size_t state, std::size_t j,
                    std::size_t kp, double l0, double l1, std::size_t samples,
                    std::size_t segment) {
  std::vector<double> ts = sample_grid(samples);
  // Slopes where a horizontal and a vertical crossing trade places.
  for (std::size_t q = j + 1; q < kp; ++q)
    for (std::size_t p = j + 1; p < kp; ++p) {
      const double c = (rot.y(q) - rot.y(j)) / (rot.x(p) - rot.x(j));
      if (c > l0 && c < l1) ts.push_back((c - l0) / (l1 - l0));
    }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end(),
                       [](double a, double b) { return std::abs(a - b) < 1e-12; }),
           ts.end());
  // Emits one move from ta to tb. A breakpoint may pass the old position of
  // its neighbour; the move stays exact when both columns come from the same
  // base signal (their likelihoods are proportional), otherwise the interval
  // is halved.
  std::function<void(double, double, int)> emit = [&](double ta, double tb, int depth) {
    const double la = (1.0 - ta) * l0 + ta * l1;
    const double lb = (1.0 - tb) * l0 + tb * l1;
    const std::vector<std::size_t> idx = rot.order(kp, 0.5 * (la + lb));
    const std::vector<Breakpoint> pa = rot.chain(kp, la, idx);
    const std::vector<Breakpoint> pb = rot.chain(kp, lb, idx);
    std::vector<Direction> parts;
    std::vector<double> weights;
    for (std::size_t b = 1; b + 1 < pa.size(); ++b) {
      double moved, len;
      Direction part;
      if (pa[b].horizontal) {
        // Low-state mass leaves the column before the breakpoint.
        moved = pa[b].u - pb[b].u;
        len = pa[b].u - pa[b - 1].u;
        part = component(DirectionKind::kReverseUp, j + b - 1, j + b, state);
      } else {
        // High-state mass leaves the column after the breakpoint.
        moved = pb[b].v - pa[b].v;
        len = pa[b + 1].v - pa[b].v;
        part = component(DirectionKind::kReverseDown, j + b, j + b - 1, state + 1);
      }
      if (!(moved > 0.0) || !(len > 0.0)) continue;
      parts.push_back(part);
      weights.push_back(moved / len);
    }
    const Experiment& prev = path.steps.back().experiment;
    Experiment next = rot.experiment(kp, pb);
    Direction d = combine(prev, std::move(parts), std::move(weights));
    const double miss = max_abs_diff(prev.matrix() + d.delta, next.matrix());
    if (miss > 1e-12 && depth < 40) {
      emit(ta, 0.5 * (ta + tb), depth + 1);
      emit(0.5 * (ta + tb), tb, depth + 1);
      return;
    }
    if (d.components.empty()) return;
    push_move(path, std::move(next), std::move(d), segment, tb);
  };
  for (std::size_t s = 1; s < ts.size(); ++s) emit(ts[s - 1], ts[s], 0);
}

}  // namespace

RemovalResult lehmann_removal(const Experiment& f, std::size_t state, std::size_t j,
                              std::size_t k, std::size_t samples) {
  const std::size_t m = f.signals();
  if (state + 1 >= f.states()) throw Error(ErrorCode::kIndexOutOfRange, "state pair out of range");
  if (k > m || j + 1 >= k) {
    throw Error(ErrorCode::kIndexOutOfRange, "removal needs cumulative indices j + 1 < k <= m");
  }
  if (!is_mlrp(f)) throw Error(ErrorCode::kMlrpViolated, "removal needs an MLRP experiment");
  for (std::size_t c = j; c < k; ++c) {
    if (!(f(state, c) > 0.0) || !(f(state + 1, c) > 0.0)) {
      throw Error(ErrorCode::kDomainError,
                  "removal needs positive likelihoods in both states of the chord");
    }
  }
  RemovalResult out{f, Path(PathKind::kLehmannRemoval, f, f)};
  Path& path = out.path;
  push_start(path);
  const Rotation rot(f, state, j);
  // Collinear points: nothing to remove.
  const double dx = rot.x(k) - rot.x(j), dy = rot.y(k) - rot.y(j);
  bool collinear = true;
  for (std::size_t s = j + 1; s < k; ++s) {
    const double cross = dx * (rot.y(s) - rot.y(j)) - dy * (rot.x(s) - rot.x(j));
    collinear = collinear && std::abs(cross) <= 1e-14;
  }
  if (collinear) {
    out.degenerate = true;
    path.target_groups = identity_groups(m);
    return out;
  }
  std::size_t segment = 0;
  for (std::size_t kp = j + 2; kp <= k; ++kp) {
    // New zero column behind the block, between the two new breakpoints.
    push_split(path, j + 2 * (kp - 1 - j) - 2, 0.0, segment);
    const double l0 = rot.slope(kp - 1), l1 = rot.slope(kp);
    if (l1 > l0 * (1.0 + 1e-15)) rotation_stage(path, rot, state, j, kp, l0, l1, samples, segment);
    ++segment;
  }
  drop_zero_columns(path, segment);
  out.result = path.final_experiment();
  path.target = out.result;
  path.target_groups = identity_groups(out.result.signals());
  return out;
}

// ---------------------------------------------------------------------------
// Full Lehmann path.

namespace {

constexpr double kSliver = 1e-11;

struct Point {
  double x = 0.0, y = 0.0;
};

std::vector<Point> cumulative_points(const Experiment& f, std::size_t i) {
  std::vector<Point> pts(f.signals() + 1);
  for (std::size_t s = 0; s < f.signals(); ++s) {
    pts[s + 1].x = pts[s].x + f(i, s);
    pts[s + 1].y = pts[s].y + f(i + 1, s);
  }
  return pts;
}

// Splits column c - 1 of the current experiment so that a new vertex sits at
// fraction `lambda` of segment (c - 1, c). Returns the vertex index.
std::size_t split_at(Path& path, std::size_t c, double lambda, std::size_t segment) {
  if (lambda >= 1.0 - 1e-12) return c;
  if (lambda <= 1e-12) return c - 1;
  push_split(path, c - 1, 1.0 - lambda, segment);
  return c;
}

void append_steps(Path& path, const Path& part, std::size_t segment_offset) {
  for (std::size_t s = 1; s < part.steps.size(); ++s) {
    path.steps.push_back(part.steps[s]);
    path.steps.back().segment += segment_offset;
  }
}

}  // namespace

Path lehmann_path(const Experiment& f, const Experiment& g, std::size_t samples,
                  const Tolerances& tol) {
  if (f.states() != g.states()) throw Error(ErrorCode::kDimensionMismatch, "state counts differ");
  if (!is_mlrp(f) || !is_mlrp(g)) {
    throw Error(ErrorCode::kMlrpViolated, "Lehmann paths need MLRP experiments");
  }
  if (!lehmann_geq_mlrp(f, g, tol).dominates()) {
    throw Error(ErrorCode::kNotComparable, "f is not Lehmann more informative than g");
  }
  const std::size_t n = f.states();
  Path path(PathKind::kLehmannFull, f, g);
  push_start(path);
  std::size_t segment = 0;
  drop_zero_columns(path, segment++, kSliver);
  const std::size_t cap = 10 * n * std::max(f.signals(), g.signals());
  std::size_t removals = 0;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::vector<Point> gp = cumulative_points(g, i);
    std::size_t jcur = 0;
    for (std::size_t s = 1; s < gp.size(); ++s) {
      const Point g0 = gp[s - 1], g1 = gp[s];
      const double ddx = g1.x - g0.x, ddy = g1.y - g0.y;
      if (ddx + ddy <= 1e-15) continue;
      const double scale = std::hypot(ddx, ddy);
      const double eps = 1e-12 * scale;
      const double target_sum = g1.x + g1.y;
      std::vector<Point> cp = cumulative_points(path.final_experiment(), i);
      auto cross = [&](const Point& p) { return ddx * (p.y - g0.y) - ddy * (p.x - g0.x); };
      auto sum = [](const Point& p) { return p.x + p.y; };
      auto projection = [&](std::size_t c) {
        const double span = sum(cp[c]) - sum(cp[c - 1]);
        return span > 0.0 ? (target_sum - sum(cp[c - 1])) / span : 1.0;
      };
      // First vertex at or beyond g1 that lies on or above the extended segment.
      std::size_t c = jcur + 1;
      while (c + 1 < cp.size() && sum(cp[c]) < target_sum - 1e-13) ++c;
      const std::size_t c0 = c;
      while (c + 1 < cp.size() && cross(cp[c]) < -eps) ++c;
      double lambda;
      if (cross(cp[c]) <= eps) {
        lambda = 1.0;
      } else if (cross(cp[c - 1]) >= -eps) {
        lambda = projection(c);
      } else {
        lambda = cross(cp[c - 1]) / (cross(cp[c - 1]) - cross(cp[c]));
      }
      if (c == c0) lambda = std::max(lambda, projection(c));
      lambda = std::min(1.0, std::max(0.0, lambda));
      const std::size_t before = path.final_experiment().signals();
      std::size_t kz = split_at(path, c, lambda, segment);
      if (kz > jcur + 1) {
        RemovalResult r = lehmann_removal(path.final_experiment(), i, jcur, kz, samples);
        if (!r.degenerate) {
          if (++removals > cap) {
            throw Error(ErrorCode::kIterationLimit, "too many chord removals");
          }
          append_steps(path, r.path, segment);
          segment += r.path.steps.back().segment + 1;
          // Rounding leaves slivers where breakpoints coincide; merging an
          // adjacent column is itself a Lehmann-decreasing step.
          drop_zero_columns(path, segment, kSliver);
        }
      }
      (void)before;
      // Make g1 a vertex of the straightened chord.
      cp = cumulative_points(path.final_experiment(), i);
      c = jcur + 1;
      while (c + 1 < cp.size() && sum(cp[c]) < target_sum - 1e-13) ++c;
      if (std::abs(sum(cp[c]) - target_sum) <= 1e-12) {
        jcur = c;
      } else {
        jcur = split_at(path, c, projection(c), segment);
      }
      ++segment;
    }
  }

  // Common refinement of the straightened experiment and g.
  const std::size_t mg = g.signals();
  path.target_groups.assign(mg, {});
  std::size_t a = 0, b = 0;
  double rb = 1.0;
  auto g_zero = [&](std::size_t k) { return zero_column(g, k); };
  while (a < path.final_experiment().signals()) {
    const Experiment& cur = path.final_experiment();
    if (zero_column(cur, a)) {
      ++a;
      continue;
    }
    while (b < mg && (g_zero(b) || rb <= 1e-12)) {
      ++b;
      rb = 1.0;
    }
    if (b >= mg) {
      throw Error(ErrorCode::kNumericallyIllConditioned,
                  "straightened experiment does not split into the target");
    }
    std::size_t r = 0;
    for (std::size_t q = 1; q < n; ++q)
      if (g(q, b) > g(r, b)) r = q;
    const double need = rb * g(r, b);
    const double have = cur(r, a);
    if (have <= need * (1.0 + 1e-9)) {
      path.target_groups[b].push_back(a);
      rb -= have / g(r, b);
      ++a;
    } else {
      push_split(path, a, 1.0 - need / have, segment);
      path.target_groups[b].push_back(a);
      rb = 0.0;
      ++a;
    }
  }
  return path;
}

// ---------------------------------------------------------------------------
// Verification.

namespace {

void check_step(const Path& path, std::size_t s, const PathCheckOptions& options,
                std::vector<PathIssue>& issues, double& op_error) {
  const PathStep& step = path.steps[s];
  const Experiment& cur = step.experiment;
  auto issue = [&](const std::string& check, const std::string& detail) {
    issues.push_back({s, check, detail});
  };
  try {
    validate_stochastic(cur.matrix());
  } catch (const Error& e) {
    issue("validate", e.what());
  }
  const bool lehmann = is_lehmann_kind(path.kind);
  if (lehmann && !is_mlrp(cur)) issue("mlrp", "experiment is not MLRP");
  if (s == 0) {
    if (step.op != StepOp::kStart) issue("source", "first step is not a start step");
    if (cur.states() != path.source.states() || cur.signals() != path.source.signals() ||
        max_abs_diff(cur.matrix(), path.source.matrix()) > 1e-12) {
      issue("source", "first step differs from the source");
    }
    return;
  }
  const Experiment& prev = path.steps[s - 1].experiment;
  std::optional<Matrix> expected;
  try {
    switch (step.op) {
      case StepOp::kStart:
        issue("operation", "start step inside the path");
        break;
      case StepOp::kMove: {
        const Direction& d = step.direction;
        std::vector<const Direction*> parts;
        std::vector<double> weights;
        if (d.kind == DirectionKind::kMixture) {
          for (std::size_t c = 0; c < d.components.size(); ++c) {
            parts.push_back(&d.components[c]);
            weights.push_back(c < d.coefficients.size() ? d.coefficients[c] : -1.0);
          }
        } else {
          parts.push_back(&d);
          weights.push_back(1.0);
        }
        for (std::size_t c = 0; c < parts.size(); ++c) {
          const Direction& p = *parts[c];
          const bool reverse =
              p.kind == DirectionKind::kReverseUp || p.kind == DirectionKind::kReverseDown;
          if (p.kind == DirectionKind::kMixture || reverse != lehmann) {
            issue("operation", std::string("move kind ") + direction_kind_name(p.kind) +
                                   " not allowed on " + path_kind_name(path.kind) + " paths");
          }
          if (!(weights[c] >= 0.0) || !std::isfinite(weights[c])) {
            issue("operation", "move coefficient is negative or not finite");
          }
        }
        expected = prev.matrix() + move_delta(prev, d);
        break;
      }
      case StepOp::kSplit:
        expected = split_signal(prev, step.signal, step.lambda).matrix();
        break;
      case StepOp::kMerge:
        expected = merge_signals(prev, step.signal, step.other).matrix();
        break;
      case StepOp::kPermute:
        expected = permute(prev, step.permutation).matrix();
        break;
    }
  } catch (const Error& e) {
    issue("operation", e.what());
  }
  if (expected) {
    if (expected->rows() != cur.states() || expected->cols() != cur.signals()) {
      issue("operation", "operation changes the shape differently");
    } else {
      const double err = max_abs_diff(*expected, cur.matrix());
      op_error = std::max(op_error, err);
      if (err > 1e-9) issue("operation", "operation misses the next experiment by " + std::to_string(err));
    }
  }
  if (options.check_order) {
    try {
      const bool ordered = lehmann ? lehmann_geq_mlrp(prev, cur, options.tol).dominates()
                                   : blackwell_dominates(prev, cur, options.tol);
      if (!ordered) issue("order", "previous experiment does not dominate the next");
    } catch (const Error& e) {
      issue("order", e.what());
    }
  }
  const bool move = step.op == StepOp::kMove;
  for (const CostPtr& c : options.costs) {
    const double before = c->evaluate(prev), after = c->evaluate(cur);
    const double bound = options.tol.equality_bound(std::isfinite(before) ? before : 0.0);
    const double rise = after - before;
    const bool bad = move ? rise > bound : std::abs(rise) > bound;
    if (bad || std::isnan(rise)) {
      issue("cost", c->id() + " changes by " + std::to_string(rise));
    }
  }
}

}  // namespace

PathVerification verify_path(const Path& path, const PathCheckOptions& options) {
  PathVerification out;
  out.steps = path.steps.size();
  if (path.steps.empty()) {
    out.ok = false;
    out.issues.push_back({0, "source", "path has no steps"});
    return out;
  }
  std::size_t workers = std::max<std::size_t>(1, options.workers);
  for (const CostPtr& c : options.costs) workers = c->reentrant() ? workers : 1;
  const std::size_t count = path.steps.size();
  std::vector<std::vector<PathIssue>> issues(count);
  std::vector<double> errors(count, 0.0);
  auto run = [&](std::size_t s) { check_step(path, s, options, issues[s], errors[s]); };
  if (workers == 1) {
    for (std::size_t s = 0; s < count; ++s) run(s);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, count); ++w) {
      pool.emplace_back([&] {
        for (std::size_t s = next++; s < count; s = next++) run(s);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (std::size_t s = 0; s < count; ++s) {
    out.max_operation_error = std::max(out.max_operation_error, errors[s]);
    out.issues.insert(out.issues.end(), issues[s].begin(), issues[s].end());
  }

  // Endpoint: regroup the final columns into the target.
  const Experiment& last = path.final_experiment();
  const Experiment& target = path.target;
  double err = 0.0;
  if (last.states() != target.states()) {
    err = std::numeric_limits<double>::infinity();
  } else if (path.target_groups.empty()) {
    err = last.signals() == target.signals() ? max_abs_diff(last.matrix(), target.matrix())
                                             : std::numeric_limits<double>::infinity();
  } else if (path.target_groups.size() != target.signals()) {
    err = std::numeric_limits<double>::infinity();
  } else {
    std::vector<bool> listed(last.signals(), false);
    for (std::size_t k = 0; k < target.signals(); ++k) {
      for (std::size_t i = 0; i < target.states(); ++i) {
        double s = 0.0;
        for (std::size_t c : path.target_groups[k]) {
          if (c >= last.signals()) {
            err = std::numeric_limits<double>::infinity();
            continue;
          }
          s += last(i, c);
        }
        err = std::max(err, std::abs(s - target(i, k)));
      }
      for (std::size_t c : path.target_groups[k])
        if (c < last.signals()) listed[c] = true;
    }
    for (std::size_t c = 0; c < last.signals(); ++c) {
      if (listed[c]) continue;
      for (std::size_t i = 0; i < last.states(); ++i) err = std::max(err, last(i, c));
    }
  }
  out.endpoint_error = err;
  if (!(err <= 1e-9)) {
    out.issues.push_back({count - 1, "endpoint",
                          "final experiment misses the target by " + std::to_string(err)});
  }
  out.ok = out.issues.empty();
  return out;
}

}  // namespace infomono
