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

#include "infomono/experiment.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "infomono/errors.h"
#include "infomono/numeric.h"

namespace infomono {
namespace {

std::string entry_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

// Clamps tiny negatives and renormalizes rows, or throws.
Matrix normalize_rows(const Matrix& raw, double tol) {
  if (raw.empty()) throw Error(ErrorCode::kDimensionMismatch, "matrix is empty");
  Matrix m = raw;
  std::size_t worst_row = 0;
  double worst_dev = -1.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kNonFiniteEntry, "entry " + entry_name(i, j) + " is not finite");
      }
      if (v < -tol) {
        throw Error(ErrorCode::kNegativeEntry,
                    "entry " + entry_name(i, j) + " = " + std::to_string(v) + " is negative");
      }
      if (v < 0.0) m(i, j) = 0.0;
      sum += m(i, j);
    }
    const double dev = std::abs(sum - 1.0);
    if (dev > worst_dev) {
      worst_dev = dev;
      worst_row = i;
    }
  }
  if (worst_dev > tol) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", worst_dev);
    throw Error(ErrorCode::kRowSumViolation,
                "row " + std::to_string(worst_row) + " sum deviates from 1 by " + buf);
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) sum += m(i, j);
    if (sum != 1.0) {
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) /= sum;
    }
  }
  return m;
}

Matrix pad_single_column(const Matrix& m) {
  if (m.cols() != 1) return m;
  Matrix p(m.rows(), 2);
  for (std::size_t i = 0; i < m.rows(); ++i) p(i, 0) = m(i, 0);
  return p;
}

void require_signal(const Experiment& f, std::size_t j) {
  if (j >= f.signals()) {
    throw Error(ErrorCode::kIndexOutOfRange, "signal " + std::to_string(j) + " out of range [0," +
                                                 std::to_string(f.signals()) + ")");
  }
}

void require_state(const Experiment& f, std::size_t i) {
  if (i >= f.states()) {
    throw Error(ErrorCode::kIndexOutOfRange, "state " + std::to_string(i) + " out of range [0," +
                                                 std::to_string(f.states()) + ")");
  }
}

void require_mlrp(const Experiment& f) {
  MlrpReport r = check_mlrp(f);
  if (!r.holds) {
    const MlrpViolation& v = *r.violation;
    throw Error(ErrorCode::kMlrpViolated,
                "minor at states (" + std::to_string(v.state) + "," + std::to_string(v.state2) +
                    ") signals (" + std::to_string(v.signal) + "," + std::to_string(v.signal2) +
                    ") is negative");
  }
}

}  // namespace

Experiment Experiment::validate(const Matrix& raw, double row_tolerance) {
  if (raw.rows() > kMaxDimension || raw.cols() > kMaxDimension) {
    throw Error(ErrorCode::kDimensionLimit, "at most " + std::to_string(kMaxDimension) +
                                                " states and signals are accepted");
  }
  return Experiment(pad_single_column(normalize_rows(raw, row_tolerance)));
}

Experiment Experiment::restore(const Matrix& raw, double row_tolerance) {
  if (raw.rows() > kMaxDimension || raw.cols() > kMaxDerivedSignals) {
    throw Error(ErrorCode::kDimensionLimit, "stored experiment exceeds size limits");
  }
  if (raw.cols() < 2) {
    throw Error(ErrorCode::kDimensionMismatch, "stored experiment needs two signals");
  }
  normalize_rows(raw, row_tolerance);
  for (double v : raw.data()) {
    if (v < 0.0) throw Error(ErrorCode::kNegativeEntry, "stored experiment has a negative entry");
  }
  return Experiment(raw);
}

Experiment make_derived(const Matrix& raw) {
  if (raw.rows() > kMaxDimension || raw.cols() > kMaxDerivedSignals) {
    throw Error(ErrorCode::kDimensionLimit, "derived experiment exceeds size limits");
  }
  return Experiment(pad_single_column(normalize_rows(raw, kRowTolerance)));
}

Matrix validate_stochastic(const Matrix& raw, double row_tolerance) {
  if (raw.cols() > kMaxDerivedSignals || raw.rows() > kMaxDerivedSignals) {
    throw Error(ErrorCode::kDimensionLimit, "garbling kernel exceeds size limits");
  }
  return normalize_rows(raw, row_tolerance);
}

Experiment garble(const Experiment& f, const Matrix& kernel) {
  if (kernel.rows() != f.signals()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "kernel has " + std::to_string(kernel.rows()) + " rows, experiment has " +
                    std::to_string(f.signals()) + " signals");
  }
  return make_derived(f.matrix() * validate_stochastic(kernel));
}

Experiment permute(const Experiment& f, const std::vector<std::size_t>& perm) {
  const std::size_t m = f.signals();
  if (perm.size() != m) {
    throw Error(ErrorCode::kInvalidPermutation, "permutation length differs from signal count");
  }
  std::vector<bool> seen(m, false);
  for (std::size_t p : perm) {
    if (p >= m || seen[p]) throw Error(ErrorCode::kInvalidPermutation, "not a bijection");
    seen[p] = true;
  }
  Matrix out(f.states(), m);
  for (std::size_t i = 0; i < f.states(); ++i)
    for (std::size_t k = 0; k < m; ++k) out(i, k) = f(i, perm[k]);
  return Experiment(std::move(out));
}

std::vector<std::size_t> inverse_permutation(const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) {
    if (perm[k] >= perm.size()) throw Error(ErrorCode::kInvalidPermutation, "not a bijection");
    inv[perm[k]] = k;
  }
  return inv;
}

Experiment split_signal(const Experiment& f, std::size_t j, double lambda) {
  require_signal(f, j);
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::kInvalidProbability, "split weight must lie in [0,1]");
  }
  Matrix out(f.states(), f.signals() + 1);
  for (std::size_t i = 0; i < f.states(); ++i) {
    for (std::size_t c = 0; c < j; ++c) out(i, c) = f(i, c);
    out(i, j) = (1.0 - lambda) * f(i, j);
    out(i, j + 1) = lambda * f(i, j);
    for (std::size_t c = j + 1; c < f.signals(); ++c) out(i, c + 1) = f(i, c);
  }
  return make_derived(out);
}

Experiment merge_signals(const Experiment& f, std::size_t j, std::size_t k) {
  require_signal(f, j);
  require_signal(f, k);
  if (j == k) throw Error(ErrorCode::kIndexOutOfRange, "cannot merge a signal with itself");
  Matrix out(f.states(), f.signals() - 1);
  for (std::size_t i = 0; i < f.states(); ++i) {
    std::size_t c2 = 0;
    for (std::size_t c = 0; c < f.signals(); ++c) {
      if (c == k) continue;
      out(i, c2++) = c == j ? f(i, j) + f(i, k) : f(i, c);
    }
  }
  return make_derived(out);
}

Matrix merge_kernel(std::size_t m, std::size_t j, std::size_t k) {
  if (j >= m || k >= m || j == k) throw Error(ErrorCode::kIndexOutOfRange, "bad merge indices");
  Matrix kernel(m, m - 1);
  auto target = [&](std::size_t c) { return c < k ? c : c - 1; };
  for (std::size_t c = 0; c < m; ++c) kernel(c, c == k ? target(j) : target(c)) = 1.0;
  return kernel;
}

Experiment binary_experiment(const std::vector<double>& high) {
  Matrix m(high.size(), 2);
  for (std::size_t i = 0; i < high.size(); ++i) {
    m(i, 0) = 1.0 - high[i];
    m(i, 1) = high[i];
  }
  return Experiment::validate(m);
}

std::vector<double> high_column(const Experiment& f) {
  if (f.signals() != 2) throw Error(ErrorCode::kNotBinary, "experiment has more than two signals");
  return f.column(1);
}

namespace {

// Sufficient test for the determinants of states (i, i2), linear in the
// columns. With R the largest ratio b / a over earlier columns and entries in
// [0, 1], a b' - b a' = a (b' - (b / a) a') >= min(0, b' - R a'), so
// b' - R a' >= -kMlrpSlack / 2 for every column bounds all determinants.
bool determinants_bounded(const Matrix& f, std::size_t i, std::size_t i2) {
  double running_max = 0.0;
  for (std::size_t j = 0; j < f.cols(); ++j) {
    const double a = f(i, j), b = f(i2, j);
    // With a = 0 every determinant against this column is a_j b >= 0.
    if (a > 0.0 && b - running_max * a < -0.5 * kMlrpSlack) return false;
    if (b > 0.0) {
      running_max =
          std::max(running_max, a > 0.0 ? b / a : std::numeric_limits<double>::infinity());
    }
  }
  return true;
}

}  // namespace

MlrpReport check_mlrp(const Matrix& f, bool strict) {
  bool any_zero = false, unit_entries = true;
  for (double v : f.data()) {
    any_zero = any_zero || v == 0.0;
    unit_entries = unit_entries && v >= 0.0 && v <= 1.0;
  }
  MlrpReport report;
  const std::size_t n = f.rows();
  const std::size_t m = f.cols();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t i2_end = any_zero ? n : i + 2;
    for (std::size_t i2 = i + 1; i2 < i2_end; ++i2) {
      if (any_zero && !strict && unit_entries && determinants_bounded(f, i, i2)) continue;
      for (std::size_t j = 0; j + 1 < m; ++j) {
        const std::size_t j2_end = any_zero ? m : j + 2;
        for (std::size_t j2 = j + 1; j2 < j2_end; ++j2) {
          const double det = f(i, j) * f(i2, j2) - f(i2, j) * f(i, j2);
          const bool bad = strict ? det <= kMlrpSlack : det < -kMlrpSlack;
          if (bad) {
            report.holds = false;
            report.violation = MlrpViolation{i, i2, j, j2, det};
            return report;
          }
        }
      }
    }
  }
  return report;
}

MlrpReport check_mlrp(const Experiment& f, bool strict) { return check_mlrp(f.matrix(), strict); }

const char* direction_kind_name(DirectionKind kind) {
  switch (kind) {
    case DirectionKind::kSignalReplacement: return "signal_replacement";
    case DirectionKind::kReverseUp: return "reverse_up";
    case DirectionKind::kReverseDown: return "reverse_down";
    case DirectionKind::kMixture: return "mixture";
  }
  return "unknown";
}

DirectionKind parse_direction_kind(const std::string& name) {
  for (DirectionKind k : {DirectionKind::kSignalReplacement, DirectionKind::kReverseUp,
                          DirectionKind::kReverseDown, DirectionKind::kMixture}) {
    if (name == direction_kind_name(k)) return k;
  }
  throw Error(ErrorCode::kParseError, "unknown direction kind '" + name + "'");
}

BoundedDirection signal_replacement(const Experiment& f, std::size_t from, std::size_t to) {
  require_signal(f, from);
  require_signal(f, to);
  if (from == to) {
    throw Error(ErrorCode::kInvalidParameter, "signal replacement needs two distinct signals");
  }
  BoundedDirection out;
  Direction& d = out.direction;
  d.kind = DirectionKind::kSignalReplacement;
  d.from = from;
  d.to = to;
  d.delta = Matrix(f.states(), f.signals());
  for (std::size_t i = 0; i < f.states(); ++i) {
    d.delta(i, from) = -f(i, from);
    d.delta(i, to) = f(i, from);
  }
  out.max_step = 1.0;
  return out;
}

double reverse_up_margin(const Experiment& f, std::size_t from, std::size_t cutoff) {
  const std::size_t n = f.states();
  const double lo = f(cutoff, from);
  const double lo_next = f(cutoff, from + 1);
  const double hi = cutoff + 1 < n ? f(cutoff + 1, from) : 0.0;
  const double hi_next = cutoff + 1 < n ? f(cutoff + 1, from + 1) : 1.0;
  return lo * hi_next - hi * lo_next;
}

double reverse_down_margin(const Experiment& f, std::size_t from, std::size_t cutoff) {
  const double prev_lower = cutoff >= 1 ? f(cutoff - 1, from - 1) : 1.0;
  const double prev = cutoff >= 1 ? f(cutoff - 1, from) : 0.0;
  return prev_lower * f(cutoff, from) - f(cutoff, from - 1) * prev;
}

BoundedDirection reverse_up(const Experiment& f, std::size_t from, std::size_t cutoff) {
  require_signal(f, from);
  require_signal(f, from + 1);
  require_state(f, cutoff);
  require_mlrp(f);
  const double margin = reverse_up_margin(f, from, cutoff);
  if (!(margin > kMlrpSlack)) {
    throw Error(ErrorCode::kActivationConditionFailed,
                "upward move of signal " + std::to_string(from) + " through state " +
                    std::to_string(cutoff) + " is inactive");
  }
  const std::size_t n = f.states();
  const double hi = cutoff + 1 < n ? f(cutoff + 1, from) : 0.0;
  const double hi_next = cutoff + 1 < n ? f(cutoff + 1, from + 1) : 1.0;
  BoundedDirection out;
  Direction& d = out.direction;
  d.kind = DirectionKind::kReverseUp;
  d.from = from;
  d.to = from + 1;
  d.cutoff = cutoff;
  d.delta = Matrix(n, f.signals());
  for (std::size_t i = 0; i <= cutoff; ++i) {
    d.delta(i, from) = -f(i, from);
    d.delta(i, from + 1) = f(i, from);
  }
  out.max_step = std::min(1.0, margin / (f(cutoff, from) * (hi_next + hi)));
  return out;
}

BoundedDirection reverse_down(const Experiment& f, std::size_t from, std::size_t cutoff) {
  require_signal(f, from);
  if (from == 0) throw Error(ErrorCode::kIndexOutOfRange, "signal 0 has no lower neighbor");
  require_state(f, cutoff);
  require_mlrp(f);
  const double margin = reverse_down_margin(f, from, cutoff);
  if (!(margin > kMlrpSlack)) {
    throw Error(ErrorCode::kActivationConditionFailed,
                "downward move of signal " + std::to_string(from) + " from state " +
                    std::to_string(cutoff) + " is inactive");
  }
  const double prev_lower = cutoff >= 1 ? f(cutoff - 1, from - 1) : 1.0;
  const double prev = cutoff >= 1 ? f(cutoff - 1, from) : 0.0;
  BoundedDirection out;
  Direction& d = out.direction;
  d.kind = DirectionKind::kReverseDown;
  d.from = from;
  d.to = from - 1;
  d.cutoff = cutoff;
  d.delta = Matrix(f.states(), f.signals());
  for (std::size_t i = cutoff; i < f.states(); ++i) {
    d.delta(i, from) = -f(i, from);
    d.delta(i, from - 1) = f(i, from);
  }
  out.max_step = std::min(1.0, margin / (f(cutoff, from) * (prev_lower + prev)));
  return out;
}

BoundedDirection mixture(const std::vector<BoundedDirection>& parts,
                         const std::vector<double>& coefficients) {
  if (parts.empty() || parts.size() != coefficients.size()) {
    throw Error(ErrorCode::kInvalidParameter, "mixture needs one coefficient per component");
  }
  double total = 0.0;
  for (double c : coefficients) {
    if (!(c >= 0.0)) throw Error(ErrorCode::kInvalidParameter, "mixture weights must be >= 0");
    total += c;
  }
  if (total <= 0.0) throw Error(ErrorCode::kInvalidParameter, "mixture weights sum to zero");
  BoundedDirection out;
  Direction& d = out.direction;
  d.kind = DirectionKind::kMixture;
  d.delta = Matrix(parts[0].direction.delta.rows(), parts[0].direction.delta.cols());
  double bound = 1.0;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    d.delta = d.delta + coefficients[k] * parts[k].direction.delta;
    d.components.push_back(parts[k].direction);
    bound = std::min(bound, parts[k].max_step);
  }
  d.coefficients = coefficients;
  // f + eps * sum c_k D_k is the average of f + eps * total * D_k.
  out.max_step = bound / total;
  return out;
}

BoundedDirection make_direction(const Experiment& f, DirectionKind kind, std::size_t from,
                                std::size_t a) {
  switch (kind) {
    case DirectionKind::kSignalReplacement: return signal_replacement(f, from, a);
    case DirectionKind::kReverseUp: return reverse_up(f, from, a);
    case DirectionKind::kReverseDown: return reverse_down(f, from, a);
    case DirectionKind::kMixture: break;
  }
  throw Error(ErrorCode::kInvalidParameter, "use mixture() to combine directions");
}

Experiment step(const Experiment& f, const Direction& d, double eps) {
  return make_derived(f.matrix() + eps * d.delta);
}

bool is_uninformative(const Experiment& f, double tol) {
  for (std::size_t i = 1; i < f.states(); ++i)
    for (std::size_t j = 0; j < f.signals(); ++j)
      if (std::abs(f(i, j) - f(0, j)) > tol) return false;
  return true;
}

}  // namespace infomono
