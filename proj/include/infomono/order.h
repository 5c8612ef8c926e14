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

#ifndef INFOMONO_ORDER_H_
#define INFOMONO_ORDER_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "infomono/experiment.h"
#include "infomono/matrix.h"
#include "infomono/numeric.h"

namespace infomono {

enum class Relation { kGeq, kLeq, kEquivalent, kIncomparable };

const char* relation_name(Relation r);
Relation parse_relation(const std::string& name);

struct OrderVerdict {
  Relation relation = Relation::kIncomparable;
  std::optional<Matrix> witness_forward;   // f -> g kernel
  std::optional<Matrix> witness_backward;  // g -> f kernel
  std::optional<std::string> refutation;

  // f is at least as informative as g.
  bool dominates() const { return relation == Relation::kGeq || relation == Relation::kEquivalent; }
  bool operator==(const OrderVerdict& other) const = default;
};

// One direction of the garbling problem {M >= 0, M 1 = 1, f M = g}.
struct GarblingFit {
  bool feasible = false;  // residual <= tol.lp
  Matrix kernel;          // best kernel found (rows renormalized)
  double residual = 0.0;  // max |f M - g|
  // Farkas multipliers over the constraints (f M = g rows first, state-major,
  // then one per kernel row); present when infeasible.
  std::vector<double> certificate;
};

GarblingFit fit_garbling(const Experiment& f, const Experiment& g, const Tolerances& tol = {});

// Both directions of the LP. Throws NumericallyIllConditioned when a
// direction's residual falls in (tol.lp, 100 tol.lp].
OrderVerdict blackwell_geq(const Experiment& f, const Experiment& g, const Tolerances& tol = {});

// Forward direction only: true iff some kernel maps f to g. Throws
// NumericallyIllConditioned in the same gray zone as blackwell_geq.
bool blackwell_dominates(const Experiment& f, const Experiment& g, const Tolerances& tol = {});

// a, b in [0,1] minimizing |a f + b (1 - f) - g| over two-signal experiments.
struct ParallelogramFit {
  double a = 0.0;
  double b = 0.0;
  double residual = 0.0;
};
ParallelogramFit fit_parallelogram(const Experiment& f, const Experiment& g);

// Two-signal fast path: g lies in the parallelogram hull of f.
OrderVerdict blackwell_geq_binary(const Experiment& f, const Experiment& g,
                                  const Tolerances& tol = {});

struct AlphaBeta {
  double alpha = 1.0;  // f2 / f1
  double beta = 1.0;   // (1 - f1) / (1 - f2)
};
// Requires two states, two signals and f1 <= f2 in the high column.
AlphaBeta binary_alpha_beta(const Experiment& f);
// Inverse map for finite alpha, beta with alpha * beta > 1.
Experiment binary_from_alpha_beta(double alpha, double beta);

// Likelihood-ratio chains for two-signal MLRP experiments.
OrderVerdict lehmann_geq_binary(const Experiment& f, const Experiment& g,
                                const Tolerances& tol = {});

struct PpCurve {
  std::size_t state = 0;  // compares states `state` and `state2`
  std::size_t state2 = 1;
  std::vector<std::array<double, 2>> points;

  // Slopes nondecreasing (cross products >= -tol).
  bool is_convex(double tol = 1e-12) const;
  // Height of the curve at x in [0,1]; the lowest point when the curve is
  // vertical at x.
  double lower_boundary(double x) const;
};

PpCurve pp_curve(const Experiment& f, std::size_t i);
PpCurve pp_curve(const Experiment& f, std::size_t i, std::size_t i2);

struct LehmannOptions {
  // Also compare PP curves of every state pair (i, i') and log to stderr
  // when the result differs from the adjacent-pair verdict.
  bool verify_all_pairs = false;
};

// PP-curve containment on each adjacent state pair.
OrderVerdict lehmann_geq_mlrp(const Experiment& f, const Experiment& g, const Tolerances& tol = {},
                              const LehmannOptions& options = {});

// One-directional containment: every vertex of g's curve for pair (i, i2)
// lies weakly above f's curve. Returns the worst shortfall (<= 0 when
// contained).
double pp_shortfall(const Experiment& f, const Experiment& g, std::size_t i, std::size_t i2);

// F~^{-1}(G~(y | i) | i) for the piecewise-linear CDFs on [0, m] and [0, m'].
double quantile_transform(const Experiment& f, const Experiment& g, std::size_t i, double y);

// Brute-force check that the quantile transform is nondecreasing in the
// state on a grid of `grid` points plus all breakpoints.
bool lehmann_oracle_quantile(const Experiment& f, const Experiment& g, std::size_t grid = 10000,
                             const Tolerances& tol = {});

}  // namespace infomono

#endif  // INFOMONO_ORDER_H_
