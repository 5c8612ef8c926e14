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


#ifndef INFOMONO_AUDIT_H_
#define INFOMONO_AUDIT_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "infomono/cost.h"
#include "infomono/experiment.h"
#include "infomono/matrix.h"
#include "infomono/numeric.h"
#include "infomono/rng.h"

namespace infomono {

// One-sided directional derivative D+C(f; delta).
struct DirectionalDerivative {
  double value = 0.0;
  double error = 0.0;       // estimated absolute error
  std::string method;       // "analytic" or "richardson"
};

// Analytic <grad C, delta> when the gradient is finite wherever delta is
// nonzero; otherwise one-sided quotients at {1e-4, 1e-5, 1e-6} * max_step
// combined by Richardson extrapolation. Throws DirectionInfeasible when
// max_step is zero.
DirectionalDerivative directional_derivative(const CostFunction& c, const Experiment& f,
                                             const BoundedDirection& d);

struct GradientEstimate {
  Matrix matrix;
  std::string method;       // "analytic" or "central_difference"
  double step = 0.0;        // difference step, 0 for analytic
  double error_bound = 0.0;
};

// Analytic gradient when available; otherwise central differences along
// e_ij - e_i0 (rows are determined up to a constant, so column 0 is zero).
GradientEstimate estimate_gradient(const CostFunction& c, const Experiment& f,
                                   double step = 1e-5);

enum class CheckStatus { kPass, kFail, kSkipped, kWarning };
const char* check_status_name(CheckStatus s);
CheckStatus parse_check_status(const std::string& name);

// A single audited inequality: value <= threshold passes.
struct Check {
  Check(std::string condition_name, Experiment at)
      : condition(std::move(condition_name)), point(std::move(at)) {}

  std::string condition;
  Experiment point;
  std::optional<Experiment> other;    // second experiment of pairwise checks
  std::vector<std::size_t> indices;   // (from, to), (from, cutoff), permutation, ...
  double parameter = 0.0;             // step, split weight or mixture weight
  double value = 0.0;
  double threshold = 0.0;
  CheckStatus status = CheckStatus::kPass;
  std::string note;

  bool operator==(const Check& other) const = default;
};

// <grad C, f^{j->k}> <= tol.audit + error for all j != k.
std::vector<Check> check_signal_replacement(const CostFunction& c, const Experiment& f,
                                            const Tolerances& tol = {});
// Active reverse moves only; inactive ones are reported as skipped. Throws
// MlrpViolated when f is not MLRP.
std::vector<Check> check_reverse_signal_replacement(const CostFunction& c, const Experiment& f,
                                                    const Tolerances& tol = {});
// All m! permutations when m <= 5, otherwise `trials` random ones.
std::vector<Check> check_permutation_invariance(const CostFunction& c, const Experiment& f,
                                                std::size_t trials, Rng& rng,
                                                const Tolerances& tol = {});
// Random (j, lambda) plus lambda in {0, 1}.
std::vector<Check> check_split_invariance(const CostFunction& c, const Experiment& f,
                                          std::size_t trials, Rng& rng,
                                          const Tolerances& tol = {});
// C((1 - w) f + w g) <= max(C(f), C(g)) over the weights.
std::vector<Check> check_quasiconvexity(const CostFunction& c, const Experiment& f,
                                        const Experiment& g, const std::vector<double>& weights,
                                        const Tolerances& tol = {});
// Same for garblings f M_1, f M_2 of a common f.
std::vector<Check> check_garbling_quasiconvexity(const CostFunction& c, const Experiment& f,
                                                 const Matrix& m1, const Matrix& m2,
                                                 const std::vector<double>& weights,
                                                 const Tolerances& tol = {});
// Random pairs (same shape) for the two quasiconvexity variants.
std::vector<Check> quasiconvexity_sweep(const CostFunction& c, std::size_t trials, Rng& rng,
                                        std::size_t n, std::size_t m, bool garbling,
                                        const Tolerances& tol = {});

// Two states, two signals: f2/f1 >= -(dC/df1)/(dC/df2) >= (1-f2)/(1-f1) with
// (f1, f2) the high column. Uses the cross-multiplied form when dC/df2 <= 0.
Check binary_mrit_check(const CostFunction& c, const Experiment& f, const Tolerances& tol = {});
// The cone form <grad C, 1 - f> <= tol and <grad C, -f> <= tol on the high
// column.
Check binary_cone_check(const CostFunction& c, const Experiment& f, const Tolerances& tol = {});

struct ConditionSummary {
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  std::size_t warnings = 0;
  double worst_excess = -1e300;  // max(value - threshold) over evaluated checks

  bool operator==(const ConditionSummary& other) const = default;
};

enum class Verdict { kConsistent, kCounterexample, kNumericalWarning };
const char* verdict_name(Verdict v);
Verdict parse_verdict(const std::string& name);
int verdict_exit_code(Verdict v);

struct AuditReport {
  std::string cost_id;
  std::string order;  // "blackwell", "lehmann" or "binary_grid"
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  Verdict verdict = Verdict::kConsistent;
  std::map<std::string, ConditionSummary> summary;
  std::vector<Check> checks;  // failures and warnings, in sample order
  std::size_t unlisted = 0;   // non-passing checks beyond max_listed

  bool operator==(const AuditReport& other) const = default;
};

struct AuditConfig {
  std::size_t budget = 1000;  // sampled experiments
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  Tolerances tol;
  std::size_t max_states = 4;
  std::size_t max_signals = 4;
  std::size_t max_listed = 50;
  bool necessity_search = true;
};

// Local suites (signal replacement, permutation and split invariance) plus
// garbling pairs (f, f M) on sampled interior experiments.
AuditReport audit_blackwell(const CostFunction& c, const AuditConfig& config);
// Reverse replacement and split suites on sampled MLRP experiments plus pairs
// generated by chains of reverse replacements, splits and adjacent merges.
AuditReport audit_lehmann(const CostFunction& c, const AuditConfig& config);
// Signal replacement and slope checks at every interior grid point
// (a/(r+1), b/(r+1)) with a <= b of the normalized two-signal square.
AuditReport audit_binary_grid(const CostFunction& c, std::size_t resolution,
                              const Tolerances& tol = {}, std::size_t max_listed = 50);

}  // namespace infomono

#endif  // INFOMONO_AUDIT_H_
