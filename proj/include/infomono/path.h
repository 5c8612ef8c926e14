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


#ifndef INFOMONO_PATH_H_
#define INFOMONO_PATH_H_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "infomono/cost.h"
#include "infomono/experiment.h"
#include "infomono/matrix.h"
#include "infomono/numeric.h"

namespace infomono {

// Informativeness-decreasing paths with per-step certificates.

enum class PathKind { kBinaryBlackwell, kBinaryLehmann, kGeneralBlackwell, kLehmannRemoval, kLehmannFull };
const char* path_kind_name(PathKind k);
PathKind parse_path_kind(const std::string& name);
// Lehmann kinds require MLRP at every step and reverse replacements only.
bool is_lehmann_kind(PathKind k);

// kMove: experiment = previous + direction evaluated at the previous
//   experiment (a nonnegative mixture of replacement moves).
// kSplit: column `signal` of the previous experiment becomes
//   (1 - lambda) f^j followed by lambda f^j (lambda = 0 inserts a zero column).
// kMerge: column `other` is added into `signal` and removed.
// kPermute: column k is column permutation[k] of the previous experiment.
enum class StepOp { kStart, kMove, kSplit, kMerge, kPermute };
const char* step_op_name(StepOp op);
StepOp parse_step_op(const std::string& name);

struct PathStep {
  explicit PathStep(Experiment e) : experiment(std::move(e)) {}

  Experiment experiment;
  StepOp op = StepOp::kStart;
  std::size_t segment = 0;  // continuous segment this step belongs to
  double t = 0.0;           // segment parameter in [0, 1]
  Direction direction;      // kMove: kMixture of coefficient-weighted moves
  std::size_t signal = 0;   // kSplit, kMerge
  std::size_t other = 0;    // kMerge
  double lambda = 0.0;      // kSplit
  std::vector<std::size_t> permutation;  // kPermute
};

struct Path {
  Path(PathKind k, Experiment from, Experiment to)
      : kind(k), source(std::move(from)), target(std::move(to)) {}

  PathKind kind;
  Experiment source;
  Experiment target;
  // steps[0] is kStart and holds the source.
  std::vector<PathStep> steps;
  // Target column k is the sum of final columns target_groups[k]; final
  // columns not listed anywhere must be zero.
  std::vector<std::vector<std::size_t>> target_groups;

  const Experiment& final_experiment() const { return steps.back().experiment; }
};

// Mass moved by `d` at `h`: replacement kinds move the whole `from` column
// (within the cutoff range); mixtures add coefficient-weighted components.
Matrix move_delta(const Experiment& h, const Direction& d);

// Two signals, any number of states. Segments f -> f' -> g with
// f' = ((a - b) / (1 - b)) f in the high column (f' = 1 when b = 1), where
// g = a f + b (1 - f) and a >= b; when only the relabelled target fits, the
// path ends with a permutation step. Throws NotComparable.
Path binary_blackwell_path(const Experiment& f, const Experiment& g, std::size_t samples = 16,
                           const Tolerances& tol = {});

struct BinaryLehmannDecomposition {
  // States 0..k-1 move mass upward; states k..n-1 move mass downward.
  std::size_t k = 0;
  std::vector<double> epsilon;  // per-state replacement fractions
  std::vector<double> e;        // per-segment fractions of the chained moves
};

// Two-signal MLRP experiments with f >=_L g. Throws NotComparable.
BinaryLehmannDecomposition binary_lehmann_fractions(const Experiment& f, const Experiment& g,
                                                    const Tolerances& tol = {});
// Chain of single reverse replacements h^k -> ... -> h^1 -> h^{k+1} -> ... -> h^n.
Path binary_lehmann_path(const Experiment& f, const Experiment& g, std::size_t samples = 16,
                         const Tolerances& tol = {});

// phi(t) = [(1 - t) f, t g] through m + m' signals, driven by the witness
// kernel. Throws WitnessInvalid when f * kernel differs from g by more than
// tol.lp.
Path general_blackwell_path(const Experiment& f, const Experiment& g, const Matrix& kernel,
                            std::size_t samples = 16, const Tolerances& tol = {});
// Finds the kernel with the garbling LP. Throws NotComparable.
Path general_blackwell_path(const Experiment& f, const Experiment& g, std::size_t samples = 16,
                            const Tolerances& tol = {});

struct RemovalResult {
  Experiment result;
  Path path;
  bool degenerate = false;  // the points were already collinear
};

// Removes the region below the chord between cumulative points j and k
// (0 <= j, j + 1 < k <= m) of the PP curve for states (state, state + 1)
// by rotating a line about cumulative point j. Other PP curves are unchanged
// as point sets. Requires MLRP and positive likelihoods in both states for
// columns j..k-1; throws MlrpViolated, IndexOutOfRange or DomainError.
RemovalResult lehmann_removal(const Experiment& f, std::size_t state, std::size_t j,
                              std::size_t k, std::size_t samples = 16);

// Shrinks every PP curve of f onto g's by chord removals, then splits the
// result into a common refinement with g. Throws NotComparable or
// IterationLimit (10 n m removals).
Path lehmann_path(const Experiment& f, const Experiment& g, std::size_t samples = 16,
                  const Tolerances& tol = {});

struct PathIssue {
  std::size_t step = 0;
  std::string check;  // validate, mlrp, operation, order, cost, source, endpoint
  std::string detail;
};

struct PathCheckOptions {
  Tolerances tol;
  std::vector<CostPtr> costs;  // each must be nonincreasing along the path
  bool check_order = true;
  std::size_t workers = 1;
};

struct PathVerification {
  bool ok = true;
  std::size_t steps = 0;
  double max_operation_error = 0.0;
  double endpoint_error = 0.0;
  std::vector<PathIssue> issues;
};

// Replays every step: each experiment validates (and is MLRP on Lehmann
// paths), each operation reproduces the next experiment to 1e-9, consecutive
// experiments are ordered by the matching checker, costs do not increase, and
// the final experiment regroups into the target to 1e-9.
PathVerification verify_path(const Path& path, const PathCheckOptions& options = {});

}  // namespace infomono

#endif  // INFOMONO_PATH_H_
