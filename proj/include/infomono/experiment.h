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

#ifndef INFOMONO_EXPERIMENT_H_
#define INFOMONO_EXPERIMENT_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "infomono/matrix.h"

namespace infomono {

// Largest state/signal count accepted from external input.
inline constexpr std::size_t kMaxDimension = 64;
// Signal count cap for experiments produced internally (splits grow m).
inline constexpr std::size_t kMaxDerivedSignals = 4096;

// An n x m row-stochastic matrix; entry (i, j) is the probability of signal j
// in state i. States and signals are index-ordered.
class Experiment {
 public:
  // Checks entries and row sums. Rows whose sum deviates by at most
  // `row_tolerance` are renormalized; tiny negative entries within the same
  // tolerance are clamped to zero. A single column is padded with zeros.
  static Experiment validate(const Matrix& raw, double row_tolerance = 1e-9);
  // Same checks with the derived signal cap, but entries are kept bit for bit
  // so that serialized experiments re-parse to equal values.
  static Experiment restore(const Matrix& raw, double row_tolerance = 1e-9);

  std::size_t states() const { return matrix_.rows(); }
  std::size_t signals() const { return matrix_.cols(); }
  double operator()(std::size_t i, std::size_t j) const { return matrix_(i, j); }
  const Matrix& matrix() const { return matrix_; }
  std::vector<double> column(std::size_t j) const { return matrix_.column(j); }

  bool operator==(const Experiment& other) const = default;

 private:
  friend Experiment make_derived(const Matrix& raw);
  friend Experiment permute(const Experiment& f, const std::vector<std::size_t>& perm);
  explicit Experiment(Matrix m) : matrix_(std::move(m)) {}
  Matrix matrix_;
};

// Same checks as Experiment::validate with the derived signal cap.
Experiment make_derived(const Matrix& raw);

// Row-stochastic garbling kernel, m rows by m2 columns.
Matrix validate_stochastic(const Matrix& raw, double row_tolerance = 1e-9);

Experiment garble(const Experiment& f, const Matrix& kernel);

// Column k of the result is column perm[k] of f.
Experiment permute(const Experiment& f, const std::vector<std::size_t>& perm);
std::vector<std::size_t> inverse_permutation(const std::vector<std::size_t>& perm);

// Column j becomes (1 - lambda) f^j followed by lambda f^j.
Experiment split_signal(const Experiment& f, std::size_t j, double lambda);

// Column j becomes f^j + f^k and column k is removed.
Experiment merge_signals(const Experiment& f, std::size_t j, std::size_t k);
// Kernel M with garble(f, M) == merge_signals(f, j, k).
Matrix merge_kernel(std::size_t m, std::size_t j, std::size_t k);

// Binary experiment [1 - h, h] from the high-signal column h.
Experiment binary_experiment(const std::vector<double>& high);
// High-signal column of a two-signal experiment.
std::vector<double> high_column(const Experiment& f);

struct MlrpViolation {
  std::size_t state;
  std::size_t state2;
  std::size_t signal;
  std::size_t signal2;
  double determinant;  // f(s|w) f(s'|w') - f(s|w') f(s'|w)
};

struct MlrpReport {
  bool holds = true;
  std::optional<MlrpViolation> violation;
};

// Nonnegative 2x2 minors on adjacent pairs (all pairs when any entry is
// exactly zero). `strict` demands minors above the slack instead.
MlrpReport check_mlrp(const Experiment& f, bool strict = false);
MlrpReport check_mlrp(const Matrix& f, bool strict = false);
inline bool is_mlrp(const Experiment& f) { return check_mlrp(f).holds; }

enum class DirectionKind { kSignalReplacement, kReverseUp, kReverseDown, kMixture };

const char* direction_kind_name(DirectionKind kind);
DirectionKind parse_direction_kind(const std::string& name);

// A perturbation of an experiment with zero row sums.
//
// kSignalReplacement: mass of signal `from` moves to `to` in every state.
// kReverseUp: mass of `from` moves to `to` = from + 1 in states 0..cutoff.
// kReverseDown: mass of `from` moves to `to` = from - 1 in states
// cutoff..n-1.
struct Direction {
  DirectionKind kind = DirectionKind::kSignalReplacement;
  std::size_t from = 0;
  std::size_t to = 0;
  std::size_t cutoff = 0;
  Matrix delta;
  std::vector<double> coefficients;   // kMixture only
  std::vector<Direction> components;  // kMixture only
};

struct BoundedDirection {
  Direction direction;
  double max_step = 0.0;  // f + eps * delta stays admissible for eps in [0, max_step]
};

BoundedDirection signal_replacement(const Experiment& f, std::size_t from, std::size_t to);
// Requires MLRP and the strict activation condition at `cutoff`.
BoundedDirection reverse_up(const Experiment& f, std::size_t from, std::size_t cutoff);
BoundedDirection reverse_down(const Experiment& f, std::size_t from, std::size_t cutoff);
// Nonnegative combination; max_step is the smallest admissible step of the
// rescaled components.
BoundedDirection mixture(const std::vector<BoundedDirection>& parts,
                         const std::vector<double>& coefficients);

// Dispatch by kind; `a` is the target (replacement) or cutoff (reverse kinds).
BoundedDirection make_direction(const Experiment& f, DirectionKind kind, std::size_t from,
                                std::size_t a);

// Activation margin of a reverse move: positive iff the move is active.
double reverse_up_margin(const Experiment& f, std::size_t from, std::size_t cutoff);
double reverse_down_margin(const Experiment& f, std::size_t from, std::size_t cutoff);

// f + eps * delta, revalidated.
Experiment step(const Experiment& f, const Direction& d, double eps);

// Identical rows.
bool is_uninformative(const Experiment& f, double tol = 1e-12);

}  // namespace infomono

#endif  // INFOMONO_EXPERIMENT_H_
