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


#ifndef INFOMONO_COST_H_
#define INFOMONO_COST_H_

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "infomono/experiment.h"
#include "infomono/matrix.h"

namespace infomono {

// An information cost over finite experiments. Values may be +infinity.
class CostFunction {
 public:
  virtual ~CostFunction() = default;

  // Short description used in reports.
  virtual std::string id() const = 0;
  virtual double evaluate(const Experiment& f) const = 0;
  // Analytic gradient with the shape of f. Entries are NaN where the cost is
  // not differentiable; nullopt when no analytic form is available.
  virtual std::optional<Matrix> gradient(const Experiment&) const { return std::nullopt; }
  // Safe to call concurrently from several threads.
  virtual bool reentrant() const { return true; }
  // Fixed dimensions the cost is defined for, if any.
  virtual std::optional<std::size_t> required_states() const { return std::nullopt; }
  virtual std::optional<std::size_t> required_signals() const { return std::nullopt; }
};

using CostPtr = std::shared_ptr<const CostFunction>;

// Function on [0,1]^n applied to columns of an experiment.
struct ColumnFunction {
  std::string name;
  std::function<double(const std::vector<double>&)> value;
  // Optional; may return NaN entries where not differentiable.
  std::function<std::vector<double>(const std::vector<double>&)> gradient;
  std::optional<std::size_t> dimension;  // required column length, if fixed
};

// (sum_i w_i h_i^p)^(1/p), p >= 1, weights positive.
ColumnFunction weighted_p_norm(std::vector<double> weights, double p);
// sqrt(h' A h) for symmetric positive semidefinite A.
ColumnFunction quadratic_form_root(Matrix a);

// Concave function on the probability simplex.
struct SimplexFunction {
  std::string name;
  std::function<double(const std::vector<double>&)> value;
  std::function<std::vector<double>(const std::vector<double>&)> gradient;
};

// -sum q_i log q_i with 0 log 0 = 0.
SimplexFunction shannon_entropy();
// 1 - sum q_i^2.
SimplexFunction gini_impurity();

// Full-support prior; throws PriorSupportError otherwise.
std::vector<double> validate_prior(const std::vector<double>& weights);
std::vector<double> uniform_prior(std::size_t n);

// sum_j psi(f^j) - psi(1).
double eval_likelihood_separable(const ColumnFunction& psi, const Experiment& f);
Matrix likelihood_separable_gradient(const ColumnFunction& psi, const Experiment& f);

// H(mu) - sum_j tau^j H(q^j); signals with tau^j = 0 contribute nothing.
double eval_posterior_separable(const SimplexFunction& h, const std::vector<double>& prior,
                                const Experiment& f);
Matrix posterior_separable_gradient(const SimplexFunction& h, const std::vector<double>& prior,
                                    const Experiment& f);
double eval_entropy_cost(const std::vector<double>& prior, const Experiment& f);

// Nested-logit Bregman cost. `nests` partitions the signal indices; xi in (0,1].
void validate_nests(const std::vector<std::vector<std::size_t>>& nests, std::size_t m);
double eval_bregman_nested_logit(const std::vector<double>& prior,
                                 const std::vector<std::vector<std::size_t>>& nests, double xi,
                                 const Experiment& f);
Matrix bregman_nested_logit_gradient(const std::vector<double>& prior,
                                     const std::vector<std::vector<std::size_t>>& nests,
                                     double xi, const Experiment& f);

enum class Divergence { kKl, kRenyi };
enum class Aggregator { kWeightedSum, kMax };

struct DivergenceSpec {
  Divergence divergence = Divergence::kRenyi;
  double order = 2.0;  // Renyi order, positive; order 1 is KL
  Aggregator aggregator = Aggregator::kMax;
  // n x n nonnegative weights over ordered state pairs (weighted_sum only);
  // empty means all ones.
  Matrix weights;
};

// Divergence between two distributions over the same signals.
double divergence(const DivergenceSpec& spec, const std::vector<double>& p,
                  const std::vector<double>& q);
double eval_statewise_divergence(const DivergenceSpec& spec, const Experiment& f);

enum class BinaryExample { kC1, kC2, kC3, kC4, kMinRatio };

const char* binary_example_name(BinaryExample e);
BinaryExample parse_binary_example(const std::string& name);

// Closed forms on two-state, two-signal experiments with f1 <= f2, where
// (f1, f2) is the high column. Throws NotNormalized when f1 > f2.
double eval_binary_example(BinaryExample e, const Experiment& f);
// (dC/df1, dC/df2) at an interior point; NaN where not differentiable.
std::array<double, 2> binary_example_partials(BinaryExample e, double f1, double f2);

// Factories. The binary example cost relabels signals so that f1 <= f2
// before evaluating.
CostPtr make_likelihood_separable(ColumnFunction psi);
CostPtr make_posterior_separable(SimplexFunction h, std::optional<std::vector<double>> prior = {});
CostPtr make_entropy_cost(std::optional<std::vector<double>> prior = {});
CostPtr make_bregman_nested_logit(std::vector<double> prior,
                                  std::vector<std::vector<std::size_t>> nests, double xi);
CostPtr make_statewise_divergence(DivergenceSpec spec);
CostPtr make_binary_example(BinaryExample e);
CostPtr make_custom(std::string id, std::function<double(const Experiment&)> value,
                    std::function<Matrix(const Experiment&)> gradient = {},
                    bool reentrant = true);

}  // namespace infomono

#endif  // INFOMONO_COST_H_
