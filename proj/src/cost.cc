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


#include "infomono/cost.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <utility>

#include "infomono/errors.h"
#include "infomono/numeric.h"

namespace infomono {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double xlogy(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(y); }

void check_prior_size(const std::vector<double>& prior, const Experiment& f) {
  if (prior.size() != f.states()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "prior has " + std::to_string(prior.size()) + " weights for " +
                    std::to_string(f.states()) + " states");
  }
}

// Signal probabilities tau^j and posteriors q^j (columns of the result).
std::vector<double> signal_probabilities(const std::vector<double>& prior, const Experiment& f) {
  std::vector<double> tau(f.signals(), 0.0);
  for (std::size_t j = 0; j < f.signals(); ++j)
    for (std::size_t i = 0; i < f.states(); ++i) tau[j] += prior[i] * f(i, j);
  return tau;
}

std::vector<double> posterior(const std::vector<double>& prior, const Experiment& f,
                              std::size_t j, double tau) {
  std::vector<double> q(f.states());
  for (std::size_t i = 0; i < f.states(); ++i) q[i] = prior[i] * f(i, j) / tau;
  return q;
}

void require_two_by_two(const Experiment& f) {
  if (f.signals() != 2) {
    throw Error(ErrorCode::kNotBinary, "expected two signals, got " + std::to_string(f.signals()));
  }
  if (f.states() != 2) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected two states, got " + std::to_string(f.states()));
  }
}

double binary_value(BinaryExample e, double f1, double f2) {
  switch (e) {
    case BinaryExample::kC1: {
      const double r = ratio(f2, f1);
      const double s = ratio(1.0 - f2, 1.0 - f1);
      const double a = (r - 1.0) * (r - 1.0);
      const double b = 1.0 - s;
      return b == 0.0 ? 0.0 : a * b;
    }
    case BinaryExample::kC2:
      return ratio(f2 * (1.0 - f2), f1 * (1.0 - f1)) - 1.0;
    case BinaryExample::kC3:
      return (f2 - f1) * (f2 - f1);
    case BinaryExample::kC4:
      return f2 - 2.0 * f1;
    case BinaryExample::kMinRatio:
      return std::min(ratio(f2, f1), ratio(1.0 - f1, 1.0 - f2));
  }
  return kNaN;
}

class LikelihoodSeparableCost : public CostFunction {
 public:
  explicit LikelihoodSeparableCost(ColumnFunction psi) : psi_(std::move(psi)) {}
  std::string id() const override { return "likelihood_separable(" + psi_.name + ")"; }
  double evaluate(const Experiment& f) const override { return eval_likelihood_separable(psi_, f); }
  std::optional<Matrix> gradient(const Experiment& f) const override {
    if (!psi_.gradient) return std::nullopt;
    return likelihood_separable_gradient(psi_, f);
  }
  std::optional<std::size_t> required_states() const override { return psi_.dimension; }

 private:
  ColumnFunction psi_;
};

class PosteriorSeparableCost : public CostFunction {
 public:
  PosteriorSeparableCost(SimplexFunction h, std::optional<std::vector<double>> prior)
      : h_(std::move(h)), prior_(std::move(prior)) {
    if (prior_) prior_ = validate_prior(*prior_);
  }
  std::string id() const override { return "posterior_separable(" + h_.name + ")"; }
  double evaluate(const Experiment& f) const override {
    return eval_posterior_separable(h_, prior_for(f), f);
  }
  std::optional<Matrix> gradient(const Experiment& f) const override {
    if (!h_.gradient) return std::nullopt;
    return posterior_separable_gradient(h_, prior_for(f), f);
  }
  std::optional<std::size_t> required_states() const override {
    if (prior_) return prior_->size();
    return std::nullopt;
  }

 private:
  std::vector<double> prior_for(const Experiment& f) const {
    return prior_ ? *prior_ : uniform_prior(f.states());
  }
  SimplexFunction h_;
  std::optional<std::vector<double>> prior_;
};

class BregmanCost : public CostFunction {
 public:
  BregmanCost(std::vector<double> prior, std::vector<std::vector<std::size_t>> nests, double xi)
      : prior_(validate_prior(prior)), nests_(std::move(nests)), xi_(xi) {
    std::size_t m = 0;
    for (const auto& nest : nests_) m += nest.size();
    validate_nests(nests_, m);
    if (!(xi_ > 0.0 && xi_ <= 1.0)) {
      throw Error(ErrorCode::kInvalidXi, "nesting parameter must lie in (0, 1], got " + fmt(xi_));
    }
    m_ = m;
  }
  std::string id() const override { return "bregman_nested_logit(xi=" + fmt(xi_) + ")"; }
  double evaluate(const Experiment& f) const override {
    return eval_bregman_nested_logit(prior_, nests_, xi_, f);
  }
  std::optional<Matrix> gradient(const Experiment& f) const override {
    return bregman_nested_logit_gradient(prior_, nests_, xi_, f);
  }
  std::optional<std::size_t> required_states() const override { return prior_.size(); }
  std::optional<std::size_t> required_signals() const override { return m_; }

 private:
  std::vector<double> prior_;
  std::vector<std::vector<std::size_t>> nests_;
  double xi_;
  std::size_t m_ = 0;
};

class StatewiseDivergenceCost : public CostFunction {
 public:
  explicit StatewiseDivergenceCost(DivergenceSpec spec) : spec_(std::move(spec)) {
    if (!(spec_.order > 0.0) || !std::isfinite(spec_.order)) {
      throw Error(ErrorCode::kInvalidParameter, "Renyi order must be positive and finite");
    }
    for (std::size_t r = 0; r < spec_.weights.rows(); ++r)
      for (std::size_t c = 0; c < spec_.weights.cols(); ++c)
        if (!(spec_.weights(r, c) >= 0.0)) {
          throw Error(ErrorCode::kInvalidParameter, "aggregator weights must be nonnegative");
        }
  }
  std::string id() const override {
    std::string d = spec_.divergence == Divergence::kKl ? "kl" : "renyi(" + fmt(spec_.order) + ")";
    return "statewise_divergence(" + d + "," +
           (spec_.aggregator == Aggregator::kMax ? "max" : "weighted_sum") + ")";
  }
  double evaluate(const Experiment& f) const override {
    return eval_statewise_divergence(spec_, f);
  }
  std::optional<std::size_t> required_states() const override {
    if (spec_.weights.rows() > 0) return spec_.weights.rows();
    return std::nullopt;
  }

 private:
  DivergenceSpec spec_;
};

class BinaryExampleCost : public CostFunction {
 public:
  explicit BinaryExampleCost(BinaryExample e) : e_(e) {}
  std::string id() const override { return std::string("binary_example(") + binary_example_name(e_) + ")"; }
  double evaluate(const Experiment& f) const override {
    require_two_by_two(f);
    const std::size_t hc = high(f);
    return binary_value(e_, f(0, hc), f(1, hc));
  }
  std::optional<Matrix> gradient(const Experiment& f) const override {
    require_two_by_two(f);
    const std::size_t hc = high(f);
    const auto d = binary_example_partials(e_, f(0, hc), f(1, hc));
    Matrix g(2, 2);
    g(0, hc) = d[0];
    g(1, hc) = d[1];
    return g;
  }
  std::optional<std::size_t> required_states() const override { return 2; }
  std::optional<std::size_t> required_signals() const override { return 2; }

 private:
  // Column playing the role of the high signal after relabeling to f1 <= f2.
  static std::size_t high(const Experiment& f) { return f(0, 1) <= f(1, 1) ? 1 : 0; }
  BinaryExample e_;
};

class CustomCost : public CostFunction {
 public:
  CustomCost(std::string id, std::function<double(const Experiment&)> value,
             std::function<Matrix(const Experiment&)> gradient, bool reentrant)
      : id_(std::move(id)), value_(std::move(value)), gradient_(std::move(gradient)),
        reentrant_(reentrant) {}
  std::string id() const override { return id_; }
  double evaluate(const Experiment& f) const override { return value_(f); }
  std::optional<Matrix> gradient(const Experiment& f) const override {
    if (!gradient_) return std::nullopt;
    return gradient_(f);
  }
  bool reentrant() const override { return reentrant_; }

 private:
  std::string id_;
  std::function<double(const Experiment&)> value_;
  std::function<Matrix(const Experiment&)> gradient_;
  bool reentrant_;
};

}  // namespace

ColumnFunction weighted_p_norm(std::vector<double> weights, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::kInvalidParameter, "p-norm exponent must be finite and >= 1");
  }
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::kInvalidParameter, "p-norm weights must be positive");
    }
  }
  ColumnFunction psi;
  psi.name = "weighted_p_norm(p=" + fmt(p) + ")";
  psi.dimension = weights.size();
  auto check = [weights](const std::vector<double>& h) {
    if (h.size() != weights.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "p-norm has " + std::to_string(weights.size()) +
                                                     " weights for a column of length " +
                                                     std::to_string(h.size()));
    }
  };
  psi.value = [weights, p, check](const std::vector<double>& h) {
    check(h);
    double s = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) s += weights[i] * std::pow(h[i], p);
    return std::pow(s, 1.0 / p);
  };
  psi.gradient = [weights, p, check](const std::vector<double>& h) {
    check(h);
    std::vector<double> g(h.size());
    if (p == 1.0) return weights;
    double s = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) s += weights[i] * std::pow(h[i], p);
    const double denom = std::pow(s, (p - 1.0) / p);
    for (std::size_t i = 0; i < h.size(); ++i) {
      g[i] = s > 0.0 ? weights[i] * std::pow(h[i], p - 1.0) / denom : kNaN;
    }
    return g;
  };
  return psi;
}

ColumnFunction quadratic_form_root(Matrix a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "quadratic form matrix must be square");
  }
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < r; ++c)
      if (std::abs(a(r, c) - a(c, r)) > 1e-12) {
        throw Error(ErrorCode::kInvalidParameter, "quadratic form matrix must be symmetric");
      }
  ColumnFunction psi;
  psi.name = "quadratic_form_root";
  psi.dimension = a.rows();
  auto apply = [a](const std::vector<double>& h) {
    if (h.size() != a.rows()) {
      throw Error(ErrorCode::kDimensionMismatch, "quadratic form is " + std::to_string(a.rows()) +
                                                     "-dimensional, column has length " +
                                                     std::to_string(h.size()));
    }
    std::vector<double> ah(h.size(), 0.0);
    for (std::size_t r = 0; r < h.size(); ++r)
      for (std::size_t c = 0; c < h.size(); ++c) ah[r] += a(r, c) * h[c];
    return ah;
  };
  psi.value = [apply](const std::vector<double>& h) {
    const auto ah = apply(h);
    return std::sqrt(std::max(0.0, std::inner_product(h.begin(), h.end(), ah.begin(), 0.0)));
  };
  psi.gradient = [apply](const std::vector<double>& h) {
    auto ah = apply(h);
    const double v = std::sqrt(std::max(0.0, std::inner_product(h.begin(), h.end(), ah.begin(), 0.0)));
    for (double& x : ah) x = v > 0.0 ? x / v : kNaN;
    return ah;
  };
  return psi;
}

SimplexFunction shannon_entropy() {
  SimplexFunction h;
  h.name = "entropy";
  h.value = [](const std::vector<double>& q) {
    double s = 0.0;
    for (double x : q) s -= xlogy(x, x);
    return s;
  };
  h.gradient = [](const std::vector<double>& q) {
    std::vector<double> g(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) g[i] = -std::log(q[i]) - 1.0;
    return g;
  };
  return h;
}

SimplexFunction gini_impurity() {
  SimplexFunction h;
  h.name = "gini";
  h.value = [](const std::vector<double>& q) {
    double s = 1.0;
    for (double x : q) s -= x * x;
    return s;
  };
  h.gradient = [](const std::vector<double>& q) {
    std::vector<double> g(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) g[i] = -2.0 * q[i];
    return g;
  };
  return h;
}

std::vector<double> validate_prior(const std::vector<double>& weights) {
  if (weights.empty()) throw Error(ErrorCode::kPriorSupportError, "prior is empty");
  double sum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights[i]) || !(weights[i] > 0.0)) {
      throw Error(ErrorCode::kPriorSupportError,
                  "prior weight " + std::to_string(i) + " is " + fmt(weights[i]) +
                      "; a full-support prior is required");
    }
    sum += weights[i];
  }
  if (std::abs(sum - 1.0) > kRowTolerance) {
    throw Error(ErrorCode::kPriorSupportError, "prior sums to " + fmt(sum));
  }
  std::vector<double> out(weights);
  for (double& w : out) w /= sum;
  return out;
}

std::vector<double> uniform_prior(std::size_t n) {
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

double eval_likelihood_separable(const ColumnFunction& psi, const Experiment& f) {
  double total = -psi.value(std::vector<double>(f.states(), 1.0));
  for (std::size_t j = 0; j < f.signals(); ++j) {
    const std::vector<double> col = f.column(j);
    for (double x : col) {
      if (!(x >= 0.0 && x <= 1.0)) {
        throw Error(ErrorCode::kDomainError, "column " + std::to_string(j) + " leaves [0,1]^n");
      }
    }
    total += psi.value(col);
  }
  return total;
}

Matrix likelihood_separable_gradient(const ColumnFunction& psi, const Experiment& f) {
  if (!psi.gradient) throw Error(ErrorCode::kInvalidParameter, psi.name + " has no gradient");
  Matrix g(f.states(), f.signals());
  for (std::size_t j = 0; j < f.signals(); ++j) {
    const std::vector<double> d = psi.gradient(f.column(j));
    for (std::size_t i = 0; i < f.states(); ++i) g(i, j) = d[i];
  }
  return g;
}

double eval_posterior_separable(const SimplexFunction& h, const std::vector<double>& prior,
                                const Experiment& f) {
  check_prior_size(prior, f);
  const std::vector<double> tau = signal_probabilities(prior, f);
  double total = h.value(prior);
  for (std::size_t j = 0; j < f.signals(); ++j) {
    if (tau[j] <= 0.0) continue;
    total -= tau[j] * h.value(posterior(prior, f, j, tau[j]));
  }
  return total;
}

Matrix posterior_separable_gradient(const SimplexFunction& h, const std::vector<double>& prior,
                                    const Experiment& f) {
  if (!h.gradient) throw Error(ErrorCode::kInvalidParameter, h.name + " has no gradient");
  check_prior_size(prior, f);
  const std::vector<double> tau = signal_probabilities(prior, f);
  Matrix g(f.states(), f.signals(), kNaN);
  for (std::size_t j = 0; j < f.signals(); ++j) {
    if (tau[j] <= 0.0) continue;
    const std::vector<double> q = posterior(prior, f, j, tau[j]);
    const std::vector<double> dh = h.gradient(q);
    const double hq = h.value(q);
    double mean = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i)
      if (q[i] != 0.0) mean += dh[i] * q[i];
    for (std::size_t i = 0; i < q.size(); ++i) g(i, j) = -prior[i] * (hq + dh[i] - mean);
  }
  return g;
}

double eval_entropy_cost(const std::vector<double>& prior, const Experiment& f) {
  return eval_posterior_separable(shannon_entropy(), validate_prior(prior), f);
}

void validate_nests(const std::vector<std::vector<std::size_t>>& nests, std::size_t m) {
  std::vector<int> seen(m, 0);
  for (const auto& nest : nests) {
    if (nest.empty()) throw Error(ErrorCode::kInvalidNestPartition, "empty nest");
    for (std::size_t j : nest) {
      if (j >= m) {
        throw Error(ErrorCode::kInvalidNestPartition,
                    "signal " + std::to_string(j) + " out of range for " + std::to_string(m) +
                        " signals");
      }
      if (seen[j]++) {
        throw Error(ErrorCode::kInvalidNestPartition,
                    "signal " + std::to_string(j) + " appears in more than one nest");
      }
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (!seen[j]) {
      throw Error(ErrorCode::kInvalidNestPartition, "signal " + std::to_string(j) + " is in no nest");
    }
  }
}

namespace {

struct NestedPosteriors {
  Matrix q;       // q(i, j) signal posteriors, NaN when tau^j = 0
  Matrix q_nest;  // q_nest(i, j) posterior of the nest containing j
};

NestedPosteriors nested_posteriors(const std::vector<double>& prior,
                                   const std::vector<std::vector<std::size_t>>& nests,
                                   const Experiment& f) {
  const std::size_t n = f.states();
  const std::size_t m = f.signals();
  check_prior_size(prior, f);
  validate_nests(nests, m);
  NestedPosteriors out{Matrix(n, m, kNaN), Matrix(n, m, kNaN)};
  const std::vector<double> tau = signal_probabilities(prior, f);
  for (std::size_t j = 0; j < m; ++j) {
    if (tau[j] <= 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) out.q(i, j) = prior[i] * f(i, j) / tau[j];
  }
  for (const auto& nest : nests) {
    std::vector<double> mass(n, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j : nest) mass[i] += prior[i] * f(i, j);
      total += mass[i];
    }
    if (total <= 0.0) continue;
    for (std::size_t j : nest)
      for (std::size_t i = 0; i < n; ++i) out.q_nest(i, j) = mass[i] / total;
  }
  return out;
}

}  // namespace

double eval_bregman_nested_logit(const std::vector<double>& prior,
                                 const std::vector<std::vector<std::size_t>>& nests, double xi,
                                 const Experiment& f) {
  if (!(xi > 0.0 && xi <= 1.0)) {
    throw Error(ErrorCode::kInvalidXi, "nesting parameter must lie in (0, 1], got " + fmt(xi));
  }
  const NestedPosteriors post = nested_posteriors(prior, nests, f);
  double total = 0.0;
  for (std::size_t i = 0; i < f.states(); ++i) {
    total -= xlogy(prior[i], prior[i]);
    for (std::size_t j = 0; j < f.signals(); ++j) {
      const double w = prior[i] * f(i, j);
      if (w == 0.0) continue;
      total += w * (xi * std::log(post.q(i, j)) + (1.0 - xi) * std::log(post.q_nest(i, j)));
    }
  }
  return total;
}

Matrix bregman_nested_logit_gradient(const std::vector<double>& prior,
                                     const std::vector<std::vector<std::size_t>>& nests,
                                     double xi, const Experiment& f) {
  if (!(xi > 0.0 && xi <= 1.0)) {
    throw Error(ErrorCode::kInvalidXi, "nesting parameter must lie in (0, 1], got " + fmt(xi));
  }
  const NestedPosteriors post = nested_posteriors(prior, nests, f);
  Matrix g(f.states(), f.signals());
  for (std::size_t i = 0; i < f.states(); ++i)
    for (std::size_t j = 0; j < f.signals(); ++j) {
      g(i, j) = prior[i] * (xi * std::log(post.q(i, j)) +
                            (1.0 - xi) * std::log(post.q_nest(i, j)));
    }
  return g;
}

double divergence(const DivergenceSpec& spec, const std::vector<double>& p,
                  const std::vector<double>& q) {
  if (p.size() != q.size()) throw Error(ErrorCode::kDimensionMismatch, "distribution lengths differ");
  const bool kl = spec.divergence == Divergence::kKl || spec.order == 1.0;
  if (kl) {
    double s = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (p[k] == 0.0) continue;
      if (q[k] == 0.0) return kInf;
      s += p[k] * std::log(p[k] / q[k]);
    }
    return std::max(0.0, s);
  }
  const double a = spec.order;
  double s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0.0) continue;
    if (q[k] == 0.0) {
      if (a > 1.0) return kInf;
      continue;
    }
    s += std::pow(p[k], a) * std::pow(q[k], 1.0 - a);
  }
  if (s <= 0.0) return kInf;
  return std::max(0.0, std::log(s) / (a - 1.0));
}

double eval_statewise_divergence(const DivergenceSpec& spec, const Experiment& f) {
  const std::size_t n = f.states();
  const bool weighted = spec.aggregator == Aggregator::kWeightedSum;
  if (weighted && spec.weights.rows() > 0 &&
      (spec.weights.rows() != n || spec.weights.cols() != n)) {
    throw Error(ErrorCode::kDimensionMismatch, "aggregator weights must be n x n");
  }
  std::vector<std::vector<double>> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = f.matrix().row(i);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t i2 = 0; i2 < n; ++i2) {
      if (i == i2) continue;
      const double w = weighted && spec.weights.rows() > 0 ? spec.weights(i, i2) : 1.0;
      if (weighted && w == 0.0) continue;
      const double d = divergence(spec, rows[i], rows[i2]);
      total = weighted ? total + w * d : std::max(total, d);
    }
  return total;
}

const char* binary_example_name(BinaryExample e) {
  switch (e) {
    case BinaryExample::kC1: return "C1";
    case BinaryExample::kC2: return "C2";
    case BinaryExample::kC3: return "C3";
    case BinaryExample::kC4: return "C4";
    case BinaryExample::kMinRatio: return "min_ratio";
  }
  return "unknown";
}

BinaryExample parse_binary_example(const std::string& name) {
  for (BinaryExample e : {BinaryExample::kC1, BinaryExample::kC2, BinaryExample::kC3,
                          BinaryExample::kC4, BinaryExample::kMinRatio}) {
    if (name == binary_example_name(e)) return e;
  }
  throw Error(ErrorCode::kUnknownFamily, "unknown binary example '" + name + "'");
}

double eval_binary_example(BinaryExample e, const Experiment& f) {
  require_two_by_two(f);
  const double f1 = f(0, 1);
  const double f2 = f(1, 1);
  if (f1 > f2) {
    throw Error(ErrorCode::kNotNormalized,
                "high-signal probabilities must satisfy f1 <= f2, got (" + fmt(f1) + ", " +
                    fmt(f2) + ")");
  }
  return binary_value(e, f1, f2);
}

std::array<double, 2> binary_example_partials(BinaryExample e, double f1, double f2) {
  const bool interior = f1 > 0.0 && f1 < 1.0 && f2 > 0.0 && f2 < 1.0;
  switch (e) {
    case BinaryExample::kC1: {
      if (!interior) return {kNaN, kNaN};
      const double r = f2 / f1;
      const double s = (1.0 - f2) / (1.0 - f1);
      const double r1 = -f2 / (f1 * f1), r2 = 1.0 / f1;
      const double s1 = (1.0 - f2) / ((1.0 - f1) * (1.0 - f1)), s2 = -1.0 / (1.0 - f1);
      return {2.0 * (r - 1.0) * r1 * (1.0 - s) - (r - 1.0) * (r - 1.0) * s1,
              2.0 * (r - 1.0) * r2 * (1.0 - s) - (r - 1.0) * (r - 1.0) * s2};
    }
    case BinaryExample::kC2: {
      if (!interior) return {kNaN, kNaN};
      const double num = f2 * (1.0 - f2);
      const double den = f1 * (1.0 - f1);
      return {-num * (1.0 - 2.0 * f1) / (den * den), (1.0 - 2.0 * f2) / den};
    }
    case BinaryExample::kC3:
      return {-2.0 * (f2 - f1), 2.0 * (f2 - f1)};
    case BinaryExample::kC4:
      return {-2.0, 1.0};
    case BinaryExample::kMinRatio: {
      if (!interior) return {kNaN, kNaN};
      const double r = f2 / f1;
      const double t = (1.0 - f1) / (1.0 - f2);
      if (r < t) return {-f2 / (f1 * f1), 1.0 / f1};
      if (t < r) return {-1.0 / (1.0 - f2), (1.0 - f1) / ((1.0 - f2) * (1.0 - f2))};
      return {kNaN, kNaN};
    }
  }
  return {kNaN, kNaN};
}

CostPtr make_likelihood_separable(ColumnFunction psi) {
  return std::make_shared<LikelihoodSeparableCost>(std::move(psi));
}

CostPtr make_posterior_separable(SimplexFunction h, std::optional<std::vector<double>> prior) {
  return std::make_shared<PosteriorSeparableCost>(std::move(h), std::move(prior));
}

CostPtr make_entropy_cost(std::optional<std::vector<double>> prior) {
  return make_posterior_separable(shannon_entropy(), std::move(prior));
}

CostPtr make_bregman_nested_logit(std::vector<double> prior,
                                  std::vector<std::vector<std::size_t>> nests, double xi) {
  return std::make_shared<BregmanCost>(std::move(prior), std::move(nests), xi);
}

CostPtr make_statewise_divergence(DivergenceSpec spec) {
  return std::make_shared<StatewiseDivergenceCost>(std::move(spec));
}

CostPtr make_binary_example(BinaryExample e) { return std::make_shared<BinaryExampleCost>(e); }

CostPtr make_custom(std::string id, std::function<double(const Experiment&)> value,
                    std::function<Matrix(const Experiment&)> gradient, bool reentrant) {
  return std::make_shared<CustomCost>(std::move(id), std::move(value), std::move(gradient),
                                      reentrant);
}

}  // namespace infomono
