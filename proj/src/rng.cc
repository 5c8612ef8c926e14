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

#include "infomono/rng.h"

#include <algorithm>
#include <cmath>

#include "infomono/errors.h"

namespace infomono {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Matrix clip_rows(Matrix m, double floor) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      m(i, j) = std::max(m(i, j), floor);
      sum += m(i, j);
    }
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) /= sum;
  }
  return m;
}

}  // namespace

Rng Rng::for_item(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(seed ^ splitmix64(index + 0x5851F42D4C957F2DULL)));
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::size_t Rng::index(std::size_t n) {
  // Lemire's multiply-shift; the bias is below 2^-40 for the sizes used here.
  return static_cast<std::size_t>((static_cast<unsigned __int128>(engine_()) * n) >> 64);
}

double Rng::exponential() { return -std::log1p(-uniform()); }

std::vector<double> sample_simplex(Rng& rng, std::size_t m, double floor) {
  std::vector<double> w(m);
  double sum = 0.0;
  for (double& x : w) {
    x = rng.exponential();
    sum += x;
  }
  for (double& x : w) x /= sum;
  if (floor > 0.0) {
    sum = 0.0;
    for (double& x : w) {
      x = std::max(x, floor);
      sum += x;
    }
    for (double& x : w) x /= sum;
  }
  return w;
}

Experiment sample_experiment(Rng& rng, std::size_t n, std::size_t m, double floor) {
  Matrix f(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> r = sample_simplex(rng, m, floor);
    for (std::size_t j = 0; j < m; ++j) f(i, j) = r[j];
  }
  return make_derived(f);
}

Matrix sample_stochastic(Rng& rng, std::size_t m, std::size_t m2) {
  Matrix k(m, m2);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> r = sample_simplex(rng, m2, 0.0);
    for (std::size_t j = 0; j < m2; ++j) k(i, j) = r[j];
  }
  return k;
}

namespace {

// Every 2x2 minor, not only adjacent ones, so that later splits (which add
// zero columns and trigger the all-pairs check) keep the sample MLRP.
bool all_minors_nonnegative(const Matrix& f) {
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t i2 = i + 1; i2 < f.rows(); ++i2)
      for (std::size_t j = 0; j < f.cols(); ++j)
        for (std::size_t j2 = j + 1; j2 < f.cols(); ++j2)
          if (f(i, j) * f(i2, j2) - f(i2, j) * f(i, j2) < -1e-14) return false;
  return true;
}

}  // namespace

Experiment sample_mlrp_experiment(Rng& rng, std::size_t n, std::size_t m, double floor) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const double scale = std::exp(rng.uniform(std::log(0.05), std::log(3.0)));
    Matrix u(n, m);
    for (std::size_t j = 0; j < m; ++j) u(0, j) = std::log(rng.exponential() + 1e-300);
    // Cumulative sums of nonnegative mixed differences make u supermodular.
    Matrix d(n, m);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 1; j < m; ++j) d(i, j) = scale * rng.exponential();
    for (std::size_t i = 1; i < n; ++i) {
      double run = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        run += d(i, j);
        u(i, j) = u(i - 1, j) + run;
      }
    }
    Matrix f(n, m);
    for (std::size_t i = 0; i < n; ++i) {
      double top = u(i, 0);
      for (std::size_t j = 1; j < m; ++j) top = std::max(top, u(i, j));
      double sum = 0.0;
      for (std::size_t j = 0; j < m; ++j) sum += f(i, j) = std::exp(u(i, j) - top);
      for (std::size_t j = 0; j < m; ++j) f(i, j) /= sum;
    }
    f = clip_rows(f, floor);
    if (all_minors_nonnegative(f)) return make_derived(f);
  }
  throw Error(ErrorCode::kIterationLimit, "MLRP sampler exceeded 10000 draws");
}

std::vector<std::size_t> sample_permutation(Rng& rng, std::size_t m) {
  std::vector<std::size_t> p(m);
  for (std::size_t k = 0; k < m; ++k) p[k] = k;
  for (std::size_t k = m; k > 1; --k) std::swap(p[k - 1], p[rng.index(k)]);
  return p;
}

}  // namespace infomono
