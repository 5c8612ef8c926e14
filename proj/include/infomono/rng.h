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

#ifndef INFOMONO_RNG_H_
#define INFOMONO_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "infomono/experiment.h"
#include "infomono/matrix.h"

namespace infomono {

// Seeded generator. Conversions to doubles and integers are done here rather
// than through <random> distributions so that streams are identical across
// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent stream for work item `index` of a run seeded with `seed`.
  static Rng for_item(std::uint64_t seed, std::uint64_t index);

  double uniform();                          // [0, 1)
  double uniform(double lo, double hi);      // [lo, hi)
  std::size_t index(std::size_t n);          // {0, ..., n-1}
  double exponential();
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Dirichlet(1, ..., 1) row of length m, clipped at `floor` and renormalized.
std::vector<double> sample_simplex(Rng& rng, std::size_t m, double floor = 1e-6);

// Experiment with independent Dirichlet(1) rows (interior).
Experiment sample_experiment(Rng& rng, std::size_t n, std::size_t m, double floor = 1e-6);

// Row-stochastic m x m2 matrix with Dirichlet(1) rows (no clipping).
Matrix sample_stochastic(Rng& rng, std::size_t m, std::size_t m2);

// Interior experiment satisfying MLRP. Entries are exp(u(i,j)) with u
// supermodular (nonnegative mixed differences), rows normalized, clipped at
// `floor`, and checked; rejected draws are retried up to 10,000 times.
Experiment sample_mlrp_experiment(Rng& rng, std::size_t n, std::size_t m, double floor = 1e-6);

// Uniformly random permutation of {0, ..., m-1}.
std::vector<std::size_t> sample_permutation(Rng& rng, std::size_t m);

}  // namespace infomono

#endif  // INFOMONO_RNG_H_
