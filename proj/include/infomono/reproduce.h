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


#ifndef INFOMONO_REPRODUCE_H_
#define INFOMONO_REPRODUCE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "infomono/experiment.h"
#include "infomono/matrix.h"

namespace infomono {

// Named experiments and parameters behind the reproduction cases.
Experiment three_state_identity();
Matrix cyclic_garbling_kernel();  // rows (.8,.2,0), (0,.8,.2), (.2,0,.8)
Experiment four_signal_example();  // MLRP, 3 states x 4 signals
Matrix quadratic_form_example();   // [[10,10,10],[10,20,10],[10,10,20]]
Experiment mlrp_mix_left();
Experiment mlrp_mix_right();

// Eigenvalues of a symmetric matrix in decreasing order.
std::vector<double> symmetric_eigenvalues(const Matrix& a);

// Sampled experiments over three states and three signals that Blackwell
// dominate the cyclic garbling of the identity; each must be a column
// permutation of the identity or of the garbling itself.
struct DominatorSweep {
  std::size_t samples = 0;
  std::size_t dominating = 0;
  std::size_t gray_zone = 0;        // LP undecided within tolerance
  double worst_distance = 0.0;      // max over dominators of the distance to the nearest permutation
  std::vector<Experiment> offenders;  // dominators farther than 1e-6
};
DominatorSweep cyclic_dominator_sweep(std::size_t samples, std::uint64_t seed);

// Two-state experiment with two nests of two signals where signals 0, 2 and
// 3 share a likelihood ratio and signal 1 does not, found by grid search.
struct NestedLogitWitness {
  Experiment f;
  std::vector<double> prior;
  std::vector<std::vector<std::size_t>> nests;
  double xi = 0.5;
  std::size_t from = 0, to = 2;
  double derivative = 0.0;  // <grad C, f^{from -> to}>
};
NestedLogitWitness find_nested_logit_violation(double xi = 0.5);

struct ReproRow {
  std::string quantity;
  std::string expected;
  std::string computed;
  bool pass = false;
};

struct ReproResult {
  std::string id;
  std::string title;
  std::vector<ReproRow> rows;

  bool pass() const;
};

// Registered case identifiers, in display order.
const std::vector<std::string>& reproduction_cases();
// Runs one case. Throws UnknownCase.
ReproResult reproduce(const std::string& id, std::uint64_t seed = 0, std::size_t workers = 1);

}  // namespace infomono

#endif  // INFOMONO_REPRODUCE_H_
