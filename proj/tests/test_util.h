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


#ifndef INFOMONO_TESTS_TEST_UTIL_H_
#define INFOMONO_TESTS_TEST_UTIL_H_

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "infomono/errors.h"

#include "infomono/experiment.h"
#include "infomono/matrix.h"

namespace infomono::testing {

// Three-state, four-signal MLRP experiment used by the quadratic-form
// counterexample.
inline Experiment four_signal_mlrp() {
  return Experiment::validate(
      Matrix{{.78, .1, .1, .02}, {.2, .3, .4, .1}, {.05, .1, .3, .55}});
}

// Cyclic garbling of the 3x3 identity.
inline Matrix cyclic_kernel() {
  return Matrix{{.8, .2, 0}, {0, .8, .2}, {.2, 0, .8}};
}

// Symmetric positive definite form of the quadratic-root likelihood cost.
inline Matrix quadratic_form_matrix() {
  return Matrix{{10, 10, 10}, {10, 20, 10}, {10, 10, 20}};
}

inline Experiment binary(double f1, double f2) { return binary_experiment({f1, f2}); }

inline double row_sum_error(const Experiment& f) {
  double worst = 0.0;
  for (std::size_t i = 0; i < f.states(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < f.signals(); ++j) s += f(i, j);
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

// Passes when `fn` throws infomono::Error with `code`.
template <typename Fn>
::testing::AssertionResult throws_code(Fn&& fn, ErrorCode code) {
  try {
    fn();
  } catch (const Error& e) {
    if (e.code() == code) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "threw " << error_code_name(e.code()) << ": "
                                         << e.what();
  }
  return ::testing::AssertionFailure() << "did not throw " << error_code_name(code);
}

}  // namespace infomono::testing

#endif  // INFOMONO_TESTS_TEST_UTIL_H_
