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

#ifndef INFOMONO_SIMPLEX_H_
#define INFOMONO_SIMPLEX_H_

#include <cstddef>
#include <vector>

#include "infomono/matrix.h"

namespace infomono {

struct PhaseOneResult {
  std::vector<double> x;       // basic solution, x >= 0
  double infeasibility = 0.0;  // minimum of sum |A x - b| over x >= 0
  // Multipliers y with A^T y <= 0 and b^T y = infeasibility. When the
  // infeasibility is positive they certify that A x = b has no x >= 0.
  std::vector<double> farkas;
  std::size_t pivots = 0;
};

// Phase-one simplex for {x >= 0 : A x = b} with one artificial variable per
// row and Bland's rule. Pivot elements at or below `pivot_tolerance` are
// never used.
PhaseOneResult phase_one(const Matrix& a, const std::vector<double>& b,
                         double pivot_tolerance = 1e-9);

}  // namespace infomono

#endif  // INFOMONO_SIMPLEX_H_
