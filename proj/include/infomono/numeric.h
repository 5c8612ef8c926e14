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

#ifndef INFOMONO_NUMERIC_H_
#define INFOMONO_NUMERIC_H_

namespace infomono {

inline constexpr double kRowTolerance = 1e-9;
inline constexpr double kMlrpSlack = 1e-10;
inline constexpr double kPivotTolerance = 1e-9;

// Tolerances that callers may override (the CLI exposes them as --tol-*).
struct Tolerances {
  double lp = 1e-7;      // garbling LP residual
  double order = 1e-9;   // Lehmann ratio and PP-curve comparisons
  double audit = 1e-7;   // absolute part of the first-order audit threshold
  double equality = 1e-9;  // relative part of cost equality: eq * (1 + |C|)

  double equality_bound(double value) const;
};

// x / y with x/0 = +inf for x > 0 and 0/0 = 1.
double ratio(double x, double y);

}  // namespace infomono

#endif  // INFOMONO_NUMERIC_H_
