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

#include "infomono/simplex.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "infomono/errors.h"

namespace infomono {

PhaseOneResult phase_one(const Matrix& a, const std::vector<double>& b,
                         double pivot_tolerance) {
  const std::size_t rows = a.rows();
  const std::size_t nx = a.cols();
  if (b.size() != rows) throw Error(ErrorCode::kDimensionMismatch, "rhs length differs from rows");
  const std::size_t width = nx + rows;
  // Tableau rows: [A | I | rhs], with rows flipped so that rhs >= 0.
  Matrix t(rows, width + 1);
  std::vector<double> sign(rows, 1.0);
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    sign[i] = b[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < nx; ++j) t(i, j) = sign[i] * a(i, j);
    t(i, nx + i) = 1.0;
    t(i, width) = sign[i] * b[i];
    basis[i] = nx + i;
  }
  std::vector<double> cost(width, 0.0);
  for (std::size_t j = nx; j < width; ++j) cost[j] = 1.0;
  std::vector<double> reduced(width, 0.0);
  for (std::size_t j = 0; j < width; ++j) {
    double s = cost[j];
    for (std::size_t i = 0; i < rows; ++i) s -= t(i, j);
    reduced[j] = s;
  }

  const double rc_tol = 1e-12;
  const std::size_t max_pivots = 200 * (width + rows) + 1000;
  PhaseOneResult out;
  while (true) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < width; ++j) {
      if (reduced[j] < -rc_tol) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;
    std::size_t leave = rows;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows; ++i) {
      const double p = t(i, enter);
      if (p <= pivot_tolerance) continue;
      const double r = t(i, width) / p;
      if (leave == rows || r < best - 1e-15 ||
          (r <= best + 1e-15 && basis[i] < basis[leave])) {
        leave = i;
        best = r;
      }
    }
    if (leave == rows) {
      // No usable pivot in this column; treat its reduced cost as settled.
      reduced[enter] = 0.0;
      continue;
    }
    if (++out.pivots > max_pivots) {
      throw Error(ErrorCode::kIterationLimit, "phase-one simplex did not terminate");
    }
    const double p = t(leave, enter);
    for (std::size_t j = 0; j <= width; ++j) t(leave, j) /= p;
    t(leave, enter) = 1.0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave) continue;
      const double factor = t(i, enter);
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j <= width; ++j) t(i, j) -= factor * t(leave, j);
      t(i, enter) = 0.0;
      if (t(i, width) < 0.0 && t(i, width) > -1e-13) t(i, width) = 0.0;
    }
    const double rf = reduced[enter];
    for (std::size_t j = 0; j < width; ++j) reduced[j] -= rf * t(leave, j);
    reduced[enter] = 0.0;
    basis[leave] = enter;
  }

  out.x.assign(nx, 0.0);
  out.infeasibility = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    const double v = std::max(0.0, t(i, width));
    if (basis[i] < nx) {
      out.x[basis[i]] = v;
    } else {
      out.infeasibility += v;
    }
  }
  out.farkas.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) out.farkas[i] = sign[i] * (1.0 - reduced[nx + i]);
  return out;
}

}  // namespace infomono
