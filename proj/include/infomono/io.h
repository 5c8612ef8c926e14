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


#ifndef INFOMONO_IO_H_
#define INFOMONO_IO_H_

#include <string>

#include "json.hpp"
#include "infomono/audit.h"
#include "infomono/cost.h"
#include "infomono/experiment.h"
#include "infomono/matrix.h"
#include "infomono/order.h"
#include "infomono/path.h"

namespace infomono {

using Json = nlohmann::ordered_json;

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);
// Six significant digits for human-readable output.
std::string format_short(double v);

// CSV: one state per line, values separated by commas and/or spaces; blank
// lines and text after '#' are ignored. Errors name the offending line.
Matrix parse_matrix_csv(const std::string& text);
std::string matrix_to_csv(const Matrix& m);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& what = "matrix");

// {"likelihoods": [[...], ...]}; a bare array of rows is also accepted.
Json experiment_to_json(const Experiment& f);
// User input: validated (rows renormalized within tolerance, 64-dimension cap).
Experiment experiment_from_json(const Json& j, double row_tolerance = 1e-9);
// Stored experiments (paths, reports): entries kept exactly.
Experiment restore_experiment(const Json& j);

// Reads an experiment from a .json or CSV file. Throws ParseError naming the
// file (and line for CSV).
Experiment load_experiment(const std::string& path, double row_tolerance = 1e-9);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

Json verdict_to_json(const OrderVerdict& v);
OrderVerdict verdict_from_json(const Json& j);

Json direction_to_json(const Direction& d);
Direction direction_from_json(const Json& j);

Json path_to_json(const Path& p);
Path path_from_json(const Json& j);
Json verification_to_json(const PathVerification& v);

Json check_to_json(const Check& c);
Check check_from_json(const Json& j);
Json report_to_json(const AuditReport& r);
AuditReport report_from_json(const Json& j);

// Cost specifications, e.g.
//   {"family": "entropy", "prior": [0.5, 0.5]}
//   {"family": "likelihood_separable", "psi": "weighted_p_norm",
//    "weights": [1, 2], "p": 2}
//   {"family": "likelihood_separable", "psi": "quadratic_form_root",
//    "matrix": [[...]]}
//   {"family": "posterior_separable", "h": "entropy" | "gini", "prior": [...]}
//   {"family": "bregman_nested_logit", "prior": [...], "nests": [[0, 1], [2]],
//    "xi": 0.5}
//   {"family": "statewise_divergence", "divergence": "kl" | "renyi",
//    "order": 2, "aggregator": "max" | "weighted_sum", "weights": [[...]]}
//   {"family": "binary_example", "name": "C1" | "C2" | "C3" | "C4" | "min_ratio"}
// Throws UnknownFamily or InvalidParameter.
CostPtr cost_from_spec(const Json& spec);

}  // namespace infomono

#endif  // INFOMONO_IO_H_
