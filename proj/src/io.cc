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


#include "infomono/io.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "infomono/errors.h"

namespace infomono {
namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::kParseError, what); }

const Json& field(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) bad(what + ": missing field '" + key + "'");
  return j.at(key);
}

double number(const Json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  // Non-finite values are written as strings.
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  bad(what + ": expected a number");
}

Json number_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::size_t index(const Json& j, const std::string& what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    bad(what + ": expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

std::vector<std::size_t> indices(const Json& j, const std::string& what) {
  if (!j.is_array()) bad(what + ": expected an array of indices");
  std::vector<std::size_t> out;
  for (const Json& v : j) out.push_back(index(v, what));
  return out;
}

std::vector<double> numbers(const Json& j, const std::string& what) {
  if (!j.is_array()) bad(what + ": expected an array of numbers");
  std::vector<double> out;
  for (const Json& v : j) out.push_back(number(v, what));
  return out;
}

std::string text(const Json& j, const std::string& what) {
  if (!j.is_string()) bad(what + ": expected a string");
  return j.get<std::string>();
}

// Parses a number token from CSV.
double parse_token(const std::string& tok, std::size_t line) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    bad("line " + std::to_string(line) + ": '" + tok + "' is not a number");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_short(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Matrix parse_matrix_csv(const std::string& content) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(content);
  std::string raw;
  std::size_t line = 0, first_line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::vector<double> row;
    std::string tok;
    auto flush = [&] {
      if (!tok.empty()) row.push_back(parse_token(tok, line));
      tok.clear();
    };
    bool separator = false;
    for (char ch : raw) {
      if (ch == ',') {
        if (tok.empty() && (separator || row.empty())) {
          bad("line " + std::to_string(line) + ": empty field");
        }
        flush();
        separator = true;
      } else if (ch == ' ' || ch == '\t' || ch == '\r') {
        flush();
      } else {
        tok.push_back(ch);
        separator = false;
      }
    }
    if (separator && tok.empty()) bad("line " + std::to_string(line) + ": empty field");
    flush();
    if (row.empty()) continue;
    if (rows.empty()) first_line = line;
    if (!rows.empty() && row.size() != rows.front().size()) {
      bad("line " + std::to_string(line) + ": expected " + std::to_string(rows.front().size()) +
          " values (as on line " + std::to_string(first_line) + "), found " +
          std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) bad("no data rows");
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

std::string matrix_to_csv(const Matrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(number_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) bad(what + ": expected a nonempty array of rows");
  const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
  Matrix m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = what + " row " + std::to_string(i);
    if (!j[i].is_array() || j[i].size() != cols) {
      bad(where + ": expected " + std::to_string(cols) + " values");
    }
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = number(j[i][k], where);
  }
  return m;
}

Json experiment_to_json(const Experiment& f) {
  Json j;
  j["states"] = f.states();
  j["signals"] = f.signals();
  j["likelihoods"] = matrix_to_json(f.matrix());
  return j;
}

namespace {

const Json& likelihoods(const Json& j) {
  return j.is_array() ? j : field(j, "likelihoods", "experiment");
}

}  // namespace

Experiment experiment_from_json(const Json& j, double row_tolerance) {
  return Experiment::validate(matrix_from_json(likelihoods(j), "experiment"), row_tolerance);
}

Experiment restore_experiment(const Json& j) {
  return Experiment::restore(matrix_from_json(likelihoods(j), "experiment"));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) bad(path + ": cannot write file");
  out << content;
  if (!out) bad(path + ": write failed");
}

Experiment load_experiment(const std::string& path, double row_tolerance) {
  const std::string content = read_file(path);
  const std::size_t start = content.find_first_not_of(" \t\r\n");
  try {
    if (start != std::string::npos && (content[start] == '{' || content[start] == '[')) {
      Json j;
      try {
        j = Json::parse(content);
      } catch (const Json::parse_error& e) {
        bad(e.what());
      }
      return experiment_from_json(j, row_tolerance);
    }
    return Experiment::validate(parse_matrix_csv(content), row_tolerance);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.message());
  }
}

Json verdict_to_json(const OrderVerdict& v) {
  Json j;
  j["relation"] = relation_name(v.relation);
  j["dominates"] = v.dominates();
  if (v.witness_forward) j["witness_forward"] = matrix_to_json(*v.witness_forward);
  if (v.witness_backward) j["witness_backward"] = matrix_to_json(*v.witness_backward);
  if (v.refutation) j["refutation"] = *v.refutation;
  return j;
}

OrderVerdict verdict_from_json(const Json& j) {
  OrderVerdict v;
  try {
    v.relation = parse_relation(text(field(j, "relation", "verdict"), "verdict relation"));
  } catch (const Error& e) {
    bad(std::string("verdict: ") + e.what());
  }
  if (j.contains("witness_forward")) v.witness_forward = matrix_from_json(j["witness_forward"]);
  if (j.contains("witness_backward")) v.witness_backward = matrix_from_json(j["witness_backward"]);
  if (j.contains("refutation")) v.refutation = text(j["refutation"], "verdict refutation");
  return v;
}

Json direction_to_json(const Direction& d) {
  Json j;
  j["kind"] = direction_kind_name(d.kind);
  if (d.kind == DirectionKind::kMixture) {
    Json parts = Json::array();
    for (std::size_t c = 0; c < d.components.size(); ++c) {
      Json p = direction_to_json(d.components[c]);
      p["coefficient"] = c < d.coefficients.size() ? number_json(d.coefficients[c]) : Json();
      parts.push_back(std::move(p));
    }
    j["components"] = std::move(parts);
  } else {
    j["from"] = d.from;
    j["to"] = d.to;
    if (d.kind != DirectionKind::kSignalReplacement) j["cutoff"] = d.cutoff;
  }
  return j;
}

Direction direction_from_json(const Json& j) {
  Direction d;
  try {
    d.kind = parse_direction_kind(text(field(j, "kind", "direction"), "direction kind"));
  } catch (const Error& e) {
    bad(std::string("direction: ") + e.what());
  }
  if (d.kind == DirectionKind::kMixture) {
    const Json& parts = field(j, "components", "direction");
    if (!parts.is_array()) bad("direction components: expected an array");
    for (const Json& p : parts) {
      d.components.push_back(direction_from_json(p));
      d.coefficients.push_back(number(field(p, "coefficient", "direction component"),
                                      "direction coefficient"));
    }
  } else {
    d.from = index(field(j, "from", "direction"), "direction from");
    d.to = index(field(j, "to", "direction"), "direction to");
    if (j.contains("cutoff")) d.cutoff = index(j["cutoff"], "direction cutoff");
  }
  return d;
}

Json path_to_json(const Path& p) {
  Json j;
  j["kind"] = path_kind_name(p.kind);
  j["source"] = experiment_to_json(p.source);
  j["target"] = experiment_to_json(p.target);
  j["target_groups"] = p.target_groups;
  Json steps = Json::array();
  for (const PathStep& s : p.steps) {
    Json step;
    step["op"] = step_op_name(s.op);
    step["segment"] = s.segment;
    step["t"] = number_json(s.t);
    switch (s.op) {
      case StepOp::kStart:
        break;
      case StepOp::kMove:
        step["direction"] = direction_to_json(s.direction);
        break;
      case StepOp::kSplit:
        step["signal"] = s.signal;
        step["lambda"] = number_json(s.lambda);
        break;
      case StepOp::kMerge:
        step["signal"] = s.signal;
        step["other"] = s.other;
        break;
      case StepOp::kPermute:
        step["permutation"] = s.permutation;
        break;
    }
    step["experiment"] = matrix_to_json(s.experiment.matrix());
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  return j;
}

Path path_from_json(const Json& j) {
  PathKind kind;
  try {
    kind = parse_path_kind(text(field(j, "kind", "path"), "path kind"));
  } catch (const Error& e) {
    bad(std::string("path: ") + e.what());
  }
  Path p(kind, restore_experiment(field(j, "source", "path")),
         restore_experiment(field(j, "target", "path")));
  if (j.contains("target_groups")) {
    const Json& groups = j["target_groups"];
    if (!groups.is_array()) bad("path target_groups: expected an array");
    for (const Json& g : groups) p.target_groups.push_back(indices(g, "path target group"));
  }
  const Json& steps = field(j, "steps", "path");
  if (!steps.is_array() || steps.empty()) bad("path steps: expected a nonempty array");
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const Json& s = steps[k];
    const std::string where = "path step " + std::to_string(k);
    PathStep step(Experiment::restore(matrix_from_json(field(s, "experiment", where), where)));
    try {
      step.op = parse_step_op(text(field(s, "op", where), where));
    } catch (const Error& e) {
      bad(where + ": " + e.what());
    }
    if (s.contains("segment")) step.segment = index(s["segment"], where);
    if (s.contains("t")) step.t = number(s["t"], where);
    switch (step.op) {
      case StepOp::kStart:
        break;
      case StepOp::kMove:
        step.direction = direction_from_json(field(s, "direction", where));
        if (!p.steps.empty()) {
          try {
            step.direction.delta = move_delta(p.steps.back().experiment, step.direction);
          } catch (const Error&) {
            // Left empty; verification reports the bad move.
          }
        }
        break;
      case StepOp::kSplit:
        step.signal = index(field(s, "signal", where), where);
        step.lambda = number(field(s, "lambda", where), where);
        break;
      case StepOp::kMerge:
        step.signal = index(field(s, "signal", where), where);
        step.other = index(field(s, "other", where), where);
        break;
      case StepOp::kPermute:
        step.permutation = indices(field(s, "permutation", where), where);
        break;
    }
    p.steps.push_back(std::move(step));
  }
  return p;
}

Json verification_to_json(const PathVerification& v) {
  Json j;
  j["ok"] = v.ok;
  j["steps"] = v.steps;
  j["max_operation_error"] = number_json(v.max_operation_error);
  j["endpoint_error"] = number_json(v.endpoint_error);
  Json issues = Json::array();
  for (const PathIssue& i : v.issues) {
    issues.push_back({{"step", i.step}, {"check", i.check}, {"detail", i.detail}});
  }
  j["issues"] = std::move(issues);
  return j;
}

Json check_to_json(const Check& c) {
  Json j;
  j["condition"] = c.condition;
  j["status"] = check_status_name(c.status);
  j["value"] = number_json(c.value);
  j["threshold"] = number_json(c.threshold);
  j["parameter"] = number_json(c.parameter);
  j["indices"] = c.indices;
  if (!c.note.empty()) j["note"] = c.note;
  j["point"] = matrix_to_json(c.point.matrix());
  if (c.other) j["other"] = matrix_to_json(c.other->matrix());
  return j;
}

Check check_from_json(const Json& j) {
  Check c(text(field(j, "condition", "check"), "check condition"),
          restore_experiment(field(j, "point", "check")));
  try {
    c.status = parse_check_status(text(field(j, "status", "check"), "check status"));
  } catch (const Error& e) {
    bad(std::string("check: ") + e.what());
  }
  c.value = number(field(j, "value", "check"), "check value");
  c.threshold = number(field(j, "threshold", "check"), "check threshold");
  if (j.contains("parameter")) c.parameter = number(j["parameter"], "check parameter");
  if (j.contains("indices")) c.indices = indices(j["indices"], "check indices");
  if (j.contains("note")) c.note = text(j["note"], "check note");
  if (j.contains("other")) c.other = restore_experiment(j["other"]);
  return c;
}

Json report_to_json(const AuditReport& r) {
  Json j;
  j["cost"] = r.cost_id;
  j["order"] = r.order;
  j["seed"] = r.seed;
  j["budget"] = r.budget;
  j["verdict"] = verdict_name(r.verdict);
  j["exit_code"] = verdict_exit_code(r.verdict);
  Json summary = Json::object();
  for (const auto& [name, s] : r.summary) {
    summary[name] = {{"checked", s.checked},   {"passed", s.passed},
                     {"failed", s.failed},     {"skipped", s.skipped},
                     {"warnings", s.warnings}, {"worst_excess", number_json(s.worst_excess)}};
  }
  j["summary"] = std::move(summary);
  Json checks = Json::array();
  for (const Check& c : r.checks) checks.push_back(check_to_json(c));
  j["checks"] = std::move(checks);
  j["unlisted"] = r.unlisted;
  return j;
}

AuditReport report_from_json(const Json& j) {
  AuditReport r;
  r.cost_id = text(field(j, "cost", "report"), "report cost");
  r.order = text(field(j, "order", "report"), "report order");
  r.seed = field(j, "seed", "report").get<std::uint64_t>();
  r.budget = index(field(j, "budget", "report"), "report budget");
  try {
    r.verdict = parse_verdict(text(field(j, "verdict", "report"), "report verdict"));
  } catch (const Error& e) {
    bad(std::string("report: ") + e.what());
  }
  const Json& summary = field(j, "summary", "report");
  if (!summary.is_object()) bad("report summary: expected an object");
  for (const auto& [name, s] : summary.items()) {
    ConditionSummary cs;
    const std::string where = "report summary " + name;
    cs.checked = index(field(s, "checked", where), where);
    cs.passed = index(field(s, "passed", where), where);
    cs.failed = index(field(s, "failed", where), where);
    cs.skipped = index(field(s, "skipped", where), where);
    cs.warnings = index(field(s, "warnings", where), where);
    cs.worst_excess = number(field(s, "worst_excess", where), where);
    r.summary[name] = cs;
  }
  for (const Json& c : field(j, "checks", "report")) r.checks.push_back(check_from_json(c));
  if (j.contains("unlisted")) r.unlisted = index(j["unlisted"], "report unlisted");
  return r;
}

namespace {

std::optional<std::vector<double>> optional_prior(const Json& spec) {
  if (!spec.contains("prior")) return std::nullopt;
  return numbers(spec["prior"], "cost prior");
}

std::vector<std::vector<std::size_t>> nests(const Json& j) {
  if (!j.is_array()) bad("cost nests: expected an array of index arrays");
  std::vector<std::vector<std::size_t>> out;
  for (const Json& n : j) out.push_back(indices(n, "cost nest"));
  return out;
}

}  // namespace

CostPtr cost_from_spec(const Json& spec) {
  const std::string family = text(field(spec, "family", "cost spec"), "cost family");
  if (family == "entropy") return make_entropy_cost(optional_prior(spec));
  if (family == "likelihood_separable") {
    const std::string psi = text(field(spec, "psi", "cost spec"), "cost psi");
    if (psi == "weighted_p_norm") {
      return make_likelihood_separable(
          weighted_p_norm(numbers(field(spec, "weights", "cost spec"), "cost weights"),
                          number(field(spec, "p", "cost spec"), "cost p")));
    }
    if (psi == "quadratic_form_root") {
      return make_likelihood_separable(
          quadratic_form_root(matrix_from_json(field(spec, "matrix", "cost spec"), "cost matrix")));
    }
    throw Error(ErrorCode::kUnknownFamily, "unknown likelihood-separable psi '" + psi + "'");
  }
  if (family == "posterior_separable") {
    const std::string h = spec.contains("h") ? text(spec["h"], "cost h") : "entropy";
    if (h == "entropy") return make_posterior_separable(shannon_entropy(), optional_prior(spec));
    if (h == "gini") return make_posterior_separable(gini_impurity(), optional_prior(spec));
    throw Error(ErrorCode::kUnknownFamily, "unknown concave function '" + h + "'");
  }
  if (family == "bregman_nested_logit") {
    return make_bregman_nested_logit(numbers(field(spec, "prior", "cost spec"), "cost prior"),
                                     nests(field(spec, "nests", "cost spec")),
                                     number(field(spec, "xi", "cost spec"), "cost xi"));
  }
  if (family == "statewise_divergence") {
    DivergenceSpec d;
    const std::string div =
        spec.contains("divergence") ? text(spec["divergence"], "cost divergence") : "renyi";
    if (div == "kl") {
      d.divergence = Divergence::kKl;
    } else if (div == "renyi") {
      d.divergence = Divergence::kRenyi;
      if (spec.contains("order")) d.order = number(spec["order"], "cost order");
    } else {
      throw Error(ErrorCode::kInvalidParameter, "unknown divergence '" + div + "'");
    }
    const std::string agg =
        spec.contains("aggregator") ? text(spec["aggregator"], "cost aggregator") : "max";
    if (agg == "max") {
      d.aggregator = Aggregator::kMax;
    } else if (agg == "weighted_sum") {
      d.aggregator = Aggregator::kWeightedSum;
      if (spec.contains("weights")) d.weights = matrix_from_json(spec["weights"], "cost weights");
    } else {
      throw Error(ErrorCode::kInvalidParameter, "unknown aggregator '" + agg + "'");
    }
    return make_statewise_divergence(d);
  }
  if (family == "binary_example") {
    return make_binary_example(
        parse_binary_example(text(field(spec, "name", "cost spec"), "cost name")));
  }
  throw Error(ErrorCode::kUnknownFamily, "unknown cost family '" + family + "'");
}

}  // namespace infomono
