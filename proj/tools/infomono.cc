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


// Command-line front end: validate, compare, audit, path build|verify,
// reproduce and mlrp-check.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "infomono/audit.h"
#include "infomono/cost.h"
#include "infomono/errors.h"
#include "infomono/experiment.h"
#include "infomono/io.h"
#include "infomono/order.h"
#include "infomono/path.h"
#include "infomono/reproduce.h"

namespace infomono {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;  // incomparable, failed verification or failed case
constexpr int kExitWarning = 3;
constexpr int kExitInputError = 4;

enum class Format { kText, kJson, kCsv };

struct Options {
  Tolerances tol;
  std::uint64_t seed = 0;
  std::size_t budget = 1000;
  std::size_t workers = 1;
  Format format = Format::kText;
  double row_tolerance = 1e-9;
};

// Text rendering: scalars at 6 significant digits, matrices one row per line.

std::string text_scalar(const Json& j) {
  if (j.is_number_float()) return format_short(j.get<double>());
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

bool is_flat_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const Json& x : j)
    if (!is_scalar(x)) return false;
  return true;
}

bool is_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) return false;
  for (const Json& x : j)
    if (!is_flat_array(x)) return false;
  return true;
}

std::string flat_line(const Json& j) {
  std::string out;
  for (const Json& x : j) out += (out.empty() ? "" : " ") + text_scalar(x);
  return out;
}

void render_text(std::ostream& os, const Json& j, const std::string& indent) {
  for (const auto& [key, value] : j.items()) {
    if (is_scalar(value)) {
      os << indent << key << ": " << text_scalar(value) << '\n';
    } else if (is_flat_array(value)) {
      os << indent << key << ": " << flat_line(value) << '\n';
    } else if (is_matrix(value)) {
      os << indent << key << ":\n";
      for (const Json& row : value) os << indent << "  " << flat_line(row) << '\n';
    } else {
      os << indent << key << ":\n";
      render_text(os, value, indent + "  ");
    }
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

// One "key,value" line per scalar, full precision.
void render_csv(std::ostream& os, const Json& j, const std::string& prefix) {
  if (is_scalar(j)) {
    const std::string v = j.is_number_float() ? format_double(j.get<double>())
                          : j.is_string()     ? j.get<std::string>()
                                              : j.dump();
    os << csv_field(prefix) << ',' << csv_field(v) << '\n';
    return;
  }
  for (const auto& [key, value] : j.items()) {
    const std::string name = j.is_array() ? prefix + "[" + key + "]"
                                          : (prefix.empty() ? key : prefix + "." + key);
    render_csv(os, value, name);
  }
}

void emit(const Options& o, const Json& j) {
  switch (o.format) {
    case Format::kJson:
      std::cout << j.dump(2) << '\n';
      break;
    case Format::kCsv:
      std::cout << "field,value\n";
      render_csv(std::cout, j, "");
      break;
    case Format::kText:
      render_text(std::cout, j, "");
      break;
  }
}

void merge(Json& into, const Json& from) {
  for (const auto& [key, value] : from.items()) into[key] = value;
}

Json header(const std::string& command, const Options& o) {
  Json j;
  j["command"] = command;
  j["seed"] = o.seed;
  return j;
}

// validate

int cmd_validate(const Options& o, const std::string& path) {
  const Experiment f = load_experiment(path, o.row_tolerance);
  Json j = header("validate", o);
  j["file"] = path;
  j["states"] = f.states();
  j["signals"] = f.signals();
  j["mlrp"] = is_mlrp(f);
  j["likelihoods"] = matrix_to_json(f.matrix());
  emit(o, j);
  return kExitOk;
}

// mlrp-check

int cmd_mlrp_check(const Options& o, const std::string& path) {
  const Experiment f = load_experiment(path, o.row_tolerance);
  const MlrpReport r = check_mlrp(f);
  Json j = header("mlrp-check", o);
  j["file"] = path;
  j["mlrp"] = r.holds;
  if (r.violation) {
    const auto& v = *r.violation;
    j["violation"] = {{"state", v.state},
                      {"state2", v.state2},
                      {"signal", v.signal},
                      {"signal2", v.signal2},
                      {"determinant", v.determinant}};
  }
  emit(o, j);
  return r.holds ? kExitOk : kExitNegative;
}

// compare

int cmd_compare(const Options& o, const std::string& order, const std::string& f_path,
                const std::string& g_path) {
  const Experiment f = load_experiment(f_path, o.row_tolerance);
  const Experiment g = load_experiment(g_path, o.row_tolerance);
  Json j = header("compare", o);
  j["order"] = order;
  OrderVerdict v;
  try {
    v = order == "blackwell" ? blackwell_geq(f, g, o.tol) : lehmann_geq_mlrp(f, g, o.tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNumericallyIllConditioned) throw;
    j["relation"] = "numerical_warning";
    j["detail"] = e.what();
    emit(o, j);
    return kExitWarning;
  }
  merge(j, verdict_to_json(v));
  emit(o, j);
  return v.relation == Relation::kIncomparable ? kExitNegative : kExitOk;
}

// audit

struct AuditArgs {
  std::string spec_path;
  std::string order = "blackwell";
  std::optional<std::uint64_t> seed;
  std::size_t max_states = 4;
  std::size_t max_signals = 4;
  std::size_t max_listed = 50;
  std::size_t resolution = 200;
};

int cmd_audit(Options o, const AuditArgs& a) {
  if (!a.seed) throw Error(ErrorCode::kInvalidParameter, "audit requires --seed");
  o.seed = *a.seed;
  const CostPtr c = cost_from_spec(Json::parse(read_file(a.spec_path)));
  AuditReport r;
  if (a.order == "binary_grid") {
    r = audit_binary_grid(*c, a.resolution, o.tol, a.max_listed);
  } else {
    AuditConfig config;
    config.budget = o.budget;
    config.seed = o.seed;
    config.workers = o.workers;
    config.tol = o.tol;
    config.max_states = a.max_states;
    config.max_signals = a.max_signals;
    config.max_listed = a.max_listed;
    r = a.order == "lehmann" ? audit_lehmann(*c, config) : audit_blackwell(*c, config);
  }
  Json j = header("audit", o);
  merge(j, report_to_json(r));
  emit(o, j);
  return verdict_exit_code(r.verdict);
}

// path build | verify

struct PathArgs {
  std::string kind;
  std::string f_path;
  std::string g_path;
  std::string out;
  std::size_t samples = 16;
  std::size_t state = 0;
  std::size_t first = 0;
  std::size_t last = 2;
  std::vector<std::string> costs;
};

PathCheckOptions check_options(const Options& o, const std::vector<std::string>& specs) {
  PathCheckOptions opt;
  opt.tol = o.tol;
  opt.workers = o.workers;
  opt.costs.push_back(make_entropy_cost());
  for (const std::string& s : specs) opt.costs.push_back(cost_from_spec(Json::parse(read_file(s))));
  return opt;
}

Json verification_summary(const Options& o, const std::string& command, const Path& p,
                          const PathVerification& v, const std::vector<std::string>& specs) {
  Json j = header(command, o);
  j["kind"] = path_kind_name(p.kind);
  j["costs"] = Json::array({"entropy"});
  for (const std::string& s : specs) j["costs"].push_back(s);
  merge(j, verification_to_json(v));
  return j;
}

int cmd_path_build(const Options& o, const PathArgs& a) {
  const PathKind kind = parse_path_kind(a.kind);
  const Experiment f = load_experiment(a.f_path, o.row_tolerance);
  std::optional<Path> path;
  if (kind == PathKind::kLehmannRemoval) {
    path = lehmann_removal(f, a.state, a.first, a.last, a.samples).path;
  } else {
    if (a.g_path.empty())
      throw Error(ErrorCode::kInvalidParameter, std::string(path_kind_name(kind)) +
                                                    " needs a target experiment");
    const Experiment g = load_experiment(a.g_path, o.row_tolerance);
    switch (kind) {
      case PathKind::kBinaryBlackwell:
        path = binary_blackwell_path(f, g, a.samples, o.tol);
        break;
      case PathKind::kBinaryLehmann:
        path = binary_lehmann_path(f, g, a.samples, o.tol);
        break;
      case PathKind::kGeneralBlackwell:
        path = general_blackwell_path(f, g, a.samples, o.tol);
        break;
      default:
        path = lehmann_path(f, g, a.samples, o.tol);
        break;
    }
  }
  const PathVerification v = verify_path(*path, check_options(o, a.costs));
  Json j = verification_summary(o, "path build", *path, v, a.costs);
  if (a.out.empty()) {
    j["path"] = path_to_json(*path);
  } else {
    write_file(a.out, path_to_json(*path).dump(1) + "\n");
    j["out"] = a.out;
  }
  emit(o, j);
  return v.ok ? kExitOk : kExitNegative;
}

int cmd_path_verify(const Options& o, const PathArgs& a) {
  const Path p = path_from_json(Json::parse(read_file(a.f_path)));
  const PathVerification v = verify_path(p, check_options(o, a.costs));
  Json j = verification_summary(o, "path verify", p, v, a.costs);
  j["file"] = a.f_path;
  emit(o, j);
  return v.ok ? kExitOk : kExitNegative;
}

// reproduce

void print_case_table(const ReproResult& r) {
  std::size_t wq = 8, we = 8;
  for (const ReproRow& row : r.rows) {
    wq = std::max(wq, row.quantity.size());
    we = std::max(we, row.expected.size());
  }
  std::printf("%s: %s  [%s]\n", r.id.c_str(), r.title.c_str(), r.pass() ? "PASS" : "FAIL");
  std::printf("  %-4s  %-*s  %-*s  %s\n", "", static_cast<int>(wq), "quantity",
              static_cast<int>(we), "expected", "computed");
  for (const ReproRow& row : r.rows) {
    std::printf("  %-4s  %-*s  %-*s  %s\n", row.pass ? "ok" : "FAIL", static_cast<int>(wq),
                row.quantity.c_str(), static_cast<int>(we), row.expected.c_str(),
                row.computed.c_str());
  }
}

int cmd_reproduce(const Options& o, std::vector<std::string> ids, bool list) {
  if (list) {
    for (const std::string& id : reproduction_cases()) std::printf("%s\n", id.c_str());
    return kExitOk;
  }
  if (ids.empty() || (ids.size() == 1 && ids[0] == "all")) ids = reproduction_cases();
  std::vector<ReproResult> results;
  for (const std::string& id : ids) results.push_back(reproduce(id, o.seed, o.workers));
  bool pass = true;
  for (const ReproResult& r : results) pass = pass && r.pass();
  if (o.format == Format::kText) {
    std::printf("seed: %llu\n", static_cast<unsigned long long>(o.seed));
    for (const ReproResult& r : results) print_case_table(r);
  } else {
    Json j = header("reproduce", o);
    j["pass"] = pass;
    Json cases = Json::array();
    for (const ReproResult& r : results) {
      Json c = {{"id", r.id}, {"title", r.title}, {"pass", r.pass()}, {"rows", Json::array()}};
      for (const ReproRow& row : r.rows) {
        c["rows"].push_back({{"quantity", row.quantity},
                             {"expected", row.expected},
                             {"computed", row.computed},
                             {"pass", row.pass}});
      }
      cases.push_back(std::move(c));
    }
    j["cases"] = std::move(cases);
    emit(o, j);
  }
  return pass ? kExitOk : kExitNegative;
}

int run(int argc, char** argv) {
  CLI::App app{"Blackwell and Lehmann informativeness orders, cost monotonicity audits and "
               "information-decreasing paths."};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  std::string format = "text";
  app.add_option("--tol-lp", o.tol.lp, "garbling LP residual tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-order", o.tol.order, "Lehmann order tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-audit", o.tol.audit, "absolute audit threshold")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-eq", o.tol.equality, "relative cost equality tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--row-tolerance", o.row_tolerance, "accepted row-sum error of input files")
      ->check(CLI::PositiveNumber);
  app.add_option("--budget", o.budget, "sampled experiments for audits")
      ->check(CLI::PositiveNumber);
  app.add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));

  std::string f_path, g_path, order;
  auto* validate = app.add_subcommand("validate", "check and normalize an experiment file");
  validate->add_option("file", f_path, "experiment (CSV or JSON)")->required();

  auto* mlrp = app.add_subcommand("mlrp-check", "test the monotone likelihood ratio property");
  mlrp->add_option("file", f_path, "experiment (CSV or JSON)")->required();

  auto* compare = app.add_subcommand("compare", "compare two experiments");
  compare->add_option("order", order, "blackwell or lehmann")
      ->required()
      ->check(CLI::IsMember({"blackwell", "lehmann"}));
  compare->add_option("f", f_path, "first experiment")->required();
  compare->add_option("g", g_path, "second experiment")->required();

  AuditArgs audit_args;
  auto* audit = app.add_subcommand("audit", "audit a cost function for monotonicity");
  audit->add_option("spec", audit_args.spec_path, "cost spec (JSON)")->required();
  audit->add_option("--order", audit_args.order, "order to audit against")
      ->check(CLI::IsMember({"blackwell", "lehmann", "binary_grid"}));
  audit->add_option("--seed", audit_args.seed, "random seed (required)");
  audit->add_option("--max-states", audit_args.max_states, "largest sampled state count");
  audit->add_option("--max-signals", audit_args.max_signals, "largest sampled signal count");
  audit->add_option("--max-listed", audit_args.max_listed, "failing checks listed in full");
  audit->add_option("--resolution", audit_args.resolution, "grid resolution for binary_grid");

  PathArgs path_args;
  auto* path = app.add_subcommand("path", "build or verify information-decreasing paths");
  path->require_subcommand(1);
  auto* build = path->add_subcommand("build", "construct and self-verify a path");
  build->add_option("kind", path_args.kind,
                    "binary_blackwell, binary_lehmann, general_blackwell, lehmann_removal or "
                    "lehmann_full")
      ->required();
  build->add_option("f", path_args.f_path, "source experiment")->required();
  build->add_option("g", path_args.g_path, "target experiment");
  build->add_option("-o,--out", path_args.out, "write the path JSON here");
  build->add_option("--samples", path_args.samples, "steps per continuous segment")
      ->check(CLI::PositiveNumber);
  build->add_option("--state", path_args.state, "lehmann_removal: lower state of the pair");
  build->add_option("--first", path_args.first, "lehmann_removal: first cumulative point");
  build->add_option("--last", path_args.last, "lehmann_removal: last cumulative point");
  build->add_option("--cost", path_args.costs, "extra cost spec checked along the path");
  auto* verify = path->add_subcommand("verify", "replay a path file and check every step");
  verify->add_option("file", path_args.f_path, "path JSON")->required();
  verify->add_option("--cost", path_args.costs, "extra cost spec checked along the path");

  std::vector<std::string> case_ids;
  bool list = false;
  auto* repro = app.add_subcommand("reproduce", "run golden reproduction cases");
  repro->add_option("cases", case_ids, "case ids, or all (default)");
  repro->add_option("--seed", o.seed, "random seed");
  repro->add_flag("--list", list, "list case ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    app.exit(e);
    return kExitInputError;
  }
  o.format = format == "json" ? Format::kJson : format == "csv" ? Format::kCsv : Format::kText;

  try {
    if (*validate) return cmd_validate(o, f_path);
    if (*mlrp) return cmd_mlrp_check(o, f_path);
    if (*compare) return cmd_compare(o, order, f_path, g_path);
    if (*audit) return cmd_audit(o, audit_args);
    if (*build) return cmd_path_build(o, path_args);
    if (*verify) return cmd_path_verify(o, path_args);
    if (*repro) return cmd_reproduce(o, case_ids, list);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    if (e.code() == ErrorCode::kNumericallyIllConditioned) return kExitWarning;
    if (e.code() == ErrorCode::kNotComparable) return kExitNegative;
    return kExitInputError;
  } catch (const Json::exception& e) {
    std::fprintf(stderr, "error: ParseError: %s\n", e.what());
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace
}  // namespace infomono

int main(int argc, char** argv) { return infomono::run(argc, argv); }
