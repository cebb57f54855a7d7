#include "tunnelshift/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tunnelshift/expr.hpp"
#include "tunnelshift/report.hpp"

namespace tunnelshift {

namespace {

using nlohmann::json;

struct Problem {
  std::string potential;
  std::string domain;
  std::optional<double> box;
  int m = 0;
  std::optional<double> nu;
  double h = 0.1;
};

struct Numerics {
  double newton_tol = kDefaultNewtonTol;
  double integrate_tol = kDefaultIntegrateTol;
  bool frozen = false;
  double max_box = 1e3;
  double decay_exponent = 100.0;

  SpectraOptions options() const {
    SpectraOptions o;
    o.newton.tol = newton_tol;
    o.newton.integrate_tol = integrate_tol;
    o.newton.frozen_jacobian = frozen;
    o.max_box = max_box;
    o.decay_exponent = decay_exponent;
    return o;
  }
};

struct Output {
  std::string format = "table";
  std::string json_path;
  std::string csv_path;
};

struct HydrogenPotential {
  double charge;
  int ell;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used == 0 || used != item.size() || !std::isfinite(v))
      throw ValidationError(std::string("bad number '") + item + "' in " + what);
    out.push_back(v);
  }
  return out;
}

std::optional<HydrogenPotential> hydrogen_potential(const std::string& text) {
  static const std::regex kPattern(R"(\s*hydrogen-effective\s*\(\s*([^,\s]+)\s*,\s*([^)\s]+)\s*\)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, kPattern)) return std::nullopt;
  const double charge = parse_list(m[1].str(), "hydrogen-effective(Z, l)").at(0);
  const double ell = parse_list(m[2].str(), "hydrogen-effective(Z, l)").at(0);
  if (ell < 0 || ell != std::floor(ell)) throw ValidationError("hydrogen-effective: l must be a non-negative integer");
  return HydrogenPotential{charge, static_cast<int>(ell)};
}

ConfinementDomain domain_of(const Problem& p) {
  if (p.box && !p.domain.empty()) throw ValidationError("give either --domain or --box, not both");
  if (p.box) {
    if (!(*p.box > 0.0)) throw ValidationError("--box must be positive");
    return ConfinementDomain::box(*p.box);
  }
  if (p.domain.empty()) throw ValidationError("one of --domain a,b or --box L is required");
  const auto v = parse_list(p.domain, "--domain");
  if (v.size() != 2) throw ValidationError("--domain expects two numbers a,b");
  const auto d = ConfinementDomain::line(v[0], v[1]);
  if (!d.well_formed()) throw ValidationError("--domain must satisfy a < 0 < b");
  return d;
}

void check_validation(const PotentialSpec& p, const ConfinementDomain& d) {
  const ValidationReport report = validate_potential(p, d);
  if (report.passed) return;
  std::ostringstream msg;
  msg << "potential '" << p.description << "' fails validation:";
  for (const auto& v : report.violations)
    msg << "\n  assumption " << v.assumption << ": " << v.check << " (x = " << v.x << ", observed " << v.observed << ")";
  throw ValidationError(msg.str());
}

CaseDescriptor describe(const Problem& problem, const ConfinementDomain& d, double h) {
  CaseDescriptor c;
  c.potential = problem.potential;
  c.kind = d.radial ? "radial" : "line";
  c.lower = d.lower;
  c.upper = d.upper;
  c.m = problem.m;
  c.nu = d.radial ? problem.nu : std::nullopt;
  c.h = h;
  return c;
}

HydrogenSpec hydrogen_spec(const HydrogenPotential& hp, const Problem& problem, double h) {
  if (!problem.box) throw ValidationError("hydrogen-effective needs --box R");
  HydrogenSpec s{problem.m + hp.ell + 1, hp.ell, hp.charge, h, *problem.box};
  s.validate();
  return s;
}

ShiftReport failed_row(CaseDescriptor c, const std::exception& e) {
  ShiftReport r;
  r.descriptor = std::move(c);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  r.lambda0 = r.lambda_confined = r.numeric_shift = r.log_numeric = nan;
  r.predicted_shift = r.log_predicted = r.ratio = nan;
  r.status = std::string("error: ") + e.what();
  return r;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open '" + path + "' for writing");
  f << content;
}

json document(const std::string& command, const std::vector<ShiftReport>& reports, const std::optional<OrderFit>& fit,
              const char* fit_variable) {
  json rows = json::array();
  for (const auto& r : reports) rows.push_back(to_json(r));
  json doc = {{"tool", "tunnelshift"}, {"schema_version", 1}, {"command", command}, {"reports", rows}};
  if (fit)
    doc["fit"] = {{"variable", fit_variable},
                  {"order", std::isfinite(fit->order) ? json(fit->order) : json(nullptr)},
                  {"points", fit->points}};
  else
    doc["fit"] = nullptr;
  return doc;
}

void emit(const Output& o, const std::string& command, const std::vector<ShiftReport>& reports,
          const std::optional<OrderFit>& fit, SweepVariable variable, std::ostream& out) {
  const char* fit_variable = variable == SweepVariable::h ? "h" : "R";
  const json doc = document(command, reports, fit, fit_variable);
  if (!o.json_path.empty()) write_file(o.json_path, doc.dump(2) + "\n");
  if (!o.csv_path.empty()) {
    std::ostringstream csv;
    write_csv(csv, reports, variable);
    write_file(o.csv_path, csv.str());
  }
  if (o.format == "json") {
    out << doc.dump(2) << '\n';
  } else if (o.format == "csv") {
    write_csv(out, reports, variable);
  } else if (o.format == "table") {
    write_table(out, reports, variable);
    if (fit) {
      out << "empirical order of |ratio - 1| in " << fit_variable << ": ";
      if (std::isfinite(fit->order))
        out << std::setprecision(6) << fit->order;
      else
        out << "n/a";
      out << " (" << fit->points << " points)\n";
    }
    for (const auto& r : reports)
      for (const auto& w : r.diagnostics.warnings) out << "warning: " << w << '\n';
  }
}

std::optional<OrderFit> fit_rows(const std::vector<ShiftReport>& reports, SweepVariable variable) {
  std::vector<double> x, e;
  for (const auto& r : reports) {
    if (r.status != "ok") continue;
    x.push_back(variable == SweepVariable::h ? r.descriptor.h : r.descriptor.upper);
    e.push_back(std::fabs(r.ratio - 1.0));
  }
  return fit_order(x, e);
}

int finish_rows(const std::vector<ShiftReport>& reports, std::ostream& err) {
  int failed = 0;
  for (const auto& r : reports)
    if (r.status != "ok") {
      ++failed;
      err << "row failed: " << r.status << '\n';
    }
  return failed == static_cast<int>(reports.size()) ? kExitNumerical : kExitOk;
}

// ------------------------------------------------------------------ commands

int cmd_validate(const Problem& problem, int samples, const Output& o, std::ostream& out) {
  const ConfinementDomain d = domain_of(problem);
  const PotentialSpec p =
      potential_from_text(problem.potential, d.radial ? PotentialKind::radial : PotentialKind::line);
  const ValidationReport report = validate_potential(p, d, samples);
  json violations = json::array();
  for (const auto& v : report.violations)
    violations.push_back({{"assumption", v.assumption},
                          {"check", v.check},
                          {"x", v.x},
                          {"observed", std::isfinite(v.observed) ? json(v.observed) : json(nullptr)}});
  const json doc = {{"tool", "tunnelshift"},
                    {"schema_version", 1},
                    {"command", "validate"},
                    {"potential", p.description},
                    {"omega", std::isfinite(p.omega) ? json(p.omega) : json(nullptr)},
                    {"passed", report.passed},
                    {"violations", violations}};
  if (!o.json_path.empty()) write_file(o.json_path, doc.dump(2) + "\n");
  if (o.format == "json") {
    out << doc.dump(2) << '\n';
  } else {
    out << "potential: " << p.description << '\n';
    out << "omega: " << std::setprecision(17) << p.omega << '\n';
    if (report.passed) out << "ok\n";
    for (const auto& v : report.violations)
      out << "violation (assumption " << v.assumption << "): " << v.check << " at x = " << v.x
          << ", observed " << v.observed << '\n';
  }
  return report.passed ? kExitOk : kExitUsage;
}

int cmd_shift(const Problem& problem, const Numerics& numerics, bool oracle, int grid_n, const Output& o,
              std::ostream& out) {
  ShiftReport r;
  if (const auto hp = hydrogen_potential(problem.potential)) {
    r = run_hydrogen_case(hydrogen_spec(*hp, problem, problem.h), numerics.options());
  } else {
    const ConfinementDomain d = domain_of(problem);
    if (d.radial && !problem.nu) throw ValidationError("--box needs --nu");
    if (!d.radial && problem.nu) throw ValidationError("--nu is only meaningful with --box");
    ModeSpec{problem.m, problem.h, problem.nu}.validate();
    const PotentialSpec p =
        potential_from_text(problem.potential, d.radial ? PotentialKind::radial : PotentialKind::line);
    check_validation(p, d);
    r = run_shift_case(p, describe(problem, d, problem.h), numerics.options(),
                       oracle ? std::optional<int>(grid_n) : std::nullopt);
  }
  if (o.format == "table") {
    out << std::setprecision(17);
    out << "potential        " << r.descriptor.potential << '\n';
    out << "m                " << r.descriptor.m << '\n';
    if (r.descriptor.nu) out << "nu               " << *r.descriptor.nu << '\n';
    out << "h                " << r.descriptor.h << '\n';
    out << "lambda0          " << r.lambda0 << "  (" << r.diagnostics.lambda0_method << ")\n";
    out << "lambda_confined  " << r.lambda_confined << '\n';
    out << "numeric_shift    " << r.numeric_shift << "  (log " << r.log_numeric << ")\n";
    out << "predicted_shift  " << r.predicted_shift << "  (log " << r.log_predicted << ")\n";
    out << "ratio            " << r.ratio << '\n';
    if (r.diagnostics.oracle_value) {
      out << "fd_oracle        " << *r.diagnostics.oracle_value << "  (rel diff "
          << std::setprecision(3) << (r.lambda_confined / *r.diagnostics.oracle_value - 1.0) << ")\n";
    }
    for (const auto& w : r.diagnostics.warnings) out << "warning: " << w << '\n';
    Output files = o;
    files.format = "none";
    emit(files, "shift", {r}, std::nullopt, SweepVariable::h, out);
  } else {
    emit(o, "shift", {r}, std::nullopt, SweepVariable::h, out);
  }
  return kExitOk;
}

int cmd_sweep(const Problem& problem, const Numerics& numerics, const std::string& grid_text, int jobs,
              const Output& o, std::ostream& out, std::ostream& err) {
  const auto g = parse_list(grid_text, "--h-grid");
  if (g.size() != 3) throw ValidationError("--h-grid expects start,stop,count");
  if (g[2] != std::floor(g[2])) throw ValidationError("--h-grid count must be an integer");
  const auto hs = geometric_grid(g[0], g[1], static_cast<int>(g[2]));
  if (jobs < 1) throw ValidationError("--jobs must be at least 1");

  std::vector<ShiftReport> reports;
  if (const auto hp = hydrogen_potential(problem.potential)) {
    for (double h : hs) hydrogen_spec(*hp, problem, h);
    reports = run_parallel(static_cast<int>(hs.size()), jobs, [&](int i) {
      const HydrogenSpec s = hydrogen_spec(*hp, problem, hs[i]);
      try {
        return run_hydrogen_case(s, numerics.options());
      } catch (const SolverError& e) {
        CaseDescriptor c{problem.potential, "hydrogen", 0.0, s.radius, problem.m, s.ell + 0.5, s.h, s.n, s.ell, s.charge};
        return failed_row(c, e);
      }
    });
  } else {
    const ConfinementDomain d = domain_of(problem);
    if (d.radial && !problem.nu) throw ValidationError("--box needs --nu");
    if (!d.radial && problem.nu) throw ValidationError("--nu is only meaningful with --box");
    const PotentialSpec p =
        potential_from_text(problem.potential, d.radial ? PotentialKind::radial : PotentialKind::line);
    check_validation(p, d);
    for (double h : hs) ModeSpec{problem.m, h, problem.nu}.validate();
    reports = run_parallel(static_cast<int>(hs.size()), jobs, [&](int i) {
      const CaseDescriptor c = describe(problem, d, hs[i]);
      try {
        return run_shift_case(p, c, numerics.options());
      } catch (const SolverError& e) {
        return failed_row(c, e);
      } catch (const expr::EvalError& e) {
        return failed_row(c, e);
      }
    });
  }
  emit(o, "sweep", reports, fit_rows(reports, SweepVariable::h), SweepVariable::h, out);
  return finish_rows(reports, err);
}

int cmd_hydrogen(int n, int ell, double charge, double h, const std::string& r_grid, int jobs, const Numerics& numerics,
                 const Output& o, std::ostream& out, std::ostream& err) {
  const auto radii = parse_list(r_grid, "--R-grid");
  if (radii.empty()) throw ValidationError("--R-grid is empty");
  if (jobs < 1) throw ValidationError("--jobs must be at least 1");
  for (double r : radii) HydrogenSpec{n, ell, charge, h, r}.validate();
  const auto reports = run_parallel(static_cast<int>(radii.size()), jobs, [&](int i) {
    const HydrogenSpec s{n, ell, charge, h, radii[i]};
    try {
      return run_hydrogen_case(s, numerics.options());
    } catch (const SolverError& e) {
      CaseDescriptor c{"hydrogen", "hydrogen", 0.0, s.radius, s.mode_index(), ell + 0.5, h, n, ell, charge};
      return failed_row(c, e);
    }
  });
  emit(o, "hydrogen", reports, fit_rows(reports, SweepVariable::radius), SweepVariable::radius, out);
  return finish_rows(reports, err);
}

int cmd_oracle(const Problem& problem, const Numerics& numerics, int grid_n, int count, const Output& o,
               std::ostream& out) {
  const ConfinementDomain d = domain_of(problem);
  if (d.radial && !problem.nu) throw ValidationError("--box needs --nu");
  if (!d.radial && problem.nu) throw ValidationError("--nu is only meaningful with --box");
  if (count < 1) throw ValidationError("--count must be positive");
  const PotentialSpec p = potential_from_text(problem.potential, d.radial ? PotentialKind::radial : PotentialKind::line);
  check_validation(p, d);
  const ModeSpec base{0, problem.h, problem.nu};
  const auto fd = fd_oracle(p, d, base, grid_n, count);
  json rows = json::array();
  std::ostringstream table;
  table << std::setw(4) << "m" << std::setw(26) << "shooting" << std::setw(26) << "finite_difference" << std::setw(14)
        << "rel_diff" << '\n';
  for (int k = 0; k < count; ++k) {
    const Eigenpair s = confined_eigenvalue(p, d, {k, problem.h, problem.nu}, numerics.options());
    const double rel = s.value / fd[k].value - 1.0;
    table << std::setw(4) << k << std::setprecision(17) << std::setw(26) << s.value << std::setw(26) << fd[k].value
          << std::setprecision(3) << std::setw(14) << rel << '\n';
    rows.push_back({{"m", k}, {"shooting", s.value}, {"finite_difference", fd[k].value}, {"relative_difference", rel}});
  }
  const json doc = {{"tool", "tunnelshift"}, {"schema_version", 1}, {"command", "oracle"},
                    {"potential", problem.potential}, {"grid_n", grid_n}, {"rows", rows}};
  if (!o.json_path.empty()) write_file(o.json_path, doc.dump(2) + "\n");
  if (o.format == "json")
    out << doc.dump(2) << '\n';
  else
    out << table.str();
  return kExitOk;
}

void add_problem(CLI::App* c, Problem& p, bool with_h, bool with_m) {
  c->add_option("--potential", p.potential, "harmonic, harmonic(k), quartic(c), hydrogen-effective(Z,l) or an expression in x")
      ->required();
  c->add_option("--domain", p.domain, "line domain a,b with a < 0 < b");
  c->add_option("--box", p.box, "radial box length L");
  c->add_option("--nu", p.nu, "radial parameter nu > 0");
  if (with_m) c->add_option("--m", p.m, "mode index")->required();
  if (with_h) c->add_option("--h", p.h, "semiclassical parameter")->required();
}

void add_numerics(CLI::App* c, Numerics& n) {
  c->add_option("--newton-tol", n.newton_tol, "Newton step tolerance (relative to h)");
  c->add_option("--integrate-tol", n.integrate_tol, "integrator tolerance in [1e-13, 1e-6]");
  c->add_flag("--frozen-jacobian", n.frozen, "reuse the initial Jacobian in the Newton iteration");
  c->add_option("--max-box", n.max_box, "largest box coordinate for unconfined eigenvalues");
  c->add_option("--decay-exponent", n.decay_exponent, "minimum 2 phi/h at the unconfined box edge");
}

void add_output(CLI::App* c, Output& o, bool csv) {
  c->add_option("--format", o.format, "stdout format")->check(CLI::IsMember({"table", "json", "csv"}));
  c->add_option("--json", o.json_path, "write a JSON document to this file");
  if (csv) c->add_option("--csv", o.csv_path, "write CSV to this file");
}

std::string format_config_value(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) {
    std::ostringstream s;
    s << std::setprecision(17) << v.get<double>();
    return s.str();
  }
  if (v.is_array()) {
    std::string joined;
    for (const auto& item : v) joined += (joined.empty() ? "" : ",") + format_config_value(item);
    return joined;
  }
  throw ValidationError("unsupported config value: " + v.dump());
}

}  // namespace

std::vector<double> geometric_grid(double start, double stop, int count) {
  if (count < 1) throw ValidationError("grid is empty");
  if (!(start > 0.0) || !(stop > 0.0)) throw ValidationError("geometric grid bounds must be positive");
  std::vector<double> out;
  for (int i = 0; i < count; ++i)
    out.push_back(count == 1 ? start : start * std::pow(stop / start, static_cast<double>(i) / (count - 1)));
  if (count > 1) out.back() = stop;
  return out;
}

std::vector<std::string> merge_config(const std::vector<std::string>& args, const std::string& config_text) {
  json config;
  try {
    config = json::parse(config_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!config.is_object()) throw ValidationError("config must be a JSON object");
  std::string command;
  for (const auto& a : args)
    if (!a.empty() && a[0] != '-') {
      command = a;
      break;
    }
  std::map<std::string, json> values;
  for (const auto& [key, value] : config.items())
    if (!value.is_object()) values[key] = value;
  if (config.contains(command) && config[command].is_object())
    for (const auto& [key, value] : config[command].items()) values[key] = value;

  std::vector<std::string> merged = args;
  for (const auto& [key, value] : values) {
    const std::string flag = "--" + key;
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (given || value.is_null()) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) merged.push_back(flag);
      continue;
    }
    merged.push_back(flag + "=" + format_config_value(value));
  }
  return merged;
}

int run_cli(const std::vector<std::string>& input, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  std::optional<std::string> config_path;
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (input[i] == "--config" && i + 1 < input.size()) {
      config_path = input[++i];
    } else if (input[i].rfind("--config=", 0) == 0) {
      config_path = input[i].substr(9);
    } else {
      args.push_back(input[i]);
    }
  }

  try {
    if (config_path) {
      std::ifstream f(*config_path);
      if (!f) throw ValidationError("cannot read config file '" + *config_path + "'");
      std::stringstream text;
      text << f.rdbuf();
      args = merge_config(args, text.str());
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App app{"Dirichlet-confined semiclassical eigenvalues and tunneling-shift asymptotics", "tunnelshift"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help and exit");
  app.set_version_flag("--version", "tunnelshift 1.0");

  Problem problem;
  Numerics numerics;
  Output output;
  int samples = 64, grid_n = 2000, count = 3, jobs = 1;
  bool oracle = false;
  std::string h_grid, r_grid;
  int n = 1, ell = 0;
  double charge = 2.0, hydrogen_h = 1.0;

  auto* validate = app.add_subcommand("validate", "check a potential against the model assumptions");
  add_problem(validate, problem, false, false);
  validate->add_option("--samples", samples, "sample count (>= 16)");
  add_output(validate, output, false);

  auto* shift = app.add_subcommand("shift", "numeric vs predicted confinement shift for one case");
  add_problem(shift, problem, true, true);
  add_numerics(shift, numerics);
  shift->add_flag("--oracle", oracle, "also compute the finite-difference eigenvalue");
  shift->add_option("--grid-n", grid_n, "finite-difference grid intervals (>= 200)");
  add_output(shift, output, true);

  auto* sweep = app.add_subcommand("sweep", "shift reports over a geometric h grid");
  add_problem(sweep, problem, false, true);
  add_numerics(sweep, numerics);
  sweep->add_option("--h-grid", h_grid, "start,stop,count (geometric)")->required();
  sweep->add_option("--jobs", jobs, "concurrent rows");
  add_output(sweep, output, true);

  auto* hydrogen = app.add_subcommand("hydrogen", "confined hydrogen levels over box radii");
  hydrogen->add_option("--n", n, "principal number")->required();
  hydrogen->add_option("--ell", ell, "angular momentum");
  hydrogen->add_option("--Z", charge, "nuclear charge");
  hydrogen->add_option("--h", hydrogen_h, "semiclassical parameter");
  hydrogen->add_option("--R-grid", r_grid, "comma-separated box radii")->required();
  hydrogen->add_option("--jobs", jobs, "concurrent rows");
  add_numerics(hydrogen, numerics);
  add_output(hydrogen, output, true);

  auto* oracle_cmd = app.add_subcommand("oracle", "shooting vs finite-difference eigenvalues");
  add_problem(oracle_cmd, problem, true, false);
  add_numerics(oracle_cmd, numerics);
  oracle_cmd->add_option("--grid-n", grid_n, "finite-difference grid intervals (>= 200)");
  oracle_cmd->add_option("--count", count, "number of modes");
  add_output(oracle_cmd, output, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(problem, samples, output, out);
    if (shift->parsed()) return cmd_shift(problem, numerics, oracle, grid_n, output, out);
    if (sweep->parsed()) return cmd_sweep(problem, numerics, h_grid, jobs, output, out, err);
    if (hydrogen->parsed())
      return cmd_hydrogen(n, ell, charge, hydrogen_h, r_grid, jobs, numerics, output, out, err);
    if (oracle_cmd->parsed()) return cmd_oracle(problem, numerics, grid_n, count, output, out);
  } catch (const expr::ParseError& e) {
    err << "error: " << e.what() << '\n' << e.caret_annotation() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SolverError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace tunnelshift
