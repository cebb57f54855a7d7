#include "tunnelshift/report.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "tunnelshift/asymptotics.hpp"

namespace tunnelshift {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_from(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return kNaN;
  return it->get<double>();
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> optional_from(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

bool same(const std::optional<double>& a, const std::optional<double>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || same(*a, *b);
}

std::string format17(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "" : (v > 0 ? "inf" : "-inf");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double sweep_value(const ShiftReport& r, SweepVariable variable) {
  return variable == SweepVariable::h ? r.descriptor.h : r.descriptor.upper;
}

}  // namespace

bool same_report(const ShiftReport& a, const ShiftReport& b) {
  const auto& x = a.descriptor;
  const auto& y = b.descriptor;
  const bool descriptor = x.potential == y.potential && x.kind == y.kind && same(x.lower, y.lower) &&
                          same(x.upper, y.upper) && x.m == y.m && same(x.nu, y.nu) && same(x.h, y.h) && x.n == y.n &&
                          x.ell == y.ell && same(x.charge, y.charge);
  const auto& p = a.diagnostics;
  const auto& q = b.diagnostics;
  const bool diagnostics = p.iterations == q.iterations && p.unconfined_iterations == q.unconfined_iterations &&
                           p.steps == q.steps && p.lambda0_method == q.lambda0_method &&
                           same(p.oracle_value, q.oracle_value) && p.warnings == q.warnings;
  return descriptor && diagnostics && same(a.lambda0, b.lambda0) && same(a.lambda_confined, b.lambda_confined) &&
         same(a.numeric_shift, b.numeric_shift) && same(a.log_numeric, b.log_numeric) &&
         same(a.predicted_shift, b.predicted_shift) && same(a.log_predicted, b.log_predicted) &&
         same(a.ratio, b.ratio) && a.status == b.status;
}

json to_json(const ShiftReport& r) {
  const auto& d = r.descriptor;
  json c = {{"potential", d.potential}, {"kind", d.kind},   {"domain", {number(d.lower), number(d.upper)}},
            {"m", d.m},                 {"nu", optional_json(d.nu)}, {"h", number(d.h)},
            {"n", optional_json(d.n)},  {"ell", optional_json(d.ell)}, {"Z", optional_json(d.charge)}};
  json diag = {{"iterations", r.diagnostics.iterations},
               {"unconfined_iterations", r.diagnostics.unconfined_iterations},
               {"steps", r.diagnostics.steps},
               {"lambda0_method", r.diagnostics.lambda0_method},
               {"oracle_value", optional_json(r.diagnostics.oracle_value)},
               {"warnings", r.diagnostics.warnings}};
  return {{"case", c},
          {"lambda0", number(r.lambda0)},
          {"lambda_confined", number(r.lambda_confined)},
          {"numeric_shift", number(r.numeric_shift)},
          {"log_numeric", number(r.log_numeric)},
          {"predicted_shift", number(r.predicted_shift)},
          {"log_predicted", number(r.log_predicted)},
          {"ratio", number(r.ratio)},
          {"status", r.status},
          {"diagnostics", diag}};
}

namespace {
ShiftReport parse_report(const json& j);
}

ShiftReport report_from_json(const json& j) {
  try {
    return parse_report(j);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed shift report: ") + e.what());
  }
}

namespace {

ShiftReport parse_report(const json& j) {
  ShiftReport r;
  const json& c = j.at("case");
  auto& d = r.descriptor;
  d.potential = c.at("potential").get<std::string>();
  d.kind = c.at("kind").get<std::string>();
  const json& domain = c.at("domain");
  d.lower = domain.at(0).is_null() ? kNaN : domain.at(0).get<double>();
  d.upper = domain.at(1).is_null() ? kNaN : domain.at(1).get<double>();
  d.m = c.at("m").get<int>();
  d.nu = optional_from<double>(c, "nu");
  d.h = number_from(c, "h");
  d.n = optional_from<int>(c, "n");
  d.ell = optional_from<int>(c, "ell");
  d.charge = optional_from<double>(c, "Z");
  r.lambda0 = number_from(j, "lambda0");
  r.lambda_confined = number_from(j, "lambda_confined");
  r.numeric_shift = number_from(j, "numeric_shift");
  r.log_numeric = number_from(j, "log_numeric");
  r.predicted_shift = number_from(j, "predicted_shift");
  r.log_predicted = number_from(j, "log_predicted");
  r.ratio = number_from(j, "ratio");
  r.status = j.at("status").get<std::string>();
  const json& g = j.at("diagnostics");
  r.diagnostics.iterations = g.at("iterations").get<int>();
  r.diagnostics.unconfined_iterations = g.at("unconfined_iterations").get<int>();
  r.diagnostics.steps = g.at("steps").get<int>();
  r.diagnostics.lambda0_method = g.at("lambda0_method").get<std::string>();
  r.diagnostics.oracle_value = optional_from<double>(g, "oracle_value");
  r.diagnostics.warnings = g.at("warnings").get<std::vector<std::string>>();
  return r;
}

}  // namespace

void set_shift(ShiftReport& r, double log_predicted) {
  r.numeric_shift = r.lambda_confined - r.lambda0;
  r.log_numeric = r.numeric_shift > 0.0 ? std::log(r.numeric_shift) : kNaN;
  r.log_predicted = log_predicted;
  r.predicted_shift = std::exp(log_predicted);
  // The log form keeps the ratio meaningful when the prediction underflows.
  r.ratio = r.numeric_shift > 0.0 ? std::exp(r.log_numeric - log_predicted) : r.numeric_shift / r.predicted_shift;
}

std::string csv_header(SweepVariable variable) {
  return std::string(variable == SweepVariable::h ? "h" : "R") +
         ",lambda0,lambda_confined,numeric_shift,predicted_shift,ratio,log_numeric,log_predicted,status";
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv(std::ostream& os, const std::vector<ShiftReport>& reports, SweepVariable variable) {
  os << csv_header(variable) << "\r\n";
  for (const auto& r : reports) {
    os << format17(sweep_value(r, variable)) << ',' << format17(r.lambda0) << ',' << format17(r.lambda_confined) << ','
       << format17(r.numeric_shift) << ',' << format17(r.predicted_shift) << ',' << format17(r.ratio) << ','
       << format17(r.log_numeric) << ',' << format17(r.log_predicted) << ',' << csv_escape(r.status) << "\r\n";
  }
}

void write_table(std::ostream& os, const std::vector<ShiftReport>& reports, SweepVariable variable) {
  const char* names[] = {variable == SweepVariable::h ? "h" : "R", "lambda0", "lambda_confined", "numeric_shift",
                         "predicted_shift", "ratio", "status"};
  std::ostringstream line;
  for (const char* n : names) line << std::setw(22) << n;
  os << line.str() << '\n';
  for (const auto& r : reports) {
    std::ostringstream row;
    row << std::setprecision(15);
    for (double v : {sweep_value(r, variable), r.lambda0, r.lambda_confined, r.numeric_shift, r.predicted_shift,
                     r.ratio})
      row << std::setw(22) << v;
    row << std::setw(22) << r.status;
    os << row.str() << '\n';
  }
}

OrderFit fit_order(const std::vector<double>& x, const std::vector<double>& err) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < std::min(x.size(), err.size()); ++i) {
    if (!(x[i] > 0.0) || !(err[i] > 0.0) || !std::isfinite(x[i]) || !std::isfinite(err[i])) continue;
    const double a = std::log(x[i]), b = std::log(err[i]);
    sx += a, sy += b, sxx += a * a, sxy += a * b;
    ++n;
  }
  OrderFit fit;
  fit.points = n;
  const double denom = n * sxx - sx * sx;
  if (n < 2 || denom == 0.0) {
    fit.order = fit.intercept = kNaN;
    return fit;
  }
  fit.order = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.order * sx) / n;
  return fit;
}

ShiftReport run_shift_case(const PotentialSpec& p, const CaseDescriptor& descriptor, const SpectraOptions& options,
                           std::optional<int> oracle_grid) {
  ShiftReport r;
  r.descriptor = descriptor;
  const bool radial = descriptor.kind == "radial";
  const ModeSpec mode{descriptor.m, descriptor.h, radial ? descriptor.nu : std::nullopt};
  const ConfinementDomain domain =
      radial ? ConfinementDomain::box(descriptor.upper) : ConfinementDomain::line(descriptor.lower, descriptor.upper);

  const Eigenpair unconfined = unconfined_eigenvalue(p, mode, options);
  const Eigenpair confined = confined_eigenvalue(p, domain, mode, options);
  const ShiftPrediction prediction =
      radial ? shift_leading_radial(p, domain.upper, mode) : shift_leading_line(p, domain, mode);
  r.lambda0 = unconfined.value;
  r.lambda_confined = confined.value;
  set_shift(r, prediction.log_value);
  r.diagnostics.iterations = confined.iterations;
  r.diagnostics.unconfined_iterations = unconfined.iterations;
  r.diagnostics.steps = confined.steps + unconfined.steps;
  r.diagnostics.lambda0_method = method_name(unconfined.method);
  r.diagnostics.warnings = prediction.warnings;
  if (oracle_grid) r.diagnostics.oracle_value = fd_oracle(p, domain, mode, *oracle_grid, mode.m + 1).back().value;
  return r;
}

ShiftReport run_hydrogen_case(const HydrogenSpec& spec, const SpectraOptions& options) {
  ShiftReport r;
  auto& d = r.descriptor;
  d.potential = "hydrogen";
  d.kind = "hydrogen";
  d.lower = 0.0;
  d.upper = spec.radius;
  d.m = spec.mode_index();
  d.nu = spec.ell + 0.5;
  d.h = spec.h;
  d.n = spec.n;
  d.ell = spec.ell;
  d.charge = spec.charge;
  const Eigenpair e = hydrogen_confined(spec, options);
  const ShiftPrediction prediction = hydrogen_shift(spec);
  r.lambda0 = spec.unconfined_energy();
  r.lambda_confined = e.value;
  set_shift(r, prediction.log_value);
  r.diagnostics.iterations = e.iterations;
  r.diagnostics.steps = e.steps;
  r.diagnostics.lambda0_method = method_name(Method::closed_form);
  r.diagnostics.warnings = prediction.warnings;
  return r;
}

std::vector<ShiftReport> run_parallel(int count, int jobs, const std::function<ShiftReport(int)>& job) {
  std::vector<ShiftReport> out(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        out[i] = job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min(jobs, count));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace tunnelshift
