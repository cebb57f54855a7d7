#include "tunnelshift/asymptotics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "tunnelshift/agmon.hpp"

namespace tunnelshift {

namespace {

constexpr std::array<double, 21> kFactorials = [] {
  std::array<double, 21> f{};
  f[0] = 1.0;
  for (int i = 1; i <= 20; ++i) f[i] = f[i - 1] * i;
  return f;
}();

double log_factorial(int n) { return n <= 20 ? std::log(kFactorials[n]) : std::lgamma(n + 1.0); }

ShiftTerm make_term(double log_coefficient, double power, double h, double exponent) {
  ShiftTerm t;
  t.exponent = exponent;
  t.coefficient = std::exp(log_coefficient);
  t.log_value = log_coefficient + power * std::log(h) - exponent;
  t.value = std::exp(t.log_value);
  return t;
}

double log_add(double a, double b) {
  const double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

void finish(ShiftPrediction& s, double log_value) {
  s.log_value = log_value;
  s.leading_value = std::exp(log_value);
}

}  // namespace

double factorial(int n) {
  if (n < 0) throw ValidationError("factorial of a negative integer");
  return n <= 20 ? kFactorials[n] : std::tgamma(n + 1.0);
}

ShiftPrediction shift_leading_line(const PotentialSpec& p, const ConfinementDomain& domain, const ModeSpec& mode,
                                   bool normalize) {
  mode.validate();
  if (mode.radial() || domain.radial || !domain.well_formed())
    throw ValidationError("line shift prediction needs a line domain (r-, r+) and no nu");
  if (!(p.omega > 0.0)) throw ValidationError("degenerate minimum: V''(0) must be positive");
  if (normalize && p.omega != 1.0) {
    const NormalizedProblem n = normalize_to_unit_curvature(p, domain, mode.h);
    return shift_leading_line(n.potential, n.domain, {mode.m, n.h, std::nullopt}, false);
  }
  const int m = mode.m;
  const double h = mode.h;
  const double log_constant = (m + 1) * std::log(2.0) - log_factorial(m) - 0.5 * std::log(std::numbers::pi) +
                              (m + 0.5) * std::log(p.omega);
  auto term = [&](double r) {
    const double a0 = prefactor_a0_line(p, m, r);
    const double log_s0 = log_constant + 0.5 * std::log(p.value(r)) + 2.0 * std::log(a0);
    return make_term(log_s0, 0.5 - m, h, 2.0 * agmon_distance(p, r) / h);
  };
  ShiftPrediction s;
  s.prefactor_power = 0.5 - m;
  s.endpoint_plus = term(domain.upper);
  s.endpoint_minus = term(domain.lower);
  s.exponent = std::min(s.endpoint_plus->exponent, s.endpoint_minus->exponent);
  finish(s, log_add(s.endpoint_plus->log_value, s.endpoint_minus->log_value));
  const double reach = std::min(-domain.lower, domain.upper) * p.omega;
  if (reach * reach / (h * p.omega) < 4.0) s.warnings.push_back("h is not small compared with the box: r^2/h < 4");
  return s;
}

ShiftPrediction shift_leading_radial(const PotentialSpec& w, double length, const ModeSpec& mode, bool normalize) {
  mode.validate();
  if (!mode.radial()) throw ValidationError("radial shift prediction needs nu");
  if (!(length > 0.0)) throw ValidationError("box length must be positive");
  if (!(w.omega > 0.0)) throw ValidationError("degenerate minimum: W''(0) must be positive");
  if (normalize && w.omega != 1.0) {
    const NormalizedProblem n = normalize_to_unit_curvature(w, ConfinementDomain::box(length), mode.h);
    return shift_leading_radial(n.potential, n.domain.upper, {mode.m, n.h, mode.nu}, false);
  }
  const int m = mode.m;
  const double nu = *mode.nu;
  const double a0 = prefactor_a0_radial(w, m, nu, length);
  const double log_s0 = std::log(4.0) + 0.5 * std::log(w.value(length)) - std::lgamma(1.0 + m + nu) -
                        log_factorial(m) + (2 * m + 1 + nu) * std::log(w.omega) + (1 + 2 * nu) * std::log(length) +
                        2.0 * std::log(a0);
  const ShiftTerm t = make_term(log_s0, -nu - 2 * m, mode.h, 2.0 * agmon_distance(w, length) / mode.h);
  ShiftPrediction s;
  s.prefactor_power = -nu - 2 * m;
  s.exponent = t.exponent;
  finish(s, t.log_value);
  if (length * length * w.omega / mode.h < 4.0) s.warnings.push_back("h is not small compared with the box: L^2/h < 4");
  return s;
}

ShiftPrediction ho_shift(const ModeSpec& mode, double half_width) {
  mode.validate();
  if (!(half_width > 0.0)) throw ValidationError("half width must be positive");
  const int m = mode.m;
  const double log_c = (2 + m) * std::log(2.0) - log_factorial(m) - 0.5 * std::log(std::numbers::pi) +
                       (2 * m + 1) * std::log(half_width);
  const ShiftTerm t = make_term(log_c, 0.5 - m, mode.h, half_width * half_width / mode.h);
  ShiftPrediction s;
  s.prefactor_power = 0.5 - m;
  s.exponent = t.exponent;
  finish(s, t.log_value);
  if (half_width * half_width / mode.h < 4.0) s.warnings.push_back("R^2/h < 4: the O(h/R^2) correction is not small");
  return s;
}

double ho_confined_closed_form(const ModeSpec& mode, double half_width) {
  return (2 * mode.m + 1) * mode.h + ho_shift(mode, half_width).leading_value;
}

ShiftPrediction iso_ho_shift(const ModeSpec& mode, double length) {
  mode.validate();
  if (!mode.radial()) throw ValidationError("nu is required");
  if (!(length > 0.0)) throw ValidationError("box length must be positive");
  const int m = mode.m;
  const double nu = *mode.nu;
  const double log_c = std::log(4.0) + 2.0 * (2 * m + 1 + nu) * std::log(length) - log_factorial(m) -
                       std::lgamma(1.0 + m + nu);
  const ShiftTerm t = make_term(log_c, -nu - 2 * m, mode.h, length * length / mode.h);
  ShiftPrediction s;
  s.prefactor_power = -nu - 2 * m;
  s.exponent = t.exponent;
  finish(s, t.log_value);
  if (length * length / mode.h < 4.0) s.warnings.push_back("L^2/h < 4: the O(h/L^2) correction is not small");
  return s;
}

double iso_ho_confined_closed_form(const ModeSpec& mode, double length) {
  return 2.0 * (2 * mode.m + 1 + *mode.nu) * mode.h + iso_ho_shift(mode, length).leading_value;
}

ShiftPrediction hydrogen_shift(const HydrogenSpec& spec) {
  spec.validate();
  const int n = spec.n;
  const double h = spec.h;
  const double log_c = (2 * n + 1) * std::log(2.0) + 2 * n * std::log(spec.radius) - (2 * n + 3) * std::log(n) -
                       log_factorial(n - spec.ell - 1) - log_factorial(n + spec.ell) +
                       (2 * n + 2) * std::log(spec.charge / 2.0);
  const ShiftTerm t = make_term(log_c, -4.0 * n - 2.0, h, spec.charge * spec.radius / (n * h * h));
  ShiftPrediction s;
  s.prefactor_power = -4.0 * n - 2.0;
  s.exponent = t.exponent;
  finish(s, t.log_value);
  if (h * h / spec.radius > 0.2) s.warnings.push_back("h^2/R > 0.2: the O(h^2/R) correction is not small");
  return s;
}

double hydrogen_confined_closed_form(const HydrogenSpec& spec) {
  return spec.unconfined_energy() + hydrogen_shift(spec).leading_value;
}

double hydrogen_k_shift_log(const HydrogenSpec& spec) {
  spec.validate();
  const int n = spec.n;
  const double h = spec.h;
  return 2 * n * std::log(2.0) + (1.0 - 4 * n) * std::log(h) + 2 * n * std::log(spec.radius) -
         2 * n * std::log(n) - log_factorial(n - spec.ell - 1) - log_factorial(n + spec.ell) -
         2.0 * spec.radius / (n * h * h);
}

}  // namespace tunnelshift
