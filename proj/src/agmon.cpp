#include "tunnelshift/agmon.hpp"

#include <cmath>
#include <sstream>

#include "tunnelshift/quadrature.hpp"

namespace tunnelshift {

namespace {

void check_tolerance(double tol) {
  if (!(tol >= 1e-14 && tol <= 1e-6)) throw ValidationError("quadrature tolerance must lie in [1e-14, 1e-6]");
}

// sqrt(V(t))/|t|, extended by omega at t = 0.
double root_ratio(const PotentialSpec& p, double t) {
  if (t == 0.0) return p.omega;
  const double v = p.value(t);
  if (v < 0.0) {
    std::ostringstream msg;
    msg << "negative potential V(" << t << ") = " << v;
    throw ValidationError(msg.str());
  }
  return std::sqrt(v) / std::fabs(t);
}

double remainder_direct(const PotentialSpec& p, int m, double nu, bool radial, double t) {
  const double q = root_ratio(p, t);
  const double phi2 = p.d1(t) / (2.0 * t * q);
  double numerator;
  if (radial)
    numerator = 2.0 * p.omega * (2.0 * m + 1.0 + nu) - phi2 - (2.0 * nu + 1.0 + 4.0 * m) * q;
  else
    numerator = p.omega * (2.0 * m + 1.0) - phi2 - 2.0 * m * q;
  return numerator / (2.0 * t * q);
}

double remainder(const PotentialSpec& p, int m, double nu, bool radial, double t, double cutoff) {
  if (std::fabs(t) >= cutoff) return remainder_direct(p, m, nu, radial, t);
  // Cubic through r(s), r(2s), r(3s), r(4s) on the same side of 0 as t.
  const double s = (t < 0.0 ? -1.0 : 1.0) * cutoff;
  double f[4];
  for (int k = 0; k < 4; ++k) f[k] = remainder_direct(p, m, nu, radial, s * (k + 1));
  const double u = t / s;  // position in units of s, nodes at 1..4
  double result = 0.0;
  for (int i = 0; i < 4; ++i) {
    double li = 1.0;
    for (int j = 0; j < 4; ++j)
      if (j != i) li *= (u - (j + 1)) / double(i - j);
    result += li * f[i];
  }
  return result;
}

double remainder_integral(const PotentialSpec& p, int m, double nu, bool radial, double x, double tol) {
  if (!(p.omega > 0.0)) throw ValidationError("degenerate minimum");
  const double cutoff = 0.02 * std::fabs(x);
  const auto result = integrate_adaptive([&](double t) { return remainder(p, m, nu, radial, t, cutoff); }, 0.0, x,
                                         tol, tol);
  if (!result.converged || !std::isfinite(result.value)) {
    std::ostringstream msg;
    msg << "a_0 remainder quadrature did not converge on [0, " << x << "] (estimate " << result.value
        << ", error " << result.error_estimate << ", panels " << result.panels << ")";
    throw SolverError(msg.str());
  }
  return result.value;
}

}  // namespace

double agmon_distance(const PotentialSpec& p, double x, double tol) {
  check_tolerance(tol);
  if (p.kind == PotentialKind::radial && x < 0.0) throw ValidationError("radial Agmon distance needs x >= 0");
  if (x == 0.0) return 0.0;
  const double a = std::min(0.0, x), b = std::max(0.0, x);
  const auto r = integrate_adaptive([&](double t) { return std::fabs(t) * root_ratio(p, t); }, a, b, tol, tol);
  if (!r.converged) throw SolverError("Agmon distance quadrature did not converge");
  return r.value;
}

double agmon_derivative(const PotentialSpec& p, double x) {
  if (x == 0.0) return 0.0;
  return x * root_ratio(p, x);
}

double prefactor_remainder(const PotentialSpec& p, int m, double nu, double t, double cutoff) {
  const bool radial = p.kind == PotentialKind::radial;
  return remainder(p, m, nu, radial, t, cutoff);
}

double prefactor_a0_line(const PotentialSpec& p, int m, double x, double tol) {
  check_tolerance(tol);
  if (m < 0) throw ValidationError("mode index must be non-negative");
  if (x == 0.0) throw ValidationError("a_0 is evaluated away from the well bottom");
  const double integral = remainder_integral(p, m, 0.0, false, x, tol);
  return std::pow(std::fabs(x), m) * std::exp(integral);
}

double prefactor_a0_radial(const PotentialSpec& w, int m, double nu, double x, double tol) {
  check_tolerance(tol);
  if (m < 0) throw ValidationError("mode index must be non-negative");
  if (!(nu > 0.0)) throw ValidationError("nu must be positive");
  if (!(x > 0.0)) throw ValidationError("radial a_0 needs x > 0");
  const double integral = remainder_integral(w, m, nu, true, x, tol);
  return std::pow(x, 2 * m) * std::exp(integral);
}

ConfinementDomain working_domain(const ConfinementDomain& domain) {
  ConfinementDomain d = domain;
  const double grow = 0.25;
  if (!d.radial) d.lower *= 1.0 + grow;
  d.upper *= 1.0 + grow;
  return d;
}

bool in_working_domain(const ConfinementDomain& domain, double x) {
  const auto d = working_domain(domain);
  return x >= d.lower && x <= d.upper;
}

}  // namespace tunnelshift
