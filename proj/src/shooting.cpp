#include "tunnelshift/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

#include "tunnelshift/expr.hpp"

namespace tunnelshift {

namespace {

using State = std::array<double, 6>;

constexpr double kGrowthBound = 2.3538526683702e17;  // e^40
constexpr double kDecayBound = 1.0 / kGrowthBound;
constexpr int kMaxSteps = 2000000;

[[noreturn]] void fail(const std::string& what, double x) {
  std::ostringstream msg;
  msg.precision(17);
  msg << what << " at x = " << x;
  throw SolverError(msg.str());
}

double potential_at(const EffectivePotential& potential, double x) {
  double v;
  try {
    v = potential(x);
  } catch (const expr::EvalError& e) {
    fail(std::string("potential evaluation failed (") + e.what() + ")", x);
  }
  if (!std::isfinite(v)) fail("non-finite potential value", x);
  return v;
}

struct AugmentedSystem {
  const EffectivePotential* potential;
  double lambda;
  double inv_h2;

  void operator()(const State& y, State& dy, double x) const {
    const double k = (potential_at(*potential, x) - lambda) * inv_h2;
    dy[0] = y[1];
    dy[1] = k * y[0];
    dy[2] = y[3];
    dy[3] = k * y[2] - inv_h2 * y[0];
    dy[4] = y[5];
    dy[5] = k * y[4];
  }
};

// Error relative to each (value, derivative) pair's own magnitude, floored
// at 1e-6 of the overall state so that a pair starting at zero does not
// force tiny steps.
double error_norm(const State& y, const State& err, double tol) {
  double overall = 0.0;
  for (double v : y) overall = std::max(overall, std::fabs(v));
  if (overall == 0.0) return 0.0;
  double worst = 0.0;
  for (int g = 0; g < 3; ++g) {
    const double scale = std::max({std::fabs(y[2 * g]), std::fabs(y[2 * g + 1]), 1e-6 * overall});
    worst = std::max({worst, std::fabs(err[2 * g]) / (tol * scale), std::fabs(err[2 * g + 1]) / (tol * scale)});
  }
  return worst;
}

void renormalize(State& y, std::int64_t& exponent) {
  double big = 0.0;
  for (double v : y) big = std::max(big, std::fabs(v));
  if (big == 0.0 || (big <= kGrowthBound && big >= kDecayBound)) return;
  const int k = std::ilogb(big);
  for (double& v : y) v = std::ldexp(v, -k);
  exponent += k;
}

int sign_of(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

void check_tol(double tol) {
  if (!(tol >= 1e-13 && tol <= 1e-6)) throw ValidationError("integration tolerance must lie in [1e-13, 1e-6]");
}

}  // namespace

void ModeSpec::validate() const {
  if (m < 0) throw ValidationError("mode index m must be non-negative");
  if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("semiclassical parameter h must be positive");
  if (nu && !(*nu > 0.0)) throw ValidationError("nu must be positive");
}

EffectivePotential line_effective(const PotentialSpec& p) { return p.evaluate; }

EffectivePotential radial_effective(const PotentialSpec& w, double nu, double h) {
  const double centrifugal = h * h * (nu * nu - 0.25);
  return [v = w.evaluate, centrifugal](double x) { return v(x) + centrifugal / (x * x); };
}

EffectivePotential coulomb_effective(double charge, int ell, double h) {
  const double centrifugal = h * h * ell * (ell + 1.0);
  return [charge, centrifugal](double y) { return -charge / y + centrifugal / (y * y); };
}

Trajectory integrate_augmented(const EffectivePotential& potential, double lambda, double h, double x_from,
                               const State& y0, std::int64_t exponent0, double x_to, double tol) {
  check_tol(tol);
  if (!(h > 0.0)) throw ValidationError("h must be positive");
  Trajectory out;
  out.x = x_from;
  out.y = y0;
  out.exponent = exponent0;
  renormalize(out.y, out.exponent);
  if (x_from == x_to) return out;

  bool all_zero = true;
  for (double v : y0) all_zero = all_zero && v == 0.0;
  if (all_zero) {
    out.x = x_to;
    out.exponent = 0;
    return out;
  }

  const double span = x_to - x_from;
  const double direction = span > 0 ? 1.0 : -1.0;
  const double max_step = std::fabs(span) / 16.0;
  double dt = direction * std::min(max_step, 1e-2 * std::sqrt(h));
  double err_prev = 1e-4;

  AugmentedSystem system{&potential, lambda, 1.0 / (h * h)};
  boost::numeric::odeint::runge_kutta_fehlberg78<State> stepper;

  double last_allowed = std::numeric_limits<double>::quiet_NaN();
  if (potential_at(potential, x_from) <= lambda) last_allowed = x_from;
  int last_sign = sign_of(out.y[0]);
  out.first_sign = last_sign;
  double x = x_from;
  State trial{}, err{};
  while (direction * (x_to - x) > 0.0) {
    bool final_step = false;
    if (direction * (x + dt - x_to) >= 0.0) {
      dt = x_to - x;
      final_step = true;
    }
    trial = out.y;
    stepper.do_step(system, trial, x, dt, err);
    const double e = error_norm(trial, err, tol);
    if (!std::isfinite(e)) fail("non-finite integration error estimate", x);
    if (e <= 1.0) {
      const double x_prev = x;
      const double u_prev = out.y[0];
      x = final_step ? x_to : x + dt;
      out.y = trial;
      ++out.steps;
      if (!final_step) {
        const int s = sign_of(out.y[0]);
        if (s != 0) {
          if (last_sign == 0) {
            if (out.first_sign == 0) out.first_sign = s;
          } else if (s != last_sign) {
            ++out.sign_changes;
            const double t = u_prev / (u_prev - out.y[0]);
            out.zeros.push_back(x_prev + t * (x - x_prev));
          }
          last_sign = s;
        }
      }
      if (potential_at(potential, x) <= lambda) last_allowed = x;
      renormalize(out.y, out.exponent);
      const double ee = std::max(e, 1e-10);
      double fac = 0.9 * std::pow(ee, -0.7 / 8.0) * std::pow(err_prev, 0.4 / 8.0);
      fac = std::clamp(fac, 0.2, 4.0);
      err_prev = ee;
      dt = direction * std::min(std::fabs(dt) * fac, max_step);
      if (final_step) break;
    } else {
      ++out.rejected;
      dt *= std::max(0.2, 0.9 * std::pow(e, -1.0 / 8.0));
    }
    if (std::fabs(dt) < 1e-14 * std::max(1.0, std::fabs(x))) fail("step size underflow (stiff or singular problem)", x);
    if (out.steps + out.rejected > kMaxSteps) fail("too many integration steps", x);
  }
  out.x = x_to;
  for (double z : out.zeros)
    if (direction * (z - last_allowed) <= 0.0) ++out.sturm_sign_changes;
  return out;
}

ShootState integrate(const EffectivePotential& potential, double lambda, const ShootState& from, double to_x,
                     double h, double tol) {
  // Bring u and u' to a common exponent.
  const std::int64_t e = std::max(from.u.exponent(), from.du.exponent());
  auto lower = [e](const ScaledValue& v) {
    const std::int64_t gap = e - v.exponent();
    return gap > 1100 ? 0.0 : std::ldexp(v.mantissa(), -static_cast<int>(gap));
  };
  const State y0{lower(from.u), lower(from.du), 0.0, 0.0, 0.0, 0.0};
  const Trajectory t = integrate_augmented(potential, lambda, h, from.x, y0, e, to_x, tol);
  return {t.x, t.component(0), t.component(1)};
}

ShootState integrate(const PotentialSpec& p, double lambda, const ShootState& from, double to_x, double h,
                     double tol) {
  return integrate(line_effective(p), lambda, from, to_x, h, tol);
}

// ------------------------------------------------------------------ line map

BoundaryMap boundary_map_line(const PotentialSpec& p, const ConfinementDomain& domain, const ModeSpec& mode,
                              double lambda, double beta, double tol) {
  mode.validate();
  if (domain.radial || !domain.well_formed()) throw ValidationError("line shooting needs a domain (r-, r+) with r- < 0 < r+");
  const bool even = mode.m % 2 == 0;
  const State y0 = even ? State{1.0, beta, 0.0, 0.0, 0.0, 1.0} : State{beta, 1.0, 0.0, 0.0, 1.0, 0.0};
  const auto potential = line_effective(p);
  const Trajectory right = integrate_augmented(potential, lambda, mode.h, 0.0, y0, 0, domain.upper, tol);
  const Trajectory left = integrate_augmented(potential, lambda, mode.h, 0.0, y0, 0, domain.lower, tol);

  BoundaryMap map;
  map.row_plus = {right.y[0], right.y[2], right.y[4], right.exponent};
  map.row_minus = {left.y[0], left.y[2], left.y[4], left.exponent};
  map.g_plus = right.component(0);
  map.g_minus = left.component(0);
  map.jacobian = {{{right.component(2), right.component(4)}, {left.component(2), left.component(4)}}};
  map.sign_changes = right.sturm_sign_changes + left.sturm_sign_changes +
                     ((right.first_sign != 0 && left.first_sign != 0 && right.first_sign != left.first_sign) ? 1 : 0);
  map.steps = right.steps + left.steps;

  // Equilibrate rows then columns before estimating the condition number.
  double a[2][2] = {{map.row_plus.d_lambda, map.row_plus.d_beta}, {map.row_minus.d_lambda, map.row_minus.d_beta}};
  for (auto& row : a) {
    const double s = std::max(std::fabs(row[0]), std::fabs(row[1]));
    if (s > 0) row[0] /= s, row[1] /= s;
  }
  for (int c = 0; c < 2; ++c) {
    const double s = std::max(std::fabs(a[0][c]), std::fabs(a[1][c]));
    if (s > 0) a[0][c] /= s, a[1][c] /= s;
  }
  map.determinant = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  const double norm = std::max(std::fabs(a[0][0]) + std::fabs(a[0][1]), std::fabs(a[1][0]) + std::fabs(a[1][1]));
  const double inv_norm =
      std::max(std::fabs(a[1][1]) + std::fabs(a[0][1]), std::fabs(a[1][0]) + std::fabs(a[0][0])) /
      std::fabs(map.determinant);
  map.condition = map.determinant == 0.0 ? std::numeric_limits<double>::infinity() : norm * inv_norm;
  return map;
}

// ------------------------------------------------------------ series starts

SeriesStart frobenius_series(const PotentialSpec& w, const ModeSpec& mode, double lambda, double x_start) {
  mode.validate();
  if (!mode.nu) throw ValidationError("Frobenius start needs nu");
  if (!(x_start > 0.0)) throw ValidationError("Frobenius start point must be positive");
  const double nu = *mode.nu;
  const double h = mode.h;
  constexpr int kMaxTerms = 40;

  // q_j: coefficient of x^{2j} in W - lambda.
  SeriesStart out;
  std::vector<double> q(kMaxTerms + 1, 0.0);
  bool have_taylor = false;
  if (w.taylor) {
    try {
      const auto t = w.taylor(2 * kMaxTerms);
      for (int j = 1; j <= kMaxTerms; ++j) q[j] = t[2 * j];
      have_taylor = true;
    } catch (const std::exception&) {
    }
  }
  if (!have_taylor) q[1] = w.omega * w.omega;
  out.full_taylor = have_taylor;
  q[0] = -lambda;

  const double s = 0.5 + nu;
  std::vector<double> c{1.0}, dc{0.0};
  const double x2 = x_start * x_start;
  double sum = 1.0, dsum = s / x_start, lsum = 0.0, ldsum = 0.0;
  double power = 1.0;  // x^{2k}
  bool converged = false;
  for (int k = 1; k <= kMaxTerms; ++k) {
    double acc = 0.0, dacc = -c[k - 1];
    for (int j = 0; j <= k - 1; ++j) {
      acc += q[j] * c[k - 1 - j];
      dacc += q[j] * dc[k - 1 - j];
    }
    const double denom = 4.0 * h * h * k * (k + nu);
    c.push_back(acc / denom);
    dc.push_back(dacc / denom);
    power *= x2;
    const double term = c[k] * power;
    sum += term;
    dsum += c[k] * (s + 2.0 * k) * power / x_start;
    lsum += dc[k] * power;
    ldsum += dc[k] * (s + 2.0 * k) * power / x_start;
    out.terms = k;
    if (std::fabs(term) < 1e-17 * std::fabs(sum) && std::fabs(dc[k] * power) <= 1e-17 * std::max(std::fabs(lsum), 1e-300)) {
      converged = true;
      break;
    }
  }
  if (!converged) throw SolverError("Frobenius series did not converge within 40 terms; use a smaller start point");

  const ScaledValue lead = ScaledValue::from_log(s * std::log(x_start));
  out.state = {x_start, lead * ScaledValue(sum), lead * ScaledValue(dsum)};
  out.du_dlambda = lead * ScaledValue(lsum);
  out.ddu_dlambda = lead * ScaledValue(ldsum);
  return out;
}

ShootState frobenius_start(const PotentialSpec& w, const ModeSpec& mode, double lambda, double x_start) {
  return frobenius_series(w, mode, lambda, x_start).state;
}

SeriesStart coulomb_series(double charge, int ell, double h, double energy, double y_start) {
  if (ell < 0) throw ValidationError("angular momentum must be non-negative");
  if (!(y_start > 0.0)) throw ValidationError("series start point must be positive");
  constexpr int kMaxTerms = 60;
  const double s = ell + 1.0;
  std::vector<double> d{1.0}, dd{0.0};
  double sum = 1.0, dsum = s / y_start, lsum = 0.0, ldsum = 0.0, power = 1.0;
  SeriesStart out;
  bool converged = false;
  for (int k = 1; k <= kMaxTerms; ++k) {
    const double d2 = k >= 2 ? d[k - 2] : 0.0;
    const double dd2 = k >= 2 ? dd[k - 2] : 0.0;
    const double denom = h * h * k * (k + 2.0 * ell + 1.0);
    d.push_back(-(charge * d[k - 1] + energy * d2) / denom);
    dd.push_back(-(charge * dd[k - 1] + d2 + energy * dd2) / denom);
    power *= y_start;
    const double term = d[k] * power;
    sum += term;
    dsum += d[k] * (s + k) * power / y_start;
    lsum += dd[k] * power;
    ldsum += dd[k] * (s + k) * power / y_start;
    out.terms = k;
    if (k >= 3 && std::fabs(term) < 1e-17 * std::fabs(sum) &&
        std::fabs(dd[k] * power) <= 1e-17 * std::max(std::fabs(lsum), 1e-300)) {
      converged = true;
      break;
    }
  }
  if (!converged) throw SolverError("Coulomb series did not converge; use a smaller start point");
  const ScaledValue lead = ScaledValue::from_log(s * std::log(y_start));
  out.state = {y_start, lead * ScaledValue(sum), lead * ScaledValue(dsum)};
  out.du_dlambda = lead * ScaledValue(lsum);
  out.ddu_dlambda = lead * ScaledValue(ldsum);
  return out;
}

double default_radial_start(const ModeSpec& mode, double omega, double length) {
  const double w = omega > 0.0 ? omega : 1.0;
  return std::min(0.05 * std::sqrt(mode.h) / w, length / 100.0);
}

RadialBoundaryMap shoot_from_series(const EffectivePotential& potential, double h, double lambda,
                                    const SeriesStart& start, double length, double tol) {
  if (!(length > start.state.x)) throw ValidationError("box must extend beyond the series start point");
  const std::int64_t e = std::max({start.state.u.exponent(), start.state.du.exponent(), start.du_dlambda.exponent(),
                                   start.ddu_dlambda.exponent()});
  auto lower = [e](const ScaledValue& v) {
    const std::int64_t gap = e - v.exponent();
    return gap > 1100 ? 0.0 : std::ldexp(v.mantissa(), -static_cast<int>(gap));
  };
  const State y0{lower(start.state.u), lower(start.state.du), lower(start.du_dlambda), lower(start.ddu_dlambda),
                 0.0, 0.0};
  const Trajectory t = integrate_augmented(potential, lambda, h, start.state.x, y0, e, length, tol);
  RadialBoundaryMap map;
  map.g = t.component(0);
  map.dg_dlambda = t.component(2);
  map.sign_changes = t.sturm_sign_changes;
  map.steps = t.steps;
  map.x_start = start.state.x;
  return map;
}

RadialBoundaryMap boundary_map_radial(const PotentialSpec& w, double length, const ModeSpec& mode, double lambda,
                                      double tol, std::optional<double> x_start) {
  mode.validate();
  if (!mode.nu) throw ValidationError("radial shooting needs nu");
  if (!(length > 0.0)) throw ValidationError("radial box length must be positive");
  const double start = x_start.value_or(default_radial_start(mode, w.omega, length));
  const SeriesStart series = frobenius_series(w, mode, lambda, start);
  return shoot_from_series(radial_effective(w, *mode.nu, mode.h), mode.h, lambda, series, length, tol);
}

// -------------------------------------------------------------------- Newton

LineSolution newton_solve_line(const PotentialSpec& p, const ConfinementDomain& domain, const ModeSpec& mode,
                               double lambda0, double beta0, const NewtonOptions& options) {
  LineSolution sol;
  sol.lambda = lambda0;
  sol.beta = beta0;
  BoundaryMap frozen;
  for (int it = 1; it <= options.max_iterations; ++it) {
    const BoundaryMap map = boundary_map_line(p, domain, mode, sol.lambda, sol.beta, options.integrate_tol);
    if (it == 1) frozen = map;
    const BoundaryMap& jac = options.frozen_jacobian ? frozen : map;
    if (!(jac.condition <= options.max_condition)) {
      std::ostringstream msg;
      msg << "singular shooting Jacobian (condition " << jac.condition
          << "); check that the domain contains 0 and the mode index is right";
      throw SolverError(msg.str());
    }
    // Each row and its right-hand side carry their own binary scale; the
    // frozen rows are compared against fresh values via the exponent gap.
    auto rhs = [](const BoundaryRow& fresh, const BoundaryRow& row) {
      const std::int64_t gap = fresh.exponent - row.exponent;
      if (gap > 1000) return std::copysign(std::numeric_limits<double>::infinity(), fresh.g);
      return std::ldexp(fresh.g, static_cast<int>(std::max<std::int64_t>(gap, -1100)));
    };
    const BoundaryRow& a = jac.row_plus;
    const BoundaryRow& b = jac.row_minus;
    const double r0 = rhs(map.row_plus, a), r1 = rhs(map.row_minus, b);
    const double det = a.d_lambda * b.d_beta - a.d_beta * b.d_lambda;
    if (det == 0.0 || !std::isfinite(det) || !std::isfinite(r0) || !std::isfinite(r1))
      throw SolverError("singular or non-finite Newton system");
    const double dl = -(r0 * b.d_beta - a.d_beta * r1) / det;
    const double db = -(a.d_lambda * r1 - r0 * b.d_lambda) / det;
    sol.lambda += dl;
    sol.beta += db;
    sol.iterations = it;
    sol.sign_changes = map.sign_changes;
    sol.steps += map.steps;
    sol.condition = map.condition;
    sol.last_step = std::fabs(dl);
    if (!std::isfinite(sol.lambda) || !std::isfinite(sol.beta)) throw SolverError("Newton iteration diverged");
    if (std::fabs(dl) <= options.tol * mode.h && std::fabs(db) <= options.tol * std::max(1.0, std::fabs(sol.beta)))
      return sol;
  }
  std::ostringstream msg;
  msg << "Newton iteration did not converge in " << options.max_iterations << " iterations (lambda = " << sol.lambda
      << ")";
  throw SolverError(msg.str());
}

RadialSolution newton_solve_scalar(const std::function<RadialBoundaryMap(double)>& map, double lambda0, double scale,
                                   const NewtonOptions& options) {
  RadialSolution sol;
  sol.lambda = lambda0;
  ScaledValue frozen_slope;
  for (int it = 1; it <= options.max_iterations; ++it) {
    const RadialBoundaryMap g = map(sol.lambda);
    if (it == 1) frozen_slope = g.dg_dlambda;
    const ScaledValue slope = options.frozen_jacobian ? frozen_slope : g.dg_dlambda;
    if (slope.is_zero()) throw SolverError("vanishing derivative of the boundary map");
    const double step = -(g.g / slope).to_double();
    if (!std::isfinite(step)) throw SolverError("Newton step is not finite");
    sol.lambda += step;
    sol.iterations = it;
    sol.sign_changes = g.sign_changes;
    sol.steps += g.steps;
    sol.last_step = std::fabs(step);
    if (std::fabs(step) <= options.tol * scale) return sol;
  }
  std::ostringstream msg;
  msg << "Newton iteration did not converge in " << options.max_iterations << " iterations (lambda = " << sol.lambda
      << ")";
  throw SolverError(msg.str());
}

RadialSolution newton_solve_radial(const PotentialSpec& w, double length, const ModeSpec& mode, double lambda0,
                                   const NewtonOptions& options) {
  mode.validate();
  const double start = default_radial_start(mode, w.omega, length);
  return newton_solve_scalar(
      [&](double lambda) { return boundary_map_radial(w, length, mode, lambda, options.integrate_tol, start); },
      lambda0, mode.h, options);
}

}  // namespace tunnelshift
