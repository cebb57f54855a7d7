#include "tunnelshift/spectra.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include <lapacke.h>

#include "tunnelshift/agmon.hpp"

namespace tunnelshift {

namespace {

constexpr double kExpansion = 1.25;
constexpr int kMaxExpansions = 12;

void check_kind(const PotentialSpec& p, const ConfinementDomain& domain, const ModeSpec& mode) {
  mode.validate();
  if (!domain.well_formed()) throw ValidationError("malformed confinement domain");
  if (domain.radial != mode.radial())
    throw ValidationError(domain.radial ? "radial box needs nu" : "nu is only meaningful for a radial box");
  if ((p.kind == PotentialKind::radial) != domain.radial)
    throw ValidationError("potential kind does not match the domain (line vs radial)");
}

EffectivePotential effective(const PotentialSpec& p, const ModeSpec& mode) {
  return mode.radial() ? radial_effective(p, *mode.nu, mode.h) : line_effective(p);
}

std::optional<Eigenpair> try_shooting(const PotentialSpec& p, const ConfinementDomain& domain, const ModeSpec& mode,
                                      double guess, const SpectraOptions& options) {
  Eigenpair e;
  e.index_m = mode.m;
  e.method = Method::shooting;
  try {
    if (mode.radial()) {
      const RadialSolution s = newton_solve_radial(p, domain.upper, mode, guess, options.newton);
      e.value = s.lambda;
      e.iterations = s.iterations;
      e.steps = s.steps;
      e.sign_changes = s.sign_changes;
      e.residual = s.last_step;
    } else {
      const LineSolution s = newton_solve_line(p, domain, mode, guess, 0.0, options.newton);
      e.value = s.lambda;
      e.iterations = s.iterations;
      e.steps = s.steps;
      e.sign_changes = s.sign_changes;
      e.residual = s.last_step;
    }
  } catch (const SolverError&) {
    return std::nullopt;
  }
  if (e.sign_changes != mode.m) return std::nullopt;
  return e;
}

std::vector<double> fd_raw(const EffectivePotential& potential, double a, double b, double h, int grid_n, int count) {
  const double d = (b - a) / grid_n;
  const lapack_int size = grid_n - 1;
  if (count > size) throw ValidationError("more eigenvalues requested than grid points");
  std::vector<double> diag(size), off(size > 1 ? size - 1 : 1, -h * h / (d * d));
  for (lapack_int i = 0; i < size; ++i) {
    const double x = a + (i + 1) * d;
    double v;
    try {
      v = potential(x);
    } catch (const std::exception& ex) {
      std::ostringstream msg;
      msg << "potential evaluation failed at x = " << x << " (" << ex.what() << ")";
      throw SolverError(msg.str());
    }
    if (!std::isfinite(v)) throw SolverError("non-finite potential on the finite-difference grid");
    diag[i] = 2.0 * h * h / (d * d) + v;
  }
  lapack_int found = 0, nsplit = 0;
  std::vector<double> w(size);
  std::vector<lapack_int> iblock(size), isplit(size);
  const lapack_int info =
      LAPACKE_dstebz('I', 'E', size, 0.0, 0.0, 1, count, 2.0 * LAPACKE_dlamch('S'), diag.data(), off.data(), &found,
                     &nsplit, w.data(), iblock.data(), isplit.data());
  if (info != 0 || found != count) throw SolverError("tridiagonal eigensolver failed");
  w.resize(count);
  return w;
}

}  // namespace

const char* method_name(Method method) {
  switch (method) {
    case Method::shooting: return "shooting";
    case Method::finite_difference: return "finite-difference";
    case Method::closed_form: return "closed-form";
  }
  return "?";
}

double HydrogenSpec::unconfined_energy() const { return -charge * charge / (4.0 * n * n * h * h); }

void HydrogenSpec::validate() const {
  if (ell < 0) throw ValidationError("angular momentum l must be non-negative");
  if (n < ell + 1) throw ValidationError("principal number must satisfy n >= l + 1");
  if (!(charge > 0.0)) throw ValidationError("charge Z must be positive");
  if (!(h > 0.0)) throw ValidationError("h must be positive");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ValidationError("box radius R must be positive");
}

double harmonic_eigenvalue(const PotentialSpec& p, const ModeSpec& mode) {
  mode.validate();
  const double w = p.harmonic_stiffness ? std::sqrt(*p.harmonic_stiffness) : p.omega;
  if (!(w > 0.0)) throw ValidationError("degenerate minimum: V''(0) must be positive");
  return mode.radial() ? 2.0 * w * (2 * mode.m + 1 + *mode.nu) * mode.h : w * (2 * mode.m + 1) * mode.h;
}

std::vector<double> fd_eigenvalues(const EffectivePotential& potential, double a, double b, double h, int grid_n,
                                   int count) {
  if (grid_n < 4 || count < 1) throw ValidationError("finite-difference grid or count too small");
  if (!(b > a)) throw ValidationError("empty interval");
  return fd_raw(potential, a, b, h, grid_n, count);
}

std::vector<Eigenpair> fd_oracle(const PotentialSpec& p, const ConfinementDomain& domain, const ModeSpec& mode,
                                 int grid_n, int count) {
  check_kind(p, domain, mode);
  if (grid_n < 200) throw ValidationError("finite-difference oracle needs grid_n >= 200");
  if (count < 1) throw ValidationError("count must be positive");
  const auto potential = effective(p, mode);
  const auto coarse = fd_raw(potential, domain.lower, domain.upper, mode.h, grid_n, count);
  const auto fine = fd_raw(potential, domain.lower, domain.upper, mode.h, 2 * grid_n, count);
  std::vector<Eigenpair> out;
  for (int k = 0; k < count; ++k) {
    Eigenpair e;
    e.index_m = k;
    e.method = Method::finite_difference;
    e.value = (4.0 * fine[k] - coarse[k]) / 3.0;
    e.residual = std::fabs(fine[k] - coarse[k]);
    e.grid_n = grid_n;
    e.reduced_accuracy = mode.radial() && *mode.nu < 0.5;
    if (e.residual > 0.05 * std::fabs(fine[k]) || (k > 0 && !(e.value > out.back().value)))
      throw SolverError("finite-difference grid too coarse: eigenvalue ordering unstable");
    out.push_back(e);
  }
  return out;
}

Eigenpair confined_eigenvalue(const PotentialSpec& p, const ConfinementDomain& domain, const ModeSpec& mode,
                              const SpectraOptions& options) {
  check_kind(p, domain, mode);
  if (auto e = try_shooting(p, domain, mode, harmonic_eigenvalue(p, mode), options)) return *e;
  const auto guess =
      fd_raw(effective(p, mode), domain.lower, domain.upper, mode.h, options.fallback_grid, mode.m + 1);
  if (auto e = try_shooting(p, domain, mode, guess[mode.m], options)) return *e;
  std::ostringstream msg;
  msg << "shooting did not converge to mode m = " << mode.m << " on [" << domain.lower << ", " << domain.upper
      << "] at h = " << mode.h;
  throw SolverError(msg.str());
}

Eigenpair unconfined_eigenvalue(const PotentialSpec& p, const ModeSpec& mode, const SpectraOptions& options) {
  mode.validate();
  if (mode.radial() != (p.kind == PotentialKind::radial))
    throw ValidationError("potential kind does not match the mode (nu given for a line potential or missing)");
  if (p.harmonic_stiffness) {
    Eigenpair e;
    e.index_m = mode.m;
    e.method = Method::closed_form;
    e.value = harmonic_eigenvalue(p, mode);
    e.sign_changes = mode.m;
    return e;
  }
  if (!(p.omega > 0.0)) throw ValidationError("degenerate minimum: V''(0) must be positive");

  const double target = options.decay_exponent;
  auto reach = [&](double sign) {
    double r = std::sqrt(target * mode.h / p.omega);
    while (2.0 * agmon_distance(p, sign * r) / mode.h < target) {
      r *= kExpansion;
      if (r > options.max_box) {
        std::ostringstream msg;
        msg << "box expansion exceeded " << options.max_box << "; potential tail too shallow for h = " << mode.h;
        throw SolverError(msg.str());
      }
    }
    return r;
  };
  double upper = reach(1.0);
  double lower = mode.radial() ? 0.0 : -reach(-1.0);

  std::optional<Eigenpair> previous;
  for (int i = 0; i <= kMaxExpansions; ++i) {
    const ConfinementDomain box = mode.radial() ? ConfinementDomain::box(upper) : ConfinementDomain::line(lower, upper);
    Eigenpair e = confined_eigenvalue(p, box, mode, options);
    e.box_lower = lower;
    e.box_upper = upper;
    if (previous) {
      const double change = std::fabs(e.value - previous->value);
      const double allowed =
          8.0 * std::numeric_limits<double>::epsilon() * std::fabs(e.value) + 1e-3 * std::fabs(e.value) * std::exp(-target);
      if (change <= std::max(allowed, options.newton.tol * mode.h)) return e;
    }
    previous = e;
    upper *= kExpansion;
    lower *= kExpansion;
    if (std::max(upper, -lower) > options.max_box) break;
  }
  std::ostringstream msg;
  msg << "unconfined eigenvalue did not stabilize under box expansion (bound " << options.max_box << ")";
  throw SolverError(msg.str());
}

Eigenpair hydrogen_confined(const HydrogenSpec& spec, const SpectraOptions& options) {
  spec.validate();
  const double y0 = std::min(spec.radius / 100.0, 0.1 * spec.h * spec.h * (spec.ell + 1) / spec.charge);
  const auto potential = coulomb_effective(spec.charge, spec.ell, spec.h);
  auto map = [&](double energy) {
    const SeriesStart s = coulomb_series(spec.charge, spec.ell, spec.h, energy, y0);
    return shoot_from_series(potential, spec.h, energy, s, spec.radius, options.newton.integrate_tol);
  };
  const double scale = std::fabs(spec.unconfined_energy());
  auto attempt = [&](double guess) -> std::optional<Eigenpair> {
    try {
      const RadialSolution s = newton_solve_scalar(map, guess, scale, options.newton);
      if (s.sign_changes != spec.mode_index()) return std::nullopt;
      Eigenpair e;
      e.index_m = spec.mode_index();
      e.value = s.lambda;
      e.iterations = s.iterations;
      e.steps = s.steps;
      e.sign_changes = s.sign_changes;
      e.residual = s.last_step;
      e.box_upper = spec.radius;
      return e;
    } catch (const SolverError&) {
      return std::nullopt;
    }
  };
  if (auto e = attempt(spec.unconfined_energy())) return *e;
  const auto guess = fd_raw(potential, 0.0, spec.radius, spec.h, 4 * options.fallback_grid, spec.mode_index() + 1);
  if (auto e = attempt(guess[spec.mode_index()])) return *e;
  throw SolverError("shooting did not converge for the confined hydrogen level");
}

}  // namespace tunnelshift
