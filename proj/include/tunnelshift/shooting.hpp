#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "tunnelshift/potential.hpp"
#include "tunnelshift/scaled_value.hpp"

namespace tunnelshift {

/// Quantum index m, semiclassical parameter h, and nu for the radial problem.
struct ModeSpec {
  int m = 0;
  double h = 0.1;
  std::optional<double> nu;

  bool radial() const { return nu.has_value(); }
  /// Throws ValidationError unless m >= 0, h > 0 and nu > 0 when present.
  void validate() const;
};

struct ShootState {
  double x = 0.0;
  ScaledValue u;
  ScaledValue du;
};

/// U(x) in -h^2 u'' + U u = lambda u.
using EffectivePotential = std::function<double(double)>;

EffectivePotential line_effective(const PotentialSpec& p);
/// W(x) + h^2 (nu^2 - 1/4) / x^2.
EffectivePotential radial_effective(const PotentialSpec& w, double nu, double h);
/// -Z/y + h^2 l(l+1) / y^2.
EffectivePotential coulomb_effective(double charge, int ell, double h);

inline constexpr double kDefaultIntegrateTol = 1e-12;
inline constexpr double kDefaultNewtonTol = 1e-10;

/// Solution of the ODE together with its lambda- and beta-derivatives:
/// y = (u, u', d_lambda u, d_lambda u', d_beta u, d_beta u'), all sharing
/// the binary scale 2^exponent.
struct Trajectory {
  double x = 0.0;
  std::array<double, 6> y{};
  std::int64_t exponent = 0;
  int steps = 0;
  int rejected = 0;
  /// Sign changes of u strictly before the end point, their approximate
  /// locations, and the sign of u at the first point where it is nonzero.
  int sign_changes = 0;
  std::vector<double> zeros;
  int first_sign = 0;
  /// Zeros up to the last accepted point where U <= lambda. An eigenfunction
  /// cannot vanish beyond it, so later zeros are rounding artifacts of the
  /// growing solution.
  int sturm_sign_changes = 0;

  ScaledValue component(int i) const { return ScaledValue::from_parts(y[i], exponent); }
};

/// Adaptive RKF 7(8) integration of the augmented linear system from x_from
/// to x_to (either direction), with PI step control relative to the scaled
/// magnitudes and exact power-of-two renormalization whenever the state
/// leaves [e^-40, e^40]. Throws SolverError on step-size underflow or a
/// non-finite potential value.
Trajectory integrate_augmented(const EffectivePotential& potential, double lambda, double h, double x_from,
                               const std::array<double, 6>& y0, std::int64_t exponent0, double x_to,
                               double tol = kDefaultIntegrateTol);

ShootState integrate(const EffectivePotential& potential, double lambda, const ShootState& from, double to_x,
                     double h, double tol = kDefaultIntegrateTol);
ShootState integrate(const PotentialSpec& p, double lambda, const ShootState& from, double to_x, double h,
                     double tol = kDefaultIntegrateTol);

/// One endpoint of the line shooting problem: G = u(r) and its gradient
/// in (lambda, beta), stored with a shared binary exponent.
struct BoundaryRow {
  double g = 0.0;
  double d_lambda = 0.0;
  double d_beta = 0.0;
  std::int64_t exponent = 0;
};

struct BoundaryMap {
  ScaledValue g_plus;
  ScaledValue g_minus;
  /// Rows (G+, G-), columns (d/dlambda, d/dbeta).
  std::array<std::array<ScaledValue, 2>, 2> jacobian;
  BoundaryRow row_plus;
  BoundaryRow row_minus;
  /// Determinant and infinity-norm condition number of the row- and
  /// column-equilibrated Jacobian.
  double determinant = 0.0;
  double condition = 0.0;
  int sign_changes = 0;
  int steps = 0;
};

/// Shoots from 0 to r+ and r-. Even m: (u, u')(0) = (1, beta); odd m: (beta, 1).
BoundaryMap boundary_map_line(const PotentialSpec& p, const ConfinementDomain& domain, const ModeSpec& mode,
                              double lambda, double beta, double tol = kDefaultIntegrateTol);

/// Series start for a regular singular point: (u, u') and their
/// lambda-derivatives at x_start.
struct SeriesStart {
  ShootState state;
  ScaledValue du_dlambda;
  ScaledValue ddu_dlambda;
  int terms = 0;
  /// False when the potential had no Taylor expansion and only its
  /// curvature entered the recursion.
  bool full_taylor = true;
};

/// u = x^{1/2+nu} (1 + c_1 x^2 + c_2 x^4 + ...) for
/// -h^2 u'' + h^2 (nu^2 - 1/4) x^-2 u + (W - lambda) u = 0.
SeriesStart frobenius_series(const PotentialSpec& w, const ModeSpec& mode, double lambda, double x_start);
ShootState frobenius_start(const PotentialSpec& w, const ModeSpec& mode, double lambda, double x_start);

/// u = y^{l+1} (1 + d_1 y + d_2 y^2 + ...) for the Coulomb radial equation.
SeriesStart coulomb_series(double charge, int ell, double h, double energy, double y_start);

/// min(0.05 sqrt(h)/omega, L/100).
double default_radial_start(const ModeSpec& mode, double omega, double length);

struct RadialBoundaryMap {
  ScaledValue g;
  ScaledValue dg_dlambda;
  int sign_changes = 0;
  int steps = 0;
  double x_start = 0.0;
};

RadialBoundaryMap shoot_from_series(const EffectivePotential& potential, double h, double lambda,
                                    const SeriesStart& start, double length, double tol = kDefaultIntegrateTol);

RadialBoundaryMap boundary_map_radial(const PotentialSpec& w, double length, const ModeSpec& mode, double lambda,
                                      double tol = kDefaultIntegrateTol,
                                      std::optional<double> x_start = std::nullopt);

struct NewtonOptions {
  double tol = kDefaultNewtonTol;
  double integrate_tol = kDefaultIntegrateTol;
  /// Reuse the Jacobian from the initial guess (the classical fixed-point
  /// iteration) instead of refreshing it every step.
  bool frozen_jacobian = false;
  int max_iterations = 50;
  double max_condition = 1e12;
};

struct LineSolution {
  double lambda = 0.0;
  double beta = 0.0;
  int iterations = 0;
  int sign_changes = 0;
  int steps = 0;
  double condition = 0.0;
  double last_step = 0.0;
};

/// Solves G(lambda, beta) = 0. Converged when |dlambda| <= tol*h and
/// |dbeta| <= tol*max(1, |beta|).
LineSolution newton_solve_line(const PotentialSpec& p, const ConfinementDomain& domain, const ModeSpec& mode,
                               double lambda0, double beta0, const NewtonOptions& options = {});

struct RadialSolution {
  double lambda = 0.0;
  double last_step = 0.0;
  int iterations = 0;
  int sign_changes = 0;
  int steps = 0;
};

/// Scalar Newton (or frozen-derivative iteration) on G(lambda) = 0 for any
/// map lambda -> (G, G').
RadialSolution newton_solve_scalar(const std::function<RadialBoundaryMap(double)>& map, double lambda0,
                                   double scale, const NewtonOptions& options = {});

RadialSolution newton_solve_radial(const PotentialSpec& w, double length, const ModeSpec& mode, double lambda0,
                                   const NewtonOptions& options = {});

}  // namespace tunnelshift
