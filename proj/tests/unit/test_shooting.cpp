#include <cmath>

#include "doctest.h"
#include "tunnelshift/shooting.hpp"

using namespace tunnelshift;

namespace {

ShootState start(double u, double du) { return {0.0, ScaledValue(u), ScaledValue(du)}; }

}  // namespace

TEST_CASE("integrate follows the harmonic ground state") {
  const auto p = harmonic_potential();
  const ShootState s = integrate(p, 1.0, start(1.0, 0.0), 2.0, 1.0);
  CHECK(s.x == 2.0);
  CHECK(s.u.to_double() == doctest::Approx(std::exp(-2.0)).epsilon(1e-9));
  CHECK(s.du.to_double() == doctest::Approx(-2.0 * std::exp(-2.0)).epsilon(1e-9));
  const ShootState far = integrate(p, 1.0, start(1.0, 0.0), std::sqrt(10.0), 1.0);
  CHECK(far.u.to_double() == doctest::Approx(std::exp(-5.0)).epsilon(1e-6));
  const ShootState back = integrate(p, 1.0, start(1.0, 0.0), -2.0, 1.0);
  CHECK(back.u.to_double() == doctest::Approx(std::exp(-2.0)).epsilon(1e-9));

  const ShootState zero = integrate(p, 1.0, start(0.0, 0.0), 3.0, 1.0);
  CHECK(zero.u.is_zero());
  CHECK(zero.du.is_zero());
  CHECK_THROWS_AS(integrate(p, 1.0, start(1.0, 0.0), 1.0, 1.0, 1e-3), ValidationError);
}

TEST_CASE("integration far past the double range stays finite") {
  // u = cosh(x/h) for V = 0 at lambda = -1; log u grows like x/h.
  const auto flat = make_potential(PotentialKind::line, "zero", [](double) { return 0.0; });
  const double h = 0.001;
  const ShootState s = integrate(flat, -1.0, start(1.0, 0.0), 1.0, h);
  CHECK(s.u.log_abs() == doctest::Approx(1.0 / h - std::log(2.0)).epsilon(1e-11));
  CHECK((s.du / s.u).to_double() == doctest::Approx(1.0 / h).epsilon(1e-10));
}

TEST_CASE("potential failures become solver errors") {
  const auto bad = potential_from_text("x^2 + 0*log(x + 0.5)");
  CHECK_THROWS_AS(integrate(bad, 1.0, start(1.0, 0.0), -1.0, 1.0), SolverError);
  try {
    integrate(bad, 1.0, start(1.0, 0.0), -1.0, 1.0);
  } catch (const SolverError& e) {
    CHECK(std::string(e.what()).find("x = ") != std::string::npos);
  }
}

TEST_CASE("Wronskian is conserved") {
  const auto p = quartic_potential(0.5);
  for (double h : {1.0, 0.3}) {
    const ShootState a = integrate(p, 0.7, start(1.0, 0.0), 1.5, h);
    const ShootState b = integrate(p, 0.7, start(0.0, 1.0), 1.5, h);
    const ScaledValue w = a.u * b.du - a.du * b.u;
    const ScaledValue size = a.u * b.du;
    CAPTURE(h);
    CHECK(std::fabs(((w - ScaledValue(1.0)) / size).to_double()) <= 1e-8);
  }
}

TEST_CASE("boundary map symmetry for even potentials") {
  const auto p = quartic_potential(1.0);
  const auto d = ConfinementDomain::line(-1.0, 1.0);
  for (int m : {0, 1, 2}) {
    const ModeSpec mode{m, 0.1, std::nullopt};
    const BoundaryMap g = boundary_map_line(p, d, mode, 0.37, 0.0);
    const double sign = m % 2 ? -1.0 : 1.0;
    CAPTURE(m);
    CHECK(std::fabs(((g.g_plus - ScaledValue(sign) * g.g_minus) / g.g_plus).to_double()) <= 1e-12);
  }
}

TEST_CASE("shooting Jacobian matches central differences") {
  const auto p = potential_from_text("x^2 + 0.4*x^3 + x^4");
  const auto d = ConfinementDomain::line(-0.8, 1.1);
  for (int m : {0, 1}) {
    const ModeSpec mode{m, 0.2, std::nullopt};
    const double lambda = 0.2 * (2 * m + 1) * 1.1, beta = 0.3;
    const BoundaryMap g = boundary_map_line(p, d, mode, lambda, beta, 1e-13);
    const double dl = 1e-6 * mode.h, db = 1e-6;
    const BoundaryMap lp = boundary_map_line(p, d, mode, lambda + dl, beta, 1e-13);
    const BoundaryMap lm = boundary_map_line(p, d, mode, lambda - dl, beta, 1e-13);
    const BoundaryMap bp = boundary_map_line(p, d, mode, lambda, beta + db, 1e-13);
    const BoundaryMap bm = boundary_map_line(p, d, mode, lambda, beta - db, 1e-13);
    const ScaledValue two_dl(2 * dl), two_db(2 * db);
    const ScaledValue fd[2][2] = {{(lp.g_plus - lm.g_plus) / two_dl, (bp.g_plus - bm.g_plus) / two_db},
                                  {(lp.g_minus - lm.g_minus) / two_dl, (bp.g_minus - bm.g_minus) / two_db}};
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        CAPTURE(m);
        CAPTURE(r);
        CAPTURE(c);
        CHECK(std::fabs((fd[r][c] / g.jacobian[r][c]).to_double() - 1.0) <= 1e-5);
      }
    CHECK(g.condition >= 1.0);
  }
}

TEST_CASE("Frobenius start reproduces the closed-form radial ground state") {
  // W = x^2, nu = 1/2, h = 1: u = x e^{-x^2/2} at lambda = 3.
  const auto w = harmonic_potential(PotentialKind::radial);
  const ModeSpec mode{0, 1.0, 0.5};
  for (double x : {0.01, 0.2, 0.5}) {
    const ShootState s = frobenius_start(w, mode, 3.0, x);
    CHECK(s.u.to_double() == doctest::Approx(x * std::exp(-x * x / 2)).epsilon(1e-14));
    CHECK(s.du.to_double() == doctest::Approx((1 - x * x) * std::exp(-x * x / 2)).epsilon(1e-13));
  }
}

TEST_CASE("Frobenius start is consistent with the integrator and in lambda") {
  const auto w = potential_from_text("x^2 + 0.5*x^4", PotentialKind::radial);
  for (double nu : {0.3, 0.5, 1.5}) {
    const ModeSpec mode{0, 0.1, nu};
    const double lambda = 0.45;
    const ShootState near = frobenius_start(w, mode, lambda, 0.01);
    const ShootState far = frobenius_start(w, mode, lambda, 0.08);
    const ShootState carried = integrate(radial_effective(w, nu, mode.h), lambda, near, 0.08, mode.h);
    CAPTURE(nu);
    CHECK((carried.u / far.u).to_double() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK((carried.du / far.du).to_double() == doctest::Approx(1.0).epsilon(1e-10));

    const SeriesStart s = frobenius_series(w, mode, lambda, 0.08);
    const double dl = 1e-6;
    const ShootState up = frobenius_start(w, mode, lambda + dl, 0.08);
    const ShootState down = frobenius_start(w, mode, lambda - dl, 0.08);
    CHECK(((up.u - down.u) / ScaledValue(2 * dl) / s.du_dlambda).to_double() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(((up.du - down.du) / ScaledValue(2 * dl) / s.ddu_dlambda).to_double() ==
          doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("Coulomb series matches the hydrogen ground state") {
  // Z = 2, h = 1: E = -1, f = y e^{-y}.
  const SeriesStart s = coulomb_series(2.0, 0, 1.0, -1.0, 0.3);
  CHECK(s.state.u.to_double() == doctest::Approx(0.3 * std::exp(-0.3)).epsilon(1e-14));
  CHECK(s.state.du.to_double() == doctest::Approx(0.7 * std::exp(-0.3)).epsilon(1e-13));
}

TEST_CASE("Newton examples") {
  const auto p = harmonic_potential();
  const ModeSpec mode{0, 0.05, std::nullopt};
  const LineSolution s = newton_solve_line(p, ConfinementDomain::line(-4.0, 4.0), mode, 0.055, 0.0);
  CHECK(s.lambda == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(s.iterations <= 8);
  CHECK(s.sign_changes == 0);

  const auto w = harmonic_potential(PotentialKind::radial);
  const ModeSpec radial{0, 0.05, 0.5};
  const RadialSolution r = newton_solve_radial(w, 4.0, radial, 0.16);
  CHECK(r.lambda == doctest::Approx(0.15).epsilon(1e-12));
  CHECK(r.iterations <= 8);
}

TEST_CASE("Sturm count matches the mode index") {
  const auto p = quartic_potential(1.0);
  const auto d = ConfinementDomain::line(-1.0, 1.3);
  for (int m = 0; m <= 3; ++m) {
    const ModeSpec mode{m, 0.1, std::nullopt};
    const LineSolution s = newton_solve_line(p, d, mode, 0.1 * (2 * m + 1), 0.0);
    CAPTURE(m);
    CHECK(s.sign_changes == m);
  }
  const auto w = quartic_potential(1.0, PotentialKind::radial);
  const double guesses[] = {0.55, 1.1, 1.8};
  for (int m = 0; m <= 2; ++m) {
    const ModeSpec mode{m, 0.1, 1.5};
    const RadialSolution s = newton_solve_radial(w, 1.0, mode, guesses[m]);
    CAPTURE(m);
    CHECK(s.sign_changes == m);
  }
}

TEST_CASE("frozen and refreshed Jacobians agree") {
  const auto p = potential_from_text("x^2 + 0.3*x^3 + x^4");
  const auto d = ConfinementDomain::line(-0.9, 1.2);
  const ModeSpec mode{1, 0.1, std::nullopt};
  NewtonOptions frozen;
  frozen.frozen_jacobian = true;
  const LineSolution a = newton_solve_line(p, d, mode, 0.3, 0.0);
  const LineSolution b = newton_solve_line(p, d, mode, 0.3, 0.0, frozen);
  CHECK(a.lambda == doctest::Approx(b.lambda).epsilon(1e-10));
  CHECK(b.iterations >= a.iterations);
}

TEST_CASE("invalid input") {
  const auto p = harmonic_potential();
  CHECK_THROWS_AS(boundary_map_line(p, ConfinementDomain::line(0.5, 1.0), {0, 0.1, {}}, 0.1, 0.0), ValidationError);
  CHECK_THROWS_AS(boundary_map_line(p, ConfinementDomain::line(-1.0, 1.0), {-1, 0.1, {}}, 0.1, 0.0),
                  ValidationError);
  CHECK_THROWS_AS(newton_solve_radial(p, 1.0, {0, 0.1, {}}, 0.1), ValidationError);
}
