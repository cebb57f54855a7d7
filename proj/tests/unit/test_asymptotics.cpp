#include <cmath>
#include <numbers>

#include "doctest.h"
#include "tunnelshift/asymptotics.hpp"

using namespace tunnelshift;

namespace {

const double kPi = std::numbers::pi;

double rel(double a, double b) { return std::fabs(a / b - 1.0); }

// Gamma(k + 1/2) = (2k)! sqrt(pi) / (4^k k!)
double gamma_half(int k) {
  double v = std::sqrt(kPi);
  for (int i = 1; i <= k; ++i) v *= (i - 0.5);
  return v;
}

}  // namespace

TEST_CASE("line evaluator reproduces the harmonic closed form") {
  for (double r : {1.0, 1.3}) {
    for (int m = 0; m <= 3; ++m) {
      const ModeSpec mode{m, 0.1, std::nullopt};
      const ShiftPrediction a = shift_leading_line(harmonic_potential(), ConfinementDomain::line(-r, r), mode);
      const ShiftPrediction b = ho_shift(mode, r);
      CAPTURE(m);
      CHECK(rel(a.leading_value, b.leading_value) <= 1e-10);
      CHECK(a.endpoint_plus->value == doctest::Approx(a.endpoint_minus->value).epsilon(1e-12));
      CHECK(a.prefactor_power == 0.5 - m);
      CHECK(rel(ho_confined_closed_form(mode, r), (2 * m + 1) * 0.1 + a.leading_value) <= 1e-12);
    }
  }
}

TEST_CASE("radial evaluator reproduces the isotropic closed form") {
  for (double nu : {0.5, 1.5, 0.3}) {
    for (int m = 0; m <= 3; ++m) {
      const ModeSpec mode{m, 0.1, nu};
      const ShiftPrediction a = shift_leading_radial(harmonic_potential(PotentialKind::radial), 1.2, mode);
      const ShiftPrediction b = iso_ho_shift(mode, 1.2);
      CHECK(rel(a.leading_value, b.leading_value) <= 1e-10);
      CHECK(a.prefactor_power == -nu - 2 * m);
    }
  }
}

TEST_CASE("asymmetric domain per-endpoint values") {
  // V = x^2, a0 = 1 at m = 0; phi(x) = x^2 / 2.
  const double h = 0.25;
  const ShiftPrediction s = shift_leading_line(harmonic_potential(), ConfinementDomain::line(-1, 2), {0, h, {}});
  const double minus = std::sqrt(h) * 2.0 / std::sqrt(kPi) * 1.0 * std::exp(-1.0 / h);
  const double plus = std::sqrt(h) * 2.0 / std::sqrt(kPi) * 2.0 * std::exp(-4.0 / h);
  CHECK(rel(s.endpoint_minus->value, minus) <= 1e-12);
  CHECK(rel(s.endpoint_plus->value, plus) <= 1e-12);
  CHECK(s.endpoint_minus->value > s.endpoint_plus->value);
  CHECK(rel(s.leading_value, plus + minus) <= 1e-12);
  CHECK(s.exponent == doctest::Approx(4.0));
}

TEST_CASE("closed-form examples") {
  CHECK(rel(ho_confined_closed_form({0, 0.1, {}}, 1.0), 0.1 + std::sqrt(0.1) * 4 / std::sqrt(kPi) * std::exp(-10.0)) <= 1e-15);
  CHECK(ho_confined_closed_form({0, 0.001, {}}, 1.0) == 0.001);

  const double h = 0.1;
  const double radial = 4.0 * std::pow(h, -0.5) * std::exp(-10.0) / (std::sqrt(kPi) / 2.0);
  CHECK(rel(shift_leading_radial(harmonic_potential(PotentialKind::radial), 1.0, {0, h, 0.5}).leading_value, radial) <= 1e-10);
  CHECK(rel(iso_ho_confined_closed_form({0, h, 1.5}, 1.0), 2 * 2.5 * h + 4 * std::pow(h, -1.5) * std::exp(-10.0) / gamma_half(2)) <= 1e-14);

  // Half-integer Gamma values enter through nu = l + 1/2.
  for (int m = 0; m <= 4; ++m)
    for (int l = 0; l <= 3; ++l) {
      const double nu = l + 0.5;
      const double expected = 4.0 * std::pow(h, -nu - 2 * m) * std::pow(0.9, 2 * (2 * m + 1 + nu)) *
                              std::exp(-0.81 / h) / (factorial(m) * gamma_half(m + l + 1));
      CHECK(rel(iso_ho_shift({m, h, nu}, 0.9).leading_value, expected) <= 1e-12);
    }

  const HydrogenSpec s{1, 0, 2.0, 1.0, 10.0};
  CHECK(rel(hydrogen_confined_closed_form(s), -1.0 + 8.0 * 100.0 * std::exp(-20.0)) <= 1e-15);
  CHECK(hydrogen_confined_closed_form({1, 0, 2.0, 1.0, 1000.0}) == -1.0);
  CHECK_THROWS_AS(hydrogen_shift({1, 1, 2.0, 1.0, 10.0}), ValidationError);
}

TEST_CASE("k(R) expansion gives the energy shift") {
  for (auto [n, l, h, r] : {std::tuple{1, 0, 1.0, 20.0}, {2, 1, 1.0, 40.0}, {3, 0, 0.9, 60.0}}) {
    const HydrogenSpec s{n, l, 2.0, h, r};
    const double dk = std::exp(hydrogen_k_shift_log(s));
    const double k0 = n * h;
    // E = -k^-2 to first order in dk.
    CHECK(rel(2.0 * dk / (k0 * k0 * k0), hydrogen_shift(s).leading_value) <= 1e-12);
    CHECK(rel(-1.0 / ((k0 + dk) * (k0 + dk)), hydrogen_confined_closed_form(s)) <= 1e-12);
  }
  // Other charges follow E(R; Z) = (Z^2/4) E(ZR/2; 2).
  const HydrogenSpec z3{2, 1, 3.0, 1.0, 12.0};
  const HydrogenSpec z2{2, 1, 2.0, 1.0, 18.0};
  CHECK(rel(hydrogen_confined_closed_form(z3), 9.0 / 4.0 * hydrogen_confined_closed_form(z2)) <= 1e-14);
}

TEST_CASE("general curvature: direct formula equals the normalized route") {
  for (const char* text : {"3*x^2", "0.5*x^2 + x^4", "2*x^2 + 0.4*x^3 + x^4"}) {
    const auto p = potential_from_text(text);
    const auto d = ConfinementDomain::line(-0.9, 1.2);
    for (int m : {0, 1, 2}) {
      const ModeSpec mode{m, 0.1, std::nullopt};
      const ShiftPrediction direct = shift_leading_line(p, d, mode, false);
      const NormalizedProblem n = normalize_to_unit_curvature(p, d, mode.h);
      const ShiftPrediction normalized = shift_leading_line(n.potential, n.domain, {m, n.h, {}}, false);
      CAPTURE(text);
      CAPTURE(m);
      CHECK(rel(direct.leading_value, normalized.leading_value) <= 1e-10);
      CHECK(rel(shift_leading_line(p, d, mode).leading_value, direct.leading_value) <= 1e-10);
    }
  }
  const auto w = potential_from_text("2*x^2 + x^4", PotentialKind::radial);
  const ShiftPrediction direct = shift_leading_radial(w, 1.1, {1, 0.1, 1.5}, false);
  const NormalizedProblem n = normalize_to_unit_curvature(w, ConfinementDomain::box(1.1), 0.1);
  CHECK(rel(direct.leading_value, shift_leading_radial(n.potential, n.domain.upper, {1, n.h, 1.5}, false).leading_value) <= 1e-10);
}

TEST_CASE("endpoint dominance and positivity") {
  const auto p = potential_from_text("x^2 + 0.3*x^3 + x^4");
  const auto d = ConfinementDomain::line(-1.0, 1.0);  // phi(1) > phi(-1)
  for (double h : {0.2, 0.1, 0.05, 0.02}) {
    for (int m : {0, 1, 2}) {
      const ShiftPrediction s = shift_leading_line(p, d, {m, h, {}});
      CHECK(s.endpoint_minus->value > s.endpoint_plus->value);
      CHECK(s.leading_value > 0.0);
    }
  }
  const ShiftPrediction tiny = shift_leading_line(harmonic_potential(), ConfinementDomain::line(-1, 1), {0, 0.001, {}});
  CHECK(tiny.leading_value == 0.0);
  CHECK(tiny.log_value == doctest::Approx(std::log(2 * 2 / std::sqrt(kPi) * std::sqrt(0.001)) - 1000.0).epsilon(1e-12));
  CHECK(!ho_shift({0, 0.5, {}}, 1.0).warnings.empty());
}

TEST_CASE("factorials") {
  CHECK(factorial(0) == 1.0);
  CHECK(factorial(20) == 2432902008176640000.0);
  CHECK(factorial(21) == doctest::Approx(51090942171709440000.0).epsilon(1e-13));
  CHECK_THROWS_AS(factorial(-1), ValidationError);
}
