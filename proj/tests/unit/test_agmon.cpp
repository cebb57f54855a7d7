#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "tunnelshift/agmon.hpp"

using namespace tunnelshift;

namespace {

// Composite Simpson in s = log|t| over [eps, |x|]; independent of the
// adaptive Gauss-Legendre path used by the library.
double simpson_log(const std::function<double(double)>& g, double eps, double x, int n = 40000) {
  const double sign = x < 0 ? -1.0 : 1.0;
  const double a = std::log(eps), b = std::log(std::fabs(x));
  const double step = (b - a) / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double u = a + i * step;
    const double t = sign * std::exp(u);
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * g(t) * std::exp(u);
  }
  return sign * s * step / 3.0;  // dt = sign * e^u du
}

// Brute-force eps-limit with linear extrapolation in eps (error is O(eps)).
// phi1 and phi2 are phi' and phi'' supplied analytically.
double a0_line_oracle(std::function<double(double)> phi1, std::function<double(double)> phi2, double omega, int m,
                      double x) {
  auto g = [&](double t) { return (omega * (2 * m + 1) - phi2(t)) / (2.0 * phi1(t)); };
  auto at = [&](double eps) {
    return std::pow(eps, m) * std::exp(simpson_log(g, eps, x));
  };
  const double a4 = at(1e-4), a5 = at(1e-5);
  return std::fabs((10.0 * a5 - a4) / 9.0);
}

double a0_radial_oracle(std::function<double(double)> phi1, std::function<double(double)> phi2, double omega, int m,
                        double nu, double x) {
  auto g = [&](double t) {
    return (2.0 * omega * (2 * m + 1 + nu) - phi2(t) - (2 * nu + 1) * phi1(t) / t) / (2.0 * phi1(t));
  };
  auto at = [&](double eps) { return std::pow(eps, 2 * m) * std::exp(simpson_log(g, eps, x)); };
  // Radial remainder is even in t, so the eps error is O(eps^2).
  const double a3 = at(1e-3), a4 = at(1e-4);
  return (100.0 * a4 - a3) / 99.0;
}

// V = x^2 + c x^4: phi' = t sqrt(1 + c t^2), phi'' = (1 + 2 c t^2)/sqrt(1 + c t^2).
double quartic_phi1(double c, double t) { return t * std::sqrt(1.0 + c * t * t); }
double quartic_phi2(double c, double t) { return (1.0 + 2.0 * c * t * t) / std::sqrt(1.0 + c * t * t); }

}  // namespace

TEST_CASE("agmon_distance examples") {
  const auto harmonic = harmonic_potential();
  CHECK(agmon_distance(harmonic, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(agmon_distance(harmonic, -1.0) == doctest::Approx(0.5).epsilon(1e-14));
  const double expected = (std::pow(2.0, 1.5) - 1.0) / 3.0;
  CHECK(expected == doctest::Approx(0.6094757082487302).epsilon(1e-15));
  CHECK(agmon_distance(quartic_potential(1.0), 1.0) == doctest::Approx(expected).epsilon(1e-13));
  CHECK(agmon_distance(quartic_potential(1.0), 0.0) == 0.0);
  CHECK_THROWS_AS(agmon_distance(potential_from_text("x^2 - x^3"), 1.5), ValidationError);
  CHECK_THROWS_AS(agmon_distance(harmonic, 1.0, 1e-3), ValidationError);
}

TEST_CASE("phi is monotone in |x| and phi' matches finite differences") {
  const auto p = potential_from_text("x^2 + 0.3*x^3 + x^4");
  double prev_right = 0.0, prev_left = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double x = 1.5 * i / 50.0;
    const double right = agmon_distance(p, x);
    const double left = agmon_distance(p, -x);
    CHECK(right > prev_right);
    CHECK(left > prev_left);
    prev_right = right;
    prev_left = left;
    for (double s : {x, -x}) {
      const double step = 1e-4;
      const double fd = (agmon_distance(p, s + step) - agmon_distance(p, s - step)) / (2 * step);
      const double sign = s < 0 ? -1.0 : 1.0;
      CHECK(std::fabs(fd - sign * std::sqrt(p.value(s))) <= 1e-6 * std::max(1.0, std::sqrt(p.value(s))));
      CHECK(agmon_derivative(p, s) == doctest::Approx(sign * std::sqrt(p.value(s))).epsilon(1e-14));
    }
  }
}

TEST_CASE("prefactor_a0_line examples") {
  const auto harmonic = harmonic_potential();
  for (int m = 0; m <= 4; ++m) CHECK(prefactor_a0_line(harmonic, m, 0.7) == doctest::Approx(std::pow(0.7, m)).epsilon(1e-14));
  CHECK(prefactor_a0_line(harmonic, 0, -1.0) == doctest::Approx(1.0).epsilon(1e-14));

  const auto q = quartic_potential(1.0);
  for (int m : {0, 1, 2}) {
    const double oracle = a0_line_oracle([](double t) { return quartic_phi1(1.0, t); },
                                         [](double t) { return quartic_phi2(1.0, t); }, 1.0, m, 0.5);
    CAPTURE(m);
    CHECK(std::fabs(prefactor_a0_line(q, m, 0.5) / oracle - 1.0) <= 1e-6);
  }
}

TEST_CASE("prefactor_a0_radial examples") {
  const auto w = harmonic_potential(PotentialKind::radial);
  for (int m = 0; m <= 3; ++m)
    for (double nu : {0.5, 1.5, 0.3})
      CHECK(prefactor_a0_radial(w, m, nu, 0.9) == doctest::Approx(std::pow(0.9, 2 * m)).epsilon(1e-13));
  CHECK(prefactor_a0_radial(w, 0, 0.5, 1.0) == doctest::Approx(1.0).epsilon(1e-14));

  const auto q = quartic_potential(1.0, PotentialKind::radial);
  for (int m : {0, 1}) {
    const double oracle = a0_radial_oracle([](double t) { return quartic_phi1(1.0, t); },
                                           [](double t) { return quartic_phi2(1.0, t); }, 1.0, m, 0.5, 0.5);
    CAPTURE(m);
    CHECK(std::fabs(prefactor_a0_radial(q, m, 0.5, 0.5) / oracle - 1.0) <= 1e-6);
  }
}

TEST_CASE("regularized prefactor agrees with the eps-limit on random even perturbations") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> coef(0.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    const double a = coef(rng), b = coef(rng);
    // V = x^2 + a x^4 + b x^6
    const auto p = make_potential(
        PotentialKind::line, "poly", [=](double x) { return x * x + a * std::pow(x, 4) + b * std::pow(x, 6); },
        [=](double x) { return 2 * x + 4 * a * std::pow(x, 3) + 6 * b * std::pow(x, 5); },
        [=](double x) { return 2 + 12 * a * x * x + 30 * b * std::pow(x, 4); });
    auto phi1 = [=](double t) { return t * std::sqrt(1 + a * t * t + b * std::pow(t, 4)); };
    auto phi2 = [=](double t) {
      const double s = std::sqrt(1 + a * t * t + b * std::pow(t, 4));
      return s + t * (a * t + 2 * b * std::pow(t, 3)) / s;
    };
    const int m = i % 3;
    const double x = (i % 2 ? -1.0 : 1.0) * (0.3 + 0.07 * i);
    const double oracle = a0_line_oracle(phi1, phi2, 1.0, m, x);
    const double value = prefactor_a0_line(p, m, x);
    CAPTURE(i);
    CHECK(value > 0.0);
    CHECK(std::fabs(value / oracle - 1.0) <= 1e-6);
  }
}

TEST_CASE("a0 is positive for a skewed potential and reduces to x^m where V = x^2") {
  const auto skew = potential_from_text("x^2 + 0.5*x^3 + x^4");
  for (int m = 0; m <= 3; ++m)
    for (double x : {-1.2, -0.4, 0.3, 1.4}) CHECK(prefactor_a0_line(skew, m, x) > 0.0);

  // V = x^2 on [-delta, delta], smoothly raised outside.
  const double delta = 0.4;
  const auto flat = make_potential(PotentialKind::line, "bump", [=](double x) {
    const double d = x * x - delta * delta;
    return x * x + (d > 0 ? std::exp(-1.0 / d) : 0.0);
  });
  for (int m = 0; m <= 2; ++m) {
    for (double x : {0.3, 0.1, 0.01}) CHECK(prefactor_a0_line(flat, m, x) / std::pow(x, m) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::fabs(prefactor_a0_line(flat, m, 1.2) / std::pow(1.2, m) - 1.0) > 1e-3);
  }
}

TEST_CASE("working domain") {
  const auto d = ConfinementDomain::line(-1.0, 2.0);
  CHECK(in_working_domain(d, -1.2));
  CHECK(in_working_domain(d, 2.5));
  CHECK_FALSE(in_working_domain(d, 2.6));
  CHECK(working_domain(ConfinementDomain::box(1.0)).upper == 1.25);
  CHECK(AgmonProfile(harmonic_potential()).phi(2.0) == doctest::Approx(2.0));
}
