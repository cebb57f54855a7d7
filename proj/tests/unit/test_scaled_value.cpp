#include <cmath>
#include <random>

#include "doctest.h"
#include "tunnelshift/scaled_value.hpp"

using tunnelshift::ScaledValue;

TEST_CASE("construction and normalization") {
  const ScaledValue a(6.0);
  CHECK(a.mantissa() == 1.5);
  CHECK(a.exponent() == 2);
  CHECK(a.to_double() == 6.0);
  CHECK(ScaledValue(-0.375).mantissa() == -1.5);
  CHECK(ScaledValue(-0.375).exponent() == -2);

  const ScaledValue z(0.0);
  CHECK(z.is_zero());
  CHECK(z.sign() == 0);
  CHECK(z.to_double() == 0.0);
  CHECK(std::isinf(z.log_abs()));
  CHECK((z * a).is_zero());
  CHECK((z + a).to_double() == 6.0);
}

TEST_CASE("renormalization preserves value") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> raw(-1e6, 1e6);
  std::uniform_int_distribution<int> shift(-3000, 3000);
  for (int i = 0; i < 500; ++i) {
    const double r = raw(rng);
    const int e = shift(rng);
    const ScaledValue v = ScaledValue::from_parts(r, e);
    CHECK(std::fabs(v.mantissa()) >= 1.0);
    CHECK(std::fabs(v.mantissa()) < 2.0);
    // Exact: compare after moving back to r's own scale.
    CHECK(std::ldexp(v.mantissa(), static_cast<int>(v.exponent() - e)) == r);
  }
}

TEST_CASE("log scale and from_log") {
  const ScaledValue big = ScaledValue::from_log(5000.0);
  CHECK(big.log_abs() == doctest::Approx(5000.0).epsilon(1e-15));
  CHECK(std::isinf(big.to_double()));
  const ScaledValue tiny = ScaledValue::from_log(-5000.0, -1);
  CHECK(tiny.sign() == -1);
  CHECK(tiny.to_double() == 0.0);
  CHECK((big * tiny).to_double() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(big.log_scale() == doctest::Approx(big.exponent() * std::log(2.0)));
  CHECK(ScaledValue::from_log(std::log(3.0)).to_double() == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("multiplication is associative to one ulp") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> logs(-800.0, 800.0);
  for (int i = 0; i < 500; ++i) {
    const ScaledValue a = ScaledValue::from_log(logs(rng));
    const ScaledValue b = ScaledValue::from_log(logs(rng), -1);
    const ScaledValue c = ScaledValue::from_log(logs(rng));
    const ScaledValue left = (a * b) * c;
    const ScaledValue right = a * (b * c);
    CHECK(left.exponent() == right.exponent());
    CHECK(std::fabs(left.mantissa() - right.mantissa()) <= 2.0 * 2.220446049250313e-16 * 2);
  }
}

TEST_CASE("addition, subtraction and magnitude comparison") {
  const ScaledValue a = ScaledValue::from_parts(1.0, 2000);
  const ScaledValue b = ScaledValue::from_parts(1.0, 1999);
  CHECK((a + b).exponent() == 2000);
  CHECK((a + b).mantissa() == 1.5);
  CHECK((a - a).is_zero());
  CHECK((a - b).mantissa() == 1.0);
  CHECK((a - b).exponent() == 1999);
  CHECK(compare_magnitude(a, b) == 1);
  CHECK(compare_magnitude(b, -a) == -1);
  CHECK(compare_magnitude(-a, a) == 0);
  const ScaledValue far = ScaledValue::from_parts(1.0, 1000);
  CHECK((a + far).mantissa() == a.mantissa());
  CHECK((a / b).to_double() == 2.0);
  CHECK((ScaledValue(3.0) + ScaledValue(-1.25)).to_double() == 1.75);
}
