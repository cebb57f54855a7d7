#include "tunnelshift/scaled_value.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace tunnelshift {

void ScaledValue::assign(double raw, std::int64_t exponent) {
  if (!std::isfinite(raw)) throw std::domain_error("ScaledValue from non-finite value");
  if (raw == 0.0) {
    mantissa_ = 0.0;
    exponent_ = 0;
    return;
  }
  int e = 0;
  const double f = std::frexp(raw, &e);  // |f| in [0.5, 1)
  mantissa_ = 2.0 * f;
  exponent_ = exponent + e - 1;
}

ScaledValue ScaledValue::from_parts(double raw, std::int64_t exponent) {
  ScaledValue v;
  v.assign(raw, exponent);
  return v;
}

ScaledValue ScaledValue::from_log(double log_abs, int sign) {
  if (sign == 0 || log_abs == -std::numeric_limits<double>::infinity()) return {};
  if (!std::isfinite(log_abs)) throw std::domain_error("ScaledValue from non-finite logarithm");
  const double binary = log_abs / std::numbers::ln2;
  const double whole = std::floor(binary);
  const double frac = std::exp((binary - whole) * std::numbers::ln2);
  return from_parts(sign > 0 ? frac : -frac, static_cast<std::int64_t>(whole));
}

double ScaledValue::log_scale() const noexcept { return static_cast<double>(exponent_) * std::numbers::ln2; }

double ScaledValue::log_abs() const noexcept {
  if (mantissa_ == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(std::fabs(mantissa_)) + log_scale();
}

double ScaledValue::to_double() const noexcept {
  if (mantissa_ == 0.0) return 0.0;
  if (exponent_ > 2000) return mantissa_ > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  if (exponent_ < -2000) return 0.0;
  return std::ldexp(mantissa_, static_cast<int>(exponent_));
}

ScaledValue ScaledValue::operator-() const noexcept {
  ScaledValue v = *this;
  v.mantissa_ = -v.mantissa_;
  return v;
}

ScaledValue operator*(const ScaledValue& a, const ScaledValue& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return ScaledValue::from_parts(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
}

ScaledValue operator/(const ScaledValue& a, const ScaledValue& b) {
  if (b.is_zero()) throw std::domain_error("ScaledValue division by zero");
  if (a.is_zero()) return {};
  return ScaledValue::from_parts(a.mantissa_ / b.mantissa_, a.exponent_ - b.exponent_);
}

ScaledValue operator+(const ScaledValue& a, const ScaledValue& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const ScaledValue& big = a.exponent_ >= b.exponent_ ? a : b;
  const ScaledValue& small = a.exponent_ >= b.exponent_ ? b : a;
  const std::int64_t gap = big.exponent_ - small.exponent_;
  if (gap > 64) return big;
  return ScaledValue::from_parts(big.mantissa_ + std::ldexp(small.mantissa_, -static_cast<int>(gap)), big.exponent_);
}

int compare_magnitude(const ScaledValue& a, const ScaledValue& b) noexcept {
  if (a.is_zero() || b.is_zero()) return a.is_zero() ? (b.is_zero() ? 0 : -1) : 1;
  if (a.exponent_ != b.exponent_) return a.exponent_ < b.exponent_ ? -1 : 1;
  const double x = std::fabs(a.mantissa_), y = std::fabs(b.mantissa_);
  return x < y ? -1 : (x > y ? 1 : 0);
}

}  // namespace tunnelshift
