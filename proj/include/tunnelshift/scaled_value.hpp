#pragma once

#include <cstdint>

namespace tunnelshift {

/// A real number stored as mantissa * 2^exponent with |mantissa| in [1, 2)
/// (or exactly 0). Keeps quantities of size e^{+-phi/h} representable far
/// past the double range. `log_scale()` reports the scale in natural-log
/// units; the binary exponent makes renormalization exact.
class ScaledValue {
 public:
  ScaledValue() = default;
  explicit ScaledValue(double v) { assign(v, 0); }
  /// value = raw * 2^exponent for an arbitrary finite raw.
  static ScaledValue from_parts(double raw, std::int64_t exponent);
  /// value = sign * exp(log_abs).
  static ScaledValue from_log(double log_abs, int sign = 1);

  double mantissa() const noexcept { return mantissa_; }
  std::int64_t exponent() const noexcept { return exponent_; }
  double log_scale() const noexcept;
  /// ln|value|; -inf for zero.
  double log_abs() const noexcept;
  int sign() const noexcept { return mantissa_ > 0 ? 1 : (mantissa_ < 0 ? -1 : 0); }
  bool is_zero() const noexcept { return mantissa_ == 0.0; }
  /// Plain double; under/overflows to 0 or +-inf outside the double range.
  double to_double() const noexcept;

  ScaledValue operator-() const noexcept;
  friend ScaledValue operator*(const ScaledValue& a, const ScaledValue& b);
  friend ScaledValue operator/(const ScaledValue& a, const ScaledValue& b);
  friend ScaledValue operator+(const ScaledValue& a, const ScaledValue& b);
  friend ScaledValue operator-(const ScaledValue& a, const ScaledValue& b) { return a + (-b); }

  /// -1, 0, +1 comparing |a| with |b|.
  friend int compare_magnitude(const ScaledValue& a, const ScaledValue& b) noexcept;

 private:
  void assign(double raw, std::int64_t exponent);

  double mantissa_ = 0.0;
  std::int64_t exponent_ = 0;
};

}  // namespace tunnelshift
