#pragma once

#include <array>
#include <functional>

namespace tunnelshift {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
  bool converged = false;
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::array<double, 15> nodes{};
  std::array<double, 15> weights{};
};

const GaussLegendreRule& gauss_legendre_15();

/// Adaptive bisection with 15-point Gauss-Legendre panels. A panel is
/// accepted when |I(panel) - I(left) - I(right)| is below its share of
/// max(abs_tol, rel_tol*|I|). Works for b < a (returns the signed integral).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, double rel_tol, int max_panels = 20000);

}  // namespace tunnelshift
