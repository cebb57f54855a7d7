#include "tunnelshift/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace tunnelshift {

namespace {

GaussLegendreRule build_rule() {
  constexpr int n = 15;
  GaussLegendreRule rule;
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-16) break;
    }
    rule.nodes[i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return rule;
}

double panel(const std::function<double(double)>& f, double a, double b) {
  const auto& rule = gauss_legendre_15();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 15; ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return s * half;
}

}  // namespace

const GaussLegendreRule& gauss_legendre_15() {
  static const GaussLegendreRule rule = build_rule();
  return rule;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                                    double rel_tol, int max_panels) {
  QuadratureResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  struct Piece {
    double a, b, whole;
  };
  const double total_width = std::fabs(b - a);
  const double first = panel(f, a, b);
  double scale = std::fabs(first);
  std::vector<Piece> stack{{a, b, first}};
  out.converged = true;
  int evaluated = 1;
  while (!stack.empty()) {
    const Piece p = stack.back();
    stack.pop_back();
    const double m = 0.5 * (p.a + p.b);
    const double left = panel(f, p.a, m);
    const double right = panel(f, m, p.b);
    evaluated += 2;
    const double refined = left + right;
    const double err = std::fabs(refined - p.whole);
    const double share = std::fabs(p.b - p.a) / total_width;
    const double tol = std::max(abs_tol, rel_tol * scale) * share;
    const bool tiny = std::fabs(p.b - p.a) <= 1e-13 * (1.0 + std::fabs(m));
    if (err <= tol || tiny || evaluated >= max_panels) {
      if (err > tol) out.converged = false;
      out.value += refined;
      out.error_estimate += err;
      continue;
    }
    stack.push_back({m, p.b, right});
    stack.push_back({p.a, m, left});
    scale = std::max(scale, std::fabs(refined));
  }
  out.panels = evaluated;
  return out;
}

}  // namespace tunnelshift
