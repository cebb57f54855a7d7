#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tunnelshift/errors.hpp"

namespace tunnelshift {

enum class PotentialKind { line, radial };

using RealFunction = std::function<double(double)>;

/// A smooth potential with a unique nondegenerate minimum V(0) = 0.
///
/// `derivative1`, `derivative2` and `taylor` are optional. When empty, callers
/// fall back to finite differences (derivatives) or to the quadratic
/// approximation (Taylor coefficients). `omega` caches sqrt(V''(0)/2) and is
/// NaN when the minimum is degenerate.
struct PotentialSpec {
  PotentialKind kind = PotentialKind::line;
  std::string description;
  RealFunction evaluate;
  RealFunction derivative1;
  RealFunction derivative2;
  /// Taylor coefficients c_0..c_order of V at 0.
  std::function<std::vector<double>(int order)> taylor;
  /// Set when V(x) = stiffness * x^2 exactly; enables closed forms.
  std::optional<double> harmonic_stiffness;
  double omega = 0.0;

  double value(double x) const { return evaluate(x); }
  double d1(double x) const;
  double d2(double x) const;
};

/// (lower, upper) with lower < 0 < upper for the line, (0, L) for the radial box.
struct ConfinementDomain {
  double lower = -1.0;
  double upper = 1.0;
  bool radial = false;

  static ConfinementDomain line(double lower, double upper);
  static ConfinementDomain box(double length);

  bool well_formed() const;
  double length() const { return upper - lower; }
};

struct Violation {
  int assumption = 0;  ///< numbering of the standing assumptions (line 1-3, radial 6-9)
  std::string check;
  double x = 0.0;
  double observed = 0.0;
};

struct ValidationReport {
  bool passed = true;
  std::vector<Violation> violations;
};

/// Builds a spec and caches omega. Never throws for invalid potentials, so
/// that validate_potential can report on them.
PotentialSpec make_potential(PotentialKind kind, std::string description, RealFunction value,
                             RealFunction d1 = {}, RealFunction d2 = {},
                             std::function<std::vector<double>(int)> taylor = {});

/// V(x) = stiffness * x^2.
PotentialSpec harmonic_potential(PotentialKind kind = PotentialKind::line, double stiffness = 1.0);
/// V(x) = x^2 + c x^4.
PotentialSpec quartic_potential(double c, PotentialKind kind = PotentialKind::line);
/// Potential given by an expression in x; derivatives are symbolic.
PotentialSpec expression_potential(const std::string& text, PotentialKind kind = PotentialKind::line);
/// Built-in name ("harmonic", "harmonic(k)", "quartic(c)") or an expression.
PotentialSpec potential_from_text(const std::string& text, PotentialKind kind = PotentialKind::line);

/// Samples the standing assumptions on the domain plus a 50% margin. The
/// tail condition liminf V > 0 cannot be sampled and is taken on trust.
ValidationReport validate_potential(const PotentialSpec& p, const ConfinementDomain& domain,
                                    int samples = 64);

/// omega = sqrt(V''(0)/2). Throws ValidationError("degenerate minimum").
double curvature_at_minimum(const PotentialSpec& p);

struct NormalizedProblem {
  PotentialSpec potential;
  ConfinementDomain domain;
  double h = 0.0;
};

/// V~(x) = V(x/omega), domain scaled by omega, h~ = omega*h. The spectrum is
/// unchanged and V~''(0) = 2.
NormalizedProblem normalize_to_unit_curvature(const PotentialSpec& p, const ConfinementDomain& domain,
                                              double h);

}  // namespace tunnelshift
