#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tunnelshift/potential.hpp"
#include "tunnelshift/shooting.hpp"
#include "tunnelshift/spectra.hpp"

namespace tunnelshift {

/// One exponentially small term h^power * e^{-exponent} * coefficient,
/// kept in log form so it survives underflow.
struct ShiftTerm {
  double value = 0.0;
  double log_value = 0.0;
  double exponent = 0.0;
  double coefficient = 0.0;
};

struct ShiftPrediction {
  double leading_value = 0.0;
  double log_value = 0.0;
  /// The smallest (dominant) exponent among the terms.
  double exponent = 0.0;
  double prefactor_power = 0.0;
  /// (r+, r-) contributions for the line problem.
  std::optional<ShiftTerm> endpoint_plus;
  std::optional<ShiftTerm> endpoint_minus;
  std::vector<std::string> warnings;
};

/// h^{1/2-m} sum e^{-2 phi(r)/h} s0(r),
/// s0 = 2^{m+1}/(m! sqrt(pi)) w^{m+1/2} sqrt(V(r)) a0(r)^2.
/// With normalize = true the problem is first rescaled to unit curvature;
/// otherwise the general-curvature formula is evaluated directly.
ShiftPrediction shift_leading_line(const PotentialSpec& p, const ConfinementDomain& domain, const ModeSpec& mode,
                                   bool normalize = true);

/// h^{-nu-2m} e^{-2 phi(L)/h} 4 sqrt(W(L))/(Gamma(1+m+nu) m!) w^{2m+1+nu} L^{1+2nu} a0(L)^2.
ShiftPrediction shift_leading_radial(const PotentialSpec& w, double length, const ModeSpec& mode,
                                     bool normalize = true);

/// V = x^2 on (-R, R).
ShiftPrediction ho_shift(const ModeSpec& mode, double half_width);
double ho_confined_closed_form(const ModeSpec& mode, double half_width);

/// W = x^2 on (0, L).
ShiftPrediction iso_ho_shift(const ModeSpec& mode, double length);
double iso_ho_confined_closed_form(const ModeSpec& mode, double length);

ShiftPrediction hydrogen_shift(const HydrogenSpec& spec);
double hydrogen_confined_closed_form(const HydrogenSpec& spec);

/// Shift of k = (-E)^{-1/2} at Z = 2:
/// 2^{2n} h^{1-4n} R^{2n} / (n^{2n} (n-l-1)! (n+l)!) e^{-2R/(n h^2)}, in log form.
double hydrogen_k_shift_log(const HydrogenSpec& spec);

/// n! exactly up to 20, Gamma(n+1) beyond.
double factorial(int n);

}  // namespace tunnelshift
