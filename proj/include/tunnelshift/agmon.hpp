#pragma once

#include "tunnelshift/potential.hpp"

namespace tunnelshift {

inline constexpr double kDefaultAgmonTolerance = 1e-12;

/// Agmon distance phi(x) = |int_0^x sqrt(V)|, increasing in |x|.
/// Line potentials use the signed convention sgn(x) int_0^x; radial ones are
/// only defined for x >= 0. Throws ValidationError if V < 0 is met.
double agmon_distance(const PotentialSpec& p, double x, double tol = kDefaultAgmonTolerance);

/// phi'(x) = sgn(x) sqrt(V(x)).
double agmon_derivative(const PotentialSpec& p, double x);

/// Leading WKB amplitude for the line problem, |a_0(x)| with
/// a_0(x) = lim (eps sgn x)^m exp(int_{eps sgn x}^x g), g = (w(2m+1) - phi'')/(2 phi').
/// The m/t singularity of g is split off analytically.
double prefactor_a0_line(const PotentialSpec& p, int m, double x, double tol = kDefaultAgmonTolerance);

/// Radial amplitude a_0(x) = lim eps^{2m} exp(int_eps^x g), with
/// g = (2w(2m+1+nu) - phi'' - (2nu+1) phi'/t) / (2 phi'), singular part 2m/t.
double prefactor_a0_radial(const PotentialSpec& w, int m, double nu, double x, double tol = kDefaultAgmonTolerance);

/// Regular remainder r(t) = g(t) - m/t (line) or g(t) - 2m/t (radial, nu > 0).
/// Exposed for tests; near t = 0 it is extrapolated from |t| >= cutoff.
double prefactor_remainder(const PotentialSpec& p, int m, double nu, double t, double cutoff);

/// Omega' = Omega expanded by 25% on each side; a_0 is only trusted there.
ConfinementDomain working_domain(const ConfinementDomain& domain);
bool in_working_domain(const ConfinementDomain& domain, double x);

/// Bundles phi and phi' for one potential.
class AgmonProfile {
 public:
  explicit AgmonProfile(PotentialSpec p, double tol = kDefaultAgmonTolerance)
      : potential_(std::move(p)), tol_(tol) {}

  double phi(double x) const { return agmon_distance(potential_, x, tol_); }
  double phi_prime(double x) const { return agmon_derivative(potential_, x); }
  double quadrature_tolerance() const { return tol_; }
  const PotentialSpec& potential() const { return potential_; }

 private:
  PotentialSpec potential_;
  double tol_;
};

}  // namespace tunnelshift
