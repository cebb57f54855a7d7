#pragma once

#include <string>
#include <vector>

#include "tunnelshift/potential.hpp"
#include "tunnelshift/shooting.hpp"

namespace tunnelshift {

enum class Method { shooting, finite_difference, closed_form };

const char* method_name(Method method);

struct Eigenpair {
  int index_m = 0;
  double value = 0.0;
  Method method = Method::shooting;
  int iterations = 0;
  /// Size of the last Newton correction, or |fine - coarse| for the FD oracle.
  double residual = 0.0;
  int grid_n = 0;
  int steps = 0;
  int sign_changes = -1;
  /// Box used for an unconfined value: (lower, upper) or (0, L).
  double box_lower = 0.0;
  double box_upper = 0.0;
  bool reduced_accuracy = false;
};

/// Confined hydrogen: -h^2 f'' + h^2 l(l+1)/y^2 f - Z/y f = E f on (0, R).
struct HydrogenSpec {
  int n = 1;
  int ell = 0;
  double charge = 2.0;
  double h = 1.0;
  double radius = 10.0;

  int mode_index() const { return n - ell - 1; }
  /// -Z^2 / (4 n^2 h^2)
  double unconfined_energy() const;
  void validate() const;
};

struct SpectraOptions {
  NewtonOptions newton;
  /// Unconfined values use a box with 2 phi(boundary)/h at least this large.
  double decay_exponent = 100.0;
  /// Largest box coordinate allowed while expanding.
  double max_box = 1e3;
  /// Grid for the coarse FD guess used when Newton misses the mode.
  int fallback_grid = 600;
};

/// harmonic guess w(2m+1)h (line) or 2w(2m+1+nu)h (radial).
double harmonic_eigenvalue(const PotentialSpec& p, const ModeSpec& mode);

Eigenpair unconfined_eigenvalue(const PotentialSpec& p, const ModeSpec& mode, const SpectraOptions& options = {});

Eigenpair confined_eigenvalue(const PotentialSpec& p, const ConfinementDomain& domain, const ModeSpec& mode,
                              const SpectraOptions& options = {});

/// Lowest `count` Dirichlet eigenvalues of the three-point discretization
/// on grid_n and 2 grid_n intervals, Richardson-combined.
std::vector<Eigenpair> fd_oracle(const PotentialSpec& p, const ConfinementDomain& domain, const ModeSpec& mode,
                                 int grid_n, int count);

/// Same discretization for an arbitrary effective potential on (a, b).
std::vector<double> fd_eigenvalues(const EffectivePotential& potential, double a, double b, double h, int grid_n,
                                   int count);

Eigenpair hydrogen_confined(const HydrogenSpec& spec, const SpectraOptions& options = {});

}  // namespace tunnelshift
