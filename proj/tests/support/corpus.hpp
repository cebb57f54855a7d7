#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tunnelshift/potential.hpp"
#include "tunnelshift/shooting.hpp"

namespace corpus {

struct Case {
  std::string potential;
  tunnelshift::ConfinementDomain domain;
  tunnelshift::ModeSpec mode;
};

// Shooting vs finite differences, line and radial, m <= 2.
inline std::vector<Case> cross_method() {
  using tunnelshift::ConfinementDomain;
  return {
      {"x^2", ConfinementDomain::line(-1.0, 1.0), {0, 0.1, std::nullopt}},
      {"x^2 + x^4", ConfinementDomain::line(-1.0, 1.0), {1, 0.1, std::nullopt}},
      {"x^2 + 0.3*x^3 + x^4", ConfinementDomain::line(-0.8, 1.2), {2, 0.1, std::nullopt}},
      {"cosh(x) - 1", ConfinementDomain::line(-1.5, 1.5), {0, 0.05, std::nullopt}},
      {"4*x^2", ConfinementDomain::line(-1.0, 1.0), {1, 0.1, std::nullopt}},
      {"x^2 + 0.5*sin(x)^2", ConfinementDomain::line(-1.0, 2.0), {2, 0.15, std::nullopt}},
      {"x^2", ConfinementDomain::box(1.0), {0, 0.1, 0.5}},
      {"x^2", ConfinementDomain::box(1.0), {1, 0.1, 1.5}},
      {"x^2 + x^4", ConfinementDomain::box(1.0), {2, 0.1, 0.5}},
      {"x^2 + 0.2*x^4", ConfinementDomain::box(1.5), {0, 0.05, 1.5}},
      {"2*x^2", ConfinementDomain::box(1.0), {1, 0.1, 0.5}},
      {"cosh(x) - 1", ConfinementDomain::box(2.0), {2, 0.1, 2.5}},
  };
}

inline tunnelshift::PotentialSpec potential_of(const Case& c) {
  return tunnelshift::potential_from_text(
      c.potential, c.domain.radial ? tunnelshift::PotentialKind::radial : tunnelshift::PotentialKind::line);
}

}  // namespace corpus
