#pragma once

#include <string>
#include <vector>

namespace optoring {

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Cross-checks the production path against the independent oracles:
/// eigen-decomposition for symplectic spectra, ODE integration for the
/// Lyapunov solve, eigenvalues for Routh–Hurwitz, closed-form fixtures.
std::vector<SelftestCheck> run_selftest();

}  // namespace optoring
