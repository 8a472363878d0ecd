#pragma once

#include "dynamics.hpp"

namespace optoring {

// Invariants are carried in quad precision: symplectic eigenvalues come out
// of a discriminant that vanishes for pure states, so double-precision
// determinants would lose half their digits exactly where the entropies
// are steepest.
using Quad = __float128;

/// Determinants of the mechanical, optical and cross blocks and of V.
struct SymplecticInvariants {
  Quad i1 = 0;
  Quad i2 = 0;
  Quad i3 = 0;
  Quad i4 = 0;
};

struct SymplecticPair {
  double plus = 0.0;
  double minus = 0.0;
};

enum class WBranch { ClosedForm, General };

const char* to_string(WBranch branch) noexcept;

struct DiscordResult {
  double value = 0.0;
  WBranch branch = WBranch::General;
  double w = 0.0;
  // |D_G(closed form) − D_G(general)| when both branches are evaluable,
  // NaN otherwise.
  double branch_gap = 0.0;
  // Magnitude of round-off negativity removed by the clamp at zero.
  double clamp = 0.0;
};

struct CorrelationReport {
  SymplecticInvariants invariants;
  SymplecticPair nu;
  SymplecticPair nu_tilde;
  double log_negativity = 0.0;
  DiscordResult discord;
  double mutual_information = 0.0;
};

SymplecticInvariants invariants(const CovarianceMatrix& v);

/// ν_± = sqrt((Γ ± sqrt(Γ² − 4I₄))/2) with Γ = I₁ + I₂ + 2I₃.
/// Throws UnphysicalInvariants when the discriminant is clearly negative.
SymplecticPair symplectic_eigenvalues(const SymplecticInvariants& inv);

/// Same with Γ̃ = I₁ + I₂ − 2I₃ (partially transposed state).
SymplecticPair pt_symplectic_eigenvalues(const SymplecticInvariants& inv);

/// max(0, −ln 2ν̃₋); exactly 0 unless ν̃₋ < 1/2 − 1e-12.
double log_negativity(double nu_tilde_minus);

/// g(x) = (x + ½)ln(x + ½) − (x − ½)ln(x − ½). Throws DomainError for
/// x < ½ − 1e-9.
double entropy_g(double x);

/// Gaussian discord with the Gaussian measurement on the optical mode.
DiscordResult gaussian_discord(const SymplecticInvariants& inv,
                               SymplecticPair nu);

double mutual_information(const SymplecticInvariants& inv, SymplecticPair nu);

/// Full measure set; throws UnphysicalInvariants for states violating the
/// uncertainty principle beyond 1e-9.
CorrelationReport correlations(const CovarianceMatrix& v);

}  // namespace optoring
