#pragma once

// Independent reference computations and random generators used by the
// test suites, the acceptance suite and `selftest`. Nothing here is on the
// production path.

#include <random>

#include "dynamics.hpp"
#include "measures.hpp"

namespace optoring::oracle {

/// Moduli of the eigenvalues of iΩV, paired and averaged.
SymplecticPair symplectic_spectrum(const Mat4& v);

/// Same for the partial transpose P V P, P = diag(1, 1, 1, −1).
SymplecticPair pt_symplectic_spectrum(const Mat4& v);

Mat4 partial_transpose(const Mat4& v);

/// Two-mode squeezed vacuum, vacuum variance 1/2.
Mat4 two_mode_squeezed_vacuum(double r);

Mat4 local_symplectic(std::mt19937_64& rng, double max_squeeze);

/// Product of local, beam-splitter and two-mode-squeezing transformations.
Mat4 random_symplectic(std::mt19937_64& rng, double max_squeeze);

/// S diag(ν₁, ν₁, ν₂, ν₂) Sᵀ with ν ≥ 1/2.
Mat4 random_physical_covariance(std::mt19937_64& rng, double max_squeeze = 1.0,
                                double max_excess = 2.0);

/// Random physical parameter draw around the ring-cavity operating point
/// (mass, power, temperature, detuning, θ, κ, Q varied). Not necessarily
/// stable.
PhysicalParams random_params(std::mt19937_64& rng);

/// Random drift/diffusion in rescaled units (ω_m = 1) whose drift is stable,
/// with the coupling structure of the cavity model.
DriftDiffusion random_stable_dimensionless(std::mt19937_64& rng);

}  // namespace optoring::oracle
