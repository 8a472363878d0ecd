#pragma once

#include <complex>
#include <variant>
#include <vector>

namespace optoring {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double boltzmann = 1.380649e-23;     // J / K
inline constexpr double speed_of_light = 299792458.0; // m / s
inline constexpr double two_pi = 6.283185307179586476925286766559;
}  // namespace constants

/// Detuning Δ already including the static radiation-pressure shift, rad/s.
struct EffectiveDetuning {
  double value;
};

/// Bare cavity-laser detuning Δ₀ = ω_c − ω_L, rad/s.
struct BareDetuning {
  double value;
};

using DetuningSpec = std::variant<EffectiveDetuning, BareDetuning>;

/// Experimental inputs, SI units with angular frequencies.
///
/// Defaults are the ring-cavity experiment used throughout the figures:
/// L = 25 mm, λ = 1064 nm, ω_m = 2π·947 kHz, Q = 6700, κ = 2π·215 kHz,
/// P = 3.8 mW, m = 50 ng, T = 3 mK, Δ = ω_m, θ = 0.
struct PhysicalParams {
  double arm_length = 25e-3;
  double laser_wavelength = 1064e-9;
  double laser_power = 3.8e-3;
  double mech_freq = constants::two_pi * 947e3;
  double quality_factor = 6700.0;
  double mirror_mass = 50e-12;  // 50 ng
  double cavity_decay = constants::two_pi * 215e3;
  double bath_temperature = 3e-3;
  double ring_angle = 0.0;
  DetuningSpec detuning = EffectiveDetuning{constants::two_pi * 947e3};
  // Multiplier on the mechanical diffusion entry; 1 reproduces the
  // single-bath value, 2 accounts for two independent mirror baths.
  int relative_bath_factor = 1;
};

struct DerivedConstants {
  double cavity_freq;        // ω_c
  double coupling_g;         // single-photon coupling
  double input_amplitude;    // E
  double finesse;
  double damping;            // γ_m
  double thermal_occupancy;  // n_th
  double coupling_factor;    // cos²(θ/2)
};

struct SteadyState {
  std::complex<double> alpha;
  double q = 0.0;
  double p = 0.0;
  double effective_detuning = 0.0;
  double n_cav = 0.0;
  int branch_count = 1;
  // Every real photon-number root of the bare-detuning cubic, ascending.
  // Holds the single closed-form value in effective-detuning mode.
  std::vector<double> photon_number_roots;
};

/// Throws NonPhysicalParameter.
void validate(const PhysicalParams& params);

/// Bose occupancy 1/(exp(x) − 1) with x = ħω/(k_B T); zero at T = 0 and
/// whenever exp(x) overflows.
double thermal_occupancy(double angular_freq, double temperature);

DerivedConstants derive_constants(const PhysicalParams& params);

SteadyState solve_steady_state(const PhysicalParams& params,
                               const DerivedConstants& consts);

/// Real roots of x³ + a x² + b x + c, ascending, Newton-polished.
/// The count is 1 or 3 depending on the sign of the discriminant.
std::vector<double> monic_cubic_real_roots(double a, double b, double c);

}  // namespace optoring
