#include "model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dynamics.hpp"
#include "errors.hpp"

namespace optoring {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::NonPhysicalParameter, what);
}

double evaluate_cubic(double a, double b, double c, double x) {
  return ((x + a) * x + b) * x + c;
}

double polish_root(double a, double b, double c, double x) {
  for (int i = 0; i < 4; ++i) {
    const double slope = (3.0 * x + 2.0 * a) * x + b;
    if (slope == 0.0) break;
    const double step = evaluate_cubic(a, b, c, x) / slope;
    if (!std::isfinite(step)) break;
    x -= step;
    if (std::abs(step) <= 1e-17 * std::abs(x)) break;
  }
  return x;
}

SteadyState state_from_detuning(const PhysicalParams& params,
                                const DerivedConstants& consts,
                                double detuning) {
  SteadyState ss;
  const double gc2 = consts.coupling_g * consts.coupling_factor;
  ss.alpha = consts.input_amplitude /
             std::complex<double>(params.cavity_decay, detuning);
  ss.n_cav = std::norm(ss.alpha);
  ss.q = -2.0 * gc2 * ss.n_cav / params.mech_freq;
  ss.p = 0.0;
  ss.effective_detuning = detuning;
  return ss;
}

}  // namespace

void validate(const PhysicalParams& p) {
  require(p.arm_length > 0.0, "arm length must be positive");
  require(p.laser_wavelength > 0.0, "laser wavelength must be positive");
  require(p.laser_power >= 0.0, "laser power must be non-negative");
  require(p.mech_freq > 0.0, "mechanical frequency must be positive");
  require(p.quality_factor >= 10.0,
          "quality factor below 10 breaks the Markovian bath assumption");
  require(p.mirror_mass > 0.0, "mirror mass must be positive");
  require(p.cavity_decay > 0.0, "cavity decay rate must be positive");
  require(p.bath_temperature >= 0.0, "bath temperature must be non-negative");
  require(p.ring_angle >= 0.0 && p.ring_angle < std::numbers::pi,
          "ring angle must lie in [0, pi)");
  require(p.relative_bath_factor == 1 || p.relative_bath_factor == 2,
          "relative bath factor must be 1 or 2");
  const double det = std::visit([](auto d) { return d.value; }, p.detuning);
  require(std::isfinite(det), "detuning must be finite");
  for (double v : {p.arm_length, p.laser_wavelength, p.laser_power,
                   p.mech_freq, p.quality_factor, p.mirror_mass,
                   p.cavity_decay, p.bath_temperature})
    require(std::isfinite(v), "parameters must be finite");
}

double thermal_occupancy(double angular_freq, double temperature) {
  if (temperature <= 0.0) return 0.0;
  const double x =
      constants::hbar * angular_freq / (constants::boltzmann * temperature);
  const double denom = std::expm1(x);
  if (!std::isfinite(denom)) return 0.0;
  return 1.0 / denom;
}

DerivedConstants derive_constants(const PhysicalParams& params) {
  validate(params);
  using namespace constants;
  DerivedConstants c{};
  c.cavity_freq = two_pi * speed_of_light / params.laser_wavelength;
  c.coupling_g = (c.cavity_freq / params.arm_length) *
                 std::sqrt(hbar / (params.mirror_mass * params.mech_freq));
  // ω_L is taken equal to ω_c; the detuning shifts E by < 1e-8 relative.
  c.input_amplitude =
      std::sqrt(2.0 * params.cavity_decay * params.laser_power /
                (hbar * c.cavity_freq));
  c.finesse = std::numbers::pi * speed_of_light /
              (params.cavity_decay * params.arm_length);
  c.damping = params.mech_freq / params.quality_factor;
  c.thermal_occupancy =
      thermal_occupancy(params.mech_freq, params.bath_temperature);
  const double half_cos = std::cos(0.5 * params.ring_angle);
  c.coupling_factor = half_cos * half_cos;
  return c;
}

std::vector<double> monic_cubic_real_roots(double a, double b, double c) {
  const double shift = a / 3.0;
  const double p = b - a * shift;
  const double q = 2.0 * shift * shift * shift - shift * b + c;
  std::vector<double> roots;
  const double disc = -(4.0 * p * p * p + 27.0 * q * q);
  if (disc > 0.0) {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k)
      roots.push_back(m * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) -
                      shift);
  } else {
    const double s = std::sqrt(std::max(0.25 * q * q + p * p * p / 27.0, 0.0));
    const double u = std::cbrt(-0.5 * q + s);
    const double v = std::cbrt(-0.5 * q - s);
    roots.push_back(u + v - shift);
  }
  for (double& r : roots) r = polish_root(a, b, c, r);
  std::sort(roots.begin(), roots.end());
  return roots;
}

SteadyState solve_steady_state(const PhysicalParams& params,
                               const DerivedConstants& consts) {
  if (const auto* eff = std::get_if<EffectiveDetuning>(&params.detuning)) {
    SteadyState ss = state_from_detuning(params, consts, eff->value);
    ss.photon_number_roots = {ss.n_cav};
    return ss;
  }

  const double bare = std::get<BareDetuning>(params.detuning).value;
  const double kappa = params.cavity_decay;
  const double gc2 = consts.coupling_g * consts.coupling_factor;
  // Δ = Δ₀ − shift_per_photon · n
  const double shift_per_photon = 2.0 * gc2 * gc2 / params.mech_freq;
  const double e2 = consts.input_amplitude * consts.input_amplitude;

  if (shift_per_photon == 0.0 || e2 == 0.0) {
    SteadyState ss = state_from_detuning(params, consts, bare);
    ss.photon_number_roots = {ss.n_cav};
    return ss;
  }

  // In x = shift_per_photon·n/κ the balance n(κ² + Δ²) = E² reads
  // x³ − 2δx² + (1 + δ²)x − e = 0 with δ = Δ₀/κ, e = shift·E²/κ³.
  const double delta = bare / kappa;
  const double e = shift_per_photon * e2 / (kappa * kappa * kappa);
  const auto xs = monic_cubic_real_roots(-2.0 * delta, 1.0 + delta * delta, -e);

  std::vector<SteadyState> branches;
  std::vector<double> photon_numbers;
  for (double x : xs) {
    const double n = x * kappa / shift_per_photon;
    photon_numbers.push_back(n);
    const double q = -2.0 * gc2 * n / params.mech_freq;
    const double detuning = bare + gc2 * q;
    branches.push_back(state_from_detuning(params, consts, detuning));
  }

  // Lowest-photon-number stable branch: the one reached by ramping the power up.
  std::size_t chosen = 0;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const auto dd = build_drift(branches[i], consts, params);
    if (check_stability(dd).routh_hurwitz_pass) {
      chosen = i;
      break;
    }
  }
  SteadyState ss = branches[chosen];
  ss.branch_count = static_cast<int>(branches.size());
  ss.photon_number_roots = photon_numbers;
  return ss;
}

}  // namespace optoring
