#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace optoring::oracle {

namespace {

Mat4 symplectic_form() {
  Mat4 omega = Mat4::Zero();
  omega(0, 1) = omega(2, 3) = 1.0;
  omega(1, 0) = omega(3, 2) = -1.0;
  return omega;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Mat2 random_unimodular(std::mt19937_64& rng, double max_squeeze) {
  auto rot = [](double phi) {
    Mat2 r;
    r << std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi);
    return r;
  };
  const double s = uniform(rng, -max_squeeze, max_squeeze);
  Mat2 sq = Mat2::Zero();
  sq(0, 0) = std::exp(-s);
  sq(1, 1) = std::exp(s);
  return rot(uniform(rng, 0, 2 * std::numbers::pi)) * sq *
         rot(uniform(rng, 0, 2 * std::numbers::pi));
}

}  // namespace

SymplecticPair symplectic_spectrum(const Mat4& v) {
  const Eigen::Matrix4cd m =
      std::complex<double>(0.0, 1.0) * (symplectic_form() * v).cast<std::complex<double>>();
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(m, false);
  std::array<double, 4> mod{};
  for (int i = 0; i < 4; ++i) mod[i] = std::abs(solver.eigenvalues()(i));
  std::sort(mod.begin(), mod.end());
  return {0.5 * (mod[2] + mod[3]), 0.5 * (mod[0] + mod[1])};
}

Mat4 partial_transpose(const Mat4& v) {
  const Eigen::Vector4d flip(1.0, 1.0, 1.0, -1.0);
  return flip.asDiagonal() * v * flip.asDiagonal();
}

SymplecticPair pt_symplectic_spectrum(const Mat4& v) {
  return symplectic_spectrum(partial_transpose(v));
}

Mat4 two_mode_squeezed_vacuum(double r) {
  const double c = std::cosh(2 * r);
  const double s = std::sinh(2 * r);
  Mat4 v;
  // clang-format off
  v << c, 0, s, 0,
       0, c, 0, -s,
       s, 0, c, 0,
       0, -s, 0, c;
  // clang-format on
  return 0.5 * v;
}

Mat4 local_symplectic(std::mt19937_64& rng, double max_squeeze) {
  Mat4 s = Mat4::Zero();
  s.topLeftCorner<2, 2>() = random_unimodular(rng, max_squeeze);
  s.bottomRightCorner<2, 2>() = random_unimodular(rng, max_squeeze);
  return s;
}

Mat4 random_symplectic(std::mt19937_64& rng, double max_squeeze) {
  const double theta = uniform(rng, 0, 2 * std::numbers::pi);
  const double c = std::cos(theta), s = std::sin(theta);
  Mat4 bs = Mat4::Zero();
  bs.topLeftCorner<2, 2>() = c * Mat2::Identity();
  bs.topRightCorner<2, 2>() = s * Mat2::Identity();
  bs.bottomLeftCorner<2, 2>() = -s * Mat2::Identity();
  bs.bottomRightCorner<2, 2>() = c * Mat2::Identity();

  const double r = uniform(rng, 0, max_squeeze);
  Mat2 z = Mat2::Zero();
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  Mat4 tms = Mat4::Zero();
  tms.topLeftCorner<2, 2>() = std::cosh(r) * Mat2::Identity();
  tms.bottomRightCorner<2, 2>() = std::cosh(r) * Mat2::Identity();
  tms.topRightCorner<2, 2>() = std::sinh(r) * z;
  tms.bottomLeftCorner<2, 2>() = std::sinh(r) * z;

  return local_symplectic(rng, max_squeeze) * bs * tms *
         local_symplectic(rng, max_squeeze);
}

Mat4 random_physical_covariance(std::mt19937_64& rng, double max_squeeze,
                                double max_excess) {
  const double n1 = 0.5 + uniform(rng, 0, max_excess);
  const double n2 = 0.5 + uniform(rng, 0, max_excess);
  const Eigen::Vector4d diag(n1, n1, n2, n2);
  const Mat4 s = random_symplectic(rng, max_squeeze);
  const Mat4 v = s * diag.asDiagonal() * s.transpose();
  return 0.5 * (v + v.transpose());
}

PhysicalParams random_params(std::mt19937_64& rng) {
  PhysicalParams p;
  auto log_uniform = [&rng](double lo, double hi) {
    return std::exp(uniform(rng, std::log(lo), std::log(hi)));
  };
  p.mirror_mass = log_uniform(10e-12, 500e-12);
  p.laser_power = log_uniform(1e-5, 20e-3);
  p.bath_temperature = log_uniform(1e-5, 1.0);
  p.cavity_decay = constants::two_pi * log_uniform(50e3, 2e6);
  p.quality_factor = log_uniform(100.0, 1e5);
  p.ring_angle = uniform(rng, 0.0, 3.0);
  p.detuning = EffectiveDetuning{uniform(rng, -3.0, 3.0) * p.mech_freq};
  return p;
}

DriftDiffusion random_stable_dimensionless(std::mt19937_64& rng) {
  for (;;) {
    const double gm = uniform(rng, 0.02, 0.5);
    const double kappa = uniform(rng, 0.1, 2.0);
    const double delta = uniform(rng, -2.0, 2.0);
    const double re = uniform(rng, -0.6, 0.6);
    const double im = uniform(rng, -0.6, 0.6);
    const double nth = uniform(rng, 0.0, 20.0);
    DriftDiffusion dd;
    // clang-format off
    dd.drift << 0.0, 1.0, 0.0, 0.0,
                -1.0, -gm, -re, -im,
                im, 0.0, -kappa, delta,
                -re, 0.0, -delta, -kappa;
    // clang-format on
    dd.diffusion = Mat4::Zero();
    dd.diffusion(1, 1) = gm * (2 * nth + 1);
    dd.diffusion(2, 2) = kappa;
    dd.diffusion(3, 3) = kappa;
    const auto st = check_stability(dd);
    // Keep draws well inside the stable region so integration horizons stay short.
    if (st.routh_hurwitz_pass && st.spectral_abscissa < -0.005) return dd;
  }
}

}  // namespace optoring::oracle
