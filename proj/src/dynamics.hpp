#pragma once

#include <array>

#include <Eigen/Dense>

#include "model.hpp"

namespace optoring {

using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;

/// Linearized fluctuation dynamics in the quadrature basis (δq, δp, δx, δy).
struct DriftDiffusion {
  Mat4 drift;      // A
  Mat4 diffusion;  // D, diagonal
};

struct StabilityReport {
  bool routh_hurwitz_pass = false;
  double spectral_abscissa = 0.0;
  // a₁..a₄ of det(sI − A) = s⁴ + a₁s³ + a₂s² + a₃s + a₄
  std::array<double, 4> char_poly_coeffs{};
};

/// Symmetric two-mode covariance matrix, vacuum quadrature variance 1/2.
/// Mode order is mechanical (δq, δp) then optical (δx, δy).
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(const Mat4& v) : v_(0.5 * (v + v.transpose())) {}

  const Mat4& matrix() const { return v_; }
  Mat2 mechanical() const { return v_.topLeftCorner<2, 2>(); }
  Mat2 optical() const { return v_.bottomRightCorner<2, 2>(); }
  Mat2 cross() const { return v_.topRightCorner<2, 2>(); }

 private:
  Mat4 v_;
};

DriftDiffusion build_drift(const SteadyState& ss,
                           const DerivedConstants& consts,
                           const PhysicalParams& params);

/// Routh–Hurwitz on the characteristic quartic plus an independent
/// eigenvalue computation of the spectral abscissa.
StabilityReport check_stability(const DriftDiffusion& dd);

/// Solves A V + V Aᵀ = −D through the 16×16 Kronecker-sum system.
/// Throws UnstableDynamics, SingularSystem.
CovarianceMatrix solve_lyapunov(const DriftDiffusion& dd);

/// Integrates dV/dt = A V + V Aᵀ + D from V(0) = 0 up to at least `horizon`
/// seconds (a short integrated segment, then exact doubling of the flow).
/// Throws HorizonTooShort when max|dV/dt| at the end exceeds tol·max|D|
/// (or tol itself when D = 0).
CovarianceMatrix integrate_covariance_ode(const DriftDiffusion& dd,
                                          double horizon, double tol);

/// max|A V + V Aᵀ + D|
double lyapunov_residual(const DriftDiffusion& dd, const Mat4& v);

}  // namespace optoring
