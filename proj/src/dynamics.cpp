#include "dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include <Eigen/Eigenvalues>
#include <boost/numeric/odeint.hpp>

#include "errors.hpp"

namespace optoring {

namespace {

using Mat16 = Eigen::Matrix<double, 16, 16>;
using Vec16 = Eigen::Matrix<double, 16, 1>;

// Length of the directly integrated segment, in units of the fastest rate.
constexpr double kOdeSegmentRadians = 200.0;

Eigen::Vector4cd eigenvalues_of(const Mat4& a) {
  Eigen::EigenSolver<Mat4> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::EigenSolverFailure,
                "eigenvalue computation for the drift matrix did not converge");
  return solver.eigenvalues();
}

// Faddeev–LeVerrier for det(sI − A).
std::array<double, 4> characteristic_coefficients(const Mat4& a) {
  std::array<double, 4> coeffs{};
  Mat4 m = Mat4::Identity();
  for (int k = 1; k <= 4; ++k) {
    const Mat4 am = a * m;
    coeffs[k - 1] = -am.trace() / k;
    m = am + coeffs[k - 1] * Mat4::Identity();
  }
  return coeffs;
}

}  // namespace

DriftDiffusion build_drift(const SteadyState& ss, const DerivedConstants& consts,
                           const PhysicalParams& params) {
  const double wm = params.mech_freq;
  const double gm = consts.damping;
  const double kappa = params.cavity_decay;
  const double delta = ss.effective_detuning;
  const double coupling = 2.0 * consts.coupling_g * consts.coupling_factor;
  const double re = coupling * ss.alpha.real();
  const double im = coupling * ss.alpha.imag();

  // Linearizing ȧ = −(κ + iΔ₀ + i g c q) a + E and ṗ = −ω_m q − γ_m p − 2 g c |a|²
  // (c = cos²(θ/2)) about (α, q_s), with δx = δa + δa†, δy = i(δa† − δa):
  //   δẋ = −κ δx + Δ δy + G Im α δq
  //   δẏ = −κ δy − Δ δx − G Re α δq
  //   δṗ = −ω_m δq − γ_m δp − G (Re α δx + Im α δy),  G = 2 g c.
  DriftDiffusion dd;
  // clang-format off
  dd.drift <<
      0.0,  wm,    0.0,    0.0,
      -wm,  -gm,   -re,    -im,
      im,   0.0,   -kappa, delta,
      -re,  0.0,   -delta, -kappa;
  // clang-format on
  dd.diffusion = Mat4::Zero();
  dd.diffusion(1, 1) = params.relative_bath_factor * gm *
                       (2.0 * consts.thermal_occupancy + 1.0);
  dd.diffusion(2, 2) = kappa;
  dd.diffusion(3, 3) = kappa;
  return dd;
}

StabilityReport check_stability(const DriftDiffusion& dd) {
  StabilityReport report;
  report.char_poly_coeffs = characteristic_coefficients(dd.drift);
  const auto [a1, a2, a3, a4] = report.char_poly_coeffs;
  report.routh_hurwitz_pass = a1 > 0.0 && a3 > 0.0 && a4 > 0.0 &&
                              a1 * a2 * a3 > a3 * a3 + a1 * a1 * a4;
  report.spectral_abscissa = eigenvalues_of(dd.drift).real().maxCoeff();
  return report;
}

CovarianceMatrix solve_lyapunov(const DriftDiffusion& dd) {
  const Mat4& a = dd.drift;
  if (!check_stability(dd).routh_hurwitz_pass)
    throw Error(ErrorCode::UnstableDynamics,
                "drift matrix fails the Routh-Hurwitz conditions; "
                "no stationary covariance exists");

  // The Kronecker sum has eigenvalues λᵢ + λⱼ; a pair summing to ~0 means
  // the point is marginal and has no stationary state.
  const Eigen::Vector4cd lambda = eigenvalues_of(a);
  const double radius = lambda.cwiseAbs().maxCoeff();
  double min_pair = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      min_pair = std::min(min_pair, std::abs(lambda(i) + lambda(j)));
  if (!(min_pair > 1e-12 * radius))
    throw Error(ErrorCode::SingularSystem,
                "Lyapunov operator is numerically singular (marginal stability)");

  // Column-major vec: vec(AV + VAᵀ) = (I⊗A + A⊗I) vec(V).
  Mat16 op = Mat16::Zero();
  for (int blk = 0; blk < 4; ++blk) op.block<4, 4>(4 * blk, 4 * blk) += a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      op.block<4, 4>(4 * i, 4 * j).diagonal().array() += a(i, j);

  Vec16 rhs = -Eigen::Map<const Vec16>(dd.diffusion.data());
  const Eigen::FullPivLU<Mat16> lu(op);
  Vec16 x = lu.solve(rhs);
  // Mixed-precision refinement: with rates spanning seven decades the
  // double-precision residual is mostly rounding noise, so it is formed in
  // extended precision.
  using Vec16l = Eigen::Matrix<long double, 16, 1>;
  for (int round = 0; round < 2; ++round) {
    const Vec16l r = rhs.cast<long double>() - op.cast<long double>() * x.cast<long double>();
    x += lu.solve(r.cast<double>());
  }

  return CovarianceMatrix(Eigen::Map<const Mat4>(x.data()));
}

CovarianceMatrix integrate_covariance_ode(const DriftDiffusion& dd,
                                          double horizon, double tol) {
  // The transients oscillate at the optical and mechanical frequencies but
  // decay only at the spectral abscissa, so stepping all the way to the
  // horizon would cost millions of periods. Instead V and the propagator
  // Φ = e^{Aτ} are integrated numerically over one short segment τ, and the
  // time-invariant flow is then composed exactly:
  //   V(2t) = V(t) + Φ(t) V(t) Φ(t)ᵀ,  Φ(2t) = Φ(t)².
  using State = std::array<double, 32>;
  const Mat4 a = dd.drift;
  const double scale = dd.diffusion.cwiseAbs().maxCoeff();
  const Mat4 d = scale > 0.0 ? Mat4(dd.diffusion / scale) : Mat4::Zero();

  auto rhs = [&a, &d](const State& s, State& ds, double) {
    const Eigen::Map<const Mat4> v(s.data());
    const Eigen::Map<const Mat4> phi(s.data() + 16);
    Eigen::Map<Mat4>(ds.data()) = a * v + v * a.transpose() + d;
    Eigen::Map<Mat4>(ds.data() + 16) = a * phi;
  };

  const double rate = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  const double segment = std::min(horizon, kOdeSegmentRadians / rate);
  State state{};
  Eigen::Map<Mat4>(state.data() + 16) = Mat4::Identity();
  namespace odeint = boost::numeric::odeint;
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(1e-16, 1e-14);
  odeint::integrate_adaptive(stepper, rhs, state, 0.0, segment, 0.01 * segment);

  Mat4 v = Eigen::Map<const Mat4>(state.data());
  Mat4 phi = Eigen::Map<const Mat4>(state.data() + 16);
  for (double t = segment; t < horizon; t *= 2.0) {
    v += phi * v * phi.transpose();
    phi = phi * phi;
  }
  v *= scale;

  // With V(0) = 0 the derivative at the end is exactly Φ D Φᵀ; evaluating it
  // this way keeps integration round-off out of the settling test.
  const double limit = scale > 0.0 ? tol * scale : tol;
  const double drift_rate = (phi * dd.diffusion * phi.transpose()).cwiseAbs().maxCoeff();
  if (drift_rate > limit)
    throw Error(ErrorCode::HorizonTooShort,
                "covariance ODE has not settled at the requested horizon");
  return CovarianceMatrix(v);
}

double lyapunov_residual(const DriftDiffusion& dd, const Mat4& v) {
  // Extended precision so the result reflects V rather than the rounding
  // of the products used to check it.
  using Mat4l = Eigen::Matrix<long double, 4, 4>;
  const Mat4l a = dd.drift.cast<long double>();
  const Mat4l vl = v.cast<long double>();
  const Mat4l r = a * vl + vl * a.transpose() + dd.diffusion.cast<long double>();
  return static_cast<double>(r.cwiseAbs().maxCoeff());
}

}  // namespace optoring
