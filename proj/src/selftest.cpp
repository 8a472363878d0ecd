#include "selftest.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "sweep.hpp"

namespace optoring {

namespace {

std::string describe(const char* label, double value) {
  std::ostringstream s;
  s.precision(3);
  s << label << " = " << std::scientific << value;
  return s.str();
}

SelftestCheck check_fixtures() {
  double worst = 0.0;
  {
    const auto r = correlations(CovarianceMatrix(0.5 * Mat4::Identity()));
    worst = std::max({worst, r.log_negativity, r.discord.value, r.mutual_information});
  }
  for (double sq : {0.5, 1.0}) {
    const auto r = correlations(CovarianceMatrix(oracle::two_mode_squeezed_vacuum(sq)));
    const double reduced = entropy_g(0.5 * std::cosh(2 * sq));
    worst = std::max({worst, std::abs(r.log_negativity - 2 * sq),
                      std::abs(r.discord.value - reduced),
                      std::abs(r.mutual_information - 2 * reduced)});
  }
  return {"vacuum and two-mode squeezed vacuum fixtures", worst < 1e-8,
          describe("max deviation", worst)};
}

SelftestCheck check_symplectic_spectra() {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const Mat4 v = oracle::random_physical_covariance(rng);
    const auto inv = invariants(CovarianceMatrix(v));
    const auto nu = symplectic_eigenvalues(inv);
    const auto nut = pt_symplectic_eigenvalues(inv);
    const auto ref = oracle::symplectic_spectrum(v);
    const auto reft = oracle::pt_symplectic_spectrum(v);
    worst = std::max({worst, std::abs(nu.plus - ref.plus), std::abs(nu.minus - ref.minus),
                      std::abs(nut.plus - reft.plus), std::abs(nut.minus - reft.minus)});
  }
  return {"symplectic eigenvalues vs iOmegaV eigen-oracle", worst < 1e-10,
          describe("max deviation", worst)};
}

SelftestCheck check_stability_agreement() {
  std::mt19937_64 rng(11);
  int disagreements = 0;
  for (int i = 0; i < 2000; ++i) {
    const auto p = oracle::random_params(rng);
    const auto c = derive_constants(p);
    const auto st = check_stability(build_drift(solve_steady_state(p, c), c, p));
    if (st.routh_hurwitz_pass != (st.spectral_abscissa < 0.0)) ++disagreements;
  }
  return {"Routh-Hurwitz vs spectral abscissa", disagreements == 0,
          std::to_string(disagreements) + " disagreements in 2000 draws"};
}

SelftestCheck check_lyapunov_vs_ode() {
  std::mt19937_64 rng(13);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto dd = oracle::random_stable_dimensionless(rng);
    const double horizon = 40.0 / std::abs(check_stability(dd).spectral_abscissa);
    const auto algebraic = solve_lyapunov(dd);
    const auto integrated = integrate_covariance_ode(dd, horizon, 1e-9);
    worst = std::max(worst,
                     (algebraic.matrix() - integrated.matrix()).cwiseAbs().maxCoeff());
  }
  PhysicalParams nominal;
  const auto a = evaluate_point(nominal, LyapunovMethod::Algebraic);
  const auto b = evaluate_point(nominal, LyapunovMethod::OdeOracle);
  if (a.covariance && b.covariance)
    worst = std::max(worst,
                     (a.covariance->matrix() - b.covariance->matrix()).cwiseAbs().maxCoeff());
  else
    worst = INFINITY;
  return {"algebraic Lyapunov solve vs covariance ODE", worst < 1e-6,
          describe("max |dV|", worst)};
}

SelftestCheck check_uncoupled_limit() {
  PhysicalParams p;
  p.laser_power = 0.0;
  const auto r = evaluate_point(p);
  const double n = r.consts.thermal_occupancy;
  const Eigen::Vector4d expected(n + 0.5, n + 0.5, 0.5, 0.5);
  double worst = INFINITY;
  if (r.covariance && r.report)
    worst = std::max({(r.covariance->matrix() - Mat4(expected.asDiagonal()))
                          .cwiseAbs()
                          .maxCoeff(),
                      r.report->log_negativity, r.report->discord.value,
                      r.report->mutual_information});
  return {"uncoupled thermal (+) vacuum limit", worst < 1e-10,
          describe("max deviation", worst)};
}

}  // namespace

std::vector<SelftestCheck> run_selftest() {
  return {check_fixtures(), check_symplectic_spectra(), check_stability_agreement(),
          check_lyapunov_vs_ode(), check_uncoupled_limit()};
}

}  // namespace optoring
