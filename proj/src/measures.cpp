#include "measures.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace optoring {

namespace {

constexpr double kPhysicalSlack = 1e-9;
constexpr double kDiscriminantSlack = 1e-12;

Quad det2(const Mat2& m) {
  return Quad(m(0, 0)) * Quad(m(1, 1)) - Quad(m(0, 1)) * Quad(m(1, 0));
}

// Laplace expansion along the 2×2 minors of the first two rows; every
// product of two doubles is exact in quad.
Quad det4(const Mat4& m) {
  auto minor_top = [&m](int a, int b) {
    return Quad(m(0, a)) * Quad(m(1, b)) - Quad(m(0, b)) * Quad(m(1, a));
  };
  auto minor_bottom = [&m](int a, int b) {
    return Quad(m(2, a)) * Quad(m(3, b)) - Quad(m(2, b)) * Quad(m(3, a));
  };
  return minor_top(0, 1) * minor_bottom(2, 3) -
         minor_top(0, 2) * minor_bottom(1, 3) +
         minor_top(0, 3) * minor_bottom(1, 2) +
         minor_top(1, 2) * minor_bottom(0, 3) -
         minor_top(1, 3) * minor_bottom(0, 2) +
         minor_top(2, 3) * minor_bottom(0, 1);
}

Quad qmax(Quad a, Quad b) { return a > b ? a : b; }

SymplecticPair eigen_pair(Quad gamma, Quad i4) {
  Quad disc = gamma * gamma - 4 * i4;
  if (disc < 0) {
    if (disc < -Quad(kDiscriminantSlack) * qmax(1, gamma * gamma))
      throw Error(ErrorCode::UnphysicalInvariants,
                  "negative discriminant in symplectic eigenvalue formula");
    disc = 0;
  }
  const Quad plus_sq = (gamma + sqrtq(disc)) / 2;
  // ν₊²ν₋² = I₄ avoids the cancellation in (Γ − sqrt(Γ² − 4I₄))/2.
  Quad minus_sq = plus_sq > 0 ? i4 / plus_sq : Quad(0);
  if (minus_sq < 0) minus_sq = 0;
  return {static_cast<double>(sqrtq(plus_sq)),
          static_cast<double>(sqrtq(minus_sq))};
}

double g_or_nan(double x) {
  if (!(x >= 0.5 - kPhysicalSlack)) return std::numeric_limits<double>::quiet_NaN();
  return entropy_g(x);
}

Quad closed_form_w(const SymplecticInvariants& inv) {
  const Quad pure_gap = 4 * inv.i2 - 1;
  const Quad radicand =
      4 * inv.i3 * inv.i3 + pure_gap * (4 * inv.i4 - inv.i1);
  const Quad ratio = (2 * fabsq(inv.i3) + sqrtq(qmax(radicand, 0))) / pure_gap;
  return ratio * ratio;
}

Quad general_w(const SymplecticInvariants& inv) {
  const Quad s = inv.i1 * inv.i2 + inv.i4 - inv.i3 * inv.i3;
  const Quad disc = s * s - 4 * inv.i1 * inv.i2 * inv.i4;
  return (s - sqrtq(qmax(disc, 0))) / (2 * inv.i2);
}

}  // namespace

const char* to_string(WBranch branch) noexcept {
  return branch == WBranch::ClosedForm ? "ClosedForm" : "General";
}

SymplecticInvariants invariants(const CovarianceMatrix& v) {
  return {det2(v.mechanical()), det2(v.optical()), det2(v.cross()),
          det4(v.matrix())};
}

SymplecticPair symplectic_eigenvalues(const SymplecticInvariants& inv) {
  return eigen_pair(inv.i1 + inv.i2 + 2 * inv.i3, inv.i4);
}

SymplecticPair pt_symplectic_eigenvalues(const SymplecticInvariants& inv) {
  return eigen_pair(inv.i1 + inv.i2 - 2 * inv.i3, inv.i4);
}

double log_negativity(double nu_tilde_minus) {
  if (!(nu_tilde_minus < 0.5 - 1e-12)) return 0.0;
  return -std::log(2.0 * nu_tilde_minus);
}

double entropy_g(double x) {
  if (!(x >= 0.5 - kPhysicalSlack))
    throw Error(ErrorCode::DomainError, "entropy function argument below 1/2");
  const double upper = x + 0.5;
  const double lower = x - 0.5;
  if (lower <= 0.0) return 0.0;
  // a ln a − b ln b = ln a + b ln(1 + 1/b) with a = b + 1
  return std::log(upper) + lower * std::log1p(1.0 / lower);
}

DiscordResult gaussian_discord(const SymplecticInvariants& inv,
                               SymplecticPair nu) {
  DiscordResult out;
  const Quad gap = inv.i1 * inv.i2 - inv.i4;
  bool closed_form = false;
  if (inv.i3 != 0) {
    const Quad lhs = 4 * gap * gap;
    const Quad rhs =
        (inv.i1 + 4 * inv.i4) * (1 + 4 * inv.i2) * inv.i3 * inv.i3;
    closed_form = lhs <= rhs;
  }
  out.branch = closed_form ? WBranch::ClosedForm : WBranch::General;
  const Quad w = closed_form ? closed_form_w(inv) : general_w(inv);
  out.w = static_cast<double>(w);

  const double base = entropy_g(static_cast<double>(sqrtq(inv.i2))) -
                      entropy_g(nu.plus) - entropy_g(nu.minus);
  double value = base + entropy_g(static_cast<double>(sqrtq(qmax(w, 0))));

  out.branch_gap = std::numeric_limits<double>::quiet_NaN();
  if (inv.i3 != 0 && 4 * inv.i2 - 1 > 0) {
    const double cf = g_or_nan(static_cast<double>(sqrtq(qmax(closed_form_w(inv), 0))));
    const double gen = g_or_nan(static_cast<double>(sqrtq(qmax(general_w(inv), 0))));
    out.branch_gap = std::abs(cf - gen);
  }

  if (value < 0.0) {
    if (value < -kPhysicalSlack)
      throw Error(ErrorCode::UnphysicalInvariants,
                  "Gaussian discord evaluates clearly negative");
    out.clamp = -value;
    value = 0.0;
  }
  out.value = value;
  return out;
}

double mutual_information(const SymplecticInvariants& inv, SymplecticPair nu) {
  double value = entropy_g(static_cast<double>(sqrtq(inv.i1))) +
                 entropy_g(static_cast<double>(sqrtq(inv.i2))) -
                 entropy_g(nu.plus) - entropy_g(nu.minus);
  if (value < 0.0) {
    if (value < -kPhysicalSlack)
      throw Error(ErrorCode::UnphysicalInvariants,
                  "mutual information evaluates clearly negative");
    value = 0.0;
  }
  return value;
}

CorrelationReport correlations(const CovarianceMatrix& v) {
  CorrelationReport r;
  r.invariants = invariants(v);
  const auto& inv = r.invariants;
  if (inv.i1 < Quad(0.25 - kPhysicalSlack) || inv.i2 < Quad(0.25 - kPhysicalSlack) ||
      inv.i4 < 0)
    throw Error(ErrorCode::UnphysicalInvariants,
                "covariance matrix violates single-mode uncertainty");
  r.nu = symplectic_eigenvalues(inv);
  if (r.nu.minus < 0.5 - kPhysicalSlack)
    throw Error(ErrorCode::UnphysicalInvariants,
                "smallest symplectic eigenvalue below 1/2");
  r.nu_tilde = pt_symplectic_eigenvalues(inv);
  r.log_negativity = log_negativity(r.nu_tilde.minus);
  r.discord = gaussian_discord(inv, r.nu);
  r.mutual_information = mutual_information(inv, r.nu);
  return r;
}

}  // namespace optoring
