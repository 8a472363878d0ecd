#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "errors.hpp"
#include "measures.hpp"
#include "oracles.hpp"

using namespace optoring;

namespace {

double d(Quad x) { return static_cast<double>(x); }

// g(x) evaluated with 50 decimal digits straight from its definition.
double entropy_reference(double x) {
  using Big = boost::multiprecision::cpp_dec_float_50;
  const Big bx(x);
  const Big half("0.5");
  Big out = (bx + half) * log(bx + half);
  if (bx > half) out -= (bx - half) * log(bx - half);
  return out.convert_to<double>();
}

CovarianceMatrix tmsv(double r) { return CovarianceMatrix(oracle::two_mode_squeezed_vacuum(r)); }

}  // namespace

TEST_CASE("vacuum invariants") {
  const CovarianceMatrix v(0.5 * Mat4::Identity());
  const auto inv = invariants(v);
  CHECK(d(inv.i1) == 0.25);
  CHECK(d(inv.i2) == 0.25);
  CHECK(d(inv.i3) == 0.0);
  CHECK(d(inv.i4) == 0.0625);
  const auto nu = symplectic_eigenvalues(inv);
  CHECK(nu.plus == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(nu.minus == doctest::Approx(0.5).epsilon(1e-14));
  const auto rep = correlations(v);
  CHECK(rep.log_negativity == 0.0);
  CHECK(rep.discord.value == 0.0);
  CHECK(rep.mutual_information == 0.0);
}

TEST_CASE("two-mode squeezed vacuum") {
  for (double r : {0.1, 0.5, 1.0, 2.0}) {
    CAPTURE(r);
    const auto rep = correlations(tmsv(r));
    const double c = std::cosh(2 * r) / 2;
    CHECK(std::abs(d(rep.invariants.i1) - c * c) < 1e-10 * c * c);
    CHECK(std::abs(rep.nu.plus - 0.5) < 1e-8);
    CHECK(std::abs(rep.nu.minus - 0.5) < 1e-8);
    CHECK(std::abs(rep.nu_tilde.minus - std::exp(-2 * r) / 2) < 1e-8);
    CHECK(std::abs(rep.log_negativity - 2 * r) < 1e-8);
    const double g = entropy_reference(c);
    CHECK(std::abs(rep.mutual_information - 2 * g) < 1e-8);
    CHECK(std::abs(rep.discord.value - g) < 1e-8);
  }
}

TEST_CASE("entropy function") {
  CHECK(entropy_g(0.5) == 0.0);
  CHECK(entropy_g(0.5 - 1e-10) == 0.0);
  CHECK(entropy_g(1.5) == doctest::Approx(2 * std::numbers::ln2).epsilon(1e-15));
  CHECK_THROWS_AS(entropy_g(0.4), Error);
  try {
    entropy_g(0.4);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DomainError);
  }
  for (double x : {0.5 + 1e-14, 0.5 + 1e-9, 0.5 + 1e-5, 0.51, 0.75, 1.0, 3.7, 42.0, 1e4, 1e8}) {
    CAPTURE(x);
    const double ref = entropy_reference(x);
    CHECK(std::abs(entropy_g(x) - ref) <= 1e-13 * std::max(1.0, ref));
  }
  // monotone increasing
  double prev = 0.0;
  for (double x = 0.55; x < 20; x *= 1.3) {
    const double g = entropy_g(x);
    CHECK(g > prev);
    prev = g;
  }
}

TEST_CASE("symplectic spectra agree with the eigenvalue oracle") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const Mat4 v = oracle::random_physical_covariance(rng);
    const auto inv = invariants(CovarianceMatrix(v));
    const auto nu = symplectic_eigenvalues(inv);
    const auto nt = pt_symplectic_eigenvalues(inv);
    const auto ref = oracle::symplectic_spectrum(v);
    const auto ref_pt = oracle::pt_symplectic_spectrum(v);
    const double scale = std::max(1.0, ref.plus);
    CHECK(std::abs(nu.plus - ref.plus) < 1e-10 * scale);
    CHECK(std::abs(nu.minus - ref.minus) < 1e-10 * scale);
    CHECK(std::abs(nt.plus - ref_pt.plus) < 1e-10 * scale);
    CHECK(std::abs(nt.minus - ref_pt.minus) < 1e-10 * scale);
    CHECK(nu.plus * nu.minus == doctest::Approx(std::sqrt(d(inv.i4))).epsilon(1e-12));
  }
}

TEST_CASE("partial transpose flips the sign of the cross determinant") {
  std::mt19937_64 rng(6);
  const Mat4 v = oracle::random_physical_covariance(rng);
  const auto a = invariants(CovarianceMatrix(v));
  const auto b = invariants(CovarianceMatrix(oracle::partial_transpose(v)));
  CHECK(d(a.i1) == doctest::Approx(d(b.i1)));
  CHECK(d(a.i3) == doctest::Approx(-d(b.i3)));
  CHECK(d(a.i4) == doctest::Approx(d(b.i4)));
}

TEST_CASE("product states carry no correlations") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    std::uniform_real_distribution<double> u(0.5, 3.0);
    Mat4 v = Mat4::Zero();
    v.topLeftCorner<2, 2>() = u(rng) * Mat2::Identity();
    v.bottomRightCorner<2, 2>() = u(rng) * Mat2::Identity();
    const Mat4 s = oracle::local_symplectic(rng, 1.0);
    const auto rep = correlations(CovarianceMatrix(s * v * s.transpose()));
    CHECK(std::abs(rep.discord.value) < 1e-10);
    CHECK(std::abs(rep.mutual_information) < 1e-10);
    CHECK(rep.log_negativity == 0.0);
  }
}

TEST_CASE("measures are invariant under local symplectic maps") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; ++i) {
    const Mat4 v = oracle::random_physical_covariance(rng);
    const Mat4 s = oracle::local_symplectic(rng, 0.8);
    const auto a = correlations(CovarianceMatrix(v));
    const auto b = correlations(CovarianceMatrix(s * v * s.transpose()));
    CHECK(std::abs(a.log_negativity - b.log_negativity) < 1e-9);
    CHECK(std::abs(a.discord.value - b.discord.value) < 1e-9);
    CHECK(std::abs(a.mutual_information - b.mutual_information) < 1e-9);
  }
}

TEST_CASE("ordering and separability") {
  std::mt19937_64 rng(9);
  int separable_with_discord = 0;
  for (int i = 0; i < 500; ++i) {
    const Mat4 v = oracle::random_physical_covariance(rng, 0.6, 3.0);
    const auto rep = correlations(CovarianceMatrix(v));
    CHECK(rep.mutual_information >= rep.discord.value - 1e-12);
    CHECK(rep.discord.value >= 0.0);
    CHECK(rep.log_negativity >= 0.0);

    // Simon's PPT criterion written directly in the invariants.
    const double i1 = d(rep.invariants.i1), i2 = d(rep.invariants.i2);
    const double i3 = d(rep.invariants.i3), i4 = d(rep.invariants.i4);
    const double simon = i4 + 1.0 / 16.0 - (i1 + i2 - 2 * i3) / 4.0;
    if (std::abs(simon) > 1e-9 * std::max(1.0, i4)) CHECK((simon < 0) == (rep.log_negativity > 0));
    if (rep.log_negativity == 0.0 && rep.discord.value > 1e-3) ++separable_with_discord;
  }
  CHECK(separable_with_discord > 0);
}

TEST_CASE("unphysical covariance is rejected") {
  const CovarianceMatrix v(0.3 * Mat4::Identity());
  try {
    correlations(v);
    FAIL("expected UnphysicalInvariants");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnphysicalInvariants);
  }
}

TEST_CASE("discord branches") {
  // Uncorrelated cross block goes to the general branch.
  Mat4 v = Mat4::Identity();
  const auto rep = correlations(CovarianceMatrix(v));
  CHECK(rep.discord.branch == WBranch::General);
  CHECK(std::isnan(rep.discord.branch_gap));
}
