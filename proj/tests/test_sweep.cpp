#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "errors.hpp"
#include "sweep.hpp"

using namespace optoring;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an optoring::Error");
  return ErrorCode::IoError;
}

SweepSpec temperature_sweep(std::size_t n) {
  SweepSpec s;
  s.axes.push_back({SweepParam::Temperature, 1e-3, 12e-3, n, Spacing::Linear});
  return s;
}

}  // namespace

TEST_CASE("axis values") {
  SweepAxis lin{SweepParam::Power, 1.0, 2.0, 5, Spacing::Linear};
  CHECK(lin.values() == std::vector<double>{1.0, 1.25, 1.5, 1.75, 2.0});
  SweepAxis lg{SweepParam::Power, 1.0, 1000.0, 4, Spacing::Log};
  const auto v = lg.values();
  CHECK(v[0] == 1.0);
  CHECK(v[1] == doctest::Approx(10.0));
  CHECK(v[2] == doctest::Approx(100.0));
  CHECK(v[3] == 1000.0);
}

TEST_CASE("sweep validation") {
  SweepSpec s;
  CHECK(code_of([&] { validate(s); }) == ErrorCode::ConfigError);
  s = temperature_sweep(1);
  CHECK(code_of([&] { validate(s); }) == ErrorCode::ConfigError);
  s = temperature_sweep(3);
  s.axes[0].start = 1.0;
  CHECK(code_of([&] { validate(s); }) == ErrorCode::ConfigError);
  s = temperature_sweep(3);
  s.axes.push_back(s.axes[0]);
  CHECK(code_of([&] { validate(s); }) == ErrorCode::ConfigError);
  s = temperature_sweep(3);
  s.overlay = SweepOverlay{SweepParam::Temperature, {1e-3}};
  CHECK(code_of([&] { validate(s); }) == ErrorCode::ConfigError);

  s = temperature_sweep(1000);
  s.axes.push_back({SweepParam::Power, 1e-3, 2e-3, 1001, Spacing::Linear});
  CHECK(point_count(s) == 1'001'000);
  CHECK(code_of([&] { run_sweep(s); }) == ErrorCode::CapExceeded);
  s.cap = 2'000'000;
  CHECK_NOTHROW(validate(s));
}

TEST_CASE("degenerate axis with equal endpoints") {
  SweepSpec s;
  s.axes.push_back({SweepParam::Temperature, 3e-3, 3e-3, 2, Spacing::Linear});
  const auto recs = run_sweep(s, 2);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].measures->log_negativity == recs[1].measures->log_negativity);
  CHECK(recs[0].measures->discord.value == recs[1].measures->discord.value);
}

TEST_CASE("records are row-major with overlay slowest") {
  SweepSpec s;
  s.axes.push_back({SweepParam::Temperature, 1e-3, 3e-3, 3, Spacing::Linear});
  s.axes.push_back({SweepParam::Power, 1e-3, 2e-3, 2, Spacing::Linear});
  s.overlay = SweepOverlay{SweepParam::Mass, {50e-12, 100e-12}};
  const auto recs = run_sweep(s, 3);
  REQUIRE(recs.size() == 12);
  std::size_t i = 0;
  for (double m : {50e-12, 100e-12})
    for (double t : {1e-3, 2e-3, 3e-3})
      for (double p : {1e-3, 2e-3}) {
        CAPTURE(i);
        CHECK(recs[i].params.mirror_mass == m);
        CHECK(recs[i].params.bath_temperature == doctest::Approx(t));
        CHECK(recs[i].params.laser_power == p);
        ++i;
      }
}

TEST_CASE("worker count does not change results") {
  SweepSpec s = temperature_sweep(40);
  s.overlay = SweepOverlay{SweepParam::Power, {2e-3, 5e-3}};
  const auto a = run_sweep(s, 1);
  const auto b = run_sweep(s, 7);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].status == b[i].status);
    if (a[i].measures) {
      CHECK(a[i].measures->log_negativity == b[i].measures->log_negativity);
      CHECK(a[i].measures->discord.value == b[i].measures->discord.value);
      CHECK(a[i].measures->mutual_information == b[i].measures->mutual_information);
    }
  }
}

TEST_CASE("threshold interpolation") {
  // y = 2 − x has its root at x = 2 between grid points.
  std::vector<double> xs, ys;
  for (int i = 0; i <= 7; ++i) {
    const double x = 0.3 + 0.55 * i;
    xs.push_back(x);
    ys.push_back(2.0 - x);
  }
  CHECK(std::abs(find_threshold(xs, ys) - 2.0) < 1e-12);

  const std::vector<double> positive{1.0, 0.5, 0.25};
  CHECK(code_of([&] { find_threshold(std::vector<double>{0, 1, 2}, positive); }) ==
        ErrorCode::NoCrossing);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  // The pair straddling NaN is skipped; the first genuine crossing wins.
  const std::vector<double> gappy{1.0, nan, -1.0, 1.0, -1.0};
  CHECK(find_threshold(std::vector<double>{0, 1, 2, 3, 4}, gappy) == 3.5);
}

TEST_CASE("entanglement sudden death along temperature") {
  SweepSpec s;
  s.axes.push_back({SweepParam::Temperature, 0.5e-3, 20e-3, 40, Spacing::Linear});
  const auto recs = run_sweep(s);
  const double t = find_threshold(recs, Quantity::LogNegativity, SweepParam::Temperature);
  CHECK(t > 0.5e-3);
  CHECK(t < 20e-3);
  // Below the threshold entangled, above it separable.
  for (const auto& r : recs) {
    REQUIRE(r.status == PointStatus::Ok);
    if (r.params.bath_temperature < t * 0.95) CHECK(r.measures->log_negativity > 0.0);
    if (r.params.bath_temperature > t * 1.05) CHECK(r.measures->log_negativity == 0.0);
  }
  CHECK(code_of([&] { find_threshold(recs, Quantity::Discord, SweepParam::Temperature); }) ==
        ErrorCode::NoCrossing);
}

TEST_CASE("unstable points are reported, not thrown") {
  PhysicalParams p;
  p.laser_power = 10e-3;
  p.detuning = EffectiveDetuning{-p.mech_freq};
  const auto r = evaluate_point(p);
  CHECK(r.status == PointStatus::Unstable);
  CHECK_FALSE(r.report.has_value());
}

TEST_CASE("oracle method matches the algebraic solve") {
  PhysicalParams p;
  const auto a = evaluate_point(p, LyapunovMethod::Algebraic);
  const auto b = evaluate_point(p, LyapunovMethod::OdeOracle);
  REQUIRE(a.status == PointStatus::Ok);
  REQUIRE(b.status == PointStatus::Ok);
  CHECK(std::abs(a.report->log_negativity - b.report->log_negativity) < 1e-6);
  CHECK(std::abs(a.report->discord.value - b.report->discord.value) < 1e-6);
}

TEST_CASE("ring angle calibration") {
  PhysicalParams anchor;
  const double theta = calibrate_ring_angle(anchor, 0.11);
  CHECK(theta > 0.0);
  CHECK(theta < 3.14159);
  anchor.ring_angle = theta;
  CHECK(std::abs(evaluate_point(anchor).report->log_negativity - 0.11) < 1e-9);
  CHECK(code_of([&] { calibrate_ring_angle(PhysicalParams{}, 50.0); }) == ErrorCode::NoCrossing);
}
