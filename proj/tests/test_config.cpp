#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "config.hpp"
#include "csv.hpp"
#include "errors.hpp"

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

}  // namespace

TEST_CASE("frequency units") {
  const double exact = 2 * std::numbers::pi * 947e3;
  const double a = parse_quantity("947 kHz", Dimension::AngularFrequency);
  const double b = parse_quantity("0.947 MHz", Dimension::AngularFrequency);
  const double c = parse_quantity("5950176.485899068 rad/s", Dimension::AngularFrequency);
  CHECK(std::abs(a - exact) <= 1e-12 * exact);
  CHECK(std::abs(b - exact) <= 1e-12 * exact);
  CHECK(std::abs(c - exact) <= 1e-12 * exact);
  CHECK(parse_quantity("5.95e6 rad/s", Dimension::AngularFrequency) == 5.95e6);
  CHECK(parse_quantity("2 krad/s", Dimension::AngularFrequency) == 2e3);
}

TEST_CASE("other units") {
  CHECK(parse_quantity("25 mm", Dimension::Length) == doctest::Approx(25e-3));
  CHECK(parse_quantity("1064 nm", Dimension::Length) == doctest::Approx(1064e-9));
  CHECK(parse_quantity("3.8 mW", Dimension::Power) == doctest::Approx(3.8e-3));
  CHECK(parse_quantity("50 ng", Dimension::Mass) == doctest::Approx(50e-12));
  CHECK(parse_quantity("3 mK", Dimension::Temperature) == doctest::Approx(3e-3));
  CHECK(parse_quantity("180 deg", Dimension::Angle) == doctest::Approx(std::numbers::pi));
  CHECK(parse_quantity("0.5", Dimension::Angle) == 0.5);
  CHECK(code_of([] { parse_quantity("3.8", Dimension::Power); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { parse_quantity("3.8 mK", Dimension::Power); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { parse_quantity("abc mW", Dimension::Power); }) == ErrorCode::ConfigError);
}

TEST_CASE("config parsing") {
  const auto text = ConfigText::parse(R"(
# nominal working point
power = "6.9 mW"
mass = "145 ng"     # heavier mirror
temperature = "2 mK"
detuning = "0.965 wm"
theta = "1.09"
axis1.param = "temperature"
axis1.start = "1 mK"
axis1.stop = "10 mK"
axis1.count = "10"
overlay.param = "power"
overlay.values = "3.8 mW, 6.9 mW, 9 mW"
)");
  const auto cfg = resolve(text);
  CHECK(cfg.params.laser_power == doctest::Approx(6.9e-3));
  CHECK(cfg.params.mirror_mass == doctest::Approx(145e-12));
  CHECK(cfg.params.ring_angle == 1.09);
  const auto& det = std::get<EffectiveDetuning>(cfg.params.detuning);
  CHECK(det.value == doctest::Approx(0.965 * cfg.params.mech_freq));
  REQUIRE(cfg.axes.size() == 1);
  CHECK(cfg.axes[0].count == 10);
  CHECK(cfg.axes[0].stop == doctest::Approx(10e-3));
  REQUIRE(cfg.overlay.has_value());
  CHECK(cfg.overlay->values.size() == 3);
  CHECK(cfg.overlay->values[2] == doctest::Approx(9e-3));
  CHECK(text.has_axes());
}

TEST_CASE("config errors") {
  CHECK(code_of([] { ConfigText::parse("colour = \"red\""); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { ConfigText::parse("power"); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { resolve(ConfigText::parse("detuning_mode = \"sideways\"")); }) ==
        ErrorCode::ConfigError);
  CHECK(code_of([] { resolve(ConfigText::parse("axis1.param = \"power\"")); }) ==
        ErrorCode::ConfigError);
  CHECK(code_of([] { resolve(ConfigText::parse("relative_bath_factor = \"3\"")); }) ==
        ErrorCode::ConfigError);
  CHECK(code_of([] { resolve(ConfigText::parse("quality_factor = \"5\"")); }) ==
        ErrorCode::NonPhysicalParameter);
  CHECK(code_of([] { ConfigText::load("/nonexistent/optoring.conf"); }) == ErrorCode::IoError);
  CHECK_FALSE(ConfigText::parse("power = \"1 mW\"").has_axes());
}

TEST_CASE("bare detuning mode") {
  const auto cfg = resolve(ConfigText::parse("detuning_mode = \"bare\"\ndetuning = \"2 wm\""));
  CHECK(std::holds_alternative<BareDetuning>(cfg.params.detuning));
}

TEST_CASE("number formatting round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 0.0}) {
    const auto s = format_double(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("CSV quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
  const auto rows = parse_csv("a,\"b,c\",\"d\"\"e\"\r\n1,2,3\n");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][1] == "b,c");
  CHECK(rows[0][2] == "d\"e");
  CHECK(rows[1][2] == "3");
}

TEST_CASE("sweep CSV layout") {
  SweepSpec spec;
  spec.axes.push_back({SweepParam::Temperature, 1e-3, 12e-3, 6, Spacing::Linear});
  spec.overlay = SweepOverlay{SweepParam::Mass, {50e-12, 100e-12}};
  const auto recs = run_sweep(spec, 2);
  std::ostringstream out;
  write_sweep_csv(out, spec, recs);
  const std::string text = out.str();
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.back() == '\n');

  const auto rows = parse_csv(text);
  REQUIRE(rows.size() == recs.size() + 1);
  const auto& header = rows[0];
  CHECK(header[0] == "mass [kg]");
  CHECK(header[1] == "temperature [K]");
  auto column = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    FAIL("missing column " << name);
    return std::size_t{0};
  };
  const auto dg = column("D_G [nepers]");
  const auto im = column("I_M [nepers]");
  const auto cc = column("C [nepers]");
  const auto en = column("E_N [nepers]");
  const auto st = column("status");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    REQUIRE(r.size() == header.size());
    CHECK(r[st] == "OK");
    const double d = std::strtod(r[dg].c_str(), nullptr);
    const double m = std::strtod(r[im].c_str(), nullptr);
    const double c = std::strtod(r[cc].c_str(), nullptr);
    CHECK(c == m - d);
    CHECK(std::strtod(r[en].c_str(), nullptr) == recs[i - 1].measures->log_negativity);
    CHECK(std::strtod(r[0].c_str(), nullptr) == recs[i - 1].params.mirror_mass);
  }
}
