#include "config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <utility>

#include "errors.hpp"

namespace optoring {

namespace {

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorCode::ConfigError, what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::string_view unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
    s = s.substr(1, s.size() - 2);
  return trim(s);
}

struct UnitEntry {
  std::string_view symbol;
  Dimension dim;
  double factor;
};

constexpr double kTwoPi = constants::two_pi;

constexpr std::array kUnits{
    UnitEntry{"m", Dimension::Length, 1.0},
    UnitEntry{"cm", Dimension::Length, 1e-2},
    UnitEntry{"mm", Dimension::Length, 1e-3},
    UnitEntry{"um", Dimension::Length, 1e-6},
    UnitEntry{"nm", Dimension::Length, 1e-9},
    UnitEntry{"pm", Dimension::Length, 1e-12},
    UnitEntry{"W", Dimension::Power, 1.0},
    UnitEntry{"kW", Dimension::Power, 1e3},
    UnitEntry{"mW", Dimension::Power, 1e-3},
    UnitEntry{"uW", Dimension::Power, 1e-6},
    UnitEntry{"nW", Dimension::Power, 1e-9},
    UnitEntry{"kg", Dimension::Mass, 1.0},
    UnitEntry{"g", Dimension::Mass, 1e-3},
    UnitEntry{"mg", Dimension::Mass, 1e-6},
    UnitEntry{"ug", Dimension::Mass, 1e-9},
    UnitEntry{"ng", Dimension::Mass, 1e-12},
    UnitEntry{"pg", Dimension::Mass, 1e-15},
    UnitEntry{"fg", Dimension::Mass, 1e-18},
    UnitEntry{"K", Dimension::Temperature, 1.0},
    UnitEntry{"mK", Dimension::Temperature, 1e-3},
    UnitEntry{"uK", Dimension::Temperature, 1e-6},
    UnitEntry{"nK", Dimension::Temperature, 1e-9},
    UnitEntry{"Hz", Dimension::AngularFrequency, kTwoPi},
    UnitEntry{"kHz", Dimension::AngularFrequency, kTwoPi * 1e3},
    UnitEntry{"MHz", Dimension::AngularFrequency, kTwoPi * 1e6},
    UnitEntry{"GHz", Dimension::AngularFrequency, kTwoPi * 1e9},
    UnitEntry{"rad/s", Dimension::AngularFrequency, 1.0},
    UnitEntry{"krad/s", Dimension::AngularFrequency, 1e3},
    UnitEntry{"Mrad/s", Dimension::AngularFrequency, 1e6},
    UnitEntry{"rad", Dimension::Angle, 1.0},
    UnitEntry{"deg", Dimension::Angle, std::numbers::pi / 180.0},
};

std::pair<double, std::string_view> split_number(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || !std::isfinite(value))
    config_error("malformed number in \"" + std::string(text) + "\"");
  return {value, trim(std::string_view(ptr, end - ptr))};
}

bool parse_bool(std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  config_error("expected a boolean, got \"" + std::string(v) + "\"");
}

std::size_t parse_count(std::string_view v) {
  const auto [value, unit] = split_number(v);
  if (!unit.empty() || value < 0.0 || value != std::floor(value) || value > 1e15)
    config_error("expected a non-negative integer, got \"" + std::string(v) + "\"");
  return static_cast<std::size_t>(value);
}

SweepParam parse_param(std::string_view v) {
  if (v == "temperature") return SweepParam::Temperature;
  if (v == "power") return SweepParam::Power;
  if (v == "mass") return SweepParam::Mass;
  if (v == "detuning") return SweepParam::Detuning;
  config_error("unknown sweep parameter \"" + std::string(v) +
               "\" (expected temperature, power, mass or detuning)");
}

Dimension dimension_of(SweepParam p) {
  switch (p) {
    case SweepParam::Temperature: return Dimension::Temperature;
    case SweepParam::Power: return Dimension::Power;
    case SweepParam::Mass: return Dimension::Mass;
    case SweepParam::Detuning: return Dimension::Dimensionless;
  }
  return Dimension::Dimensionless;
}

// Detuning axes and overlays are expressed in units of ω_m; a trailing
// "wm" is accepted and ignored.
double parse_axis_value(std::string_view v, SweepParam p) {
  if (p == SweepParam::Detuning) {
    const auto [value, unit] = split_number(v);
    if (!unit.empty() && unit != "wm")
      config_error("detuning sweep values are multiples of omega_m");
    return value;
  }
  return parse_quantity(v, dimension_of(p));
}

constexpr std::array<std::string_view, 16> kScalarKeys{
    "arm_length",  "wavelength",    "power",        "mech_freq",
    "quality_factor", "mass",       "kappa",        "temperature",
    "theta",       "detuning",      "detuning_mode", "relative_bath_factor",
    "output",      "oracle",        "workers",      "figure_points",
};

bool known_key(std::string_view key) {
  if (std::find(kScalarKeys.begin(), kScalarKeys.end(), key) != kScalarKeys.end())
    return true;
  if (key == "sweep.cap" || key == "overlay.param" || key == "overlay.values")
    return true;
  for (std::string_view prefix : {"axis1.", "axis2."}) {
    if (key.starts_with(prefix)) {
      const auto field = key.substr(prefix.size());
      return field == "param" || field == "start" || field == "stop" ||
             field == "count" || field == "spacing";
    }
  }
  return false;
}

std::optional<SweepAxis> resolve_axis(const ConfigText& text, std::string_view name) {
  const std::string prefix(name);
  const auto param = text.get(prefix + ".param");
  const bool any = param || text.get(prefix + ".start") ||
                   text.get(prefix + ".stop") || text.get(prefix + ".count") ||
                   text.get(prefix + ".spacing");
  if (!any) return std::nullopt;
  if (!param || param->empty()) config_error(prefix + ".param is required");
  SweepAxis axis;
  axis.param = parse_param(*param);
  for (const char* field : {".start", ".stop", ".count"})
    if (!text.get(prefix + field)) config_error(prefix + field + " is required");
  axis.start = parse_axis_value(*text.get(prefix + ".start"), axis.param);
  axis.stop = parse_axis_value(*text.get(prefix + ".stop"), axis.param);
  axis.count = parse_count(*text.get(prefix + ".count"));
  const auto spacing = text.get(prefix + ".spacing").value_or("linear");
  if (spacing == "linear")
    axis.spacing = Spacing::Linear;
  else if (spacing == "log")
    axis.spacing = Spacing::Log;
  else
    config_error(prefix + ".spacing must be linear or log");
  return axis;
}

}  // namespace

double parse_quantity(std::string_view text, Dimension dim) {
  const auto [value, unit] = split_number(unquote(text));
  if (unit.empty()) {
    if (dim == Dimension::Dimensionless || dim == Dimension::Angle) return value;
    config_error("missing unit in \"" + std::string(text) + "\"");
  }
  for (const auto& entry : kUnits)
    if (entry.symbol == unit && entry.dim == dim) return value * entry.factor;
  config_error("unit \"" + std::string(unit) + "\" is not valid here");
}

ConfigText ConfigText::parse(std::string_view text) {
  ConfigText cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      config_error("line " + std::to_string(line_no) + ": expected key = \"value\"");
    cfg.set(trim(line.substr(0, eq)), unquote(line.substr(eq + 1)));
  }
  return cfg;
}

ConfigText ConfigText::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void ConfigText::set(std::string_view key, std::string_view value) {
  if (!known_key(key)) config_error("unknown config key \"" + std::string(key) + "\"");
  entries_.insert_or_assign(std::string(key), std::string(unquote(value)));
}

std::optional<std::string> ConfigText::get(std::string_view key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool ConfigText::has_axes() const {
  return std::any_of(entries_.begin(), entries_.end(), [](const auto& kv) {
    return kv.first.starts_with("axis");
  });
}

SweepSpec RunConfig::sweep_spec() const {
  SweepSpec spec;
  spec.base = params;
  spec.axes = axes;
  spec.overlay = overlay;
  spec.cap = cap;
  spec.method = oracle ? LyapunovMethod::OdeOracle : LyapunovMethod::Algebraic;
  return spec;
}

RunConfig resolve(const ConfigText& text) {
  RunConfig cfg;
  PhysicalParams& p = cfg.params;
  auto quantity = [&](std::string_view key, Dimension dim, double& slot) {
    if (auto v = text.get(key)) slot = parse_quantity(*v, dim);
  };
  quantity("arm_length", Dimension::Length, p.arm_length);
  quantity("wavelength", Dimension::Length, p.laser_wavelength);
  quantity("power", Dimension::Power, p.laser_power);
  quantity("mech_freq", Dimension::AngularFrequency, p.mech_freq);
  quantity("quality_factor", Dimension::Dimensionless, p.quality_factor);
  quantity("mass", Dimension::Mass, p.mirror_mass);
  quantity("kappa", Dimension::AngularFrequency, p.cavity_decay);
  quantity("temperature", Dimension::Temperature, p.bath_temperature);
  quantity("theta", Dimension::Angle, p.ring_angle);

  double detuning = p.mech_freq;
  if (auto v = text.get("detuning")) {
    const auto [value, unit] = split_number(*v);
    detuning = unit == "wm" ? value * p.mech_freq
                            : parse_quantity(*v, Dimension::AngularFrequency);
  }
  const auto mode = text.get("detuning_mode").value_or("effective");
  if (mode == "effective")
    p.detuning = EffectiveDetuning{detuning};
  else if (mode == "bare")
    p.detuning = BareDetuning{detuning};
  else
    config_error("detuning_mode must be effective or bare");

  if (auto v = text.get("relative_bath_factor")) {
    const auto n = parse_count(*v);
    if (n != 1 && n != 2) config_error("relative_bath_factor must be 1 or 2");
    p.relative_bath_factor = static_cast<int>(n);
  }
  if (auto v = text.get("output")) cfg.output = *v;
  if (auto v = text.get("oracle")) cfg.oracle = parse_bool(*v);
  if (auto v = text.get("workers")) cfg.workers = static_cast<unsigned>(parse_count(*v));
  if (auto v = text.get("figure_points")) cfg.figure_points = parse_count(*v);
  if (auto v = text.get("sweep.cap")) cfg.cap = parse_count(*v);

  for (std::string_view name : {"axis1", "axis2"})
    if (auto axis = resolve_axis(text, name)) cfg.axes.push_back(*axis);
  if (text.get("axis2.param") && !text.get("axis1.param"))
    config_error("axis2 given without axis1");

  if (auto param = text.get("overlay.param")) {
    SweepOverlay overlay;
    overlay.param = parse_param(*param);
    const auto values = text.get("overlay.values");
    if (!values) config_error("overlay.values is required");
    std::string_view rest = *values;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto item = trim(rest.substr(0, comma));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      if (item.empty()) config_error("empty entry in overlay.values");
      overlay.values.push_back(parse_axis_value(item, overlay.param));
    }
    cfg.overlay = std::move(overlay);
  } else if (text.get("overlay.values")) {
    config_error("overlay.values given without overlay.param");
  }

  validate(p);
  return cfg;
}

}  // namespace optoring
