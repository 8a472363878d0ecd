#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "sweep.hpp"

namespace optoring {

enum class Dimension {
  Length,
  Power,
  Mass,
  Temperature,
  AngularFrequency,  // linear Hz units are converted with 2π
  Angle,
  Dimensionless,
};

/// Parses "value unit", e.g. "25 mm", "947 kHz", "5.95e6 rad/s", "3.8 mW".
/// Throws ConfigError on unknown units or malformed numbers.
double parse_quantity(std::string_view text, Dimension dim);

/// Raw flat `key = "value unit"` settings, validated key by key.
class ConfigText {
 public:
  static ConfigText parse(std::string_view text);
  static ConfigText load(const std::filesystem::path& path);

  /// Throws ConfigError for unknown keys.
  void set(std::string_view key, std::string_view value);
  std::optional<std::string> get(std::string_view key) const;
  bool has_axes() const;

  const std::map<std::string, std::string, std::less<>>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

struct RunConfig {
  PhysicalParams params;
  std::vector<SweepAxis> axes;
  std::optional<SweepOverlay> overlay;
  std::size_t cap = 1'000'000;
  std::string output;
  bool oracle = false;
  unsigned workers = 0;
  std::size_t figure_points = 120;

  SweepSpec sweep_spec() const;
};

/// Resolves units and cross-key dependencies (detuning in units of ω_m,
/// axis units by parameter). Throws ConfigError.
RunConfig resolve(const ConfigText& text);

}  // namespace optoring
