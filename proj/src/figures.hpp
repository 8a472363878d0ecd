#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sweep.hpp"

namespace optoring {

/// One reproducible dataset plus the plot-description sidecar text.
struct FigureDefinition {
  std::string name;  // file stem, e.g. "fig3a"
  SweepSpec spec;
  std::string description;
};

/// The six figure datasets. `base` supplies the cavity, mirror and laser
/// constants (and θ); each figure overrides the swept and fixed quantities
/// named in its caption. `points` is the resolution of every axis.
std::vector<FigureDefinition> figure_definitions(const PhysicalParams& base,
                                                 std::size_t points);

/// Writes <name>.csv and <name>.plot.txt for every figure into `out_dir`.
/// Throws IoError.
void write_figures(const std::vector<FigureDefinition>& figures,
                   const std::filesystem::path& out_dir, unsigned workers);

}  // namespace optoring
