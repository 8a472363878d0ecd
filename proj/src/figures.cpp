#include "figures.hpp"

#include <fstream>
#include <sstream>

#include "csv.hpp"
#include "errors.hpp"

namespace optoring {

namespace {

constexpr double mK = 1e-3;
constexpr double mW = 1e-3;
constexpr double ng = 1e-12;

SweepAxis temperature_axis(std::size_t points) {
  return {SweepParam::Temperature, 0.1 * mK, 12.0 * mK, points, Spacing::Linear};
}

PhysicalParams with(PhysicalParams p, double mass, double power, double temperature,
                    double detuning_over_wm) {
  p.mirror_mass = mass;
  p.laser_power = power;
  p.bath_temperature = temperature;
  p.detuning = EffectiveDetuning{detuning_over_wm * p.mech_freq};
  return p;
}

std::string fixed_line(const PhysicalParams& p) {
  std::ostringstream s;
  s << "fixed: L = " << format_double(p.arm_length) << " m, lambda = "
    << format_double(p.laser_wavelength) << " m, omega_m = "
    << format_double(p.mech_freq) << " rad/s, Q = " << format_double(p.quality_factor)
    << ", kappa = " << format_double(p.cavity_decay)
    << " rad/s, theta = " << format_double(p.ring_angle)
    << " rad, relative_bath_factor = " << p.relative_bath_factor << "\n";
  return s.str();
}

}  // namespace

std::vector<FigureDefinition> figure_definitions(const PhysicalParams& base,
                                                 std::size_t points) {
  std::vector<FigureDefinition> figs;

  {
    FigureDefinition f;
    f.name = "fig2";
    f.spec.base = with(base, 50 * ng, 3.8 * mW, 3 * mK, 1.0);
    f.spec.axes = {temperature_axis(points)};
    f.spec.overlay = SweepOverlay{SweepParam::Mass, {50 * ng, 100 * ng}};
    f.description =
        "title: Logarithmic negativity versus bath temperature for two mirror masses\n"
        "x: column \"temperature [K]\", label \"T (K)\", scale linear\n"
        "y: column \"E_N [nepers]\", label \"E_N\"\n"
        "series: column \"mass [kg]\"; 5e-11 -> \"m = 50 ng\" (solid black); "
        "1e-10 -> \"m = 100 ng\" (dashed blue)\n"
        "held: P = 3.8 mW, Delta = omega_m\n";
    figs.push_back(std::move(f));
  }
  {
    FigureDefinition f;
    f.name = "fig3a";
    f.spec.base = with(base, 145 * ng, 3.8 * mW, 3 * mK, 0.965);
    f.spec.axes = {temperature_axis(points)};
    f.spec.overlay = SweepOverlay{SweepParam::Power, {3.8 * mW, 6.9 * mW, 9.0 * mW}};
    f.description =
        "title: Logarithmic negativity versus bath temperature for three pump powers\n"
        "x: column \"temperature [K]\", label \"T (K)\", scale linear\n"
        "y: column \"E_N [nepers]\", label \"E_N\"\n"
        "series: column \"power [W]\"; 0.0038 -> \"P = 3.8 mW\"; 0.0069 -> "
        "\"P = 6.9 mW\"; 0.009 -> \"P = 9 mW\"\n"
        "held: m = 145 ng, Delta = 0.965 omega_m\n";
    figs.push_back(std::move(f));
  }
  {
    FigureDefinition f;
    f.name = "fig3b_grid";
    f.spec.base = with(base, 145 * ng, 3.8 * mW, 3 * mK, 0.965);
    f.spec.axes = {temperature_axis(points),
                   SweepAxis{SweepParam::Power, 1.0 * mW, 10.0 * mW, points,
                             Spacing::Linear}};
    f.description =
        "title: Contour map of logarithmic negativity over temperature and pump power\n"
        "kind: contour\n"
        "x: column \"temperature [K]\", label \"T (K)\", scale linear\n"
        "y: column \"power [W]\", label \"P (W)\", scale linear\n"
        "z: column \"E_N [nepers]\", label \"E_N\"\n"
        "held: m = 145 ng, Delta = 0.965 omega_m\n";
    figs.push_back(std::move(f));
  }
  {
    FigureDefinition f;
    f.name = "fig4";
    f.spec.base = with(base, 145 * ng, 3.8 * mW, 3 * mK, 1.0);
    f.spec.axes = {temperature_axis(points)};
    f.description =
        "title: Gaussian quantum discord versus bath temperature\n"
        "x: column \"temperature [K]\", label \"T (K)\", scale linear\n"
        "y: column \"D_G [nepers]\", label \"D_G\"\n"
        "reference: column \"E_N [nepers]\" shows where entanglement has vanished\n"
        "held: m = 145 ng, P = 3.8 mW, Delta = omega_m\n";
    figs.push_back(std::move(f));
  }
  const SweepAxis detuning_axis{SweepParam::Detuning, 0.2, 3.0, points,
                                Spacing::Linear};
  {
    FigureDefinition f;
    f.name = "fig5a";
    f.spec.base = with(base, 145 * ng, 3.8 * mW, 6 * mK, 1.0);
    f.spec.axes = {detuning_axis};
    f.description =
        "title: Quantum mutual information versus normalized effective detuning\n"
        "x: column \"detuning [omega_m]\", label \"Delta / omega_m\", scale linear\n"
        "y: column \"I_M [nepers]\", label \"I_M\"\n"
        "held: T = 6 mK, m = 145 ng, P = 3.8 mW\n";
    figs.push_back(std::move(f));
  }
  {
    FigureDefinition f;
    f.name = "fig5b";
    f.spec.base = with(base, 145 * ng, 3.8 * mW, 6 * mK, 1.0);
    f.spec.axes = {detuning_axis};
    f.description =
        "title: Gaussian quantum discord versus normalized effective detuning\n"
        "x: column \"detuning [omega_m]\", label \"Delta / omega_m\", scale linear\n"
        "y: column \"D_G [nepers]\", label \"D_G\"\n"
        "held: T = 6 mK, m = 145 ng, P = 3.8 mW\n";
    figs.push_back(std::move(f));
  }
  for (auto& f : figs) f.description += fixed_line(f.spec.base);
  return figs;
}

void write_figures(const std::vector<FigureDefinition>& figures,
                   const std::filesystem::path& out_dir, unsigned workers) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec)
    throw Error(ErrorCode::IoError, "cannot create output directory " + out_dir.string());
  for (const auto& fig : figures) {
    const auto records = run_sweep(fig.spec, workers);
    const auto csv_path = out_dir / (fig.name + ".csv");
    std::ofstream csv(csv_path, std::ios::binary);
    write_sweep_csv(csv, fig.spec, records);
    std::ofstream plot(out_dir / (fig.name + ".plot.txt"), std::ios::binary);
    plot << "figure: " << fig.name << "\n"
         << "data: " << fig.name << ".csv\n"
         << fig.description;
    if (!csv || !plot)
      throw Error(ErrorCode::IoError, "failed writing " + csv_path.string());
  }
}

}  // namespace optoring
