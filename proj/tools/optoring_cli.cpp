// Command-line front end. Talks to the library exclusively through the C API.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "optoring/optoring.h"

namespace {

// Exit codes shared by all subcommands.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitUnstable = 2;
constexpr int kExitUnphysical = 3;
constexpr int kExitIo = 4;

struct ConfigDeleter {
  void operator()(optoring_config_s* c) const { optoring_config_destroy(c); }
};
struct SweepDeleter {
  void operator()(optoring_sweep_s* s) const { optoring_sweep_destroy(s); }
};
using ConfigHandle = std::unique_ptr<optoring_config_s, ConfigDeleter>;
using SweepHandle = std::unique_ptr<optoring_sweep_s, SweepDeleter>;

struct Options {
  std::string config_path;
  std::string out;
  unsigned workers = 0;
  bool oracle = false;
  bool json = false;
  std::optional<double> theta;
  std::optional<int> bath_factor;
};

int exit_code_for(optoring_status status) {
  return status == OPTORING_ERROR_IO ? kExitIo : kExitConfig;
}

int report_failure(optoring_status status) {
  std::cerr << "error: " << optoring_status_name(status);
  const std::string detail = optoring_last_error();
  if (!detail.empty()) std::cerr << ": " << detail;
  std::cerr << "\n";
  return exit_code_for(status);
}

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Loads --config (or defaults) and applies command-line overrides.
std::optional<ConfigHandle> open_config(const Options& opt, int& exit_code) {
  optoring_config raw = nullptr;
  optoring_status st = opt.config_path.empty()
                           ? optoring_config_create(&raw)
                           : optoring_config_load(opt.config_path.c_str(), &raw);
  if (st != OPTORING_SUCCESS) {
    exit_code = report_failure(st);
    return std::nullopt;
  }
  ConfigHandle cfg(raw);
  auto set = [&](const char* key, const std::string& value) {
    if (st == OPTORING_SUCCESS) st = optoring_config_set(cfg.get(), key, value.c_str());
  };
  if (opt.theta) {
    std::ostringstream s;
    s.precision(17);
    s << *opt.theta << " rad";
    set("theta", s.str());
  }
  if (opt.bath_factor) set("relative_bath_factor", std::to_string(*opt.bath_factor));
  if (opt.oracle) set("oracle", "true");
  if (st == OPTORING_SUCCESS) st = optoring_config_validate(cfg.get());
  if (st != OPTORING_SUCCESS) {
    exit_code = report_failure(st);
    return std::nullopt;
  }
  return cfg;
}

void print_matrix(std::ostream& os, const char* name, const double* m) {
  os << name << ":\n";
  for (int i = 0; i < 4; ++i) {
    os << "  ";
    for (int j = 0; j < 4; ++j) os << std::setw(18) << format_value(m[4 * i + j]);
    os << "\n";
  }
}

nlohmann::json to_json(const optoring_point_result& r) {
  auto matrix = [](const double* m) {
    return std::vector<double>(m, m + 16);
  };
  nlohmann::json j;
  const char* status[] = {"OK", "Unstable", "Unphysical"};
  j["status"] = status[r.status];
  j["diagnostic"] = r.diagnostic;
  j["derived"] = {{"cavity_freq", r.cavity_freq},       {"coupling_g", r.coupling_g},
                  {"input_amplitude", r.input_amplitude}, {"finesse", r.finesse},
                  {"damping", r.damping},                 {"thermal_occupancy", r.thermal_occupancy},
                  {"coupling_factor", r.coupling_factor}};
  j["steady_state"] = {{"alpha_re", r.alpha_re}, {"alpha_im", r.alpha_im},
                       {"q_s", r.q_s},           {"p_s", r.p_s},
                       {"effective_detuning", r.effective_detuning},
                       {"n_cav", r.n_cav},       {"branch_count", r.branch_count}};
  j["stability"] = {{"routh_hurwitz_pass", r.routh_hurwitz_pass != 0},
                    {"spectral_abscissa", r.spectral_abscissa},
                    {"char_poly", std::vector<double>(r.char_poly, r.char_poly + 4)}};
  j["drift"] = matrix(r.drift);
  j["diffusion"] = matrix(r.diffusion);
  if (r.has_covariance) j["covariance"] = matrix(r.covariance);
  if (r.has_measures) {
    j["invariants"] = std::vector<double>(r.invariants, r.invariants + 4);
    j["measures"] = {{"nu_plus", r.nu_plus},
                     {"nu_minus", r.nu_minus},
                     {"nu_tilde_plus", r.nu_tilde_plus},
                     {"nu_tilde_minus", r.nu_tilde_minus},
                     {"E_N", r.log_negativity},
                     {"D_G", r.discord},
                     {"I_M", r.mutual_information},
                     {"C", r.classical_correlation},
                     {"W", r.w},
                     {"W_branch", r.w_branch == OPTORING_W_CLOSED_FORM ? "ClosedForm" : "General"},
                     {"W_branch_gap", std::isnan(r.w_branch_gap) ? nlohmann::json(nullptr)
                                                                 : nlohmann::json(r.w_branch_gap)},
                     {"discord_clamp", r.discord_clamp}};
  }
  return j;
}

void print_report(std::ostream& os, const optoring_point_result& r) {
  os << "derived constants\n"
     << "  omega_c            " << format_value(r.cavity_freq) << " rad/s\n"
     << "  g                  " << format_value(r.coupling_g) << " rad/s\n"
     << "  E                  " << format_value(r.input_amplitude) << " 1/s\n"
     << "  finesse            " << format_value(r.finesse) << "\n"
     << "  gamma_m            " << format_value(r.damping) << " rad/s\n"
     << "  n_th               " << format_value(r.thermal_occupancy) << "\n"
     << "  cos^2(theta/2)     " << format_value(r.coupling_factor) << "\n"
     << "steady state\n"
     << "  alpha_s            " << format_value(r.alpha_re) << " + "
     << format_value(r.alpha_im) << "i\n"
     << "  q_s                " << format_value(r.q_s) << "\n"
     << "  n_cav              " << format_value(r.n_cav) << "\n"
     << "  Delta              " << format_value(r.effective_detuning) << " rad/s\n"
     << "  branches           " << r.branch_count << "\n"
     << "stability\n"
     << "  Routh-Hurwitz      " << (r.routh_hurwitz_pass ? "pass" : "FAIL") << "\n"
     << "  spectral abscissa  " << format_value(r.spectral_abscissa) << " rad/s\n"
     << "  char. polynomial   s^4";
  for (int i = 0; i < 4; ++i) os << " + (" << format_value(r.char_poly[i]) << ")s^" << 3 - i;
  os << "\n";
  print_matrix(os, "drift A", r.drift);
  print_matrix(os, "diffusion D", r.diffusion);
  if (r.has_covariance) print_matrix(os, "covariance V", r.covariance);
  if (r.has_measures) {
    os << "invariants\n"
       << "  I1 = det V_m       " << format_value(r.invariants[0]) << "\n"
       << "  I2 = det V_a       " << format_value(r.invariants[1]) << "\n"
       << "  I3 = det V_c       " << format_value(r.invariants[2]) << "\n"
       << "  I4 = det V         " << format_value(r.invariants[3]) << "\n"
       << "measures\n"
       << "  nu_+ / nu_-        " << format_value(r.nu_plus) << " / " << format_value(r.nu_minus) << "\n"
       << "  nu~_+ / nu~_-      " << format_value(r.nu_tilde_plus) << " / "
       << format_value(r.nu_tilde_minus) << "\n"
       << "  E_N                " << format_value(r.log_negativity) << "\n"
       << "  D_G                " << format_value(r.discord) << "  (W branch "
       << (r.w_branch == OPTORING_W_CLOSED_FORM ? "ClosedForm" : "General") << ", W = "
       << format_value(r.w) << ")\n"
       << "  I_M                " << format_value(r.mutual_information) << "\n"
       << "  C = I_M - D_G      " << format_value(r.classical_correlation) << "\n";
    if (!std::isnan(r.w_branch_gap) && r.w_branch_gap > 1e-6)
      os << "  warning: discord branches differ by " << format_value(r.w_branch_gap) << "\n";
  }
  const char* status[] = {"OK", "Unstable", "Unphysical"};
  os << "status: " << status[r.status];
  if (r.diagnostic[0] != '\0') os << " (" << r.diagnostic << ")";
  os << "\n";
}

int cmd_point(const Options& opt) {
  int code = kExitOk;
  auto cfg = open_config(opt, code);
  if (!cfg) return code;
  optoring_point_result result{};
  const auto st = optoring_evaluate_point(cfg->get(), opt.oracle ? 1 : 0, &result);
  if (st != OPTORING_SUCCESS) return report_failure(st);
  if (opt.json)
    std::cout << to_json(result).dump(2) << "\n";
  else
    print_report(std::cout, result);
  switch (result.status) {
    case OPTORING_POINT_UNSTABLE: return kExitUnstable;
    case OPTORING_POINT_UNPHYSICAL: return kExitUnphysical;
    default: return kExitOk;
  }
}

std::string config_value(optoring_config cfg, const char* key, const std::string& fallback) {
  std::size_t needed = 0;
  if (optoring_config_get(cfg, key, nullptr, 0, &needed) != OPTORING_SUCCESS) return fallback;
  std::string value(needed, '\0');
  optoring_config_get(cfg, key, value.data(), value.size(), &needed);
  value.resize(needed - 1);
  return value;
}

int cmd_sweep(const Options& opt) {
  int code = kExitOk;
  auto cfg = open_config(opt, code);
  if (!cfg) return code;
  int has_axes = 0;
  optoring_config_has_axes(cfg->get(), &has_axes);
  if (!has_axes) {
    std::cerr << "error: sweep needs axis1.* keys in the config\n";
    return kExitConfig;
  }
  optoring_sweep raw = nullptr;
  auto st = optoring_sweep_run(cfg->get(), opt.workers, &raw);
  if (st != OPTORING_SUCCESS) return report_failure(st);
  SweepHandle sweep(raw);

  namespace fs = std::filesystem;
  fs::path target = config_value(cfg->get(), "output", "sweep.csv");
  if (!opt.out.empty()) {
    std::error_code ec;
    fs::create_directories(opt.out, ec);
    if (ec) {
      std::cerr << "error: cannot create " << opt.out << "\n";
      return kExitIo;
    }
    target = fs::path(opt.out) / target.filename();
  }
  st = optoring_sweep_write_csv(sweep.get(), target.string().c_str());
  if (st != OPTORING_SUCCESS) return report_failure(st);

  std::size_t n = 0, flagged = 0;
  optoring_sweep_size(sweep.get(), &n);
  optoring_sweep_branch_warnings(sweep.get(), &flagged);
  std::cerr << "wrote " << n << " records to " << target.string() << "\n";
  if (flagged)
    std::cerr << "warning: " << flagged
              << " points where the two discord branches differ by more than 1e-6\n";
  return kExitOk;
}

int cmd_figures(const Options& opt) {
  int code = kExitOk;
  auto cfg = open_config(opt, code);
  if (!cfg) return code;
  const std::string out = opt.out.empty() ? "figures" : opt.out;
  const auto st = optoring_figures_write(cfg->get(), out.c_str(), opt.workers);
  if (st != OPTORING_SUCCESS) return report_failure(st);
  std::cerr << "wrote figure datasets to " << out << "\n";
  return kExitOk;
}

int cmd_selftest() {
  int all = 0;
  const auto st = optoring_selftest(
      [](const char* name, int passed, const char* detail, void*) {
        std::cout << (passed ? "PASS " : "FAIL ") << name << " (" << detail << ")\n";
      },
      nullptr, &all);
  if (st != OPTORING_SUCCESS) return report_failure(st);
  return all ? kExitOk : kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state optomechanical correlations of a triangular ring cavity"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&opt](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "flat key = \"value unit\" config file");
    sub->add_option("--theta", opt.theta, "ring angle theta in radians");
    sub->add_option("--relative-bath-factor", opt.bath_factor,
                    "mechanical diffusion multiplier (1 or 2)")
        ->check(CLI::IsMember({1, 2}));
    sub->add_flag("--oracle", opt.oracle,
                  "integrate the covariance ODE instead of the algebraic Lyapunov solve");
  };

  auto* point = app.add_subcommand("point", "evaluate one parameter point");
  add_common(point);
  point->add_flag("--json", opt.json, "print the report as JSON");

  auto* sweep = app.add_subcommand("sweep", "run the config's parameter sweep to CSV");
  add_common(sweep);
  sweep->add_option("--out", opt.out, "output directory");
  sweep->add_option("--workers", opt.workers, "worker threads (0 = all cores)");

  auto* figures = app.add_subcommand("figures", "write every figure dataset and sidecar");
  add_common(figures);
  figures->add_option("--out", opt.out, "output directory (default ./figures)");
  figures->add_option("--workers", opt.workers, "worker threads (0 = all cores)");

  auto* selftest = app.add_subcommand("selftest", "run the oracle cross-checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  if (point->parsed()) return cmd_point(opt);
  if (sweep->parsed()) return cmd_sweep(opt);
  if (figures->parsed()) return cmd_figures(opt);
  if (selftest->parsed()) return cmd_selftest();
  return kExitConfig;
}
