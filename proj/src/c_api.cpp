#include "optoring/optoring.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "config.hpp"
#include "csv.hpp"
#include "errors.hpp"
#include "figures.hpp"
#include "selftest.hpp"
#include "sweep.hpp"

struct optoring_config_s {
  optoring::ConfigText text;
};

struct optoring_sweep_s {
  optoring::SweepSpec spec;
  std::vector<optoring::SweepRecord> records;
};

namespace {

thread_local std::string g_last_error;

optoring_status from_code(optoring::ErrorCode code) {
  using optoring::ErrorCode;
  switch (code) {
    case ErrorCode::NonPhysicalParameter: return OPTORING_ERROR_NONPHYSICAL_PARAMETER;
    case ErrorCode::UnstableDynamics: return OPTORING_ERROR_UNSTABLE_DYNAMICS;
    case ErrorCode::SingularSystem: return OPTORING_ERROR_SINGULAR_SYSTEM;
    case ErrorCode::UnphysicalInvariants: return OPTORING_ERROR_UNPHYSICAL_INVARIANTS;
    case ErrorCode::DomainError: return OPTORING_ERROR_DOMAIN;
    case ErrorCode::EigenSolverFailure: return OPTORING_ERROR_EIGEN_SOLVER;
    case ErrorCode::HorizonTooShort: return OPTORING_ERROR_HORIZON_TOO_SHORT;
    case ErrorCode::CapExceeded: return OPTORING_ERROR_CAP_EXCEEDED;
    case ErrorCode::NoCrossing: return OPTORING_ERROR_NO_CROSSING;
    case ErrorCode::ConfigError: return OPTORING_ERROR_CONFIG;
    case ErrorCode::IoError: return OPTORING_ERROR_IO;
  }
  return OPTORING_ERROR_UNKNOWN;
}

optoring_status fail(optoring_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename F>
optoring_status guarded(F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const optoring::Error& e) {
    return fail(from_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(OPTORING_ERROR_UNKNOWN, "out of memory");
  } catch (const std::exception& e) {
    return fail(OPTORING_ERROR_UNKNOWN, e.what());
  } catch (...) {
    return fail(OPTORING_ERROR_UNKNOWN, "unknown exception");
  }
}

optoring_status null_argument() {
  return fail(OPTORING_ERROR_INVALID_ARGUMENT, "null argument");
}

void copy_row_major(const optoring::Mat4& m, double* out) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[4 * i + j] = m(i, j);
}

optoring_status copy_string(const std::string& s, char* buf, std::size_t cap,
                            std::size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (!buf) return OPTORING_SUCCESS;
  if (cap < s.size() + 1)
    return fail(OPTORING_ERROR_BUFFER_TOO_SMALL, "output buffer too small");
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return OPTORING_SUCCESS;
}

int point_status(optoring::PointStatus s) {
  switch (s) {
    case optoring::PointStatus::Ok: return OPTORING_POINT_OK;
    case optoring::PointStatus::Unstable: return OPTORING_POINT_UNSTABLE;
    case optoring::PointStatus::Unphysical: return OPTORING_POINT_UNPHYSICAL;
  }
  return OPTORING_POINT_UNPHYSICAL;
}

int w_branch(optoring::WBranch b) {
  return b == optoring::WBranch::ClosedForm ? OPTORING_W_CLOSED_FORM : OPTORING_W_GENERAL;
}

}  // namespace

extern "C" {

const char* optoring_version(void) { return "1.0.0"; }

const char* optoring_status_name(optoring_status status) {
  switch (status) {
    case OPTORING_SUCCESS: return "success";
    case OPTORING_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case OPTORING_ERROR_CONFIG: return "configuration error";
    case OPTORING_ERROR_IO: return "I/O error";
    case OPTORING_ERROR_NONPHYSICAL_PARAMETER: return "non-physical parameter";
    case OPTORING_ERROR_UNSTABLE_DYNAMICS: return "unstable dynamics";
    case OPTORING_ERROR_SINGULAR_SYSTEM: return "singular Lyapunov system";
    case OPTORING_ERROR_UNPHYSICAL_INVARIANTS: return "unphysical invariants";
    case OPTORING_ERROR_DOMAIN: return "domain error";
    case OPTORING_ERROR_EIGEN_SOLVER: return "eigensolver failure";
    case OPTORING_ERROR_HORIZON_TOO_SHORT: return "integration horizon too short";
    case OPTORING_ERROR_CAP_EXCEEDED: return "sweep point cap exceeded";
    case OPTORING_ERROR_NO_CROSSING: return "no zero crossing";
    case OPTORING_ERROR_OUT_OF_RANGE: return "out of range";
    case OPTORING_ERROR_BUFFER_TOO_SMALL: return "buffer too small";
    case OPTORING_ERROR_UNKNOWN: return "unknown error";
  }
  return "unknown error";
}

const char* optoring_last_error(void) { return g_last_error.c_str(); }

optoring_status optoring_config_create(optoring_config* out) {
  if (!out) return null_argument();
  return guarded([&] {
    *out = new optoring_config_s{};
    return OPTORING_SUCCESS;
  });
}

optoring_status optoring_config_load(const char* path, optoring_config* out) {
  if (!path || !out) return null_argument();
  return guarded([&] {
    auto text = optoring::ConfigText::load(path);
    *out = new optoring_config_s{std::move(text)};
    return OPTORING_SUCCESS;
  });
}

optoring_status optoring_config_parse(const char* text, optoring_config* out) {
  if (!text || !out) return null_argument();
  return guarded([&] {
    auto parsed = optoring::ConfigText::parse(text);
    *out = new optoring_config_s{std::move(parsed)};
    return OPTORING_SUCCESS;
  });
}

optoring_status optoring_config_set(optoring_config cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return null_argument();
  return guarded([&] {
    cfg->text.set(key, value);
    return OPTORING_SUCCESS;
  });
}

optoring_status optoring_config_validate(optoring_config cfg) {
  if (!cfg) return null_argument();
  return guarded([&] {
    const auto run = optoring::resolve(cfg->text);
    if (!run.axes.empty()) optoring::validate(run.sweep_spec());
    return OPTORING_SUCCESS;
  });
}

optoring_status optoring_config_has_axes(optoring_config cfg, int* out) {
  if (!cfg || !out) return null_argument();
  *out = cfg->text.has_axes() ? 1 : 0;
  return OPTORING_SUCCESS;
}

optoring_status optoring_config_get(optoring_config cfg, const char* key, char* buf,
                                    size_t cap, size_t* needed) {
  if (!cfg || !key) return null_argument();
  return guarded([&] {
    const auto value = cfg->text.get(key);
    if (!value) return fail(OPTORING_ERROR_OUT_OF_RANGE, std::string("key not set: ") + key);
    return copy_string(*value, buf, cap, needed);
  });
}

void optoring_config_destroy(optoring_config cfg) { delete cfg; }

optoring_status optoring_evaluate_point(optoring_config cfg, int use_oracle,
                                        optoring_point_result* result) {
  if (!cfg || !result) return null_argument();
  return guarded([&] {
    const auto run = optoring::resolve(cfg->text);
    const bool oracle = use_oracle != 0 || run.oracle;
    const auto r = optoring::evaluate_point(
        run.params, oracle ? optoring::LyapunovMethod::OdeOracle
                           : optoring::LyapunovMethod::Algebraic);

    optoring_point_result out{};
    out.status = point_status(r.status);
    std::strncpy(out.diagnostic, r.diagnostic.c_str(), sizeof out.diagnostic - 1);
    out.cavity_freq = r.consts.cavity_freq;
    out.coupling_g = r.consts.coupling_g;
    out.input_amplitude = r.consts.input_amplitude;
    out.finesse = r.consts.finesse;
    out.damping = r.consts.damping;
    out.thermal_occupancy = r.consts.thermal_occupancy;
    out.coupling_factor = r.consts.coupling_factor;
    out.alpha_re = r.steady.alpha.real();
    out.alpha_im = r.steady.alpha.imag();
    out.q_s = r.steady.q;
    out.p_s = r.steady.p;
    out.effective_detuning = r.steady.effective_detuning;
    out.n_cav = r.steady.n_cav;
    out.branch_count = r.steady.branch_count;
    copy_row_major(r.dynamics.drift, out.drift);
    copy_row_major(r.dynamics.diffusion, out.diffusion);
    out.routh_hurwitz_pass = r.stability.routh_hurwitz_pass ? 1 : 0;
    out.spectral_abscissa = r.stability.spectral_abscissa;
    for (int i = 0; i < 4; ++i) out.char_poly[i] = r.stability.char_poly_coeffs[i];
    if (r.covariance) {
      out.has_covariance = 1;
      copy_row_major(r.covariance->matrix(), out.covariance);
    }
    if (r.report) {
      const auto& m = *r.report;
      out.has_measures = 1;
      out.invariants[0] = static_cast<double>(m.invariants.i1);
      out.invariants[1] = static_cast<double>(m.invariants.i2);
      out.invariants[2] = static_cast<double>(m.invariants.i3);
      out.invariants[3] = static_cast<double>(m.invariants.i4);
      out.nu_plus = m.nu.plus;
      out.nu_minus = m.nu.minus;
      out.nu_tilde_plus = m.nu_tilde.plus;
      out.nu_tilde_minus = m.nu_tilde.minus;
      out.log_negativity = m.log_negativity;
      out.discord = m.discord.value;
      out.mutual_information = m.mutual_information;
      out.classical_correlation = m.mutual_information - m.discord.value;
      out.w_branch = w_branch(m.discord.branch);
      out.w = m.discord.w;
      out.w_branch_gap = m.discord.branch_gap;
      out.discord_clamp = m.discord.clamp;
    }
    *result = out;
    return OPTORING_SUCCESS;
  });
}

optoring_status optoring_sweep_run(optoring_config cfg, unsigned workers, optoring_sweep* out) {
  if (!cfg || !out) return null_argument();
  return guarded([&] {
    const auto run = optoring::resolve(cfg->text);
    if (run.axes.empty())
      return fail(OPTORING_ERROR_CONFIG, "sweep requires at least axis1 in the config");
    auto handle = std::make_unique<optoring_sweep_s>();
    handle->spec = run.sweep_spec();
    handle->records =
        optoring::run_sweep(handle->spec, workers != 0 ? workers : run.workers);
    *out = handle.release();
    return OPTORING_SUCCESS;
  });
}

optoring_status optoring_sweep_size(optoring_sweep sweep, size_t* out) {
  if (!sweep || !out) return null_argument();
  *out = sweep->records.size();
  return OPTORING_SUCCESS;
}

optoring_status optoring_sweep_get_record(optoring_sweep sweep, size_t index,
                                          optoring_sweep_record* out) {
  if (!sweep || !out) return null_argument();
  if (index >= sweep->records.size())
    return fail(OPTORING_ERROR_OUT_OF_RANGE, "record index out of range");
  const auto& rec = sweep->records[index];
  optoring_sweep_record r{};
  r.temperature = rec.params.bath_temperature;
  r.power = rec.params.laser_power;
  r.mass = rec.params.mirror_mass;
  r.detuning_over_wm = rec.effective_detuning / rec.params.mech_freq;
  r.n_cav = rec.n_cav;
  r.stable = rec.stable ? 1 : 0;
  r.status = point_status(rec.status);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  r.nu_tilde_minus = r.log_negativity = r.discord = r.mutual_information = nan;
  r.w_branch_gap = nan;
  if (rec.status == optoring::PointStatus::Ok && rec.measures) {
    const auto& m = *rec.measures;
    r.has_measures = 1;
    r.nu_tilde_minus = m.nu_tilde.minus;
    r.log_negativity = m.log_negativity;
    r.discord = m.discord.value;
    r.mutual_information = m.mutual_information;
    r.w_branch = w_branch(m.discord.branch);
    r.w_branch_gap = m.discord.branch_gap;
  }
  *out = r;
  return OPTORING_SUCCESS;
}

optoring_status optoring_sweep_branch_warnings(optoring_sweep sweep, size_t* out) {
  if (!sweep || !out) return null_argument();
  std::size_t n = 0;
  for (const auto& rec : sweep->records)
    if (rec.measures && rec.measures->discord.branch_gap > 1e-6) ++n;
  *out = n;
  return OPTORING_SUCCESS;
}

optoring_status optoring_sweep_write_csv(optoring_sweep sweep, const char* path) {
  if (!sweep || !path) return null_argument();
  return guarded([&] {
    std::ofstream out(path, std::ios::binary);
    if (!out) return fail(OPTORING_ERROR_IO, std::string("cannot open ") + path);
    optoring::write_sweep_csv(out, sweep->spec, sweep->records);
    out.flush();
    if (!out) return fail(OPTORING_ERROR_IO, std::string("failed writing ") + path);
    return OPTORING_SUCCESS;
  });
}

optoring_status optoring_sweep_csv(optoring_sweep sweep, char* buf, size_t cap,
                                   size_t* needed) {
  if (!sweep) return null_argument();
  return guarded([&] {
    std::ostringstream out;
    optoring::write_sweep_csv(out, sweep->spec, sweep->records);
    return copy_string(out.str(), buf, cap, needed);
  });
}

optoring_status optoring_sweep_find_threshold(optoring_sweep sweep, optoring_quantity quantity,
                                              size_t series, double* out) {
  if (!sweep || !out) return null_argument();
  return guarded([&] {
    const auto& spec = sweep->spec;
    const std::size_t along = spec.axes[0].count;
    const std::size_t inner = spec.axes.size() > 1 ? spec.axes[1].count : 1;
    const std::size_t outer = spec.overlay ? spec.overlay->values.size() : 1;
    if (series >= outer * inner)
      return fail(OPTORING_ERROR_OUT_OF_RANGE, "series index out of range");
    const std::size_t o = series / inner;
    const std::size_t k = series % inner;
    std::vector<optoring::SweepRecord> line;
    line.reserve(along);
    for (std::size_t i = 0; i < along; ++i)
      line.push_back(sweep->records[(o * along + i) * inner + k]);
    optoring::Quantity q = optoring::Quantity::LogNegativity;
    if (quantity == OPTORING_DISCORD) q = optoring::Quantity::Discord;
    else if (quantity == OPTORING_MUTUAL_INFORMATION) q = optoring::Quantity::MutualInformation;
    else if (quantity != OPTORING_LOG_NEGATIVITY)
      return fail(OPTORING_ERROR_INVALID_ARGUMENT, "unknown quantity");
    *out = optoring::find_threshold(line, q, spec.axes[0].param);
    return OPTORING_SUCCESS;
  });
}

void optoring_sweep_destroy(optoring_sweep sweep) { delete sweep; }

optoring_status optoring_figures_write(optoring_config cfg, const char* out_dir,
                                       unsigned workers) {
  if (!cfg || !out_dir) return null_argument();
  return guarded([&] {
    const auto run = optoring::resolve(cfg->text);
    if (run.figure_points < 2)
      return fail(OPTORING_ERROR_CONFIG, "figure_points must be at least 2");
    const auto figs = optoring::figure_definitions(run.params, run.figure_points);
    for (const auto& f : figs) optoring::validate(f.spec);
    optoring::write_figures(figs, out_dir, workers != 0 ? workers : run.workers);
    return OPTORING_SUCCESS;
  });
}

optoring_status optoring_calibrate_theta(optoring_config cfg, double target, double* theta) {
  if (!cfg || !theta) return null_argument();
  return guarded([&] {
    const auto run = optoring::resolve(cfg->text);
    *theta = optoring::calibrate_ring_angle(run.params, target);
    return OPTORING_SUCCESS;
  });
}

optoring_status optoring_selftest(optoring_selftest_callback callback, void* user,
                                  int* all_passed) {
  return guarded([&] {
    bool ok = true;
    for (const auto& check : optoring::run_selftest()) {
      ok = ok && check.passed;
      if (callback) callback(check.name.c_str(), check.passed ? 1 : 0, check.detail.c_str(), user);
    }
    if (all_passed) *all_passed = ok ? 1 : 0;
    return OPTORING_SUCCESS;
  });
}

}  // extern "C"
