/*
 * optoring: steady-state quantum correlations of a triangular ring cavity
 * with two movable mirrors.
 *
 * Plain C interface over the C++ core. Every call returns an optoring_status;
 * on failure a human-readable message for the calling thread is available
 * from optoring_last_error(). Handles are opaque and owned by the caller,
 * who releases them with the matching *_destroy function.
 */
#ifndef OPTORING_OPTORING_H
#define OPTORING_OPTORING_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(OPTORING_BUILDING_LIBRARY)
#    define OPTORING_API __declspec(dllexport)
#  else
#    define OPTORING_API __declspec(dllimport)
#  endif
#else
#  define OPTORING_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum optoring_status {
  OPTORING_SUCCESS = 0,
  OPTORING_ERROR_INVALID_ARGUMENT = 1,
  OPTORING_ERROR_CONFIG = 2,
  OPTORING_ERROR_IO = 3,
  OPTORING_ERROR_NONPHYSICAL_PARAMETER = 4,
  OPTORING_ERROR_UNSTABLE_DYNAMICS = 5,
  OPTORING_ERROR_SINGULAR_SYSTEM = 6,
  OPTORING_ERROR_UNPHYSICAL_INVARIANTS = 7,
  OPTORING_ERROR_DOMAIN = 8,
  OPTORING_ERROR_EIGEN_SOLVER = 9,
  OPTORING_ERROR_HORIZON_TOO_SHORT = 10,
  OPTORING_ERROR_CAP_EXCEEDED = 11,
  OPTORING_ERROR_NO_CROSSING = 12,
  OPTORING_ERROR_OUT_OF_RANGE = 13,
  OPTORING_ERROR_BUFFER_TOO_SMALL = 14,
  OPTORING_ERROR_UNKNOWN = 99
} optoring_status;

/* Outcome of evaluating one parameter point. */
typedef enum optoring_point_status {
  OPTORING_POINT_OK = 0,
  OPTORING_POINT_UNSTABLE = 1,
  OPTORING_POINT_UNPHYSICAL = 2
} optoring_point_status;

typedef enum optoring_w_branch {
  OPTORING_W_CLOSED_FORM = 0,
  OPTORING_W_GENERAL = 1
} optoring_w_branch;

typedef enum optoring_quantity {
  OPTORING_LOG_NEGATIVITY = 0,
  OPTORING_DISCORD = 1,
  OPTORING_MUTUAL_INFORMATION = 2
} optoring_quantity;

typedef struct optoring_config_s* optoring_config;
typedef struct optoring_sweep_s* optoring_sweep;

/* Full pipeline output for one point. Matrices are row-major in the
 * quadrature order (dq, dp, dx, dy). Measure fields are only meaningful
 * when has_measures is non-zero. */
typedef struct optoring_point_result {
  int status; /* optoring_point_status */
  char diagnostic[256];

  /* derived constants */
  double cavity_freq;
  double coupling_g;
  double input_amplitude;
  double finesse;
  double damping;
  double thermal_occupancy;
  double coupling_factor;

  /* classical working point */
  double alpha_re;
  double alpha_im;
  double q_s;
  double p_s;
  double effective_detuning;
  double n_cav;
  int branch_count;

  /* linear dynamics */
  double drift[16];
  double diffusion[16];
  int routh_hurwitz_pass;
  double spectral_abscissa;
  double char_poly[4];

  int has_covariance;
  double covariance[16];

  int has_measures;
  double invariants[4]; /* det V_m, det V_a, det V_c, det V */
  double nu_plus;
  double nu_minus;
  double nu_tilde_plus;
  double nu_tilde_minus;
  double log_negativity;
  double discord;
  double mutual_information;
  double classical_correlation;
  int w_branch; /* optoring_w_branch */
  double w;
  double w_branch_gap; /* NaN when only one branch is evaluable */
  double discord_clamp;
} optoring_point_result;

typedef struct optoring_sweep_record {
  double temperature;      /* K */
  double power;            /* W */
  double mass;             /* kg */
  double detuning_over_wm; /* effective detuning / omega_m */
  double n_cav;
  int stable;
  int status; /* optoring_point_status */
  int has_measures;
  double nu_tilde_minus;
  double log_negativity;
  double discord;
  double mutual_information;
  int w_branch;
  double w_branch_gap;
} optoring_sweep_record;

OPTORING_API const char* optoring_version(void);
OPTORING_API const char* optoring_status_name(optoring_status status);
/* Message for the most recent failure on this thread ("" if none). */
OPTORING_API const char* optoring_last_error(void);

/* Configuration: flat `key = "value unit"` settings. A fresh config holds
 * the default ring-cavity parameters. */
OPTORING_API optoring_status optoring_config_create(optoring_config* out);
OPTORING_API optoring_status optoring_config_load(const char* path, optoring_config* out);
OPTORING_API optoring_status optoring_config_parse(const char* text, optoring_config* out);
OPTORING_API optoring_status optoring_config_set(optoring_config cfg, const char* key,
                                                 const char* value);
/* Checks units and cross-key consistency without running anything. */
OPTORING_API optoring_status optoring_config_validate(optoring_config cfg);
OPTORING_API optoring_status optoring_config_has_axes(optoring_config cfg, int* out);
/* Copies the raw value of `key` (NUL-terminated) into buf. Missing keys
 * yield OPTORING_ERROR_OUT_OF_RANGE; *needed always receives the size
 * including the terminator when the key exists, and a NULL buf only
 * queries it. */
OPTORING_API optoring_status optoring_config_get(optoring_config cfg, const char* key,
                                                 char* buf, size_t cap, size_t* needed);
OPTORING_API void optoring_config_destroy(optoring_config cfg);

/* Single point. Unstable and unphysical points still return
 * OPTORING_SUCCESS with result->status set accordingly. `use_oracle`
 * replaces the algebraic Lyapunov solve with ODE integration. */
OPTORING_API optoring_status optoring_evaluate_point(optoring_config cfg, int use_oracle,
                                                     optoring_point_result* result);

/* Sweeps over the config's axis1/axis2/overlay keys. workers = 0 uses the
 * config's `workers` key, falling back to the hardware concurrency. */
OPTORING_API optoring_status optoring_sweep_run(optoring_config cfg, unsigned workers,
                                                optoring_sweep* out);
OPTORING_API optoring_status optoring_sweep_size(optoring_sweep sweep, size_t* out);
OPTORING_API optoring_status optoring_sweep_get_record(optoring_sweep sweep, size_t index,
                                                       optoring_sweep_record* out);
/* Number of points whose two discord branches differ by more than 1e-6. */
OPTORING_API optoring_status optoring_sweep_branch_warnings(optoring_sweep sweep,
                                                            size_t* out);
OPTORING_API optoring_status optoring_sweep_write_csv(optoring_sweep sweep, const char* path);
/* Same CSV bytes into buf; *needed receives the length including the NUL.
 * A NULL buf only queries the size. */
OPTORING_API optoring_status optoring_sweep_csv(optoring_sweep sweep, char* buf, size_t cap,
                                                size_t* needed);
/* Zero crossing of `quantity` along axis1 within one series; series
 * enumerates the remaining (overlay, axis2) combinations in row-major order. */
OPTORING_API optoring_status optoring_sweep_find_threshold(optoring_sweep sweep,
                                                           optoring_quantity quantity,
                                                           size_t series, double* out);
OPTORING_API void optoring_sweep_destroy(optoring_sweep sweep);

/* Writes fig2, fig3a, fig3b_grid, fig4, fig5a, fig5b (.csv + .plot.txt). */
OPTORING_API optoring_status optoring_figures_write(optoring_config cfg, const char* out_dir,
                                                    unsigned workers);

/* Ring angle theta reproducing `target_log_negativity` at the config's point. */
OPTORING_API optoring_status optoring_calibrate_theta(optoring_config cfg,
                                                      double target_log_negativity,
                                                      double* theta);

typedef void (*optoring_selftest_callback)(const char* name, int passed, const char* detail,
                                           void* user);
OPTORING_API optoring_status optoring_selftest(optoring_selftest_callback callback, void* user,
                                               int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* OPTORING_OPTORING_H */
