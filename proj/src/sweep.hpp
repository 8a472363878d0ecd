#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dynamics.hpp"
#include "measures.hpp"
#include "model.hpp"

namespace optoring {

enum class LyapunovMethod { Algebraic, OdeOracle };

enum class PointStatus { Ok, Unstable, Unphysical };

const char* to_string(PointStatus status) noexcept;

/// Everything computed for one parameter set.
struct PointResult {
  PhysicalParams params;
  DerivedConstants consts{};
  SteadyState steady;
  DriftDiffusion dynamics;
  StabilityReport stability;
  std::optional<CovarianceMatrix> covariance;
  std::optional<CorrelationReport> report;
  PointStatus status = PointStatus::Ok;
  std::string diagnostic;
};

/// Runs model → dynamics → measures. Unstable and unphysical outcomes are
/// reported through `status`; invalid parameters throw.
PointResult evaluate_point(const PhysicalParams& params,
                           LyapunovMethod method = LyapunovMethod::Algebraic);

enum class SweepParam { Temperature, Power, Mass, Detuning };
enum class Spacing { Linear, Log };

const char* to_string(SweepParam param) noexcept;

/// Detuning is read and written as the effective Δ/ω_m.
double param_value(const PhysicalParams& params, SweepParam param);
void set_param(PhysicalParams& params, SweepParam param, double value);

struct SweepAxis {
  SweepParam param = SweepParam::Temperature;
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 2;
  Spacing spacing = Spacing::Linear;

  std::vector<double> values() const;
};

struct SweepOverlay {
  SweepParam param = SweepParam::Power;
  std::vector<double> values;
};

struct SweepSpec {
  PhysicalParams base;
  std::vector<SweepAxis> axes;
  std::optional<SweepOverlay> overlay;
  std::size_t cap = 1'000'000;
  LyapunovMethod method = LyapunovMethod::Algebraic;
};

struct SweepRecord {
  PhysicalParams params;
  double n_cav = 0.0;
  double effective_detuning = 0.0;
  bool stable = false;
  std::optional<CorrelationReport> measures;
  PointStatus status = PointStatus::Ok;
};

/// Throws ConfigError for malformed specs and CapExceeded.
void validate(const SweepSpec& spec);

std::size_t point_count(const SweepSpec& spec);

/// Records in row-major order: overlay value slowest, then the first axis,
/// then the second. Identical output for any worker count; 0 picks the
/// hardware concurrency.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec, unsigned workers = 0);

enum class Quantity { LogNegativity, Discord, MutualInformation };

/// First zero crossing of a sampled column, linearly interpolated between
/// the last positive sample and the first non-positive one. Throws NoCrossing.
double find_threshold(std::span<const double> xs, std::span<const double> ys);

/// Same over sweep records along `axis`; pairs touching a non-OK record are
/// skipped rather than interpolated across. Log negativity uses the
/// unclipped −ln 2ν̃₋ so the crossing is not biased by the max(0, ·).
double find_threshold(std::span<const SweepRecord> records, Quantity quantity,
                      SweepParam axis);

/// Ring angle θ at which the anchor point's log negativity equals `target`,
/// by bisection on [0, π). Throws NoCrossing if θ = 0 cannot reach it.
double calibrate_ring_angle(const PhysicalParams& anchor, double target);

}  // namespace optoring
