#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "errors.hpp"

namespace optoring {

namespace {

constexpr double kOdeTolerance = 1e-9;
constexpr double kOdeHorizonTimescales = 40.0;

double measure_for_threshold(const SweepRecord& rec, Quantity quantity) {
  const auto& m = *rec.measures;
  switch (quantity) {
    case Quantity::LogNegativity:
      return -std::log(2.0 * m.nu_tilde.minus);
    case Quantity::Discord:
      return m.discord.value;
    case Quantity::MutualInformation:
      return m.mutual_information;
  }
  return 0.0;
}

}  // namespace

const char* to_string(PointStatus status) noexcept {
  switch (status) {
    case PointStatus::Ok: return "OK";
    case PointStatus::Unstable: return "Unstable";
    case PointStatus::Unphysical: return "Unphysical";
  }
  return "?";
}

const char* to_string(SweepParam param) noexcept {
  switch (param) {
    case SweepParam::Temperature: return "temperature";
    case SweepParam::Power: return "power";
    case SweepParam::Mass: return "mass";
    case SweepParam::Detuning: return "detuning";
  }
  return "?";
}

PointResult evaluate_point(const PhysicalParams& params, LyapunovMethod method) {
  PointResult r;
  r.params = params;
  r.consts = derive_constants(params);
  r.steady = solve_steady_state(params, r.consts);
  r.dynamics = build_drift(r.steady, r.consts, params);
  r.stability = check_stability(r.dynamics);
  if (!r.stability.routh_hurwitz_pass) {
    r.status = PointStatus::Unstable;
    r.diagnostic = "Routh-Hurwitz conditions violated";
    return r;
  }
  try {
    if (method == LyapunovMethod::Algebraic) {
      r.covariance = solve_lyapunov(r.dynamics);
    } else {
      const double horizon =
          kOdeHorizonTimescales / std::abs(r.stability.spectral_abscissa);
      r.covariance = integrate_covariance_ode(r.dynamics, horizon, kOdeTolerance);
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularSystem &&
        e.code() != ErrorCode::UnstableDynamics &&
        e.code() != ErrorCode::HorizonTooShort)
      throw;
    r.status = PointStatus::Unstable;
    r.diagnostic = e.what();
    return r;
  }
  try {
    r.report = correlations(*r.covariance);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnphysicalInvariants &&
        e.code() != ErrorCode::DomainError)
      throw;
    r.status = PointStatus::Unphysical;
    r.diagnostic = e.what();
  }
  return r;
}

double param_value(const PhysicalParams& p, SweepParam param) {
  switch (param) {
    case SweepParam::Temperature: return p.bath_temperature;
    case SweepParam::Power: return p.laser_power;
    case SweepParam::Mass: return p.mirror_mass;
    case SweepParam::Detuning:
      if (const auto* eff = std::get_if<EffectiveDetuning>(&p.detuning))
        return eff->value / p.mech_freq;
      return std::numeric_limits<double>::quiet_NaN();
  }
  return 0.0;
}

void set_param(PhysicalParams& p, SweepParam param, double value) {
  switch (param) {
    case SweepParam::Temperature: p.bath_temperature = value; break;
    case SweepParam::Power: p.laser_power = value; break;
    case SweepParam::Mass: p.mirror_mass = value; break;
    case SweepParam::Detuning:
      p.detuning = EffectiveDetuning{value * p.mech_freq};
      break;
  }
}

std::vector<double> SweepAxis::values() const {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = count > 1 ? static_cast<double>(i) / (count - 1) : 0.0;
    if (spacing == Spacing::Linear)
      out[i] = start + t * (stop - start);
    else
      out[i] = std::exp(std::log(start) + t * (std::log(stop) - std::log(start)));
  }
  if (count > 1) {
    out.front() = start;
    out.back() = stop;
  }
  return out;
}

std::size_t point_count(const SweepSpec& spec) {
  std::size_t n = spec.overlay ? spec.overlay->values.size() : 1;
  for (const auto& axis : spec.axes) n *= axis.count;
  return n;
}

void validate(const SweepSpec& spec) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::ConfigError, what);
  };
  if (spec.axes.empty() || spec.axes.size() > 2)
    fail("a sweep needs one or two axes");
  std::vector<SweepParam> seen;
  for (const auto& axis : spec.axes) {
    if (axis.count < 2) fail("each sweep axis needs at least 2 points");
    if (!(axis.start <= axis.stop)) fail("sweep axis start must not exceed stop");
    if (axis.spacing == Spacing::Log && !(axis.start > 0.0))
      fail("logarithmic axes need a positive start");
    seen.push_back(axis.param);
  }
  if (spec.overlay) {
    if (spec.overlay->values.empty()) fail("overlay needs at least one value");
    seen.push_back(spec.overlay->param);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    fail("a parameter may be swept by only one axis or overlay");
  // Overflow-safe cap check.
  double total = spec.overlay ? spec.overlay->values.size() : 1.0;
  for (const auto& axis : spec.axes) total *= static_cast<double>(axis.count);
  if (total > static_cast<double>(spec.cap))
    throw Error(ErrorCode::CapExceeded, "sweep exceeds the configured point cap");
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec, unsigned workers) {
  validate(spec);

  // Materialize the grid first so evaluation order cannot leak into output.
  std::vector<PhysicalParams> grid;
  grid.reserve(point_count(spec));
  const std::vector<double> overlay_values =
      spec.overlay ? spec.overlay->values : std::vector<double>{};
  const std::size_t overlay_n = spec.overlay ? overlay_values.size() : 1;
  const auto first = spec.axes[0].values();
  const auto second = spec.axes.size() > 1 ? spec.axes[1].values()
                                           : std::vector<double>{0.0};
  for (std::size_t o = 0; o < overlay_n; ++o)
    for (double x : first)
      for (double y : second) {
        PhysicalParams p = spec.base;
        if (spec.overlay) set_param(p, spec.overlay->param, overlay_values[o]);
        set_param(p, spec.axes[0].param, x);
        if (spec.axes.size() > 1) set_param(p, spec.axes[1].param, y);
        grid.push_back(p);
      }

  std::vector<SweepRecord> records(grid.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= grid.size()) return;
      try {
        const PointResult r = evaluate_point(grid[i], spec.method);
        SweepRecord& rec = records[i];
        rec.params = grid[i];
        rec.n_cav = r.steady.n_cav;
        rec.effective_detuning = r.steady.effective_detuning;
        rec.stable = r.stability.routh_hurwitz_pass;
        rec.measures = r.report;
        rec.status = r.status;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(grid.size());
        return;
      }
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, std::max<std::size_t>(grid.size(), 1)));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

double find_threshold(std::span<const double> xs, std::span<const double> ys) {
  const std::size_t n = std::min(xs.size(), ys.size());
  for (std::size_t i = 1; i < n; ++i) {
    const double y0 = ys[i - 1];
    const double y1 = ys[i];
    if (!std::isfinite(y0) || !std::isfinite(y1)) continue;
    if (y0 > 0.0 && y1 <= 0.0)
      return xs[i - 1] + (xs[i] - xs[i - 1]) * y0 / (y0 - y1);
  }
  throw Error(ErrorCode::NoCrossing, "quantity never reaches zero along the axis");
}

double find_threshold(std::span<const SweepRecord> records, Quantity quantity,
                      SweepParam axis) {
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(records.size());
  ys.reserve(records.size());
  for (const auto& rec : records) {
    xs.push_back(param_value(rec.params, axis));
    ys.push_back(rec.status == PointStatus::Ok && rec.measures
                     ? measure_for_threshold(rec, quantity)
                     : std::numeric_limits<double>::quiet_NaN());
  }
  return find_threshold(xs, ys);
}

double calibrate_ring_angle(const PhysicalParams& anchor, double target) {
  // Unstable points count as "above target": they only occur at strong coupling.
  auto excess = [&](double theta) {
    PhysicalParams p = anchor;
    p.ring_angle = theta;
    const PointResult r = evaluate_point(p);
    if (r.status != PointStatus::Ok) return std::numeric_limits<double>::infinity();
    return r.report->log_negativity - target;
  };
  double lo = 0.0;
  double hi = std::nextafter(std::numbers::pi, 0.0);
  if (excess(lo) < 0.0)
    throw Error(ErrorCode::NoCrossing,
                "target log negativity exceeds the maximum-coupling value");
  if (excess(hi) > 0.0)
    throw Error(ErrorCode::NoCrossing,
                "target log negativity is below the minimum-coupling value");
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace optoring
