#pragma once

// Causal geodesic smoothing filters.
//
// Each stage consumes a camera signal and produces a smoothed camera signal.
// Stages are run in series (a cascade); stage k's output feeds stage k+1.
// The production forms are the discrete-time updates below; integrate_ct
// provides a fine-step reference of the continuous-time systems.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "hypzoom/hyperbolic.hpp"
#include "hypzoom/signal.hpp"
#include "hypzoom/trajectory.hpp"

namespace hypzoom {

class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// dy/dt = alpha Log_y(x); alpha in Hz.
struct OnePole {
  double alpha;
};

/// dy/dt = clipvec(alpha Log_y(x), c); c is the speed limit in Hz.
struct ClippedOnePole {
  double alpha;
  double c;
};

/// D/dt dy/dt = omega0^2 Log_y(x) - 2 zeta omega0 dy/dt.
struct TwoPole {
  double omega0;
  double zeta;
};

using StageConfig = std::variant<OnePole, ClippedOnePole, TwoPole>;

inline std::string stage_name(const StageConfig& s) {
  return std::visit(
      [](const auto& st) -> std::string {
        using S = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<S, OnePole>) return "one-pole";
        else if constexpr (std::is_same_v<S, ClippedOnePole>) return "clipped-one-pole";
        else return "two-pole";
      },
      s);
}

struct FilterConfig {
  std::vector<StageConfig> stages;
  double period = 1.0 / 60.0;

  /// Throws ConfigError naming the offending field.
  void validate() const {
    if (!(period > 0.0) || !std::isfinite(period)) throw ConfigError("period", "must be positive");
    if (stages.empty()) throw ConfigError("stages", "at least one stage is required");
    for (std::size_t k = 0; k < stages.size(); ++k) {
      const std::string at = "stages[" + std::to_string(k) + "]";
      std::visit(
          [&](const auto& st) {
            using S = std::decay_t<decltype(st)>;
            if constexpr (std::is_same_v<S, OnePole> || std::is_same_v<S, ClippedOnePole>) {
              if (!(st.alpha > 0.0) || !std::isfinite(st.alpha)) throw ConfigError(at + ".alpha", "must be positive");
              const double b = st.alpha * period;
              if (!(b < 2.0)) {
                throw ConfigError(at + ".alpha", "alpha * period = " + std::to_string(b) + " must be below 2 (unstable)");
              }
              if constexpr (std::is_same_v<S, ClippedOnePole>) {
                if (!(st.c >= 0.0) || !std::isfinite(st.c)) throw ConfigError(at + ".c", "must be non-negative");
              }
            } else {
              if (!(st.omega0 > 0.0) || !std::isfinite(st.omega0)) throw ConfigError(at + ".omega0", "must be positive");
              if (!(st.zeta >= 0.0) || !std::isfinite(st.zeta)) throw ConfigError(at + ".zeta", "must be non-negative");
            }
          },
          stages[k]);
    }
  }

  /// Legal but questionable settings: oscillating one-pole steps (b > 1) and
  /// coarse two-pole steps (period * omega0 >= 0.5).
  std::vector<std::string> warnings() const {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < stages.size(); ++k) {
      const std::string at = "stages[" + std::to_string(k) + "]";
      std::visit(
          [&](const auto& st) {
            using S = std::decay_t<decltype(st)>;
            if constexpr (std::is_same_v<S, TwoPole>) {
              if (period * st.omega0 >= 0.5) {
                out.push_back(at + ": period * omega0 = " + std::to_string(period * st.omega0) +
                              " >= 0.5; discrete two-pole may be unstable");
              }
            } else {
              if (st.alpha * period > 1.0) {
                out.push_back(at + ": alpha * period = " + std::to_string(st.alpha * period) +
                              " > 1; discrete one-pole oscillates");
              }
            }
          },
          stages[k]);
    }
    return out;
  }

  /// n one-pole stages sharing alpha.
  static FilterConfig cascade(std::size_t n, double alpha, double period = 1.0 / 60.0) {
    FilterConfig cfg;
    cfg.period = period;
    cfg.stages.assign(n, OnePole{alpha});
    return cfg;
  }

  /// One clipped stage followed by three one-pole stages; the defaults are
  /// c = 1 Hz, alpha = 6 Hz at 60 frames per second.
  static FilterConfig clipped_cascade(double c = 1.0, double alpha = 6.0, double period = 1.0 / 60.0) {
    FilterConfig cfg;
    cfg.period = period;
    cfg.stages.push_back(ClippedOnePole{alpha, c});
    cfg.stages.insert(cfg.stages.end(), 3, OnePole{alpha});
    return cfg;
  }

  static FilterConfig clipped_two_pole(double c, double alpha, double omega0, double zeta,
                                       double period = 1.0 / 60.0) {
    FilterConfig cfg;
    cfg.period = period;
    cfg.stages = {ClippedOnePole{alpha, c}, TwoPole{omega0, zeta}};
    return cfg;
  }
};

// y[i] = gerp(y[i-1], x[i], b) with b = alpha * T. No range check here;
// FilterConfig::validate guards configured filters.
template <std::size_t D>
HPoint<D> one_pole_step(const HPoint<D>& prev, const HPoint<D>& target, double b) {
  return gerp(prev, target, b);
}

// Steps T * min(c, alpha * dist) along the geodesic toward the target.
template <std::size_t D>
HPoint<D> clipped_one_pole_step(const HPoint<D>& prev, const HPoint<D>& target, double alpha, double c,
                                double period) {
  const double S = dist(prev, target);
  const double s = period * std::min(c, alpha * S);
  if (s == 0.0) return prev;
  return geo(prev, target, s);
}

/// Per-stage state. `ydot` is only used by two-pole stages and is based at
/// the position the stage held before its latest update.
template <std::size_t D>
struct StageState {
  HPoint<D> y;
  HVector<D> ydot;

  explicit StageState(const HPoint<D>& y0) : y(y0), ydot(HVector<D>::zero(y0)) {}
};

template <std::size_t D>
HPoint<D> two_pole_step(StageState<D>& st, const HPoint<D>& target, double omega0, double zeta, double period) {
  const HVector<D> carried = transport(st.ydot, st.y);
  const HVector<D> pull = log_map(st.y, target);
  st.ydot = (1.0 - 2.0 * period * zeta * omega0) * carried + (period * omega0 * omega0) * pull;
  st.y = exp_map(period * st.ydot);
  return st.y;
}

// Advances one stage; returns the hyperbolic length of the step taken.
template <std::size_t D>
double advance_stage(const StageConfig& cfg, StageState<D>& st, const HPoint<D>& input, double period) {
  const HPoint<D> before = st.y;
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, OnePole>) {
          st.y = one_pole_step(st.y, input, s.alpha * period);
        } else if constexpr (std::is_same_v<S, ClippedOnePole>) {
          st.y = clipped_one_pole_step(st.y, input, s.alpha, s.c, period);
        } else {
          two_pole_step(st, input, s.omega0, s.zeta, period);
        }
      },
      cfg);
  return dist(before, st.y);
}

/// Runs every stage once on x[i]; returns the last stage's output.
template <std::size_t D>
HPoint<D> cascade_step(std::vector<StageState<D>>& states, const HPoint<D>& x, const FilterConfig& cfg) {
  if (states.size() != cfg.stages.size()) throw std::logic_error("cascade_step: state/config size mismatch");
  HPoint<D> signal = x;
  for (std::size_t k = 0; k < states.size(); ++k) {
    advance_stage(cfg.stages[k], states[k], signal, cfg.period);
    signal = states[k].y;
  }
  return signal;
}

/// A configured filter instance with its running state.
template <std::size_t D>
class GeodesicFilter {
 public:
  GeodesicFilter(FilterConfig cfg, const HPoint<D>& y0) : cfg_(std::move(cfg)) {
    cfg_.validate();
    reset(y0);
  }

  /// Re-seeds every stage at y0 with zero velocity.
  void reset(const HPoint<D>& y0) {
    states_.assign(cfg_.stages.size(), StageState<D>(y0));
    max_clipped_step_ = 0.0;
  }

  HPoint<D> step(const HPoint<D>& x) {
    HPoint<D> signal = x;
    for (std::size_t k = 0; k < states_.size(); ++k) {
      const double len = advance_stage(cfg_.stages[k], states_[k], signal, cfg_.period);
      if (std::holds_alternative<ClippedOnePole>(cfg_.stages[k])) {
        max_clipped_step_ = std::max(max_clipped_step_, len);
      }
      signal = states_[k].y;
    }
    return signal;
  }

  const HPoint<D>& output() const { return states_.back().y; }
  const std::vector<StageState<D>>& states() const { return states_; }
  const FilterConfig& config() const { return cfg_; }

  /// Longest single-step hyperbolic displacement of any clipped stage so far.
  double max_clipped_step() const { return max_clipped_step_; }

 private:
  FilterConfig cfg_;
  std::vector<StageState<D>> states_;
  double max_clipped_step_ = 0.0;
};

/// Samples the signal at the filter period and records the output. Sample 0
/// is the initial state y0 (default: the first target); sample i >= 1 is the
/// filter output after consuming x[i].
template <std::size_t D>
Trajectory<D> run_filter(const TargetSignal<D>& signal, const FilterConfig& cfg, double duration,
                         std::optional<HPoint<D>> y0 = std::nullopt, double* max_clipped_step = nullptr) {
  GeodesicFilter<D> filter(cfg, y0.value_or(signal.at_sample(0, cfg.period)));
  Trajectory<D> out(cfg.period);
  const std::size_t n = sample_count(duration, cfg.period);
  out.push_back(filter.output());
  for (std::size_t i = 1; i < n; ++i) out.push_back(filter.step(signal.at_sample(i, cfg.period)));
  if (max_clipped_step) *max_clipped_step = filter.max_clipped_step();
  return out;
}

/// Continuous-time systems available for reference integration.
enum class ContinuousSystem { OnePole, ClippedOnePole, TwoPole };

struct ContinuousParams {
  ContinuousSystem system = ContinuousSystem::OnePole;
  double alpha = 6.0;
  double c = 1.0;
  double omega0 = 6.0;
  double zeta = 1.0;
};

/// Fine-step geodesic explicit integration, y <- Exp(h f(y, x(t))), recorded
/// every `stride` solver steps. The target is read at each solver step from
/// the step signal, so event times need not align with the output grid.
template <std::size_t D>
Trajectory<D> integrate_ct(const ContinuousParams& p, const TargetSignal<D>& signal, double solver_step,
                           double duration, std::size_t stride = 1, std::optional<HPoint<D>> y0 = std::nullopt) {
  if (!(solver_step > 0.0) || stride == 0) throw std::invalid_argument("integrate_ct: bad step");
  StageState<D> st(y0.value_or(signal.events().front().target));
  Trajectory<D> out(solver_step * static_cast<double>(stride));
  const std::size_t n = sample_count(duration, solver_step);
  out.push_back(st.y);
  for (std::size_t i = 1; i < n; ++i) {
    const HPoint<D>& x = signal.at_sample(i, solver_step);
    switch (p.system) {
      case ContinuousSystem::OnePole:
        st.y = exp_map(solver_step * (p.alpha * log_map(st.y, x)));
        break;
      case ContinuousSystem::ClippedOnePole:
        st.y = exp_map(solver_step * clipvec(p.alpha * log_map(st.y, x), p.c));
        break;
      case ContinuousSystem::TwoPole:
        two_pole_step(st, x, p.omega0, p.zeta, solver_step);
        break;
    }
    if (i % stride == 0) out.push_back(st.y);
  }
  return out;
}

}  // namespace hypzoom
