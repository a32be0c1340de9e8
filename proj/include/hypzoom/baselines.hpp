#pragma once

// Event-driven baselines. On every target change a new path starts at the
// current output; neither handles interruptions smoothly.

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "hypzoom/hyperbolic.hpp"
#include "hypzoom/signal.hpp"
#include "hypzoom/trajectory.hpp"

namespace hypzoom {

// Moves toward the target at constant hyperbolic speed c, then holds.
template <std::size_t D>
HPoint<D> constant_speed_eval(const HPoint<D>& y0, const HPoint<D>& target, double c, double t) {
  if (!(c > 0.0)) throw std::invalid_argument("constant_speed_eval: c must be positive");
  const double S = dist(y0, target);
  const double s = std::min(c * std::max(t, 0.0), S);
  if (s >= S) return target;
  return geo(y0, target, s);
}

inline double cosine_ease(double a) {
  if (a <= 0.0) return 0.0;
  if (a >= 1.0) return 1.0;
  return 0.5 - 0.5 * std::cos(std::numbers::pi * a);
}

struct EasingConfig {
  double duration = 1.0;
  std::function<double(double)> curve = cosine_ease;
};

template <std::size_t D>
HPoint<D> easing_eval(const HPoint<D>& y0, const HPoint<D>& target, const EasingConfig& cfg, double t) {
  if (!(cfg.duration > 0.0)) throw std::invalid_argument("easing_eval: duration must be positive");
  const double a = std::max(t, 0.0) / cfg.duration;
  if (a >= 1.0) return target;
  return gerp(y0, target, cfg.curve(a));
}

// Shared driver: keeps the start of the current segment and re-anchors it at
// the exact event time whenever the target changes.
template <std::size_t D, class Eval>
Trajectory<D> run_segments(const TargetSignal<D>& signal, double period, double duration, Eval eval) {
  const auto& ev = signal.events();
  HPoint<D> start = ev.front().target;
  HPoint<D> target = ev.front().target;
  double t_start = 0.0;
  std::size_t next = 1;

  Trajectory<D> out(period);
  const std::size_t n = sample_count(duration, period);
  for (std::size_t i = 0; i < n; ++i) {
    while (next < ev.size() && TargetSignal<D>::first_sample(ev[next].t, period) <= i) {
      start = eval(start, target, ev[next].t - t_start);
      target = ev[next].target;
      t_start = ev[next].t;
      ++next;
    }
    out.push_back(eval(start, target, static_cast<double>(i) * period - t_start));
  }
  return out;
}

template <std::size_t D>
Trajectory<D> run_constant_speed(const TargetSignal<D>& signal, double c, double period, double duration) {
  return run_segments(signal, period, duration, [c](const HPoint<D>& a, const HPoint<D>& b, double t) {
    return constant_speed_eval(a, b, c, t);
  });
}

template <std::size_t D>
Trajectory<D> run_easing(const TargetSignal<D>& signal, const EasingConfig& cfg, double period, double duration) {
  return run_segments(signal, period, duration, [&cfg](const HPoint<D>& a, const HPoint<D>& b, double t) {
    return easing_eval(a, b, cfg, t);
  });
}

}  // namespace hypzoom
