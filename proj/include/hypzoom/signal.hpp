#pragma once

// Target signals: the raw, possibly discontinuous, desired camera over time.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypzoom/hyperbolic.hpp"

namespace hypzoom {

template <std::size_t D>
struct StepEvent {
  double t;
  HPoint<D> target;
};

template <std::size_t D>
class TargetSignal {
 public:
  /// Step function: each target holds from its event time until the next.
  static TargetSignal steps(std::vector<StepEvent<D>> events) {
    if (events.empty()) throw std::invalid_argument("TargetSignal: no events");
    if (events.front().t != 0.0) throw std::invalid_argument("TargetSignal: first event must be at t = 0");
    for (std::size_t i = 1; i < events.size(); ++i) {
      if (!(events[i].t > events[i - 1].t) || !std::isfinite(events[i].t)) {
        throw std::invalid_argument("TargetSignal: event times must be strictly increasing (event " +
                                    std::to_string(i) + ")");
      }
    }
    TargetSignal s;
    s.events_ = std::move(events);
    return s;
  }

  static TargetSignal constant(const HPoint<D>& x) { return steps({{0.0, x}}); }

  /// Uniform samples x[i] at t = i * period, held past the last sample.
  static TargetSignal sampled(double period, std::vector<HPoint<D>> samples) {
    if (samples.empty()) throw std::invalid_argument("TargetSignal: no samples");
    if (!(period > 0.0)) throw std::invalid_argument("TargetSignal: period must be positive");
    std::vector<StepEvent<D>> ev;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (i == 0 || !(samples[i] == samples[i - 1])) {
        ev.push_back({static_cast<double>(i) * period, samples[i]});
      }
    }
    return steps(std::move(ev));
  }

  const std::vector<StepEvent<D>>& events() const { return events_; }

  /// Index of the event in force at sample i of a grid with the given
  /// period. Right-continuous: an event landing exactly on i * period is
  /// already visible at sample i.
  std::size_t event_index_at_sample(std::size_t i, double period) const {
    std::size_t k = 0;
    while (k + 1 < events_.size() && first_sample(events_[k + 1].t, period) <= i) ++k;
    return k;
  }

  const HPoint<D>& at_sample(std::size_t i, double period) const {
    return events_[event_index_at_sample(i, period)].target;
  }

  /// First grid sample at which an event at time t is visible.
  static std::size_t first_sample(double t, double period) {
    return static_cast<std::size_t>(std::ceil(t / period - 1e-9));
  }

 private:
  TargetSignal() = default;
  std::vector<StepEvent<D>> events_;
};

}  // namespace hypzoom
