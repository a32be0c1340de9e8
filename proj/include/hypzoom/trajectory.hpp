#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hypzoom/hyperbolic.hpp"

namespace hypzoom {

template <std::size_t D>
struct CameraSample {
  Footprint<D> u{};
  double v = 1.0;

  HPoint<D> point() const { return HPoint<D>(u, v); }
  static CameraSample from(const HPoint<D>& x) { return {x.u(), x.v()}; }
};

// Time derivative of a camera path (du/dt, dv/dt).
template <std::size_t D>
using CameraRate = Tangent<D>;

/// Uniformly sampled camera path starting at t = 0.
template <std::size_t D>
class Trajectory {
 public:
  explicit Trajectory(double period) : period_(period) {
    if (!(period > 0.0) || !std::isfinite(period)) {
      throw std::invalid_argument("Trajectory: period must be positive");
    }
  }

  double period() const { return period_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  double time(std::size_t i) const { return static_cast<double>(i) * period_; }
  double duration() const { return empty() ? 0.0 : time(size() - 1); }

  const CameraSample<D>& operator[](std::size_t i) const { return samples_[i]; }
  const std::vector<CameraSample<D>>& samples() const { return samples_; }
  HPoint<D> point(std::size_t i) const { return samples_.at(i).point(); }

  void push_back(const HPoint<D>& x) { samples_.push_back(CameraSample<D>::from(x)); }
  void push_back(const HPoint<D>& x, const CameraRate<D>& rate) {
    if (samples_.size() != rates_.size()) {
      throw std::logic_error("Trajectory: mixing samples with and without derivatives");
    }
    push_back(x);
    rates_.push_back(rate);
  }

  bool has_derivatives() const { return !rates_.empty() && rates_.size() == samples_.size(); }

  /// Analytic derivative when recorded, otherwise central differences
  /// (one-sided at both ends).
  CameraRate<D> derivative(std::size_t i) const {
    if (has_derivatives()) return rates_.at(i);
    if (samples_.size() < 2) return {};
    std::size_t a = i == 0 ? 0 : i - 1;
    std::size_t b = i + 1 >= samples_.size() ? samples_.size() - 1 : i + 1;
    const double h = static_cast<double>(b - a) * period_;
    CameraRate<D> d;
    for (std::size_t k = 0; k < D; ++k) d.U[k] = (samples_[b].u[k] - samples_[a].u[k]) / h;
    d.V = (samples_[b].v - samples_[a].v) / h;
    return d;
  }

  // One footprint axis as a 1-D trajectory, for per-axis diagrams.
  Trajectory<1> axis(std::size_t k) const {
    Trajectory<1> out(period_);
    for (std::size_t i = 0; i < size(); ++i) {
      const HPoint<1> p({samples_[i].u[k]}, samples_[i].v);
      if (has_derivatives()) {
        out.push_back(p, CameraRate<1>{{rates_[i].U[k]}, rates_[i].V});
      } else {
        out.push_back(p);
      }
    }
    return out;
  }

 private:
  double period_;
  std::vector<CameraSample<D>> samples_;
  std::vector<CameraRate<D>> rates_;
};

/// Number of samples covering [0, duration] at the given period.
inline std::size_t sample_count(double duration, double period) {
  if (!(duration >= 0.0) || !(period > 0.0)) throw std::invalid_argument("sample_count: bad duration or period");
  return static_cast<std::size_t>(std::ceil(duration / period - 1e-9)) + 1;
}

}  // namespace hypzoom
