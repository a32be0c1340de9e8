#pragma once

// Bridges between the hyperbolic camera model, screen coordinates, and the
// u,w-space model of van Wijk and Nuij.

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hypzoom/hyperbolic.hpp"

namespace hypzoom {

namespace detail {
inline void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
}
}  // namespace detail

// u,w-space zoom coordinate from altitude: w = rho^2 v.
inline double v_to_w(double v, double rho) {
  detail::require_positive(v, "v");
  detail::require_positive(rho, "rho");
  return rho * rho * v;
}

inline double w_to_v(double w, double rho) {
  detail::require_positive(w, "w");
  detail::require_positive(rho, "rho");
  return w / (rho * rho);
}

// Hyperbolic distance s from a u,w-space distance sigma: s = rho^2 sigma.
inline double hyperbolic_dist_from_uw(double sigma, double rho) {
  detail::require_positive(rho, "rho");
  return rho * rho * sigma;
}

inline double uw_dist_from_hyperbolic(double s, double rho) {
  detail::require_positive(rho, "rho");
  return s / (rho * rho);
}

/// Angle of view matching the u,w trade-off parameter rho.
inline double theta_from_rho(double rho) {
  detail::require_positive(rho, "rho");
  return 2.0 * std::atan(rho * rho / 2.0);
}

inline double rho_from_theta(double theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi)) {
    throw std::invalid_argument("theta must lie in (0, pi)");
  }
  return std::sqrt(2.0 * std::tan(theta / 2.0));
}

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

// Per-axis angle of view. The visible screen interval on axis k is
// [-half_extent(k), half_extent(k)].
template <std::size_t D>
class Viewport {
 public:
  Viewport() { theta_.fill(std::numbers::pi / 2.0); }

  explicit Viewport(std::array<double, D> theta) : theta_(theta) {
    for (double t : theta_) {
      if (!(t > 0.0 && t < std::numbers::pi)) {
        throw std::invalid_argument("viewport angle must lie in (0, pi)");
      }
    }
  }

  static Viewport uniform(double theta) {
    std::array<double, D> t;
    t.fill(theta);
    return Viewport(t);
  }

  double theta(std::size_t axis) const { return theta_.at(axis); }
  double half_extent(std::size_t axis) const { return std::tan(theta_.at(axis) / 2.0); }
  const std::array<double, D>& angles() const { return theta_; }

 private:
  std::array<double, D> theta_;
};

// p = v r + u
template <std::size_t D>
Footprint<D> world_point(const HPoint<D>& x, const Footprint<D>& r) {
  Footprint<D> p{};
  for (std::size_t k = 0; k < D; ++k) p[k] = x.v() * r[k] + x.u()[k];
  return p;
}

// r = (p - u) / v
template <std::size_t D>
Footprint<D> screen_point(const HPoint<D>& x, const Footprint<D>& p) {
  Footprint<D> r{};
  for (std::size_t k = 0; k < D; ++k) r[k] = (p[k] - x.u()[k]) / x.v();
  return r;
}

/// Camera that shows at least the world box [lo, hi]. For 2-D panning the
/// altitude is the larger of the two per-axis fits.
template <std::size_t D>
HPoint<D> camera_from_span(const Footprint<D>& lo, const Footprint<D>& hi,
                           const Viewport<D>& viewport = Viewport<D>()) {
  Footprint<D> center{};
  double v = 0.0;
  for (std::size_t k = 0; k < D; ++k) {
    if (!(lo[k] < hi[k]) || !std::isfinite(lo[k]) || !std::isfinite(hi[k])) {
      throw std::invalid_argument("camera_from_span: empty or inverted span");
    }
    center[k] = 0.5 * (lo[k] + hi[k]);
    v = std::max(v, 0.5 * (hi[k] - lo[k]) / viewport.half_extent(k));
  }
  return HPoint<D>(center, v);
}

struct EmbeddedPoint {
  double x, y, z;
};

/// Pseudosphere embedding of (u, v). Only defined for v >= 1 and periodic
/// in u with period 2 pi, so it is neither total nor injective.
inline EmbeddedPoint pseudosphere(double u, double v) {
  if (!(v >= 1.0)) throw std::domain_error("pseudosphere: requires v >= 1");
  const double a = std::acosh(v);
  return {std::cos(u) / v, std::sin(u) / v, a - std::tanh(a)};
}

}  // namespace hypzoom
