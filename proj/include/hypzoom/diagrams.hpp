#pragma once

// World/screen diagram geometry.
//
// The upper panel plots screen center and bounds in world space over time.
// The lower panel plots optical pathlines: the screen position of fixed world
// points over time. Pathlines are the isolines of phi(t, r) = v(t) r + u(t),
// added and removed so their onscreen spacing stays roughly even.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "hypzoom/hyperbolic.hpp"
#include "hypzoom/trajectory.hpp"

namespace hypzoom {

struct DiagramConfig {
  double alpha_iso = 0.1;  // pathline spacing parameter
  double r_lo = -1.0;
  double r_hi = 1.0;
  double r_half = 1.0;  // half screen extent for the bounds panel
  int width = 800;
  int panel_height = 280;

  void validate() const {
    if (!(alpha_iso > 0.0)) throw std::invalid_argument("DiagramConfig: alpha_iso must be positive");
    if (!(r_lo < r_hi)) throw std::invalid_argument("DiagramConfig: r_lo must be below r_hi");
    if (!(r_half > 0.0)) throw std::invalid_argument("DiagramConfig: r_half must be positive");
    if (width <= 0 || panel_height <= 0) throw std::invalid_argument("DiagramConfig: image size must be positive");
  }

  /// Screen bounds symmetric about the center for a given half extent.
  static DiagramConfig for_half_extent(double r_half, double alpha_iso = 0.1) {
    DiagramConfig c;
    c.r_half = r_half;
    c.r_lo = -r_half;
    c.r_hi = r_half;
    c.alpha_iso = alpha_iso;
    return c;
  }
};

/// Smallest power of two not less than x.
inline double pow2ceil(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("pow2ceil: x must be positive");
  int e = 0;
  const double m = std::frexp(x, &e);  // x = m 2^e, m in [0.5, 1)
  return m == 0.5 ? x : std::ldexp(1.0, e);
}

/// ||grad phi(t, r)|| for phi = v r + u.
inline double grad_mag(double v, double vprime, double uprime, double r) {
  return std::hypot(v, r * vprime + uprime);
}

struct PathlineVertex {
  std::size_t index;  // trajectory sample
  double t;
  double r;
};

struct Pathline {
  double p;  // world value held constant along the line
  std::vector<PathlineVertex> vertices;
};

using PathlineSet = std::vector<Pathline>;

namespace detail {

inline int pow2_exponent(double pow2) {
  int e = 0;
  std::frexp(pow2, &e);
  return e - 1;
}

// Whether 2^shift divides k.
inline bool divisible_by_pow2(std::int64_t k, int shift) {
  if (shift <= 0) return true;
  if (shift >= 62) return k == 0;
  const std::int64_t m = std::int64_t{1} << shift;
  return k % m == 0;
}

}  // namespace detail

/// Optical pathlines of a 1-D trajectory. Candidate world values at sample i
/// are the multiples k P of P = pow2ceil(alpha |v|) inside the screen; a
/// value is kept when pow2ceil(alpha psi) also divides it, decided exactly
/// on the integer k. Lines break where sample indices are not consecutive.
inline PathlineSet pathlines(const Trajectory<1>& traj, const DiagramConfig& cfg) {
  cfg.validate();
  if (traj.size() < 2) throw std::invalid_argument("pathlines: need at least two samples");

  // Keys are exact multiples of powers of two, so ordered double keys are
  // deterministic.
  std::map<double, std::vector<std::size_t>> acc;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double u = traj[i].u[0];
    const double v = traj[i].v;
    const CameraRate<1> d = traj.derivative(i);
    const double P = pow2ceil(cfg.alpha_iso * std::abs(v));
    const int eP = detail::pow2_exponent(P);

    auto k_lo = static_cast<std::int64_t>(std::ceil((v * cfg.r_lo + u) / P));
    auto k_hi = static_cast<std::int64_t>(std::floor((v * cfg.r_hi + u) / P));
    // Tighten so every emitted r lies inside [r_lo, r_hi] after rounding.
    while (k_lo <= k_hi && (static_cast<double>(k_lo) * P - u) / v < cfg.r_lo) ++k_lo;
    while (k_hi >= k_lo && (static_cast<double>(k_hi) * P - u) / v > cfg.r_hi) --k_hi;

    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
      const double p = static_cast<double>(k) * P;
      const double r = (p - u) / v;
      const double psi = grad_mag(v, d.V, d.U[0], r);
      const double Q = pow2ceil(cfg.alpha_iso * psi);
      if (!detail::divisible_by_pow2(k, detail::pow2_exponent(Q) - eP)) continue;
      acc[p].push_back(i);
    }
  }

  PathlineSet out;
  for (const auto& [p, idx] : acc) {
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const std::size_t i = idx[j];
      if (j == 0 || idx[j - 1] + 1 != i) out.push_back(Pathline{p, {}});
      out.back().vertices.push_back({i, traj.time(i), (p - traj[i].u[0]) / traj[i].v});
    }
  }
  return out;
}

/// C_alpha membership: pow2ceil(alpha ||grad phi||) divides phi(t, r).
inline bool in_contour_set(double p, double psi, double alpha_iso) {
  const double Q = pow2ceil(alpha_iso * psi);
  const double q = p / Q;  // exact: Q is a power of two
  return std::floor(q) == q;
}

template <std::size_t D>
struct BoundsSeries {
  std::vector<Footprint<D>> center;
  std::vector<Footprint<D>> lower;
  std::vector<Footprint<D>> upper;
};

/// Screen center u(t) and bounds u(t) -/+ v(t) r_half in world space.
template <std::size_t D>
BoundsSeries<D> screen_bounds_series(const Trajectory<D>& traj, double r_half) {
  if (!(r_half > 0.0)) throw std::invalid_argument("screen_bounds_series: r_half must be positive");
  BoundsSeries<D> s;
  for (const auto& smp : traj.samples()) {
    Footprint<D> lo = smp.u, hi = smp.u;
    for (std::size_t k = 0; k < D; ++k) {
      lo[k] -= smp.v * r_half;
      hi[k] += smp.v * r_half;
    }
    s.center.push_back(smp.u);
    s.lower.push_back(lo);
    s.upper.push_back(hi);
  }
  return s;
}

/// RMS onscreen velocity over the screen [r_lo, r_hi] (per axis), in closed
/// form. A point at screen r moves with r' = -(u' + r v') / v.
template <std::size_t D>
double rms_flow(const Trajectory<D>& traj, std::size_t i, const DiagramConfig& cfg) {
  const CameraRate<D> d = traj.derivative(i);
  const double v = traj[i].v;
  const double lo = cfg.r_lo, hi = cfg.r_hi;
  const double m1 = 0.5 * (lo + hi);
  const double m2 = (lo * lo + lo * hi + hi * hi) / 3.0;
  const double b = d.V / v;
  double ms = 0.0;
  for (std::size_t k = 0; k < D; ++k) {
    const double a = d.U[k] / v;
    ms += a * a + 2.0 * a * b * m1 + b * b * m2;
  }
  return std::sqrt(std::max(ms, 0.0));
}

struct Discontinuity {
  std::size_t index;
  double t;
  double jump;   // screen units per second
  double ratio;  // jump relative to the local velocity scale
};

struct ScanOptions {
  double window_seconds = 0.1;
  // Samples whose local velocity scale is below this fraction of the peak
  // are treated as at rest.
  double rest_fraction = 1e-6;
};

/// Screen velocities of the world point at the first frame's screen center.
/// Entry j is the velocity between samples j and j + 1.
template <std::size_t D>
std::vector<Footprint<D>> tracked_velocities(const Trajectory<D>& traj) {
  std::vector<Footprint<D>> vel;
  if (traj.size() < 2) return vel;
  const Footprint<D> p = traj[0].u;
  auto screen = [&](std::size_t i) {
    Footprint<D> r{};
    for (std::size_t k = 0; k < D; ++k) r[k] = (p[k] - traj[i].u[k]) / traj[i].v;
    return r;
  };
  Footprint<D> prev = screen(0);
  for (std::size_t i = 1; i < traj.size(); ++i) {
    const Footprint<D> cur = screen(i);
    vel.push_back(detail::scale(detail::sub(cur, prev), 1.0 / traj.period()));
    prev = cur;
  }
  return vel;
}

/// Velocity jump at every sample: the change between the velocities on
/// either side of sample i, minus the change predicted by cubic
/// interpolation from the two neighboring changes on each side (one each
/// near the ends). Entry i is zero where it cannot be formed.
template <std::size_t D>
std::vector<double> velocity_jumps(const Trajectory<D>& traj) {
  const auto vel = tracked_velocities(traj);
  std::vector<double> jumps(traj.size(), 0.0);
  if (vel.size() < 2) return jumps;
  // dv[i] = vel[i] - vel[i-1] is the velocity change at sample i.
  std::vector<Footprint<D>> dv(vel.size());
  for (std::size_t i = 1; i < vel.size(); ++i) dv[i] = detail::sub(vel[i], vel[i - 1]);
  const std::size_t last = vel.size() - 1;
  for (std::size_t i = 1; i <= last; ++i) {
    Footprint<D> smooth{};
    if (i >= 3 && i + 2 <= last) {
      // Weights of the cubic through samples -2, -1, +1, +2 evaluated at 0.
      smooth = detail::add(detail::scale(detail::add(dv[i - 1], dv[i + 1]), 2.0 / 3.0),
                           detail::scale(detail::add(dv[i - 2], dv[i + 2]), -1.0 / 6.0));
    } else {
      int n = 0;
      if (i >= 2) {
        smooth = detail::add(smooth, dv[i - 1]);
        ++n;
      }
      if (i + 1 <= last) {
        smooth = detail::add(smooth, dv[i + 1]);
        ++n;
      }
      if (n > 0) smooth = detail::scale(smooth, 1.0 / n);
    }
    jumps[i] = detail::norm(detail::sub(dv[i], smooth));
  }
  return jumps;
}

/// Instants where the screen-space velocity of the tracked world point jumps
/// by more than `threshold` times the local velocity scale (the peak speed
/// within a short window). Adjacent flagged samples merge into one event at
/// their largest jump.
template <std::size_t D>
std::vector<Discontinuity> discontinuity_scan(const Trajectory<D>& traj, double threshold,
                                              const ScanOptions& opt = {}) {
  if (traj.size() < 3) throw std::invalid_argument("discontinuity_scan: need at least three samples");
  const auto vel = tracked_velocities(traj);
  const auto jumps = velocity_jumps(traj);
  std::vector<double> speed(vel.size());
  double peak = 0.0;
  for (std::size_t j = 0; j < vel.size(); ++j) {
    speed[j] = detail::norm(vel[j]);
    peak = std::max(peak, speed[j]);
  }
  const auto w = static_cast<std::size_t>(std::max(3.0, std::ceil(opt.window_seconds / traj.period())));

  std::vector<Discontinuity> out;
  std::size_t last_flagged = 0;
  for (std::size_t i = 1; i < vel.size(); ++i) {
    const std::size_t a = i > w ? i - w : 0;
    const std::size_t b = std::min(vel.size() - 1, i + w);
    const double scale = *std::max_element(speed.begin() + static_cast<std::ptrdiff_t>(a),
                                           speed.begin() + static_cast<std::ptrdiff_t>(b) + 1);
    if (!(scale > 0.0) || scale <= opt.rest_fraction * peak) continue;
    const double ratio = jumps[i] / scale;
    if (!(ratio > threshold)) continue;
    const Discontinuity hit{i, traj.time(i), jumps[i], ratio};
    if (!out.empty() && last_flagged + 1 == i) {
      if (hit.jump > out.back().jump) out.back() = hit;
    } else {
      out.push_back(hit);
    }
    last_flagged = i;
  }
  return out;
}

}  // namespace hypzoom
