#pragma once

// Camera views as points of the Poincare upper half-space.
//
// A view over a D-dimensional world (D = 1 for charts, D = 2 for maps) is a
// point of H^(D+1): a footprint u (the world point at the screen center) and
// an altitude v > 0 (the world length that maps to one screen unit). The
// metric is ds = |dx| / v, so distances measure perceptual cost.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace hypzoom {

template <std::size_t D>
using Footprint = std::array<double, D>;

class GeometryError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Footprint separations at or below kVerticalEps * max(v0, v1) are treated
// as a vertical geodesic.
inline constexpr double kVerticalEps = 1e-12;

namespace detail {

template <std::size_t D>
constexpr Footprint<D> add(const Footprint<D>& a, const Footprint<D>& b) {
  Footprint<D> r{};
  for (std::size_t k = 0; k < D; ++k) r[k] = a[k] + b[k];
  return r;
}

template <std::size_t D>
constexpr Footprint<D> sub(const Footprint<D>& a, const Footprint<D>& b) {
  Footprint<D> r{};
  for (std::size_t k = 0; k < D; ++k) r[k] = a[k] - b[k];
  return r;
}

template <std::size_t D>
constexpr Footprint<D> scale(const Footprint<D>& a, double s) {
  Footprint<D> r{};
  for (std::size_t k = 0; k < D; ++k) r[k] = a[k] * s;
  return r;
}

template <std::size_t D>
constexpr double dot(const Footprint<D>& a, const Footprint<D>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < D; ++k) s += a[k] * b[k];
  return s;
}

template <std::size_t D>
double norm(const Footprint<D>& a) {
  if constexpr (D == 1) {
    return std::abs(a[0]);
  } else {
    return std::hypot(a[0], a[1]);
  }
}

template <std::size_t D>
bool all_finite(const Footprint<D>& a) {
  for (double x : a) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace detail

template <std::size_t D>
class HPoint {
  static_assert(D == 1 || D == 2, "only 1-D and 2-D panning are supported");

 public:
  HPoint(Footprint<D> u, double v) : u_(u), v_(v) {
    if (!detail::all_finite(u_) || !std::isfinite(v_)) {
      throw GeometryError("HPoint: non-finite component");
    }
    if (!(v_ > 0.0)) {
      throw GeometryError("HPoint: altitude must be positive, got " + std::to_string(v_));
    }
  }

  const Footprint<D>& u() const { return u_; }
  double v() const { return v_; }

  friend bool operator==(const HPoint&, const HPoint&) = default;

 private:
  Footprint<D> u_;
  double v_;
};

// Raw tangent components (footprint part U, altitude part V) without a base.
template <std::size_t D>
struct Tangent {
  Footprint<D> U{};
  double V = 0.0;

  friend bool operator==(const Tangent&, const Tangent&) = default;
};

template <std::size_t D>
constexpr Tangent<D> operator*(double s, const Tangent<D>& t) {
  return {detail::scale(t.U, s), s * t.V};
}

template <std::size_t D>
constexpr Tangent<D> operator+(const Tangent<D>& a, const Tangent<D>& b) {
  return {detail::add(a.U, b.U), a.V + b.V};
}

template <std::size_t D>
double euclidean_norm(const Tangent<D>& t) {
  if constexpr (D == 1) {
    return std::hypot(t.U[0], t.V);
  } else {
    return std::hypot(t.U[0], t.U[1], t.V);
  }
}

// A tangent vector (camera velocity) based at a point.
template <std::size_t D>
class HVector {
 public:
  HVector(HPoint<D> base, Tangent<D> components) : base_(base), c_(components) {
    if (!detail::all_finite(c_.U) || !std::isfinite(c_.V)) {
      throw GeometryError("HVector: non-finite component");
    }
  }
  HVector(HPoint<D> base, Footprint<D> U, double V) : HVector(base, Tangent<D>{U, V}) {}

  static HVector zero(const HPoint<D>& base) { return HVector(base, Tangent<D>{}); }

  const HPoint<D>& base() const { return base_; }
  const Tangent<D>& components() const { return c_; }
  const Footprint<D>& U() const { return c_.U; }
  double V() const { return c_.V; }

  bool is_zero() const { return c_ == Tangent<D>{}; }

  friend HVector operator*(double s, const HVector& x) { return HVector(x.base_, s * x.c_); }

  // Both operands must share a base point.
  friend HVector operator+(const HVector& a, const HVector& b) {
    if (!(a.base_ == b.base_)) throw GeometryError("HVector: adding vectors with different bases");
    return HVector(a.base_, a.c_ + b.c_);
  }

  friend bool operator==(const HVector&, const HVector&) = default;

 private:
  HPoint<D> base_;
  Tangent<D> c_;
};

using HPoint2 = HPoint<1>;
using HPoint3 = HPoint<2>;
using HVector2 = HVector<1>;
using HVector3 = HVector<2>;

/// Hyperbolic magnitude |X| = ||X|| / v of a vector based at altitude v.
template <std::size_t D>
double hnorm(const HVector<D>& x) {
  return euclidean_norm(x.components()) / x.base().v();
}

namespace detail {

// Geodesic through two points, in the arc-length parameterization where the
// start sits at parameter r0 and the end at r1. Computed from the forms
// without large sums and differences.
template <std::size_t D>
struct Chord {
  bool vertical = false;
  Footprint<D> dir{};  // unit footprint direction (general case only)
  double delta = 0.0;  // ||u1 - u0||
  double r0 = 0.0;
  double r1 = 0.0;
  double length = 0.0;
};

template <std::size_t D>
Chord<D> chord(const HPoint<D>& x, const HPoint<D>& y) {
  Chord<D> c;
  const Footprint<D> du = sub(y.u(), x.u());
  const double v0 = x.v();
  const double v1 = y.v();
  c.delta = norm(du);
  if (c.delta <= kVerticalEps * std::max(v0, v1)) {
    c.vertical = true;
    c.length = std::abs(std::log(v1 / v0));
    return c;
  }
  c.dir = scale(du, 1.0 / c.delta);
  const double dv2 = (v1 - v0) * (v1 + v0);
  const double d2 = c.delta * c.delta;
  c.r0 = std::asinh((dv2 + d2) / (-2.0 * v0 * c.delta));
  c.r1 = std::asinh((dv2 - d2) / (-2.0 * v1 * c.delta));
  c.length = c.r1 - c.r0;
  return c;
}

}  // namespace detail

template <std::size_t D>
double dist(const HPoint<D>& x, const HPoint<D>& y) {
  return detail::chord(x, y).length;
}

/// Point reached after hyperbolic arc length s along the geodesic from x
/// toward y. Values of s outside [0, dist(x, y)] extrapolate along the same
/// geodesic; negative s walks away from y.
template <std::size_t D>
HPoint<D> geo(const HPoint<D>& x, const HPoint<D>& y, double s) {
  if (s == 0.0) return x;
  const auto c = detail::chord(x, y);
  if (c.vertical) {
    const double k = (y.v() > x.v()) ? 1.0 : (y.v() < x.v() ? -1.0 : 0.0);
    if (k == 0.0) throw GeometryError("geo: degenerate geodesic (x == y)");
    return HPoint<D>(x.u(), x.v() * std::exp(s * k));
  }
  const double ch = std::cosh(s + c.r0);
  const double along = x.v() * std::sinh(s) / ch;
  return HPoint<D>(detail::add(x.u(), detail::scale(c.dir, along)), x.v() * std::cosh(c.r0) / ch);
}

/// Geodesic interpolation: gerp(x, y, 0) = x, gerp(x, y, 1) = y.
template <std::size_t D>
HPoint<D> gerp(const HPoint<D>& x, const HPoint<D>& y, double alpha) {
  const double s = alpha * dist(x, y);
  if (s == 0.0) return x;
  return geo(x, y, s);
}

template <std::size_t D>
HPoint<D> exp_map(const HVector<D>& X) {
  const HPoint<D>& x = X.base();
  const double m = hnorm(X);
  if (m == 0.0) return x;
  const double v0 = x.v();
  const double un = detail::norm(X.U());
  if (un <= kVerticalEps * std::abs(X.V())) {
    return HPoint<D>(x.u(), v0 * std::exp(X.V() / v0));
  }
  const double r0 = -std::asinh(X.V() / un);
  const double ch = std::cosh(m + r0);
  const double along = v0 * std::sinh(m) / ch;
  return HPoint<D>(detail::add(x.u(), detail::scale(X.U(), along / un)), v0 * std::cosh(r0) / ch);
}

/// Initial velocity of the geodesic from x (t = 0) to y (t = 1).
template <std::size_t D>
HVector<D> log_map(const HPoint<D>& x, const HPoint<D>& y) {
  const auto c = detail::chord(x, y);
  const double v0 = x.v();
  if (c.vertical) {
    return HVector<D>(x, Footprint<D>{}, v0 * std::log(y.v() / v0));
  }
  const double S = c.length;
  return HVector<D>(x, detail::scale(c.dir, v0 * S / std::cosh(c.r0)), -v0 * S * std::tanh(c.r0));
}

/// Parallel transport of X along the geodesic from its base to y.
template <std::size_t D>
HVector<D> transport(const HVector<D>& X, const HPoint<D>& y) {
  const HPoint<D>& x = X.base();
  if (x == y) return X;
  const auto c = detail::chord(x, y);
  const double ratio = y.v() / x.v();
  if (c.vertical) {
    return HVector<D>(y, ratio * X.components());
  }
  // Rotate the in-plane part (U_par + i V) by theta1 * conj(theta0), with
  // theta_i = tanh r_i + i sech r_i.
  const double u_par = detail::dot(X.U(), c.dir);
  const Footprint<D> u_perp = detail::sub(X.U(), detail::scale(c.dir, u_par));
  const double a0 = std::tanh(c.r0), b0 = 1.0 / std::cosh(c.r0);
  const double a1 = std::tanh(c.r1), b1 = 1.0 / std::cosh(c.r1);
  // rot = theta1 * conj(theta0)
  const double rot_re = a1 * a0 + b1 * b0;
  const double rot_im = b1 * a0 - a1 * b0;
  const double z1_re = rot_re * u_par - rot_im * X.V();
  const double z1_im = rot_re * X.V() + rot_im * u_par;
  const Footprint<D> U1 = detail::scale(detail::add(u_perp, detail::scale(c.dir, z1_re)), ratio);
  return HVector<D>(y, U1, ratio * z1_im);
}

/// Covariant derivative of a vector field X(t) carried along a curve x(t).
/// `xdot` is the curve velocity and `Xdot` the ordinary time derivative of
/// X's components.
template <std::size_t D>
HVector<D> covariant_derivative(const HPoint<D>& x, const Tangent<D>& xdot, const HVector<D>& X,
                                const Tangent<D>& Xdot) {
  const double inv_v = 1.0 / x.v();
  Footprint<D> U{};
  for (std::size_t k = 0; k < D; ++k) {
    U[k] = Xdot.U[k] - inv_v * (xdot.V * X.U()[k] + xdot.U[k] * X.V());
  }
  const double V = Xdot.V + inv_v * (detail::dot(xdot.U, X.U()) - xdot.V * X.V());
  return HVector<D>(x, U, V);
}

/// Limits the hyperbolic magnitude of X to c. c = 0 yields the zero vector.
template <std::size_t D>
HVector<D> clipvec(const HVector<D>& X, double c) {
  if (!(c >= 0.0)) throw GeometryError("clipvec: threshold must be non-negative");
  const double m = hnorm(X);
  if (m < c) return X;
  if (m == 0.0) return X;
  return (c / m) * X;
}

}  // namespace hypzoom
