#pragma once

#include <functional>

#include "casurf/errors.hpp"

namespace casurf {

/// Point of the product I x R^2 in (t, x, y) coordinates.
struct AmbientPoint {
  double t = 0.0, x = 0.0, y = 0.0;
  friend bool operator==(const AmbientPoint&, const AmbientPoint&) = default;
};

/// Tangent vector anchored at a base point; components in the coordinate
/// frame (d/dt, d/dx, d/dy).
struct AmbientVector {
  AmbientPoint base;
  double dt = 0.0, dx = 0.0, dy = 0.0;

  AmbientVector() = default;
  AmbientVector(AmbientPoint p, double t, double x, double y)
      : base(p), dt(t), dx(x), dy(y) {}

  static AmbientVector d_t(AmbientPoint p) { return {p, 1.0, 0.0, 0.0}; }
  static AmbientVector d_x(AmbientPoint p) { return {p, 0.0, 1.0, 0.0}; }
  static AmbientVector d_y(AmbientPoint p) { return {p, 0.0, 0.0, 1.0}; }

  AmbientVector operator-() const { return {base, -dt, -dx, -dy}; }

  friend AmbientVector operator*(double s, const AmbientVector& v) {
    return {v.base, s * v.dt, s * v.dx, s * v.dy};
  }
  friend AmbientVector operator*(const AmbientVector& v, double s) {
    return s * v;
  }
  friend AmbientVector operator+(const AmbientVector& a, const AmbientVector& b) {
    if (!(a.base == b.base)) {
      throw BaseMismatch("adding vectors at different base points");
    }
    return {a.base, a.dt + b.dt, a.dx + b.dx, a.dy + b.dy};
  }
  friend AmbientVector operator-(const AmbientVector& a, const AmbientVector& b) {
    return a + (-b);
  }
};

using AmbientVectorField = std::function<AmbientVector(const AmbientPoint&)>;

}  // namespace casurf
