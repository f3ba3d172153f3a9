#include "casurf/immersion.hpp"

#include <cmath>
#include <sstream>

#include "casurf/numerics.hpp"

namespace casurf {

namespace {

AmbientVector diff_points(const AmbientPoint& base, const AmbientPoint& plus,
                          const AmbientPoint& minus, double two_h) {
  return {base, (plus.t - minus.t) / two_h, (plus.x - minus.x) / two_h,
          (plus.y - minus.y) / two_h};
}

}  // namespace

AmbientPoint Immersion::at(double u, double v) const {
  if (!domain_.contains(u, v)) {
    std::ostringstream os;
    os << "parameter (" << u << ", " << v << ") outside the domain rectangle";
    throw DomainError(os.str());
  }
  return eval(u, v);
}

AmbientVector Immersion::fd_first(double u, double v, int dir) const {
  const double x = dir == 0 ? u : v;
  const double h = num::step1(x);
  const double lo = dir == 0 ? domain_.u0 : domain_.v0;
  const double hi = dir == 0 ? domain_.u1 : domain_.v1;
  auto point = [&](double s) {
    return dir == 0 ? eval(s, v) : eval(u, s);
  };
  const AmbientPoint base = eval(u, v);

  if (x - h >= lo && x + h <= hi) {
    return diff_points(base, point(x + h), point(x - h), 2.0 * h);
  }
  // One-sided second-order stencil at the rectangle boundary.
  const double s = (x - h < lo) ? 1.0 : -1.0;
  const AmbientPoint p0 = point(x);
  const AmbientPoint p1 = point(x + s * h);
  const AmbientPoint p2 = point(x + 2.0 * s * h);
  return {base, s * (-3.0 * p0.t + 4.0 * p1.t - p2.t) / (2.0 * h),
          s * (-3.0 * p0.x + 4.0 * p1.x - p2.x) / (2.0 * h),
          s * (-3.0 * p0.y + 4.0 * p1.y - p2.y) / (2.0 * h)};
}

AmbientVector Immersion::d_u(double u, double v) const {
  if (du_) {
    AmbientVector r = du_(u, v);
    return r;
  }
  return fd_first(u, v, 0);
}

AmbientVector Immersion::d_v(double u, double v) const {
  if (dv_) return dv_(u, v);
  return fd_first(u, v, 1);
}

AmbientVector Immersion::d2(double u, double v, int i, int j) const {
  if (i > j) std::swap(i, j);
  if (i == 0 && j == 0 && duu_) return duu_(u, v);
  if (i == 0 && j == 1 && duv_) return duv_(u, v);
  if (i == 1 && j == 1 && dvv_) return dvv_(u, v);

  const AmbientPoint base = eval(u, v);

  if (du_) {
    // Central difference of the analytic first derivative (one order cheaper
    // than differencing the map twice). Shift the stencil inward at edges.
    const int outer = j;  // differentiate d_(i) along direction j when mixed
    const DerivFn& inner = (i == 0) ? du_ : dv_;
    const double x = outer == 0 ? u : v;
    const double h = num::step1(x);
    const double lo = outer == 0 ? domain_.u0 : domain_.v0;
    const double hi = outer == 0 ? domain_.u1 : domain_.v1;
    auto vec = [&](double s) {
      return outer == 0 ? inner(s, v) : inner(u, s);
    };
    if (x - h >= lo && x + h <= hi) {
      const AmbientVector p = vec(x + h), m = vec(x - h);
      return {base, (p.dt - m.dt) / (2.0 * h), (p.dx - m.dx) / (2.0 * h),
              (p.dy - m.dy) / (2.0 * h)};
    }
    const double sgn = (x - h < lo) ? 1.0 : -1.0;
    const AmbientVector p0 = vec(x), p1 = vec(x + sgn * h),
                        p2 = vec(x + 2.0 * sgn * h);
    return {base, sgn * (-3.0 * p0.dt + 4.0 * p1.dt - p2.dt) / (2.0 * h),
            sgn * (-3.0 * p0.dx + 4.0 * p1.dx - p2.dx) / (2.0 * h),
            sgn * (-3.0 * p0.dy + 4.0 * p1.dy - p2.dy) / (2.0 * h)};
  }

  // Pure map differences.
  if (i == j) {
    const double x = i == 0 ? u : v;
    const double h = num::step2(x);
    auto point = [&](double s) { return i == 0 ? eval(s, v) : eval(u, s); };
    const AmbientPoint p = point(x + h), m = point(x - h), c = point(x);
    const double hh = h * h;
    return {base, (p.t - 2.0 * c.t + m.t) / hh, (p.x - 2.0 * c.x + m.x) / hh,
            (p.y - 2.0 * c.y + m.y) / hh};
  }
  const double hu = num::step2(u), hv = num::step2(v);
  const AmbientPoint pp = eval(u + hu, v + hv), pm = eval(u + hu, v - hv),
                     mp = eval(u - hu, v + hv), mm = eval(u - hu, v - hv);
  const double d = 4.0 * hu * hv;
  return {base, (pp.t - pm.t - mp.t + mm.t) / d, (pp.x - pm.x - mp.x + mm.x) / d,
          (pp.y - pm.y - mp.y + mm.y) / d};
}

}  // namespace casurf
