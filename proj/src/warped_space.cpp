#include "casurf/warped_space.hpp"

#include <cmath>

#include "casurf/numerics.hpp"

namespace casurf {

void WarpedSpace::require_same_base(const AmbientVector& a,
                                    const AmbientVector& b) const {
  if (!(a.base == b.base)) {
    throw BaseMismatch("vectors live at different base points");
  }
}

double WarpedSpace::metric(const AmbientVector& a, const AmbientVector& b) const {
  require_same_base(a, b);
  const double f = warping_.value(a.base.t);
  return a.dt * b.dt + f * f * (a.dx * b.dx + a.dy * b.dy);
}

double WarpedSpace::norm(const AmbientVector& a) const {
  return std::sqrt(metric(a, a));
}

AmbientVector WarpedSpace::warped_cross(const AmbientVector& a,
                                        const AmbientVector& b) const {
  require_same_base(a, b);
  const double f = warping_.value(a.base.t);
  return {a.base, f * f * (a.dx * b.dy - a.dy * b.dx),
          a.dy * b.dt - a.dt * b.dy, a.dt * b.dx - a.dx * b.dt};
}

AmbientVector WarpedSpace::christoffel(const AmbientVector& a,
                                       const AmbientVector& b) const {
  require_same_base(a, b);
  const double t = a.base.t;
  const double f = warping_.value(t);
  const double fp = warping_.deriv(t);
  const double lf = fp / f;
  return {a.base,
          -f * fp * (a.dx * b.dx + a.dy * b.dy),
          lf * (a.dt * b.dx + a.dx * b.dt),
          lf * (a.dt * b.dy + a.dy * b.dt)};
}

AmbientVector WarpedSpace::covariant_derivative(
    const AmbientVectorField& field, const AmbientVector& direction) const {
  const AmbientPoint p = direction.base;
  const double pscale =
      std::max({std::abs(p.t), std::abs(p.x), std::abs(p.y), 1.0});
  const double dscale = std::max(
      {std::abs(direction.dt), std::abs(direction.dx), std::abs(direction.dy),
       1.0});
  const double h = num::step1(pscale) / dscale;

  auto shifted = [&](double s) {
    return AmbientPoint{p.t + s * direction.dt, p.x + s * direction.dx,
                        p.y + s * direction.dy};
  };
  const AmbientVector fp = field(shifted(h));
  const AmbientVector fm = field(shifted(-h));
  const AmbientVector partial{p, (fp.dt - fm.dt) / (2.0 * h),
                              (fp.dx - fm.dx) / (2.0 * h),
                              (fp.dy - fm.dy) / (2.0 * h)};

  AmbientVector value = field(p);
  value.base = p;  // fields must report the queried base; normalize anyway
  return partial + christoffel(direction, value);
}

AmbientVector WarpedSpace::curvature(const AmbientVector& u,
                                     const AmbientVector& v,
                                     const AmbientVector& w) const {
  require_same_base(u, v);
  require_same_base(v, w);
  const double t = u.base.t;
  const double f = warping_.value(t);
  const double fp = warping_.deriv(t);
  const double fpp = warping_.deriv2(t);
  const double c_fiber = -(fp * fp) / (f * f);
  const double c_mixed = fpp / f;

  // Horizontal (fiber) parts and axis components.
  const double ut = u.dt, vt = v.dt, wt = w.dt;
  auto gh = [&](const AmbientVector& a, const AmbientVector& b) {
    return f * f * (a.dx * b.dx + a.dy * b.dy);
  };

  // Fiber block: R(u_h, v_h)w_h = c_fiber (g(v_h,w_h) u_h - g(u_h,w_h) v_h).
  const double guw = gh(u, w), gvw = gh(v, w);
  double rx = c_fiber * (gvw * u.dx - guw * v.dx);
  double ry = c_fiber * (gvw * u.dy - guw * v.dy);

  // Mixed blocks: R(u_h, d_t)v_h = c_mixed g(u_h, v_h) d_t and
  // R(u_h, d_t)d_t = -c_mixed u_h; R(u_h, v_h)d_t = 0.
  double rt = c_mixed * (vt * guw - ut * gvw);
  const double s = c_mixed * wt;
  rx += s * (ut * v.dx - vt * u.dx);
  ry += s * (ut * v.dy - vt * u.dy);

  return {u.base, rt, rx, ry};
}

AmbientVector WarpedSpace::curvature_from_christoffel(
    const AmbientVector& u, const AmbientVector& v,
    const AmbientVector& w) const {
  require_same_base(u, v);
  require_same_base(v, w);
  const double t = u.base.t;
  const double f = warping_.value(t);
  const double fp = warping_.deriv(t);
  const double fpp = warping_.deriv2(t);
  const double lf = fp / f;

  // Index order (t, x, y) = (0, 1, 2).
  double G[3][3][3] = {};
  G[0][1][1] = G[0][2][2] = -f * fp;
  G[1][0][1] = G[1][1][0] = lf;
  G[2][0][2] = G[2][2][0] = lf;

  // Only t-derivatives are nonzero; the symbols depend on t alone.
  double dG[3][3][3] = {};
  dG[0][1][1] = dG[0][2][2] = -(fp * fp + f * fpp);
  dG[1][0][1] = dG[1][1][0] = fpp / f - lf * lf;
  dG[2][0][2] = dG[2][2][0] = fpp / f - lf * lf;

  const double uc[3] = {u.dt, u.dx, u.dy};
  const double vc[3] = {v.dt, v.dx, v.dy};
  const double wc[3] = {w.dt, w.dx, w.dy};

  double out[3] = {};
  for (int l = 0; l < 3; ++l) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
          double r = 0.0;
          if (i == 0) r += dG[l][j][k];
          if (j == 0) r -= dG[l][i][k];
          for (int m = 0; m < 3; ++m) {
            r += G[l][i][m] * G[m][j][k] - G[l][j][m] * G[m][i][k];
          }
          out[l] += r * uc[i] * vc[j] * wc[k];
        }
      }
    }
  }
  return {u.base, out[0], out[1], out[2]};
}

double WarpedSpace::sectional_curvature(const AmbientVector& a,
                                        const AmbientVector& b) const {
  const double gaa = metric(a, a);
  const double gbb = metric(b, b);
  const double gab = metric(a, b);
  const double den = gaa * gbb - gab * gab;
  if (!(den > 1e-12 * std::max(gaa * gbb, 1e-300))) {
    throw DegeneratePlane("sectional curvature of a degenerate plane");
  }
  return metric(curvature(a, b, b), a) / den;
}

}  // namespace casurf
