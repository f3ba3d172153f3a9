#include "casurf/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "casurf/numerics.hpp"

namespace casurf {

namespace {

// Step sizes for differencing fields derived from the immersion. When the
// immersion's own derivatives are finite differences the fields carry noise,
// so the outer step has to widen.
double step_first(const Immersion& im, double x) {
  return im.mode() == DerivativeMode::Analytic ? num::step1(x)
                                               : num::step_noisy(x);
}
double step_second(const Immersion& im, double x) {
  return im.mode() == DerivativeMode::Analytic ? num::step2(x)
                                               : num::step_noisy(x);
}

void require_room(const ParamRect& r, double u, double v, double mu, double mv) {
  if (u - mu < r.u0 || u + mu > r.u1 || v - mv < r.v0 || v + mv > r.v1) {
    std::ostringstream os;
    os << "stencil at (" << u << ", " << v << ") needs a margin of (" << mu
       << ", " << mv << ") inside the parameter rectangle";
    throw DomainError(os.str());
  }
}

Eigen::Vector2d solve_sym2(const Eigen::Matrix2d& m, const Eigen::Vector2d& r) {
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return {(m(1, 1) * r(0) - m(0, 1) * r(1)) / det,
          (m(0, 0) * r(1) - m(1, 0) * r(0)) / det};
}

Eigen::Matrix2d inv_sym2(const Eigen::Matrix2d& m) {
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Eigen::Matrix2d out;
  out << m(1, 1) / det, -m(0, 1) / det, -m(1, 0) / det, m(0, 0) / det;
  return out;
}

struct Jet1 {
  AmbientVector iu, iv;
  Eigen::Matrix2d I;
};

Jet1 jet1(const Immersion& im, double u, double v) {
  Jet1 j;
  j.iu = im.d_u(u, v);
  j.iv = im.d_v(u, v);
  const WarpedSpace& sp = im.space();
  const double e = sp.metric(j.iu, j.iu);
  const double f = sp.metric(j.iu, j.iv);
  const double g = sp.metric(j.iv, j.iv);
  j.I << e, f, f, g;
  return j;
}

AmbientVector raw_unit_normal(const Immersion& im, const Jet1& j,
                              double regularity_tol) {
  const WarpedSpace& sp = im.space();
  const AmbientVector cross = sp.warped_cross(j.iu, j.iv);
  const double cn = sp.norm(cross);
  const double scale = sp.norm(j.iu) * sp.norm(j.iv);
  if (!(cn > regularity_tol * std::max(scale, 1e-300))) {
    throw DegenerateImmersion(
        "coordinate derivatives are linearly dependent; the patch is not an "
        "immersion here");
  }
  return (1.0 / cn) * cross;
}

// Shape operator matrix without the frame machinery, raw orientation. Used
// as the inner evaluation of finite-difference loops.
Eigen::Matrix2d shape_matrix_raw(const Immersion& im, double u, double v) {
  const Jet1 j = jet1(im, u, v);
  const WarpedSpace& sp = im.space();
  const AmbientVector n = raw_unit_normal(im, j, 1e-12);
  Eigen::Matrix2d II;
  for (int a = 0; a < 2; ++a) {
    for (int b = a; b < 2; ++b) {
      const AmbientVector d = im.d2(u, v, a, b);
      const AmbientVector corr =
          sp.christoffel(a == 0 ? j.iu : j.iv, b == 0 ? j.iu : j.iv);
      II(a, b) = II(b, a) = sp.metric(d + corr, n);
    }
  }
  return inv_sym2(j.I) * II;
}

double metric_norm(const Eigen::Matrix2d& I, const Eigen::Vector2d& c) {
  return std::sqrt(std::max(0.0, c.dot(I * c)));
}

}  // namespace

SurfaceGeometry geometry_at(const Immersion& im, double u, double v,
                            const GeometryOptions& opt) {
  SurfaceGeometry g;
  g.point = im.at(u, v);
  const WarpedSpace& sp = im.space();

  const Jet1 j = jet1(im, u, v);
  g.iu = j.iu;
  g.iv = j.iv;
  g.first_form = j.I;

  g.normal = raw_unit_normal(im, j, opt.regularity_tol);
  g.cos_theta = std::clamp(g.normal.dt, -1.0, 1.0);
  if (opt.canonicalize && g.cos_theta < 0.0) {
    g.normal = -g.normal;
    g.cos_theta = -g.cos_theta;
  }
  g.theta = std::acos(g.cos_theta);

  const AmbientVector dt = AmbientVector::d_t(g.point);
  g.T = dt - g.cos_theta * g.normal;
  const double tn = sp.norm(g.T);
  if (tn > opt.frame_tol) {
    g.e1 = (1.0 / tn) * g.T;
    g.frame_adapted = true;
  } else {
    g.e1 = (1.0 / sp.norm(g.iu)) * g.iu;
    g.frame_adapted = false;
  }
  g.e2 = sp.warped_cross(g.normal, g.e1);

  const auto coords = [&](const AmbientVector& w) {
    return solve_sym2(g.first_form, Eigen::Vector2d(sp.metric(w, g.iu),
                                                    sp.metric(w, g.iv)));
  };
  g.T_coords = coords(g.T);
  g.e1_coords = coords(g.e1);
  g.e2_coords = coords(g.e2);

  for (int a = 0; a < 2; ++a) {
    for (int b = a; b < 2; ++b) {
      const AmbientVector d = im.d2(u, v, a, b);
      const AmbientVector corr =
          sp.christoffel(a == 0 ? g.iu : g.iv, b == 0 ? g.iu : g.iv);
      g.second_form(a, b) = g.second_form(b, a) = sp.metric(d + corr, g.normal);
    }
  }
  g.shape = inv_sym2(g.first_form) * g.second_form;
  g.mean_curvature = 0.5 * g.shape.trace();
  g.det_shape = g.shape.determinant();
  // (tr/2)^2 - det rewritten to avoid cancellation at double eigenvalues.
  const double half_gap = 0.5 * (g.shape(0, 0) - g.shape(1, 1));
  const double disc =
      std::sqrt(std::max(0.0, half_gap * half_gap + g.shape(0, 1) * g.shape(1, 0)));
  g.k1 = g.mean_curvature - disc;
  g.k2 = g.mean_curvature + disc;

  const double t = g.point.t;
  g.log_f_prime = sp.warping().log_deriv(t);
  g.log_f_second = sp.warping().log_deriv2(t);
  const double sin2 = std::max(0.0, 1.0 - g.cos_theta * g.cos_theta);
  g.gauss_curvature =
      g.det_shape - g.log_f_prime * g.log_f_prime - g.log_f_second * sin2;

  g.signed_beta = sp.metric(g.iv, g.e2);
  g.lambda = (g.shape * g.e2_coords).dot(g.first_form * g.e2_coords);
  return g;
}

Eigen::Matrix2d first_fundamental_form(const Immersion& im, double u, double v) {
  return jet1(im, u, v).I;
}

AmbientVector unit_normal(const Immersion& im, double u, double v) {
  return raw_unit_normal(im, jet1(im, u, v), 1e-12);
}

double normal_angle(const Immersion& im, double u, double v) {
  return std::acos(std::clamp(unit_normal(im, u, v).dt, -1.0, 1.0));
}

Eigen::Matrix2d shape_operator(const Immersion& im, double u, double v,
                               const GeometryOptions& opt) {
  return geometry_at(im, u, v, opt).shape;
}

AdaptedFrame adapted_frame(const Immersion& im, double u, double v,
                           const GeometryOptions& opt) {
  const SurfaceGeometry g = geometry_at(im, u, v, opt);
  if (!g.frame_adapted) {
    throw AngleDegenerate(
        "the normal is parallel to the slice direction; no adapted tangent "
        "frame exists here");
  }
  return {g.e1, g.e2, g.normal, g.e1_coords, g.e2_coords};
}

std::array<Eigen::Matrix2d, 2> induced_christoffels(const Immersion& im,
                                                    double u, double v) {
  const Jet1 j = jet1(im, u, v);
  const WarpedSpace& sp = im.space();
  std::array<Eigen::Matrix2d, 2> out;
  for (int a = 0; a < 2; ++a) {
    for (int b = a; b < 2; ++b) {
      const AmbientVector d = im.d2(u, v, a, b);
      const AmbientVector corr =
          sp.christoffel(a == 0 ? j.iu : j.iv, b == 0 ? j.iu : j.iv);
      const AmbientVector full = d + corr;
      const Eigen::Vector2d c = solve_sym2(
          j.I, Eigen::Vector2d(sp.metric(full, j.iu), sp.metric(full, j.iv)));
      out[0](a, b) = out[0](b, a) = c(0);
      out[1](a, b) = out[1](b, a) = c(1);
    }
  }
  return out;
}

std::array<Eigen::Matrix2d, 2> induced_christoffels_fd(const Immersion& im,
                                                       double u, double v) {
  const auto metric_at = [&](double a, double b) {
    const Jet1 j = jet1(im, a, b);
    return j.I;
  };

  const double hu = step_first(im, u), hv = step_first(im, v);
  require_room(im.domain(), u, v, hu, hv);

  const Eigen::Matrix2d g0 = metric_at(u, v);
  const Eigen::Matrix2d dgu =
      (metric_at(u + hu, v) - metric_at(u - hu, v)) / (2.0 * hu);
  const Eigen::Matrix2d dgv =
      (metric_at(u, v + hv) - metric_at(u, v - hv)) / (2.0 * hv);
  const Eigen::Matrix2d ginv = inv_sym2(g0);

  const auto dg = [&](int d, int a, int b) {
    return d == 0 ? dgu(a, b) : dgv(a, b);
  };

  std::array<Eigen::Matrix2d, 2> out;
  for (int k = 0; k < 2; ++k) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        double s = 0.0;
        for (int l = 0; l < 2; ++l) {
          s += ginv(k, l) * (dg(a, b, l) + dg(b, a, l) - dg(l, a, b));
        }
        out[k](a, b) = 0.5 * s;
      }
    }
  }
  return out;
}

double gauss_curvature_pointwise(const Immersion& im, double u, double v) {
  return geometry_at(im, u, v).gauss_curvature;
}

double gauss_curvature_metric_fd(const Immersion& im, double u, double v) {
  const WarpedSpace& sp = im.space();
  const auto E = [&](double a, double b) {
    const AmbientVector w = im.d_u(a, b);
    return sp.metric(w, w);
  };
  const auto F = [&](double a, double b) {
    return sp.metric(im.d_u(a, b), im.d_v(a, b));
  };
  const auto G = [&](double a, double b) {
    const AmbientVector w = im.d_v(a, b);
    return sp.metric(w, w);
  };

  const double h1u = step_first(im, u), h1v = step_first(im, v);
  const double h2u = step_second(im, u), h2v = step_second(im, v);
  require_room(im.domain(), u, v, std::max(h1u, h2u), std::max(h1v, h2v));

  const double e = E(u, v), f = F(u, v), g = G(u, v);
  const double Eu = num::dcentral([&](double a) { return E(a, v); }, u, h1u);
  const double Ev = num::dcentral([&](double b) { return E(u, b); }, v, h1v);
  const double Fu = num::dcentral([&](double a) { return F(a, v); }, u, h1u);
  const double Fv = num::dcentral([&](double b) { return F(u, b); }, v, h1v);
  const double Gu = num::dcentral([&](double a) { return G(a, v); }, u, h1u);
  const double Gv = num::dcentral([&](double b) { return G(u, b); }, v, h1v);
  const double Evv = num::d2central([&](double b) { return E(u, b); }, v, h2v);
  const double Guu = num::d2central([&](double a) { return G(a, v); }, u, h2u);
  const double Fuv = num::dmixed(F, u, v, h2u, h2v);

  Eigen::Matrix3d m1, m2;
  m1 << -0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev,  //
      Fv - 0.5 * Gu, e, f,                                      //
      0.5 * Gv, f, g;
  m2 << 0.0, 0.5 * Ev, 0.5 * Gu,  //
      0.5 * Ev, e, f,             //
      0.5 * Gu, f, g;
  const double den = e * g - f * f;
  return (m1.determinant() - m2.determinant()) / (den * den);
}

double gauss_curvature_connection_fd(const Immersion& im, double u, double v) {
  // Outer step for differentiating the finite-differenced Christoffels. With
  // analytic jets underneath their noise floor is ~eps/step1, so eps^(1/4)
  // keeps the outer truncation term out of the tolerance budget; sampled
  // jets are far noisier and need the conservative eps^(1/6).
  const bool analytic = im.mode() == DerivativeMode::Analytic;
  const double hu = analytic ? num::step2(u) : num::step_noisy(u);
  const double hv = analytic ? num::step2(v) : num::step_noisy(v);
  const double inner_u = step_first(im, u + hu), inner_v = step_first(im, v + hv);
  require_room(im.domain(), u, v, hu + 2.0 * inner_u, hv + 2.0 * inner_v);

  const auto gam = [&](double a, double b) {
    return induced_christoffels_fd(im, a, b);
  };
  const auto gp = gam(u + hu, v), gm = gam(u - hu, v);
  const auto hp = gam(u, v + hv), hm = gam(u, v - hv);
  const auto g0 = gam(u, v);

  // d_d Gamma^k_{ab}
  const auto dgam = [&](int d, int k, int a, int b) {
    return d == 0 ? (gp[k](a, b) - gm[k](a, b)) / (2.0 * hu)
                  : (hp[k](a, b) - hm[k](a, b)) / (2.0 * hv);
  };

  // R^l_{uvv} with R^l_{ijk} = d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk
  //                            - G^l_jm G^m_ik, (i, j, k) = (u, v, v).
  double r[2];
  for (int l = 0; l < 2; ++l) {
    double s = dgam(0, l, 1, 1) - dgam(1, l, 0, 1);
    for (int m = 0; m < 2; ++m) {
      s += g0[l](0, m) * g0[m](1, 1) - g0[l](1, m) * g0[m](0, 1);
    }
    r[l] = s;
  }

  const Eigen::Matrix2d I = first_fundamental_form(im, u, v);
  const double det = I(0, 0) * I(1, 1) - I(0, 1) * I(1, 0);
  return (I(0, 0) * r[0] + I(0, 1) * r[1]) / det;
}

Eigen::Vector2d gauss_equation_residual(const Immersion& im, double u, double v) {
  const SurfaceGeometry g = geometry_at(im, u, v);
  const double kb = gauss_curvature_metric_fd(im, u, v);

  const Eigen::Matrix2d& I = g.first_form;
  const Eigen::Matrix2d& A = g.shape;
  const Eigen::Vector2d T = g.T_coords;
  const double lf1 = g.log_f_prime, lf2 = g.log_f_second;

  const auto pair = [&](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return a.dot(I * b);
  };

  const Eigen::Vector2d X(1.0, 0.0), Y(0.0, 1.0);
  const Eigen::Vector2d AX = A * X, AY = A * Y;

  Eigen::Vector2d out;
  for (int zi = 0; zi < 2; ++zi) {
    const Eigen::Vector2d Z = zi == 0 ? X : Y;
    const Eigen::Vector2d lhs = kb * (pair(Y, Z) * X - pair(X, Z) * Y);
    const Eigen::Vector2d rhs =
        pair(AY, Z) * AX - pair(AX, Z) * AY -
        lf1 * lf1 * (pair(Y, Z) * X - pair(X, Z) * Y) -
        lf2 * (pair(Y, T) * pair(Z, T) * X - pair(X, T) * pair(Z, T) * Y -
               pair(Y, T) * pair(X, Z) * T + pair(X, T) * pair(Y, Z) * T);
    const double den =
        std::max({1.0, metric_norm(I, lhs), metric_norm(I, rhs)});
    out(zi) = metric_norm(I, lhs - rhs) / den;
  }
  return out;
}

Eigen::Vector2d codazzi_equation_residual(const Immersion& im, double u,
                                          double v) {
  const double hu = step_first(im, u), hv = step_first(im, v);
  require_room(im.domain(), u, v, hu, hv);

  const SurfaceGeometry g = geometry_at(im, u, v);  // raw orientation
  const auto gam = induced_christoffels(im, u, v);

  const Eigen::Matrix2d dAu =
      (shape_matrix_raw(im, u + hu, v) - shape_matrix_raw(im, u - hu, v)) /
      (2.0 * hu);
  const Eigen::Matrix2d dAv =
      (shape_matrix_raw(im, u, v + hv) - shape_matrix_raw(im, u, v - hv)) /
      (2.0 * hv);
  const Eigen::Matrix2d& A = g.shape;

  // (grad_i A) applied to the coordinate vector e_j:
  //   d_i A^k_j + G^k_{i m} A^m_j - A^k_m G^m_{i j}.
  const auto nabla = [&](int i, int j) {
    const Eigen::Matrix2d& dA = i == 0 ? dAu : dAv;
    Eigen::Vector2d out;
    for (int k = 0; k < 2; ++k) {
      double s = dA(k, j);
      for (int m = 0; m < 2; ++m) {
        s += gam[k](i, m) * A(m, j) - A(k, m) * gam[m](i, j);
      }
      out(k) = s;
    }
    return out;
  };

  const Eigen::Vector2d lhs = nabla(0, 1) - nabla(1, 0);

  const Eigen::Matrix2d& I = g.first_form;
  const Eigen::Vector2d gT = I * g.T_coords;  // (g(d_u, T), g(d_v, T))
  const Eigen::Vector2d rhs =
      g.cos_theta * g.log_f_second *
      (gT(1) * Eigen::Vector2d(1.0, 0.0) - gT(0) * Eigen::Vector2d(0.0, 1.0));

  const double den = std::max({1.0, metric_norm(I, lhs), metric_norm(I, rhs)});
  const Eigen::Vector2d diff = lhs - rhs;

  // Collapse against each coordinate direction, each normalized to unit
  // length, so both entries small forces the whole vector small.
  Eigen::Vector2d out;
  const Eigen::Vector2d paired = I * diff;
  out(0) = std::abs(paired(0)) / (std::sqrt(I(0, 0)) * den);
  out(1) = std::abs(paired(1)) / (std::sqrt(I(1, 1)) * den);
  return out;
}

std::pair<double, double> laplacian_height(const Immersion& im, double u,
                                           double v) {
  const double hu = step_first(im, u), hv = step_first(im, v);
  require_room(im.domain(), u, v, hu, hv);

  // Divergence-form Laplace-Beltrami of the height t(u, v):
  //   (P_u + Q_v) / sqrt(det I), P = (G t_u - F t_v) / sqrt(det I),
  //                              Q = (E t_v - F t_u) / sqrt(det I).
  const auto flux = [&](double a, double b, int which) {
    const Jet1 j = jet1(im, a, b);
    const double e = j.I(0, 0), f = j.I(0, 1), g = j.I(1, 1);
    const double root = std::sqrt(e * g - f * f);
    const double tu = j.iu.dt, tv = j.iv.dt;
    return which == 0 ? (g * tu - f * tv) / root : (e * tv - f * tu) / root;
  };

  const double pu =
      num::dcentral([&](double a) { return flux(a, v, 0); }, u, hu);
  const double qv =
      num::dcentral([&](double b) { return flux(u, b, 1); }, v, hv);

  const SurfaceGeometry g = geometry_at(im, u, v);
  const Eigen::Matrix2d& I = g.first_form;
  const double root = std::sqrt(I(0, 0) * I(1, 1) - I(0, 1) * I(1, 0));
  const double lhs = (pu + qv) / root;
  const double rhs = 2.0 * g.cos_theta * g.mean_curvature +
                     g.log_f_prime * (1.0 + g.cos_theta * g.cos_theta);
  return {lhs, rhs};
}

std::pair<double, double> residual_margin(const Immersion& im, double u,
                                          double v) {
  const double mu = 2.0 * num::step_noisy(u) + 2.0 * step_second(im, u);
  const double mv = 2.0 * num::step_noisy(v) + 2.0 * step_second(im, v);
  return {mu, mv};
}

ResidualSet residuals_at(const Immersion& im, double u, double v) {
  ResidualSet r;
  const Eigen::Vector2d ga = gauss_equation_residual(im, u, v);
  const Eigen::Vector2d co = codazzi_equation_residual(im, u, v);
  r.gauss = std::max(std::abs(ga(0)), std::abs(ga(1)));
  r.codazzi = std::max(std::abs(co(0)), std::abs(co(1)));
  const auto [lhs, rhs] = laplacian_height(im, u, v);
  r.laplacian = std::abs(lhs - rhs) /
                std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return r;
}

HalfSpacePoint to_half_space(const WarpedSpace& space, const AmbientPoint& p) {
  if (!space.warping().is_exp()) {
    throw ModelMismatch(
        "the half-space picture is isometric only for the exponential "
        "warping");
  }
  return {p.x, p.y, std::exp(-p.t)};
}

GridGeometry sweep_grid(const Immersion& im, const Grid& grid,
                        const GeometryOptions& opt, bool with_residuals) {
  return sweep_grid(im, im.domain(), grid, opt, with_residuals);
}

GridGeometry sweep_grid(const Immersion& im, const ParamRect& rect,
                        const Grid& grid, const GeometryOptions& opt,
                        bool with_residuals) {
  GridGeometry out;
  out.rect = rect;
  out.grid = grid;
  out.points.resize(static_cast<size_t>(grid.nu) * grid.nv);
  if (with_residuals) {
    out.residuals.resize(out.points.size());
  }
  const ParamRect& dom = im.domain();
  parallel_rows(grid.nu, [&](int i) {
    const double u = grid.u(rect, i);
    for (int jj = 0; jj < grid.nv; ++jj) {
      const double v = grid.v(rect, jj);
      const size_t idx = static_cast<size_t>(i) * grid.nv + jj;
      out.points[idx] = geometry_at(im, u, v, opt);
      if (with_residuals) {
        const auto [mu, mv] = residual_margin(im, u, v);
        const bool fits = u - mu >= dom.u0 && u + mu <= dom.u1 &&
                          v - mv >= dom.v0 && v + mv <= dom.v1;
        if (fits) {
          out.residuals[idx] = residuals_at(im, u, v);
        } else {
          const double nan = std::numeric_limits<double>::quiet_NaN();
          out.residuals[idx] = {nan, nan, nan};
        }
      }
    }
  });
  return out;
}

}  // namespace casurf
