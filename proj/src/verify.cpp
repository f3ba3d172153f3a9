#include "casurf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "casurf/errors.hpp"
#include "casurf/numerics.hpp"
#include "casurf/surface.hpp"

namespace casurf {

namespace {

struct Ctx {
  const Immersion& im;
  Grid grid;
  SuiteOptions opt;
  bool analytic;

  // Closed-form laws are limited only by roundoff with analytic jets; with
  // numerical jets they inherit the differentiation error.
  double tol_exact() const { return analytic ? opt.tol_exact : opt.tol_fd; }
};

GeometryOptions raw_opts() { return {}; }

double metric_norm(const Eigen::Matrix2d& I, const Eigen::Vector2d& w) {
  return std::sqrt(std::max(0.0, w.dot(I * w)));
}

int stride_for(int n, int target) { return std::max(1, n / target); }

CheckRecord record(const Ctx& ctx, std::string name, std::string law,
                   double residual, double tol) {
  CheckRecord r;
  r.name = std::move(name);
  r.law = std::move(law);
  r.nu = ctx.grid.nu;
  r.nv = ctx.grid.nv;
  r.max_residual = residual;
  r.tolerance = tol;
  r.pass = residual <= tol;
  return r;
}

double mean_theta(const GridGeometry& gg) {
  double s = 0.0;
  for (const auto& p : gg.points) s += p.theta;
  return s / static_cast<double>(gg.points.size());
}

void check_constant_angle(const Ctx& ctx, std::vector<CheckRecord>& out) {
  const GridGeometry gg = sweep_grid(ctx.im, ctx.grid, raw_opts(), false);
  std::vector<double> th;
  th.reserve(gg.points.size());
  for (const auto& p : gg.points) th.push_back(p.theta);
  const num::Stats st = num::stats(th);
  CheckRecord r =
      record(ctx, "constant_angle",
             "the angle between the surface normal and the slice direction "
             "has zero spread across the grid",
             st.stddev, ctx.tol_exact());
  r.value = st.mean;
  out.push_back(std::move(r));
}

void check_principal_direction(const Ctx& ctx, std::vector<CheckRecord>& out) {
  const GridGeometry gg = sweep_grid(ctx.im, ctx.grid, raw_opts(), false);
  double worst = 0.0;
  for (const auto& p : gg.points) {
    const Eigen::Vector2d r =
        p.shape * p.T_coords + p.cos_theta * p.log_f_prime * p.T_coords;
    const double den = std::max(1.0, metric_norm(p.first_form, p.T_coords));
    worst = std::max(worst, metric_norm(p.first_form, r) / den);
  }
  out.push_back(record(ctx, "principal_direction",
                       "the tangential part of the slice direction is a "
                       "principal direction with curvature "
                       "-cos(theta) (log f)'",
                       worst, ctx.tol_exact()));
}

void check_frame_connection(const Ctx& ctx, std::vector<CheckRecord>& out) {
  const GridGeometry gg = sweep_grid(ctx.im, ctx.grid, raw_opts(), false);
  if (mean_theta(gg) < 1e-6) {
    throw ConfigError(
        "the frame connection law divides by sin(theta); it does not apply "
        "to slice-parallel surfaces");
  }
  const ParamRect& rect = gg.rect;
  const int su = stride_for(ctx.grid.nu, 16);
  const int sv = stride_for(ctx.grid.nv, 16);
  double worst = 0.0;
  std::size_t used = 0;
  for (int i = 0; i < ctx.grid.nu; i += su) {
    for (int j = 0; j < ctx.grid.nv; j += sv) {
      const double u = ctx.grid.u(rect, i), v = ctx.grid.v(rect, j);
      const double hu = ctx.analytic ? num::step1(u) : num::step_noisy(u);
      const double hv = ctx.analytic ? num::step1(v) : num::step_noisy(v);
      if (!rect.contains(u - hu, v - hv) || !rect.contains(u + hu, v + hv)) {
        continue;
      }
      const SurfaceGeometry& g0 = gg.at(i, j);
      const SurfaceGeometry gup = geometry_at(ctx.im, u + hu, v);
      const SurfaceGeometry gum = geometry_at(ctx.im, u - hu, v);
      const SurfaceGeometry gvp = geometry_at(ctx.im, u, v + hv);
      const SurfaceGeometry gvm = geometry_at(ctx.im, u, v - hv);
      if (!g0.frame_adapted || !gup.frame_adapted || !gum.frame_adapted ||
          !gvp.frame_adapted || !gvm.frame_adapted) {
        continue;
      }
      Eigen::Matrix2d dE1, dE2;  // dE(k, c) = d_c e^k
      dE1.col(0) = (gup.e1_coords - gum.e1_coords) / (2.0 * hu);
      dE1.col(1) = (gvp.e1_coords - gvm.e1_coords) / (2.0 * hv);
      dE2.col(0) = (gup.e2_coords - gum.e2_coords) / (2.0 * hu);
      dE2.col(1) = (gvp.e2_coords - gvm.e2_coords) / (2.0 * hv);
      const auto gamma = induced_christoffels(ctx.im, u, v);
      const auto nabla = [&gamma](const Eigen::Vector2d& X,
                                  const Eigen::Vector2d& W,
                                  const Eigen::Matrix2d& dW) {
        Eigen::Vector2d res;
        for (int k = 0; k < 2; ++k) {
          double s = dW.row(k).dot(X);
          for (int c = 0; c < 2; ++c) s += X(c) * gamma[k].row(c).dot(W);
          res(k) = s;
        }
        return res;
      };
      const double kappa =
          (g0.lambda * g0.cos_theta + g0.log_f_prime) / std::sin(g0.theta);
      const Eigen::Vector2d x1 = g0.e1_coords, x2 = g0.e2_coords;
      const Eigen::Matrix2d& I = g0.first_form;
      worst = std::max({worst, metric_norm(I, nabla(x1, x1, dE1)),
                        metric_norm(I, nabla(x1, x2, dE2)),
                        metric_norm(I, nabla(x2, x1, dE1) - kappa * x2),
                        metric_norm(I, nabla(x2, x2, dE2) + kappa * x1)});
      ++used;
    }
  }
  if (used == 0) {
    throw GridTooSmall("no interior nodes left for the frame stencils");
  }
  out.push_back(record(ctx, "frame_connection",
                       "the adapted frame is parallel along e1 and rotates "
                       "along e2 at the rate (lambda cos(theta) + "
                       "(log f)') / sin(theta)",
                       worst, ctx.opt.tol_fd));
}

void check_gauss_codazzi(const Ctx& ctx, std::vector<CheckRecord>& out) {
  const GridGeometry gg = sweep_grid(ctx.im, ctx.grid, raw_opts(), true);
  double gmax = 0.0, cmax = 0.0;
  std::size_t used = 0;
  for (const auto& r : gg.residuals) {
    if (std::isnan(r.gauss) || std::isnan(r.codazzi)) continue;
    gmax = std::max(gmax, r.gauss);
    cmax = std::max(cmax, r.codazzi);
    ++used;
  }
  if (used == 0) {
    throw GridTooSmall("no interior nodes left for the residual stencils");
  }
  out.push_back(record(ctx, "gauss_equation",
                       "the intrinsic curvature matches the shape operator "
                       "plus the ambient correction terms",
                       gmax, ctx.opt.tol_fd));
  out.push_back(record(ctx, "codazzi_equation",
                       "the skew part of the covariant derivative of the "
                       "shape operator matches its ambient source term",
                       cmax, ctx.opt.tol_fd));
}

void check_umbilical(const Ctx& ctx, std::vector<CheckRecord>& out) {
  const GridGeometry gg = sweep_grid(ctx.im, ctx.grid, raw_opts(), false);
  double spread = 0.0, hlaw = 0.0;
  for (const auto& p : gg.points) {
    const double scale = std::max({1.0, std::abs(p.k1), std::abs(p.k2)});
    spread = std::max(spread, std::abs(p.k2 - p.k1) / scale);
    const double h = p.mean_curvature + p.cos_theta * p.log_f_prime;
    hlaw = std::max(hlaw, std::abs(h) / std::max(1.0, std::abs(p.mean_curvature)));
  }
  out.push_back(record(ctx, "principal_spread",
                       "both principal curvatures coincide (totally umbilical)",
                       spread, ctx.tol_exact()));
  out.push_back(record(ctx, "umbilic_mean_curvature",
                       "the mean curvature equals -cos(theta) (log f)'",
                       hlaw, ctx.tol_exact()));
}

void check_flat_cone(const Ctx& ctx, std::vector<CheckRecord>& out) {
  const GridGeometry gg = sweep_grid(ctx.im, ctx.grid, raw_opts(), false);
  double worst = 0.0;
  for (const auto& p : gg.points) {
    worst = std::max(worst, std::abs(p.gauss_curvature));
  }
  out.push_back(record(ctx, "flat_cone",
                       "the intrinsic curvature vanishes identically",
                       worst, ctx.tol_exact()));
}

void check_minimal(const Ctx& ctx, std::vector<CheckRecord>& out) {
  const GridGeometry gg = sweep_grid(ctx.im, ctx.grid, raw_opts(), false);
  double worst = 0.0;
  for (const auto& p : gg.points) {
    worst = std::max(worst, std::abs(p.mean_curvature));
  }
  out.push_back(record(ctx, "minimal",
                       "the mean curvature vanishes identically", worst,
                       ctx.tol_exact()));
}

void check_harmonic(const Ctx& ctx, std::vector<CheckRecord>& out) {
  GeometryOptions gopt;
  gopt.canonicalize = true;  // fixes the sign conventions in the H law
  const GridGeometry gg = sweep_grid(ctx.im, ctx.grid, gopt, false);
  const double th = mean_theta(gg);
  const double cth = std::cos(th);
  if (std::abs(cth) < 1e-9 || std::abs(std::sin(th)) < 1e-9) {
    throw ConfigError("the harmonic laws need an angle strictly inside (0, pi/2)");
  }
  const double cot = cth / std::sin(th);
  const double h_target = -(1.0 + cth * cth) / (2.0 * cth);

  double r_h = 0.0, r_k = 0.0, r_cone = 0.0;
  for (const auto& p : gg.points) {
    r_h = std::max(r_h, std::abs(p.mean_curvature - h_target));
    r_k = std::max(r_k, std::abs(p.gauss_curvature));
    const HalfSpacePoint q = to_half_space(ctx.im.space(), p.point);
    r_cone = std::max(
        r_cone, std::abs(q.x * q.x + q.y * q.y - cot * cot * q.z * q.z));
  }
  CheckRecord rh = record(ctx, "harmonic_mean_curvature",
                          "the mean curvature is the constant "
                          "-(1 + cos^2(theta)) / (2 cos(theta))",
                          r_h, ctx.tol_exact());
  rh.value = h_target;
  out.push_back(std::move(rh));
  out.push_back(record(ctx, "harmonic_flatness",
                       "the intrinsic curvature vanishes identically", r_k,
                       ctx.tol_exact()));
  out.push_back(record(ctx, "half_space_cone",
                       "the half-space image lies on the cone "
                       "x^2 + y^2 = cot^2(theta) z^2",
                       r_cone, ctx.opt.tol_exact));

  // Laplacian of the height function, straight from the metric.
  const ParamRect& rect = gg.rect;
  double r_lap = 0.0;
  std::size_t used = 0;
  for (int i = 0; i < ctx.grid.nu; ++i) {
    for (int j = 0; j < ctx.grid.nv; ++j) {
      try {
        const auto [lhs, rhs] =
            laplacian_height(ctx.im, ctx.grid.u(rect, i), ctx.grid.v(rect, j));
        r_lap = std::max({r_lap, std::abs(lhs), std::abs(rhs)});
        ++used;
      } catch (const DomainError&) {
        continue;
      }
    }
  }
  if (used == 0) {
    throw GridTooSmall("no interior nodes left for the laplacian stencil");
  }
  out.push_back(record(ctx, "harmonic_laplacian",
                       "the height function is harmonic on the surface",
                       r_lap, ctx.opt.tol_fd));

  // The ambient here is hyperbolic: random tangent planes all carry
  // sectional curvature -1.
  num::SplitMix64 rng(ctx.opt.seed);
  const int su = stride_for(ctx.grid.nu, 8);
  const int sv = stride_for(ctx.grid.nv, 8);
  double r_sec = 0.0;
  for (int i = 0; i < ctx.grid.nu; i += su) {
    for (int j = 0; j < ctx.grid.nv; j += sv) {
      const SurfaceGeometry& p = gg.at(i, j);
      for (int attempt = 0; attempt < 8; ++attempt) {
        const AmbientVector a(p.point, rng.uniform(-1.0, 1.0),
                              rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        const AmbientVector b(p.point, rng.uniform(-1.0, 1.0),
                              rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        try {
          const double sec = ctx.im.space().sectional_curvature(a, b);
          r_sec = std::max(r_sec, std::abs(sec + 1.0));
          break;
        } catch (const DegeneratePlane&) {
          continue;
        }
      }
    }
  }
  out.push_back(record(ctx, "ambient_sectional",
                       "every ambient tangent plane has sectional "
                       "curvature -1",
                       r_sec, ctx.opt.tol_exact));
}

void check_compare_oracles(const Ctx& ctx, std::vector<CheckRecord>& out) {
  const ParamRect rect = ctx.im.domain();
  const int su = stride_for(ctx.grid.nu, 16);
  const int sv = stride_for(ctx.grid.nv, 16);
  double worst = 0.0;
  std::size_t used = 0;
  for (int i = 0; i < ctx.grid.nu; i += su) {
    for (int j = 0; j < ctx.grid.nv; j += sv) {
      const double u = ctx.grid.u(rect, i), v = ctx.grid.v(rect, j);
      try {
        const double k1 = gauss_curvature_pointwise(ctx.im, u, v);
        const double k2 = gauss_curvature_metric_fd(ctx.im, u, v);
        const double k3 = gauss_curvature_connection_fd(ctx.im, u, v);
        const double scale =
            std::max({1.0, std::abs(k1), std::abs(k2), std::abs(k3)});
        worst = std::max({worst, std::abs(k1 - k2) / scale,
                          std::abs(k1 - k3) / scale, std::abs(k2 - k3) / scale});
        ++used;
      } catch (const DomainError&) {
        continue;
      }
    }
  }
  if (used == 0) {
    throw GridTooSmall("no interior nodes left for the curvature stencils");
  }
  out.push_back(record(ctx, "compare_oracles",
                       "shape-operator, metric-determinant and "
                       "connection-derivative routes to the intrinsic "
                       "curvature agree pairwise",
                       worst, ctx.opt.tol_fd));
}

void check_roundtrip(const Ctx& ctx, const GeneratorSpec& spec,
                     std::vector<CheckRecord>& out) {
  const ClassificationReport cr = classify(ctx.im, ctx.grid);
  std::string expected;
  switch (spec.family) {
    case Family::TypeII: expected = "TYPE_II"; break;
    case Family::TypeIII: expected = "TYPE_III"; break;
    default: expected = "TYPE_I"; break;
  }
  double residual = cr.alpha_residual;
  double tol = 1e-4;
  if (expected == "TYPE_II") {
    residual = cr.umbilic_max;
    tol = ctx.analytic ? 1e-6 : 1e-4;
  } else if (expected == "TYPE_III") {
    residual = cr.theta_hat;
    tol = 1e-6;
  }
  CheckRecord r;
  r.name = "classification_roundtrip";
  r.law = "the generated surface classifies as " + expected + " (got " +
          cr.verdict + ")";
  r.nu = ctx.grid.nu;
  r.nv = ctx.grid.nv;
  r.max_residual = residual;
  r.tolerance = tol;
  r.pass = cr.verdict == expected;
  r.value = cr.theta_hat;
  out.push_back(std::move(r));
}

bool second_derivative_vanishes(const WarpingFunction& f, double lo, double hi) {
  double worst = 0.0;
  for (int s = 0; s <= 4; ++s) {
    const double t = lo + (hi - lo) * s / 4.0;
    worst = std::max(worst, std::abs(f.deriv2(t)) / std::max(1.0, f.value(t)));
  }
  return worst < 1e-10;
}

std::vector<std::string> applicable_suites(const GeneratorSpec& spec) {
  std::vector<std::string> s{"constant_angle", "principal_direction"};
  if (spec.family != Family::TypeIII) s.push_back("frame_connection");
  s.push_back("gauss_codazzi");
  switch (spec.family) {
    case Family::TypeII: {
      s.push_back("umbilical");
      const double bt = effective_base_t(spec);
      if (second_derivative_vanishes(spec.warping, bt + 0.25, bt + 1.25)) {
        s.push_back("flat_cone");
      }
      break;
    }
    case Family::MinimalPower:
      s.push_back("minimal");
      break;
    case Family::HarmonicExp:
      s.push_back("harmonic");
      break;
    case Family::TypeIII:
      if (std::abs(spec.warping.deriv(spec.t0)) < 1e-12) {
        s.push_back("minimal");
      }
      break;
    default:
      break;
  }
  s.push_back("compare_oracles");
  s.push_back("classification_roundtrip");
  return s;
}

std::vector<std::string> applicable_suites(const Immersion& im) {
  std::vector<std::string> s{"constant_angle", "principal_direction"};
  Grid probe;
  probe.nu = 8;
  probe.nv = 8;
  const GridGeometry gg = sweep_grid(im, probe, raw_opts(), false);
  if (mean_theta(gg) >= 1e-6) s.push_back("frame_connection");
  s.push_back("gauss_codazzi");
  s.push_back("compare_oracles");
  return s;
}

VerificationReport run_impl(std::string_view suite, const Immersion& im,
                            const GeneratorSpec* spec, std::string subject,
                            const SuiteOptions& opt) {
  Ctx ctx{im, opt.grid, opt, im.mode() == DerivativeMode::Analytic};
  VerificationReport rep;
  rep.suite = std::string(suite);
  rep.subject = std::move(subject);
  rep.mode = ctx.analytic ? "analytic" : "finite_difference";
  rep.nu = ctx.grid.nu;
  rep.nv = ctx.grid.nv;

  std::vector<std::string> list;
  if (suite == "all") {
    list = spec ? applicable_suites(*spec) : applicable_suites(im);
  } else {
    list.emplace_back(suite);
  }

  for (const std::string& name : list) {
    if (name == "constant_angle") {
      check_constant_angle(ctx, rep.checks);
    } else if (name == "principal_direction") {
      check_principal_direction(ctx, rep.checks);
    } else if (name == "frame_connection") {
      check_frame_connection(ctx, rep.checks);
    } else if (name == "gauss_codazzi") {
      check_gauss_codazzi(ctx, rep.checks);
    } else if (name == "umbilical") {
      check_umbilical(ctx, rep.checks);
    } else if (name == "flat_cone") {
      check_flat_cone(ctx, rep.checks);
    } else if (name == "minimal") {
      check_minimal(ctx, rep.checks);
    } else if (name == "harmonic") {
      check_harmonic(ctx, rep.checks);
    } else if (name == "compare_oracles") {
      check_compare_oracles(ctx, rep.checks);
    } else if (name == "classification_roundtrip") {
      if (!spec) {
        throw ConfigError(
            "classification_roundtrip needs a generated surface, not a bare "
            "immersion");
      }
      check_roundtrip(ctx, *spec, rep.checks);
    } else {
      std::ostringstream os;
      os << "unknown verification suite '" << name << "'";
      throw ConfigError(os.str());
    }
  }

  rep.pass = !rep.checks.empty();
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

}  // namespace

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["subject"] = subject;
  j["mode"] = mode;
  j["grid"] = {{"nu", nu}, {"nv", nv}};
  j["pass"] = pass;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["law"] = c.law;
    e["grid"] = {{"nu", c.nu}, {"nv", c.nv}};
    e["max_residual"] = c.max_residual;
    e["tolerance"] = c.tolerance;
    e["pass"] = c.pass;
    if (c.value) e["value"] = *c.value;
    arr.push_back(std::move(e));
  }
  j["checks"] = std::move(arr);
  return j;
}

VerificationReport run_suite(std::string_view suite, const GeneratorSpec& spec,
                             const SuiteOptions& opt) {
  const Immersion im = make_surface(spec);
  return run_impl(suite, im, &spec, std::string(family_name(spec.family)), opt);
}

VerificationReport run_suite(std::string_view suite, const Immersion& im,
                             const SuiteOptions& opt) {
  return run_impl(suite, im, nullptr, "immersion", opt);
}

}  // namespace casurf
