#include <cmath>

#include "casurf/generators.hpp"
#include "casurf/surface.hpp"
#include "doctest.h"

using namespace casurf;

namespace {

GeneratorSpec base_spec(Family fam, const char* warp, double theta_deg) {
  GeneratorSpec spec;
  spec.family = fam;
  spec.warping = WarpingFunction::from_registry(warp);
  spec.theta = theta_deg * M_PI / 180.0;
  return spec;
}

}  // namespace

TEST_SUITE("generators") {
  TEST_CASE("ruled surfaces have unit-speed rulings") {
    auto spec = base_spec(Family::TypeI, "exp", 60.0);
    spec.alpha = ProfileFunction::expression("1 + 0.2*sin(v)");
    const Immersion im = make_surface(spec);
    const auto& sp = im.space();
    const auto rect = im.domain();
    for (double s : {0.1, 0.5, 0.9}) {
      const double u = rect.u0 + s * (rect.u1 - rect.u0);
      const double v = rect.v0 + s * (rect.v1 - rect.v0);
      CHECK(sp.norm(im.d_u(u, v)) == doctest::Approx(1.0).epsilon(1e-12));
      const auto I = first_fundamental_form(im, u, v);
      CHECK(I(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(std::abs(I(0, 1)) < 1e-12);
    }
  }

  TEST_CASE("rotational profiles satisfy the slope law b'f = cos(theta)") {
    auto spec = base_spec(Family::Rotational, "exp", 50.0);
    const Immersion im = make_surface(spec);
    const auto rect = im.domain();
    const double h = 1e-6;
    for (double s : {0.2, 0.5, 0.8}) {
      const double u = rect.u0 + s * (rect.u1 - rect.u0);
      const double b_plus = im.at(u + h, 0.0).x;
      const double b_minus = im.at(u - h, 0.0).x;
      const double bp = (b_plus - b_minus) / (2.0 * h);
      const double f = im.space().warping().value(im.at(u, 0.0).t);
      CHECK(bp * f == doctest::Approx(std::cos(spec.theta)).epsilon(1e-8));
    }
  }

  TEST_CASE("a vanishing profile collapses the ruled family onto the "
            "rotational one") {
    auto ruled = base_spec(Family::TypeI, "power:0.5", 40.0);
    ruled.alpha = ProfileFunction::zero();
    auto rot = base_spec(Family::Rotational, "power:0.5", 40.0);
    const Immersion a = make_surface(ruled);
    const Immersion b = make_surface(rot);
    const auto rect = a.domain();
    CHECK(b.domain().u0 == doctest::Approx(rect.u0));
    for (double s : {0.0, 0.3, 0.7, 1.0}) {
      const double u = rect.u0 + s * (rect.u1 - rect.u0);
      const double v = rect.v0 + s * (rect.v1 - rect.v0);
      const auto pa = a.at(u, v), pb = b.at(u, v);
      CHECK(pa.t == doctest::Approx(pb.t).epsilon(1e-12));
      CHECK(pa.x == doctest::Approx(pb.x).epsilon(1e-12));
      CHECK(pa.y == doctest::Approx(pb.y).epsilon(1e-12));
    }
  }

  TEST_CASE("the right-angle rotational surface is the round cylinder") {
    auto spec = base_spec(Family::Rotational, "exp", 90.0);
    spec.b0 = 1.75;
    const Immersion im = make_surface(spec);
    const auto rect = im.domain();
    for (double s : {0.0, 0.5, 1.0}) {
      const double u = rect.u0 + s * (rect.u1 - rect.u0);
      const auto p = im.at(u, 0.8);
      CHECK(std::hypot(p.x, p.y) == doctest::Approx(1.75).epsilon(1e-14));
      CHECK(p.t == u);
    }
    const auto g = geometry_at(im, 0.5 * (rect.u0 + rect.u1), 0.4);
    CHECK(g.cos_theta == 0.0);
  }

  TEST_CASE("the right-angle ruled graph stays in the x = 0 wall") {
    auto spec = base_spec(Family::TypeII, "linear:1,1", 90.0);
    const Immersion im = make_surface(spec);
    const auto rect = im.domain();
    const auto p = im.at(0.5 * (rect.u0 + rect.u1), 0.7);
    CHECK(p.x == 0.0);  // exact: the slope coefficient is snapped to zero
  }

  TEST_CASE("power-law minimal surfaces") {
    CHECK(minimal_power_angle(1.0 / 3.0) == doctest::Approx(M_PI / 4.0));
    for (double m : {0.2, 0.5, 0.8}) {
      GeneratorSpec mspec;
      mspec.family = Family::MinimalPower;
      mspec.m = m;
      const MinimalSurface ms = make_minimal_power(mspec);
      CHECK(ms.theta ==
            doctest::Approx(std::acos(std::sqrt((1.0 - m) / (1.0 + m)))));
      const auto rect = ms.immersion.domain();
      for (double s : {0.25, 0.5, 0.75}) {
        const double u = rect.u0 + s * (rect.u1 - rect.u0);
        const auto g = geometry_at(ms.immersion, u, 0.5);
        CHECK(std::abs(g.mean_curvature) < 1e-10);
        CHECK(std::abs(g.theta - ms.theta) < 1e-12);
      }
    }
    GeneratorSpec bad;
    bad.family = Family::MinimalPower;
    bad.m = 1.0;
    CHECK_THROWS_AS(make_surface(bad), ConfigError);
    bad.m = -0.2;
    CHECK_THROWS_AS(make_surface(bad), ConfigError);
  }

  TEST_CASE("log-linear invariants of the fixed-curvature family") {
    auto spec = base_spec(Family::HarmonicExp, "exp", 55.0);
    const Immersion im = make_surface(spec);
    GeometryOptions opt;
    opt.canonicalize = true;
    const double cot = 1.0 / std::tan(spec.theta);
    const auto rect = im.domain();
    for (double s : {0.1, 0.5, 0.9}) {
      const double u = rect.u0 + s * (rect.u1 - rect.u0);
      const double v = rect.v0 + s * (rect.v1 - rect.v0);
      const auto g = geometry_at(im, u, v, opt);
      CHECK(g.signed_beta == doctest::Approx(-cot).epsilon(1e-10));
      CHECK(g.lambda ==
            doctest::Approx(-1.0 / std::cos(spec.theta)).epsilon(1e-10));
      CHECK(g.theta == doctest::Approx(spec.theta).epsilon(1e-12));
    }
  }

  TEST_CASE("degenerate requests are refused at construction") {
    // Zero profile at a right angle leaves no surface to sweep.
    auto flat = base_spec(Family::TypeI, "exp", 90.0);
    flat.alpha = ProfileFunction::zero();
    CHECK_THROWS_AS(make_surface(flat), RegularityError);

    // A rotational domain with a node on the axis is singular there.
    auto axis = base_spec(Family::Rotational, "exp", 60.0);
    const double su = std::sin(axis.theta);
    axis.domain = ParamRect{-0.5 / su, 0.5 / su, 0.0, 1.0};
    axis.grid = Grid{9, 8};
    CHECK_THROWS_AS(make_surface(axis), RegularityError);

    // Slices must sit inside the warping interval.
    auto slice = base_spec(Family::TypeIII, "power:0.5", 0.0);
    slice.t0 = -1.0;
    CHECK_THROWS_AS(make_surface(slice), DomainError);

    // The ruled families need an oblique angle.
    auto steep = base_spec(Family::TypeI, "exp", 135.0);
    CHECK_THROWS_AS(make_surface(steep), ConfigError);
    auto log_linear = base_spec(Family::HarmonicExp, "exp", 90.0);
    CHECK_THROWS_AS(make_surface(log_linear), ConfigError);
  }

  TEST_CASE("default base heights track the warping interval") {
    GeneratorSpec spec;
    spec.warping = WarpingFunction::from_registry("exp");
    CHECK(effective_base_t(spec) == 0.0);
    spec.warping = WarpingFunction::from_registry("linear:1,1");
    CHECK(effective_base_t(spec) == doctest::Approx(0.0));
    spec.warping = WarpingFunction::from_registry("power:0.5");
    CHECK(effective_base_t(spec) == doctest::Approx(1.0));
    spec.base_t = 3.25;
    CHECK(effective_base_t(spec) == 3.25);
  }
}
