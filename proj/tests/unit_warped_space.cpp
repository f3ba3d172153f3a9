#include <cmath>

#include "casurf/numerics.hpp"
#include "casurf/warped_space.hpp"
#include "casurf/warping.hpp"
#include "doctest.h"

using namespace casurf;

namespace {

AmbientVector vec(AmbientPoint p, double a, double b, double c) {
  return AmbientVector(p, a, b, c);
}

}  // namespace

TEST_SUITE("warped_space") {
  TEST_CASE("metric components and norms") {
    WarpedSpace sp(WarpingFunction::from_registry("exp"));
    const AmbientPoint p{0.7, 0.1, -0.3};
    const double f2 = std::exp(2 * 0.7);
    CHECK(sp.metric(AmbientVector::d_t(p), AmbientVector::d_t(p)) == 1.0);
    CHECK(sp.metric(AmbientVector::d_x(p), AmbientVector::d_x(p)) ==
          doctest::Approx(f2).epsilon(1e-15));
    CHECK(sp.metric(AmbientVector::d_t(p), AmbientVector::d_x(p)) == 0.0);
    const auto v = vec(p, 2.0, 1.0, -1.0);
    CHECK(sp.norm(v) == doctest::Approx(std::sqrt(4.0 + 2.0 * f2)));
  }

  TEST_CASE("cross product is metric-orthogonal with the area norm") {
    WarpedSpace sp(WarpingFunction::from_registry("power:0.5"));
    const AmbientPoint p{2.0, 0.4, 0.9};
    const auto a = vec(p, 0.3, -1.2, 0.8);
    const auto b = vec(p, 1.1, 0.5, -0.4);
    const auto c = sp.warped_cross(a, b);
    CHECK(std::abs(sp.metric(c, a)) < 1e-14);
    CHECK(std::abs(sp.metric(c, b)) < 1e-14);
    const double gram = sp.metric(a, a) * sp.metric(b, b) -
                        sp.metric(a, b) * sp.metric(a, b);
    CHECK(sp.norm(c) * sp.norm(c) == doctest::Approx(gram).epsilon(1e-12));
    // Anticommutes.
    const auto d = sp.warped_cross(b, a);
    CHECK(d.dt == doctest::Approx(-c.dt));
    CHECK(d.dx == doctest::Approx(-c.dx));
    CHECK(d.dy == doctest::Approx(-c.dy));
  }

  TEST_CASE("coordinate fields are parallel exactly where expected") {
    WarpedSpace sp(WarpingFunction::from_registry("linear:1,1"));
    const AmbientPoint p{0.5, 0.0, 0.0};
    // nabla_{d_x} d_x = -f f' d_t and nabla_{d_t} d_x = (f'/f) d_x.
    const auto xx = sp.christoffel(AmbientVector::d_x(p), AmbientVector::d_x(p));
    CHECK(xx.dt == doctest::Approx(-1.5));
    CHECK(xx.dx == 0.0);
    const auto tx = sp.christoffel(AmbientVector::d_t(p), AmbientVector::d_x(p));
    CHECK(tx.dx == doctest::Approx(1.0 / 1.5));
    CHECK(tx.dt == 0.0);
    const auto tt = sp.christoffel(AmbientVector::d_t(p), AmbientVector::d_t(p));
    CHECK(sp.norm(tt) == 0.0);
  }

  TEST_CASE("connection is metric compatible along a field") {
    WarpedSpace sp(WarpingFunction::from_registry("exp"));
    const AmbientPoint p{0.2, 0.0, 0.0};
    AmbientVectorField field = [](const AmbientPoint& q) {
      return AmbientVector(q, std::sin(q.t), q.x * q.t, std::cos(q.y));
    };
    // d/dt g(W, W) along the t-line equals 2 g(nabla_t W, W).
    const auto dir = AmbientVector::d_t(p);
    const auto nw = sp.covariant_derivative(field, dir);
    auto g_along = [&](double t) {
      AmbientPoint q{t, p.x, p.y};
      return sp.metric(field(q), field(q));
    };
    const double lhs = num::dcentral(g_along, p.t, num::step1(p.t));
    CHECK(std::abs(lhs - 2.0 * sp.metric(nw, field(p))) < 1e-8);
  }

  TEST_CASE("curvature blocks agree with the finite-difference route") {
    for (const char* name : {"exp", "linear:1,1", "power:0.5", "constant:2"}) {
      WarpedSpace sp(WarpingFunction::from_registry(name));
      const AmbientPoint p{1.3, 0.2, -0.1};
      const auto u = vec(p, 0.7, -0.2, 0.5);
      const auto v = vec(p, -0.1, 1.0, 0.3);
      const auto w = vec(p, 0.4, 0.6, -1.0);
      const auto direct = sp.curvature(u, v, w);
      const auto fd = sp.curvature_from_christoffel(u, v, w);
      CHECK(std::abs(direct.dt - fd.dt) < 1e-7);
      CHECK(std::abs(direct.dx - fd.dx) < 1e-7);
      CHECK(std::abs(direct.dy - fd.dy) < 1e-7);
    }
  }

  TEST_CASE("curvature tensor symmetries") {
    WarpedSpace sp(WarpingFunction::from_registry("power:0.7"));
    const AmbientPoint p{1.6, 0.0, 0.4};
    const auto u = vec(p, 0.3, 1.1, -0.4);
    const auto v = vec(p, 0.9, -0.2, 0.6);
    const auto w = vec(p, -0.5, 0.8, 0.2);
    const auto z = vec(p, 0.1, 0.4, 1.3);
    const auto r_uv = sp.curvature(u, v, w);
    const auto r_vu = sp.curvature(v, u, w);
    CHECK(std::abs(sp.metric(r_uv + r_vu, z)) < 1e-13);
    // Pair symmetry g(R(u,v)w, z) = g(R(w,z)u, v).
    const auto r_wz = sp.curvature(w, z, u);
    CHECK(sp.metric(r_uv, z) == doctest::Approx(sp.metric(r_wz, v)).epsilon(1e-12));
    // First Bianchi identity.
    const auto bianchi =
        sp.curvature(u, v, w) + sp.curvature(v, w, u) + sp.curvature(w, u, v);
    CHECK(sp.norm(bianchi) < 1e-12);
  }

  TEST_CASE("sectional curvature of the exponential warping is -1") {
    WarpedSpace sp(WarpingFunction::from_registry("exp"));
    num::SplitMix64 rng(7);
    for (int i = 0; i < 16; ++i) {
      const AmbientPoint p{rng.uniform(-1, 1), rng.uniform(-1, 1),
                           rng.uniform(-1, 1)};
      const auto a = vec(p, rng.uniform(-1, 1), rng.uniform(-1, 1),
                         rng.uniform(-1, 1));
      const auto b = vec(p, rng.uniform(-1, 1), rng.uniform(-1, 1),
                         rng.uniform(-1, 1));
      CHECK(std::abs(sp.sectional_curvature(a, b) + 1.0) < 1e-10);
    }
  }

  TEST_CASE("linear warpings mix flat and hyperbolic planes") {
    WarpedSpace sp(WarpingFunction::from_registry("linear:1,1"));
    const AmbientPoint p{0.8, 0.3, -0.5};
    // Fiber plane span(d_x, d_y): K = -(f'/f)^2 = -1/(t+1)^2.
    const double fiber = sp.sectional_curvature(AmbientVector::d_x(p),
                                                AmbientVector::d_y(p));
    CHECK(fiber == doctest::Approx(-1.0 / (1.8 * 1.8)).epsilon(1e-12));
    // Mixed plane span(d_t, d_x): K = -f''/f = 0.
    const double mixed = sp.sectional_curvature(AmbientVector::d_t(p),
                                                AmbientVector::d_x(p));
    CHECK(std::abs(mixed) < 1e-13);
  }

  TEST_CASE("degenerate planes and mismatched bases are rejected") {
    WarpedSpace sp(WarpingFunction::from_registry("exp"));
    const AmbientPoint p{0.0, 0.0, 0.0};
    const auto a = vec(p, 1.0, 2.0, 0.0);
    CHECK_THROWS_AS(sp.sectional_curvature(a, 2.0 * a), DegeneratePlane);
    const AmbientPoint q{0.5, 0.0, 0.0};
    CHECK_THROWS_AS(a + AmbientVector::d_t(q), BaseMismatch);
    CHECK_THROWS_AS(sp.metric(a, AmbientVector::d_t(q)), BaseMismatch);
  }
}
