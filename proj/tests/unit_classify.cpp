#include <cmath>

#include "casurf/expression.hpp"
#include "casurf/generators.hpp"
#include "casurf/immersion.hpp"
#include "doctest.h"

using namespace casurf;

namespace {

Immersion expression_surface(const char* text, const char* warp, double t0 = 0.0,
                             ParamRect rect = {-1.0, 1.0, -1.0, 1.0}) {
  auto triple = parse_immersion_triple(text);
  WarpedSpace sp(WarpingFunction::from_registry(warp));
  auto map = [triple, t0](double u, double v) {
    return AmbientPoint{triple[0].eval(u, v, t0), triple[1].eval(u, v, t0),
                        triple[2].eval(u, v, t0)};
  };
  return Immersion(sp, map, rect);
}

}  // namespace

TEST_SUITE("classify") {
  TEST_CASE("umbilical ruled graphs are recognized") {
    GeneratorSpec spec;
    spec.family = Family::TypeII;
    spec.warping = WarpingFunction::from_registry("linear:2,0.5");
    spec.theta = 35.0 * M_PI / 180.0;
    const Immersion im = make_surface(spec);
    const auto rep = classify(im, Grid{24, 24});
    CHECK(rep.verdict == "TYPE_II");
    CHECK(rep.theta_hat == doctest::Approx(spec.theta).epsilon(1e-10));
    CHECK(rep.theta_stddev < 1e-10);
  }

  TEST_CASE("slices are recognized by their vanishing angle") {
    GeneratorSpec spec;
    spec.family = Family::TypeIII;
    spec.warping = WarpingFunction::from_registry("exp");
    spec.t0 = 0.4;
    const auto rep = classify(make_surface(spec), Grid{16, 16});
    CHECK(rep.verdict == "TYPE_III");
    CHECK(rep.theta_hat < 1e-10);
  }

  TEST_CASE("profile recovery reproduces a linear profile up to gauge") {
    GeneratorSpec spec;
    spec.family = Family::TypeI;
    spec.warping = WarpingFunction::from_registry("exp");
    spec.theta = M_PI / 6.0;
    spec.alpha = ProfileFunction::expression("v");
    const Immersion im = make_surface(spec);
    const auto rep = classify(im, Grid{24, 24});
    REQUIRE(rep.verdict == "TYPE_I");
    REQUIRE(rep.alpha_nodes.size() == rep.alpha_values.size());
    REQUIRE(rep.alpha_values.size() > 4);
    // The recovered profile is defined up to one additive constant.
    double shift = 0.0;
    for (std::size_t j = 0; j < rep.alpha_nodes.size(); ++j)
      shift += rep.alpha_values[j] - rep.alpha_nodes[j];
    shift /= static_cast<double>(rep.alpha_nodes.size());
    for (std::size_t j = 0; j < rep.alpha_nodes.size(); ++j)
      CHECK(std::abs(rep.alpha_values[j] - rep.alpha_nodes[j] - shift) < 1e-6);
  }

  TEST_CASE("a paraboloid-like graph in the flat product is rejected") {
    const Immersion im = expression_surface("(u, u*u, v)", "constant:1");
    const auto rep = classify(im, Grid{16, 16});
    CHECK(rep.verdict == "NOT_CONSTANT_ANGLE");
  }

  TEST_CASE("undersampled grids are refused") {
    GeneratorSpec spec;
    spec.family = Family::TypeII;
    spec.theta = M_PI / 4.0;
    const Immersion im = make_surface(spec);
    CHECK_THROWS_AS(classify(im, Grid{4, 4}), GridTooSmall);
    CHECK_THROWS_AS(classify(im, Grid{32, 7}), GridTooSmall);
  }

  TEST_CASE("finite-difference sampling still classifies rotational input") {
    GeneratorSpec spec;
    spec.family = Family::Rotational;
    spec.warping = WarpingFunction::from_registry("linear:1,1");
    spec.theta = 65.0 * M_PI / 180.0;
    const Immersion im = make_surface(spec).with_finite_differences();
    const auto rep = classify(im, Grid{24, 24});
    CHECK(rep.mode == DerivativeMode::FiniteDifference);
    CHECK(rep.verdict == "TYPE_I");
    CHECK(rep.theta_hat == doctest::Approx(spec.theta).epsilon(1e-6));
    // The recovered profile of a rotational surface is a constant.
    double lo = rep.alpha_values.front(), hi = lo;
    for (double a : rep.alpha_values) {
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
    CHECK(hi - lo < 1e-4);
  }
}
