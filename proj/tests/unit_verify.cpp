#include <cmath>
#include <cstdlib>

#include "casurf/generators.hpp"
#include "casurf/verify.hpp"
#include "doctest.h"

using namespace casurf;

namespace {

GeneratorSpec spec_of(Family fam, const char* warp, double theta_deg) {
  GeneratorSpec spec;
  spec.family = fam;
  spec.warping = WarpingFunction::from_registry(warp);
  spec.theta = theta_deg * M_PI / 180.0;
  return spec;
}

const CheckRecord* find_check(const VerificationReport& rep, const char* name) {
  for (const auto& c : rep.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("the full battery passes on an umbilical ruled graph") {
    SuiteOptions opt;
    opt.grid = Grid{24, 24};
    const auto rep = run_suite("all", spec_of(Family::TypeII, "linear:1,1", 45.0), opt);
    CHECK(rep.pass);
    CHECK(rep.suite == "all");
    // The battery for this spec includes the umbilical and flatness checks.
    CHECK(find_check(rep, "principal_spread") != nullptr);
    CHECK(find_check(rep, "flat_cone") != nullptr);
    CHECK(find_check(rep, "classification_roundtrip") != nullptr);
    for (const auto& c : rep.checks) CHECK(c.pass);
  }

  TEST_CASE("a slice in the exponential space is not minimal") {
    SuiteOptions opt;
    opt.grid = Grid{16, 16};
    auto spec = spec_of(Family::TypeIII, "exp", 0.0);
    spec.t0 = 0.0;
    const auto rep = run_suite("minimal", spec, opt);
    CHECK_FALSE(rep.pass);
    const auto* c = find_check(rep, "minimal");
    REQUIRE(c != nullptr);
    // |H| = |f'/f| = 1 everywhere on this slice.
    CHECK(c->max_residual == doctest::Approx(1.0).epsilon(1e-8));
  }

  TEST_CASE("the log-linear family carries its advertised mean curvature") {
    SuiteOptions opt;
    opt.grid = Grid{20, 20};
    const auto rep = run_suite("harmonic", spec_of(Family::HarmonicExp, "exp", 60.0), opt);
    CHECK(rep.pass);
    const auto* c = find_check(rep, "harmonic_mean_curvature");
    REQUIRE(c != nullptr);
    REQUIRE(c->value.has_value());
    CHECK(*c->value == doctest::Approx(-1.25).epsilon(1e-12));
  }

  TEST_CASE("unknown suites and inapplicable requests are config errors") {
    CHECK_THROWS_AS(run_suite("everything", GeneratorSpec{}), ConfigError);
    // The frame law needs a nonvanishing tangential direction; slices have none.
    auto slice = spec_of(Family::TypeIII, "exp", 0.0);
    CHECK_THROWS_AS(run_suite("frame_connection", slice), ConfigError);
  }

  TEST_CASE("reports serialize identically across thread counts") {
    SuiteOptions opt;
    opt.grid = Grid{16, 16};
    auto spec = spec_of(Family::TypeI, "power:0.5", 50.0);
    spec.alpha = ProfileFunction::expression("0.3*sin(v)");

    setenv("CASURF_THREADS", "1", 1);
    const std::string one = run_suite("all", spec, opt).to_json().dump(2);
    setenv("CASURF_THREADS", "3", 1);
    const std::string three = run_suite("all", spec, opt).to_json().dump(2);
    unsetenv("CASURF_THREADS");

    CHECK(one == three);
    CHECK(one.find("\"pass\": true") != std::string::npos);
  }

  TEST_CASE("immersion-only suites skip the spec-bound checks") {
    auto spec = spec_of(Family::Rotational, "exp", 55.0);
    const Immersion im = make_surface(spec);
    SuiteOptions opt;
    // The curvature-route comparison carries an O(h^2) grid-resolution term;
    // 16x16 leaves it right at the tolerance, 32x32 gives real margin.
    opt.grid = Grid{32, 32};
    const auto rep = run_suite("all", im, opt);
    CHECK(rep.pass);
    CHECK(find_check(rep, "classification_roundtrip") == nullptr);
    CHECK(find_check(rep, "constant_angle") != nullptr);
    CHECK_THROWS_AS(run_suite("classification_roundtrip", im, opt), ConfigError);
  }
}
