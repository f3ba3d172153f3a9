#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "casurf/errors.hpp"
#include "casurf/warping.hpp"
#include "doctest.h"

using namespace casurf;

TEST_SUITE("warping") {
  TEST_CASE("registry families and their derivatives") {
    auto e = WarpingFunction::from_registry("exp");
    CHECK(e.value(0.3) == doctest::Approx(std::exp(0.3)).epsilon(1e-15));
    CHECK(e.deriv(0.3) == doctest::Approx(std::exp(0.3)).epsilon(1e-15));
    CHECK(e.deriv2(0.3) == doctest::Approx(std::exp(0.3)).epsilon(1e-15));
    CHECK(e.is_exp());
    CHECK(e.family() == "exp");

    auto c = WarpingFunction::from_registry("constant:2.5");
    CHECK(c.value(-1.0) == 2.5);
    CHECK(c.deriv(4.0) == 0.0);
    CHECK_FALSE(c.is_exp());

    auto l = WarpingFunction::from_registry("linear:2,0.5");
    CHECK(l.value(1.0) == doctest::Approx(3.0));
    CHECK(l.deriv(1.0) == 2.0);
    CHECK(l.deriv2(1.0) == 0.0);
    CHECK(l.interval().lo == doctest::Approx(-0.5));
    CHECK_FALSE(l.interval().bounded());

    auto p = WarpingFunction::from_registry("power:0.5");
    CHECK(p.value(4.0) == doctest::Approx(2.0));
    CHECK(p.deriv(4.0) == doctest::Approx(0.25));
    CHECK(p.interval().lo == 0.0);
    CHECK_FALSE(p.interval().contains(-0.1));
  }

  TEST_CASE("logarithmic derivatives") {
    auto p = WarpingFunction::from_registry("power:0.3");
    const double t = 1.7;
    CHECK(p.log_deriv(t) == doctest::Approx(0.3 / t).epsilon(1e-14));
    CHECK(p.log_deriv2(t) == doctest::Approx(-0.3 / (t * t)).epsilon(1e-13));
    auto e = WarpingFunction::from_registry("exp");
    CHECK(e.log_deriv(2.0) == doctest::Approx(1.0));
    CHECK(e.log_deriv2(2.0) == doctest::Approx(0.0));
  }

  TEST_CASE("malformed registry strings are rejected") {
    CHECK_THROWS_AS(WarpingFunction::from_registry("sinh"), ConfigError);
    CHECK_THROWS_AS(WarpingFunction::from_registry("linear:1"), ConfigError);
    CHECK_THROWS_AS(WarpingFunction::from_registry("constant:zero"), ConfigError);
    CHECK_THROWS_AS(WarpingFunction::from_registry("power:"), ConfigError);
  }

  TEST_CASE("evaluation outside the interval throws") {
    auto l = WarpingFunction::from_registry("linear:1,1");
    CHECK_THROWS_AS(l.value(-1.5), DomainError);
    CHECK_THROWS_AS(l.deriv(-2.0), DomainError);
    CHECK(l.value(-0.9) > 0.0);
  }

  TEST_CASE("sampled warpings reproduce exp to interpolation accuracy") {
    std::vector<double> ts, fs;
    for (int i = 0; i <= 200; ++i) {
      const double t = -1.0 + 2.0 * i / 200.0;
      ts.push_back(t);
      fs.push_back(std::exp(t));
    }
    auto w = WarpingFunction::from_samples(ts, fs);
    // The sampled family carries the interpolant's own derivative closures.
    CHECK(w.has_analytic_derivatives());
    CHECK(std::abs(w.value(0.123) - std::exp(0.123)) < 1e-7);
    CHECK(std::abs(w.deriv(0.123) - std::exp(0.123)) < 1e-4);
    CHECK(w.interval().bounded());
    CHECK_THROWS_AS(w.value(1.5), DomainError);
  }

  TEST_CASE("table files round through the sampled constructor") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "casurf_warp_table.txt";
    {
      std::ofstream out(path);
      out << "# t  f(t)\n";
      for (int i = 0; i <= 100; ++i) {
        const double t = 0.5 + i / 100.0;
        out << t << " " << t * t << "\n";
      }
    }
    auto w = WarpingFunction::from_table(path);
    CHECK(std::abs(w.value(1.25) - 1.5625) < 1e-9);
    CHECK(std::abs(w.deriv(1.25) - 2.5) < 2e-4);
    fs::remove(path);
  }

  TEST_CASE("analytic derivative consistency check") {
    auto good = WarpingFunction::from_registry("exp");
    CHECK(good.derivative_consistency() < 1e-7);
    auto poly = WarpingFunction::from_registry("linear:2,0.5");
    CHECK(poly.derivative_consistency() < 1e-7);
  }
}
