#include <cmath>
#include <vector>

#include "casurf/numerics.hpp"
#include "doctest.h"

using namespace casurf;

TEST_SUITE("numerics") {
  TEST_CASE("adaptive quadrature hits analytic integrals") {
    const double a = num::integrate([](double x) { return std::exp(-x); }, 0.0, 1.0);
    CHECK(std::abs(a - (1.0 - std::exp(-1.0))) < 1e-13);

    const double b = num::integrate([](double x) { return 1.0 / x; }, 1.0, 2.0);
    CHECK(std::abs(b - std::log(2.0)) < 1e-13);

    // Oscillatory integrand forces subdivision.
    const double c =
        num::integrate([](double x) { return std::sin(10.0 * x); }, 0.0, 3.0);
    CHECK(std::abs(c - (1.0 - std::cos(30.0)) / 10.0) < 1e-12);
  }

  TEST_CASE("quadrature is antisymmetric in its endpoints") {
    auto fn = [](double x) { return std::cos(x) + x * x; };
    const double fwd = num::integrate(fn, -0.5, 1.7);
    const double rev = num::integrate(fn, 1.7, -0.5);
    CHECK(fwd == doctest::Approx(-rev).epsilon(1e-14));
    CHECK(num::integrate(fn, 0.3, 0.3) == 0.0);
  }

  TEST_CASE("central differences track smooth derivatives") {
    auto fn = [](double x) { return std::sin(x) * std::exp(0.3 * x); };
    auto d1 = [](double x) {
      return std::exp(0.3 * x) * (std::cos(x) + 0.3 * std::sin(x));
    };
    const double x = 0.8;
    CHECK(std::abs(num::dcentral(fn, x, num::step1(x)) - d1(x)) < 1e-9);
    auto d2 = [&](double x0) {
      return std::exp(0.3 * x0) *
             (0.6 * std::cos(x0) + (0.09 - 1.0) * std::sin(x0));
    };
    CHECK(std::abs(num::d2central(fn, x, num::step2(x)) - d2(x)) < 1e-7);
  }

  TEST_CASE("monotone cubic interpolation is exact at the nodes") {
    std::vector<double> xs, ys;
    for (int i = 0; i <= 20; ++i) {
      const double x = 0.1 + 0.15 * i;
      xs.push_back(x);
      ys.push_back(std::exp(x));
    }
    num::MonotoneCubic spline(xs, ys);
    for (std::size_t i = 0; i < xs.size(); ++i)
      CHECK(spline.value(xs[i]) == doctest::Approx(ys[i]).epsilon(1e-15));
    // Between nodes the error stays fourth-order small ...
    CHECK(std::abs(spline.value(1.234) - std::exp(1.234)) < 1e-4);
    CHECK(std::abs(spline.deriv(1.234) - std::exp(1.234)) < 1e-2);
    // ... and monotone data yields a monotone interpolant.
    double prev = spline.value(xs.front());
    for (double x = xs.front(); x <= xs.back(); x += 0.01) {
      const double cur = spline.value(x);
      CHECK(cur >= prev - 1e-12);
      prev = cur;
    }
  }

  TEST_CASE("running statistics") {
    const std::vector<double> data{1.0, 2.0, 3.0, 4.0};
    const auto s = num::stats(data);
    CHECK(s.n == 4);
    CHECK(s.mean == doctest::Approx(2.5));
    CHECK(s.min == 1.0);
    CHECK(s.max == 4.0);
    CHECK(s.stddev == doctest::Approx(std::sqrt(5.0 / 4.0)));
  }

  TEST_CASE("seeded generator is reproducible and bounded") {
    num::SplitMix64 a(42), b(42), c(43);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 64; ++i) {
      const double x = a.uniform(-2.0, 3.0);
      const double y = b.uniform(-2.0, 3.0);
      const double z = c.uniform(-2.0, 3.0);
      all_equal = all_equal && (x == y);
      any_diff = any_diff || (x != z);
      CHECK(x >= -2.0);
      CHECK(x < 3.0);
    }
    CHECK(all_equal);
    CHECK(any_diff);
  }
}
