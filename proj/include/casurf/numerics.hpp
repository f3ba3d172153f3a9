#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace casurf::num {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

/// Step for first-order central differences: h = eps^(1/3) * max(1, |x|).
inline double step1(double x) {
  static const double h0 = std::cbrt(kEps);
  return h0 * std::max(1.0, std::abs(x));
}

/// Step for second-order central differences. eps^(1/4) balances the
/// eps/h^2 roundoff term against truncation; eps^(1/3) does not.
inline double step2(double x) {
  static const double h0 = std::pow(kEps, 0.25);
  return h0 * std::max(1.0, std::abs(x));
}

/// Wider step for differentiating fields that are themselves FD products.
inline double step_noisy(double x) {
  static const double h0 = std::pow(kEps, 1.0 / 6.0);
  return h0 * std::max(1.0, std::abs(x));
}

template <class F>
double dcentral(F&& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

template <class F>
double d2central(F&& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

/// Mixed second partial of f(x,y) with a common step.
template <class F>
double dmixed(F&& f, double x, double y, double hx, double hy) {
  return (f(x + hx, y + hy) - f(x + hx, y - hy) - f(x - hx, y + hy) +
          f(x - hx, y - hy)) /
         (4.0 * hx * hy);
}

/// Adaptive Gauss-Kronrod 7/15 quadrature of g over [a, b] to an absolute
/// tolerance. Antisymmetric in (a, b); throws NonConvergence if the interval
/// stack exhausts the depth budget before the tolerance is met.
double integrate(const std::function<double(double)>& g, double a, double b,
                 double abs_tol = 1e-12);

/// Fritsch-Carlson monotone cubic (PCHIP). C^1, preserves monotonicity of the
/// data; second derivative is piecewise linear and jumps at knots.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  /// Knots must be strictly increasing; at least two points.
  MonotoneCubic(std::vector<double> t, std::vector<double> y);

  double value(double x) const;
  double deriv(double x) const;
  double deriv2(double x) const;

  double front() const { return t_.front(); }
  double back() const { return t_.back(); }

 private:
  std::size_t segment(double x) const;
  std::vector<double> t_, y_, d_;
};

/// Deterministic 64-bit mixer; used wherever reports need reproducible
/// pseudo-random samples independent of platform RNG details.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) {
    double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
};

struct Stats {
  double mean = 0.0, stddev = 0.0, min = 0.0, max = 0.0;
  std::size_t n = 0;
};

/// Two-pass mean/stddev in index order, so results do not depend on how the
/// values were produced (thread count, chunking).
Stats stats(const std::vector<double>& xs);

}  // namespace casurf::num
