#include "casurf/numerics.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "casurf/errors.hpp"

namespace casurf::num {

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1]. Even-indexed abscissae
// carry the embedded Gauss-7 rule.
constexpr std::array<double, 8> kXgk = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> kWg = {0.129484966168870, 0.279705391489277,
                                       0.381830050505119, 0.417959183673469};

struct GKResult {
  double integral;
  double error;
};

GKResult gk15(const std::function<double(double)>& g, double a, double b) {
  const double c = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double fc = g(c);
  double result_gauss = kWg[3] * fc;
  double result_kronrod = kWgk[7] * fc;

  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    const double fsum = g(c - dx) + g(c + dx);
    result_kronrod += kWgk[i] * fsum;
    if (i % 2 == 1) result_gauss += kWg[i / 2] * fsum;
  }

  result_gauss *= half;
  result_kronrod *= half;

  // QUADPACK-style sharpened estimate of the Kronrod error.
  double err = std::abs(result_kronrod - result_gauss) * 200.0;
  if (err > 0.0 && err < 1.0) err = err * std::sqrt(err);
  return {result_kronrod, err};
}

double adapt(const std::function<double(double)>& g, double a, double b,
             double tol, int depth) {
  const GKResult r = gk15(g, a, b);
  if (r.error <= tol || r.error <= kEps * std::abs(r.integral) * 8.0) {
    return r.integral;
  }
  if (depth <= 0) {
    throw NonConvergence("quadrature did not reach the requested tolerance");
  }
  const double c = 0.5 * (a + b);
  return adapt(g, a, c, 0.5 * tol, depth - 1) +
         adapt(g, c, b, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& g, double a, double b,
                 double abs_tol) {
  if (!(abs_tol > 0.0)) {
    throw std::invalid_argument("integrate: tolerance must be positive");
  }
  if (a == b) return 0.0;
  const double sign = (a < b) ? 1.0 : -1.0;
  const double lo = std::min(a, b), hi = std::max(a, b);
  return sign * adapt(g, lo, hi, abs_tol, 48);
}

MonotoneCubic::MonotoneCubic(std::vector<double> t, std::vector<double> y)
    : t_(std::move(t)), y_(std::move(y)) {
  const std::size_t n = t_.size();
  if (n < 2 || y_.size() != n) {
    throw std::invalid_argument("MonotoneCubic: need >= 2 matching samples");
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(t_[i] < t_[i + 1])) {
      throw std::invalid_argument("MonotoneCubic: knots must increase strictly");
    }
  }

  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = t_[i + 1] - t_[i];
    delta[i] = (y_[i + 1] - y_[i]) / h[i];
  }

  d_.assign(n, 0.0);
  if (n == 2) {
    d_[0] = d_[1] = delta[0];
  } else {
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (delta[i - 1] * delta[i] <= 0.0) {
        d_[i] = 0.0;
      } else {
        const double w1 = 2.0 * h[i] + h[i - 1];
        const double w2 = h[i] + 2.0 * h[i - 1];
        d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
      }
    }
    auto endpoint = [](double h0, double h1, double d0, double d1) {
      double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
      if (d * d0 <= 0.0) {
        d = 0.0;
      } else if (d0 * d1 <= 0.0 && std::abs(d) > 3.0 * std::abs(d0)) {
        d = 3.0 * d0;
      }
      return d;
    };
    d_[0] = endpoint(h[0], h[1], delta[0], delta[1]);
    d_[n - 1] = endpoint(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  }
}

std::size_t MonotoneCubic::segment(double x) const {
  // Rightmost knot <= x, clamped to a valid segment.
  auto it = std::upper_bound(t_.begin(), t_.end(), x);
  std::size_t i = (it == t_.begin()) ? 0 : static_cast<std::size_t>(it - t_.begin() - 1);
  return std::min(i, t_.size() - 2);
}

double MonotoneCubic::value(double x) const {
  const std::size_t i = segment(x);
  const double h = t_[i + 1] - t_[i];
  const double s = (x - t_[i]) / h;
  const double s2 = s * s, s3 = s2 * s;
  return y_[i] * (2.0 * s3 - 3.0 * s2 + 1.0) +
         d_[i] * h * (s3 - 2.0 * s2 + s) + y_[i + 1] * (-2.0 * s3 + 3.0 * s2) +
         d_[i + 1] * h * (s3 - s2);
}

double MonotoneCubic::deriv(double x) const {
  const std::size_t i = segment(x);
  const double h = t_[i + 1] - t_[i];
  const double s = (x - t_[i]) / h;
  const double s2 = s * s;
  return (y_[i] * (6.0 * s2 - 6.0 * s) + d_[i] * h * (3.0 * s2 - 4.0 * s + 1.0) +
          y_[i + 1] * (6.0 * s - 6.0 * s2) + d_[i + 1] * h * (3.0 * s2 - 2.0 * s)) /
         h;
}

double MonotoneCubic::deriv2(double x) const {
  const std::size_t i = segment(x);
  const double h = t_[i + 1] - t_[i];
  const double s = (x - t_[i]) / h;
  return (y_[i] * (12.0 * s - 6.0) + d_[i] * h * (6.0 * s - 4.0) +
          y_[i + 1] * (6.0 - 12.0 * s) + d_[i + 1] * h * (6.0 * s - 2.0)) /
         (h * h);
}

Stats stats(const std::vector<double>& xs) {
  Stats s;
  s.n = xs.size();
  if (xs.empty()) return s;
  double sum = 0.0;
  s.min = s.max = xs[0];
  for (double x : xs) {
    sum += x;
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
  }
  s.mean = sum / static_cast<double>(xs.size());
  double acc = 0.0;
  for (double x : xs) acc += (x - s.mean) * (x - s.mean);
  s.stddev = std::sqrt(acc / static_cast<double>(xs.size()));
  return s;
}

}  // namespace casurf::num
