#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace casurf {

/// Open interval of admissible t values. Infinite endpoints allowed.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  /// True when t is inside with at least the endpoint margin (1e-9) to spare.
  bool contains(double t) const {
    constexpr double kMargin = 1e-9;
    return t > lo + kMargin && t < hi - kMargin;
  }
  bool bounded() const {
    return std::isfinite(lo) && std::isfinite(hi);
  }
  /// A representative interior point: midpoint when bounded, endpoint +- 1
  /// when half-infinite, 0 for the whole line.
  double anchor() const;
};

/// Positive warping function f on an open interval, with first and second
/// derivatives. Derivatives are analytic closures when supplied and central
/// finite differences of f otherwise.
class WarpingFunction {
 public:
  using Scalar = std::function<double(double)>;

  WarpingFunction() = default;

  static WarpingFunction analytic(Scalar f, Scalar df, Scalar d2f, Interval iv,
                                  std::string family = "analytic");
  static WarpingFunction numeric(Scalar f, Interval iv,
                                 std::string family = "numeric");

  /// Builtin families: "constant:a", "linear:a,b" (t -> a(t+b)),
  /// "power:m" (t -> t^m on (0, inf)), "exp" (t -> e^t).
  static WarpingFunction from_registry(std::string_view spec);

  /// Two-column whitespace-separated (t, f) samples; '#' starts a comment.
  static WarpingFunction from_table(const std::filesystem::path& path);
  static WarpingFunction from_samples(std::vector<double> t,
                                      std::vector<double> f);

  /// f(t). Throws DomainError outside the interval, Error if f <= 0 there.
  double value(double t) const;
  double deriv(double t) const;
  double deriv2(double t) const;

  /// (log f)' = f'/f and (log f)'' = f''/f - (f'/f)^2.
  double log_deriv(double t) const;
  double log_deriv2(double t) const;

  const Interval& interval() const { return interval_; }
  const std::string& family() const { return family_; }
  bool has_analytic_derivatives() const { return bool(df_); }
  /// The exponential warping is the only one with a half-space model.
  bool is_exp() const { return family_ == "exp"; }

  /// Max relative deviation between supplied derivatives and central
  /// differences of f at `samples` deterministic points. Zero when the
  /// derivatives are finite-difference fallbacks already.
  double derivative_consistency(int samples = 32,
                                std::uint64_t seed = 0x5eed01) const;

 private:
  void check_domain(double t) const;

  Scalar f_, df_, d2f_;
  Interval interval_;
  std::string family_ = "unset";
};

}  // namespace casurf
