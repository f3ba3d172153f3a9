#include "casurf/warping.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "casurf/errors.hpp"
#include "casurf/numerics.hpp"

namespace casurf {

namespace {

double parse_number(std::string_view s, std::string_view what) {
  // std::from_chars<double> handles leading signs but not surrounding space.
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError("could not parse number '" + std::string(s) + "' in " +
                      std::string(what));
  }
  return out;
}

}  // namespace

double Interval::anchor() const {
  if (bounded()) return 0.5 * (lo + hi);
  if (std::isfinite(lo)) return lo + 1.0;
  if (std::isfinite(hi)) return hi - 1.0;
  return 0.0;
}

void WarpingFunction::check_domain(double t) const {
  if (!interval_.contains(t)) {
    std::ostringstream os;
    os << "warping '" << family_ << "': t = " << t
       << " outside the admissible interval";
    throw DomainError(os.str());
  }
}

double WarpingFunction::value(double t) const {
  check_domain(t);
  const double v = f_(t);
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << "warping '" << family_ << "' is not positive at t = " << t;
    throw Error(os.str());
  }
  return v;
}

double WarpingFunction::deriv(double t) const {
  check_domain(t);
  if (df_) return df_(t);
  return num::dcentral([this](double s) { return f_(s); }, t, num::step1(t));
}

double WarpingFunction::deriv2(double t) const {
  check_domain(t);
  if (d2f_) return d2f_(t);
  if (df_) {
    return num::dcentral([this](double s) { return df_(s); }, t, num::step1(t));
  }
  return num::d2central([this](double s) { return f_(s); }, t, num::step2(t));
}

double WarpingFunction::log_deriv(double t) const { return deriv(t) / value(t); }

double WarpingFunction::log_deriv2(double t) const {
  const double ld = log_deriv(t);
  return deriv2(t) / value(t) - ld * ld;
}

WarpingFunction WarpingFunction::analytic(Scalar f, Scalar df, Scalar d2f,
                                          Interval iv, std::string family) {
  WarpingFunction w;
  w.f_ = std::move(f);
  w.df_ = std::move(df);
  w.d2f_ = std::move(d2f);
  w.interval_ = iv;
  w.family_ = std::move(family);
  return w;
}

WarpingFunction WarpingFunction::numeric(Scalar f, Interval iv,
                                         std::string family) {
  WarpingFunction w;
  w.f_ = std::move(f);
  w.interval_ = iv;
  w.family_ = std::move(family);
  return w;
}

WarpingFunction WarpingFunction::from_registry(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const std::string_view args =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

  if (name == "exp") {
    if (!args.empty()) throw ConfigError("warping 'exp' takes no parameters");
    auto e = [](double t) { return std::exp(t); };
    return analytic(e, e, e, Interval{}, "exp");
  }
  if (name == "constant") {
    const double a = parse_number(args, "warping 'constant:a'");
    if (!(a > 0.0)) throw ConfigError("constant warping needs a > 0");
    return analytic([a](double) { return a; }, [](double) { return 0.0; },
                    [](double) { return 0.0; }, Interval{}, std::string(spec));
  }
  if (name == "linear") {
    const auto comma = args.find(',');
    if (comma == std::string_view::npos) {
      throw ConfigError("warping 'linear' needs two parameters: linear:a,b");
    }
    const double a = parse_number(args.substr(0, comma), "warping 'linear:a,b'");
    const double b = parse_number(args.substr(comma + 1), "warping 'linear:a,b'");
    if (a == 0.0) throw ConfigError("linear warping needs a != 0");
    Interval iv;
    if (a > 0.0) {
      iv.lo = -b;
    } else {
      iv.hi = -b;
    }
    return analytic([a, b](double t) { return a * (t + b); },
                    [a](double) { return a; }, [](double) { return 0.0; }, iv,
                    std::string(spec));
  }
  if (name == "power") {
    const double m = parse_number(args, "warping 'power:m'");
    Interval iv;
    iv.lo = 0.0;
    return analytic([m](double t) { return std::pow(t, m); },
                    [m](double t) { return m * std::pow(t, m - 1.0); },
                    [m](double t) { return m * (m - 1.0) * std::pow(t, m - 2.0); },
                    iv, std::string(spec));
  }
  throw ConfigError("unknown warping family '" + std::string(spec) + "'");
}

WarpingFunction WarpingFunction::from_samples(std::vector<double> t,
                                              std::vector<double> f) {
  for (double v : f) {
    if (!(v > 0.0)) throw ConfigError("tabulated warping must be positive");
  }
  auto spline = std::make_shared<num::MonotoneCubic>(std::move(t), std::move(f));
  Interval iv{spline->front(), spline->back()};
  WarpingFunction w = analytic(
      [spline](double s) { return spline->value(s); },
      [spline](double s) { return spline->deriv(s); },
      [spline](double s) { return spline->deriv2(s); }, iv, "table");
  return w;
}

WarpingFunction WarpingFunction::from_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open warping table '" + path.string() + "'");
  std::vector<double> t, f;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    double a, b;
    if (row >> a >> b) {
      t.push_back(a);
      f.push_back(b);
    } else {
      // Skip blank/comment lines; reject rows with exactly one column.
      std::istringstream retry(line);
      double only;
      if (retry >> only) {
        throw ConfigError("warping table row needs two columns: " + line);
      }
    }
  }
  if (t.size() < 4) {
    throw ConfigError("warping table '" + path.string() +
                      "' needs at least 4 samples");
  }
  return from_samples(std::move(t), std::move(f));
}

double WarpingFunction::derivative_consistency(int samples,
                                               std::uint64_t seed) const {
  if (!df_) return 0.0;
  // Sample an interior window; unbounded sides get a unit window around the
  // anchor so the finite differences stay in-domain.
  double lo = interval_.lo, hi = interval_.hi;
  const double a = interval_.anchor();
  if (!std::isfinite(lo)) lo = a - 1.0;
  if (!std::isfinite(hi)) hi = a + 1.0;
  const double pad = 1e-3 * (hi - lo);
  lo += pad;
  hi -= pad;

  num::SplitMix64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = rng.uniform(lo, hi);
    const double fd1 = num::dcentral([this](double s) { return f_(s); }, t,
                                     num::step1(t));
    const double fd2 = num::d2central([this](double s) { return f_(s); }, t,
                                      num::step2(t));
    const double scale1 = std::max(1.0, std::abs(df_(t)));
    worst = std::max(worst, std::abs(df_(t) - fd1) / scale1);
    if (d2f_) {
      const double scale2 = std::max(1.0, std::abs(d2f_(t)));
      worst = std::max(worst, std::abs(d2f_(t) - fd2) / scale2);
    }
  }
  return worst;
}

}  // namespace casurf
