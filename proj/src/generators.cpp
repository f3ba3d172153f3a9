#include "casurf/generators.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>
#include <utility>

#include "casurf/errors.hpp"
#include "casurf/expression.hpp"
#include "casurf/numerics.hpp"

namespace casurf {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = kPi / 2.0;

// sin/cos of the constant angle, with theta snapped to exactly pi/2 when it
// is one rounding away, so right-angle surfaces come out with exact zeros.
struct Angle {
  double theta, st, ct, cot;
  bool right;
};

Angle resolve_angle(double theta) {
  if (std::abs(theta - kHalfPi) < 1e-12) {
    return {kHalfPi, 1.0, 0.0, 0.0, true};
  }
  const double st = std::sin(theta), ct = std::cos(theta);
  return {theta, st, ct, ct / st, false};
}

void require_oblique(const Angle& a, const char* family) {
  if (!(a.theta > 1e-12) || a.theta > kHalfPi + 1e-12) {
    std::ostringstream os;
    os << family << " needs an angle in (0, pi/2], got " << a.theta;
    throw ConfigError(os.str());
  }
}

double inv_f_integral(const WarpingFunction& f, double a, double b) {
  return num::integrate([&f](double tau) { return 1.0 / f.value(tau); }, a, b);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::TypeI: return "type_i";
    case Family::TypeII: return "type_ii";
    case Family::TypeIII: return "type_iii";
    case Family::Rotational: return "rotational";
    case Family::MinimalPower: return "minimal_power";
    case Family::HarmonicExp: return "harmonic_exp";
  }
  return "?";
}

Family family_from_name(std::string_view name) {
  if (name == "type_i") return Family::TypeI;
  if (name == "type_ii") return Family::TypeII;
  if (name == "type_iii") return Family::TypeIII;
  if (name == "rotational") return Family::Rotational;
  if (name == "minimal_power") return Family::MinimalPower;
  if (name == "harmonic_exp") return Family::HarmonicExp;
  std::ostringstream os;
  os << "unknown surface family '" << name << "'";
  throw ConfigError(os.str());
}

ProfileFunction ProfileFunction::zero() {
  return {[](double) { return 0.0; }, [](double) { return 0.0; }, true, "0"};
}

ProfileFunction ProfileFunction::constant(double c) {
  return {[c](double) { return c; }, [](double) { return 0.0; }, true,
          format_double(c)};
}

ProfileFunction ProfileFunction::expression(std::string_view text) {
  Expression ex = Expression::parse(text);
  if (ex.uses('u')) {
    throw ConfigError("the profile function may depend on v only");
  }
  Expression dx = ex.derivative('v');
  return {[ex](double v) { return ex.eval(0.0, v); },
          [dx](double v) { return dx.eval(0.0, v); }, true, std::string(text)};
}

ProfileFunction ProfileFunction::from_samples(std::vector<double> v,
                                              std::vector<double> alpha) {
  auto spline =
      std::make_shared<num::MonotoneCubic>(std::move(v), std::move(alpha));
  return {[spline](double x) { return spline->value(x); },
          [spline](double x) { return spline->deriv(x); }, false, "table"};
}

ProfileFunction ProfileFunction::from_closures(
    std::function<double(double)> value, std::function<double(double)> deriv,
    std::string label) {
  return {std::move(value), std::move(deriv), true, std::move(label)};
}

double effective_base_t(const GeneratorSpec& spec) {
  return spec.base_t ? *spec.base_t : spec.warping.interval().anchor();
}

double minimal_power_angle(double m) {
  return std::acos(std::sqrt((1.0 - m) / (1.0 + m)));
}

ParamRect default_domain(const GeneratorSpec& spec) {
  const double bt = effective_base_t(spec);
  switch (spec.family) {
    case Family::TypeI:
    case Family::Rotational: {
      const Angle a = resolve_angle(spec.theta);
      return {(bt + 0.25) / a.st, (bt + 1.25) / a.st, 0.0, 1.5};
    }
    case Family::TypeII:
      return {bt + 0.25, bt + 1.25, 0.0, 1.5};
    case Family::TypeIII:
      return {-1.0, 1.0, -1.0, 1.0};
    case Family::MinimalPower: {
      const double st = std::sin(minimal_power_angle(spec.m));
      return {0.5 / st, 1.5 / st, 0.0, 1.5};
    }
    case Family::HarmonicExp:
      return {-0.75, 0.75, 0.0, 1.5};
  }
  return {};
}

Immersion make_type_i(const GeneratorSpec& spec) {
  const Angle ang = resolve_angle(spec.theta);
  require_oblique(ang, "the generic family");
  const WarpingFunction f = spec.warping;
  const double bt = effective_base_t(spec);
  const double bv = spec.base_v;
  const ProfileFunction alpha = spec.alpha;
  const ParamRect dom = spec.domain ? *spec.domain : default_domain(spec);

  // The map is regular exactly where the fiber coefficient
  // w = cot(theta) * F(u sin theta) + alpha(v) stays away from zero.
  {
    const Grid& g = spec.grid;
    for (int i = 0; i < g.nu; ++i) {
      const double u = g.u(dom, i);
      const double t = u * ang.st;
      const double fu = ang.cot == 0.0 ? 0.0 : inv_f_integral(f, bt, t);
      const double ft = f.value(t);
      for (int j = 0; j < g.nv; ++j) {
        const double w = ang.cot * fu + alpha.value(g.v(dom, j));
        if (std::abs(w) * ft < 1e-9) {
          std::ostringstream os;
          os << "the v-coordinate curve degenerates near (u, v) = (" << u
             << ", " << g.v(dom, j)
             << "): cot(theta) * F + alpha vanishes there";
          throw RegularityError(os.str());
        }
      }
    }
  }

  auto map = [f, ang, bt, bv, alpha](double u, double v) -> AmbientPoint {
    const double t = u * ang.st;
    const double fu = ang.cot == 0.0 ? 0.0 : inv_f_integral(f, bt, t);
    const double s = num::integrate(
        [&](double tau) { return alpha.value(tau) * std::sin(tau); }, bv, v);
    const double c = num::integrate(
        [&](double tau) { return alpha.value(tau) * std::cos(tau); }, bv, v);
    return {t, ang.cot * fu * std::cos(v) - s, ang.cot * fu * std::sin(v) + c};
  };

  auto du = [f, ang, map](double u, double v) -> AmbientVector {
    const AmbientPoint p = map(u, v);
    const double c = ang.ct / f.value(p.t);
    return {p, ang.st, c * std::cos(v), c * std::sin(v)};
  };
  auto dv = [f, ang, bt, alpha, map](double u, double v) -> AmbientVector {
    const AmbientPoint p = map(u, v);
    const double fu = ang.cot == 0.0 ? 0.0 : inv_f_integral(f, bt, p.t);
    const double w = ang.cot * fu + alpha.value(v);
    return {p, 0.0, -w * std::sin(v), w * std::cos(v)};
  };
  auto duu = [f, ang, map](double u, double v) -> AmbientVector {
    const AmbientPoint p = map(u, v);
    const double ft = f.value(p.t);
    const double c = -ang.ct * ang.st * f.deriv(p.t) / (ft * ft);
    return {p, 0.0, c * std::cos(v), c * std::sin(v)};
  };
  auto duv = [f, ang, map](double u, double v) -> AmbientVector {
    const AmbientPoint p = map(u, v);
    const double c = ang.ct / f.value(p.t);
    return {p, 0.0, -c * std::sin(v), c * std::cos(v)};
  };
  auto dvv = [f, ang, bt, alpha, map](double u, double v) -> AmbientVector {
    const AmbientPoint p = map(u, v);
    const double fu = ang.cot == 0.0 ? 0.0 : inv_f_integral(f, bt, p.t);
    const double w = ang.cot * fu + alpha.value(v);
    const double wv = alpha.deriv(v);
    return {p, 0.0, -w * std::cos(v) - wv * std::sin(v),
            -w * std::sin(v) + wv * std::cos(v)};
  };

  Immersion im(WarpedSpace(f), map, dom);
  im.with_first_derivatives(du, dv).with_second_derivatives(duu, duv, dvv);
  return im;
}

Immersion make_type_ii(const GeneratorSpec& spec) {
  const Angle ang = resolve_angle(spec.theta);
  require_oblique(ang, "the cylinder family");
  const WarpingFunction f = spec.warping;
  const double bt = effective_base_t(spec);
  const ParamRect dom = spec.domain ? *spec.domain : default_domain(spec);

  auto map = [f, ang, bt](double u, double v) -> AmbientPoint {
    const double x = ang.cot == 0.0 ? 0.0 : ang.cot * inv_f_integral(f, bt, u);
    return {u, x, v};
  };
  auto du = [f, ang, map](double u, double v) -> AmbientVector {
    const AmbientPoint p = map(u, v);
    return {p, 1.0, ang.cot / f.value(u), 0.0};
  };
  auto dv = [map](double u, double v) -> AmbientVector {
    return {map(u, v), 0.0, 0.0, 1.0};
  };
  auto duu = [f, ang, map](double u, double v) -> AmbientVector {
    const AmbientPoint p = map(u, v);
    const double ft = f.value(u);
    return {p, 0.0, -ang.cot * f.deriv(u) / (ft * ft), 0.0};
  };
  auto zero = [map](double u, double v) -> AmbientVector {
    return {map(u, v), 0.0, 0.0, 0.0};
  };

  Immersion im(WarpedSpace(f), map, dom);
  im.with_first_derivatives(du, dv).with_second_derivatives(duu, zero, zero);
  return im;
}

Immersion make_type_iii(const GeneratorSpec& spec) {
  if (!spec.warping.interval().contains(spec.t0)) {
    std::ostringstream os;
    os << "slice height t0 = " << spec.t0
       << " lies outside the warping interval";
    throw DomainError(os.str());
  }
  const double t0 = spec.t0;
  const ParamRect dom = spec.domain ? *spec.domain : default_domain(spec);

  auto map = [t0](double u, double v) -> AmbientPoint { return {t0, u, v}; };
  auto du = [t0](double u, double v) -> AmbientVector {
    return {{t0, u, v}, 0.0, 1.0, 0.0};
  };
  auto dv = [t0](double u, double v) -> AmbientVector {
    return {{t0, u, v}, 0.0, 0.0, 1.0};
  };
  auto zero = [t0](double u, double v) -> AmbientVector {
    return {{t0, u, v}, 0.0, 0.0, 0.0};
  };

  Immersion im(WarpedSpace(spec.warping), map, dom);
  im.with_first_derivatives(du, dv).with_second_derivatives(zero, zero, zero);
  return im;
}

Immersion make_cylinder(const GeneratorSpec& spec) {
  if (std::abs(spec.b0) < 1e-9) {
    throw ConfigError("a cylinder needs a nonzero radius b0");
  }
  const double b0 = spec.b0;
  GeneratorSpec tweaked = spec;
  tweaked.family = Family::TypeII;  // same default height window
  const ParamRect dom =
      spec.domain ? *spec.domain : default_domain(tweaked);

  auto map = [b0](double u, double v) -> AmbientPoint {
    return {u, b0 * std::cos(v), b0 * std::sin(v)};
  };
  auto du = [map](double u, double v) -> AmbientVector {
    return {map(u, v), 1.0, 0.0, 0.0};
  };
  auto dv = [b0, map](double u, double v) -> AmbientVector {
    return {map(u, v), 0.0, -b0 * std::sin(v), b0 * std::cos(v)};
  };
  auto duu = [map](double u, double v) -> AmbientVector {
    return {map(u, v), 0.0, 0.0, 0.0};
  };
  auto duv = duu;
  auto dvv = [b0, map](double u, double v) -> AmbientVector {
    return {map(u, v), 0.0, -b0 * std::cos(v), -b0 * std::sin(v)};
  };

  Immersion im(WarpedSpace(spec.warping), map, dom);
  im.with_first_derivatives(du, dv).with_second_derivatives(duu, duv, dvv);
  return im;
}

Immersion make_rotational(const GeneratorSpec& spec) {
  const Angle ang = resolve_angle(spec.theta);
  require_oblique(ang, "the rotational family");
  if (ang.right) return make_cylinder(spec);

  const WarpingFunction f = spec.warping;
  const double bt = effective_base_t(spec);
  const ParamRect dom = spec.domain ? *spec.domain : default_domain(spec);

  // Construction-time checks: the profile is unit-speed, its slope realizes
  // the requested angle, and the radius stays off the rotation axis.
  {
    const Grid& g = spec.grid;
    for (int i = 0; i < g.nu; ++i) {
      const double u = g.u(dom, i);
      const double t = u * ang.st;
      const double ft = f.value(t);
      const double b = ang.cot * inv_f_integral(f, bt, t);
      const double bprime_f = (ang.ct / ft) * ft;  // b'(u) * f(a(u))
      if (std::abs(ang.st * ang.st + bprime_f * bprime_f - 1.0) > 1e-10 ||
          std::abs(bprime_f - ang.ct) > 1e-10) {
        throw Error("rotational profile lost its arc-length normalization");
      }
      if (std::abs(b) < 1e-9) {
        std::ostringstream os;
        os << "rotational profile touches the axis near u = " << u;
        throw RegularityError(os.str());
      }
    }
  }

  auto map = [f, ang, bt](double u, double v) -> AmbientPoint {
    const double t = u * ang.st;
    const double b = ang.cot * inv_f_integral(f, bt, t);
    return {t, b * std::cos(v), b * std::sin(v)};
  };
  // The radius can be read back off the point, saving a quadrature.
  auto radius = [](const AmbientPoint& p, double v) {
    return p.x * std::cos(v) + p.y * std::sin(v);
  };
  auto du = [f, ang, map](double u, double v) -> AmbientVector {
    const AmbientPoint p = map(u, v);
    const double c = ang.ct / f.value(p.t);
    return {p, ang.st, c * std::cos(v), c * std::sin(v)};
  };
  auto dv = [radius, map](double u, double v) -> AmbientVector {
    const AmbientPoint p = map(u, v);
    const double b = radius(p, v);
    return {p, 0.0, -b * std::sin(v), b * std::cos(v)};
  };
  auto duu = [f, ang, map](double u, double v) -> AmbientVector {
    const AmbientPoint p = map(u, v);
    const double ft = f.value(p.t);
    const double c = -ang.ct * ang.st * f.deriv(p.t) / (ft * ft);
    return {p, 0.0, c * std::cos(v), c * std::sin(v)};
  };
  auto duv = [f, ang, map](double u, double v) -> AmbientVector {
    const AmbientPoint p = map(u, v);
    const double c = ang.ct / f.value(p.t);
    return {p, 0.0, -c * std::sin(v), c * std::cos(v)};
  };
  auto dvv = [radius, map](double u, double v) -> AmbientVector {
    const AmbientPoint p = map(u, v);
    const double b = radius(p, v);
    return {p, 0.0, -b * std::cos(v), -b * std::sin(v)};
  };

  Immersion im(WarpedSpace(f), map, dom);
  im.with_first_derivatives(du, dv).with_second_derivatives(duu, duv, dvv);
  return im;
}

MinimalSurface make_minimal_power(const GeneratorSpec& spec) {
  if (!(spec.m > 0.0 && spec.m < 1.0)) {
    std::ostringstream os;
    os << "the minimal family needs an exponent in (0, 1), got " << spec.m;
    throw ConfigError(os.str());
  }
  const double m = spec.m;
  const double theta = minimal_power_angle(m);
  const Angle ang = resolve_angle(theta);
  const WarpingFunction f =
      WarpingFunction::from_registry("power:" + format_double(m));
  GeneratorSpec sized = spec;
  sized.family = Family::MinimalPower;
  const ParamRect dom = spec.domain ? *spec.domain : default_domain(sized);
  const double coef = ang.cot / (1.0 - m);

  auto map = [ang, m, coef](double u, double v) -> AmbientPoint {
    const double t = u * ang.st;
    const double x = coef * std::pow(t, 1.0 - m);
    return {t, x * std::cos(v), x * std::sin(v)};
  };
  auto du = [ang, m, map](double u, double v) -> AmbientVector {
    const AmbientPoint p = map(u, v);
    const double c = ang.ct * std::pow(p.t, -m);
    return {p, ang.st, c * std::cos(v), c * std::sin(v)};
  };
  auto dv = [map](double u, double v) -> AmbientVector {
    const AmbientPoint p = map(u, v);
    const double x = p.x * std::cos(v) + p.y * std::sin(v);
    return {p, 0.0, -x * std::sin(v), x * std::cos(v)};
  };
  auto duu = [ang, m, map](double u, double v) -> AmbientVector {
    const AmbientPoint p = map(u, v);
    const double c = -m * ang.st * ang.ct * std::pow(p.t, -m - 1.0);
    return {p, 0.0, c * std::cos(v), c * std::sin(v)};
  };
  auto duv = [ang, m, map](double u, double v) -> AmbientVector {
    const AmbientPoint p = map(u, v);
    const double c = ang.ct * std::pow(p.t, -m);
    return {p, 0.0, -c * std::sin(v), c * std::cos(v)};
  };
  auto dvv = [map](double u, double v) -> AmbientVector {
    const AmbientPoint p = map(u, v);
    const double x = p.x * std::cos(v) + p.y * std::sin(v);
    return {p, 0.0, -x * std::cos(v), -x * std::sin(v)};
  };

  Immersion im(WarpedSpace(f), map, dom);
  im.with_first_derivatives(du, dv).with_second_derivatives(duu, duv, dvv);
  return {std::move(im), theta};
}

Immersion make_harmonic_exp(const GeneratorSpec& spec) {
  const Angle ang = resolve_angle(spec.theta);
  if (!(ang.theta > 1e-12) || ang.right || ang.theta > kHalfPi) {
    throw ConfigError("the harmonic family needs an angle in (0, pi/2)");
  }
  const WarpingFunction f = WarpingFunction::from_registry("exp");
  GeneratorSpec sized = spec;
  sized.family = Family::HarmonicExp;
  const ParamRect dom = spec.domain ? *spec.domain : default_domain(sized);
  const double k = ang.cot;

  // Radius profile b(t) = -cot(theta) e^{-t}: the unique rotational profile
  // over f = e^t with b' f = cos(theta) and constant fiber coefficient, which
  // is what makes the height function harmonic.
  auto map = [ang, k](double u, double v) -> AmbientPoint {
    const double t = u * ang.st;
    const double b = -k * std::exp(-t);
    return {t, b * std::cos(v), b * std::sin(v)};
  };
  auto du = [ang, map](double u, double v) -> AmbientVector {
    const AmbientPoint p = map(u, v);
    const double c = ang.ct * std::exp(-p.t);
    return {p, ang.st, c * std::cos(v), c * std::sin(v)};
  };
  auto dv = [map](double u, double v) -> AmbientVector {
    const AmbientPoint p = map(u, v);
    const double b = p.x * std::cos(v) + p.y * std::sin(v);
    return {p, 0.0, -b * std::sin(v), b * std::cos(v)};
  };
  auto duu = [ang, map](double u, double v) -> AmbientVector {
    const AmbientPoint p = map(u, v);
    const double c = -ang.st * ang.ct * std::exp(-p.t);
    return {p, 0.0, c * std::cos(v), c * std::sin(v)};
  };
  auto duv = [ang, map](double u, double v) -> AmbientVector {
    const AmbientPoint p = map(u, v);
    const double c = ang.ct * std::exp(-p.t);
    return {p, 0.0, -c * std::sin(v), c * std::cos(v)};
  };
  auto dvv = [map](double u, double v) -> AmbientVector {
    const AmbientPoint p = map(u, v);
    const double b = p.x * std::cos(v) + p.y * std::sin(v);
    return {p, 0.0, -b * std::cos(v), -b * std::sin(v)};
  };

  Immersion im(WarpedSpace(f), map, dom);
  im.with_first_derivatives(du, dv).with_second_derivatives(duu, duv, dvv);
  return im;
}

Immersion make_surface(const GeneratorSpec& spec) {
  switch (spec.family) {
    case Family::TypeI: return make_type_i(spec);
    case Family::TypeII: return make_type_ii(spec);
    case Family::TypeIII: return make_type_iii(spec);
    case Family::Rotational: return make_rotational(spec);
    case Family::MinimalPower: return make_minimal_power(spec).immersion;
    case Family::HarmonicExp: return make_harmonic_exp(spec);
  }
  throw ConfigError("unhandled surface family");
}

}  // namespace casurf
