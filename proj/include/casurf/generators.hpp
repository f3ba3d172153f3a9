#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "casurf/immersion.hpp"
#include "casurf/warping.hpp"

namespace casurf {

enum class Family { TypeI, TypeII, TypeIII, Rotational, MinimalPower, HarmonicExp };

std::string_view family_name(Family f);
Family family_from_name(std::string_view name);  // ConfigError on unknown

/// The free function alpha(v) of the first surface family: an analytic
/// closure, a parsed expression, or monotone-cubic interpolated samples.
class ProfileFunction {
 public:
  ProfileFunction() : ProfileFunction(zero()) {}

  static ProfileFunction zero();
  static ProfileFunction constant(double c);
  static ProfileFunction expression(std::string_view text);  // may use v only
  static ProfileFunction from_samples(std::vector<double> v,
                                      std::vector<double> alpha);
  static ProfileFunction from_closures(std::function<double(double)> value,
                                       std::function<double(double)> deriv,
                                       std::string label = "closure");

  double value(double v) const { return value_(v); }
  double deriv(double v) const { return deriv_(v); }

  /// False for sampled tables, whose derivative is only interpolation-exact.
  bool analytic() const { return analytic_; }
  const std::string& describe() const { return label_; }

 private:
  ProfileFunction(std::function<double(double)> value,
                  std::function<double(double)> deriv, bool analytic,
                  std::string label)
      : value_(std::move(value)),
        deriv_(std::move(deriv)),
        analytic_(analytic),
        label_(std::move(label)) {}

  std::function<double(double)> value_, deriv_;
  bool analytic_ = true;
  std::string label_;
};

/// Everything needed to build one surface. Optional fields fall back to
/// family-dependent defaults; angles are radians here (the CLI converts).
struct GeneratorSpec {
  Family family = Family::TypeI;
  WarpingFunction warping = WarpingFunction::from_registry("exp");
  double theta = 0.78539816339744831;  // pi/4
  ProfileFunction alpha;               // TypeI only
  double t0 = 0.0;                     // TypeIII only
  double m = 0.5;                      // MinimalPower only
  double b0 = 1.0;                     // cylinder radius for theta = pi/2
  std::optional<double> base_t;        // lower limit of the 1/f integrals
  double base_v = 0.0;                 // lower limit of the alpha integrals
  std::optional<ParamRect> domain;
  Grid grid;
};

/// Lower integration base for the 1/f quadratures: the warping interval's
/// representative interior point unless the spec overrides it.
double effective_base_t(const GeneratorSpec& spec);

/// Family-dependent default parameter rectangle, sized so the height stays
/// one unit inside the warping interval starting 0.25 above the base point.
ParamRect default_domain(const GeneratorSpec& spec);

Immersion make_type_i(const GeneratorSpec& spec);
Immersion make_type_ii(const GeneratorSpec& spec);
Immersion make_type_iii(const GeneratorSpec& spec);
Immersion make_rotational(const GeneratorSpec& spec);

/// Circular cylinder (u, b0 cos v, b0 sin v) — the theta = pi/2 rotational
/// branch, reachable from make_rotational but also exposed directly.
Immersion make_cylinder(const GeneratorSpec& spec);

/// Minimal rotational surface in f(t) = t^m; the angle is forced by m.
struct MinimalSurface {
  Immersion immersion;
  double theta;
};
MinimalSurface make_minimal_power(const GeneratorSpec& spec);
double minimal_power_angle(double m);  // arccos sqrt((1-m)/(1+m))

/// Flat constant-mean-curvature rotational surface in the exponential
/// warping, the one whose height function is harmonic.
Immersion make_harmonic_exp(const GeneratorSpec& spec);

/// Dispatch on spec.family.
Immersion make_surface(const GeneratorSpec& spec);

struct ClassifyOptions {
  double angle_tol_analytic = 1e-6;  // stddev gate, analytic jets
  double angle_tol_fd = 1e-4;        // stddev gate, finite-difference jets
  double type_iii_tol = 1e-6;        // mean angle below this is a slice
  double umbilic_tol_analytic = 1e-6;
  double umbilic_tol_fd = 1e-4;
  double alpha_tol = 1e-4;  // u-independence gate for the recovered profile
};

struct ClassificationReport {
  std::string verdict;  // TYPE_I | TYPE_II | TYPE_III | NOT_CONSTANT_ANGLE
  double theta_hat = 0.0;
  double theta_stddev = 0.0;
  double umbilic_max = 0.0;    // max |k1 - k2| over the grid (scaled)
  double alpha_residual = 0.0; // sup over v of the u-spread of recovered alpha
  std::vector<double> alpha_nodes;   // v samples (TYPE_I only)
  std::vector<double> alpha_values;  // recovered alpha at the samples
  DerivativeMode mode = DerivativeMode::Analytic;
  int nu = 0, nv = 0;
};

/// Decides which family of the classification an immersion belongs to by
/// measuring the angle field, umbilicity, and — for the generic family —
/// recovering the profile function alpha from the fiber coefficient.
ClassificationReport classify(const Immersion& im, const Grid& grid,
                              const ClassifyOptions& opt = {});

}  // namespace casurf
