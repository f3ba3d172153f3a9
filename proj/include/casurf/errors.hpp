#pragma once

#include <stdexcept>
#include <string>

namespace casurf {

/// Common base so call sites can catch everything the library throws.
/// The kind tag is baked into what() so CLI errors stay greppable.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
  Error(const std::string& kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg) {}
};

#define CASURF_ERROR_KIND(Name)                                      \
  struct Name : Error {                                              \
    explicit Name(const std::string& msg) : Error(#Name, msg) {}     \
  }

/// Evaluation outside a warping interval or parameter rectangle.
CASURF_ERROR_KIND(DomainError);

/// Two vectors were combined at different base points.
CASURF_ERROR_KIND(BaseMismatch);

/// Sectional curvature requested for a (numerically) degenerate 2-plane.
CASURF_ERROR_KIND(DegeneratePlane);

/// The differential dropped rank at the evaluation point.
CASURF_ERROR_KIND(DegenerateImmersion);

/// Adapted frame requested where the tangential part of the axis vanishes.
CASURF_ERROR_KIND(AngleDegenerate);

/// A generator was asked for a surface that is singular on the requested grid.
CASURF_ERROR_KIND(RegularityError);

/// Adaptive quadrature could not reach the requested tolerance.
CASURF_ERROR_KIND(NonConvergence);

/// Half-space operations need the exponential warping.
CASURF_ERROR_KIND(ModelMismatch);

/// Classification needs at least an 8x8 sample grid.
CASURF_ERROR_KIND(GridTooSmall);

/// Malformed config files, registry strings, expressions or CLI input.
CASURF_ERROR_KIND(ConfigError);

#undef CASURF_ERROR_KIND

}  // namespace casurf
