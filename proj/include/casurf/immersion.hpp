#pragma once

#include <functional>
#include <utility>

#include "casurf/grid.hpp"
#include "casurf/warped_space.hpp"

namespace casurf {

enum class DerivativeMode { Analytic, FiniteDifference };

/// A parametrized surface patch (u, v) -> (t, x, y) in a warped product.
/// Derivatives come from attached closures when present, otherwise from
/// central differences of the map (one-sided at the rectangle boundary).
class Immersion {
 public:
  using MapFn = std::function<AmbientPoint(double, double)>;
  using DerivFn = std::function<AmbientVector(double, double)>;

  Immersion(WarpedSpace space, MapFn map, ParamRect domain)
      : space_(std::move(space)), map_(std::move(map)), domain_(domain) {}

  Immersion& with_first_derivatives(DerivFn du, DerivFn dv) {
    du_ = std::move(du);
    dv_ = std::move(dv);
    return *this;
  }
  Immersion& with_second_derivatives(DerivFn duu, DerivFn duv, DerivFn dvv) {
    duu_ = std::move(duu);
    duv_ = std::move(duv);
    dvv_ = std::move(dvv);
    return *this;
  }

  /// Copy that ignores all attached derivative closures.
  Immersion with_finite_differences() const {
    return Immersion(space_, map_, domain_);
  }

  DerivativeMode mode() const {
    return du_ ? DerivativeMode::Analytic : DerivativeMode::FiniteDifference;
  }

  /// Position. DomainError outside the parameter rectangle.
  AmbientPoint at(double u, double v) const;

  AmbientVector d_u(double u, double v) const;
  AmbientVector d_v(double u, double v) const;

  /// Second partial: (i, j) over {0: u, 1: v}, e.g. d2(u,v,0,1) is the mixed
  /// partial. Falls back to differences of first derivatives, then of the map.
  AmbientVector d2(double u, double v, int i, int j) const;

  const ParamRect& domain() const { return domain_; }
  const WarpedSpace& space() const { return space_; }

 private:
  AmbientPoint eval(double u, double v) const { return map_(u, v); }
  AmbientVector fd_first(double u, double v, int dir) const;

  WarpedSpace space_;
  MapFn map_;
  ParamRect domain_;
  DerivFn du_, dv_, duu_, duv_, dvv_;
};

}  // namespace casurf
