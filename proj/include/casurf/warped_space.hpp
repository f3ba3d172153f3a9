#pragma once

#include "casurf/ambient.hpp"
#include "casurf/warping.hpp"

namespace casurf {

/// The warped product metric dt^2 + f(t)^2 (dx^2 + dy^2) together with its
/// Levi-Civita connection and curvature tensor.
///
/// Christoffel symbols (all others vanish):
///   G^t_xx = G^t_yy = -f f',   G^x_tx = G^x_xt = G^y_ty = G^y_yt = f'/f.
class WarpedSpace {
 public:
  explicit WarpedSpace(WarpingFunction w) : warping_(std::move(w)) {}

  const WarpingFunction& warping() const { return warping_; }

  /// g(a, b) at the common base point. BaseMismatch if the bases differ.
  double metric(const AmbientVector& a, const AmbientVector& b) const;
  double norm(const AmbientVector& a) const;

  /// Metric cross product: g(a x b, c) = f^2 det(a, b, c). Orthogonal to both
  /// factors, |a x b|^2 = |a|^2 |b|^2 - g(a,b)^2.
  AmbientVector warped_cross(const AmbientVector& a,
                             const AmbientVector& b) const;

  /// Connection correction term: components of Gamma(a, b) at the common base.
  AmbientVector christoffel(const AmbientVector& a, const AmbientVector& b) const;

  /// Covariant derivative of a vector field along `direction`, evaluated at
  /// direction.base. Field components are differentiated by central
  /// differences along the straight coordinate line through the base point.
  AmbientVector covariant_derivative(const AmbientVectorField& field,
                                     const AmbientVector& direction) const;

  /// R(u, v)w via the block decomposition of the curvature tensor into its
  /// fiber/axis parts. Sign convention: R(u,v) = [D_u, D_v] - D_[u,v].
  AmbientVector curvature(const AmbientVector& u, const AmbientVector& v,
                          const AmbientVector& w) const;

  /// Same tensor assembled from the coordinate formula
  ///   R^l_ijk = d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik,
  /// as an independent computation path.
  AmbientVector curvature_from_christoffel(const AmbientVector& u,
                                           const AmbientVector& v,
                                           const AmbientVector& w) const;

  /// Sectional curvature of span(a, b). DegeneratePlane when the plane is
  /// numerically degenerate.
  double sectional_curvature(const AmbientVector& a,
                             const AmbientVector& b) const;

 private:
  void require_same_base(const AmbientVector& a, const AmbientVector& b) const;

  WarpingFunction warping_;
};

}  // namespace casurf
