#pragma once

#include <Eigen/Dense>
#include <array>
#include <utility>
#include <vector>

#include "casurf/grid.hpp"
#include "casurf/immersion.hpp"
#include "casurf/warped_space.hpp"

namespace casurf {

// Everything the engine knows about the surface at one parameter point.
// Vectors live in the ambient tangent space at `point`; *_coords are the
// components of the same vectors in the (d_u, d_v) coordinate basis.
struct SurfaceGeometry {
  AmbientPoint point{};
  AmbientVector iu{}, iv{};
  Eigen::Matrix2d first_form;

  AmbientVector normal{};  // unit; flipped so cos_theta >= 0 when canonicalized
  double cos_theta = 0.0;
  double theta = 0.0;  // angle between the normal and the slice direction

  AmbientVector T{};        // tangential part of the unit slice-normal field
  AmbientVector e1{}, e2{};  // orthonormal tangent frame, (e1, e2, normal) positive
  bool frame_adapted = false;  // e1 is parallel to T (fails only when theta ~ 0)
  Eigen::Vector2d T_coords, e1_coords, e2_coords;

  Eigen::Matrix2d second_form;
  Eigen::Matrix2d shape;  // first_form^{-1} * second_form, acts on coordinates
  double k1 = 0.0, k2 = 0.0;  // principal curvatures, ascending
  double mean_curvature = 0.0;
  double det_shape = 0.0;       // product of principal curvatures
  double gauss_curvature = 0.0;  // intrinsic value: det_shape + ambient correction

  double signed_beta = 0.0;  // metric pairing of d_v with e2
  double lambda = 0.0;       // normal curvature along e2

  double log_f_prime = 0.0;   // (log f)'(t)
  double log_f_second = 0.0;  // (log f)''(t)
};

struct GeometryOptions {
  // Flip the normal so it makes an acute angle with the slice direction.
  // Leave off for finite-difference work across a grid: the raw orientation
  // varies smoothly while the canonical one may jump across theta = pi/2.
  bool canonicalize = false;
  double regularity_tol = 1e-12;  // |iu x iv| below this (relative) is singular
  double frame_tol = 1e-8;        // |T| below this falls back to e1 ~ iu
};

SurfaceGeometry geometry_at(const Immersion& im, double u, double v,
                            const GeometryOptions& opt = {});

// Individual operations (each is a thin slice of geometry_at).
Eigen::Matrix2d first_fundamental_form(const Immersion& im, double u, double v);
AmbientVector unit_normal(const Immersion& im, double u, double v);  // raw
double normal_angle(const Immersion& im, double u, double v);        // raw, [0, pi]
Eigen::Matrix2d shape_operator(const Immersion& im, double u, double v,
                               const GeometryOptions& opt = {});

struct AdaptedFrame {
  AmbientVector e1, e2, normal;
  Eigen::Vector2d e1_coords, e2_coords;
};
// Frame with e1 along the tangential part of the slice direction.  Throws
// AngleDegenerate when that part vanishes (normal parallel to the slices).
AdaptedFrame adapted_frame(const Immersion& im, double u, double v,
                           const GeometryOptions& opt = {});

// Christoffel symbols of the induced metric, Gamma[k](i,j) = Gamma^k_{ij}.
// First version projects the ambient second derivative onto the tangent plane
// (exact for analytic jets); the second uses centered differences of the
// metric coefficients only, so it is independent of the curvature machinery.
std::array<Eigen::Matrix2d, 2> induced_christoffels(const Immersion& im,
                                                    double u, double v);
std::array<Eigen::Matrix2d, 2> induced_christoffels_fd(const Immersion& im,
                                                       double u, double v);

// Intrinsic curvature three ways.  The first reads it off geometry_at
// (principal curvatures plus the ambient correction), the second evaluates
// the classical determinant formula on finite differences of E, F, G, the
// third differentiates the induced Christoffel symbols.  The latter two need
// room for their stencils and throw DomainError too close to the boundary.
double gauss_curvature_pointwise(const Immersion& im, double u, double v);
double gauss_curvature_metric_fd(const Immersion& im, double u, double v);
double gauss_curvature_connection_fd(const Immersion& im, double u, double v);

// Residuals of the structural equations, normalized by the larger side's
// magnitude (capped below at 1).  The first returns one metric-norm entry per
// choice of the free slot vector; the second returns the difference vector
// collapsed against each coordinate direction.
Eigen::Vector2d gauss_equation_residual(const Immersion& im, double u, double v);
Eigen::Vector2d codazzi_equation_residual(const Immersion& im, double u, double v);

// Laplace-Beltrami of the height function t(u, v) against its closed form in
// terms of the angle, the mean curvature and the warping.  Returns {lhs, rhs}.
std::pair<double, double> laplacian_height(const Immersion& im, double u, double v);

struct ResidualSet {
  double gauss = 0.0, codazzi = 0.0, laplacian = 0.0;
};
ResidualSet residuals_at(const Immersion& im, double u, double v);

// Margin the residual stencils need on each side of (u, v); nodes closer to
// the domain boundary than this cannot carry residuals.
std::pair<double, double> residual_margin(const Immersion& im, double u, double v);

// Isometric image in the upper half-space model (only for the exponential
// warping).  Throws ModelMismatch otherwise.  The map reverses orientation.
struct HalfSpacePoint {
  double x = 0.0, y = 0.0, z = 0.0;
};
HalfSpacePoint to_half_space(const WarpedSpace& space, const AmbientPoint& p);

struct GridGeometry {
  ParamRect rect;
  Grid grid;
  std::vector<SurfaceGeometry> points;   // row-major, index = i * grid.nv + j
  std::vector<ResidualSet> residuals;    // empty unless requested; NaN where
                                         // the stencil would leave the domain

  const SurfaceGeometry& at(int i, int j) const { return points[static_cast<size_t>(i) * grid.nv + j]; }
  bool has_residuals() const { return !residuals.empty(); }
  const ResidualSet& residual(int i, int j) const { return residuals[static_cast<size_t>(i) * grid.nv + j]; }
};

// Evaluate the geometry on a full grid over `rect` (default: the immersion's
// domain).  Rows are processed in parallel; results and any reduction over
// them are written in index order, so the output is identical for any thread
// count.
GridGeometry sweep_grid(const Immersion& im, const Grid& grid,
                        const GeometryOptions& opt = {},
                        bool with_residuals = false);
GridGeometry sweep_grid(const Immersion& im, const ParamRect& rect, const Grid& grid,
                        const GeometryOptions& opt = {},
                        bool with_residuals = false);

}  // namespace casurf
