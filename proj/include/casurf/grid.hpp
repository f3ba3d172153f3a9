#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

namespace casurf {

/// Closed parameter rectangle [u0, u1] x [v0, v1].
struct ParamRect {
  double u0 = 0.0, u1 = 1.0, v0 = 0.0, v1 = 1.0;

  bool contains(double u, double v) const {
    const double su = 1e-9 * std::max(1.0, std::max(std::abs(u0), std::abs(u1)));
    const double sv = 1e-9 * std::max(1.0, std::max(std::abs(v0), std::abs(v1)));
    return u >= u0 - su && u <= u1 + su && v >= v0 - sv && v <= v1 + sv;
  }
};

/// Uniform sample counts per parameter direction.
struct Grid {
  int nu = 64;
  int nv = 64;

  double u(const ParamRect& r, int i) const {
    return nu == 1 ? r.u0 : r.u0 + (r.u1 - r.u0) * i / double(nu - 1);
  }
  double v(const ParamRect& r, int j) const {
    return nv == 1 ? r.v0 : r.v0 + (r.v1 - r.v0) * j / double(nv - 1);
  }
};

/// Worker count: CASURF_THREADS when set (clamped to >= 1), otherwise the
/// hardware concurrency.
int thread_count();

/// Runs fn(row) for row in [0, nrows) across worker threads. Each row writes
/// only its own preallocated slots, so results are identical for any worker
/// count; reductions happen afterwards in index order.
void parallel_rows(int nrows, const std::function<void(int)>& fn);

}  // namespace casurf
