#pragma once

#include <vector>

#include "rellich/spectral.hpp"
#include "rellich/surface.hpp"

namespace rellich {

struct TheodorsenOptions {
  double tol = 1e-12;
  int max_iter = 5000;
  /// Under-relaxation in (0, 1].
  double relax = 0.5;
  /// The alpha-grid carries oversample * M points for an M-point surface.
  int oversample = 2;
  /// The alpha-grid is doubled, up to max_oversample * M points, while the
  /// trailing third of the spectrum of u carries more than tail_tol of its energy.
  int max_oversample = 16;
  double tail_tol = 1e-28;
};

/// Boundary trace Z(alpha) = alpha + u(alpha) + i v(alpha) of the periodic
/// conformal map from the lower half-plane onto the region below the graph,
/// normalized by Z(alpha + 2 pi) = Z(alpha) + 2 pi and mean(u) = 0.
struct ConformalBoundary {
  PeriodicGrid alpha_grid;
  /// Grid of the surface this map was built from.
  PeriodicGrid x_grid;
  SampledField u;
  SampledField v;
  SampledField x_alpha;
  SampledField v_alpha;
  /// |Z_alpha|
  SampledField jac;
  /// Im log Z_alpha, the boundary angle in alpha.
  SampledField g;
  /// alpha(x_j) on the nodes of x_grid.
  std::vector<double> alpha_at_x;
  double residual = 0.0;
  int iterations = 0;
  double jac_min = 0.0;
  double jac_max = 0.0;

  /// x(alpha_j) = alpha_j + u_j.
  std::vector<double> x_nodes() const;
};

/// Fixed point u <- (1 - relax) u + relax H[h(id + u) - mean]. Throws
/// ConvergenceError after max_iter and MonotonicityError if an iterate
/// produces x_alpha <= 0.
ConformalBoundary theodorsen_solve(const SurfaceGeometry& s, const TheodorsenOptions& opts = {});

/// zeta(x) -> zeta(x(alpha)) on the alpha-grid.
SampledField pullback(const ConformalBoundary& cb, const SampledField& f_on_x);
/// f(alpha) -> f(alpha(x)) on the x-grid.
SampledField pushforward(const ConformalBoundary& cb, const SampledField& f_on_alpha);

}  // namespace rellich
