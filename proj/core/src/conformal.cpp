#include "rellich/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rellich/errors.hpp"

namespace rellich {

std::vector<double> ConformalBoundary::x_nodes() const {
  std::vector<double> x(alpha_grid.count());
  for (int j = 0; j < alpha_grid.size(0); ++j) x[j] = alpha_grid.node(0, j) + u[j];
  return x;
}

namespace {

ConformalBoundary solve_on(const SurfaceGeometry& s, const TheodorsenOptions& opts, int oversample) {
  const PeriodicGrid x_grid = s.grid();
  const PeriodicGrid a_grid = PeriodicGrid::line(x_grid.size(0) * oversample);
  const int ma = a_grid.size(0);
  const TrigInterpolant height(s.height());

  std::vector<double> x(ma), vv(ma);
  SampledField u = SampledField::zeros(a_grid);
  SampledField v = SampledField::zeros(a_grid);
  double residual = 0.0;
  int it = 0;
  for (;; ++it) {
    for (int j = 0; j < ma; ++j) x[j] = a_grid.node(0, j) + u[j];
    for (int j = 0; j < ma; ++j) vv[j] = height(x[j]);
    v = SampledField(a_grid, vv);
    const SampledField target = hilbert(v + (-v.mean()));
    residual = (u - target).max_abs();
    if (residual <= opts.tol) break;
    if (it >= opts.max_iter) {
      std::ostringstream msg;
      msg << "theodorsen iteration did not converge in " << opts.max_iter
          << " iterations (residual " << residual << ", relax " << opts.relax << ")";
      throw ConvergenceError(msg.str(), residual, it);
    }
    u = (1.0 - opts.relax) * u + opts.relax * target;
    const double min_xa = 1.0 + derivative(u).min();
    if (!(min_xa > 0.0)) {
      std::ostringstream msg;
      msg << "boundary correspondence lost monotonicity at iteration " << it + 1
          << " (min x_alpha " << min_xa << "); retry with a smaller relax";
      throw MonotonicityError(msg.str());
    }
  }

  SampledField x_alpha = derivative(u) + 1.0;
  SampledField v_alpha = derivative(v);
  SampledField jac = zip_map(x_alpha, v_alpha, [](double a, double b) { return std::hypot(a, b); });
  SampledField g = zip_map(v_alpha, x_alpha, [](double b, double a) { return std::atan2(b, a); });
  if (!(x_alpha.min() > 0.0)) throw MonotonicityError("converged map has x_alpha <= 0");

  std::vector<double> nodes(x_grid.count());
  for (int j = 0; j < x_grid.size(0); ++j) nodes[j] = x_grid.node(0, j);
  std::vector<double> alpha_at_x = invert_monotone_circle_map(u, nodes);

  const double jmin = jac.min(), jmax = jac.max();
  return ConformalBoundary{a_grid,
                           x_grid,
                           std::move(u),
                           std::move(v),
                           std::move(x_alpha),
                           std::move(v_alpha),
                           std::move(jac),
                           std::move(g),
                           std::move(alpha_at_x),
                           residual,
                           it,
                           jmin,
                           jmax};
}

}  // namespace

ConformalBoundary theodorsen_solve(const SurfaceGeometry& s, const TheodorsenOptions& opts) {
  if (s.dim() != 1) throw InputError("conformal boundary maps exist only for d = 1 surfaces");
  if (!(opts.tol > 0.0)) throw InputError("theodorsen tol must be positive");
  if (!(opts.relax > 0.0 && opts.relax <= 1.0)) throw InputError("theodorsen relax must lie in (0, 1]");
  if (opts.max_iter < 1) throw InputError("theodorsen max_iter must be >= 1");
  if (opts.oversample < 1) throw InputError("theodorsen oversample must be >= 1");
  if (opts.max_oversample < opts.oversample) throw InputError("theodorsen max_oversample is below oversample");

  // The map is less smooth than h near steep crests; refine the alpha-grid
  // until the trailing third of u's spectrum is negligible.
  int os = opts.oversample;
  for (;;) {
    ConformalBoundary cb = solve_on(s, opts, os);
    if (os * 2 > opts.max_oversample || tail_energy_fraction(cb.u) <= opts.tail_tol) return cb;
    os *= 2;
  }
}

SampledField pullback(const ConformalBoundary& cb, const SampledField& f_on_x) {
  if (!(f_on_x.grid() == cb.x_grid)) throw InputError("pullback: field is not on the map's x-grid");
  const std::vector<double> x = cb.x_nodes();
  return SampledField(cb.alpha_grid, eval_trig(f_on_x, x));
}

SampledField pushforward(const ConformalBoundary& cb, const SampledField& f_on_alpha) {
  if (!(f_on_alpha.grid() == cb.alpha_grid)) {
    throw InputError("pushforward: field is not on the map's alpha-grid");
  }
  return SampledField(cb.x_grid, eval_trig(f_on_alpha, cb.alpha_at_x));
}

}  // namespace rellich
