#pragma once

// Derivative-free search for large inequality ratios over Fourier
// parametrized surfaces and data.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rellich/dtn.hpp"
#include "rellich/inequalities.hpp"

namespace rellich {

enum class Inequality {
  normal_trace,
  gradient_trace,
  dtn_weighted,
  dtn_uniform,
  dtn_from_tangential,
  tangential_from_dtn,
  curvature_h_minus1,
  weighted_lp_w1,
  weighted_lp_w2,
};

std::string to_string(Inequality q);
Inequality parse_inequality(const std::string& name);
std::vector<Inequality> all_inequalities();

/// True for the inequalities with an explicit proven constant, where a
/// ratio above 1 can only come from a numerical defect.
bool has_proven_constant(Inequality q);

/// 0.75 for the conformal backend, 3.0 for finite differences.
double default_slope_cap(Backend b);

struct FourierParams {
  FourierSpec h;
  FourierSpec zeta;
  double slope_cap = 0.75;
};

struct ObjectiveContext {
  Inequality ineq = Inequality::dtn_from_tangential;
  double p = 2.0;
  BackendOptions backend;
  PeriodicGrid grid = PeriodicGrid::line(128);
  double tol_rel = 1e-6;
};

struct ObjectiveValue {
  double ratio = 0.0;
  /// Slope cap exceeded or the conformal solve failed; ratio is then 0.
  bool rejected = false;
};

/// Ratio of the selected inequality for (h, zeta). Wavenumbers must be
/// nonzero (h has fixed mean 0).
ObjectiveValue objective(const FourierParams& params, const ObjectiveContext& ctx);

struct SearchOptions {
  int n_modes_h = 2;
  int n_modes_zeta = 2;
  int budget = 500;
  std::uint64_t seed = 0;
  double slope_cap = 0.75;
  /// Half-width of the coefficient box.
  double box = 0.5;
};

struct SearchResult {
  FourierParams best_params;
  double best_ratio = 0.0;
  /// (evaluation index, best ratio so far) after every evaluation.
  std::vector<std::pair<int, double>> trace;
  int evaluations = 0;
  int rejected = 0;
  int restarts = 0;
};

/// Nelder-Mead restarts from Latin-hypercube seeds in the coefficient box,
/// maximizing the ratio. Deterministic for a given seed. Throws
/// AnomalyError if an inequality with a proven constant exceeds 1 + 1e-6.
SearchResult optimize(const ObjectiveContext& ctx, const SearchOptions& opts);

struct SweepRow {
  double amplitude;
  int wavenumber;
  double ratio;
  bool rejected;
};

/// h = a cos(k x) over the grid product (amplitude-major order) with fixed
/// data zeta.
std::vector<SweepRow> sweep(const std::vector<double>& amplitudes, const std::vector<int>& wavenumbers,
                            const ObjectiveContext& ctx, const FourierSpec& zeta = {{{1, 0}, 1.0, 0.0}},
                            double slope_cap = 1e300);

}  // namespace rellich
