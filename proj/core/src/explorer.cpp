#include "rellich/explorer.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <exception>
#include <functional>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>

#include "rellich/errors.hpp"
#include "rellich/parallel.hpp"
#include "rellich/suites.hpp"

namespace rellich {
namespace {

constexpr double kAnomalyTol = 1e-6;
constexpr int kEvalsPerRestart = 100;
constexpr double kSimplexSizeTol = 1e-7;

const std::vector<std::pair<Inequality, const char*>>& names() {
  static const std::vector<std::pair<Inequality, const char*>> table = {
      {Inequality::normal_trace, "normal_trace"},
      {Inequality::gradient_trace, "gradient_trace"},
      {Inequality::dtn_weighted, "dtn_weighted"},
      {Inequality::dtn_uniform, "dtn_uniform"},
      {Inequality::dtn_from_tangential, "dtn_from_tangential"},
      {Inequality::tangential_from_dtn, "tangential_from_dtn"},
      {Inequality::curvature_h_minus1, "curvature_h_minus1"},
      {Inequality::weighted_lp_w1, "weighted_lp_w1"},
      {Inequality::weighted_lp_w2, "weighted_lp_w2"},
  };
  return table;
}

double select_ratio(const DtnEngine& engine, const SampledField& zeta, const ObjectiveContext& ctx) {
  switch (ctx.ineq) {
    case Inequality::curvature_h_minus1:
      return check_curvature_bound(engine, ctx.tol_rel).ratio;
    case Inequality::normal_trace:
    case Inequality::gradient_trace:
    case Inequality::dtn_weighted:
    case Inequality::dtn_uniform: {
      const auto r = check_gradient_trace_bounds(engine(zeta), ctx.tol_rel);
      return r[static_cast<int>(ctx.ineq) - static_cast<int>(Inequality::normal_trace)].ratio;
    }
    case Inequality::dtn_from_tangential:
    case Inequality::tangential_from_dtn: {
      const auto r = check_dtn_tangential_bounds(engine(zeta), ctx.tol_rel);
      return r[ctx.ineq == Inequality::dtn_from_tangential ? 0 : 1].ratio;
    }
    case Inequality::weighted_lp_w1:
    case Inequality::weighted_lp_w2: {
      const auto r = check_weighted_lp_bounds(engine(zeta), ctx.p, ctx.tol_rel);
      return r[ctx.ineq == Inequality::weighted_lp_w1 ? 0 : 1].ratio;
    }
  }
  throw InputError("unknown inequality");
}

void check_wavenumbers(const FourierSpec& spec, const char* what) {
  for (const auto& m : spec) {
    if (m.k[0] == 0 && m.k[1] == 0) throw InputError(std::string(what) + " wavenumbers must be nonzero");
  }
}

std::string describe(const FourierParams& p) {
  std::ostringstream out;
  out.precision(17);
  auto dump = [&](const FourierSpec& s) {
    out << "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
      out << (i ? ", " : "") << "(" << s[i].k[0] << "," << s[i].k[1] << "; " << s[i].cos_coeff << ", "
          << s[i].sin_coeff << ")";
    }
    out << "]";
  };
  out << "h = ";
  dump(p.h);
  out << ", zeta = ";
  dump(p.zeta);
  return out.str();
}

struct SearchState {
  const ObjectiveContext* ctx = nullptr;
  const SearchOptions* opts = nullptr;
  int n_h_params = 0;
  int dim = 0;
  int limit = 0;
  SearchResult result;
  std::exception_ptr error;

  FourierParams decode(const double* x) const {
    FourierParams p;
    p.slope_cap = opts->slope_cap;
    auto clamp = [this](double v) { return std::clamp(v, -opts->box, opts->box); };
    for (int k = 1; 2 * k <= n_h_params; ++k) p.h.push_back({{k, 0}, clamp(x[2 * k - 2]), clamp(x[2 * k - 1])});
    const double* z = x + n_h_params;
    for (int k = 1; k <= opts->n_modes_zeta; ++k) p.zeta.push_back({{k, 0}, clamp(z[2 * k - 2]), clamp(z[2 * k - 1])});
    return p;
  }

  // Negated ratio for the minimizer; evaluations past the limit are not
  // performed and report the worst value.
  double evaluate(const double* x) {
    if (error || result.evaluations >= limit) return 0.0;
    try {
      const FourierParams p = decode(x);
      const ObjectiveValue v = objective(p, *ctx);
      if (has_proven_constant(ctx->ineq) && v.ratio > 1.0 + kAnomalyTol) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "anomaly: " << to_string(ctx->ineq) << " ratio " << v.ratio << " exceeds 1 + " << kAnomalyTol
            << " at " << describe(p);
        throw AnomalyError(msg.str(), v.ratio);
      }
      const int index = result.evaluations++;
      if (v.rejected) ++result.rejected;
      if (index == 0 || v.ratio > result.best_ratio) {
        result.best_ratio = v.ratio;
        result.best_params = p;
      }
      result.trace.emplace_back(index, result.best_ratio);
      return -v.ratio;
    } catch (...) {
      error = std::current_exception();
      return 0.0;
    }
  }
};

double gsl_objective(const gsl_vector* v, void* params) {
  auto* st = static_cast<SearchState*>(params);
  std::vector<double> x(v->size);
  for (std::size_t i = 0; i < v->size; ++i) x[i] = gsl_vector_get(v, i);
  return st->evaluate(x.data());
}

void run_simplex(SearchState& st, const std::vector<double>& start) {
  const auto n = static_cast<std::size_t>(st.dim);
  gsl_multimin_function fn{&gsl_objective, n, &st};
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> x0(gsl_vector_alloc(n), &gsl_vector_free);
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> step(gsl_vector_alloc(n), &gsl_vector_free);
  for (std::size_t i = 0; i < n; ++i) gsl_vector_set(x0.get(), i, start[i]);
  gsl_vector_set_all(step.get(), 0.2 * st.opts->box);
  std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> m(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n), &gsl_multimin_fminimizer_free);
  if (gsl_multimin_fminimizer_set(m.get(), &fn, x0.get(), step.get()) != GSL_SUCCESS) return;
  while (!st.error && st.result.evaluations < st.limit) {
    if (gsl_multimin_fminimizer_iterate(m.get()) != GSL_SUCCESS) break;
    if (gsl_multimin_fminimizer_size(m.get()) < kSimplexSizeTol) break;
  }
}

}  // namespace

std::string to_string(Inequality q) {
  for (const auto& [v, n] : names())
    if (v == q) return n;
  return "unknown";
}

Inequality parse_inequality(const std::string& name) {
  for (const auto& [v, n] : names())
    if (name == n) return v;
  std::string known;
  for (const auto& [v, n] : names()) known += (known.empty() ? "" : ", ") + std::string(n);
  throw InputError("unknown inequality '" + name + "' (expected one of " + known + ")");
}

std::vector<Inequality> all_inequalities() {
  std::vector<Inequality> out;
  for (const auto& [v, n] : names()) out.push_back(v);
  return out;
}

bool has_proven_constant(Inequality q) {
  return q != Inequality::weighted_lp_w1 && q != Inequality::weighted_lp_w2;
}

double default_slope_cap(Backend b) { return b == Backend::fd ? 3.0 : 0.75; }

ObjectiveValue objective(const FourierParams& params, const ObjectiveContext& ctx) {
  check_wavenumbers(params.h, "surface");
  check_wavenumbers(params.zeta, "data");
  const SurfaceGeometry s = build_surface(ctx.grid, params.h);
  if (s.max_slope() > params.slope_cap) return {0.0, true};
  const SampledField zeta = synthesize(ctx.grid, params.zeta);
  try {
    const DtnEngine engine(s, ctx.backend);
    return {select_ratio(engine, zeta, ctx), false};
  } catch (const ConvergenceError&) {
    return {0.0, true};
  } catch (const MonotonicityError&) {
    return {0.0, true};
  }
}

SearchResult optimize(const ObjectiveContext& ctx, const SearchOptions& opts) {
  if (opts.budget < 50) throw InputError("search budget must be at least 50 evaluations");
  if (opts.n_modes_h < 0 || opts.n_modes_zeta < 1) throw InputError("need n_modes_h >= 0 and n_modes_zeta >= 1");
  if (!(opts.box > 0.0)) throw InputError("coefficient box must be positive");
  if (!(opts.slope_cap >= 0.0)) throw InputError("slope cap must be nonnegative");

  static const bool handler_off = (gsl_set_error_handler_off(), true);
  (void)handler_off;

  SearchState st;
  st.ctx = &ctx;
  st.opts = &opts;
  st.n_h_params = opts.slope_cap > 0.0 ? 2 * opts.n_modes_h : 0;
  st.dim = st.n_h_params + 2 * opts.n_modes_zeta;

  const int restarts = std::max(1, opts.budget / kEvalsPerRestart);
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<double>> seeds(restarts, std::vector<double>(st.dim));
  for (int j = 0; j < st.dim; ++j) {
    std::vector<int> strata(restarts);
    std::iota(strata.begin(), strata.end(), 0);
    std::shuffle(strata.begin(), strata.end(), rng);
    for (int r = 0; r < restarts; ++r) {
      seeds[r][j] = opts.box * (2.0 * (strata[r] + unit(rng)) / restarts - 1.0);
    }
  }

  // Pull the surface part of each seed toward h = 0 until it meets the
  // slope cap, so every restart starts inside the feasible region.
  for (auto& seed : seeds) {
    for (int shrink = 0; shrink < 60 && st.n_h_params > 0; ++shrink) {
      if (spec_max_slope(st.decode(seed.data()).h, ctx.grid.dim()) <= opts.slope_cap) break;
      for (int j = 0; j < st.n_h_params; ++j) seed[j] *= 0.5;
    }
  }

  for (int r = 0; r < restarts && st.result.evaluations < opts.budget; ++r) {
    const int remaining = opts.budget - st.result.evaluations;
    st.limit = st.result.evaluations + remaining / (restarts - r);
    if (r == restarts - 1) st.limit = opts.budget;
    run_simplex(st, seeds[r]);
    ++st.result.restarts;
    if (st.error) std::rethrow_exception(st.error);
  }
  return std::move(st.result);
}

std::vector<SweepRow> sweep(const std::vector<double>& amplitudes, const std::vector<int>& wavenumbers,
                            const ObjectiveContext& ctx, const FourierSpec& zeta, double slope_cap) {
  for (int k : wavenumbers)
    if (k < 1) throw InputError("sweep wavenumbers must be >= 1");
  std::vector<SweepRow> rows(amplitudes.size() * wavenumbers.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    const double a = amplitudes[i / wavenumbers.size()];
    const int k = wavenumbers[i % wavenumbers.size()];
    FourierParams p;
    if (a != 0.0) p.h = {{{k, 0}, a, 0.0}};
    p.zeta = zeta;
    p.slope_cap = slope_cap;
    const ObjectiveValue v = objective(p, ctx);
    rows[i] = {a, k, v.ratio, v.rejected};
  });
  return rows;
}

}  // namespace rellich
