#include "rellich/inequalities.hpp"

#include <cmath>
#include <limits>

#include "rellich/errors.hpp"

namespace rellich {
namespace {

constexpr double kFdMeanTol = 1e-4;

SampledField grad_sq(const SurfaceGeometry& s, const SampledField& zeta) {
  SampledField out = SampledField::zeros(s.grid());
  for (int axis = 0; axis < s.dim(); ++axis) {
    const SampledField d = derivative(zeta, axis);
    out = out + d * d;
  }
  return out;
}

SampledField abs_pow(const SampledField& f, double p) {
  return map(f, [p](double v) { return std::pow(std::abs(v), p); });
}

SampledField pow_field(const SampledField& f, double e) {
  return map(f, [e](double v) { return std::pow(v, e); });
}

void require_1d(const BoundaryTraces& t, const char* what) {
  if (t.surface.dim() != 1) throw InputError(std::string(what) + " is only defined for d = 1");
}

}  // namespace

InequalityReport make_inequality_report(std::string name, double p, double lhs, double rhs, double constant,
                                        double tol_rel) {
  InequalityReport r;
  r.name = std::move(name);
  r.p = p;
  r.lhs = lhs;
  r.constant = constant;
  r.rhs_times_constant = constant * rhs;
  r.tol_rel = tol_rel;
  if (r.lhs == 0.0 && r.rhs_times_constant == 0.0) {
    r.ratio = 0.0;
  } else if (r.rhs_times_constant == 0.0) {
    r.ratio = std::numeric_limits<double>::infinity();
  } else {
    r.ratio = r.lhs / r.rhs_times_constant;
  }
  r.pass = r.ratio <= 1.0 + tol_rel;
  return r;
}

IdentityReport make_identity_report(std::string name, double value, double scale, double tol) {
  IdentityReport r;
  r.name = std::move(name);
  r.value = value;
  r.scale = scale;
  r.tol = tol;
  r.normalized = std::abs(value) / std::max(scale, std::numeric_limits<double>::epsilon());
  r.pass = r.normalized <= tol;
  return r;
}

IdentityReport flux_residual(const BoundaryTraces& t, double tol) {
  const SurfaceGeometry& s = t.surface;
  SampledField vv = SampledField::zeros(s.grid());
  SampledField hv = SampledField::zeros(s.grid());
  for (int axis = 0; axis < s.dim(); ++axis) {
    vv = vv + t.v[axis] * t.v[axis];
    hv = hv + s.gradient(axis) * t.v[axis];
  }
  const SampledField bb = t.b * t.b;
  const SampledField cross = 2.0 * (t.b * hv);
  const double value = integrate(bb - vv - cross);
  const double scale = integrate(bb + vv + map(cross, [](double c) { return std::abs(c); }));
  return make_identity_report("flux_residual", value, scale, tol);
}

IdentityReport rellich_identity_1d(const BoundaryTraces& t, double tol) {
  require_1d(t, "rellich_identity_1d");
  const SurfaceGeometry& s = t.surface;
  const SampledField zx = derivative(t.zeta);
  const SampledField w = s.slope_sq() + 1.0;
  const SampledField zz = zx * zx / w;
  const SampledField gg = t.g_zeta * t.g_zeta / w;
  const SampledField cross = 2.0 * (s.gradient(0) * zx * t.g_zeta) / w;
  const double value = integrate(gg - zz + cross);
  const double scale = integrate(gg + zz + map(cross, [](double c) { return std::abs(c); }));
  return make_identity_report("rellich_identity_1d", value, scale, tol);
}

std::array<InequalityReport, 4> check_gradient_trace_bounds(const BoundaryTraces& t, double tol_rel) {
  const SurfaceGeometry& s = t.surface;
  const SampledField gz = grad_sq(s, t.zeta);
  const SampledField w = s.slope_sq() + 1.0;
  const double rhs = integrate(w * w * gz);
  const double slope = s.max_slope();
  const double uniform = 40.0 * std::pow(1.0 + slope * slope, 3);
  return {
      make_inequality_report("normal_trace", 2.0, integrate(t.dn_phi * t.dn_phi), rhs, 40.0, tol_rel),
      make_inequality_report("gradient_trace", 2.0, integrate(gradient_trace_sq(t)), rhs, 41.0, tol_rel),
      make_inequality_report("dtn_weighted", 2.0, integrate(t.g_zeta * t.g_zeta / w), rhs, 40.0, tol_rel),
      make_inequality_report("dtn_uniform", 2.0, integrate(t.g_zeta * t.g_zeta), integrate(gz), uniform,
                             tol_rel),
  };
}

std::array<InequalityReport, 2> check_dtn_tangential_bounds(const BoundaryTraces& t, double tol_rel) {
  require_1d(t, "check_dtn_tangential_bounds");
  const SampledField w = t.surface.slope_sq() + 1.0;
  const SampledField zx = derivative(t.zeta);
  const SampledField gg = t.g_zeta * t.g_zeta;
  const SampledField zz = zx * zx;
  return {
      make_inequality_report("dtn_from_tangential", 2.0, integrate(gg / w), integrate(zz), 4.0, tol_rel),
      make_inequality_report("tangential_from_dtn", 2.0, integrate(zz / w), integrate(gg), 4.0, tol_rel),
  };
}

InequalityReport check_curvature_bound(const DtnEngine& engine, double tol_rel) {
  const SurfaceGeometry& s = engine.surface();
  if (s.dim() != 1) throw InputError("check_curvature_bound is only defined for d = 1");
  const BoundaryTraces t = engine(curvature(s));
  const double mean_tol = engine.options().kind == Backend::fd ? kFdMeanTol : 1e-10;
  const double lhs = h_minus1_norm(t.g_zeta, mean_tol);
  const double rhs = l2_norm(angle_derivative(s));
  return make_inequality_report("curvature_h_minus1", 2.0, lhs, rhs, 2.0, tol_rel);
}

InequalityReport check_curvature_bound(const SurfaceGeometry& s, const BackendOptions& backend,
                                       double tol_rel) {
  if (s.dim() != 1) throw InputError("check_curvature_bound is only defined for d = 1");
  return check_curvature_bound(DtnEngine(s, backend), tol_rel);
}

std::array<InequalityReport, 2> check_weighted_lp_bounds(const BoundaryTraces& t, double p, double tol_rel) {
  require_1d(t, "check_weighted_lp_bounds");
  if (!(p > 1.0 && p <= 2.0)) throw InputError("weighted L^p bounds need 1 < p <= 2");
  if (!t.dt_phi) throw InputError("traces carry no tangential derivative");
  const SampledField& om = t.surface.omega();
  const SampledField low = pow_field(om, 2.0 - p);
  const SampledField high = pow_field(om, p);
  const SampledField n_p = abs_pow(t.dn_phi, p);
  const SampledField t_p = abs_pow(*t.dt_phi, p);

  auto finish = [&](InequalityReport r) {
    const bool finite = std::isfinite(r.ratio);
    r.pass = p == 2.0 ? finite && r.ratio <= 4.0 * (1.0 + tol_rel) : finite;
    return r;
  };
  return {
      finish(make_inequality_report("weighted_lp_w1", p, integrate(n_p * low), integrate(t_p * high), 1.0,
                                    tol_rel)),
      finish(make_inequality_report("weighted_lp_w2", p, integrate(t_p * low), integrate(n_p * high), 1.0,
                                    tol_rel)),
  };
}

ConformalWeights conformal_weights(const ConformalBoundary& cb) {
  SampledField u = zip_map(cb.g, cb.jac, [](double g, double j) { return std::cos(g) / j; });
  SampledField v = zip_map(cb.g, cb.jac, [](double g, double j) { return 1.0 / (std::cos(g) * j); });
  const double umin = u.min(), umax = u.max(), vmin = v.min(), vmax = v.max();
  return {std::move(u), std::move(v), umin, umax, vmin, vmax};
}

std::vector<L1Row> l1_failure_demo(const std::vector<int>& orders, int m) {
  const PeriodicGrid grid = PeriodicGrid::line(m);
  std::vector<L1Row> rows;
  for (int n : orders) {
    if (n < 2) throw InputError("Fejer order must be at least 2");
    if (m < 8 * n) throw InputError("Fejer order " + std::to_string(n) + " is under-resolved on " +
                                    std::to_string(m) + " points (need m >= 8N)");
    const SampledField f = SampledField::sample(grid, [n](double x) {
      double sum = 1.0;
      for (int k = 1; k <= n; ++k) sum += 2.0 * (1.0 - double(k) / (n + 1)) * std::cos(k * x);
      return sum;
    });
    rows.push_back({n, lp_norm(hilbert(f), 1.0) / lp_norm(f, 1.0)});
  }
  return rows;
}

}  // namespace rellich
