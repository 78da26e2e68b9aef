#include <cmath>

#include "elliptic.hpp"
#include "rellich/dtn.hpp"
#include "rellich/errors.hpp"

namespace rellich {

std::string to_string(Backend b) {
  switch (b) {
    case Backend::conformal: return "conformal";
    case Backend::fd: return "fd";
    case Backend::oracle: return "oracle";
  }
  return "unknown";
}

Backend parse_backend(const std::string& name) {
  if (name == "conformal") return Backend::conformal;
  if (name == "fd") return Backend::fd;
  if (name == "oracle") return Backend::oracle;
  throw InputError("unknown backend '" + name + "' (expected conformal or fd)");
}

std::string to_string(BottomCondition b) {
  switch (b) {
    case BottomCondition::zero_dirichlet: return "zero-dirichlet";
    case BottomCondition::zero_neumann: return "zero-neumann";
    case BottomCondition::decay: return "decay";
  }
  return "unknown";
}

BottomCondition parse_bottom_condition(const std::string& name) {
  if (name == "zero-dirichlet") return BottomCondition::zero_dirichlet;
  if (name == "zero-neumann") return BottomCondition::zero_neumann;
  if (name == "decay") return BottomCondition::decay;
  throw InputError("unknown bottom condition '" + name +
                   "' (expected zero-dirichlet, zero-neumann or decay)");
}

BottomCondition EllipticConfig::resolved_bottom(int dim) const {
  if (bottom) return *bottom;
  return dim == 1 ? BottomCondition::decay : BottomCondition::zero_neumann;
}

int EllipticConfig::resolved_order(int dim) const {
  if (order) return *order;
  return dim == 1 ? 6 : 4;
}

double relative_l2_error(const SampledField& a, const SampledField& b) {
  const double denom = l2_norm(b);
  const double num = l2_norm(a - b);
  if (denom == 0.0) return num;
  return num / denom;
}

BVTraces traces_from_dtn(const SurfaceGeometry& s, const SampledField& zeta,
                         const SampledField& g_zeta) {
  if (!(zeta.grid() == s.grid()) || !(g_zeta.grid() == s.grid())) {
    throw InputError("traces_from_dtn: zeta, G(h)zeta and h must share a grid");
  }
  const int d = s.dim();
  std::vector<SampledField> grad_zeta;
  SampledField dot = SampledField::zeros(s.grid());
  for (int axis = 0; axis < d; ++axis) {
    grad_zeta.push_back(derivative(zeta, axis));
    dot = dot + grad_zeta.back() * s.gradient(axis);
  }
  SampledField b = (g_zeta + dot) / (s.slope_sq() + 1.0);
  std::vector<SampledField> v;
  for (int axis = 0; axis < d; ++axis) v.push_back(grad_zeta[axis] - b * s.gradient(axis));
  return {std::move(b), std::move(v)};
}

SampledField gradient_trace_sq(const BoundaryTraces& t) {
  SampledField out = t.b * t.b;
  for (const auto& vi : t.v) out = out + vi * vi;
  return out;
}

SampledField gradient_trace_sq_from_dtn(const BoundaryTraces& t) {
  const SurfaceGeometry& s = t.surface;
  SampledField grad_sq = SampledField::zeros(s.grid());
  SampledField dot = SampledField::zeros(s.grid());
  for (int axis = 0; axis < s.dim(); ++axis) {
    const SampledField gz = derivative(t.zeta, axis);
    grad_sq = grad_sq + gz * gz;
    dot = dot + gz * s.gradient(axis);
  }
  const SampledField w = s.slope_sq() + 1.0;
  return (t.g_zeta * t.g_zeta) / w + grad_sq - (dot * dot) / w;
}

OracleCase harmonic_oracle(const SurfaceGeometry& s, std::array<int, 2> k, Phase phase) {
  if (s.dim() == 1 && k[1] != 0) throw InputError("d = 1 oracle takes a scalar wavenumber");
  if (k[0] == 0 && k[1] == 0) throw InputError("harmonic_oracle needs k != 0");
  const PeriodicGrid& grid = s.grid();
  const double kabs = std::hypot(double(k[0]), double(k[1]));
  const int d = s.dim();

  std::vector<double> zeta(grid.count()), b(grid.count());
  std::vector<std::vector<double>> v(static_cast<std::size_t>(d), std::vector<double>(grid.count()));
  const int m1 = grid.size(0);
  const int m2 = d == 2 ? grid.size(1) : 1;
  for (int i = 0; i < m1; ++i) {
    for (int j = 0; j < m2; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i * m2 + j);
      const double x1 = grid.node(0, i);
      const double x2 = d == 2 ? grid.node(1, j) : 0.0;
      const double arg = k[0] * x1 + k[1] * x2;
      const double trig = phase == Phase::cos ? std::cos(arg) : std::sin(arg);
      const double dtrig = phase == Phase::cos ? -std::sin(arg) : std::cos(arg);
      const double e = std::exp(kabs * s.height()[idx]);
      zeta[idx] = e * trig;
      b[idx] = kabs * e * trig;
      for (int axis = 0; axis < d; ++axis) v[axis][idx] = e * k[axis] * dtrig;
    }
  }

  SampledField zeta_f(grid, std::move(zeta));
  SampledField b_f(grid, std::move(b));
  std::vector<SampledField> v_f;
  SampledField g = b_f;
  for (int axis = 0; axis < d; ++axis) {
    v_f.emplace_back(grid, std::move(v[axis]));
    g = g - s.gradient(axis) * v_f.back();
  }
  SampledField dn = g / s.omega();
  std::optional<SampledField> dt;
  if (d == 1) dt = (v_f[0] + s.gradient(0) * b_f) / s.omega();

  BoundaryTraces exact{s, zeta_f, std::move(g), std::move(b_f), std::move(v_f), std::move(dn),
                       std::move(dt), Backend::oracle};
  return {std::move(zeta_f), std::move(exact)};
}

DtnEngine::DtnEngine(SurfaceGeometry s, BackendOptions opts)
    : surface_(std::move(s)), opts_(std::move(opts)) {
  if (opts_.kind == Backend::oracle) {
    throw InputError("the oracle is not a general-purpose backend");
  }
  if (opts_.kind == Backend::conformal) {
    cb_ = std::make_shared<const ConformalBoundary>(theodorsen_solve(surface_, opts_.conformal));
  } else {
    fd_ = std::make_shared<const detail::EllipticSolver>(surface_, opts_.fd);
  }
}

BoundaryTraces DtnEngine::operator()(const SampledField& zeta) const {
  if (opts_.kind == Backend::conformal) return dtn_conformal(*cb_, surface_, zeta);
  return fd_->solve(zeta);
}

}  // namespace rellich
