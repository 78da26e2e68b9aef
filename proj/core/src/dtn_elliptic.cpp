#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "elliptic.hpp"
#include "fft.hpp"
#include "rellich/errors.hpp"

// Harmonic extension on the strip -depth < y < h(x), solved in coordinates
// (x, s) with y = s + h(x) (1 + s/depth), s in [-depth, 0]. The map tapers
// to the identity at the flat bottom, where phi_y = |D| phi closes the
// problem exactly (decay) or a homogeneous condition truncates it.

namespace rellich {
namespace {

using Stencil = std::vector<std::pair<int, double>>;
using RowMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

constexpr std::size_t kMaxUnknowns = std::size_t{1} << 22;
constexpr double kSolveTol = 1e-12;
constexpr int kMaxIterations = 5000;

// Finite-difference weights for the m-th derivative at z from nodes x.
std::vector<double> fornberg(double z, const std::vector<double>& x, int m) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0, c4 = x[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k > 0; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k > 0; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

Stencil drop_zeros(const std::vector<int>& idx, const std::vector<double>& w) {
  double big = 0.0;
  for (double v : w) big = std::max(big, std::abs(v));
  Stencil out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (std::abs(w[i]) > 1e-13 * big) out.emplace_back(idx[i], w[i]);
  }
  return out;
}

// Centered periodic stencil as (offset, weight) pairs.
Stencil periodic_stencil(int m, int order, int deriv) {
  const double h = 2.0 * PeriodicGrid::kPi / m;
  const int half = order / 2;
  std::vector<int> offs;
  std::vector<double> x;
  for (int o = -half; o <= half; ++o) {
    offs.push_back(o);
    x.push_back(o * h);
  }
  return drop_zeros(offs, fornberg(0.0, x, deriv));
}

// Row stencils on n equispaced points, centered where possible and
// one-sided with an extra point near the ends.
std::vector<Stencil> bounded_stencils(int n, double h, int order, int deriv) {
  std::vector<Stencil> rows(n);
  for (int i = 0; i < n; ++i) {
    int npts = order + 1;
    int lo = i - npts / 2;
    int hi = lo + npts - 1;
    if (lo < 0 || hi > n - 1) {
      npts = order + deriv;
      if (lo < 0) {
        lo = 0;
        hi = npts - 1;
      } else {
        hi = n - 1;
        lo = n - npts;
      }
    }
    std::vector<int> idx;
    std::vector<double> x;
    for (int j = lo; j <= hi; ++j) {
      idx.push_back(j);
      x.push_back((j - i) * h);
    }
    rows[i] = drop_zeros(idx, fornberg(0.0, x, deriv));
  }
  return rows;
}

// Symbol of a periodic stencil at wavenumber n.
double stencil_symbol(const Stencil& st, int n, int m) {
  double sum = 0.0;
  for (const auto& [o, w] : st) sum += w * std::cos(2.0 * PeriodicGrid::kPi * n * o / m);
  return sum;
}

// Flat-strip model operator with x-averaged coefficients, inverted mode by
// mode in x with a tridiagonal solve in s.
struct StripModel {
  PeriodicGrid grid = PeriodicGrid::line(8);
  int ny = 0;
  int nmodes = 0;
  BottomCondition bottom = BottomCondition::zero_neumann;
  double ds = 0.0;
  double jbar = 1.0;
  std::vector<double> lambda;
  std::vector<double> kabs;
  std::vector<double> lower, centre, upper;

  Eigen::VectorXd apply_inverse(const Eigen::VectorXd& r) const {
    const std::size_t count = grid.count();
    std::vector<double> slice(count);
    std::vector<std::complex<double>> spec(static_cast<std::size_t>(ny) * nmodes);
    for (int j = 0; j < ny; ++j) {
      for (std::size_t p = 0; p < count; ++p) slice[p] = r[static_cast<Eigen::Index>(p * ny + j)];
      detail::r2c(grid, slice.data(), spec.data() + static_cast<std::size_t>(j) * nmodes);
    }
    std::vector<double> cp(ny);
    std::vector<std::complex<double>> dp(ny);
    for (int q = 0; q < nmodes; ++q) {
      auto at = [&](int j) -> std::complex<double>& { return spec[static_cast<std::size_t>(j) * nmodes + q]; };
      auto coeffs = [&](int j, double& a, double& b, double& c) {
        if (j == ny - 1) {
          a = 0.0, b = 1.0, c = 0.0;
        } else if (j == 0) {
          a = 0.0;
          switch (bottom) {
            case BottomCondition::zero_dirichlet: b = 1.0, c = 0.0; break;
            case BottomCondition::zero_neumann: b = -1.0 / ds, c = 1.0 / ds; break;
            case BottomCondition::decay: b = -1.0 / (ds * jbar) - kabs[q], c = 1.0 / (ds * jbar); break;
          }
        } else {
          a = lower[j], b = centre[j] + lambda[q], c = upper[j];
        }
      };
      double a = 0.0, b = 1.0, c = 0.0;
      coeffs(0, a, b, c);
      cp[0] = c / b;
      dp[0] = at(0) / b;
      for (int j = 1; j < ny; ++j) {
        coeffs(j, a, b, c);
        const double den = b - a * cp[j - 1];
        cp[j] = c / den;
        dp[j] = (at(j) - a * dp[j - 1]) / den;
      }
      at(ny - 1) = dp[ny - 1];
      for (int j = ny - 2; j >= 0; --j) at(j) = dp[j] - cp[j] * at(j + 1);
    }
    Eigen::VectorXd out(r.size());
    const double scale = 1.0 / static_cast<double>(count);
    for (int j = 0; j < ny; ++j) {
      detail::c2r(grid, spec.data() + static_cast<std::size_t>(j) * nmodes, slice.data());
      for (std::size_t p = 0; p < count; ++p) out[static_cast<Eigen::Index>(p * ny + j)] = slice[p] * scale;
    }
    return out;
  }
};

class StripPreconditioner {
 public:
  using StorageIndex = int;
  enum { ColsAtCompileTime = Eigen::Dynamic, MaxColsAtCompileTime = Eigen::Dynamic };

  StripPreconditioner() = default;
  void set_model(std::shared_ptr<const StripModel> m) { model_ = std::move(m); }

  template <typename Mat>
  StripPreconditioner& analyzePattern(const Mat&) { return *this; }
  template <typename Mat>
  StripPreconditioner& factorize(const Mat&) { return *this; }
  template <typename Mat>
  StripPreconditioner& compute(const Mat&) { return *this; }

  Eigen::VectorXd solve(const Eigen::VectorXd& b) const { return model_ ? model_->apply_inverse(b) : b; }
  Eigen::ComputationInfo info() const { return Eigen::Success; }

 private:
  std::shared_ptr<const StripModel> model_;
};

}  // namespace

namespace detail {

struct EllipticSolver::Impl {
  SurfaceGeometry surface;
  int dim = 1;
  int ny = 0;
  double depth = 0.0;
  double ds = 0.0;
  BottomCondition bottom = BottomCondition::decay;
  Stencil ds_top;
  std::vector<double> jac_top;
  RowMatrix a;
  std::shared_ptr<const StripModel> model;

  explicit Impl(const SurfaceGeometry& s) : surface(s) {}
};

EllipticSolver::EllipticSolver(const SurfaceGeometry& s, const EllipticConfig& cfg)
    : impl_(std::make_unique<Impl>(s)) {
  Impl& im = *impl_;
  const PeriodicGrid& grid = s.grid();
  const int d = s.dim();
  const int order = cfg.resolved_order(d);
  const BottomCondition bottom = cfg.resolved_bottom(d);
  if (!(cfg.depth > 0.0) || !std::isfinite(cfg.depth)) throw InputError("fd depth must be positive");
  if (order != 2 && order != 4 && order != 6) throw InputError("fd order must be 2, 4 or 6");
  if (cfg.ny < std::max(8, order + 3)) throw InputError("fd ny too small for the stencil order");
  if (d == 2 && bottom == BottomCondition::decay) {
    throw InputError("the decay bottom condition is only available in d = 1");
  }
  if (!(s.height().max_abs() < cfg.depth / 2.0)) {
    throw InputError("fd depth must exceed twice max|h|");
  }
  const std::size_t count = grid.count();
  const std::size_t unknowns = count * static_cast<std::size_t>(cfg.ny);
  if (unknowns > kMaxUnknowns) {
    std::ostringstream msg;
    msg << "fd grid with " << unknowns << " unknowns exceeds the solver limit";
    throw SolverError(msg.str());
  }

  const int ny = cfg.ny;
  const double depth = cfg.depth;
  const double ds = depth / (ny - 1);
  im.dim = d;
  im.ny = ny;
  im.depth = depth;
  im.ds = ds;
  im.bottom = bottom;

  const int m1 = grid.size(0);
  const int m2 = d == 2 ? grid.size(1) : 1;
  std::vector<Stencil> dx1(d), dxx(d);
  for (int axis = 0; axis < d; ++axis) {
    dx1[axis] = periodic_stencil(grid.size(axis), order, 1);
    dxx[axis] = periodic_stencil(grid.size(axis), order, 2);
  }
  const std::vector<Stencil> dsr = bounded_stencils(ny, ds, order, 1);
  const std::vector<Stencil> dssr = bounded_stencils(ny, ds, order, 2);
  im.ds_top = dsr[ny - 1];

  auto shift = [&](std::size_t p, int axis, int o) -> std::size_t {
    if (d == 1) return static_cast<std::size_t>(((static_cast<int>(p) + o) % m1 + m1) % m1);
    int i1 = static_cast<int>(p) / m2, i2 = static_cast<int>(p) % m2;
    if (axis == 0) i1 = ((i1 + o) % m1 + m1) % m1;
    else i2 = ((i2 + o) % m2 + m2) % m2;
    return static_cast<std::size_t>(i1 * m2 + i2);
  };
  auto col = [&](std::size_t p, int j) { return static_cast<int>(p * ny + j); };

  const SampledField& h = s.height();
  const SampledField& lap = s.laplacian();
  im.jac_top.resize(count);
  for (std::size_t p = 0; p < count; ++p) im.jac_top[p] = 1.0 + h[p] / depth;

  std::vector<double> kernel;
  if (bottom == BottomCondition::decay) {
    kernel.assign(m1, 0.0);
    for (int q = 0; q < m1; ++q) {
      double sum = 0.5 * m1 * std::cos(PeriodicGrid::kPi * q);
      for (int n = 1; n < m1 / 2; ++n) sum += 2.0 * n * std::cos(2.0 * PeriodicGrid::kPi * n * q / m1);
      kernel[q] = sum / m1;
    }
  }

  std::vector<int> outer(unknowns + 1, 0);
  std::vector<int> inner;
  std::vector<double> vals;
  inner.reserve(unknowns * 30);
  vals.reserve(unknowns * 30);
  Stencil row;

  std::vector<double> cbar(ny, 0.0), bbar(ny, 0.0);
  double jbar = 0.0;
  for (std::size_t p = 0; p < count; ++p) jbar += im.jac_top[p];
  jbar /= static_cast<double>(count);

  for (std::size_t p = 0; p < count; ++p) {
    const double jac = im.jac_top[p];
    double grad_sq = 0.0;
    for (int axis = 0; axis < d; ++axis) grad_sq += s.gradient(axis)[p] * s.gradient(axis)[p];
    for (int j = 0; j < ny; ++j) {
      row.clear();
      if (j == ny - 1 || (j == 0 && bottom == BottomCondition::zero_dirichlet)) {
        row.emplace_back(col(p, j), 1.0);
      } else if (j == 0 && bottom == BottomCondition::zero_neumann) {
        for (const auto& [jj, w] : dsr[0]) row.emplace_back(col(p, jj), w);
      } else if (j == 0) {
        for (const auto& [jj, w] : dsr[0]) row.emplace_back(col(p, jj), w / jac);
        for (int l = 0; l < m1; ++l) {
          row.emplace_back(col(static_cast<std::size_t>(l), 0), -kernel[((static_cast<int>(p) - l) % m1 + m1) % m1]);
        }
      } else {
        const double sig = 1.0 + (-depth + j * ds) / depth;
        double ygrad_sq = 0.0;
        for (int axis = 0; axis < d; ++axis) {
          const double ya = s.gradient(axis)[p] * sig;
          ygrad_sq += ya * ya;
          for (const auto& [o, w] : dxx[axis]) row.emplace_back(col(shift(p, axis, o), j), jac * w);
          for (const auto& [o, wx] : dx1[axis]) {
            const std::size_t ps = shift(p, axis, o);
            for (const auto& [jj, ws] : dsr[j]) row.emplace_back(col(ps, jj), -2.0 * ya * wx * ws);
          }
        }
        const double c = (1.0 + ygrad_sq) / jac;
        const double first = 2.0 * grad_sq * sig / (depth * jac) - lap[p] * sig;
        for (const auto& [jj, w] : dsr[j]) row.emplace_back(col(p, jj), first * w);
        for (const auto& [jj, w] : dssr[j]) row.emplace_back(col(p, jj), c * w);
        cbar[j] += c;
        bbar[j] += first;
      }
      std::sort(row.begin(), row.end());
      const std::size_t r = p * ny + j;
      int last = -1;
      for (const auto& [cc, w] : row) {
        if (cc == last) {
          vals.back() += w;
        } else {
          inner.push_back(cc);
          vals.push_back(w);
          last = cc;
        }
      }
      outer[r + 1] = static_cast<int>(inner.size());
    }
  }

  const auto n = static_cast<Eigen::Index>(unknowns);
  im.a = Eigen::Map<const RowMatrix>(n, n, static_cast<Eigen::Index>(inner.size()), outer.data(),
                                     inner.data(), vals.data());

  auto model = std::make_shared<StripModel>();
  model->grid = grid;
  model->ny = ny;
  model->nmodes = d == 1 ? m1 / 2 + 1 : m1 * (m2 / 2 + 1);
  model->bottom = bottom;
  model->ds = ds;
  model->jbar = jbar;
  model->lambda.resize(model->nmodes);
  model->kabs.resize(model->nmodes);
  for (int q = 0; q < model->nmodes; ++q) {
    if (d == 1) {
      model->lambda[q] = jbar * stencil_symbol(dxx[0], q, m1);
      model->kabs[q] = q;
    } else {
      const int n1 = wavenumber(q / (m2 / 2 + 1), m1);
      const int n2 = q % (m2 / 2 + 1);
      model->lambda[q] = jbar * (stencil_symbol(dxx[0], n1, m1) + stencil_symbol(dxx[1], n2, m2));
      model->kabs[q] = std::hypot(double(n1), double(n2));
    }
  }
  model->lower.assign(ny, 0.0);
  model->centre.assign(ny, 0.0);
  model->upper.assign(ny, 0.0);
  for (int j = 1; j < ny - 1; ++j) {
    const double c = cbar[j] / count, b = bbar[j] / count;
    model->lower[j] = c / (ds * ds) - b / (2.0 * ds);
    model->centre[j] = -2.0 * c / (ds * ds);
    model->upper[j] = c / (ds * ds) + b / (2.0 * ds);
  }
  im.model = std::move(model);
}

EllipticSolver::~EllipticSolver() = default;

BoundaryTraces EllipticSolver::solve(const SampledField& zeta) const {
  const Impl& im = *impl_;
  const SurfaceGeometry& s = im.surface;
  if (!(zeta.grid() == s.grid())) throw InputError("zeta and surface live on different grids");
  const std::size_t count = s.grid().count();
  const int ny = im.ny;

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(im.a.rows());
  for (std::size_t p = 0; p < count; ++p) rhs[static_cast<Eigen::Index>(p * ny + ny - 1)] = zeta[p];

  Eigen::BiCGSTAB<RowMatrix, StripPreconditioner> solver;
  solver.preconditioner().set_model(im.model);
  solver.setTolerance(kSolveTol);
  solver.setMaxIterations(kMaxIterations);
  solver.compute(im.a);
  const Eigen::VectorXd psi = solver.solveWithGuess(rhs, im.model->apply_inverse(rhs));
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "fd iterative solve failed after " << solver.iterations() << " iterations (error "
        << solver.error() << ")";
    throw SolverError(msg.str());
  }
  if (std::getenv("RELLICH_FD_TRACE")) {
    std::fprintf(stderr, "fd solve: %ld iterations, error %.3e\n", static_cast<long>(solver.iterations()),
                 solver.error());
  }

  std::vector<double> b(count);
  for (std::size_t p = 0; p < count; ++p) {
    double sum = 0.0;
    for (const auto& [jj, w] : im.ds_top) sum += w * psi[static_cast<Eigen::Index>(p * ny + jj)];
    b[p] = sum / im.jac_top[p];
  }
  SampledField bf(s.grid(), std::move(b));
  std::vector<SampledField> v;
  SampledField g = bf;
  for (int axis = 0; axis < im.dim; ++axis) {
    v.push_back(derivative(zeta, axis) - bf * s.gradient(axis));
    g = g - s.gradient(axis) * v.back();
  }
  SampledField dn = g / s.omega();
  std::optional<SampledField> dt;
  if (im.dim == 1) dt = (v[0] + s.gradient(0) * bf) / s.omega();
  return BoundaryTraces{s, zeta, std::move(g), std::move(bf), std::move(v), std::move(dn), std::move(dt),
                        Backend::fd};
}

}  // namespace detail

BoundaryTraces dtn_elliptic(const SurfaceGeometry& s, const SampledField& zeta, const EllipticConfig& cfg) {
  if (!(zeta.grid() == s.grid())) throw InputError("zeta and surface live on different grids");
  return detail::EllipticSolver(s, cfg).solve(zeta);
}

}  // namespace rellich
