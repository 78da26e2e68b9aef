#include "rellich/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "fft.hpp"
#include "rellich/errors.hpp"

namespace rellich {
namespace {

constexpr double kTwoPi = 2.0 * PeriodicGrid::kPi;

void check_size(int m) {
  if (m < 8 || m % 2 != 0) {
    throw InputError("grid size must be even and >= 8, got " + std::to_string(m));
  }
}

void require_dim1(const SampledField& f, const char* op) {
  if (f.grid().dim() != 1) throw InputError(std::string(op) + " requires a d = 1 field");
}

void require_same_grid(const SampledField& a, const SampledField& b) {
  if (!(a.grid() == b.grid())) throw InputError("fields live on different grids");
}

// Multiplies every stored coefficient by symbol(n1, n2); n2 is unused in d = 1.
template <class Symbol>
SampledField apply_symbol(const SampledField& f, Symbol&& symbol) {
  Spectrum s = forward(f);
  const PeriodicGrid& g = f.grid();
  auto raw = s.raw();
  if (g.dim() == 1) {
    for (int j = 0; j < s.half_size(); ++j) raw[j] *= symbol(j, 0);
  } else {
    const int m1 = g.size(0);
    for (int i1 = 0; i1 < m1; ++i1) {
      const int n1 = wavenumber(i1, m1);
      for (int j2 = 0; j2 < s.half_size(); ++j2) raw[i1 * s.half_size() + j2] *= symbol(n1, j2);
    }
  }
  return inverse(s);
}

}  // namespace

// ---------------------------------------------------------------------------
// PeriodicGrid

PeriodicGrid::PeriodicGrid(int dim, std::array<int, 2> sizes) : dim_(dim), sizes_(sizes) {}

PeriodicGrid PeriodicGrid::line(int m) {
  check_size(m);
  return PeriodicGrid(1, {m, 1});
}

PeriodicGrid PeriodicGrid::plane(int m1, int m2) {
  check_size(m1);
  check_size(m2);
  return PeriodicGrid(2, {m1, m2});
}

int PeriodicGrid::size(int axis) const {
  if (axis < 0 || axis >= dim_) {
    throw InputError("axis " + std::to_string(axis) + " out of range for d = " + std::to_string(dim_));
  }
  return sizes_[static_cast<std::size_t>(axis)];
}

std::size_t PeriodicGrid::count() const noexcept {
  return static_cast<std::size_t>(sizes_[0]) * static_cast<std::size_t>(dim_ == 2 ? sizes_[1] : 1);
}

// ---------------------------------------------------------------------------
// SampledField

SampledField::SampledField(PeriodicGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.count()) {
    throw InputError("field has " + std::to_string(values_.size()) + " samples, grid expects " +
                     std::to_string(grid_.count()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InputError("field contains a non-finite sample");
  }
}

SampledField SampledField::zeros(const PeriodicGrid& grid) { return constant(grid, 0.0); }

SampledField SampledField::constant(const PeriodicGrid& grid, double c) {
  return SampledField(grid, std::vector<double>(grid.count(), c));
}

SampledField SampledField::sample(const PeriodicGrid& grid, const std::function<double(double)>& f) {
  if (grid.dim() != 1) throw InputError("one-argument sampler needs a d = 1 grid");
  std::vector<double> v(grid.count());
  for (int j = 0; j < grid.size(0); ++j) v[j] = f(grid.node(0, j));
  return SampledField(grid, std::move(v));
}

SampledField SampledField::sample(const PeriodicGrid& grid,
                                  const std::function<double(double, double)>& f) {
  if (grid.dim() != 2) throw InputError("two-argument sampler needs a d = 2 grid");
  const int m1 = grid.size(0), m2 = grid.size(1);
  std::vector<double> v(grid.count());
  for (int i = 0; i < m1; ++i)
    for (int j = 0; j < m2; ++j) v[i * m2 + j] = f(grid.node(0, i), grid.node(1, j));
  return SampledField(grid, std::move(v));
}

double SampledField::mean() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

double SampledField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double SampledField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double SampledField::max() const { return *std::max_element(values_.begin(), values_.end()); }

SampledField zip_map(const SampledField& a, const SampledField& b,
                     const std::function<double(double, double)>& fn) {
  require_same_grid(a, b);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = fn(a[i], b[i]);
  return SampledField(a.grid(), std::move(out));
}

SampledField map(const SampledField& a, const std::function<double(double)>& fn) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = fn(a[i]);
  return SampledField(a.grid(), std::move(out));
}

SampledField operator+(const SampledField& a, const SampledField& b) {
  return zip_map(a, b, [](double x, double y) { return x + y; });
}
SampledField operator-(const SampledField& a, const SampledField& b) {
  return zip_map(a, b, [](double x, double y) { return x - y; });
}
SampledField operator*(const SampledField& a, const SampledField& b) {
  return zip_map(a, b, [](double x, double y) { return x * y; });
}
SampledField operator/(const SampledField& a, const SampledField& b) {
  return zip_map(a, b, [](double x, double y) { return x / y; });
}
SampledField operator*(double c, const SampledField& a) {
  return map(a, [c](double x) { return c * x; });
}
SampledField operator+(const SampledField& a, double c) {
  return map(a, [c](double x) { return x + c; });
}
SampledField operator-(const SampledField& a) {
  return map(a, [](double x) { return -x; });
}

// ---------------------------------------------------------------------------
// Spectrum

Spectrum::Spectrum(PeriodicGrid grid)
    : grid_(grid),
      half_(grid.size(grid.dim() - 1) / 2 + 1),
      coeffs_(static_cast<std::size_t>(half_) * (grid.dim() == 2 ? grid.size(0) : 1)) {}

std::complex<double> Spectrum::at(int n) const {
  if (grid_.dim() != 1) throw InputError("Spectrum::at(n) on a d = 2 spectrum");
  const int m = grid_.size(0);
  if (std::abs(n) > m / 2) return {0.0, 0.0};
  return n >= 0 ? coeffs_[n] : std::conj(coeffs_[-n]);
}

std::complex<double> Spectrum::at(int n1, int n2) const {
  if (grid_.dim() != 2) throw InputError("Spectrum::at(n1, n2) on a d = 1 spectrum");
  const int m1 = grid_.size(0), m2 = grid_.size(1);
  if (std::abs(n1) > m1 / 2 || std::abs(n2) > m2 / 2) return {0.0, 0.0};
  auto row = [m1](int n) { return ((n % m1) + m1) % m1; };
  if (n2 >= 0) return coeffs_[static_cast<std::size_t>(row(n1) * half_ + n2)];
  return std::conj(coeffs_[static_cast<std::size_t>(row(-n1) * half_ - n2)]);
}

Spectrum forward(const SampledField& f) {
  Spectrum s(f.grid());
  detail::r2c(f.grid(), f.values().data(), s.raw().data());
  const double scale = 1.0 / static_cast<double>(f.grid().count());
  for (auto& c : s.raw()) c *= scale;
  return s;
}

SampledField inverse(const Spectrum& s) {
  std::vector<double> out(s.grid().count());
  detail::c2r(s.grid(), s.raw().data(), out.data());
  return SampledField(s.grid(), std::move(out));
}

// ---------------------------------------------------------------------------
// Multipliers

SampledField derivative(const SampledField& f, int axis) {
  const PeriodicGrid& g = f.grid();
  const int m = g.size(axis);  // validates axis
  const std::complex<double> i{0.0, 1.0};
  return apply_symbol(f, [&](int n1, int n2) -> std::complex<double> {
    const int n = (g.dim() == 1 || axis == 0) ? n1 : n2;
    if (std::abs(n) == m / 2) return 0.0;
    return i * static_cast<double>(n);
  });
}

SampledField hilbert(const SampledField& f) {
  require_dim1(f, "hilbert");
  const int m = f.grid().size(0);
  return apply_symbol(f, [m](int n, int) -> std::complex<double> {
    if (n == 0 || n == m / 2) return 0.0;
    return {0.0, -1.0};  // stored n are non-negative
  });
}

SampledField abs_d(const SampledField& f) {
  require_dim1(f, "abs_d");
  const int m = f.grid().size(0);
  return apply_symbol(f, [m](int n, int) -> std::complex<double> {
    if (n == m / 2) return 0.0;
    return static_cast<double>(n);
  });
}

double integrate(const SampledField& f) {
  return std::pow(kTwoPi, f.grid().dim()) * f.mean();
}

double lp_norm(const SampledField& f, double p, const std::optional<SampledField>& weight) {
  if (!(p >= 1.0)) throw InputError("lp_norm needs p >= 1");
  if (weight) {
    require_same_grid(f, *weight);
    if (weight->min() < 0.0) throw InputError("lp_norm weight must be nonnegative");
  }
  std::vector<double> integrand(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    integrand[i] = std::pow(std::abs(f[i]), p) * (weight ? (*weight)[i] : 1.0);
  }
  return std::pow(integrate(SampledField(f.grid(), std::move(integrand))), 1.0 / p);
}

double l2_norm(const SampledField& f) { return lp_norm(f, 2.0); }

double h_minus1_norm(const SampledField& f, double mean_tol) {
  require_dim1(f, "h_minus1_norm");
  const double norm = l2_norm(f);
  if (std::abs(f.mean()) * std::sqrt(kTwoPi) > mean_tol * norm) {
    throw InputError("h_minus1_norm: field mean " + std::to_string(f.mean()) + " is not zero");
  }
  const Spectrum s = forward(f);
  const int m = f.grid().size(0);
  double sum = 0.0;
  for (int n = 1; n < m / 2; ++n) sum += 2.0 * std::norm(s.at(n)) / (double(n) * n);
  sum += std::norm(s.at(m / 2)) / (0.25 * m * m);
  return std::sqrt(kTwoPi * sum);
}

SampledField refine(const SampledField& f, int factor) {
  if (factor < 1) throw InputError("refine factor must be >= 1");
  if (factor == 1) return f;
  const PeriodicGrid& g = f.grid();
  const Spectrum coarse = forward(f);
  if (g.dim() == 1) {
    const int m = g.size(0);
    Spectrum fine(PeriodicGrid::line(m * factor));
    auto raw = fine.raw();
    for (int n = 0; n <= m / 2; ++n) raw[n] = coarse.at(n) * (n == m / 2 ? 0.5 : 1.0);
    return inverse(fine);
  }
  const int m1 = g.size(0), m2 = g.size(1);
  const PeriodicGrid fg = PeriodicGrid::plane(m1 * factor, m2 * factor);
  Spectrum fine(fg);
  auto raw = fine.raw();
  for (int i1 = 0; i1 < fg.size(0); ++i1) {
    const int n1 = wavenumber(i1, fg.size(0));
    if (std::abs(n1) > m1 / 2) continue;
    for (int n2 = 0; n2 <= m2 / 2; ++n2) {
      double w = 1.0;
      if (std::abs(n1) == m1 / 2) w *= 0.5;
      if (n2 == m2 / 2) w *= 0.5;
      raw[static_cast<std::size_t>(i1 * fine.half_size() + n2)] = coarse.at(n1, n2) * w;
    }
  }
  return inverse(fine);
}

// ---------------------------------------------------------------------------
// Trigonometric interpolation

TrigInterpolant::TrigInterpolant(const SampledField& f) : m_(0), mean_(0.0), nyquist_(0.0) {
  require_dim1(f, "TrigInterpolant");
  m_ = f.grid().size(0);
  const Spectrum s = forward(f);
  mean_ = s.at(0).real();
  nyquist_ = s.at(m_ / 2).real();
  coeffs_.resize(static_cast<std::size_t>(m_ / 2 - 1));
  for (int n = 1; n < m_ / 2; ++n) coeffs_[n - 1] = s.at(n);
}

double TrigInterpolant::operator()(double x) const {
  const std::complex<double> z{std::cos(x), std::sin(x)};
  std::complex<double> w = z;
  std::complex<double> acc{0.0, 0.0};
  for (const auto& c : coeffs_) {
    acc += c * w;
    w *= z;
  }
  return mean_ + 2.0 * acc.real() + nyquist_ * std::cos(0.5 * m_ * x);
}

std::pair<double, double> TrigInterpolant::with_derivative(double x) const {
  const std::complex<double> z{std::cos(x), std::sin(x)};
  std::complex<double> w = z;
  std::complex<double> acc{0.0, 0.0};
  std::complex<double> dacc{0.0, 0.0};
  double n = 1.0;
  for (const auto& c : coeffs_) {
    const std::complex<double> term = c * w;
    acc += term;
    dacc += n * term;
    w *= z;
    n += 1.0;
  }
  const double half_m = 0.5 * m_;
  const double value = mean_ + 2.0 * acc.real() + nyquist_ * std::cos(half_m * x);
  // d/dx of 2 Re(c e^{inx}) = -2 n Im(c e^{inx})
  const double slope = -2.0 * dacc.imag() - half_m * nyquist_ * std::sin(half_m * x);
  return {value, slope};
}

std::vector<double> TrigInterpolant::evaluate(std::span<const double> points) const {
  std::vector<double> out(points.size());
  std::transform(points.begin(), points.end(), out.begin(), [this](double x) { return (*this)(x); });
  return out;
}

std::vector<double> eval_trig(const SampledField& f, std::span<const double> points) {
  return TrigInterpolant(f).evaluate(points);
}

std::vector<double> invert_monotone_circle_map(const SampledField& u,
                                               std::span<const double> targets) {
  require_dim1(u, "invert_monotone_circle_map");
  const TrigInterpolant interp(u);
  const int fine = 4 * u.grid().size(0);
  double min_slope = std::numeric_limits<double>::infinity();
  double umax = 0.0;
  for (int k = 0; k < fine; ++k) {
    const auto [val, der] = interp.with_derivative(kTwoPi * k / fine);
    min_slope = std::min(min_slope, 1.0 + der);
    umax = std::max(umax, std::abs(val));
  }
  if (!(min_slope > 0.0)) {
    throw MonotonicityError("alpha -> alpha + u(alpha) is not increasing (min slope " +
                            std::to_string(min_slope) + ")");
  }

  std::vector<double> alpha(targets.size());
  for (std::size_t j = 0; j < targets.size(); ++j) {
    const double t = targets[j];
    auto residual = [&](double a) { return a + interp(a) - t; };
    double margin = 0.1 * umax + 1e-9;
    double lo = t - umax - margin, hi = t + umax + margin;
    while (residual(lo) > 0.0) lo -= (margin *= 2.0);
    while (residual(hi) < 0.0) hi += (margin *= 2.0);

    double a = std::clamp(t - interp(t), lo, hi);
    for (int it = 0; it < 200; ++it) {
      const auto [val, der] = interp.with_derivative(a);
      const double r = a + val - t;
      if (std::abs(r) <= 1e-15 * std::max(1.0, std::abs(t))) break;
      if (r < 0.0) lo = a; else hi = a;
      if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) break;
      double next = a - r / (1.0 + der);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      a = next;
    }
    alpha[j] = a;
  }
  return alpha;
}

SampledField invert_monotone_circle_map(const SampledField& u) {
  require_dim1(u, "invert_monotone_circle_map");
  const PeriodicGrid& g = u.grid();
  std::vector<double> nodes(g.count());
  for (int j = 0; j < g.size(0); ++j) nodes[j] = g.node(0, j);
  return SampledField(g, invert_monotone_circle_map(u, nodes));
}

}  // namespace rellich
