#pragma once

// Periodic grids on the 1- and 2-torus and the Fourier-multiplier toolkit
// built on them. Every field is sampled at x_j = 2*pi*j/M on each axis.

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace rellich {

class PeriodicGrid {
 public:
  static PeriodicGrid line(int m);
  static PeriodicGrid plane(int m1, int m2);

  int dim() const noexcept { return dim_; }
  int size(int axis) const;
  std::size_t count() const noexcept;
  double spacing(int axis) const { return 2.0 * kPi / size(axis); }
  double node(int axis, int j) const { return spacing(axis) * j; }

  bool operator==(const PeriodicGrid&) const = default;

  static constexpr double kPi = 3.14159265358979323846;

 private:
  PeriodicGrid(int dim, std::array<int, 2> sizes);

  int dim_;
  std::array<int, 2> sizes_;
};

/// Real samples on a PeriodicGrid. In d = 2 storage is row-major with
/// axis 0 as the slow index: values[i1 * m2 + i2].
class SampledField {
 public:
  SampledField(PeriodicGrid grid, std::vector<double> values);

  static SampledField zeros(const PeriodicGrid& grid);
  static SampledField constant(const PeriodicGrid& grid, double c);
  /// d = 1 only.
  static SampledField sample(const PeriodicGrid& grid, const std::function<double(double)>& f);
  /// d = 2 only.
  static SampledField sample(const PeriodicGrid& grid,
                             const std::function<double(double, double)>& f);

  const PeriodicGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  double mean() const;
  double max_abs() const;
  double min() const;
  double max() const;

 private:
  PeriodicGrid grid_;
  std::vector<double> values_;
};

SampledField operator+(const SampledField& a, const SampledField& b);
SampledField operator-(const SampledField& a, const SampledField& b);
SampledField operator*(const SampledField& a, const SampledField& b);
SampledField operator/(const SampledField& a, const SampledField& b);
SampledField operator*(double c, const SampledField& a);
SampledField operator+(const SampledField& a, double c);
SampledField operator-(const SampledField& a);

SampledField map(const SampledField& a, const std::function<double(double)>& fn);
SampledField zip_map(const SampledField& a, const SampledField& b,
                     const std::function<double(double, double)>& fn);

/// Half-complex Fourier coefficients of a real field, normalized so that
/// f(x) = sum_n c(n) exp(i n.x) on the grid. Storage follows the r2c layout:
/// d = 1 holds n = 0..M/2; d = 2 holds all n1 and n2 = 0..M2/2. Negative
/// wavenumbers are reached through conjugate symmetry.
class Spectrum {
 public:
  explicit Spectrum(PeriodicGrid grid);

  const PeriodicGrid& grid() const noexcept { return grid_; }
  std::complex<double> at(int n) const;
  std::complex<double> at(int n1, int n2) const;

  std::span<std::complex<double>> raw() noexcept { return coeffs_; }
  std::span<const std::complex<double>> raw() const noexcept { return coeffs_; }
  /// Length of the last (halved) axis in storage.
  int half_size() const noexcept { return half_; }

 private:
  PeriodicGrid grid_;
  int half_;
  std::vector<std::complex<double>> coeffs_;
};

Spectrum forward(const SampledField& f);
SampledField inverse(const Spectrum& s);

/// Signed wavenumber of storage index j on an axis of length m.
inline int wavenumber(int j, int m) { return j <= m / 2 ? j : j - m; }

SampledField derivative(const SampledField& f, int axis = 0);
SampledField hilbert(const SampledField& f);
SampledField abs_d(const SampledField& f);

double integrate(const SampledField& f);
double lp_norm(const SampledField& f, double p,
               const std::optional<SampledField>& weight = std::nullopt);
double l2_norm(const SampledField& f);

/// Dual norm of the homogeneous H^1 seminorm; requires a mean-free input
/// up to mean_tol (relative to the L2 norm).
double h_minus1_norm(const SampledField& f, double mean_tol = 1e-10);

/// Zero-padded trigonometric interpolation onto a grid `factor` times finer.
SampledField refine(const SampledField& f, int factor);

/// Band-limited trigonometric interpolant of a d = 1 field, including the
/// Nyquist cosine term so that it reproduces the samples exactly.
class TrigInterpolant {
 public:
  explicit TrigInterpolant(const SampledField& f);

  double operator()(double x) const;
  /// Value and first derivative of the interpolant.
  std::pair<double, double> with_derivative(double x) const;
  std::vector<double> evaluate(std::span<const double> points) const;

 private:
  int m_;
  double mean_;
  double nyquist_;
  std::vector<std::complex<double>> coeffs_;  // n = 1 .. m/2 - 1
};

std::vector<double> eval_trig(const SampledField& f, std::span<const double> points);

/// Inverts x(alpha) = alpha + u(alpha) for a periodic, sampled u.
/// Returns alpha(x_j) at the nodes of u's grid; throws MonotonicityError if
/// 1 + u' is not strictly positive on a 4x refined grid.
SampledField invert_monotone_circle_map(const SampledField& u);
std::vector<double> invert_monotone_circle_map(const SampledField& u,
                                               std::span<const double> targets);

}  // namespace rellich
