#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rellich/spectral.hpp"

namespace rellich {

/// One term a*cos(k.x) + b*sin(k.x). In d = 1 only k[0] is used.
struct FourierMode {
  std::array<int, 2> k{0, 0};
  double cos_coeff = 0.0;
  double sin_coeff = 0.0;
};

using FourierSpec = std::vector<FourierMode>;

SampledField synthesize(const PeriodicGrid& grid, const FourierSpec& spec);

/// Geometry of the graph y = h(x): spectral gradient, surface-measure
/// density omega = sqrt(1 + |grad h|^2) and, in d = 1, the angle
/// theta = arctan(h_x) and the curvature kappa.
class SurfaceGeometry {
 public:
  const PeriodicGrid& grid() const noexcept { return h_.grid(); }
  int dim() const noexcept { return h_.grid().dim(); }

  const SampledField& height() const noexcept { return h_; }
  const SampledField& gradient(int axis) const { return grad_.at(static_cast<std::size_t>(axis)); }
  const std::vector<SampledField>& gradient() const noexcept { return grad_; }
  const SampledField& laplacian() const noexcept { return lap_; }
  const SampledField& omega() const noexcept { return omega_; }
  /// |grad h|^2
  const SampledField& slope_sq() const noexcept { return slope_sq_; }

  const SampledField& theta() const;
  const SampledField& kappa() const;

  /// Unit normal (-h_x, 1)/omega and tangent (1, h_x)/omega at node i (d = 1).
  std::array<double, 2> normal(std::size_t i) const;
  std::array<double, 2> tangent(std::size_t i) const;

  /// max |grad h| evaluated on a 4x refined grid.
  double max_slope() const noexcept { return max_slope_; }

  /// Resolution diagnostics collected at construction.
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  friend SurfaceGeometry build_surface(SampledField h);
  explicit SurfaceGeometry(SampledField h);

  SampledField h_;
  std::vector<SampledField> grad_;
  SampledField lap_;
  SampledField slope_sq_;
  SampledField omega_;
  std::optional<SampledField> theta_;
  std::optional<SampledField> kappa_;
  double max_slope_ = 0.0;
  std::vector<std::string> warnings_;
};

SurfaceGeometry build_surface(SampledField h);
SurfaceGeometry build_surface(const PeriodicGrid& grid, const FourierSpec& spec);

/// kappa = d/dx (h_x / sqrt(1 + h_x^2)), computed spectrally (d = 1).
SampledField curvature(const SurfaceGeometry& s);
/// kappa = h_xx / (1 + h_x^2)^{3/2}; cross-check of curvature().
SampledField curvature_pointwise(const SurfaceGeometry& s);
/// theta_x = h_xx / (1 + h_x^2).
SampledField angle_derivative(const SurfaceGeometry& s);

/// Fraction of spectral energy held by the trailing third of the band.
double tail_energy_fraction(const SampledField& f);

}  // namespace rellich
