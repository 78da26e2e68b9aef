#include "rellich/surface.hpp"

#include <cmath>
#include <sstream>

#include "rellich/errors.hpp"

namespace rellich {

SampledField synthesize(const PeriodicGrid& grid, const FourierSpec& spec) {
  if (grid.dim() == 1) {
    for (const auto& mode : spec) {
      if (mode.k[1] != 0) throw InputError("d = 1 Fourier mode with a second wavenumber");
    }
    return SampledField::sample(grid, [&](double x) {
      double h = 0.0;
      for (const auto& mode : spec) {
        h += mode.cos_coeff * std::cos(mode.k[0] * x) + mode.sin_coeff * std::sin(mode.k[0] * x);
      }
      return h;
    });
  }
  return SampledField::sample(grid, [&](double x1, double x2) {
    double h = 0.0;
    for (const auto& mode : spec) {
      const double phase = mode.k[0] * x1 + mode.k[1] * x2;
      h += mode.cos_coeff * std::cos(phase) + mode.sin_coeff * std::sin(phase);
    }
    return h;
  });
}

double tail_energy_fraction(const SampledField& f) {
  const Spectrum s = forward(f);
  const PeriodicGrid& g = f.grid();
  double total = 0.0, tail = 0.0;
  auto account = [&](double energy, double frac) {
    total += energy;
    if (frac > 2.0 / 3.0) tail += energy;
  };
  if (g.dim() == 1) {
    const int m = g.size(0);
    for (int n = 1; n <= m / 2; ++n) account(std::norm(s.at(n)), double(n) / (m / 2));
  } else {
    const int m1 = g.size(0), m2 = g.size(1);
    for (int n1 = -m1 / 2 + 1; n1 <= m1 / 2; ++n1)
      for (int n2 = 0; n2 <= m2 / 2; ++n2) {
        if (n1 == 0 && n2 == 0) continue;
        const double frac = std::max(std::abs(double(n1)) / (m1 / 2), double(n2) / (m2 / 2));
        account(std::norm(s.at(n1, n2)), frac);
      }
  }
  return total > 0.0 ? tail / total : 0.0;
}

SurfaceGeometry::SurfaceGeometry(SampledField h)
    : h_(std::move(h)),
      lap_(SampledField::zeros(h_.grid())),
      slope_sq_(SampledField::zeros(h_.grid())),
      omega_(SampledField::zeros(h_.grid())) {
  const int d = h_.grid().dim();
  for (int axis = 0; axis < d; ++axis) {
    grad_.push_back(derivative(h_, axis));
    lap_ = lap_ + derivative(grad_.back(), axis);
    slope_sq_ = slope_sq_ + grad_.back() * grad_.back();
  }
  omega_ = map(slope_sq_, [](double s) { return std::sqrt(1.0 + s); });

  SampledField fine_sq = SampledField::zeros(refine(h_, 4).grid());
  for (const auto& g : grad_) {
    const SampledField fine = refine(g, 4);
    fine_sq = fine_sq + fine * fine;
  }
  max_slope_ = std::sqrt(fine_sq.max());

  if (d == 1) {
    theta_ = map(grad_[0], [](double hx) { return std::atan(hx); });
    kappa_ = derivative(grad_[0] / omega_, 0);
  }

  if (const double tail = tail_energy_fraction(h_); tail >= 1e-6) {
    std::ostringstream msg;
    msg << "height is under-resolved: trailing third of the spectrum carries " << tail
        << " of the energy";
    warnings_.push_back(msg.str());
  }
}

const SampledField& SurfaceGeometry::theta() const {
  if (!theta_) throw InputError("theta is only defined for d = 1 surfaces");
  return *theta_;
}

const SampledField& SurfaceGeometry::kappa() const {
  if (!kappa_) throw InputError("curvature is only defined for d = 1 surfaces");
  return *kappa_;
}

std::array<double, 2> SurfaceGeometry::normal(std::size_t i) const {
  if (dim() != 1) throw InputError("normal(i) is only provided for d = 1 surfaces");
  return {-grad_[0][i] / omega_[i], 1.0 / omega_[i]};
}

std::array<double, 2> SurfaceGeometry::tangent(std::size_t i) const {
  if (dim() != 1) throw InputError("tangent(i) is only provided for d = 1 surfaces");
  return {1.0 / omega_[i], grad_[0][i] / omega_[i]};
}

SurfaceGeometry build_surface(SampledField h) { return SurfaceGeometry(std::move(h)); }

SurfaceGeometry build_surface(const PeriodicGrid& grid, const FourierSpec& spec) {
  return build_surface(synthesize(grid, spec));
}

SampledField curvature(const SurfaceGeometry& s) { return s.kappa(); }

SampledField curvature_pointwise(const SurfaceGeometry& s) {
  if (s.dim() != 1) throw InputError("curvature is only defined for d = 1 surfaces");
  return zip_map(s.laplacian(), s.slope_sq(),
                 [](double hxx, double sq) { return hxx / std::pow(1.0 + sq, 1.5); });
}

SampledField angle_derivative(const SurfaceGeometry& s) {
  if (s.dim() != 1) throw InputError("theta is only defined for d = 1 surfaces");
  return zip_map(s.laplacian(), s.slope_sq(), [](double hxx, double sq) { return hxx / (1.0 + sq); });
}

}  // namespace rellich
