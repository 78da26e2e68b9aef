#include "rellich/suites.hpp"

#include <cmath>

#include "rellich/errors.hpp"

namespace rellich {
namespace {

std::vector<std::array<int, 2>> half_plane_modes(int dim, int kmax) {
  std::vector<std::array<int, 2>> out;
  if (dim == 1) {
    for (int k = 1; k <= kmax; ++k) out.push_back({k, 0});
    return out;
  }
  for (int k1 = 0; k1 <= kmax; ++k1)
    for (int k2 = -kmax; k2 <= kmax; ++k2)
      if (k1 > 0 || k2 > 0) out.push_back({k1, k2});
  return out;
}

FourierSpec random_modes(std::mt19937_64& rng, int dim, int kmax) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  FourierSpec spec;
  for (const auto& k : half_plane_modes(dim, kmax)) {
    const double norm = std::hypot(double(k[0]), double(k[1]));
    const double a = coeff(rng) / norm;
    const double b = coeff(rng) / norm;
    spec.push_back({k, a, b});
  }
  return spec;
}

}  // namespace

std::vector<FourierSpec> standard_surface_suite() {
  return {
      {{{1, 0}, 0.3, 0.0}},
      {{{1, 0}, 0.2, 0.0}, {{3, 0}, 0.1, 0.0}},
      {{{2, 0}, 0.0, 0.25}},
      {{{1, 0}, 0.15, 0.0}, {{2, 0}, 0.0, 0.1}, {{4, 0}, 0.05, 0.0}},
      {{{4, 0}, 0.1875, 0.0}},
      {{{1, 0}, 0.5, 0.0}, {{2, 0}, 0.0, 0.1}},
      {{{2, 0}, 0.2, 0.0}, {{3, 0}, 0.0, -0.1}},
      {{{1, 0}, 0.0, 0.3}, {{3, 0}, 0.12, 0.0}},
      {{{1, 0}, 0.05, 0.0}, {{2, 0}, 0.0, 0.05}, {{3, 0}, 0.05, 0.0}, {{4, 0}, 0.0, 0.05}},
      {{{1, 0}, 0.7, 0.0}},
  };
}

double spec_max_slope(const FourierSpec& spec, int dim) {
  const PeriodicGrid grid = dim == 1 ? PeriodicGrid::line(64) : PeriodicGrid::plane(32, 32);
  return build_surface(grid, spec).max_slope();
}

FourierSpec random_surface_spec(std::mt19937_64& rng, int dim, int kmax, double slope_cap) {
  if (dim != 1 && dim != 2) throw InputError("dimension must be 1 or 2");
  if (kmax < 1) throw InputError("kmax must be >= 1");
  FourierSpec spec = random_modes(rng, dim, kmax);
  std::uniform_real_distribution<double> frac(0.05, 1.0);
  const double target = frac(rng) * slope_cap;
  const double slope = spec_max_slope(spec, dim);
  const double scale = slope > 0.0 ? target / slope : 0.0;
  for (auto& m : spec) {
    m.cos_coeff *= scale;
    m.sin_coeff *= scale;
  }
  return spec;
}

FourierSpec random_data_spec(std::mt19937_64& rng, int dim, int kmax) {
  if (dim != 1 && dim != 2) throw InputError("dimension must be 1 or 2");
  if (kmax < 1) throw InputError("kmax must be >= 1");
  return random_modes(rng, dim, kmax);
}

std::vector<SurfaceDataPair> random_pair_suite(std::size_t count, std::uint64_t seed, int dim,
                                               double slope_cap) {
  std::mt19937_64 rng(seed);
  const int kh = dim == 1 ? 4 : 2;
  const int kz = dim == 1 ? 5 : 3;
  std::vector<SurfaceDataPair> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    FourierSpec h = random_surface_spec(rng, dim, kh, slope_cap);
    FourierSpec z = random_data_spec(rng, dim, kz);
    out.push_back({std::move(h), std::move(z)});
  }
  return out;
}

}  // namespace rellich
