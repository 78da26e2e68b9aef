#pragma once

// Reproducible families of test surfaces and boundary data.

#include <cstdint>
#include <random>
#include <vector>

#include "rellich/surface.hpp"

namespace rellich {

struct SurfaceDataPair {
  FourierSpec h;
  FourierSpec zeta;
};

/// Ten fixed d = 1 surfaces with wavenumbers <= 4 and max|h_x| <= 0.75.
std::vector<FourierSpec> standard_surface_suite();

/// max |grad h| of the synthesized spec, evaluated on a fine grid.
double spec_max_slope(const FourierSpec& spec, int dim);

/// Random mean-free surface with wavenumbers up to kmax per axis, rescaled
/// so its maximum slope is uniform in (0.05, 1] * slope_cap.
FourierSpec random_surface_spec(std::mt19937_64& rng, int dim, int kmax, double slope_cap);

/// Random data with coefficients decaying like 1/|k|.
FourierSpec random_data_spec(std::mt19937_64& rng, int dim, int kmax);

/// count pairs drawn from one seeded stream. d = 1 uses surface modes up
/// to 4 and data modes up to 5; d = 2 uses 2 and 3.
std::vector<SurfaceDataPair> random_pair_suite(std::size_t count, std::uint64_t seed, int dim,
                                               double slope_cap);

}  // namespace rellich
