#pragma once

#include <complex>

#include "rellich/spectral.hpp"

namespace rellich::detail {

// Unnormalized real-to-half-complex transform over the whole grid.
void r2c(const PeriodicGrid& grid, const double* in, std::complex<double>* out);
// Inverse of r2c up to a factor of grid.count(); `in` is not modified.
void c2r(const PeriodicGrid& grid, const std::complex<double>* in, double* out);

}  // namespace rellich::detail
