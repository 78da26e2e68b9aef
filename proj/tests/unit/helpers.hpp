#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

#include "rellich/spectral.hpp"

namespace testing {

inline double max_diff(const rellich::SampledField& f, const std::function<double(double)>& exact) {
  double e = 0.0;
  for (int j = 0; j < f.grid().size(0); ++j) e = std::max(e, std::abs(f[j] - exact(f.grid().node(0, j))));
  return e;
}

inline double max_diff(const rellich::SampledField& a, const rellich::SampledField& b) {
  return (a - b).max_abs();
}

}  // namespace testing
