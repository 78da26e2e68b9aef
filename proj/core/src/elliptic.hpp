#pragma once

#include <memory>

#include "rellich/dtn.hpp"

namespace rellich::detail {

// Discretized flattened-strip problem for one surface. The operator is
// assembled (and in d = 1 factorized) once; solve() takes Dirichlet data.
class EllipticSolver {
 public:
  EllipticSolver(const SurfaceGeometry& s, const EllipticConfig& cfg);
  ~EllipticSolver();
  EllipticSolver(const EllipticSolver&) = delete;
  EllipticSolver& operator=(const EllipticSolver&) = delete;

  BoundaryTraces solve(const SampledField& zeta) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace rellich::detail
