#include "rellich/dtn.hpp"
#include "rellich/errors.hpp"

namespace rellich {

BoundaryTraces dtn_conformal(const ConformalBoundary& cb, const SurfaceGeometry& s,
                             const SampledField& zeta) {
  if (s.dim() != 1) throw InputError("dtn_conformal needs a d = 1 surface");
  if (!(cb.x_grid == s.grid())) throw InputError("conformal map and surface live on different grids");
  if (!(zeta.grid() == s.grid())) throw InputError("zeta and surface live on different grids");

  const SampledField zt = pullback(cb, zeta);
  const SampledField dz = abs_d(zt);

  SampledField g = pushforward(cb, dz / cb.x_alpha);
  SampledField dn = pushforward(cb, dz / cb.jac);
  SampledField dt = pushforward(cb, derivative(zt) / cb.jac);

  BVTraces bv = traces_from_dtn(s, zeta, g);
  return BoundaryTraces{s,          zeta,          std::move(g), std::move(bv.b), std::move(bv.v),
                        std::move(dn), std::move(dt), Backend::conformal};
}

}  // namespace rellich
