#pragma once

// Boundary traces of the harmonic extension below a periodic graph: the
// Dirichlet-to-Neumann image G(h)zeta together with B = d_y phi and
// V = grad_x phi on y = h. Two independent backends (conformal, finite
// differences) and an exact closed-form oracle produce the same type.

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rellich/conformal.hpp"
#include "rellich/spectral.hpp"
#include "rellich/surface.hpp"

namespace rellich {

namespace detail {
class EllipticSolver;
}

enum class Backend { conformal, fd, oracle };

std::string to_string(Backend b);
Backend parse_backend(const std::string& name);

struct BoundaryTraces {
  SurfaceGeometry surface;
  SampledField zeta;
  SampledField g_zeta;
  SampledField b;
  std::vector<SampledField> v;
  SampledField dn_phi;
  /// d = 1 only.
  std::optional<SampledField> dt_phi;
  Backend backend;
};

enum class BottomCondition { zero_dirichlet, zero_neumann, decay };

std::string to_string(BottomCondition b);
BottomCondition parse_bottom_condition(const std::string& name);

/// Finite-difference truncation of the fluid domain to -depth < y < h(x).
/// Unset fields resolve per dimension: d = 1 uses order 6 with the exact
/// decay condition at the bottom, d = 2 order 4 with zero Neumann.
struct EllipticConfig {
  double depth = 2.0 * PeriodicGrid::kPi;
  int ny = 128;
  std::optional<BottomCondition> bottom;
  std::optional<int> order;

  BottomCondition resolved_bottom(int dim) const;
  int resolved_order(int dim) const;
};

struct BackendOptions {
  Backend kind = Backend::conformal;
  TheodorsenOptions conformal;
  EllipticConfig fd;
};

BoundaryTraces dtn_conformal(const ConformalBoundary& cb, const SurfaceGeometry& s,
                             const SampledField& zeta);

BoundaryTraces dtn_elliptic(const SurfaceGeometry& s, const SampledField& zeta,
                            const EllipticConfig& cfg = {});

enum class Phase { cos, sin };

struct OracleCase {
  SampledField zeta;
  BoundaryTraces exact;
};

/// phi = exp(|k| y) trig(k.x), evaluated on y = h(x) by the chain rule.
OracleCase harmonic_oracle(const SurfaceGeometry& s, std::array<int, 2> k, Phase phase);

struct BVTraces {
  SampledField b;
  std::vector<SampledField> v;
};

/// B = (G + grad zeta . grad h) / (1 + |grad h|^2),  V = grad zeta - B grad h.
BVTraces traces_from_dtn(const SurfaceGeometry& s, const SampledField& zeta,
                         const SampledField& g_zeta);

/// B^2 + |V|^2.
SampledField gradient_trace_sq(const BoundaryTraces& t);
/// G^2/(1+|grad h|^2) + |grad zeta|^2 - (grad h . grad zeta)^2/(1+|grad h|^2).
SampledField gradient_trace_sq_from_dtn(const BoundaryTraces& t);

/// Computes traces for one surface with a fixed backend. The conformal map
/// or the assembled fd operator is built once and reused across data.
class DtnEngine {
 public:
  DtnEngine(SurfaceGeometry s, BackendOptions opts);

  BoundaryTraces operator()(const SampledField& zeta) const;

  const SurfaceGeometry& surface() const noexcept { return surface_; }
  const BackendOptions& options() const noexcept { return opts_; }
  /// Set for the conformal backend.
  const ConformalBoundary* conformal_map() const noexcept { return cb_.get(); }

 private:
  SurfaceGeometry surface_;
  BackendOptions opts_;
  std::shared_ptr<const ConformalBoundary> cb_;
  std::shared_ptr<const detail::EllipticSolver> fd_;
};

/// Relative L2 distance ||a - b|| / ||b|| (0 when both vanish).
double relative_l2_error(const SampledField& a, const SampledField& b);

}  // namespace rellich
