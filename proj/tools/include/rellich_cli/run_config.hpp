#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rellich/dtn.hpp"
#include "rellich/surface.hpp"

namespace rellich::cli {

struct OracleData {
  std::array<int, 2> k{1, 0};
  Phase phase = Phase::cos;
};

/// One experiment. JSON layout:
///   surface:   "flat" | [{"k": 1 | [k1, k2], "cos": a, "sin": b}, ...]
///   zeta:      same list form | {"oracle": {"k": ..., "phase": "cos" | "sin"}}
///   grid:      {"m": 256, "m2": 64}       m2 present means d = 2
///   backend:   "conformal" | "fd"         default conformal in d = 1, fd in d = 2
///   fd:        {"depth", "ny", "bottom", "order"}
///   conformal: {"tol", "max_iter", "relax", "oversample"}
///   p_list, tol_rel, seed
struct RunConfig {
  FourierSpec surface;
  std::optional<FourierSpec> zeta_spec;
  OracleData oracle;
  int m = 256;
  std::optional<int> m2;
  Backend backend = Backend::conformal;
  EllipticConfig fd;
  TheodorsenOptions conformal;
  std::vector<double> p_list{1.25, 1.5, 1.75, 2.0};
  double tol_rel = 1e-6;
  std::uint64_t seed = 0;

  int dim() const { return m2 ? 2 : 1; }
  PeriodicGrid grid() const;
  BackendOptions backend_options() const;
  /// Validates cross-field constraints; throws InputError.
  void validate() const;
};

RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);
nlohmann::json to_json(const RunConfig& cfg);

FourierSpec parse_fourier_spec(const nlohmann::json& j, const std::string& where);
nlohmann::json fourier_spec_to_json(const FourierSpec& spec);

/// "256" or "64x64".
std::pair<int, std::optional<int>> parse_grid(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

}  // namespace rellich::cli
