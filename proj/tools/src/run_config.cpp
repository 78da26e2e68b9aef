#include "rellich_cli/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "rellich/errors.hpp"

namespace rellich::cli {
namespace {

using nlohmann::json;

void allow_keys(const json& j, const std::set<std::string>& keys, const std::string& where) {
  if (!j.is_object()) throw InputError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!keys.count(key)) throw InputError("unknown key '" + key + "' in " + where);
  }
}

double get_real(const json& j, const std::string& key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number()) throw InputError(where + "." + key + " must be a number");
  return v.get<double>();
}

int get_int(const json& j, const std::string& key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw InputError(where + "." + key + " must be an integer");
  return v.get<int>();
}

std::array<int, 2> parse_wavevector(const json& j, const std::string& where) {
  if (j.is_number_integer()) return {j.get<int>(), 0};
  if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
    return {j[0].get<int>(), j[1].get<int>()};
  }
  throw InputError(where + " must be an integer or a pair of integers");
}

json wavevector_to_json(const std::array<int, 2>& k, int dim) {
  if (dim == 1) return k[0];
  return json::array({k[0], k[1]});
}

}  // namespace

PeriodicGrid RunConfig::grid() const { return m2 ? PeriodicGrid::plane(m, *m2) : PeriodicGrid::line(m); }

BackendOptions RunConfig::backend_options() const {
  BackendOptions o;
  o.kind = backend;
  o.conformal = conformal;
  o.fd = fd;
  return o;
}

void RunConfig::validate() const {
  (void)grid();
  if (backend == Backend::oracle) throw InputError("backend must be conformal or fd");
  if (backend == Backend::conformal && dim() != 1) throw InputError("the conformal backend requires d = 1");
  for (double p : p_list) {
    if (!(p > 1.0 && p <= 2.0)) throw InputError("p_list entries must lie in (1, 2]");
  }
  if (!(tol_rel >= 0.0)) throw InputError("tol_rel must be nonnegative");
  const int d = dim();
  auto check_spec = [d](const FourierSpec& spec, const char* what) {
    for (const auto& mode : spec) {
      if (d == 1 && mode.k[1] != 0) throw InputError(std::string(what) + ": d = 1 wavenumbers are scalars");
      if (mode.k[0] == 0 && mode.k[1] == 0) throw InputError(std::string(what) + ": wavenumber 0 is not allowed");
    }
  };
  check_spec(surface, "surface");
  if (zeta_spec) check_spec(*zeta_spec, "zeta");
  if (!zeta_spec) {
    if (oracle.k[0] == 0 && oracle.k[1] == 0) throw InputError("oracle wavenumber must be nonzero");
    if (d == 1 && oracle.k[1] != 0) throw InputError("d = 1 oracle wavenumber is a scalar");
  }
}

FourierSpec parse_fourier_spec(const json& j, const std::string& where) {
  if (j.is_string() && j.get<std::string>() == "flat") return {};
  if (!j.is_array()) throw InputError(where + " must be \"flat\" or a list of modes");
  FourierSpec spec;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    allow_keys(j[i], {"k", "cos", "sin"}, at);
    if (!j[i].contains("k")) throw InputError(at + " needs a wavenumber k");
    FourierMode mode;
    mode.k = parse_wavevector(j[i]["k"], at + ".k");
    if (j[i].contains("cos")) mode.cos_coeff = get_real(j[i], "cos", at);
    if (j[i].contains("sin")) mode.sin_coeff = get_real(j[i], "sin", at);
    spec.push_back(mode);
  }
  return spec;
}

json fourier_spec_to_json(const FourierSpec& spec) {
  if (spec.empty()) return "flat";
  json out = json::array();
  for (const auto& mode : spec) {
    const int dim = mode.k[1] != 0 ? 2 : 1;
    out.push_back({{"k", wavevector_to_json(mode.k, dim)}, {"cos", mode.cos_coeff}, {"sin", mode.sin_coeff}});
  }
  return out;
}

RunConfig parse_run_config(const json& j) {
  allow_keys(j, {"surface", "zeta", "grid", "backend", "fd", "conformal", "p_list", "tol_rel", "seed"}, "config");
  RunConfig cfg;
  if (j.contains("surface")) cfg.surface = parse_fourier_spec(j["surface"], "surface");
  if (j.contains("grid")) {
    const json& g = j["grid"];
    allow_keys(g, {"m", "m2"}, "grid");
    if (g.contains("m")) cfg.m = get_int(g, "m", "grid");
    if (g.contains("m2")) cfg.m2 = get_int(g, "m2", "grid");
  }
  if (j.contains("zeta")) {
    const json& z = j["zeta"];
    if (z.is_object()) {
      allow_keys(z, {"oracle"}, "zeta");
      const json& o = z.at("oracle");
      allow_keys(o, {"k", "phase"}, "zeta.oracle");
      if (o.contains("k")) cfg.oracle.k = parse_wavevector(o["k"], "zeta.oracle.k");
      if (o.contains("phase")) {
        const std::string ph = o["phase"].is_string() ? o["phase"].get<std::string>() : "";
        if (ph == "cos") cfg.oracle.phase = Phase::cos;
        else if (ph == "sin") cfg.oracle.phase = Phase::sin;
        else throw InputError("zeta.oracle.phase must be \"cos\" or \"sin\"");
      }
    } else {
      cfg.zeta_spec = parse_fourier_spec(z, "zeta");
    }
  } else {
    cfg.zeta_spec = FourierSpec{{{1, 0}, 1.0, 0.0}};
  }
  if (j.contains("backend")) {
    if (!j["backend"].is_string()) throw InputError("backend must be a string");
    cfg.backend = parse_backend(j["backend"].get<std::string>());
  } else {
    cfg.backend = cfg.m2 ? Backend::fd : Backend::conformal;
  }
  if (j.contains("fd")) {
    const json& f = j["fd"];
    allow_keys(f, {"depth", "ny", "bottom", "order"}, "fd");
    if (f.contains("depth")) cfg.fd.depth = get_real(f, "depth", "fd");
    if (f.contains("ny")) cfg.fd.ny = get_int(f, "ny", "fd");
    if (f.contains("order")) cfg.fd.order = get_int(f, "order", "fd");
    if (f.contains("bottom")) {
      if (!f["bottom"].is_string()) throw InputError("fd.bottom must be a string");
      cfg.fd.bottom = parse_bottom_condition(f["bottom"].get<std::string>());
    }
  }
  if (j.contains("conformal")) {
    const json& c = j["conformal"];
    allow_keys(c, {"tol", "max_iter", "relax", "oversample"}, "conformal");
    if (c.contains("tol")) cfg.conformal.tol = get_real(c, "tol", "conformal");
    if (c.contains("max_iter")) cfg.conformal.max_iter = get_int(c, "max_iter", "conformal");
    if (c.contains("relax")) cfg.conformal.relax = get_real(c, "relax", "conformal");
    if (c.contains("oversample")) cfg.conformal.oversample = get_int(c, "oversample", "conformal");
  }
  if (j.contains("p_list")) {
    const json& p = j["p_list"];
    if (!p.is_array()) throw InputError("p_list must be a list of numbers");
    cfg.p_list.clear();
    for (const auto& v : p) {
      if (!v.is_number()) throw InputError("p_list must be a list of numbers");
      cfg.p_list.push_back(v.get<double>());
    }
  }
  if (j.contains("tol_rel")) cfg.tol_rel = get_real(j, "tol_rel", "config");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw InputError("seed must be a nonnegative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
  return parse_run_config(j);
}

json to_json(const RunConfig& cfg) {
  json j;
  j["surface"] = fourier_spec_to_json(cfg.surface);
  if (cfg.zeta_spec) {
    j["zeta"] = fourier_spec_to_json(*cfg.zeta_spec);
  } else {
    j["zeta"] = {{"oracle",
                  {{"k", wavevector_to_json(cfg.oracle.k, cfg.dim())},
                   {"phase", cfg.oracle.phase == Phase::cos ? "cos" : "sin"}}}};
  }
  j["grid"] = {{"m", cfg.m}};
  if (cfg.m2) j["grid"]["m2"] = *cfg.m2;
  j["backend"] = to_string(cfg.backend);
  j["fd"] = {{"depth", cfg.fd.depth},
             {"ny", cfg.fd.ny},
             {"bottom", to_string(cfg.fd.resolved_bottom(cfg.dim()))},
             {"order", cfg.fd.resolved_order(cfg.dim())}};
  j["conformal"] = {{"tol", cfg.conformal.tol},
                    {"max_iter", cfg.conformal.max_iter},
                    {"relax", cfg.conformal.relax},
                    {"oversample", cfg.conformal.oversample}};
  j["p_list"] = cfg.p_list;
  j["tol_rel"] = cfg.tol_rel;
  j["seed"] = cfg.seed;
  return j;
}

std::pair<int, std::optional<int>> parse_grid(const std::string& text) {
  try {
    const auto x = text.find('x');
    std::size_t used = 0;
    if (x == std::string::npos) {
      const int m = std::stoi(text, &used);
      if (used != text.size()) throw InputError("");
      return {m, std::nullopt};
    }
    const std::string a = text.substr(0, x), b = text.substr(x + 1);
    const int m1 = std::stoi(a, &used);
    if (used != a.size()) throw InputError("");
    const int m2 = std::stoi(b, &used);
    if (used != b.size()) throw InputError("");
    return {m1, m2};
  } catch (const std::exception&) {
    throw InputError("grid must look like 256 or 64x64, got '" + text + "'");
  }
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw InputError("");
    } catch (const std::exception&) {
      throw InputError("expected a comma-separated list of numbers, got '" + text + "'");
    }
  }
  if (out.empty()) throw InputError("empty number list");
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw InputError("");
    } catch (const std::exception&) {
      throw InputError("expected a comma-separated list of integers, got '" + text + "'");
    }
  }
  if (out.empty()) throw InputError("empty integer list");
  return out;
}

}  // namespace rellich::cli
