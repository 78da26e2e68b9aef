#include "rellich_cli/commands.hpp"

#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "rellich/errors.hpp"
#include "rellich/explorer.hpp"
#include "rellich/inequalities.hpp"
#include "rellich/parallel.hpp"
#include "rellich/suites.hpp"
#include "rellich_cli/run_config.hpp"

namespace rellich::cli {
namespace {

constexpr double kConformalOracleBudget = 1e-8;
constexpr double kFdOracleBudget = 1e-2;
constexpr double kConformalIdentityTol = 1e-8;
constexpr double kFdIdentityTol = 1e-4;

struct Flags {
  std::string config;
  std::string out;
  std::string backend;
  std::string grid;
  std::string p;
  std::uint64_t seed = 0;
  int budget = 500;
  std::string ineq = "dtn_from_tangential";
  std::string amplitudes = "0,0.1,0.2";
  std::string wavenumbers = "1,2,3";
  std::string orders = "8,16,32,64";
  std::string suite = "config";
  int modes_h = 2;
  int modes_zeta = 2;
  double slope_cap = -1.0;
  CLI::Option* seed_opt = nullptr;
};

std::string real(double v) { return fmt::format("{:.17e}", v); }
const char* boolean(bool b) { return b ? "true" : "false"; }

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InputError("cannot open output file '" + path + "'");
      os_ = file_.get();
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

RunConfig resolve_config(const Flags& f) {
  RunConfig cfg = f.config.empty() ? parse_run_config(nlohmann::json::object()) : load_run_config(f.config);
  if (!f.grid.empty()) {
    const auto [m, m2] = parse_grid(f.grid);
    cfg.m = m;
    cfg.m2 = m2;
    if (f.backend.empty() && cfg.m2) cfg.backend = Backend::fd;
  }
  if (!f.backend.empty()) cfg.backend = parse_backend(f.backend);
  if (!f.p.empty()) cfg.p_list = parse_real_list(f.p);
  if (f.seed_opt && f.seed_opt->count() > 0) cfg.seed = f.seed;
  cfg.validate();
  return cfg;
}

void report_violation(std::ostream& err, const std::string& what, const RunConfig& cfg) {
  err << "violation: " << what << "\n";
  err << "config: " << to_json(cfg).dump() << "\n";
}

SampledField data_for(const RunConfig& cfg, const SurfaceGeometry& s) {
  if (cfg.zeta_spec) return synthesize(s.grid(), *cfg.zeta_spec);
  return harmonic_oracle(s, cfg.oracle.k, cfg.oracle.phase).zeta;
}

void print_warnings(std::ostream& err, const SurfaceGeometry& s) {
  for (const auto& w : s.warnings()) err << "warning: " << w << "\n";
}

int cmd_verify(const Flags& f, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = resolve_config(f);
  const SurfaceGeometry s = build_surface(cfg.grid(), cfg.surface);
  print_warnings(err, s);
  const DtnEngine engine(s, cfg.backend_options());
  const BoundaryTraces t = engine(data_for(cfg, s));
  const double id_tol = cfg.backend == Backend::fd ? kFdIdentityTol : kConformalIdentityTol;

  struct Row {
    std::string name;
    double p, lhs, rhs, constant, ratio;
    bool pass;
  };
  std::vector<Row> rows;
  auto add_identity = [&](const IdentityReport& r) {
    rows.push_back({r.name, 2.0, std::abs(r.value), r.scale, 1.0, r.normalized, r.pass});
  };
  auto add = [&](const InequalityReport& r) {
    rows.push_back({r.name, r.p, r.lhs, r.rhs_times_constant, r.constant, r.ratio, r.pass});
  };

  add_identity(flux_residual(t, id_tol));
  if (s.dim() == 1) add_identity(rellich_identity_1d(t, id_tol));
  for (const auto& r : check_gradient_trace_bounds(t, cfg.tol_rel)) add(r);
  if (s.dim() == 1) {
    for (const auto& r : check_dtn_tangential_bounds(t, cfg.tol_rel)) add(r);
    add(check_curvature_bound(engine, cfg.tol_rel));
    for (double p : cfg.p_list)
      for (const auto& r : check_weighted_lp_bounds(t, p, cfg.tol_rel)) add(r);
  }

  Output sink(f.out, out);
  *sink << "name,p,lhs,rhs_times_constant,constant,ratio,pass\n";
  std::string failed;
  for (const auto& r : rows) {
    *sink << r.name << ',' << real(r.p) << ',' << real(r.lhs) << ',' << real(r.rhs) << ',' << real(r.constant)
          << ',' << real(r.ratio) << ',' << boolean(r.pass) << '\n';
    if (!r.pass) failed += (failed.empty() ? "" : ", ") + r.name + fmt::format(" (p = {})", r.p);
  }
  if (!failed.empty()) {
    report_violation(err, failed, cfg);
    return kViolation;
  }
  return kOk;
}

int cmd_oracle_test(const Flags& f, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = resolve_config(f);
  std::vector<FourierSpec> surfaces;
  if (f.suite == "standard") {
    if (cfg.dim() != 1) throw InputError("the standard suite is a d = 1 suite");
    surfaces = standard_surface_suite();
  } else if (f.suite == "config") {
    surfaces = {cfg.surface};
  } else {
    throw InputError("--suite must be config or standard");
  }
  std::vector<Backend> backends = {Backend::fd};
  if (cfg.dim() == 1) backends.insert(backends.begin(), Backend::conformal);
  std::vector<std::array<int, 2>> modes;
  if (cfg.dim() == 1) modes = {{1, 0}, {2, 0}, {3, 0}};
  else modes = {{1, 0}, {0, 1}, {1, 1}};

  struct Row {
    std::size_t surface;
    Backend backend;
    std::array<int, 2> k;
    Phase phase;
    double error, budget;
  };
  const std::size_t tasks = surfaces.size() * backends.size();
  std::vector<std::vector<Row>> results(tasks);
  std::vector<std::vector<std::string>> warnings(surfaces.size());
  parallel_for(tasks, [&](std::size_t i) {
    const std::size_t si = i / backends.size();
    const Backend b = backends[i % backends.size()];
    const SurfaceGeometry s = build_surface(cfg.grid(), surfaces[si]);
    if (i % backends.size() == 0) warnings[si] = s.warnings();
    BackendOptions opts = cfg.backend_options();
    opts.kind = b;
    const DtnEngine engine(s, opts);
    for (const auto& k : modes) {
      for (Phase ph : {Phase::cos, Phase::sin}) {
        const OracleCase oc = harmonic_oracle(s, k, ph);
        const BoundaryTraces t = engine(oc.zeta);
        results[i].push_back({si, b, k, ph, relative_l2_error(t.g_zeta, oc.exact.g_zeta),
                              b == Backend::fd ? kFdOracleBudget : kConformalOracleBudget});
      }
    }
  });
  for (const auto& ws : warnings)
    for (const auto& w : ws) err << "warning: " << w << "\n";

  Output sink(f.out, out);
  *sink << "surface,backend,k1,k2,phase,rel_error,budget,pass\n";
  std::string failed;
  for (const auto& rows : results) {
    for (const auto& r : rows) {
      const bool pass = r.error <= r.budget;
      *sink << r.surface << ',' << to_string(r.backend) << ',' << r.k[0] << ',' << r.k[1] << ','
            << (r.phase == Phase::cos ? "cos" : "sin") << ',' << real(r.error) << ',' << real(r.budget) << ','
            << boolean(pass) << '\n';
      if (!pass) {
        failed += fmt::format("{}surface {} {} k = ({}, {})", failed.empty() ? "" : ", ", r.surface,
                              to_string(r.backend), r.k[0], r.k[1]);
      }
    }
  }
  if (!failed.empty()) {
    report_violation(err, "oracle error above budget: " + failed, cfg);
    return kViolation;
  }
  return kOk;
}

ObjectiveContext context_for(const Flags& f, const RunConfig& cfg) {
  ObjectiveContext ctx;
  ctx.ineq = parse_inequality(f.ineq);
  ctx.p = cfg.p_list.front();
  ctx.backend = cfg.backend_options();
  ctx.grid = cfg.grid();
  ctx.tol_rel = cfg.tol_rel;
  return ctx;
}

int cmd_sweep(const Flags& f, std::ostream& out, std::ostream&) {
  const RunConfig cfg = resolve_config(f);
  const ObjectiveContext ctx = context_for(f, cfg);
  const FourierSpec zeta = cfg.zeta_spec ? *cfg.zeta_spec : FourierSpec{{{1, 0}, 1.0, 0.0}};
  const double cap = f.slope_cap >= 0.0 ? f.slope_cap : 1e300;
  const auto rows = sweep(parse_real_list(f.amplitudes), parse_int_list(f.wavenumbers), ctx, zeta, cap);
  Output sink(f.out, out);
  *sink << "amplitude,wavenumber,ratio,rejected\n";
  for (const auto& r : rows) {
    *sink << real(r.amplitude) << ',' << r.wavenumber << ',' << real(r.ratio) << ',' << boolean(r.rejected) << '\n';
  }
  return kOk;
}

int cmd_optimize(const Flags& f, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = resolve_config(f);
  const ObjectiveContext ctx = context_for(f, cfg);
  SearchOptions opts;
  opts.n_modes_h = f.modes_h;
  opts.n_modes_zeta = f.modes_zeta;
  opts.budget = f.budget;
  opts.seed = cfg.seed;
  opts.slope_cap = f.slope_cap >= 0.0 ? f.slope_cap : default_slope_cap(cfg.backend);
  SearchResult res;
  try {
    res = optimize(ctx, opts);
  } catch (const AnomalyError& e) {
    report_violation(err, e.what(), cfg);
    return kViolation;
  }
  Output sink(f.out, out);
  *sink << "evaluation,best_ratio\n";
  for (const auto& [i, r] : res.trace) *sink << i << ',' << real(r) << '\n';
  err << "best_ratio " << real(res.best_ratio) << " after " << res.evaluations << " evaluations (" << res.rejected
      << " rejected, " << res.restarts << " restarts)\n";
  err << "best_h " << fourier_spec_to_json(res.best_params.h).dump() << "\n";
  err << "best_zeta " << fourier_spec_to_json(res.best_params.zeta).dump() << "\n";
  return kOk;
}

int cmd_demo_l1(const Flags& f, std::ostream& out, std::ostream& err) {
  int m = 1024;
  if (!f.grid.empty()) {
    const auto [m1, m2] = parse_grid(f.grid);
    if (m2) throw InputError("demo-l1 runs on a d = 1 grid");
    m = m1;
  }
  const auto rows = l1_failure_demo(parse_int_list(f.orders), m);
  Output sink(f.out, out);
  *sink << "n,ratio\n";
  for (const auto& r : rows) *sink << r.n << ',' << real(r.ratio) << '\n';
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i - 1].n >= 8 && rows[i].n > rows[i - 1].n && !(rows[i].ratio > rows[i - 1].ratio)) {
      err << "violation: ratio did not grow from N = " << rows[i - 1].n << " to N = " << rows[i].n << "\n";
      return kViolation;
    }
  }
  return kOk;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON run configuration");
  sub->add_option("--out", f.out, "CSV output path (default stdout)");
  sub->add_option("--backend", f.backend, "conformal or fd");
  sub->add_option("--grid", f.grid, "grid size, 256 or 64x64");
  f.seed_opt = sub->add_option("--seed", f.seed, "random seed");
  sub->add_option("--p", f.p, "comma-separated exponents in (1, 2]");
  sub->add_option("--budget", f.budget, "objective evaluations for optimize");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks of boundary trace inequalities for harmonic functions below periodic graphs"};
  app.require_subcommand(1);
  std::vector<Flags> flags(5);
  auto* oracle = app.add_subcommand("oracle-test", "compare both backends with closed-form harmonic traces");
  auto* verify = app.add_subcommand("verify", "evaluate every identity and inequality on one configuration");
  auto* sweep_cmd = app.add_subcommand("sweep", "ratio table over h = a cos(kx)");
  auto* optimize_cmd = app.add_subcommand("optimize", "search for large ratios");
  auto* demo = app.add_subcommand("demo-l1", "Hilbert transform of Fejer kernels in L^1");
  CLI::App* subs[] = {oracle, verify, sweep_cmd, optimize_cmd, demo};
  for (int i = 0; i < 5; ++i) add_common(subs[i], flags[i]);
  oracle->add_option("--suite", flags[0].suite, "config or standard");
  for (int i : {2, 3}) {
    subs[i]->add_option("--ineq", flags[i].ineq, "inequality name");
    subs[i]->add_option("--slope-cap", flags[i].slope_cap, "maximum allowed slope");
  }
  sweep_cmd->add_option("--amplitudes", flags[2].amplitudes, "comma-separated amplitudes");
  sweep_cmd->add_option("--wavenumbers", flags[2].wavenumbers, "comma-separated wavenumbers");
  optimize_cmd->add_option("--modes-h", flags[3].modes_h, "surface modes");
  optimize_cmd->add_option("--modes-zeta", flags[3].modes_zeta, "data modes");
  demo->add_option("--n", flags[4].orders, "comma-separated Fejer orders");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (oracle->parsed()) return cmd_oracle_test(flags[0], out, err);
    if (verify->parsed()) return cmd_verify(flags[1], out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(flags[2], out, err);
    if (optimize_cmd->parsed()) return cmd_optimize(flags[3], out, err);
    return cmd_demo_l1(flags[4], out, err);
  } catch (const AnomalyError& e) {
    err << "violation: " << e.what() << "\n";
    return kViolation;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (try a smaller relax or --backend fd)\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: invalid config: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace rellich::cli
