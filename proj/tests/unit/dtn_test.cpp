#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "rellich/dtn.hpp"
#include "rellich/errors.hpp"
#include "rellich/suites.hpp"

using namespace rellich;
using testing::max_diff;

namespace {

BoundaryTraces conformal_traces(const SurfaceGeometry& s, const SampledField& zeta) {
  return dtn_conformal(theodorsen_solve(s), s, zeta);
}

EllipticConfig fd_config(int ny, double depth = 2 * PeriodicGrid::kPi) {
  EllipticConfig c;
  c.ny = ny;
  c.depth = depth;
  return c;
}

}  // namespace

TEST_CASE("names round trip") {
  for (Backend b : {Backend::conformal, Backend::fd, Backend::oracle}) CHECK(parse_backend(to_string(b)) == b);
  for (BottomCondition b : {BottomCondition::zero_dirichlet, BottomCondition::zero_neumann, BottomCondition::decay})
    CHECK(parse_bottom_condition(to_string(b)) == b);
  CHECK(parse_bottom_condition("zero-neumann") == BottomCondition::zero_neumann);
  CHECK_THROWS_AS(parse_backend("spectral"), InputError);
  CHECK_THROWS_AS(parse_bottom_condition("open"), InputError);
}

TEST_CASE("harmonic oracle") {
  const auto g = PeriodicGrid::line(128);
  SUBCASE("flat") {
    const auto oc = harmonic_oracle(build_surface(SampledField::zeros(g)), {3, 0}, Phase::cos);
    CHECK(max_diff(oc.zeta, [](double x) { return std::cos(3 * x); }) <= 1e-15);
    CHECK(max_diff(oc.exact.g_zeta, [](double x) { return 3 * std::cos(3 * x); }) <= 1e-14);
  }
  SUBCASE("chain rule by hand") {
    const auto s = build_surface(g, {{{1, 0}, 0.3, 0.0}});
    const auto oc = harmonic_oracle(s, {2, 0}, Phase::cos);
    CHECK(oc.exact.g_zeta[0] == doctest::Approx(2 * std::exp(0.6)).epsilon(1e-14));
    auto exact = [](double x) {
      const double h = 0.3 * std::cos(x), hx = -0.3 * std::sin(x);
      return 2 * std::exp(2 * h) * (std::cos(2 * x) + hx * std::sin(2 * x));
    };
    CHECK(max_diff(oc.exact.g_zeta, exact) <= 1e-13);
    CHECK(max_diff(oc.exact.g_zeta, oc.exact.b - s.gradient(0) * oc.exact.v[0]) <= 1e-12);
    CHECK(max_diff(derivative(oc.zeta), oc.exact.v[0] + oc.exact.b * s.gradient(0)) <= 1e-12);
    CHECK(max_diff(oc.exact.dn_phi * s.omega(), oc.exact.g_zeta) <= 1e-13);
    CHECK(max_diff(gradient_trace_sq(oc.exact), map(s.height(), [](double h) { return 4 * std::exp(4 * h); })) <=
          1e-10);
  }
  SUBCASE("plane") {
    const auto p = PeriodicGrid::plane(32, 32);
    const auto s = build_surface(p, {{{1, 0}, 0.2, 0.0}, {{0, 1}, 0.0, 0.1}});
    const auto oc = harmonic_oracle(s, {1, 1}, Phase::sin);
    SampledField gh = SampledField::zeros(p);
    for (int a = 0; a < 2; ++a) gh = gh + s.gradient(a) * oc.exact.v[a];
    CHECK(max_diff(oc.exact.g_zeta, oc.exact.b - gh) <= 1e-12);
    CHECK(max_diff(gradient_trace_sq(oc.exact), map(s.height(), [](double h) { return 2 * std::exp(2 * std::sqrt(2.0) * h); })) <= 1e-10);
  }
  CHECK_THROWS_AS(harmonic_oracle(build_surface(SampledField::zeros(g)), {0, 0}, Phase::cos), InputError);
  CHECK_THROWS_AS(harmonic_oracle(build_surface(SampledField::zeros(g)), {1, 1}, Phase::cos), InputError);
}

TEST_CASE("traces_from_dtn") {
  const auto g = PeriodicGrid::line(64);
  const auto flat = build_surface(SampledField::zeros(g));
  const auto z = SampledField::sample(g, [](double x) { return std::sin(2 * x); });
  const auto gz = SampledField::sample(g, [](double x) { return 0.7 * std::cos(x); });
  const auto bv = traces_from_dtn(flat, z, gz);
  CHECK(max_diff(bv.b, gz) <= 1e-15);
  CHECK(max_diff(bv.v[0], derivative(z)) <= 1e-15);

  const auto zero = traces_from_dtn(flat, SampledField::zeros(g), SampledField::zeros(g));
  CHECK(zero.b.max_abs() == 0.0);
  CHECK(zero.v[0].max_abs() == 0.0);

  const auto s = build_surface(PeriodicGrid::line(128), {{{1, 0}, 0.3, 0.0}, {{3, 0}, 0.0, 0.05}});
  const auto oc = harmonic_oracle(s, {2, 0}, Phase::sin);
  const auto rec = traces_from_dtn(s, oc.zeta, oc.exact.g_zeta);
  CHECK(max_diff(rec.b, oc.exact.b) <= 1e-12);
  CHECK(max_diff(rec.v[0], oc.exact.v[0]) <= 1e-12);
  CHECK(max_diff(gradient_trace_sq(oc.exact), gradient_trace_sq_from_dtn(oc.exact)) <= 1e-10);

  CHECK_THROWS_AS(traces_from_dtn(flat, z, SampledField::zeros(PeriodicGrid::line(32))), InputError);
}

TEST_CASE("gradient_trace_sq flat case") {
  const auto g = PeriodicGrid::line(64);
  const auto t = conformal_traces(build_surface(SampledField::zeros(g)),
                                  SampledField::sample(g, [](double x) { return std::cos(x); }));
  CHECK(max_diff(gradient_trace_sq(t), SampledField::constant(g, 1.0)) <= 1e-13);
  const auto t0 = conformal_traces(build_surface(SampledField::zeros(g)), SampledField::zeros(g));
  CHECK(gradient_trace_sq(t0).max_abs() == 0.0);
}

TEST_CASE("conformal backend") {
  const auto g = PeriodicGrid::line(256);
  SUBCASE("flat symbol") {
    const auto s = build_surface(SampledField::zeros(g));
    for (int n : {1, 4, 13}) {
      const auto t = conformal_traces(s, SampledField::sample(g, [n](double x) { return std::cos(n * x); }));
      CHECK(max_diff(t.g_zeta, [n](double x) { return n * std::cos(n * x); }) <= 1e-10);
    }
  }
  SUBCASE("constants have no flux") {
    const auto s = build_surface(g, {{{1, 0}, 0.3, 0.0}, {{2, 0}, 0.0, 0.2}});
    const auto t = conformal_traces(s, SampledField::constant(g, 2.0));
    CHECK(t.g_zeta.max_abs() <= 1e-12);
    CHECK(t.dn_phi.max_abs() <= 1e-12);
    CHECK(t.dt_phi->max_abs() <= 1e-12);
  }
  SUBCASE("independent closed form") {
    const auto s = build_surface(g, {{{1, 0}, 0.3, 0.0}});
    const auto zeta = SampledField::sample(g, [](double x) { return std::exp(0.6 * std::cos(x)) * std::cos(2 * x); });
    const auto t = conformal_traces(s, zeta);
    const auto exact = SampledField::sample(g, [](double x) {
      return 2 * std::exp(0.6 * std::cos(x)) * (std::cos(2 * x) - 0.3 * std::sin(x) * std::sin(2 * x));
    });
    CHECK(relative_l2_error(t.g_zeta, exact) <= 1e-8);
    CHECK(max_diff(t.dn_phi * s.omega(), t.g_zeta) <= 1e-10);
    const auto oc = harmonic_oracle(s, {2, 0}, Phase::cos);
    CHECK(relative_l2_error(*t.dt_phi, *oc.exact.dt_phi) <= 1e-8);
  }
  SUBCASE("operator properties") {
    const auto s = build_surface(g, {{{1, 0}, 0.25, 0.1}, {{3, 0}, -0.05, 0.0}});
    const DtnEngine engine(s, {});
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 3; ++trial) {
      const auto ps = random_data_spec(rng, 1, 6), qs = random_data_spec(rng, 1, 6);
      const auto p = synthesize(g, ps), q = synthesize(g, qs);
      const auto gp = engine(p).g_zeta, gq = engine(q).g_zeta;
      const double a = integrate(p * gq), b = integrate(q * gp);
      CHECK(std::abs(a - b) <= 1e-8 * std::max(std::abs(a), l2_norm(p) * l2_norm(gq)));
      CHECK(std::abs(integrate(gp)) <= 1e-8 * l2_norm(gp));
      CHECK(integrate(p * gp) >= -1e-8);
    }
  }
  CHECK_THROWS_AS(dtn_conformal(theodorsen_solve(build_surface(SampledField::zeros(g))),
                                build_surface(SampledField::zeros(PeriodicGrid::line(128))),
                                SampledField::zeros(PeriodicGrid::line(128))),
                  InputError);
}

TEST_CASE("fd backend in d = 1") {
  const auto g = PeriodicGrid::line(128);
  const auto cosx = SampledField::sample(g, [](double x) { return std::cos(x); });
  SUBCASE("flat target") {
    const auto t = dtn_elliptic(build_surface(SampledField::zeros(g)), cosx, fd_config(128));
    CHECK(t.backend == Backend::fd);
    CHECK(relative_l2_error(t.g_zeta, cosx) <= 5e-3);
  }
  SUBCASE("finite depth symbols") {
    const auto flat = build_surface(SampledField::zeros(g));
    auto cfg = fd_config(128, 1.0);
    cfg.bottom = BottomCondition::zero_dirichlet;
    CHECK(relative_l2_error(dtn_elliptic(flat, cosx, cfg).g_zeta, (1.0 / std::tanh(1.0)) * cosx) <= 1e-6);
    cfg.bottom = BottomCondition::zero_neumann;
    CHECK(relative_l2_error(dtn_elliptic(flat, cosx, cfg).g_zeta, std::tanh(1.0) * cosx) <= 1e-6);
    cfg.bottom = BottomCondition::decay;
    CHECK(relative_l2_error(dtn_elliptic(flat, cosx, cfg).g_zeta, cosx) <= 1e-6);
  }
  SUBCASE("agreement with the conformal backend") {
    const auto s = build_surface(g, {{{1, 0}, 0.2, 0.1}, {{2, 0}, 0.0, -0.15}});
    const auto zeta = synthesize(g, {{{1, 0}, 0.5, 0.2}, {{3, 0}, 0.0, 0.3}});
    const auto fd = dtn_elliptic(s, zeta, fd_config(128));
    const auto cf = conformal_traces(s, zeta);
    CHECK(relative_l2_error(fd.g_zeta, cf.g_zeta) <= 1e-2);
    CHECK(relative_l2_error(*fd.dt_phi, *cf.dt_phi) <= 1e-2);
    CHECK(relative_l2_error(fd.b, cf.b) <= 1e-2);
  }
  SUBCASE("engine matches the free function") {
    const auto s = build_surface(g, {{{2, 0}, 0.2, 0.0}});
    BackendOptions opts;
    opts.kind = Backend::fd;
    opts.fd = fd_config(64);
    const DtnEngine engine(s, opts);
    CHECK(max_diff(engine(cosx).g_zeta, dtn_elliptic(s, cosx, fd_config(64)).g_zeta) <= 1e-12);
  }
  SUBCASE("second-order or better convergence") {
    const FourierSpec h = {{{1, 0}, 0.3, 0.0}};
    double err[2];
    for (int i = 0; i < 2; ++i) {
      const int m = 32 << i;
      const auto s = build_surface(PeriodicGrid::line(m), h);
      const auto oc = harmonic_oracle(s, {2, 0}, Phase::cos);
      auto cfg = fd_config(m);
      cfg.order = 2;
      err[i] = relative_l2_error(dtn_elliptic(s, oc.zeta, cfg).g_zeta, oc.exact.g_zeta);
    }
    CHECK(err[0] / err[1] >= 3.0);
  }
}

TEST_CASE("fd backend in d = 2") {
  SUBCASE("flat diagonal mode") {
    const auto p = PeriodicGrid::plane(32, 32);
    const auto zeta = SampledField::sample(p, [](double a, double b) { return std::cos(a) * std::cos(b); });
    const auto t = dtn_elliptic(build_surface(SampledField::zeros(p)), zeta, fd_config(48));
    CHECK(relative_l2_error(t.g_zeta, std::sqrt(2.0) * zeta) <= 1e-2);
    CHECK(!t.dt_phi.has_value());
  }
  SUBCASE("oracle on a curved surface") {
    const auto p = PeriodicGrid::plane(96, 96);
    const auto s = build_surface(p, {{{1, 0}, 0.2, 0.0}, {{0, 1}, 0.0, 0.1}});
    const auto oc = harmonic_oracle(s, {1, 0}, Phase::cos);
    const auto t = dtn_elliptic(s, oc.zeta, fd_config(96));
    CHECK(relative_l2_error(t.g_zeta, oc.exact.g_zeta) <= 1e-2);
  }
}

TEST_CASE("fd configuration errors") {
  const auto g = PeriodicGrid::line(32);
  const auto flat = build_surface(SampledField::zeros(g));
  const auto z = SampledField::zeros(g);
  auto cfg = fd_config(32, -1.0);
  CHECK_THROWS_AS(dtn_elliptic(flat, z, cfg), InputError);
  cfg = fd_config(32);
  cfg.order = 3;
  CHECK_THROWS_AS(dtn_elliptic(flat, z, cfg), InputError);
  CHECK_THROWS_AS(dtn_elliptic(flat, z, fd_config(4)), InputError);
  CHECK_THROWS_AS(dtn_elliptic(build_surface(g, {{{1, 0}, 2.0, 0.0}}), z, fd_config(32, 3.0)), InputError);
  const auto p = PeriodicGrid::plane(16, 16);
  cfg = fd_config(16);
  cfg.bottom = BottomCondition::decay;
  CHECK_THROWS_AS(dtn_elliptic(build_surface(SampledField::zeros(p)), SampledField::zeros(p), cfg), InputError);
  const auto big = PeriodicGrid::plane(512, 512);
  CHECK_THROWS_AS(dtn_elliptic(build_surface(SampledField::zeros(big)), SampledField::zeros(big), fd_config(64)),
                  SolverError);
  CHECK(EllipticConfig{}.resolved_order(1) == 6);
  CHECK(EllipticConfig{}.resolved_order(2) == 4);
  CHECK(EllipticConfig{}.resolved_bottom(2) == BottomCondition::zero_neumann);
}

TEST_CASE("engine rejects the oracle backend") {
  BackendOptions opts;
  opts.kind = Backend::oracle;
  CHECK_THROWS_AS(DtnEngine(build_surface(SampledField::zeros(PeriodicGrid::line(16))), opts), InputError);
}
