#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "rellich/conformal.hpp"
#include "rellich/errors.hpp"
#include "rellich/suites.hpp"

using namespace rellich;
using testing::max_diff;

TEST_CASE("identity and translated maps") {
  const auto g = PeriodicGrid::line(64);
  for (double c : {0.0, -0.4}) {
    const auto cb = theodorsen_solve(build_surface(SampledField::constant(g, c)));
    CHECK(cb.u.max_abs() <= 1e-15);
    CHECK(max_diff(cb.v, SampledField::constant(cb.alpha_grid, c)) <= 1e-15);
    CHECK(max_diff(cb.jac, SampledField::constant(cb.alpha_grid, 1.0)) <= 1e-15);
    CHECK(cb.g.max_abs() <= 1e-15);
  }
}

TEST_CASE("small amplitude expansion") {
  const auto g = PeriodicGrid::line(64);
  auto defect = [&](double a) {
    const auto cb = theodorsen_solve(build_surface(g, {{{1, 0}, a, 0.0}}));
    return max_diff(cb.u, [a](double x) { return a * std::sin(x); });
  };
  const double a = 0.05;
  const double e1 = defect(a), e2 = defect(a / 2);
  CHECK(e1 <= 5 * a * a);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("invariants on the standard suite") {
  const auto g = PeriodicGrid::line(256);
  for (const auto& spec : standard_surface_suite()) {
    const auto s = build_surface(g, spec);
    TheodorsenOptions opts;
    const auto cb = theodorsen_solve(s, opts);
    CHECK(cb.residual <= opts.tol);
    CHECK(std::abs(cb.u.mean()) <= 1e-14);
    CHECK(cb.x_alpha.min() > 0.0);
    CHECK(cb.jac_min > 0.0);
    CHECK(cb.jac_min <= cb.jac_max);
    CHECK(cb.g.max_abs() < PeriodicGrid::kPi / 2);
    CHECK(max_diff(cb.u, hilbert(cb.v + (-cb.v.mean()))) <= 1e-11);

    const TrigInterpolant h(s.height());
    const TrigInterpolant hx(s.gradient(0));
    const auto x = cb.x_nodes();
    double graph = 0.0, angle = 0.0, factor = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double slope = hx(x[j]);
      graph = std::max(graph, std::abs(cb.v[j] - h(x[j])));
      angle = std::max(angle, std::abs(std::tan(cb.g[j]) - slope));
      factor = std::max(factor, std::abs(cb.jac[j] - cb.x_alpha[j] * std::sqrt(1 + slope * slope)));
    }
    CHECK(graph <= 1e-10);
    CHECK(angle <= 1e-6);
    CHECK(factor <= 1e-8);
    CHECK(integrate(cb.jac) == doctest::Approx(integrate(s.omega())).epsilon(1e-8));
  }
}

TEST_CASE("pullback and pushforward") {
  const auto g = PeriodicGrid::line(128);
  const auto f = SampledField::sample(g, [](double x) { return std::cos(2 * x) + 0.3 * std::sin(5 * x); });

  const auto flat = theodorsen_solve(build_surface(SampledField::zeros(g)));
  const auto pf = pullback(flat, f);
  CHECK(max_diff(pf, [](double x) { return std::cos(2 * x) + 0.3 * std::sin(5 * x); }) <= 1e-12);

  const auto cb = theodorsen_solve(build_surface(g, {{{1, 0}, 0.3, 0.0}, {{2, 0}, 0.0, 0.1}}));
  const auto c = pullback(cb, SampledField::constant(g, 1.5));
  CHECK(max_diff(c, SampledField::constant(cb.alpha_grid, 1.5)) <= 1e-13);
  CHECK(max_diff(pushforward(cb, SampledField::constant(cb.alpha_grid, -2.0)), SampledField::constant(g, -2.0)) <=
        1e-13);
  CHECK(max_diff(pushforward(cb, pullback(cb, f)), f) <= 1e-9);

  CHECK_THROWS_AS(pullback(cb, SampledField::zeros(PeriodicGrid::line(64))), InputError);
  CHECK_THROWS_AS(pushforward(cb, f), InputError);
}

TEST_CASE("solver errors") {
  const auto g = PeriodicGrid::line(64);
  const auto s = build_surface(g, {{{1, 0}, 0.3, 0.0}});
  TheodorsenOptions bad;
  bad.relax = 0.0;
  CHECK_THROWS_AS(theodorsen_solve(s, bad), InputError);
  bad = {};
  bad.tol = 0.0;
  CHECK_THROWS_AS(theodorsen_solve(s, bad), InputError);
  bad = {};
  bad.oversample = 0;
  CHECK_THROWS_AS(theodorsen_solve(s, bad), InputError);

  TheodorsenOptions short_run;
  short_run.max_iter = 2;
  try {
    theodorsen_solve(s, short_run);
    FAIL("expected a convergence failure");
  } catch (const ConvergenceError& e) {
    CHECK(e.iterations() == 2);
    CHECK(e.residual() > short_run.tol);
  }

  TheodorsenOptions greedy;
  greedy.relax = 1.0;
  CHECK_THROWS_AS(theodorsen_solve(build_surface(g, {{{2, 0}, 0.9, 0.0}}), greedy), MonotonicityError);

  CHECK_THROWS_AS(theodorsen_solve(build_surface(PeriodicGrid::plane(16, 16), {})), InputError);
}
