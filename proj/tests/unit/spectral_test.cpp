#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "rellich/errors.hpp"
#include "rellich/spectral.hpp"

using namespace rellich;
using testing::max_diff;

namespace {
constexpr double kPi = PeriodicGrid::kPi;

SampledField band_limited(const PeriodicGrid& g, std::uint64_t seed, int kmax) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> a(kmax + 1), b(kmax + 1);
  for (int k = 0; k <= kmax; ++k) a[k] = u(rng), b[k] = u(rng);
  return SampledField::sample(g, [&](double x) {
    double s = a[0];
    for (int k = 1; k <= kmax; ++k) s += a[k] * std::cos(k * x) + b[k] * std::sin(k * x);
    return s;
  });
}
}  // namespace

TEST_CASE("grid rejects odd and tiny sizes") {
  CHECK_THROWS_AS(PeriodicGrid::line(6), InputError);
  CHECK_THROWS_AS(PeriodicGrid::line(65), InputError);
  CHECK_THROWS_AS(PeriodicGrid::plane(16, 7), InputError);
  CHECK(PeriodicGrid::plane(16, 8).count() == 128);
}

TEST_CASE("field rejects non-finite samples and wrong shapes") {
  const auto g = PeriodicGrid::line(8);
  CHECK_THROWS_AS(SampledField(g, std::vector<double>(7, 0.0)), InputError);
  std::vector<double> v(8, 0.0);
  v[3] = std::nan("");
  CHECK_THROWS_AS(SampledField(g, v), InputError);
}

TEST_CASE("derivative") {
  const auto g64 = PeriodicGrid::line(64);
  const auto c3 = SampledField::sample(g64, [](double x) { return std::cos(3 * x); });
  CHECK(max_diff(derivative(c3), [](double x) { return -3 * std::sin(3 * x); }) <= 1e-12);
  CHECK(derivative(SampledField::constant(g64, 2.5)).max_abs() <= 1e-14);

  const auto g128 = PeriodicGrid::line(128);
  const auto e = SampledField::sample(g128, [](double x) { return std::exp(std::cos(x)); });
  CHECK(max_diff(derivative(e), [](double x) { return -std::sin(x) * std::exp(std::cos(x)); }) <= 1e-10);

  CHECK_THROWS_AS(derivative(c3, 1), InputError);

  SUBCASE("nyquist mode is dropped") {
    const auto ny = SampledField::sample(PeriodicGrid::line(16), [](double x) { return std::cos(8 * x); });
    CHECK(derivative(ny).max_abs() <= 1e-12);
  }
  SUBCASE("plane axes") {
    const auto g = PeriodicGrid::plane(32, 16);
    const auto f = SampledField::sample(g, [](double a, double b) { return std::sin(2 * a) * std::cos(3 * b); });
    const auto fx = derivative(f, 0), fy = derivative(f, 1);
    double e = 0.0;
    for (int i = 0; i < 32; ++i)
      for (int j = 0; j < 16; ++j) {
        const double a = g.node(0, i), b = g.node(1, j);
        e = std::max(e, std::abs(fx[i * 16 + j] - 2 * std::cos(2 * a) * std::cos(3 * b)));
        e = std::max(e, std::abs(fy[i * 16 + j] + 3 * std::sin(2 * a) * std::sin(3 * b)));
      }
    CHECK(e <= 1e-12);
  }
}

TEST_CASE("hilbert transform") {
  const auto g = PeriodicGrid::line(64);
  for (int n : {1, 4, 17}) {
    const auto c = SampledField::sample(g, [n](double x) { return std::cos(n * x); });
    const auto s = SampledField::sample(g, [n](double x) { return std::sin(n * x); });
    CHECK(max_diff(hilbert(c), s) <= 1e-13);
    CHECK(max_diff(hilbert(s), -c) <= 1e-13);
  }
  CHECK(hilbert(SampledField::constant(g, 3.0)).max_abs() <= 1e-15);
  CHECK_THROWS_AS(hilbert(SampledField::zeros(PeriodicGrid::plane(8, 8))), InputError);

  const auto f = band_limited(g, 11, 20);
  CHECK(max_diff(hilbert(hilbert(f)), -(f + (-f.mean()))) <= 1e-12);
}

TEST_CASE("abs_d") {
  const auto g = PeriodicGrid::line(64);
  for (int n : {1, 2, 9}) {
    const auto c = SampledField::sample(g, [n](double x) { return std::cos(n * x); });
    CHECK(max_diff(abs_d(c), double(n) * c) <= 1e-12);
  }
  CHECK(abs_d(SampledField::constant(g, -1.0)).max_abs() <= 1e-15);
  const auto f = band_limited(g, 5, 25);
  CHECK(max_diff(abs_d(f), hilbert(derivative(f))) <= 1e-12);
  CHECK_THROWS_AS(abs_d(SampledField::zeros(PeriodicGrid::plane(8, 8))), InputError);
}

TEST_CASE("integrate") {
  const auto g = PeriodicGrid::line(32);
  CHECK(integrate(SampledField::constant(g, 1.0)) == doctest::Approx(2 * kPi).epsilon(1e-15));
  CHECK(std::abs(integrate(SampledField::sample(g, [](double x) { return std::cos(5 * x); }))) <= 1e-14);
  CHECK(integrate(SampledField::sample(g, [](double x) { return std::cos(x) * std::cos(x); })) ==
        doctest::Approx(kPi).epsilon(1e-14));
  const auto p = PeriodicGrid::plane(8, 8);
  CHECK(integrate(SampledField::constant(p, 1.0)) == doctest::Approx(4 * kPi * kPi).epsilon(1e-14));

  const auto f = band_limited(PeriodicGrid::line(64), 3, 20);
  CHECK(std::abs(integrate(derivative(f))) <= 1e-12);
}

TEST_CASE("parseval") {
  const auto f = band_limited(PeriodicGrid::line(64), 21, 31);
  const Spectrum s = forward(f);
  double sum = std::norm(s.at(0)) + std::norm(s.at(32));
  for (int n = 1; n < 32; ++n) sum += 2 * std::norm(s.at(n));
  CHECK(integrate(f * f) == doctest::Approx(2 * kPi * sum).epsilon(1e-12));
  CHECK(max_diff(inverse(s), f) <= 1e-13);
}

TEST_CASE("spectrum conjugate symmetry in the plane") {
  const auto g = PeriodicGrid::plane(16, 16);
  const auto f = SampledField::sample(g, [](double a, double b) { return std::cos(2 * a - 3 * b) + std::sin(a); });
  const Spectrum s = forward(f);
  CHECK(std::abs(s.at(2, -3) - 0.5) <= 1e-14);
  CHECK(std::abs(s.at(-2, 3) - std::conj(s.at(2, -3))) <= 1e-14);
  CHECK(std::abs(s.at(1, 0) - std::complex<double>(0, -0.5)) <= 1e-14);
}

TEST_CASE("lp_norm") {
  const auto g = PeriodicGrid::line(32);
  CHECK(lp_norm(SampledField::constant(g, 1.0), 2.0) == doctest::Approx(std::sqrt(2 * kPi)).epsilon(1e-14));
  CHECK(lp_norm(SampledField::zeros(g), 1.5) == 0.0);
  const auto c = SampledField::sample(g, [](double x) { return std::cos(x); });
  CHECK(lp_norm(c, 2.0) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
  CHECK(lp_norm(c, 2.0, SampledField::constant(g, 4.0)) == doctest::Approx(2 * std::sqrt(kPi)).epsilon(1e-14));
  CHECK_THROWS_AS(lp_norm(c, 0.5), InputError);
  CHECK_THROWS_AS(lp_norm(c, 2.0, SampledField::constant(g, -1.0)), InputError);
}

TEST_CASE("h_minus1_norm") {
  const auto g = PeriodicGrid::line(64);
  const auto c1 = SampledField::sample(g, [](double x) { return std::cos(x); });
  CHECK(h_minus1_norm(derivative(c1)) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
  const auto c2 = SampledField::sample(g, [](double x) { return std::cos(2 * x); });
  CHECK(h_minus1_norm(c2) == doctest::Approx(std::sqrt(kPi) / 2).epsilon(1e-13));
  CHECK(h_minus1_norm(SampledField::zeros(g)) == 0.0);
  CHECK_THROWS_AS(h_minus1_norm(c2 + 0.1), InputError);

  const auto f = band_limited(g, 8, 25);
  CHECK(h_minus1_norm(derivative(f)) == doctest::Approx(l2_norm(f + (-f.mean()))).epsilon(1e-10));
}

TEST_CASE("trigonometric interpolation") {
  const auto g = PeriodicGrid::line(32);
  const auto c2 = SampledField::sample(g, [](double x) { return std::cos(2 * x); });
  const double third = kPi / 3;
  CHECK(std::abs(eval_trig(c2, std::span<const double>(&third, 1))[0] + 0.5) <= 1e-12);

  const auto f = band_limited(g, 2, 16);
  std::vector<double> nodes(32);
  for (int j = 0; j < 32; ++j) nodes[j] = g.node(0, j);
  const auto at_nodes = eval_trig(f, nodes);
  for (int j = 0; j < 32; ++j) CHECK(std::abs(at_nodes[j] - f[j]) <= 1e-13);

  const auto h = SampledField::sample(g, [](double x) { return std::sin(x) + std::cos(3 * x); });
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<double> pts(1000);
  for (auto& p : pts) p = u(rng);
  const auto vals = eval_trig(h, pts);
  double e = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) e = std::max(e, std::abs(vals[i] - std::sin(pts[i]) - std::cos(3 * pts[i])));
  CHECK(e <= 1e-12);

  const TrigInterpolant ti(h);
  const auto [v, d] = ti.with_derivative(0.7);
  CHECK(std::abs(v - std::sin(0.7) - std::cos(2.1)) <= 1e-13);
  CHECK(std::abs(d - std::cos(0.7) + 3 * std::sin(2.1)) <= 1e-12);
}

TEST_CASE("refine") {
  const auto f = SampledField::sample(PeriodicGrid::line(16), [](double x) { return std::sin(3 * x) + 0.5; });
  const auto r = refine(f, 4);
  CHECK(r.grid().size(0) == 64);
  CHECK(max_diff(r, [](double x) { return std::sin(3 * x) + 0.5; }) <= 1e-13);
  CHECK_THROWS_AS(refine(f, 0), InputError);
}

TEST_CASE("invert_monotone_circle_map") {
  const auto g = PeriodicGrid::line(64);
  SUBCASE("identity") {
    const auto a = invert_monotone_circle_map(SampledField::zeros(g));
    CHECK(max_diff(a, [](double x) { return x; }) <= 1e-14);
  }
  SUBCASE("round trip") {
    const auto u = SampledField::sample(g, [](double a) { return 0.2 * std::sin(a); });
    std::vector<double> x(64);
    for (int j = 0; j < 64; ++j) x[j] = g.node(0, j) + u[j];
    const auto alpha = invert_monotone_circle_map(u, x);
    for (int j = 0; j < 64; ++j) CHECK(std::abs(alpha[j] - g.node(0, j)) <= 1e-12);
    const auto a_nodes = invert_monotone_circle_map(u);
    for (int j = 0; j < 64; ++j) {
      const double a = a_nodes[j];
      CHECK(std::abs(a + 0.2 * std::sin(a) - g.node(0, j)) <= 1e-12);
    }
  }
  SUBCASE("non-monotone input") {
    const auto u = SampledField::sample(g, [](double a) { return 1.5 * std::sin(a); });
    CHECK_THROWS_AS(invert_monotone_circle_map(u), MonotonicityError);
  }
}
