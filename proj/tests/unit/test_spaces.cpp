#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "vexp/spaces.hpp"

using namespace vexp;
using doctest::Approx;

namespace {

SpaceSpec herz(double alpha, double p, double q) {
  SpaceSpec s;
  s.kind = SpaceKind::Herz;
  s.alpha = SignedExponent::constant(alpha);
  s.p = p;
  s.q = ExponentFunction::constant(q);
  return s;
}

PiecewisePowerFunction shell_indicator(int k) {
  return PiecewisePowerFunction::indicator(std::ldexp(1.0, k - 1), std::ldexp(1.0, k));
}

}  // namespace

TEST_CASE("shell norms") {
  const auto f0 = shell_indicator(0);
  CHECK(shell_norm(f0, herz(0, 2, 2), 0) == Approx(1.0).epsilon(1e-10));
  CHECK(shell_norm(f0, herz(0, 2, 2), 5) == 0.0);
  CHECK(shell_norm(shell_indicator(1), herz(1, 2, 2), 1) == Approx(2.0 * std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("herz norms") {
  const auto r = herz_norm(shell_indicator(0), herz(0, 2, 2), -40, 40);
  CHECK(r.value == Approx(1.0).epsilon(1e-10));
  CHECK_FALSE(r.truncation_suspect);
  PiecewisePowerFunction two({PowerSegment{0.5, 1.0, 1.0, ExponentExpr::constant(0.0)},
                              PowerSegment{1.0, 2.0, 1.0, ExponentExpr::constant(0.0)}});
  CHECK(herz_norm(two, herz(1, 1, 2), -40, 40).value == Approx(1.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("herz with alpha zero and p = q is the Lebesgue norm") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> c(0.1, 4.0), b(-0.3, 2.0), hi(0.3, 9.0), q(1.2, 4.0);
  for (int i = 0; i < 20; ++i) {
    const double qq = q(rng);
    const auto f = PiecewisePowerFunction::power(c(rng), b(rng) / qq, 0.0, hi(rng));
    const double h = herz_norm(f, herz(0, qq, qq), -40, 40).value;
    const double l = weighted_vexp_norm(f, ExponentFunction::constant(qq), PowerWeight{}, Region::all());
    CHECK(h == Approx(l).epsilon(1e-6));
  }
}

TEST_CASE("morrey herz norms") {
  SpaceSpec s = herz(0, 2, 2);
  s.kind = SpaceKind::MorreyHerz;
  s.lambda = 0.5;
  const auto r = morrey_herz_norm(shell_indicator(0), s, -40, 40, -40, 40);
  CHECK(r.value == Approx(1.0).epsilon(1e-10));
  REQUIRE(r.argmax.has_value());
  CHECK(*r.argmax == 0);
  CHECK(morrey_herz_norm(PiecewisePowerFunction(), s, -40, 40, -40, 40).value == 0.0);

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> b(-0.2, 1.5), a(-0.3, 0.3);
  for (int i = 0; i < 10; ++i) {
    SpaceSpec m;
    m.kind = SpaceKind::MorreyHerz;
    m.alpha = SignedExponent::log_interp(a(rng), a(rng));
    m.q = ExponentFunction::log_interp(2.0, 3.0);
    m.p = 1.5;
    m.lambda = 0.0;
    SpaceSpec h = m;
    h.kind = SpaceKind::Herz;
    const auto f = PiecewisePowerFunction::power(1.0, b(rng), 0.0, 5.0);
    CHECK(morrey_herz_norm(f, m, -20, 20, -20, 20).value == herz_norm(f, h, -20, 20).value);
  }
}

TEST_CASE("central morrey norms") {
  SpaceSpec s;
  s.kind = SpaceKind::CentralMorrey;
  s.lambda = -0.1;
  s.q = ExponentFunction::constant(2.0);
  const auto f = PiecewisePowerFunction::power(1.0, -0.1);
  CHECK(central_morrey_norm(f, s, -40, 40).value ==
        Approx(std::pow(2.0, 0.1) / std::sqrt(0.8)).epsilon(1e-9));
  CHECK(central_morrey_norm(f, s, -40, 40).value == Approx(oracle::central_power_norm(-0.1)).epsilon(1e-9));
  CHECK(central_morrey_norm(PiecewisePowerFunction(), s, -40, 40).value == 0.0);

  // Constant q with w1 = |x|^g and w2 = |x|^{g/q}: brute force over the same dyadic radii.
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> gd(0.0, 1.0), bd(0.0, 1.0), qd(1.5, 3.0);
  std::uniform_int_distribution<int> kd(-3, 3);
  for (int i = 0; i < 10; ++i) {
    const int n = 1 + i % 3;
    const double g = gd(rng), b = bd(rng), q = qd(rng), lambda = -0.2;
    const double top = std::ldexp(1.0, kd(rng));
    SpaceSpec c;
    c.kind = SpaceKind::CentralMorrey;
    c.lambda = lambda;
    c.q = ExponentFunction::constant(q);
    c.weight = PowerWeight{g, n};
    c.alpha = SignedExponent::constant(g / q);
    const auto f = PiecewisePowerFunction::power(1.5, b, 0.0, top);
    double ref = 0.0;
    for (int j = -40; j <= 40; ++j) {
      const double R = std::ldexp(1.0, j);
      const double w1 = oracle::sphere_area(n) * std::pow(R, n + g) / (n + g);
      const double inner = 1.5 * std::pow(oracle::sphere_area(n) *
                                              oracle::power_integral(b * q + g + n - 1.0, 0.0, std::min(R, top)),
                                          1.0 / q);
      ref = std::max(ref, inner / std::pow(w1, lambda + 1.0 / q));
    }
    CHECK(central_morrey_norm(f, c, -40, 40).value == Approx(ref).epsilon(1e-6));
  }
}

TEST_CASE("scan ranges are monotone") {
  const auto f = PiecewisePowerFunction::power(1.0, 0.3, 0.0, 6.0);
  const auto s = herz(0.2, 2.0, 2.5);
  double prev = 0.0;
  for (int w = 2; w <= 40; w += 4) {
    const double v = herz_norm(f, s, -w, w).value;
    CHECK(v >= prev);
    prev = v;
  }
  SpaceSpec c;
  c.kind = SpaceKind::CentralMorrey;
  c.lambda = -0.3;
  prev = 0.0;
  for (int w = 2; w <= 40; w += 4) {
    const double v = central_morrey_norm(f, c, -w, w).value;
    CHECK(v >= prev);
    prev = v;
  }
}
