#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "vexp/exponents.hpp"
#include "vexp/matrices.hpp"
#include "vexp/special.hpp"

using namespace vexp;
using doctest::Approx;

TEST_CASE("evaluation") {
  CHECK(ExponentFunction::constant(2.0)(5.0) == 2.0);
  const auto p = ExponentFunction::log_interp(3.0, 2.0);
  CHECK(p(0.0) == Approx(3.0).epsilon(1e-15));
  const double r = std::exp(2.0) - std::exp(1.0);
  CHECK(p(r) == Approx(2.5).epsilon(1e-14));
  for (double x : {0.01, 0.7, 3.0, 1e4}) CHECK(p(x) == Approx(oracle::log_interp(3.0, 2.0, x)).epsilon(1e-14));
}

TEST_CASE("ranges") {
  const auto c = ExponentFunction::constant(2.0).range(0.5, 8.0);
  CHECK(c.first == 2.0);
  CHECK(c.second == 2.0);
  const auto p = ExponentFunction::log_interp(3.0, 2.0);
  const auto all = p.range(0.0, kInf);
  CHECK(all.first == Approx(2.0));
  CHECK(all.second == Approx(3.0));
  const auto tail = p.range(std::exp(2.0) - std::exp(1.0), kInf);
  CHECK(tail.first == Approx(2.0));
  CHECK(tail.second == Approx(2.5).epsilon(1e-12));
  CHECK(p.minus() == Approx(2.0));
  CHECK(p.plus() == Approx(3.0));
}

TEST_CASE("piecewise exponent takes the right value at the break") {
  const auto p = ExponentFunction::piecewise({1.0}, {2.0, 3.0});
  CHECK(p(0.5) == 2.0);
  CHECK(p(1.0) == 3.0);
  CHECK(p(4.0) == 3.0);
  CHECK_FALSE(p.log_holder_zero().has_value());
}

TEST_CASE("validation of bounded exponents") {
  CHECK_THROWS(ExponentFunction::constant(1.0));
  CHECK_THROWS(ExponentFunction::log_interp(0.5, 2.0));
  CHECK_NOTHROW(SignedExponent::constant(-3.0));
}

TEST_CASE("combine_reciprocal") {
  const auto q = combine_reciprocal({ExponentFunction::constant(4.0), ExponentFunction::constant(4.0)});
  CHECK(q.is_constant());
  CHECK(q(1.0) == Approx(2.0).epsilon(1e-15));
  CHECK(combine_reciprocal({ExponentFunction::constant(3.0)})(2.0) == Approx(3.0));
  const auto a = ExponentFunction::log_interp(6.0, 4.0);
  const auto b = ExponentFunction::constant(4.0);
  const auto m = combine_reciprocal({a, b});
  CHECK(m(0.0) == Approx(2.4).epsilon(1e-14));
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double r = std::exp(-20.0 + 40.0 * i / 999.0);
    worst = std::max(worst, std::abs(1.0 / m(r) - 1.0 / oracle::log_interp(6.0, 4.0, r) - 0.25));
  }
  CHECK(worst < 1e-14);
  CHECK_THROWS_AS(combine_reciprocal({ExponentFunction::constant(1.5), ExponentFunction::constant(1.5)}),
                  std::domain_error);
}

TEST_CASE("difference_reciprocal") {
  const auto two = ExponentFunction::constant(2.0);
  CHECK(difference_reciprocal(two, two, 1.0).infinite_everywhere());
  const auto r = difference_reciprocal(two, two, 2.0);
  CHECK(r(1.0) == Approx(4.0).epsilon(1e-14));
  CHECK_THROWS_AS(difference_reciprocal(ExponentFunction::constant(3.0), two, 1.0), std::domain_error);
}

TEST_CASE("pullback matches direct composition") {
  const auto q = ExponentFunction::log_interp(3.0, 2.0);
  CHECK(pullback_exponent(ExponentFunction::constant(2.0),
                          MatrixFamily::scalar_dilation(1, PowerMap{1.0, 1.0}), 0.3)(1.7) == 2.0);
  const auto fam1 = MatrixFamily::scalar_dilation(1, PowerMap{1.0, 0.0});
  CHECK(pullback_exponent(q, fam1, 0.4)(2.0) == Approx(q(2.0)));
  const double s = std::exp(2.0) - std::exp(1.0);
  const auto fam = MatrixFamily::scalar_dilation(1, PowerMap{s, 0.0});
  const auto pulled = pullback_exponent(q, fam, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double x = std::exp(-5.0 + 10.0 * i / 99.0);
    CHECK(pulled(x) == Approx(oracle::log_interp(3.0, 2.0, x / s)).epsilon(1e-12));
  }
}

TEST_CASE("ball_measure") {
  CHECK(ball_measure(PowerWeight{0.0, 2}, 1.0) == Approx(std::numbers::pi));
  CHECK(ball_measure(PowerWeight{1.0, 1}, 2.0) == Approx(4.0));
  CHECK_THROWS_AS(ball_measure(PowerWeight{-1.5, 1}, 1.0), std::domain_error);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> g(-0.8, 2.0), R(0.2, 3.0);
  for (int i = 0; i < 20; ++i) {
    const int n = 1 + i % 3;
    const double gamma = g(rng), rad = R(rng);
    // integrand r^{gamma+n} in u = ln r, tail below e^{-400} rad is negligible
    const double mid = oracle::sphere_area(n) *
                       oracle::simpson([&](double u) { return std::exp(u * (gamma + n)); },
                                       std::log(rad) - 400.0, std::log(rad), 400000);
    CHECK(ball_measure(PowerWeight{gamma, n}, rad) == Approx(mid).epsilon(1e-8));
  }
}

TEST_CASE("log-Hoelder certificates for log_interp") {
  const double p0 = 3.5, pinf = 1.5;
  const auto p = ExponentFunction::log_interp(p0, pinf);
  for (int i = 0; i < 200; ++i) {
    const double x = std::exp(-30.0 + 60.0 * i / 199.0);
    CHECK(std::abs(p(x) - p0) * std::log(std::numbers::e + 1.0 / x) <= std::abs(p0 - pinf) + 1e-12);
    CHECK(std::abs(p(x) - pinf) * std::log(std::numbers::e + x) <= std::abs(p0 - pinf) + 1e-12);
  }
  REQUIRE(p.log_holder_zero().has_value());
  CHECK(*p.log_holder_zero() == Approx(2.0));
}
