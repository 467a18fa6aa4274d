#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "vexp/bounds.hpp"

using namespace vexp;
using doctest::Approx;

namespace {

BoundConfig hardy_cfg(double q = 2.0) {
  BoundConfig cfg;
  cfg.op = from_hardy_littlewood(PowerMap{1.0, 0.0});
  SlotParams s;
  s.q = ExponentFunction::constant(q);
  s.p = q;
  cfg.slots = {s};
  return cfg;
}

BoundConfig central_cfg(double gamma = 0.0) {
  BoundConfig cfg;
  cfg.op.kernel = RadialKernel{PowerMap{1.0, 0.0}, 1.0, 2.0, false};
  cfg.op.families = {MatrixFamily::scalar_dilation(1, PowerMap{1.0, 1.0})};
  SlotParams s;
  s.lambda = -0.1;
  s.gamma = gamma;
  cfg.slots = {s};
  return cfg;
}

BoundConfig constant_cfg(double lambda) {
  BoundConfig cfg;
  cfg.op.n = 2;
  cfg.op.m = 2;
  cfg.op.kernel = RadialKernel{PowerMap{1.0, 0.5}, 0.2, 1.0, false};
  cfg.op.families = {MatrixFamily::diag_equal(PowerMap{1.5, 0.7}, {1, -1}),
                     MatrixFamily::scalar_dilation(2, PowerMap{0.8, -0.4})};
  SlotParams a;
  a.q = ExponentFunction::constant(6.0);
  a.gamma = 0.1;
  a.alpha = SignedExponent::constant(0.2);
  a.lambda = lambda;
  a.p = 4.0;
  SlotParams b = a;
  b.q = ExponentFunction::constant(3.0);
  b.alpha = SignedExponent::constant(-0.1);
  cfg.slots = {a, b};
  return cfg;
}

double value(const BoundConfig& cfg, ConstantId id) { return evaluate_constant(cfg, id).value; }

}  // namespace

TEST_CASE("constant ids") {
  CHECK(all_constant_ids().size() == 15);
  for (auto id : all_constant_ids()) CHECK(parse_constant_id(to_string(id)) == id);
  CHECK(to_string(ConstantId::C2Star) == "C2*");
  CHECK_THROWS(parse_constant_id("C13"));
}

TEST_CASE("hardy average constants") {
  const auto cfg = hardy_cfg();
  CHECK(value(cfg, ConstantId::C1) == Approx(2.0).epsilon(1e-10));
  CHECK(value(cfg, ConstantId::C2) == Approx(2.0).epsilon(1e-10));
  CHECK(value(cfg, ConstantId::C6) == Approx(2.0).epsilon(1e-10));
  CHECK(std::abs(value(cfg, ConstantId::C9) - 2.0) < 1e-9);
  for (double p : {1.5, 3.0, 5.0}) CHECK(value(hardy_cfg(p), ConstantId::C9) == Approx(p / (p - 1.0)).epsilon(1e-10));
}

TEST_CASE("bilinear hardy constant") {
  BoundConfig cfg;
  cfg.op = from_multilinear_hardy_cesaro(PowerMap{1.0, 0.0}, {PowerMap{1.0, 1.0}, PowerMap{1.0, 1.0}});
  SlotParams s;
  s.q = ExponentFunction::constant(4.0);
  s.p = 4.0;
  cfg.slots = {s, s};
  CHECK(std::abs(value(cfg, ConstantId::C9) - 2.0) < 1e-9);
}

TEST_CASE("central morrey constants") {
  CHECK(std::abs(value(central_cfg(), ConstantId::C12) - oracle::c12_fixture(-0.1)) < 1e-9);
  CHECK(value(central_cfg(), ConstantId::C12) == Approx(1.33934).epsilon(1e-5));
  auto cfg = central_cfg(0.3);
  cfg.slots[0].alpha = SignedExponent::constant(0.3 / 2.0);
  CHECK(value(cfg, ConstantId::C11) == Approx(value(cfg, ConstantId::C12)).epsilon(1e-12));
  auto bad = central_cfg();
  bad.slots[0].lambda = 0.1;
  CHECK_THROWS_AS(evaluate_constant(bad, ConstantId::C12), HypothesisError);
  bad.slots[0].lambda = -0.6;
  CHECK_THROWS_AS(evaluate_constant(bad, ConstantId::C12), HypothesisError);
}

TEST_CASE("identity families collapse to the kernel integral") {
  BoundConfig cfg;
  cfg.op.kernel = RadialKernel{PowerMap{1.0, 0.0}, 1.0, 2.0, false};
  cfg.op.families = {MatrixFamily::scalar_dilation(1, PowerMap{1.0, 0.0})};
  SlotParams s;
  s.q = ExponentFunction::constant(2.5);
  cfg.slots = {s};
  CHECK(value(cfg, ConstantId::C1) == Approx(2.0 * std::log(2.0)).epsilon(1e-12));
  s.lambda = -0.2;
  cfg.slots = {s};
  CHECK(value(cfg, ConstantId::C12) == Approx(2.0 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("max and min pairs agree for constant exponents") {
  const auto cfg = constant_cfg(0.3);
  CHECK(std::abs(value(cfg, ConstantId::C2) - value(cfg, ConstantId::C2Star)) <= 1e-12 * value(cfg, ConstantId::C2));
  CHECK(std::abs(value(cfg, ConstantId::C5) - value(cfg, ConstantId::C5Star)) <= 1e-12 * value(cfg, ConstantId::C5));
  CHECK(std::abs(value(cfg, ConstantId::C6) - value(cfg, ConstantId::C6Star)) <= 1e-12 * value(cfg, ConstantId::C6));
  const auto zero = constant_cfg(0.0);
  CHECK(std::abs(value(zero, ConstantId::C7) - value(zero, ConstantId::C8)) <= 1e-12 * value(zero, ConstantId::C8));
}

TEST_CASE("hypothesis violations are named") {
  auto cfg = hardy_cfg();
  cfg.zeta = 0.5;
  CHECK_THROWS_AS(evaluate_constant(cfg, ConstantId::C1), HypothesisError);
  auto mh = constant_cfg(0.3);
  mh.slots[0].alpha = SignedExponent::log_interp(-0.2, 0.3);
  try {
    evaluate_constant(mh, ConstantId::C3);
    FAIL("expected a hypothesis error");
  } catch (const HypothesisError& e) {
    CHECK_FALSE(e.hypothesis().empty());
  }
}

TEST_CASE("scaling of the kernel scales every constant") {
  auto cfg = constant_cfg(0.3);
  auto scaled = cfg;
  scaled.op.kernel.phi.c = 3.5;
  for (auto id : {ConstantId::C1, ConstantId::C2, ConstantId::C2Star, ConstantId::C3, ConstantId::C4,
                  ConstantId::C5, ConstantId::C6, ConstantId::C7, ConstantId::C8}) {
    const double v = value(cfg, id);
    if (std::isfinite(v)) CHECK(value(scaled, id) == Approx(3.5 * v).epsilon(1e-12));
  }
}

TEST_CASE("finiteness agrees with the analytic exponent test") {
  for (int i = 0; i < 20; ++i) {
    const double a = i < 10 ? 0.1 + 0.18 * i : 2.0 + 0.2 * (i - 10);
    BoundConfig cfg;
    cfg.op = from_hardy_cesaro(PowerMap{1.0, 0.0}, PowerMap{1.0, a});
    SlotParams s;
    s.q = ExponentFunction::constant(2.0);
    cfg.slots = {s};
    const auto r = evaluate_constant(cfg, ConstantId::C9);
    // integrand t^{-a/2} on (0, 1]
    CHECK(r.finite == (a < 2.0));
    if (r.finite) {
      CHECK(r.value == Approx(1.0 / (1.0 - a / 2.0)).epsilon(1e-9));
    } else {
      double prev = 0.0;
      for (double d : {1e-2, 1e-4, 1e-8, 1e-16}) {
        const double v = evaluate_constant_truncated(cfg, ConstantId::C9, d, 1.0).value;
        CHECK(v > prev);
        prev = v;
      }
      CHECK(prev > 18.0);
    }
  }
}

TEST_CASE("sharpness region cases") {
  auto b1 = constant_cfg(0.3);
  CHECK(sharpness_region_check(b1).mh_case == MorreyHerzCase::B1);
  CHECK(sharpness_region_check(b1).herz_case == HerzCase::B1);

  auto b2 = hardy_cfg();
  b2.slots[0].q = ExponentFunction::log_interp(2.0, 3.0);
  b2.slots[0].alpha = SignedExponent::constant(0.25);
  b2.slots[0].lambda = 0.25;
  const auto rep = sharpness_region_check(b2);
  CHECK(rep.mh_case == MorreyHerzCase::B2);
  CHECK(rep.slots[0].theta0 == Approx(0.0));
  CHECK(rep.slots[0].theta_inf == Approx(0.0));

  auto none = b2;
  none.slots[0].lambda = 0.5;
  CHECK(sharpness_region_check(none).mh_case == MorreyHerzCase::None);
}

TEST_CASE("theta sign scan matches the interval formulas") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int configs = 0;
  while (configs < 20) {
    const double qm = 1.2 + 1.8 * u(rng), qp = qm * (1.05 + u(rng));
    const double a0 = 2.0 * u(rng) - 1.0, ai = a0 - 0.1 - 1.9 * u(rng);
    const double gap = a0 - ai, up = qp / qm, down = qm / qp;
    const double calpha = qm * gap * (1.0 + up) / qp;
    const double c0 = 0.5 * std::min(gap, calpha) * u(rng);
    const double ci = 0.99 * std::min(gap, calpha - c0) * u(rng);
    if (!(c0 < gap && ci < gap && c0 + ci <= calpha)) continue;
    ++configs;
    const auto ref = slot_region(qp, qm, a0, ai, c0, ci, 0.0);
    const double ends[] = {ref.eta0, ref.eta1, ref.zeta0, ref.zeta1};
    int mismatches = 0;
    for (int k = -5000; k <= 5000; ++k) {
      const double lambda = k * 1e-3;
      bool near = false;
      for (double e : ends) near = near || std::abs(lambda - e) <= 1e-3;
      if (near) continue;
      const double b0 = lambda - a0 + c0 >= 0 ? up : down;
      const double bi = lambda - ai - ci < 0 ? up : down;
      const bool signs = lambda - ai - (lambda - a0 + c0) * b0 >= 0 && a0 + (lambda - ai - ci) * bi - lambda >= 0;
      if (signs != slot_region(qp, qm, a0, ai, c0, ci, lambda).lambda_in_region()) ++mismatches;
    }
    CHECK(mismatches == 0);
  }
}
