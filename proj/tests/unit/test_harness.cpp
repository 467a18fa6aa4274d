#include <atomic>

#include "doctest.h"
#include "oracles.hpp"
#include "vexp/harness.hpp"

using namespace vexp;
using doctest::Approx;

namespace {

BoundConfig hardy_cfg() {
  BoundConfig cfg;
  cfg.op = from_hardy_littlewood(PowerMap{1.0, 0.0});
  cfg.slots = {SlotParams{}};
  return cfg;
}

BoundConfig central_cfg() {
  BoundConfig cfg;
  cfg.op.kernel = RadialKernel{PowerMap{1.0, 0.0}, 1.0, 2.0, false};
  cfg.op.families = {MatrixFamily::scalar_dilation(1, PowerMap{1.0, 1.0})};
  SlotParams s;
  s.lambda = -0.1;
  cfg.slots = {s};
  return cfg;
}

bool same(const PiecewisePowerFunction& a, const PiecewisePowerFunction& b) {
  if (a.segments().size() != b.segments().size()) return false;
  for (std::size_t i = 0; i < a.segments().size(); ++i) {
    const auto& x = a.segments()[i];
    const auto& y = b.segments()[i];
    if (x.r_lo != y.r_lo || x.r_hi != y.r_hi || x.coeff != y.coeff || x.exponent.a0 != y.exponent.a0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("extremal kinds") {
  for (auto k : {ExtremalKind::LebesgueEps, ExtremalKind::HerzB1Eps, ExtremalKind::HerzB2Eps,
                 ExtremalKind::MorreyHerzPower, ExtremalKind::CentralMorreyPower})
    CHECK(parse_extremal_kind(to_string(k)) == k);
  CHECK(uses_eps(ExtremalKind::LebesgueEps));
  CHECK_FALSE(uses_eps(ExtremalKind::CentralMorreyPower));
  CHECK_THROWS(parse_extremal_kind("gaussian"));
}

TEST_CASE("lebesgue extremal family") {
  const auto fs = extremal_family(ExtremalKind::LebesgueEps, hardy_cfg(), 0.01);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0](0.5) == 0.0);
  CHECK(fs[0](4.0) == Approx(std::pow(4.0, -0.51)));
  SpaceSpec l2;
  const double nrm = space_norm(fs[0], l2).value;
  CHECK(nrm * nrm == Approx(100.0).epsilon(1e-9));
  CHECK_THROWS(extremal_family(ExtremalKind::LebesgueEps, hardy_cfg(), 0.0));
  CHECK_THROWS(extremal_family(ExtremalKind::LebesgueEps, hardy_cfg(), -0.1));
}

TEST_CASE("central morrey extremal family") {
  const auto fs = extremal_family(ExtremalKind::CentralMorreyPower, central_cfg(), 0.1);
  REQUIRE(fs.size() == 1);
  const auto p = fs[0].single_power();
  REQUIRE(p.has_value());
  CHECK(p->exponent == Approx(-0.1));
  const auto sp = suite_spaces(central_cfg(), ConstantId::C12);
  CHECK(space_norm(fs[0], sp.sources[0]).value == Approx(oracle::central_power_norm(-0.1)).epsilon(1e-9));
}

TEST_CASE("random test functions") {
  SpaceSpec l2;
  const auto a = random_test_functions(1, 3, l2);
  const auto b = random_test_functions(1, 3, l2);
  REQUIRE(a.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(same(a[i], b[i]));
  CHECK(same(random_test_function(1, 0, 2, l2), a[2]));

  int touching = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    for (const auto& f : random_test_functions(seed, 1, l2)) {
      CHECK_FALSE(f.is_zero());
      const double nrm = space_norm(f, l2).value;
      CHECK(std::isfinite(nrm));
      CHECK(nrm > 0.0);
      bool below = false, above = false;
      for (const auto& s : f.segments()) {
        if (s.coeff == 0.0) continue;
        below = below || s.r_lo < 1.0;
        above = above || s.r_hi > 1.0;
      }
      touching += below && above;
    }
  }
  CHECK(touching >= 1);
}

TEST_CASE("hardy upper bound suite and sweep") {
  const auto up = upper_bound_suite(hardy_cfg(), ConstantId::C9, 100, 42);
  CHECK(up.exact);
  CHECK(up.constant == Approx(2.0));
  CHECK(up.violations == 0);
  CHECK(up.rows.size() == 100);
  CHECK(up.max_ratio <= 2.0 * (1 + 1e-3));

  const auto sw = sharpness_sweep(hardy_cfg(), ExtremalKind::LebesgueEps, {0.1, 0.03, 0.01});
  REQUIRE(sw.rows.size() == 3);
  CHECK(sw.monotone);
  for (const auto& r : sw.rows) CHECK(r.ratio == Approx(oracle::hardy_ratio(r.eps)).epsilon(1e-7));
  CHECK(sw.rows[2].ratio == Approx(1.980).epsilon(0.005 / 1.98));
  CHECK(sw.rows[2].ratio_over_constant == Approx(0.990).epsilon(0.003));
  CHECK_THROWS(sharpness_sweep(hardy_cfg(), ExtremalKind::LebesgueEps, {0.01, 0.03}));
  CHECK_THROWS(sharpness_sweep(hardy_cfg(), ExtremalKind::LebesgueEps, {0.1, 0.0}));
}

TEST_CASE("central morrey sweep is eps free") {
  const auto sw = sharpness_sweep(central_cfg(), ExtremalKind::CentralMorreyPower, {0.1, 0.05, 0.01});
  for (const auto& r : sw.rows) CHECK(r.ratio == Approx(oracle::c12_fixture(-0.1)).epsilon(1e-6));
}

TEST_CASE("worker count does not change suite output") {
  HarnessOptions one, four;
  four.workers = 4;
  const auto a = upper_bound_suite(hardy_cfg(), ConstantId::C9, 20, 7, one);
  const auto b = upper_bound_suite(hardy_cfg(), ConstantId::C9, 20, 7, four);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].ratio == b.rows[i].ratio);
}

TEST_CASE("parallel for") {
  std::atomic<int> sum{0};
  parallel_for(100, 4, [&](int i) { sum += i; });
  CHECK(sum == 4950);
  CHECK_THROWS_AS(parallel_for(10, 3, [](int i) { if (i == 4) throw std::runtime_error("x"); }), std::runtime_error);
}
