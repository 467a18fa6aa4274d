// Prints one PASS/FAIL line per acceptance criterion; exit status is the number of failures.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <fmt/core.h>

#include "oracles.hpp"
#include "vexp/cli.hpp"
#include "vexp/harness.hpp"

using namespace vexp;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  fmt::print("criterion {:>2}: {}  {}\n", id, ok ? "PASS" : "FAIL", detail);
  std::cout.flush();
  if (!ok) ++failures;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

BoundConfig hardy_cfg() {
  BoundConfig cfg;
  cfg.op = from_hardy_littlewood(PowerMap{1.0, 0.0});
  cfg.slots = {SlotParams{}};
  return cfg;
}

void luxemburg_consistency() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> c(0.05, 20.0), b(-0.3, 2.0), lo(0.0, 1.0), span(0.5, 30.0);
  std::uniform_int_distribution<int> nd(1, 3), pd(0, 2);
  const double ps[] = {1.5, 2.0, 3.0};
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int n = nd(rng);
    const double p = ps[pd(rng)], cc = c(rng), bb = b(rng), a = i % 2 ? 0.0 : lo(rng), h = a + span(rng);
    NormContext ctx;
    ctx.n = n;
    const double got = luxemburg_norm(PiecewisePowerFunction::power(cc, bb, a, h), ExponentFunction::constant(p),
                                      Region::all(), ctx);
    worst = std::max(worst, rel(got, oracle::power_lp_norm(cc, bb, a, h, p, n)));
  }
  report(1, worst <= 1e-8, fmt::format("50 single powers, max rel err {:.3e}", worst));
}

void modular_bracket() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pd(1.1, 5.0), b(-0.5, 1.5), c(0.01, 30.0), lo(0.05, 1.0), span(0.2, 10.0);
  int violations = 0;
  for (int i = 0; i < 200; ++i) {
    const double p0 = pd(rng), pinf = pd(rng), cc = c(rng), bb = b(rng), a = lo(rng), h = a + span(rng);
    const auto p = ExponentFunction::log_interp(p0, pinf);
    const double nrm =
        luxemburg_norm(PiecewisePowerFunction::power(cc, bb, a, h), p, Region::all(), NormContext{});
    const double F = 2.0 * oracle::simpson(
                               [&](double u) {
                                 const double r = std::exp(u);
                                 return r * std::pow(cc * std::pow(r, bb), oracle::log_interp(p0, pinf, r));
                               },
                               std::log(a), std::log(h), 20000);
    const double pm = std::min(p0, pinf), pp = std::max(p0, pinf);
    const double x = std::pow(F, 1.0 / pm), y = std::pow(F, 1.0 / pp);
    if (nrm < std::min(x, y) * (1 - 1e-9) || nrm > std::max(x, y) * (1 + 1e-9)) ++violations;
  }
  report(2, violations == 0, fmt::format("200 LogInterp pairs, {} bracket violations", violations));
}

void hardy_sharp() {
  const auto cfg = hardy_cfg();
  const double c9 = evaluate_constant(cfg, ConstantId::C9).value;
  const auto up = upper_bound_suite(cfg, ConstantId::C9, 100, 42);
  int above = 0;
  for (const auto& r : up.rows) above += r.ratio > 2.0 * (1 + 1e-3);
  const auto sw = sharpness_sweep(cfg, ExtremalKind::LebesgueEps, {0.1, 0.03, 0.01});
  bool monotone = sw.rows.size() == 3;
  for (std::size_t i = 1; i < sw.rows.size(); ++i) monotone = monotone && sw.rows[i].ratio > sw.rows[i - 1].ratio;
  const double last = sw.rows.empty() ? 0.0 : sw.rows.back().ratio;
  const bool ok = std::abs(c9 - 2.0) <= 1e-9 && up.rows.size() == 100 && above == 0 &&
                  std::abs(last - 1.980) <= 0.005 && rel(last, oracle::hardy_ratio(0.01)) <= 1e-6 && monotone;
  report(3, ok,
         fmt::format("C9={:.12f}, {} ratios above bound (max {:.6f}), ratio(0.01)={:.6f} (oracle {:.6f}), monotone={}",
                     c9, above, up.max_ratio, last, oracle::hardy_ratio(0.01), monotone));
}

void bilinear_sharp() {
  BoundConfig cfg;
  cfg.op = from_multilinear_hardy_cesaro(PowerMap{1.0, 0.0}, {PowerMap{1.0, 1.0}, PowerMap{1.0, 1.0}});
  SlotParams s;
  s.q = ExponentFunction::constant(4.0);
  s.p = 4.0;
  cfg.slots = {s, s};
  const double c9 = evaluate_constant(cfg, ConstantId::C9).value;
  const auto up = upper_bound_suite(cfg, ConstantId::C9, 100, 42);
  int above = 0;
  for (const auto& r : up.rows) above += r.ratio > c9 * (1 + 1e-3);
  report(4, std::abs(c9 - 2.0) <= 1e-9 && above == 0 && up.rows.size() == 100,
         fmt::format("C9={:.12f}, {} violations over {} tuples (max ratio {:.6f})", c9, above, up.rows.size(),
                     up.max_ratio));
}

void central_exact() {
  BoundConfig cfg;
  cfg.op.kernel = RadialKernel{PowerMap{1.0, 0.0}, 1.0, 2.0, false};
  cfg.op.families = {MatrixFamily::scalar_dilation(1, PowerMap{1.0, 1.0})};
  SlotParams s;
  s.lambda = -0.1;
  cfg.slots = {s};
  const double c12 = evaluate_constant(cfg, ConstantId::C12).value;
  const auto fs = extremal_family(ExtremalKind::CentralMorreyPower, cfg, 1.0);
  const auto sp = suite_spaces(cfg, ConstantId::C12);
  const double nrm = space_norm(fs[0], sp.sources[0]).value;
  const double ratio = operator_ratio(cfg.op, {RadialFunction(fs[0])}, sp.sources, sp.target);
  const double closed = std::pow(2.0, 0.1) / std::sqrt(0.8);
  const bool ok = std::abs(c12 - 1.33934) <= 1e-5 && std::abs(c12 - oracle::c12_fixture(-0.1)) <= 1e-9 &&
                  std::abs(nrm - closed) <= 1e-4 && rel(ratio, c12) <= 1e-6;
  report(5, ok, fmt::format("C12={:.8f}, extremal norm {:.8f} (closed form {:.8f}), ratio {:.8f}", c12, nrm, closed,
                            ratio));
}

void reductions() {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  bool mh_exact = true;
  for (int i = 0; i < 10; ++i) {
    SpaceSpec m;
    m.kind = SpaceKind::MorreyHerz;
    m.alpha = SignedExponent::log_interp(0.6 * u(rng) - 0.3, 0.6 * u(rng) - 0.3);
    m.q = ExponentFunction::log_interp(1.5 + u(rng), 1.5 + 2 * u(rng));
    m.p = 1.0 + 2.0 * u(rng);
    SpaceSpec h = m;
    h.kind = SpaceKind::Herz;
    const auto f = PiecewisePowerFunction::power(0.5 + u(rng), 1.5 * u(rng) - 0.2, 0.0, 1.0 + 5.0 * u(rng));
    mh_exact = mh_exact && morrey_herz_norm(f, m, -20, 20, -20, 20).value == herz_norm(f, h, -20, 20).value;
  }
  double herz_err = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double q = 1.2 + 3.0 * u(rng);
    SpaceSpec h;
    h.kind = SpaceKind::Herz;
    h.p = q;
    h.q = ExponentFunction::constant(q);
    const auto f = PiecewisePowerFunction::power(0.1 + 3.0 * u(rng), (2.0 * u(rng) - 0.5) / q, 0.2 * u(rng),
                                                 0.5 + 8.0 * u(rng));
    const double l = oracle::power_lp_norm(f.segments()[0].coeff, f.segments()[0].exponent.a0, f.segments()[0].r_lo,
                                           f.segments()[0].r_hi, q, 1);
    herz_err = std::max(herz_err, rel(herz_norm(f, h, -40, 40).value, l));
  }
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
  a.lambda = 0.3;
  a.p = 4.0;
  SlotParams b = a;
  b.q = ExponentFunction::constant(3.0);
  b.alpha = SignedExponent::constant(-0.1);
  cfg.slots = {a, b};
  auto gap = [&](const BoundConfig& c, ConstantId x, ConstantId y) {
    const double vx = evaluate_constant(c, x).value, vy = evaluate_constant(c, y).value;
    return std::abs(vx - vy) / std::max(1.0, std::abs(vy));
  };
  double pair = std::max({gap(cfg, ConstantId::C2, ConstantId::C2Star), gap(cfg, ConstantId::C5, ConstantId::C5Star),
                          gap(cfg, ConstantId::C6, ConstantId::C6Star)});
  cfg.slots[0].lambda = cfg.slots[1].lambda = 0.0;
  pair = std::max(pair, gap(cfg, ConstantId::C7, ConstantId::C8));
  report(6, mh_exact && herz_err <= 1e-6 && pair <= 1e-12,
         fmt::format("lambda=0 exact={}, Herz vs Lebesgue max rel {:.3e}, max pair gap {:.3e}", mh_exact, herz_err,
                     pair));
}

void matrix_oracles() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int mismatch = 0;
  for (int i = 0; i < 1000; ++i) {
    const double x = i % 8 == 0 ? std::ldexp(1.0, static_cast<int>(50 * u(rng))) : std::exp2(50.0 * u(rng));
    mismatch += dyadic_exponent(x) != oracle::ceil_log2_scan(x);
    const double rho = i % 8 == 0 ? std::ldexp(1.0, static_cast<int>(20 + 20 * u(rng))) : std::exp2(20.0 + 20.0 * u(rng));
    mismatch += theta_star(rho) != oracle::theta_scan(rho);
  }
  int bad = 0;
  std::uniform_int_distribution<int> nd(1, 4);
  for (int i = 0; i < 100; ++i) {
    const int n = nd(rng);
    const PowerMap s{u(rng) > 0 ? 0.5 + 2 * std::abs(u(rng)) : -0.5 - 2 * std::abs(u(rng)), 2.0 * u(rng)};
    MatrixFamily fam = MatrixFamily::scalar_dilation(n, s);
    if (i % 3 == 1) {
      std::vector<int> signs(n);
      for (auto& v : signs) v = u(rng) > 0 ? 1 : -1;
      fam = MatrixFamily::diag_equal(s, signs);
    } else if (i % 3 == 2) {
      Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(Eigen::MatrixXd::Random(n, n)).householderQ();
      fam = MatrixFamily::orth_scalar(q, s);
    }
    const double t = std::exp(2.0 * u(rng));
    const Eigen::MatrixXd a = fam.matrix(t);
    const Eigen::MatrixXd ai = a.inverse();
    const double na = a.norm(), ni = ai.norm(), di = std::abs(ai.determinant());
    const double tol = 1e-12;
    bad += !(std::pow(na, -n) <= di * (1 + tol) && di <= std::pow(ni, n) * (1 + tol));
    const double rho = rho_bound({fam}, {t});
    const double sigma = i % 2 ? 2.0 : -2.0;
    bad += !(std::pow(na, sigma) <= std::pow(rho, 2.0) * std::pow(ni, -sigma) * (1 + tol));
    Eigen::VectorXd x(n);
    for (int j = 0; j < n; ++j) x(j) = u(rng);
    bad += !(std::pow((a * x).norm(), sigma) >= std::pow(rho, -2.0) * std::pow(ni, -sigma) * std::pow(x.norm(), sigma) * (1 - tol));
  }
  report(7, mismatch == 0 && bad == 0,
         fmt::format("{} scan mismatches over 2000 inputs, {} inequality failures over 100 samples", mismatch, bad));
}

void region_equivalence() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int configs = 0, mismatches = 0, points = 0;
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
    for (int k = -5000; k <= 5000; ++k) {
      const double lambda = k * 1e-3;
      bool near = false;
      for (double e : ends) near = near || std::abs(lambda - e) <= 1e-3;
      if (near) continue;
      ++points;
      const auto r = slot_region(qp, qm, a0, ai, c0, ci, lambda);
      mismatches += r.theta_nonnegative() != r.lambda_in_region();
    }
  }
  report(8, mismatches == 0, fmt::format("{} configurations, {} grid points, {} disagreements", configs, points,
                                         mismatches));
}

void decay_band() {
  BoundConfig cfg = hardy_cfg();
  cfg.slots[0].alpha = SignedExponent::log_interp(0.3, 0.1);
  cfg.slots[0].lambda = 0.2;
  cfg.slots[0].p = 2.0;
  const auto fs = extremal_family(ExtremalKind::MorreyHerzPower, cfg, 1.0);
  const auto sp = suite_spaces(cfg, ConstantId::C5Star);
  const double mk = space_norm(fs[0], sp.sources[0]).value;
  SpaceSpec plain = sp.sources[0];
  plain.kind = SpaceKind::Herz;
  plain.alpha = SignedExponent::constant(0.0);
  const double a0 = cfg.slots[0].alpha.at_zero(), ainf = cfg.slots[0].alpha.at_infinity(), lambda = 0.2;
  double lo = kInf, hi = 0.0;
  for (int j = -40; j <= 40; ++j) {
    if (j > -5 && j < 5) continue;
    const double a = j < 0 ? a0 : ainf;
    const double r = shell_norm(fs[0], plain, j) / (std::exp2(j * (lambda - a)) * mk);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  report(9, std::isfinite(mk) && mk > 0.0 && lo > 0.0 && hi / lo < 1e3,
         fmt::format("shell ratios in [{:.4g}, {:.4g}], band {:.4g}", lo, hi, hi / lo));
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void determinism() {
  const std::string cfg = std::string(VEXP_FIXTURES) + "/bilinear_hardy.json";
  const auto dir = std::filesystem::temp_directory_path();
  std::vector<std::string> files;
  bool codes = true;
  for (const char* w : {"1", "1", "4"}) {
    const std::string out = (dir / fmt::format("vexp_accept_{}.csv", files.size())).string();
    std::ostringstream o, e;
    codes = codes && run_cli({"verify", "--suite", "upper", "--config", cfg, "--n", "30", "--seed", "42", "--workers",
                              w, "--out", out},
                             o, e) == 0;
    files.push_back(slurp(out));
  }
  const bool same = !files[0].empty() && files[0] == files[1] && files[0] == files[2];
  report(10, codes && same, fmt::format("3 runs (workers 1, 1, 4), {} bytes each, identical={}", files[0].size(), same));
}

}  // namespace

int main() {
  const std::pair<void (*)(), int> all[] = {{luxemburg_consistency, 1}, {modular_bracket, 2},   {hardy_sharp, 3},
                                            {bilinear_sharp, 4},       {central_exact, 5}, {reductions, 6},
                                            {matrix_oracles, 7},       {region_equivalence, 8}, {decay_band, 9},
                                            {determinism, 10}};
  for (const auto& [fn, id] : all) {
    try {
      fn();
    } catch (const std::exception& e) {
      report(id, false, std::string("exception: ") + e.what());
    }
  }
  return failures;
}
