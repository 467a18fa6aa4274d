#include "vexp/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace vexp {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Skip:
      return "skip";
  }
  return "fail";
}

namespace {

double rel_diff(double a, double b) {
  if (a == b) return 0.0;
  if (std::isinf(a) || std::isinf(b)) return kInf;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

CheckRow verdict(std::string name, double worst, double tol) {
  CheckRow r;
  r.name = std::move(name);
  r.value = worst;
  r.status = worst <= tol ? CheckStatus::Pass : CheckStatus::Fail;
  return r;
}

SpaceSpec lebesgue(const ExponentFunction& q, int n) {
  SpaceSpec s;
  s.kind = SpaceKind::Lebesgue;
  s.q = q;
  s.weight = PowerWeight{0.0, n};
  return s;
}

PiecewisePowerFunction clipped(const PiecewisePowerFunction& f, double lo, double hi) {
  std::vector<PowerSegment> out;
  for (auto s : f.segments()) {
    s.r_lo = std::max(s.r_lo, lo);
    s.r_hi = std::min(s.r_hi, hi);
    if (s.r_lo < s.r_hi) out.push_back(s);
  }
  if (out.empty()) out.push_back(PowerSegment{lo, hi, 1.0, ExponentExpr::constant(0.0)});
  return PiecewisePowerFunction(std::move(out));
}

CheckRow homogeneity(std::uint64_t seed, const QuadratureOptions& quad) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> c(0.01, 100.0);
  const SpaceSpec sp = lebesgue(ExponentFunction::log_interp(1.5, 3.0), 1);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto f = random_test_function(seed, 101, i, sp);
    const double k = c(rng);
    NormContext ctx;
    ctx.quad = quad;
    const double a = luxemburg_norm(f.scaled(k), sp.q, Region::all(), ctx);
    const double b = k * luxemburg_norm(f, sp.q, Region::all(), ctx);
    worst = std::max(worst, rel_diff(a, b));
  }
  return verdict("luxemburg_homogeneity", worst, 1e-9);
}

CheckRow max_min_bracket(std::uint64_t seed, const QuadratureOptions& quad) {
  std::mt19937_64 rng(seed ^ 0x5a5a);
  std::uniform_real_distribution<double> pd(1.2, 4.0);
  double violations = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto p = ExponentFunction::log_interp(pd(rng), pd(rng));
    const auto f = random_test_function(seed, 102, i, lebesgue(p, 1));
    NormContext ctx;
    ctx.quad = quad;
    const double F = modular(f, p, Region::all(), ctx);
    const double norm = luxemburg_norm(f, p, Region::all(), ctx);
    const double a = std::pow(F, 1.0 / p.minus()), b = std::pow(F, 1.0 / p.plus());
    if (norm > std::max(a, b) * (1.0 + 1e-9)) violations += 1.0;
    if (norm < std::min(a, b) * (1.0 - 1e-9)) violations += 1.0;
  }
  return verdict("modular_bracket", violations, 0.0);
}

CheckRow herz_vs_morrey_herz(const BoundConfig& cfg, std::uint64_t seed, const QuadratureOptions& quad) {
  const auto& s = cfg.slots.front();
  SpaceSpec sp;
  sp.kind = SpaceKind::Herz;
  sp.q = s.q;
  sp.alpha = s.alpha;
  sp.p = s.p;
  sp.weight = PowerWeight{s.gamma, cfg.op.n};
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const auto f = random_test_function(seed, 103, i, sp);
    const double h = herz_norm(f, sp, -20, 20, quad).value;
    const double mh = morrey_herz_norm(f, sp, -20, 20, -20, 20, quad).value;
    worst = std::max(worst, rel_diff(h, mh));
  }
  return verdict("morrey_herz_lambda0_equals_herz", worst, 0.0);
}

CheckRow herz_vs_lebesgue(std::uint64_t seed, const QuadratureOptions& quad) {
  SpaceSpec sp = lebesgue(ExponentFunction::constant(2.0), 1);
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const auto f = clipped(random_test_function(seed, 104, i, sp), 0.01, 100.0);
    SpaceSpec herz = sp;
    herz.kind = SpaceKind::Herz;
    herz.p = 2.0;
    const double h = herz_norm(f, herz, -20, 20, quad).value;
    const double l = weighted_vexp_norm(f, sp.q, sp.weight, Region::all(), quad);
    worst = std::max(worst, rel_diff(h, l));
  }
  return verdict("herz_alpha0_equals_lebesgue", worst, 1e-6);
}

BoundConfig constant_fixture(const BoundConfig& cfg, double lambda) {
  BoundConfig b;
  b.op = cfg.op;
  for (int i = 0; i < cfg.op.m; ++i) {
    SlotParams s;
    s.q = ExponentFunction::constant(3.0 * cfg.op.m);
    s.gamma = 0.1;
    s.alpha = SignedExponent::constant(0.2);
    s.lambda = lambda;
    s.p = 2.0 * cfg.op.m;
    b.slots.push_back(s);
  }
  return b;
}

CheckRow constant_pairs(const BoundConfig& cfg, const QuadratureOptions& quad) {
  const BoundConfig with_lambda = constant_fixture(cfg, 0.3);
  const BoundConfig no_lambda = constant_fixture(cfg, 0.0);
  auto v = [&](const BoundConfig& b, ConstantId id) { return evaluate_constant(b, id, quad).value; };
  double worst = 0.0;
  worst = std::max(worst, rel_diff(v(with_lambda, ConstantId::C2), v(with_lambda, ConstantId::C2Star)));
  worst = std::max(worst, rel_diff(v(with_lambda, ConstantId::C5), v(with_lambda, ConstantId::C5Star)));
  worst = std::max(worst, rel_diff(v(with_lambda, ConstantId::C6), v(with_lambda, ConstantId::C6Star)));
  worst = std::max(worst, rel_diff(v(no_lambda, ConstantId::C7), v(no_lambda, ConstantId::C8)));
  return verdict("constant_exponent_pairs", worst, 1e-12);
}

CheckRow kernel_scaling(const BoundConfig& cfg, const QuadratureOptions& quad) {
  BoundConfig a = constant_fixture(cfg, 0.0);
  BoundConfig b = a;
  b.op.kernel.phi.c *= 3.0;
  const double x = evaluate_constant(a, ConstantId::C2, quad).value;
  const double y = evaluate_constant(b, ConstantId::C2, quad).value;
  if (std::isinf(x) && std::isinf(y)) return verdict("kernel_scaling", 0.0, 0.0);
  return verdict("kernel_scaling", rel_diff(3.0 * x, y), 1e-12);
}

CheckRow dyadic_scan(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0xd1ad);
  std::uniform_real_distribution<double> e(-50.0, 50.0);
  double mismatches = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double x = std::exp2(e(rng));
    int ell = -60;
    while (!(x <= std::ldexp(1.0, ell))) ++ell;
    if (dyadic_exponent(x) != ell) mismatches += 1.0;
    const double rho = 1.0 + std::exp2(std::abs(e(rng)) / 2.0);
    int theta = 60;
    while (!(rho < std::ldexp(1.0, -theta))) --theta;
    if (theta_star(rho) != theta) mismatches += 1.0;
  }
  return verdict("dyadic_and_theta_scan", mismatches, 0.0);
}

CheckRow family_inequalities(const BoundConfig& cfg, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0xfa11);
  const double lo = cfg.op.kernel.r_lo > 0.0 ? std::log(cfg.op.kernel.r_lo) : std::log(cfg.op.kernel.r_hi) - 10.0;
  std::uniform_real_distribution<double> w(lo, std::log(cfg.op.kernel.r_hi));
  std::uniform_real_distribution<double> xd(-3.0, 3.0);
  const double rho = rho_bound(cfg.op.families, {cfg.op.kernel.r_hi});
  double failures = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto& fam = cfg.op.families[i % cfg.op.families.size()];
    const double t = std::exp(w(rng));
    const double sigma = (i % 2 == 0) ? 2.0 : -2.0;
    const double a = frobenius_norm(fam, t);
    const InverseStats st = inverse_stats(fam, t);
    if (std::pow(a, sigma) > std::pow(rho, std::abs(sigma)) * std::pow(st.inv_norm, -sigma) * (1 + 1e-12))
      failures += 1.0;
    Eigen::VectorXd x(fam.dim());
    for (int k = 0; k < fam.dim(); ++k) x(k) = xd(rng);
    const double ax = (fam.matrix(t) * x).norm();
    const double rhs = std::pow(rho, -std::abs(sigma)) * std::pow(st.inv_norm, -sigma) * std::pow(x.norm(), sigma);
    if (std::pow(ax, sigma) < rhs * (1 - 1e-12)) failures += 1.0;
  }
  return verdict("matrix_family_inequalities", failures, 0.0);
}

CheckRow central_closed_form(const QuadratureOptions& quad) {
  BoundConfig b;
  b.op.kernel = RadialKernel{PowerMap{1.0, 0.0}, 1.0, 2.0, false};
  b.op.families = {MatrixFamily::scalar_dilation(1, PowerMap{1.0, 1.0})};
  SlotParams s;
  s.lambda = -0.1;
  b.slots = {s};
  ScanSettings scan;
  scan.quad = quad;
  const auto f = extremal_family(ExtremalKind::CentralMorreyPower, b, 0.0, scan);
  const SpaceSpec sp = suite_spaces(b, ConstantId::C12).sources.front();
  const double v = space_norm(f.front(), sp, scan).value;
  return verdict("central_morrey_power_norm", rel_diff(v, std::pow(2.0, 0.1) / std::sqrt(0.8)), 1e-6);
}

CheckRow power_eigenrelation(const BoundConfig& cfg, const QuadratureOptions& quad) {
  std::vector<RadialFunction> ones(cfg.op.m, PiecewisePowerFunction::power(1.0, 0.0));
  const GridImage g = apply_on_grid(cfg.op, ones, {0.5, 2.0}, quad);
  if (!g.exact || !std::isfinite(g.values.front())) {
    CheckRow r{"power_eigenrelation", CheckStatus::Skip, 0.0, "H(1) is not finite"};
    return r;
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < g.radii.size(); ++i)
    worst = std::max(worst, rel_diff(apply_pointwise(cfg.op, ones, g.radii[i], quad), g.values[i]));
  return verdict("power_eigenrelation", worst, 1e-8);
}

CheckRow random_determinism(std::uint64_t seed) {
  const SpaceSpec sp = lebesgue(ExponentFunction::constant(2.0), 1);
  const auto a = random_test_functions(seed, 3, sp);
  const auto b = random_test_functions(seed, 3, sp);
  double diffs = 0.0;
  for (int i = 0; i < 3; ++i) {
    const auto& x = a[i].segments();
    const auto& y = b[i].segments();
    if (x.size() != y.size()) {
      diffs += 1.0;
      continue;
    }
    for (std::size_t k = 0; k < x.size(); ++k)
      if (x[k].r_lo != y[k].r_lo || x[k].r_hi != y[k].r_hi || x[k].coeff != y[k].coeff ||
          x[k].exponent.a0 != y[k].exponent.a0)
        diffs += 1.0;
  }
  return verdict("random_functions_deterministic", diffs, 0.0);
}

}  // namespace

std::vector<CheckRow> run_invariants(const BoundConfig& cfg, const ScanSettings& scan,
                                     std::uint64_t seed) {
  const QuadratureOptions& quad = scan.quad;
  std::vector<std::pair<std::string, std::function<CheckRow()>>> checks = {
      {"luxemburg_homogeneity", [&] { return homogeneity(seed, quad); }},
      {"modular_bracket", [&] { return max_min_bracket(seed, quad); }},
      {"morrey_herz_lambda0_equals_herz", [&] { return herz_vs_morrey_herz(cfg, seed, quad); }},
      {"herz_alpha0_equals_lebesgue", [&] { return herz_vs_lebesgue(seed, quad); }},
      {"constant_exponent_pairs", [&] { return constant_pairs(cfg, quad); }},
      {"kernel_scaling", [&] { return kernel_scaling(cfg, quad); }},
      {"dyadic_and_theta_scan", [&] { return dyadic_scan(seed); }},
      {"matrix_family_inequalities", [&] { return family_inequalities(cfg, seed); }},
      {"central_morrey_power_norm", [&] { return central_closed_form(quad); }},
      {"power_eigenrelation", [&] { return power_eigenrelation(cfg, quad); }},
      {"random_functions_deterministic", [&] { return random_determinism(seed); }},
  };
  std::vector<CheckRow> rows;
  for (auto& [name, fn] : checks) {
    try {
      rows.push_back(fn());
    } catch (const std::exception& e) {
      rows.push_back(CheckRow{name, CheckStatus::Fail, kInf, e.what()});
    }
  }
  return rows;
}

}  // namespace vexp
