#include "vexp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

namespace vexp {

namespace {

const std::vector<std::pair<ExtremalKind, std::string>>& kind_names() {
  static const std::vector<std::pair<ExtremalKind, std::string>> names = {
      {ExtremalKind::LebesgueEps, "lebesgue_eps"},
      {ExtremalKind::HerzB1Eps, "herz_b1_eps"},
      {ExtremalKind::HerzB2Eps, "herz_b2_eps"},
      {ExtremalKind::MorreyHerzPower, "morrey_herz_power"},
      {ExtremalKind::CentralMorreyPower, "central_morrey_power"}};
  return names;
}

}  // namespace

std::string to_string(ExtremalKind k) {
  for (const auto& [key, name] : kind_names())
    if (key == k) return name;
  return "?";
}

ExtremalKind parse_extremal_kind(const std::string& s) {
  for (const auto& [key, name] : kind_names())
    if (name == s) return key;
  throw std::invalid_argument("unknown extremal family '" + s + "'");
}

bool uses_eps(ExtremalKind k) {
  return k == ExtremalKind::LebesgueEps || k == ExtremalKind::HerzB1Eps ||
         k == ExtremalKind::HerzB2Eps;
}

ConstantId default_constant(ExtremalKind k) {
  switch (k) {
    case ExtremalKind::LebesgueEps:
      return ConstantId::C2Star;
    case ExtremalKind::HerzB1Eps:
    case ExtremalKind::HerzB2Eps:
      return ConstantId::C6Star;
    case ExtremalKind::MorreyHerzPower:
      return ConstantId::C5Star;
    case ExtremalKind::CentralMorreyPower:
      return ConstantId::C12;
  }
  return ConstantId::C9;
}

namespace {

bool lebesgue_reduction(const BoundConfig& cfg) {
  for (const auto& s : cfg.slots) {
    if (!s.q.is_constant() || s.q.at_zero() != s.p) return false;
    if (!s.alpha.is_constant() || s.alpha.at_zero() != 0.0) return false;
  }
  return true;
}

}  // namespace

SuiteSpaces suite_spaces(const BoundConfig& cfg, ConstantId id) {
  const int n = cfg.op.n;
  const DerivedParams d = derive(cfg, coupling_for(id));
  SuiteSpaces out;
  SpaceKind kind;
  switch (id) {
    case ConstantId::C1:
    case ConstantId::C2:
    case ConstantId::C2Star:
      kind = SpaceKind::Lebesgue;
      break;
    case ConstantId::C3:
    case ConstantId::C5:
    case ConstantId::C5Star:
    case ConstantId::C7:
      kind = SpaceKind::MorreyHerz;
      break;
    case ConstantId::C9:
      kind = lebesgue_reduction(cfg) ? SpaceKind::Lebesgue : SpaceKind::Herz;
      break;
    case ConstantId::C10:
    case ConstantId::C11:
    case ConstantId::C12:
      kind = SpaceKind::CentralMorrey;
      break;
    default:
      kind = SpaceKind::Herz;
      break;
  }
  for (const auto& s : cfg.slots) {
    SpaceSpec sp;
    sp.kind = kind;
    sp.q = s.q;
    sp.weight = PowerWeight{s.gamma, n};
    sp.p = s.p;
    if (kind != SpaceKind::Lebesgue) sp.alpha = s.alpha;
    if (kind == SpaceKind::MorreyHerz || kind == SpaceKind::CentralMorrey) sp.lambda = s.lambda;
    out.sources.push_back(sp);
  }
  SpaceSpec& t = out.target;
  t.kind = kind;
  t.q = d.q;
  t.weight = PowerWeight{d.gamma, n};
  t.p = d.p;
  if (kind != SpaceKind::Lebesgue) t.alpha = d.alpha;
  if (kind == SpaceKind::MorreyHerz || kind == SpaceKind::CentralMorrey) t.lambda = d.lambda;
  return out;
}

std::vector<PiecewisePowerFunction> extremal_family(ExtremalKind kind, const BoundConfig& cfg,
                                                    double eps, const ScanSettings& scan) {
  if (uses_eps(kind) && !(eps > 0.0)) throw std::invalid_argument("extremal family needs eps > 0");
  cfg.op.validate();
  const int n = cfg.op.n;
  const double cutoff = 1.0 / rho_bound(cfg.op.families, {cfg.op.kernel.r_hi});
  const SuiteSpaces spaces = suite_spaces(cfg, default_constant(kind));
  std::vector<PiecewisePowerFunction> out;
  for (std::size_t i = 0; i < cfg.slots.size(); ++i) {
    const auto& s = cfg.slots[i];
    ExponentExpr e;
    double r_lo = 0.0;
    switch (kind) {
      case ExtremalKind::LebesgueEps:
        e.a0 = -s.gamma - eps;
        e.a1 = -n;
        e.q = s.q;
        r_lo = cutoff;
        break;
      case ExtremalKind::HerzB1Eps:
        e.a0 = -s.alpha.at_zero() - s.gamma - eps;
        e.a1 = -n;
        e.q = s.q;
        r_lo = cutoff;
        break;
      case ExtremalKind::HerzB2Eps:
        e.a0 = -s.alpha.sup_abs() - s.gamma - eps;
        e.a1 = -n;
        e.q = s.q;
        r_lo = cutoff;
        break;
      case ExtremalKind::MorreyHerzPower:
        e.a0 = -s.gamma + s.lambda;
        e.a1 = -n;
        e.q = s.q;
        e.a2 = -1.0;
        e.alpha = s.alpha;
        break;
      case ExtremalKind::CentralMorreyPower:
        e.a0 = (n + s.gamma) * s.lambda;
        break;
    }
    if (e.q && e.q->is_constant()) {
      e.a0 += e.a1 / e.q->at_zero();
      e.a1 = 0.0;
      e.q.reset();
    }
    PiecewisePowerFunction f({PowerSegment{r_lo, kInf, 1.0, e}});
    const double v = space_norm(f, spaces.sources[i], scan).value;
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::domain_error("extremal function for slot " + std::to_string(i + 1) +
                              " has no finite nonzero norm; parameters are outside the supported range");
    out.push_back(std::move(f));
  }
  return out;
}

namespace {

// Exponent thresholds: a power |x|^b near 0 (resp. infinity) has finite norm iff
// b > lo (resp. b < hi).
std::pair<double, double> power_thresholds(const SpaceSpec& sp) {
  const int n = sp.weight.n;
  const double g = sp.weight.gamma;
  const double q0 = sp.q.at_zero(), qi = sp.q.at_infinity();
  switch (sp.kind) {
    case SpaceKind::Lebesgue:
      return {-g - n / q0, -g - n / qi};
    case SpaceKind::Herz:
      return {-sp.alpha.at_zero() - g - n / q0, -sp.alpha.at_infinity() - g - n / qi};
    case SpaceKind::MorreyHerz:
      return {sp.lambda - sp.alpha.at_zero() - g - n / q0,
              sp.lambda - sp.alpha.at_infinity() - g - n / qi};
    case SpaceKind::CentralMorrey: {
      const double v = sp.alpha.at_zero();
      const double scale = (n + g) * (sp.lambda + 1.0 / qi);
      return {std::max(-v - n / q0, scale - v - n / q0), scale - v - n / qi};
    }
  }
  return {0.0, 0.0};
}

}  // namespace

PiecewisePowerFunction random_test_function(std::uint64_t seed, std::uint64_t stream,
                                            std::uint64_t index, const SpaceSpec& space) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<int> count_dist(2, 5);
  std::uniform_real_distribution<double> log2_break(-6.0, 6.0);
  std::uniform_real_distribution<double> margin(0.05, 1.5);
  std::uniform_real_distribution<double> interior(-2.0, 2.0);
  std::uniform_real_distribution<double> coeff(0.2, 3.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto [lo, hi] = power_thresholds(space);

  for (;;) {
    const int k = count_dist(rng);
    std::vector<double> breaks;
    for (int j = 0; j + 1 < k; ++j) breaks.push_back(std::exp2(log2_break(rng)));
    std::sort(breaks.begin(), breaks.end());
    if (std::adjacent_find(breaks.begin(), breaks.end()) != breaks.end()) continue;
    std::vector<PowerSegment> segs;
    bool any = false;
    for (int j = 0; j < k; ++j) {
      PowerSegment s;
      s.r_lo = j == 0 ? 0.0 : breaks[j - 1];
      s.r_hi = j + 1 == k ? kInf : breaks[j];
      double b;
      if (j == 0)
        b = lo + margin(rng);
      else if (j + 1 == k)
        b = hi - margin(rng);
      else
        b = interior(rng);
      s.exponent = ExponentExpr::constant(b);
      s.coeff = unit(rng) < 0.2 ? 0.0 : coeff(rng);
      any = any || s.coeff > 0.0;
      if (s.coeff > 0.0) segs.push_back(s);
    }
    if (any) return PiecewisePowerFunction(std::move(segs));
  }
}

std::vector<PiecewisePowerFunction> random_test_functions(std::uint64_t seed, int count,
                                                          const SpaceSpec& space) {
  if (count < 1) throw std::invalid_argument("count must be at least 1");
  std::vector<PiecewisePowerFunction> out;
  for (int i = 0; i < count; ++i) out.push_back(random_test_function(seed, 0, i, space));
  return out;
}

bool exact_constant_config(const BoundConfig& cfg, ConstantId id) {
  const bool scalar = std::all_of(cfg.op.families.begin(), cfg.op.families.end(), [](const MatrixFamily& f) {
    return f.kind() == FamilyKind::ScalarDilation;
  });
  if (cfg.op.n != 1 || !scalar) return false;
  if (id == ConstantId::C9)
    return std::all_of(cfg.slots.begin(), cfg.slots.end(),
                       [](const SlotParams& s) { return s.q.is_constant() && s.alpha.is_constant(); });
  if (id == ConstantId::C12) return cfg.op.m == 1;
  return false;
}

bool sweep_supported(const BoundConfig& cfg) {
  return std::all_of(cfg.op.families.begin(), cfg.op.families.end(), [](const MatrixFamily& f) {
    return f.kind() != FamilyKind::OrthogonalTimesScalar;
  });
}

void parallel_for(int count, int workers, const std::function<void(int)>& body) {
  const int w = std::max(1, std::min(workers, count));
  if (w == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex mu;
  int failed_index = count;
  std::exception_ptr failure;
  std::vector<std::thread> pool;
  for (int k = 0; k < w; ++k) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (i < failed_index) {
            failed_index = i;
            failure = std::current_exception();
          }
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

UpperBoundResult upper_bound_suite(const BoundConfig& cfg, ConstantId id, int count,
                                   std::uint64_t seed, const HarnessOptions& opts) {
  if (count < 1) throw std::invalid_argument("suite size must be at least 1");
  const BoundResult c = evaluate_constant(cfg, id, opts.scan.quad);
  if (!c.finite) throw std::domain_error("constant not finite");
  const SuiteSpaces spaces = suite_spaces(cfg, id);
  UpperBoundResult res;
  res.constant = c.value;
  res.exact = exact_constant_config(cfg, id);
  res.rows.resize(count);
  parallel_for(count, opts.workers, [&](int i) {
    std::vector<RadialFunction> fs;
    for (std::size_t j = 0; j < cfg.slots.size(); ++j)
      fs.emplace_back(random_test_function(seed, j, i, spaces.sources[j]));
    res.rows[i] = SuiteRow{seed, i, operator_ratio(cfg.op, fs, spaces.sources, spaces.target, opts.scan)};
  });
  for (const auto& r : res.rows) {
    res.max_ratio = std::max(res.max_ratio, r.ratio);
    if (res.exact && r.ratio > c.value * (1.0 + 1e-3)) ++res.violations;
  }
  res.max_ratio_over_constant = res.max_ratio / c.value;
  return res;
}

SweepResult sharpness_sweep(const BoundConfig& cfg, ExtremalKind kind,
                            const std::vector<double>& eps_list, std::optional<ConstantId> id,
                            const HarnessOptions& opts) {
  if (eps_list.empty()) throw std::invalid_argument("eps list is empty");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0)) throw std::invalid_argument("eps values must be positive");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
      throw std::invalid_argument("eps list must be strictly decreasing");
  }
  if (!sweep_supported(cfg))
    throw std::invalid_argument("sharpness sweeps need scalar or equal-modulus diagonal families");
  const SharpnessReport region = sharpness_region_check(cfg);
  if (kind == ExtremalKind::LebesgueEps && !region.lower_exponent_identity)
    throw std::invalid_argument("sum of 1/q_i- differs from 1/q+; no sweep for this configuration");
  if (kind == ExtremalKind::MorreyHerzPower && region.mh_case != MorreyHerzCase::B1)
    throw std::invalid_argument("Morrey-Herz sweeps are limited to region case b1");

  SweepResult res;
  res.id = id.value_or(default_constant(kind));
  res.exact = exact_constant_config(cfg, res.id);
  const BoundResult c = evaluate_constant(cfg, res.id, opts.scan.quad);
  const SuiteSpaces spaces = suite_spaces(cfg, res.id);
  res.rows.resize(eps_list.size());
  parallel_for(static_cast<int>(eps_list.size()), opts.workers, [&](int i) {
    const double eps = eps_list[i];
    const auto family = extremal_family(kind, cfg, eps, opts.scan);
    std::vector<RadialFunction> fs(family.begin(), family.end());
    const double ratio = operator_ratio(cfg.op, fs, spaces.sources, spaces.target, opts.scan);
    res.rows[i] = SweepRow{eps, ratio, c.value, ratio / c.value};
  });
  for (std::size_t i = 1; i < res.rows.size(); ++i)
    if (res.rows[i].ratio < res.rows[i - 1].ratio * (1.0 - 1e-9)) res.monotone = false;
  return res;
}

}  // namespace vexp
