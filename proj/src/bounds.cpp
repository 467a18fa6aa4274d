#include "vexp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

namespace vexp {

namespace {

const std::vector<std::pair<ConstantId, std::string>>& id_names() {
  static const std::vector<std::pair<ConstantId, std::string>> names = {
      {ConstantId::C1, "C1"},   {ConstantId::C2, "C2"},         {ConstantId::C2Star, "C2*"},
      {ConstantId::C3, "C3"},   {ConstantId::C4, "C4"},         {ConstantId::C5, "C5"},
      {ConstantId::C5Star, "C5*"}, {ConstantId::C6, "C6"},      {ConstantId::C6Star, "C6*"},
      {ConstantId::C7, "C7"},   {ConstantId::C8, "C8"},         {ConstantId::C9, "C9"},
      {ConstantId::C10, "C10"}, {ConstantId::C11, "C11"},       {ConstantId::C12, "C12"}};
  return names;
}

}  // namespace

std::string to_string(ConstantId id) {
  for (const auto& [k, v] : id_names())
    if (k == id) return v;
  return "?";
}

ConstantId parse_constant_id(const std::string& s) {
  for (const auto& [k, v] : id_names())
    if (v == s) return k;
  throw std::invalid_argument("unknown constant id '" + s + "'");
}

std::vector<ConstantId> all_constant_ids() {
  std::vector<ConstantId> out;
  for (const auto& [k, v] : id_names()) out.push_back(k);
  return out;
}

std::string to_string(Coupling c) {
  switch (c) {
    case Coupling::Additive:
      return "additive";
    case Coupling::GammaOverQ:
      return "gamma_over_q";
    case Coupling::CentralMorrey:
      return "central_morrey";
  }
  return "?";
}

Coupling coupling_for(ConstantId id) {
  switch (id) {
    case ConstantId::C7:
    case ConstantId::C8:
      return Coupling::GammaOverQ;
    case ConstantId::C10:
    case ConstantId::C11:
    case ConstantId::C12:
      return Coupling::CentralMorrey;
    default:
      return Coupling::Additive;
  }
}

HypothesisError::HypothesisError(std::string hypothesis, const std::string& detail)
    : std::invalid_argument("hypothesis '" + hypothesis + "' violated: " + detail),
      hypothesis_(std::move(hypothesis)) {}

DerivedParams derive(const BoundConfig& cfg, Coupling coupling) {
  if (cfg.slots.empty()) throw std::invalid_argument("configuration has no slots");
  std::vector<ExponentFunction> qs;
  std::vector<SignedExponent> alphas;
  double inv_p = 0.0;
  for (const auto& s : cfg.slots) {
    qs.push_back(s.q);
    alphas.push_back(s.alpha);
    inv_p += 1.0 / s.p;
  }
  DerivedParams d;
  d.q = combine_reciprocal(qs);
  d.alpha = sum(alphas);
  d.p = 1.0 / inv_p;
  const int n = cfg.op.n;
  switch (coupling) {
    case Coupling::Additive:
      for (const auto& s : cfg.slots) {
        d.gamma += s.gamma;
        d.lambda += s.lambda;
      }
      break;
    case Coupling::GammaOverQ: {
      if (!d.q.is_constant())
        throw HypothesisError("gamma/q = sum gamma_i/q_i", "requires constant exponents");
      double g = 0.0;
      for (const auto& s : cfg.slots) {
        g += s.gamma / s.q.at_zero();
        d.lambda += s.lambda;
      }
      d.gamma = g * d.q.at_zero();
      break;
    }
    case Coupling::CentralMorrey: {
      double g = 0.0;
      for (const auto& s : cfg.slots) g += s.gamma / s.q.at_infinity();
      d.gamma = g * d.q.at_infinity();
      if (d.gamma <= -n)
        throw HypothesisError("gamma > -n", "derived target weight exponent is not locally integrable");
      for (const auto& s : cfg.slots) d.lambda += (n + s.gamma) / (n + d.gamma) * s.lambda;
      break;
    }
  }
  return d;
}

namespace {

struct Line {
  double a;
  double b;
  double at(double w) const { return b == 0.0 ? a : a + b * w; }
};

struct Group {
  bool take_max = true;
  std::vector<Line> lines;
  double at(double w) const {
    double v = lines.front().at(w);
    for (const auto& l : lines) v = take_max ? std::max(v, l.at(w)) : std::min(v, l.at(w));
    return v;
  }
  const Line& active(double w) const {
    const Line* best = &lines.front();
    for (const auto& l : lines) {
      const double x = l.at(w), y = best->at(w);
      if (take_max ? x > y : x < y) best = &l;
    }
    return *best;
  }
};

// Factor builders in terms of |s_i(t)|, with ln|s_i(e^w)| = l0 + l1 * w.
struct SlotScale {
  double l0, l1, log_n;
  int n;
  Line pow_a(double x) const { return {0.5 * x * log_n + x * l0, x * l1}; }
  Line pow_ainv(double x) const { return {0.5 * x * log_n - x * l0, -x * l1}; }
  Line pow_det_inv(double x) const { return {-n * x * l0, -n * x * l1}; }
  Line pow_s(double x) const { return {x * l0, x * l1}; }
};

struct Assembly {
  double log_const = 0.0;
  double slope = 0.0;
  std::vector<Group> groups;
  std::vector<int> one_slots;
  double one_zeta = 1.0;
  std::map<std::string, double> breakdown;
  std::vector<std::string> notes;
  bool forced_infinite = false;
};

Group single(Line l) { return Group{true, {l}}; }
Group pair_max(Line x, Line y) { return Group{true, {x, y}}; }
Group pair_min(Line x, Line y) { return Group{false, {x, y}}; }

double theta_sum(int theta, double x) {
  double s = 0.0;
  for (int r = theta - 1; r <= 0; ++r) s += std::pow(2.0, r * x);
  return s;
}

void require(bool ok, const std::string& hyp, const std::string& detail) {
  if (!ok) throw HypothesisError(hyp, detail);
}

std::string slot_label(std::size_t i) { return "slot " + std::to_string(i + 1); }

void add_c_factor(Assembly& as, const SlotScale& sc, double weight, const ExponentFunction& q) {
  as.groups.push_back(pair_max(sc.pow_a(-weight), sc.pow_ainv(weight)));
  as.groups.push_back(pair_max(sc.pow_det_inv(1.0 / q.plus()), sc.pow_det_inv(1.0 / q.minus())));
}

Group exponent_pair(const SlotScale& sc, const SlotParams& s, int n, bool take_max) {
  const Line x = sc.pow_ainv(n / s.q.plus() + s.gamma);
  const Line y = sc.pow_ainv(n / s.q.minus() + s.gamma);
  return take_max ? pair_max(x, y) : pair_min(x, y);
}

// Registers the ||1||_{L^{r_i(t,.)}} factor; constant exponents are resolved here.
void add_one_factor(Assembly& as, const SlotParams& s, std::size_t i, double zeta) {
  as.one_zeta = zeta;
  if (s.q.is_constant()) {
    require(zeta >= 1.0, "q_i(A_i^{-1}(t)x) <= zeta q_i(x)",
            slot_label(i) + ": constant exponent needs zeta >= 1");
    if (zeta > 1.0) {
      as.forced_infinite = true;
      as.notes.push_back(slot_label(i) +
                         ": ||1|| over R^n is infinite because r_i is a finite constant");
    }
    return;
  }
  as.one_slots.push_back(static_cast<int>(i));
}

void check_common(const BoundConfig& cfg) {
  cfg.op.validate();
  if (static_cast<int>(cfg.slots.size()) != cfg.op.m)
    throw std::invalid_argument("number of slots differs from m");
  if (!(cfg.zeta > 0.0)) throw HypothesisError("zeta > 0", "zeta must be positive");
}

Assembly assemble(const BoundConfig& cfg, ConstantId id) {
  check_common(cfg);
  const int n = cfg.op.n;
  const int m = cfg.op.m;
  Assembly as;
  as.log_const = std::log(cfg.op.sigma()) + std::log(cfg.op.kernel.phi.c);
  as.slope = cfg.op.kernel.phi.a;
  as.breakdown["sigma"] = cfg.op.sigma();

  const int theta = theta_star(static_cast<double>(n));
  std::vector<SlotScale> scales;
  for (const auto& f : cfg.op.families)
    scales.push_back(SlotScale{std::log(std::abs(f.map().c)), f.map().a, std::log(double(n)), n});

  auto all_constant_q = [&] {
    return std::all_of(cfg.slots.begin(), cfg.slots.end(),
                       [](const SlotParams& s) { return s.q.is_constant(); });
  };
  auto require_lambda_positive = [&] {
    for (std::size_t i = 0; i < cfg.slots.size(); ++i)
      require(cfg.slots[i].lambda > 0.0, "lambda_i > 0", slot_label(i));
  };
  auto require_alpha_order = [&] {
    for (std::size_t i = 0; i < cfg.slots.size(); ++i)
      require(cfg.slots[i].alpha.at_zero() >= cfg.slots[i].alpha.at_infinity(),
              "alpha_i(0) - alpha_i,inf >= 0", slot_label(i));
  };
  auto require_p_at_least_one = [&] {
    for (std::size_t i = 0; i < cfg.slots.size(); ++i)
      require(cfg.slots[i].p >= 1.0, "1 <= p_i < inf", slot_label(i));
    require(derive(cfg, Coupling::Additive).p >= 1.0, "1 <= p < inf",
            "1/p = sum 1/p_i gives p < 1");
  };
  auto require_constant_params = [&] {
    for (std::size_t i = 0; i < cfg.slots.size(); ++i) {
      require(cfg.slots[i].q.is_constant(), "constant q_i", slot_label(i));
      require(cfg.slots[i].alpha.is_constant(), "constant alpha_i", slot_label(i));
    }
  };
  auto require_central_range = [&] {
    for (std::size_t i = 0; i < cfg.slots.size(); ++i) {
      const auto& s = cfg.slots[i];
      const double qi = s.q.at_infinity();
      require(s.lambda > -1.0 / qi && s.lambda < 0.0, "lambda_i in (-1/q_i,inf, 0)",
              slot_label(i));
      require(s.gamma > -n, "gamma_i > -n", slot_label(i));
    }
    derive(cfg, Coupling::CentralMorrey);
  };

  switch (id) {
    case ConstantId::C1:
      for (std::size_t i = 0; i < cfg.slots.size(); ++i) {
        add_c_factor(as, scales[i], cfg.slots[i].gamma, cfg.slots[i].q);
        add_one_factor(as, cfg.slots[i], i, cfg.zeta);
      }
      break;
    case ConstantId::C2:
    case ConstantId::C2Star:
      for (std::size_t i = 0; i < cfg.slots.size(); ++i) {
        as.groups.push_back(exponent_pair(scales[i], cfg.slots[i], n, id == ConstantId::C2));
        if (id == ConstantId::C2) add_one_factor(as, cfg.slots[i], i, 1.0);
      }
      break;
    case ConstantId::C3:
      require_lambda_positive();
      require_alpha_order();
      as.breakdown["theta_star"] = theta;
      for (std::size_t i = 0; i < cfg.slots.size(); ++i) {
        const auto& s = cfg.slots[i];
        const double a0 = s.alpha.at_zero(), ai = s.alpha.at_infinity();
        add_c_factor(as, scales[i], s.gamma, s.q);
        add_one_factor(as, s, i, cfg.zeta);
        as.groups.push_back(pair_max(scales[i].pow_a(s.lambda - a0), scales[i].pow_a(s.lambda - ai)));
        as.log_const += std::log(std::max(theta_sum(theta, s.lambda - a0), theta_sum(theta, s.lambda - ai)));
      }
      break;
    case ConstantId::C4: {
      require_p_at_least_one();
      as.breakdown["theta_star"] = theta;
      const double p = derive(cfg, Coupling::Additive).p;
      as.log_const += (m - 1.0 / p) * std::log(2.0 - theta);
      for (std::size_t i = 0; i < cfg.slots.size(); ++i) {
        const auto& s = cfg.slots[i];
        const double a0 = s.alpha.at_zero();
        require(a0 == s.alpha.at_infinity(), "alpha_i(0) = alpha_i,inf", slot_label(i));
        add_c_factor(as, scales[i], s.gamma, s.q);
        add_one_factor(as, s, i, cfg.zeta);
        as.groups.push_back(single(scales[i].pow_a(-a0)));
        as.log_const += std::log(theta_sum(theta, -a0));
      }
      break;
    }
    case ConstantId::C5:
    case ConstantId::C5Star:
      require_lambda_positive();
      require_alpha_order();
      for (std::size_t i = 0; i < cfg.slots.size(); ++i) {
        const auto& s = cfg.slots[i];
        const double a0 = s.alpha.at_zero(), ai = s.alpha.at_infinity();
        const bool upper = id == ConstantId::C5;
        as.groups.push_back(exponent_pair(scales[i], s, n, upper));
        as.groups.push_back(single(scales[i].pow_ainv(-s.lambda)));
        if (upper) {
          as.groups.push_back(pair_max(scales[i].pow_ainv(a0), scales[i].pow_ainv(ai)));
          add_one_factor(as, s, i, 1.0);
        } else {
          const auto c0 = s.alpha.log_holder_zero();
          require(c0.has_value(), "alpha_i log-Hoelder at the origin", slot_label(i));
          as.groups.push_back(pair_min(scales[i].pow_ainv(a0 + *c0), scales[i].pow_ainv(a0 - *c0)));
        }
      }
      break;
    case ConstantId::C6:
      require_p_at_least_one();
      for (std::size_t i = 0; i < cfg.slots.size(); ++i) {
        const auto& s = cfg.slots[i];
        as.groups.push_back(exponent_pair(scales[i], s, n, true));
        as.groups.push_back(single(scales[i].pow_ainv(s.alpha.at_zero())));
        add_one_factor(as, s, i, 1.0);
      }
      break;
    case ConstantId::C6Star: {
      require_p_at_least_one();
      const bool flat = all_constant_q();
      for (std::size_t i = 0; i < cfg.slots.size(); ++i) {
        const auto& s = cfg.slots[i];
        if (flat) {
          as.groups.push_back(
              single(scales[i].pow_ainv(s.alpha.at_zero() + n / s.q.at_zero() + s.gamma)));
        } else {
          as.groups.push_back(exponent_pair(scales[i], s, n, false));
          as.groups.push_back(single(scales[i].pow_ainv(s.alpha.sup_abs())));
        }
      }
      break;
    }
    case ConstantId::C7:
    case ConstantId::C8:
      require_constant_params();
      if (id == ConstantId::C7)
        for (std::size_t i = 0; i < cfg.slots.size(); ++i)
          require(cfg.slots[i].lambda >= 0.0, "lambda_i >= 0", slot_label(i));
      if (id == ConstantId::C8) require_p_at_least_one();
      derive(cfg, Coupling::GammaOverQ);
      for (std::size_t i = 0; i < cfg.slots.size(); ++i) {
        const auto& s = cfg.slots[i];
        const double lam = id == ConstantId::C7 ? s.lambda : 0.0;
        as.groups.push_back(
            single(scales[i].pow_ainv(-lam + s.alpha.at_zero() + (n + s.gamma) / s.q.at_zero())));
      }
      break;
    case ConstantId::C9:
      require_p_at_least_one();
      for (std::size_t i = 0; i < cfg.slots.size(); ++i) {
        const auto& s = cfg.slots[i];
        require(s.alpha.is_constant(), "constant alpha_i", slot_label(i));
        require(cfg.op.families[i].kind() != FamilyKind::OrthogonalTimesScalar,
                "A_i(t) = diag[s_i1(t),...,s_in(t)] with |s_ij| = |s_i|", slot_label(i));
        as.groups.push_back(single(scales[i].pow_s(-s.alpha.at_zero() - n / s.p)));
      }
      break;
    case ConstantId::C10:
      require_central_range();
      for (std::size_t i = 0; i < cfg.slots.size(); ++i) {
        const auto& s = cfg.slots[i];
        require(s.alpha.is_constant(), "constant alpha_i", slot_label(i));
        as.groups.push_back(
            single(scales[i].pow_a((n + s.gamma) * (1.0 / s.q.at_infinity() + s.lambda))));
        add_c_factor(as, scales[i], s.alpha.at_zero(), s.q);
        add_one_factor(as, s, i, 1.0);
      }
      break;
    case ConstantId::C11:
    case ConstantId::C12:
      require_central_range();
      for (std::size_t i = 0; i < cfg.slots.size(); ++i) {
        const auto& s = cfg.slots[i];
        require(s.q.is_constant(), "constant q_i", slot_label(i));
        if (id == ConstantId::C11) {
          require(s.alpha.is_constant(), "constant alpha_i", slot_label(i));
          as.groups.push_back(single(scales[i].pow_ainv(
              s.alpha.at_zero() - s.gamma / s.q.at_zero() - s.lambda * (n + s.gamma))));
        } else {
          as.groups.push_back(single(scales[i].pow_ainv(-(n + s.gamma) * s.lambda)));
        }
      }
      break;
  }
  return as;
}

// ||1|| factors need a full Luxemburg solve per node; both the inner modulars and the
// outer integral run at looser tolerances so the adaptive rule does not chase solver noise.
constexpr double kOneNormTol = 1e-7;
constexpr double kOneNormOuterTol = 1e-5;

class OneNormCache {
 public:
  OneNormCache(const BoundConfig& cfg, double zeta, const QuadratureOptions& quad)
      : cfg_(cfg), zeta_(zeta), inner_(quad) {
    inner_.rel_tol = std::max(quad.rel_tol, kOneNormTol);
  }

  double log_value(int slot, double w) {
    auto& memo = memo_[slot];
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    const double t = std::exp(w);
    const auto& q = cfg_.slots[slot].q;
    // pull back in log form so that tiny |t| does not underflow to a singular matrix
    const double shift = cfg_.op.families[slot].map().log_abs_at_log(w);
    const ExponentFunction pulled = shift == 0.0 ? q : q.dilated(shift);
    double v;
    try {
      const ConjugateExponent r = difference_reciprocal(pulled, q, zeta_);
      v = std::log(norm_of_one(r, Region::all(), cfg_.op.n, inner_));
    } catch (const std::domain_error& e) {
      std::ostringstream msg;
      msg << slot_label(slot) << " at |t| = " << t << ": " << e.what();
      throw HypothesisError("q_i(A_i^{-1}(t)x) <= zeta q_i(x)", msg.str());
    }
    memo.emplace(w, v);
    return v;
  }

 private:
  const BoundConfig& cfg_;
  double zeta_;
  QuadratureOptions inner_;
  std::unordered_map<int, std::unordered_map<double, double>> memo_;
};

BoundResult integrate(const BoundConfig& cfg, ConstantId id, double w_lo, double w_hi,
                      const QuadratureOptions& quad) {
  Assembly as = assemble(cfg, id);
  BoundResult res;
  res.id = id;
  res.breakdown = as.breakdown;
  res.notes = as.notes;
  if (as.forced_infinite) {
    res.value = kInf;
    res.finite = false;
    res.breakdown["log_value"] = kInf;
    return res;
  }
  if (!(w_lo < w_hi)) {
    res.value = 0.0;
    res.breakdown["log_value"] = -kInf;
    return res;
  }

  std::vector<double> edges = {w_lo, w_hi};
  for (const auto& g : as.groups) {
    for (std::size_t j = 0; j < g.lines.size(); ++j) {
      for (std::size_t k = j + 1; k < g.lines.size(); ++k) {
        const double db = g.lines[j].b - g.lines[k].b;
        if (db == 0.0) continue;
        const double w = (g.lines[k].a - g.lines[j].a) / db;
        if (w > w_lo && w < w_hi) edges.push_back(w);
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  res.breakdown["kink_count"] = static_cast<double>(edges.size() - 2);

  OneNormCache cache(cfg, as.one_zeta, quad);
  std::vector<double> terms;
  for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
    const double wa = edges[j], wb = edges[j + 1];
    const double wm = std::isinf(wa) && std::isinf(wb) ? 0.0
                      : std::isinf(wa)                 ? wb - 1.0
                      : std::isinf(wb)                 ? wa + 1.0
                                                       : 0.5 * (wa + wb);
    double level = as.log_const;
    double slope = as.slope;
    for (const auto& g : as.groups) {
      const Line& l = g.active(wm);
      level += l.a;
      slope += l.b;
    }
    double term = level + log_exp_integral(slope, wa, wb);
    if (term == kInf) {
      // ||1|| over the whole space is never below 1, so the bare integral already decides divergence.
      res.notes.push_back(std::isinf(wa) && (!std::isinf(wb) || slope <= 0.0)
                              ? "integral diverges as |t| -> 0"
                              : "integral diverges as |t| -> infinity");
    } else if (!as.one_slots.empty()) {
      auto integrand = [&](double w) {
        double v = as.log_const + as.slope * w;
        for (const auto& g : as.groups) v += g.at(w);
        for (int s : as.one_slots) v += cache.log_value(s, w);
        return v;
      };
      QuadratureOptions outer = quad;
      outer.rel_tol = std::max(quad.rel_tol, kOneNormOuterTol);
      term = log_integral(integrand, wa, wb, {}, outer);
      if (term == kInf) res.notes.push_back("integral or ||1|| factor diverges");
    }
    if (term == kInf) {
      res.value = kInf;
      res.finite = false;
      res.breakdown["log_value"] = kInf;
      return res;
    }
    terms.push_back(term);
  }
  const double lv = log_sum(terms);
  res.breakdown["log_value"] = lv;
  res.value = std::exp(lv);
  res.finite = std::isfinite(res.value);
  return res;
}

}  // namespace

BoundResult evaluate_constant(const BoundConfig& cfg, ConstantId id,
                              const QuadratureOptions& quad) {
  return integrate(cfg, id, cfg.op.log_w_lo(), cfg.op.log_w_hi(), quad);
}

BoundResult evaluate_constant_truncated(const BoundConfig& cfg, ConstantId id, double r_lo,
                                        double r_hi, const QuadratureOptions& quad) {
  const double lo = std::max(cfg.op.log_w_lo(), r_lo == 0.0 ? -kInf : std::log(r_lo));
  const double hi = std::min(cfg.op.log_w_hi(), std::log(r_hi));
  return integrate(cfg, id, lo, hi, quad);
}

namespace {

std::vector<BoundResult> evaluate_group(const BoundConfig& cfg, std::vector<ConstantId> ids,
                                        const QuadratureOptions& quad) {
  std::vector<BoundResult> out;
  for (auto id : ids) out.push_back(evaluate_constant(cfg, id, quad));
  return out;
}

}  // namespace

std::vector<BoundResult> lebesgue_constants(const BoundConfig& cfg, const QuadratureOptions& quad) {
  return evaluate_group(cfg, {ConstantId::C1, ConstantId::C2, ConstantId::C2Star}, quad);
}

std::vector<BoundResult> herz_morrey_constants(const BoundConfig& cfg,
                                               const QuadratureOptions& quad) {
  return evaluate_group(cfg,
                        {ConstantId::C3, ConstantId::C4, ConstantId::C5, ConstantId::C5Star,
                         ConstantId::C6, ConstantId::C6Star},
                        quad);
}

std::vector<BoundResult> constparam_constants(const BoundConfig& cfg,
                                              const QuadratureOptions& quad) {
  return evaluate_group(cfg, {ConstantId::C7, ConstantId::C8, ConstantId::C9}, quad);
}

std::vector<BoundResult> central_morrey_constants(const BoundConfig& cfg,
                                                  const QuadratureOptions& quad) {
  return evaluate_group(cfg, {ConstantId::C10, ConstantId::C11, ConstantId::C12}, quad);
}

bool SlotRegion::theta_nonnegative() const { return theta0 >= 0.0 && theta_inf >= 0.0; }

bool SlotRegion::lambda_in_region() const {
  const double lo = std::max(std::min(eta0, eta1), std::min(zeta0, zeta1));
  const double hi = std::min(std::max(eta0, eta1), std::max(zeta0, zeta1));
  return lambda >= lo && lambda <= hi;
}

SlotRegion slot_region(double q_plus, double q_minus, double alpha0, double alpha_inf, double c0,
                       double c_inf, double lambda) {
  SlotRegion r;
  r.q_plus = q_plus;
  r.q_minus = q_minus;
  r.alpha0 = alpha0;
  r.alpha_inf = alpha_inf;
  r.c0 = c0;
  r.c_inf = c_inf;
  r.lambda = lambda;
  const double up = q_plus / q_minus;
  const double down = q_minus / q_plus;
  r.beta0 = (lambda - alpha0 + c0 >= 0.0) ? up : down;
  r.beta_inf = (lambda - alpha_inf - c_inf < 0.0) ? up : down;
  r.theta0 = lambda - alpha_inf - (lambda - alpha0 + c0) * r.beta0;
  r.theta_inf = alpha0 + (lambda - alpha_inf - c_inf) * r.beta_inf - lambda;
  r.c_alpha = q_minus * (alpha0 - alpha_inf) * (1.0 + up) / q_plus;
  if (up != 1.0) {
    r.eta0 = (c0 * down - alpha0 * down + alpha_inf) / (1.0 - down);
    r.eta1 = (c0 * up - alpha0 * up + alpha_inf) / (1.0 - up);
    r.zeta0 = (c_inf * up - alpha0 + alpha_inf * up) / (up - 1.0);
    r.zeta1 = (c_inf * down - alpha0 + alpha_inf * down) / (down - 1.0);
  } else {
    r.eta0 = r.eta1 = r.zeta0 = r.zeta1 = std::nan("");
  }
  return r;
}

std::string to_string(MorreyHerzCase c) {
  switch (c) {
    case MorreyHerzCase::B1:
      return "b1";
    case MorreyHerzCase::B2:
      return "b2";
    case MorreyHerzCase::B3:
      return "b3";
    case MorreyHerzCase::None:
      return "none";
  }
  return "none";
}

std::string to_string(HerzCase c) {
  switch (c) {
    case HerzCase::B1:
      return "b1";
    case HerzCase::B2:
      return "b2";
    case HerzCase::None:
      return "none";
  }
  return "none";
}

SharpnessReport sharpness_region_check(const BoundConfig& cfg) {
  SharpnessReport rep;
  bool b1 = true, b2 = true, b3 = true, h1 = true, h2 = true;
  double inv_minus = 0.0;
  for (const auto& s : cfg.slots) {
    const auto c0 = s.alpha.log_holder_zero();
    const auto ci = s.alpha.log_holder_infinity();
    SlotRegion r = slot_region(s.q.plus(), s.q.minus(), s.alpha.at_zero(), s.alpha.at_infinity(),
                               c0.value_or(0.0), ci.value_or(0.0), s.lambda);
    r.holder_known = c0.has_value() && ci.has_value();
    const double gap = r.alpha0 - r.alpha_inf;
    const bool flat = r.q_plus == r.q_minus;
    b1 = b1 && flat && r.holder_known && r.c0 <= gap && r.c_inf <= gap;
    b2 = b2 && !flat && r.holder_known && r.c0 == 0.0 && r.c_inf == 0.0 &&
         s.lambda == r.alpha0 && s.lambda == r.alpha_inf;
    const bool in_b3 = !flat && r.holder_known && r.c0 < gap && r.c_inf < gap &&
                       r.c0 + r.c_inf <= r.c_alpha && r.lambda_in_region();
    b3 = b3 && in_b3;
    if (!flat && r.holder_known && r.c0 < gap && r.c_inf < gap && r.c0 + r.c_inf <= r.c_alpha)
      rep.equivalence_holds = rep.equivalence_holds && (r.theta_nonnegative() == r.lambda_in_region());
    h1 = h1 && flat;
    h2 = h2 && r.alpha0 < s.alpha.sup_abs() * r.q_minus / r.q_plus;
    inv_minus += 1.0 / r.q_minus;
    rep.slots.push_back(r);
  }
  if (b1)
    rep.mh_case = MorreyHerzCase::B1;
  else if (b2)
    rep.mh_case = MorreyHerzCase::B2;
  else if (b3)
    rep.mh_case = MorreyHerzCase::B3;
  if (h1)
    rep.herz_case = HerzCase::B1;
  else if (h2)
    rep.herz_case = HerzCase::B2;
  rep.satisfied = rep.mh_case != MorreyHerzCase::None;
  std::vector<ExponentFunction> qs;
  for (const auto& s : cfg.slots) qs.push_back(s.q);
  try {
    const double q_plus = combine_reciprocal(qs).plus();
    rep.lower_exponent_identity = std::abs(inv_minus - 1.0 / q_plus) <= 1e-12;
  } catch (const std::domain_error&) {
    rep.lower_exponent_identity = false;
  }
  return rep;
}

}  // namespace vexp
