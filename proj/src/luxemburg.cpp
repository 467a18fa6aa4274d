#include "vexp/luxemburg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vexp/special.hpp"

namespace vexp {

namespace {

constexpr double kSnap = 1e-12;

bool nearly(double x, double y) {
  if (std::isinf(x) || std::isinf(y)) return x == y;
  return std::abs(x - y) <= kSnap * std::max(1.0, std::abs(x));
}

double representative(double a, double b) {
  if (std::isinf(a) && std::isinf(b)) return 0.0;
  if (std::isinf(a)) return b - 1.0;
  if (std::isinf(b)) return a + 1.0;
  return 0.5 * (a + b);
}

}  // namespace

double solve_luxemburg(const std::function<double(double)>& log_modular) {
  auto within = [&](double x) { return log_modular(x) <= 0.0; };
  const double step = std::log(1e12);
  const double cap = 700.0;
  double lo = -step;
  double hi = step;
  while (!within(hi)) {
    lo = hi;
    hi += step;
    if (hi > cap) return kInf;
  }
  while (within(lo)) {
    hi = lo;
    lo -= step;
    if (lo < -cap) return 0.0;
  }
  const double tol = -std::log1p(-LuxemburgProblem::kCertificateDelta);
  for (int it = 0; it < LuxemburgProblem::kMaxIterations && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (within(mid))
      hi = mid;
    else
      lo = mid;
  }
  if (hi - lo > tol) throw LuxemburgNonConvergence("Luxemburg bisection did not converge");
  return std::exp(hi);
}

LuxemburgProblem::LuxemburgProblem(const RadialFunction& g, const ExponentFunction& p,
                                   const Region& region, const NormContext& ctx)
    : g_(g), p_(p), ctx_(ctx), log_sigma_(std::log(sphere_area(ctx.n))) {
  const double ua = region.log_lo();
  const double ub = region.log_hi();

  std::vector<Piece> raw;
  if (const auto* pw = g.piecewise()) {
    for (const auto& s : pw->segments()) {
      if (s.coeff == 0.0) continue;
      double a = std::max(s.log_lo(), ua);
      double b = std::min(s.log_hi(), ub);
      if (nearly(a, s.log_lo()) && nearly(a, ua)) a = ua;
      if (nearly(b, s.log_hi()) && nearly(b, ub)) b = ub;
      if (!(a < b) || nearly(a, b)) continue;
      raw.push_back(Piece{a, b, s, false, 0.0, 0.0});
    }
  } else {
    const auto* sm = g.sampled();
    const double a = std::max(sm->u_lo, ua);
    const double b = std::min(sm->u_hi, ub);
    if (a < b && !nearly(a, b)) raw.push_back(Piece{a, b, std::nullopt, false, 0.0, 0.0});
  }

  std::vector<double> cuts = p_.log_breakpoints();
  if (ctx_.multiplier) {
    auto m = ctx_.multiplier->alpha.log_breakpoints();
    cuts.insert(cuts.end(), m.begin(), m.end());
  }
  for (const auto& pc : raw) {
    std::vector<double> local = cuts;
    if (pc.segment) {
      auto e = pc.segment->exponent.log_breakpoints();
      local.insert(local.end(), e.begin(), e.end());
    }
    std::sort(local.begin(), local.end());
    double start = pc.a;
    for (double c : local) {
      if (c > start && c < pc.b && !nearly(c, start) && !nearly(c, pc.b)) {
        Piece part = pc;
        part.a = start;
        part.b = c;
        pieces_.push_back(part);
        start = c;
      }
    }
    Piece last = pc;
    last.a = start;
    pieces_.push_back(last);
  }

  for (auto& pc : pieces_) {
    if ((std::isinf(pc.b) && end_diverges(pc, true)) ||
        (std::isinf(pc.a) && end_diverges(pc, false))) {
      divergent_ = true;
      return;
    }
    classify(pc);
    if (pc.separable && pc.log_k == kInf) {
      divergent_ = true;
      return;
    }
  }
}

double LuxemburgProblem::log_h(const Piece& pc, double u) const {
  double v;
  if (pc.segment) {
    const double a = pc.segment->exponent.at_log_radius(u);
    v = std::log(pc.segment->coeff) + (a == 0.0 ? 0.0 : a * u);
  } else {
    v = g_.log_value(u);
  }
  if (v == -kInf) return v;
  if (ctx_.gamma != 0.0) v += ctx_.gamma * u;
  if (ctx_.multiplier && ctx_.multiplier->kappa != 0.0)
    v += ctx_.multiplier->kappa * std::numbers::ln2 * ctx_.multiplier->alpha.at_log_radius(u);
  return v;
}

bool LuxemburgProblem::end_diverges(const Piece& pc, bool upper) const {
  double slope;
  if (pc.segment) {
    slope = upper ? pc.segment->exponent.at_infinity() : pc.segment->exponent.at_zero();
  } else {
    const auto& s = upper ? g_.sampled()->slope_hi : g_.sampled()->slope_lo;
    if (!s) return false;
    slope = *s;
  }
  slope += ctx_.gamma;
  const double p_lim = upper ? p_.at_infinity() : p_.at_zero();
  const double rate = ctx_.n + p_lim * slope;
  return upper ? rate >= -1e-14 : rate <= 1e-14;
}

void LuxemburgProblem::classify(Piece& pc) const {
  const auto [p_lo, p_hi] = p_.log_range(pc.a, pc.b);
  if (p_lo != p_hi) return;
  pc.separable = true;
  pc.p_const = p_lo;
  const double p = p_lo;
  const bool mult_fixed = !ctx_.multiplier || ctx_.multiplier->kappa == 0.0 ||
                          ctx_.multiplier->alpha.log_range(pc.a, pc.b).first ==
                              ctx_.multiplier->alpha.log_range(pc.a, pc.b).second;
  if (pc.segment && pc.segment->exponent.constant_on(pc.a, pc.b) && mult_fixed) {
    const double at = representative(pc.a, pc.b);
    const double slope = pc.segment->exponent.at_log_radius(at) + ctx_.gamma;
    double level = std::log(pc.segment->coeff);
    if (ctx_.multiplier && ctx_.multiplier->kappa != 0.0)
      level += ctx_.multiplier->kappa * std::numbers::ln2 * ctx_.multiplier->alpha.at_log_radius(at);
    pc.log_k = log_sigma_ + p * level + log_exp_integral(ctx_.n + p * slope, pc.a, pc.b);
    return;
  }
  const int n = ctx_.n;
  auto integrand = [&](double u) {
    const double h = log_h(pc, u);
    return h == -kInf ? -kInf : n * u + p * h;
  };
  std::vector<double> breaks;
  if (!pc.segment) breaks = g_.sampled()->log_breaks;
  pc.log_k = log_sigma_ + log_integral(integrand, pc.a, pc.b, breaks, ctx_.quad);
}

double LuxemburgProblem::log_modular(double log_eta) const {
  if (divergent_) return kInf;
  std::vector<double> terms;
  terms.reserve(pieces_.size());
  for (const auto& pc : pieces_) {
    if (pc.separable) {
      terms.push_back(pc.log_k - pc.p_const * log_eta);
      continue;
    }
    const int n = ctx_.n;
    auto integrand = [&](double u) {
      const double h = log_h(pc, u);
      return h == -kInf ? -kInf : n * u + p_.at_log_radius(u) * (h - log_eta);
    };
    std::vector<double> breaks;
    if (!pc.segment) breaks = g_.sampled()->log_breaks;
    const double v = log_sigma_ + log_integral(integrand, pc.a, pc.b, breaks, ctx_.quad);
    if (v == kInf) return kInf;
    terms.push_back(v);
  }
  return log_sum(terms);
}

double LuxemburgProblem::modular(double eta) const {
  if (is_zero()) return 0.0;
  if (!(eta > 0.0)) return kInf;
  return std::exp(log_modular(std::log(eta)));
}

double LuxemburgProblem::norm() const {
  if (is_zero()) return 0.0;
  if (divergent_) return kInf;
  return solve_luxemburg([this](double x) { return log_modular(x); });
}

double modular(const RadialFunction& g, const ExponentFunction& p, const Region& region,
               const NormContext& ctx, double eta) {
  return LuxemburgProblem(g, p, region, ctx).modular(eta);
}

double luxemburg_norm(const RadialFunction& g, const ExponentFunction& p, const Region& region,
                      const NormContext& ctx) {
  return LuxemburgProblem(g, p, region, ctx).norm();
}

double weighted_vexp_norm(const RadialFunction& f, const ExponentFunction& p, const PowerWeight& w,
                          const Region& region, const QuadratureOptions& quad) {
  NormContext ctx;
  ctx.n = w.n;
  ctx.gamma = w.gamma;
  ctx.quad = quad;
  return LuxemburgProblem(f, p, region, ctx).norm();
}

double norm_of_one(const ConjugateExponent& r, const Region& region, int n,
                   const QuadratureOptions& quad) {
  const double ua = region.log_lo();
  const double ub = region.log_hi();
  const double log_sigma = std::log(sphere_area(n));
  if (r.infinite_everywhere()) return 1.0;
  if (r.is_constant()) {
    const double inv = r.reciprocal_at_log_radius(0.0);
    const double log_measure = log_sigma + log_exp_integral(n, ua, ub);
    if (log_measure == kInf) return kInf;
    return std::exp(log_measure * inv);
  }
  if (std::isinf(ub) && r.reciprocal_at_infinity() > 0.0) return kInf;

  bool ess_branch = false;
  for (double u = std::max(ua, -700.0); u <= std::min(ub, 700.0) && !ess_branch; u += 0.25)
    ess_branch = r.reciprocal_at_log_radius(u) == 0.0;
  auto log_modular = [&](double x) {
    auto integrand = [&](double u) {
      const double rec = r.reciprocal_at_log_radius(u);
      if (rec == 0.0) return x > 0.0 ? -kInf : kInf;
      return n * u - x / rec;
    };
    const double body = log_sigma + log_integral(integrand, ua, ub, r.log_breakpoints(), quad);
    return ess_branch ? log_add(body, -x) : body;
  };
  return solve_luxemburg(log_modular);
}

}  // namespace vexp
