#include "vexp/radial_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vexp {

double ExponentExpr::at_log_radius(double u) const {
  double a = a0;
  if (q && a1 != 0.0) a += a1 / q->at_log_radius(u);
  if (alpha && a2 != 0.0) a += a2 * alpha->at_log_radius(u);
  return a;
}

bool ExponentExpr::is_constant() const {
  const bool q_fixed = !q || a1 == 0.0 || q->is_constant();
  const bool alpha_fixed = !alpha || a2 == 0.0 || alpha->is_constant();
  return q_fixed && alpha_fixed;
}

bool ExponentExpr::constant_on(double u_lo, double u_hi) const {
  if (q && a1 != 0.0) {
    const auto [lo, hi] = q->log_range(u_lo, u_hi);
    if (lo != hi) return false;
  }
  if (alpha && a2 != 0.0) {
    const auto [lo, hi] = alpha->log_range(u_lo, u_hi);
    if (lo != hi) return false;
  }
  return true;
}

std::vector<double> ExponentExpr::log_breakpoints() const {
  std::vector<double> out;
  if (q && a1 != 0.0) out = q->log_breakpoints();
  if (alpha && a2 != 0.0) {
    auto b = alpha->log_breakpoints();
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

double PowerSegment::log_lo() const { return r_lo == 0.0 ? -kInf : std::log(r_lo); }
double PowerSegment::log_hi() const { return std::log(r_hi); }

PiecewisePowerFunction::PiecewisePowerFunction(std::vector<PowerSegment> segments)
    : segments_(std::move(segments)) {
  std::sort(segments_.begin(), segments_.end(),
            [](const PowerSegment& a, const PowerSegment& b) { return a.r_lo < b.r_lo; });
  for (std::size_t j = 0; j < segments_.size(); ++j) {
    const auto& s = segments_[j];
    if (!(s.r_lo >= 0.0) || !(s.r_lo < s.r_hi))
      throw std::invalid_argument("segment needs 0 <= r_lo < r_hi");
    if (!(s.coeff >= 0.0) || !std::isfinite(s.coeff))
      throw std::invalid_argument("segment coefficient must be finite and nonnegative");
    if (j > 0 && segments_[j - 1].r_hi > s.r_lo)
      throw std::invalid_argument("segments overlap");
  }
}

PiecewisePowerFunction PiecewisePowerFunction::power(double coeff, double exponent, double r_lo,
                                                     double r_hi) {
  return PiecewisePowerFunction({PowerSegment{r_lo, r_hi, coeff, ExponentExpr::constant(exponent)}});
}

PiecewisePowerFunction PiecewisePowerFunction::indicator(double r_lo, double r_hi) {
  return power(1.0, 0.0, r_lo, r_hi);
}

double PiecewisePowerFunction::log_value(double u) const {
  for (const auto& s : segments_) {
    if (u >= s.log_lo() && u < s.log_hi()) {
      if (s.coeff == 0.0) return -kInf;
      const double a = s.exponent.at_log_radius(u);
      return std::log(s.coeff) + (a == 0.0 ? 0.0 : a * u);
    }
  }
  return -kInf;
}

double PiecewisePowerFunction::operator()(double r) const {
  if (r <= 0.0) return 0.0;
  return std::exp(log_value(std::log(r)));
}

bool PiecewisePowerFunction::is_zero() const {
  return std::all_of(segments_.begin(), segments_.end(),
                     [](const PowerSegment& s) { return s.coeff == 0.0; });
}

PiecewisePowerFunction PiecewisePowerFunction::scaled(double c) const {
  if (c < 0.0) throw std::invalid_argument("scale must be nonnegative");
  auto segs = segments_;
  for (auto& s : segs) s.coeff *= c;
  return PiecewisePowerFunction(std::move(segs));
}

std::optional<PiecewisePowerFunction::Power> PiecewisePowerFunction::single_power() const {
  if (segments_.size() != 1) return std::nullopt;
  const auto& s = segments_.front();
  if (s.r_lo != 0.0 || !std::isinf(s.r_hi) || !s.exponent.is_constant()) return std::nullopt;
  return Power{s.coeff, s.exponent.at_log_radius(0.0)};
}

double RadialFunction::log_value(double u) const {
  if (auto p = piecewise()) return p->log_value(u);
  const auto* s = sampled();
  if (u < s->u_lo || u > s->u_hi) return -kInf;
  return s->log_value(u);
}

double RadialFunction::operator()(double r) const {
  if (r <= 0.0) return 0.0;
  return std::exp(log_value(std::log(r)));
}

Region Region::ball(double R) {
  if (!(R > 0.0)) throw std::invalid_argument("ball radius must be positive");
  return Region{Kind::Ball, 0.0, R, 0};
}

Region Region::annulus(double lo, double hi) {
  if (!(lo >= 0.0) || !(lo < hi)) throw std::invalid_argument("annulus needs 0 <= r_lo < r_hi");
  return Region{Kind::Annulus, lo, hi, 0};
}

Region Region::shell(int k) {
  return Region{Kind::Shell, std::ldexp(1.0, k - 1), std::ldexp(1.0, k), k};
}

double Region::log_lo() const {
  if (kind == Kind::Shell) return (k - 1) * std::numbers::ln2;
  return r_lo == 0.0 ? -kInf : std::log(r_lo);
}

double Region::log_hi() const {
  if (kind == Kind::Shell) return k * std::numbers::ln2;
  return std::log(r_hi);
}

}  // namespace vexp
