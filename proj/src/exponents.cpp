#include "vexp/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vexp/matrices.hpp"
#include "vexp/special.hpp"

namespace vexp {

namespace detail {

struct ExponentNode {
  virtual ~ExponentNode() = default;
  virtual double at(double u) const = 0;
  // +1 nondecreasing, -1 nonincreasing, 0 constant, 2 unknown.
  virtual int direction() const = 0;
  virtual std::pair<double, double> bounds(double ua, double ub) const = 0;
  virtual std::optional<double> holder_zero() const = 0;
  virtual std::optional<double> holder_infinity() const = 0;
  virtual std::vector<double> breaks() const { return {}; }
  virtual std::string kind() const = 0;

  std::pair<double, double> range(double ua, double ub) const {
    const int d = direction();
    if (d == 0) {
      const double v = at(0.0);
      return {v, v};
    }
    if (d == 1 || d == -1) {
      const double x = at(ua);
      const double y = at(ub);
      return {std::min(x, y), std::max(x, y)};
    }
    return bounds(ua, ub);
  }
};

namespace {

int merge_direction(int a, int b) {
  if (a == 0) return b;
  if (b == 0) return a;
  if (a == b && a != 2) return a;
  return 2;
}

struct ConstantNode final : ExponentNode {
  double c;
  explicit ConstantNode(double v) : c(v) {}
  double at(double) const override { return c; }
  int direction() const override { return 0; }
  std::pair<double, double> bounds(double, double) const override { return {c, c}; }
  std::optional<double> holder_zero() const override { return 0.0; }
  std::optional<double> holder_infinity() const override { return 0.0; }
  std::string kind() const override { return "constant"; }
};

struct LogInterpNode final : ExponentNode {
  double p0, pinf;
  LogInterpNode(double a, double b) : p0(a), pinf(b) {}
  double at(double u) const override { return pinf + (p0 - pinf) / log_e_plus_exp(u); }
  int direction() const override {
    if (p0 == pinf) return 0;
    return pinf > p0 ? 1 : -1;
  }
  std::pair<double, double> bounds(double ua, double ub) const override {
    const double x = at(ua), y = at(ub);
    return {std::min(x, y), std::max(x, y)};
  }
  std::optional<double> holder_zero() const override { return std::abs(p0 - pinf); }
  std::optional<double> holder_infinity() const override { return std::abs(p0 - pinf); }
  std::string kind() const override { return "log_interp"; }
};

struct PiecewiseNode final : ExponentNode {
  std::vector<double> log_breaks;
  std::vector<double> values;
  PiecewiseNode(const std::vector<double>& br, std::vector<double> vals) : values(std::move(vals)) {
    for (double b : br) log_breaks.push_back(std::log(b));
  }
  std::size_t index(double u) const {
    return static_cast<std::size_t>(std::upper_bound(log_breaks.begin(), log_breaks.end(), u) -
                                    log_breaks.begin());
  }
  double at(double u) const override { return values[index(u)]; }
  int direction() const override {
    int d = 0;
    for (std::size_t j = 1; j < values.size(); ++j) {
      if (values[j] > values[j - 1]) d = merge_direction(d, 1);
      if (values[j] < values[j - 1]) d = merge_direction(d, -1);
    }
    return d;
  }
  std::pair<double, double> bounds(double ua, double ub) const override {
    const std::size_t lo = index(ua), hi = index(ub);
    const auto [mn, mx] = std::minmax_element(values.begin() + lo, values.begin() + hi + 1);
    return {*mn, *mx};
  }
  std::optional<double> holder_zero() const override { return std::nullopt; }
  std::optional<double> holder_infinity() const override { return std::nullopt; }
  std::vector<double> breaks() const override { return log_breaks; }
  std::string kind() const override { return "piecewise"; }
};

struct DilatedNode final : ExponentNode {
  std::shared_ptr<const ExponentNode> inner;
  double shift;
  DilatedNode(std::shared_ptr<const ExponentNode> in, double s) : inner(std::move(in)), shift(s) {}
  double at(double u) const override { return inner->at(u - shift); }
  int direction() const override { return inner->direction(); }
  std::pair<double, double> bounds(double ua, double ub) const override {
    return inner->range(ua - shift, ub - shift);
  }
  std::optional<double> holder_zero() const override {
    auto c = inner->holder_zero();
    if (!c) return c;
    return *c * (1.0 + std::abs(shift));
  }
  std::optional<double> holder_infinity() const override {
    auto c = inner->holder_infinity();
    if (!c) return c;
    return *c * (1.0 + std::abs(shift));
  }
  std::vector<double> breaks() const override {
    auto b = inner->breaks();
    for (double& x : b) x += shift;
    return b;
  }
  std::string kind() const override { return "dilated"; }
};

struct ScaledNode final : ExponentNode {
  std::shared_ptr<const ExponentNode> inner;
  double factor;
  ScaledNode(std::shared_ptr<const ExponentNode> in, double k) : inner(std::move(in)), factor(k) {}
  double at(double u) const override { return factor * inner->at(u); }
  int direction() const override {
    const int d = inner->direction();
    return (factor < 0.0 && (d == 1 || d == -1)) ? -d : d;
  }
  std::pair<double, double> bounds(double ua, double ub) const override {
    const auto [lo, hi] = inner->range(ua, ub);
    return factor >= 0.0 ? std::pair{factor * lo, factor * hi} : std::pair{factor * hi, factor * lo};
  }
  std::optional<double> holder_zero() const override {
    auto c = inner->holder_zero();
    if (!c) return c;
    return std::abs(factor) * *c;
  }
  std::optional<double> holder_infinity() const override {
    auto c = inner->holder_infinity();
    if (!c) return c;
    return std::abs(factor) * *c;
  }
  std::vector<double> breaks() const override { return inner->breaks(); }
  std::string kind() const override { return "scaled"; }
};

std::vector<double> union_breaks(const std::vector<std::shared_ptr<const ExponentNode>>& terms) {
  std::vector<double> all;
  for (const auto& t : terms) {
    auto b = t->breaks();
    all.insert(all.end(), b.begin(), b.end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

struct SumNode final : ExponentNode {
  std::vector<std::shared_ptr<const ExponentNode>> terms;
  explicit SumNode(std::vector<std::shared_ptr<const ExponentNode>> t) : terms(std::move(t)) {}
  double at(double u) const override {
    double s = 0.0;
    for (const auto& t : terms) s += t->at(u);
    return s;
  }
  int direction() const override {
    int d = 0;
    for (const auto& t : terms) d = merge_direction(d, t->direction());
    return d;
  }
  std::pair<double, double> bounds(double ua, double ub) const override {
    double lo = 0.0, hi = 0.0;
    for (const auto& t : terms) {
      auto [a, b] = t->range(ua, ub);
      lo += a;
      hi += b;
    }
    return {lo, hi};
  }
  std::optional<double> holder_zero() const override {
    double c = 0.0;
    for (const auto& t : terms) {
      auto v = t->holder_zero();
      if (!v) return std::nullopt;
      c += *v;
    }
    return c;
  }
  std::optional<double> holder_infinity() const override {
    double c = 0.0;
    for (const auto& t : terms) {
      auto v = t->holder_infinity();
      if (!v) return std::nullopt;
      c += *v;
    }
    return c;
  }
  std::vector<double> breaks() const override { return union_breaks(terms); }
  std::string kind() const override { return "sum"; }
};

struct ReciprocalSumNode final : ExponentNode {
  std::vector<std::shared_ptr<const ExponentNode>> terms;
  explicit ReciprocalSumNode(std::vector<std::shared_ptr<const ExponentNode>> t)
      : terms(std::move(t)) {}
  double at(double u) const override {
    double s = 0.0;
    for (const auto& t : terms) s += 1.0 / t->at(u);
    return 1.0 / s;
  }
  int direction() const override {
    int d = 0;
    for (const auto& t : terms) d = merge_direction(d, t->direction());
    return d;
  }
  std::pair<double, double> bounds(double ua, double ub) const override {
    double inv_hi = 0.0, inv_lo = 0.0;
    for (const auto& t : terms) {
      auto [a, b] = t->range(ua, ub);
      inv_hi += 1.0 / a;
      inv_lo += 1.0 / b;
    }
    return {1.0 / inv_hi, 1.0 / inv_lo};
  }
  std::optional<double> holder(bool zero) const {
    const auto [lo, hi] = range(-kInf, kInf);
    (void)lo;
    double c = 0.0;
    for (const auto& t : terms) {
      auto v = zero ? t->holder_zero() : t->holder_infinity();
      if (!v) return std::nullopt;
      const double tmin = t->range(-kInf, kInf).first;
      c += *v / (tmin * tmin);
    }
    return hi * hi * c;
  }
  std::optional<double> holder_zero() const override { return holder(true); }
  std::optional<double> holder_infinity() const override { return holder(false); }
  std::vector<double> breaks() const override { return union_breaks(terms); }
  std::string kind() const override { return "reciprocal_sum"; }
};

}  // namespace
}  // namespace detail

SignedExponent::SignedExponent() : SignedExponent(constant(0.0)) {}

SignedExponent::SignedExponent(std::shared_ptr<const detail::ExponentNode> node)
    : node_(std::move(node)) {}

SignedExponent SignedExponent::constant(double c) {
  if (!std::isfinite(c)) throw std::domain_error("exponent value must be finite");
  return SignedExponent(std::make_shared<detail::ConstantNode>(c));
}

SignedExponent SignedExponent::log_interp(double p0, double p_inf) {
  if (!std::isfinite(p0) || !std::isfinite(p_inf))
    throw std::domain_error("exponent value must be finite");
  return SignedExponent(std::make_shared<detail::LogInterpNode>(p0, p_inf));
}

SignedExponent SignedExponent::piecewise(std::vector<double> breaks, std::vector<double> values) {
  if (values.size() != breaks.size() + 1)
    throw std::invalid_argument("piecewise exponent needs one more value than breakpoints");
  for (std::size_t j = 0; j < breaks.size(); ++j) {
    if (!(breaks[j] > 0.0) || !std::isfinite(breaks[j]))
      throw std::invalid_argument("piecewise breakpoints must be positive radii");
    if (j > 0 && !(breaks[j] > breaks[j - 1]))
      throw std::invalid_argument("piecewise breakpoints must be strictly increasing");
  }
  for (double v : values)
    if (!std::isfinite(v)) throw std::domain_error("exponent value must be finite");
  return SignedExponent(std::make_shared<detail::PiecewiseNode>(breaks, std::move(values)));
}

double SignedExponent::at_log_radius(double u) const { return node_->at(u); }

double SignedExponent::operator()(double r) const {
  if (r < 0.0) throw std::domain_error("radius must be nonnegative");
  return node_->at(r == 0.0 ? -kInf : std::log(r));
}

std::pair<double, double> SignedExponent::log_range(double u_lo, double u_hi) const {
  return node_->range(u_lo, u_hi);
}

std::pair<double, double> SignedExponent::range(double r_lo, double r_hi) const {
  if (!(r_lo >= 0.0) || !(r_lo < r_hi)) throw std::domain_error("invalid radius range");
  return log_range(r_lo == 0.0 ? -kInf : std::log(r_lo), std::log(r_hi));
}

double SignedExponent::minus() const { return log_range(-kInf, kInf).first; }
double SignedExponent::plus() const { return log_range(-kInf, kInf).second; }
double SignedExponent::at_zero() const { return node_->at(-kInf); }
double SignedExponent::at_infinity() const { return node_->at(kInf); }
double SignedExponent::sup_abs() const {
  const auto [lo, hi] = log_range(-kInf, kInf);
  return std::max(std::abs(lo), std::abs(hi));
}

std::optional<double> SignedExponent::log_holder_zero() const { return node_->holder_zero(); }
std::optional<double> SignedExponent::log_holder_infinity() const {
  return node_->holder_infinity();
}

bool SignedExponent::is_constant() const { return node_->direction() == 0; }
std::vector<double> SignedExponent::log_breakpoints() const { return node_->breaks(); }
std::string SignedExponent::kind() const { return node_->kind(); }

SignedExponent SignedExponent::dilated(double log_scale) const {
  if (log_scale == 0.0 || is_constant()) return *this;
  return SignedExponent(std::make_shared<detail::DilatedNode>(node_, log_scale));
}

SignedExponent SignedExponent::scaled(double factor) const {
  if (!std::isfinite(factor)) throw std::domain_error("scale factor must be finite");
  if (factor == 1.0) return *this;
  if (is_constant()) return constant(factor * at_zero());
  return SignedExponent(std::make_shared<detail::ScaledNode>(node_, factor));
}

SignedExponent sum(const std::vector<SignedExponent>& terms) {
  if (terms.empty()) throw std::invalid_argument("sum of an empty exponent list");
  if (terms.size() == 1) return terms.front();
  bool all_constant = true;
  double c = 0.0;
  std::vector<std::shared_ptr<const detail::ExponentNode>> nodes;
  for (const auto& t : terms) {
    all_constant = all_constant && t.is_constant();
    c += t.at_zero();
    nodes.push_back(t.node_);
  }
  if (all_constant) return SignedExponent::constant(c);
  return SignedExponent(std::make_shared<detail::SumNode>(std::move(nodes)));
}

ExponentFunction::ExponentFunction() : ExponentFunction(SignedExponent::constant(2.0)) {}

ExponentFunction::ExponentFunction(const SignedExponent& e) : SignedExponent(e) {
  const auto [lo, hi] = log_range(-kInf, kInf);
  if (!(lo > 1.0) || !std::isfinite(hi)) {
    std::ostringstream msg;
    msg << "exponent outside the bounded class: p_minus=" << lo << ", p_plus=" << hi;
    throw std::domain_error(msg.str());
  }
}

ExponentFunction ExponentFunction::constant(double c) {
  return ExponentFunction(SignedExponent::constant(c));
}
ExponentFunction ExponentFunction::log_interp(double p0, double p_inf) {
  return ExponentFunction(SignedExponent::log_interp(p0, p_inf));
}
ExponentFunction ExponentFunction::piecewise(std::vector<double> breaks,
                                             std::vector<double> values) {
  return ExponentFunction(SignedExponent::piecewise(std::move(breaks), std::move(values)));
}
ExponentFunction ExponentFunction::dilated(double log_scale) const {
  return ExponentFunction(SignedExponent::dilated(log_scale));
}

ExponentFunction ExponentFunction::scaled(double factor) const {
  return ExponentFunction(SignedExponent::scaled(factor));
}

ExponentFunction combine_reciprocal(const std::vector<ExponentFunction>& qs) {
  if (qs.empty()) throw std::invalid_argument("combine_reciprocal needs at least one exponent");
  if (qs.size() == 1) return qs.front();
  bool all_constant = true;
  double inv = 0.0;
  std::vector<std::shared_ptr<const detail::ExponentNode>> nodes;
  for (const auto& q : qs) {
    all_constant = all_constant && q.is_constant();
    inv += 1.0 / q.at_zero();
    nodes.push_back(q.node_);
  }
  SignedExponent out = all_constant
                           ? SignedExponent::constant(1.0 / inv)
                           : SignedExponent(std::make_shared<detail::ReciprocalSumNode>(nodes));
  return ExponentFunction(out);
}

ConjugateExponent::ConjugateExponent(ExponentFunction a, ExponentFunction b, double zeta)
    : a_(std::move(a)), b_(std::move(b)), zeta_(zeta) {
  if (!(zeta > 0.0)) throw std::domain_error("zeta must be positive");
}

double ConjugateExponent::raw_reciprocal_at_log_radius(double u) const {
  return 1.0 / a_.at_log_radius(u) - 1.0 / (zeta_ * b_.at_log_radius(u));
}

double ConjugateExponent::reciprocal_at_log_radius(double u) const {
  const double d = raw_reciprocal_at_log_radius(u);
  return d < kSnap ? 0.0 : d;
}

double ConjugateExponent::at_log_radius(double u) const {
  const double d = reciprocal_at_log_radius(u);
  return d == 0.0 ? kInf : 1.0 / d;
}

double ConjugateExponent::operator()(double r) const {
  return at_log_radius(r == 0.0 ? -kInf : std::log(r));
}

bool ConjugateExponent::is_constant() const { return a_.is_constant() && b_.is_constant(); }

bool ConjugateExponent::infinite_everywhere() const {
  return is_constant() && reciprocal_at_log_radius(0.0) == 0.0;
}

double ConjugateExponent::reciprocal_at_zero() const { return reciprocal_at_log_radius(-kInf); }
double ConjugateExponent::reciprocal_at_infinity() const { return reciprocal_at_log_radius(kInf); }

std::vector<double> ConjugateExponent::log_breakpoints() const {
  auto x = a_.log_breakpoints();
  auto y = b_.log_breakpoints();
  x.insert(x.end(), y.begin(), y.end());
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  return x;
}

ConjugateExponent difference_reciprocal(const ExponentFunction& a, const ExponentFunction& b,
                                        double zeta) {
  if (!(zeta > 0.0)) throw std::domain_error("zeta must be positive");
  std::vector<double> grid = {-kInf, kInf};
  for (int j = -800; j <= 800; ++j) grid.push_back(j * 0.0625);
  for (double x : a.log_breakpoints()) {
    grid.push_back(x - 1e-9);
    grid.push_back(x + 1e-9);
  }
  for (double x : b.log_breakpoints()) {
    grid.push_back(x - 1e-9);
    grid.push_back(x + 1e-9);
  }
  for (double u : grid) {
    const double d = 1.0 / a.at_log_radius(u) - 1.0 / (zeta * b.at_log_radius(u));
    if (d < -ConjugateExponent::kSnap) {
      std::ostringstream msg;
      msg << "reciprocal difference is negative at radius " << std::exp(u) << " (1/r = " << d
          << ")";
      throw std::domain_error(msg.str());
    }
  }
  return ConjugateExponent(a, b, zeta);
}

ExponentFunction pullback_exponent(const ExponentFunction& q, const MatrixFamily& family,
                                   double t_radius) {
  const double s = family.scale(t_radius);
  if (s == 0.0) throw SingularMatrixError(t_radius);
  const double shift = std::log(std::abs(s));
  if (shift == 0.0) return q;
  return q.dilated(shift);
}

double ball_measure(const PowerWeight& w, double R) {
  if (w.gamma <= -w.n) throw std::domain_error("ball measure requires gamma > -n");
  if (!(R > 0.0)) throw std::domain_error("ball radius must be positive");
  const double d = w.n + w.gamma;
  return sphere_area(w.n) * std::pow(R, d) / d;
}

}  // namespace vexp
