#include "vexp/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "vexp/special.hpp"

namespace vexp {

namespace {

using boost::math::quadrature::gauss_kronrod;

double log_block(const LogIntegrand& log_f, double lo, double hi, const QuadratureOptions& opt,
                 int depth = 0) {
  if (!(lo < hi)) return -kInf;
  double shift = -kInf;
  for (int j = 0; j <= 8; ++j) {
    const double u = lo + (hi - lo) * j / 8.0;
    const double v = log_f(u);
    if (v == kInf) return kInf;
    if (!std::isnan(v)) shift = std::max(shift, v);
  }
  if (shift == -kInf) {
    // The integrand may still be supported strictly inside the block.
    shift = 0.0;
  }
  auto integrand = [&](double u) {
    const double v = log_f(u);
    if (std::isnan(v) || v == -kInf) return 0.0;
    return std::exp(v - shift);
  };
  double err = 0.0;
  const double val = gauss_kronrod<double, 31>::integrate(integrand, lo, hi, opt.max_depth,
                                                          opt.rel_tol * 0.1, &err);
  if (std::isinf(val) || std::isnan(val)) {
    // A peak between the samples overflowed the shift; split before calling it divergent.
    if (depth >= 40) return kInf;
    const double mid = 0.5 * (lo + hi);
    return log_add(log_block(log_f, lo, mid, opt, depth + 1), log_block(log_f, mid, hi, opt, depth + 1));
  }
  if (val <= 0.0) return -kInf;
  return shift + std::log(val);
}

double log_finite(const LogIntegrand& log_f, double lo, double hi, const QuadratureOptions& opt) {
  const double len = hi - lo;
  const double chunk = std::max(8.0, len / 512.0);
  const int pieces = std::max(1, static_cast<int>(std::ceil(len / chunk)));
  std::vector<double> parts;
  parts.reserve(pieces);
  for (int j = 0; j < pieces; ++j) {
    const double a = lo + len * j / pieces;
    const double b = (j + 1 == pieces) ? hi : lo + len * (j + 1) / pieces;
    const double v = log_block(log_f, a, b, opt);
    if (v == kInf) return kInf;
    parts.push_back(v);
  }
  return log_sum(parts);
}

double sweep_tail(const LogIntegrand& log_f, double anchor, int direction, double log_total,
                  const QuadratureOptions& opt) {
  const double log_tol = std::log(opt.rel_tol);
  double start = anchor;
  double length = 1.0;
  for (int block = 0; block < opt.max_tail_blocks; ++block) {
    const double end = start + direction * length;
    if (std::abs(end) > opt.tail_cap) return kInf;
    const double lo = std::min(start, end);
    const double hi = std::max(start, end);
    const double piece = log_block(log_f, lo, hi, opt);
    if (piece == kInf) return kInf;
    log_total = log_add(log_total, piece);
    const double at_start = log_f(start);
    const double at_end = log_f(end);
    const bool decaying = at_end == -kInf || at_end < at_start;
    if (decaying && (piece == -kInf || piece < log_total + log_tol)) return log_total;
    start = end;
    length *= 2.0;
  }
  return kInf;
}

}  // namespace

double log_integral(const LogIntegrand& log_f, double a, double b, std::vector<double> breaks,
                    const QuadratureOptions& opt) {
  if (!(a < b)) return -kInf;
  std::vector<double> pts;
  if (std::isfinite(a)) pts.push_back(a);
  if (std::isfinite(b)) pts.push_back(b);
  for (double x : breaks)
    if (std::isfinite(x) && x > a && x < b) pts.push_back(x);
  if (pts.empty()) pts.push_back(0.0);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::vector<double> parts;
  for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
    const double v = log_finite(log_f, pts[j], pts[j + 1], opt);
    if (v == kInf) return kInf;
    parts.push_back(v);
  }
  double total = log_sum(parts);
  if (std::isinf(b)) {
    total = sweep_tail(log_f, pts.back(), +1, total, opt);
    if (total == kInf) return kInf;
  }
  if (std::isinf(a)) {
    total = sweep_tail(log_f, pts.front(), -1, total, opt);
  }
  return total;
}

}  // namespace vexp
