#include "vexp/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vexp {

double sphere_area(int n) {
  if (n < 1) throw std::domain_error("dimension must be positive");
  const double half = 0.5 * n;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double log_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  if (a == kInf || b == kInf) return kInf;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

double log_sum(std::span<const double> terms) {
  double hi = -kInf;
  for (double t : terms) hi = std::max(hi, t);
  if (hi == -kInf || hi == kInf) return hi;
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - hi);
  return hi + std::log(acc);
}

namespace {
constexpr double kFlatSlope = 1e-14;
}

double log_exp_integral(double slope, double a, double b) {
  if (!(a < b)) return -kInf;
  const bool lower_open = std::isinf(a);
  const bool upper_open = std::isinf(b);
  if (std::abs(slope) < kFlatSlope) {
    if (lower_open || upper_open) return kInf;
    return std::log(b - a);
  }
  if (slope > 0) {
    if (upper_open) return kInf;
    if (lower_open) return slope * b - std::log(slope);
    return slope * b + std::log(-std::expm1(-slope * (b - a))) - std::log(slope);
  }
  if (lower_open) return kInf;
  if (upper_open) return slope * a - std::log(-slope);
  return slope * a + std::log(-std::expm1(slope * (b - a))) - std::log(-slope);
}

double log_e_plus_exp(double u) {
  if (u == -kInf) return 1.0;
  if (u > 1.0) return u + std::log1p(std::exp(1.0 - u));
  return std::log(std::numbers::e + std::exp(u));
}

}  // namespace vexp
