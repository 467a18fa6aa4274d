#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "vexp/exponents.hpp"
#include "vexp/special.hpp"

namespace vexp {

// a(r) = a0 + a1 / q(r) + a2 * alpha(r); absent exponents contribute nothing.
struct ExponentExpr {
  double a0 = 0.0;
  double a1 = 0.0;
  std::optional<ExponentFunction> q;
  double a2 = 0.0;
  std::optional<SignedExponent> alpha;

  static ExponentExpr constant(double a) {
    ExponentExpr e;
    e.a0 = a;
    return e;
  }

  double at_log_radius(double u) const;
  double at_zero() const { return at_log_radius(-kInf); }
  double at_infinity() const { return at_log_radius(kInf); }
  bool is_constant() const;
  bool constant_on(double u_lo, double u_hi) const;
  std::vector<double> log_breakpoints() const;
};

struct PowerSegment {
  double r_lo = 0.0;
  double r_hi = kInf;
  double coeff = 1.0;
  ExponentExpr exponent;

  double log_lo() const;
  double log_hi() const;
};

// Sum of disjoint segments c * r^{a(r)} on [r_lo, r_hi).
class PiecewisePowerFunction {
 public:
  PiecewisePowerFunction() = default;
  explicit PiecewisePowerFunction(std::vector<PowerSegment> segments);

  static PiecewisePowerFunction power(double coeff, double exponent, double r_lo = 0.0,
                                      double r_hi = kInf);
  static PiecewisePowerFunction indicator(double r_lo, double r_hi);

  const std::vector<PowerSegment>& segments() const { return segments_; }
  double log_value(double u) const;
  double operator()(double r) const;
  bool is_zero() const;
  PiecewisePowerFunction scaled(double c) const;

  struct Power {
    double coeff;
    double exponent;
  };
  // Set when the function is c * r^b on the whole half-line with constant b.
  std::optional<Power> single_power() const;

 private:
  std::vector<PowerSegment> segments_;
};

struct SampledRadialFunction {
  std::function<double(double)> log_value;
  double u_lo = -kInf;
  double u_hi = kInf;
  std::vector<double> log_breaks;
  std::optional<double> slope_lo;
  std::optional<double> slope_hi;
};

class RadialFunction {
 public:
  RadialFunction(PiecewisePowerFunction f) : v_(std::move(f)) {}
  RadialFunction(SampledRadialFunction f) : v_(std::move(f)) {}

  double log_value(double u) const;
  double operator()(double r) const;

  const PiecewisePowerFunction* piecewise() const { return std::get_if<PiecewisePowerFunction>(&v_); }
  const SampledRadialFunction* sampled() const { return std::get_if<SampledRadialFunction>(&v_); }

 private:
  std::variant<PiecewisePowerFunction, SampledRadialFunction> v_;
};

struct Region {
  enum class Kind { All, Ball, Annulus, Shell };
  Kind kind = Kind::All;
  double r_lo = 0.0;
  double r_hi = kInf;
  int k = 0;

  static Region all() { return {}; }
  static Region ball(double R);
  static Region annulus(double r_lo, double r_hi);
  static Region shell(int k);

  double log_lo() const;
  double log_hi() const;
};

}  // namespace vexp
