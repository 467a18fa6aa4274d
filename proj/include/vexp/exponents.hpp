#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vexp {

class MatrixFamily;

namespace detail {
struct ExponentNode;
}

class ExponentFunction;
ExponentFunction combine_reciprocal(const std::vector<ExponentFunction>& qs);

// Radial real-valued exponent x -> e(|x|). Evaluation is also available in the
// logarithmic radius u = ln|x|, which is how every integral in the library is
// parameterised.
class SignedExponent {
 public:
  static SignedExponent constant(double c);
  static SignedExponent log_interp(double p0, double p_inf);
  static SignedExponent piecewise(std::vector<double> breaks, std::vector<double> values);

  SignedExponent();

  double operator()(double r) const;
  double at_log_radius(double u) const;

  std::pair<double, double> range(double r_lo, double r_hi) const;
  std::pair<double, double> log_range(double u_lo, double u_hi) const;

  double minus() const;
  double plus() const;
  double at_zero() const;
  double at_infinity() const;
  double sup_abs() const;

  // Log-Hoelder constants; nullopt when the representation is not certified.
  std::optional<double> log_holder_zero() const;
  std::optional<double> log_holder_infinity() const;

  bool is_constant() const;
  std::vector<double> log_breakpoints() const;
  std::string kind() const;

  // x -> e(|x| / exp(log_scale)).
  SignedExponent dilated(double log_scale) const;
  SignedExponent scaled(double factor) const;

  const detail::ExponentNode& node() const { return *node_; }

  friend SignedExponent sum(const std::vector<SignedExponent>& terms);
  friend ExponentFunction combine_reciprocal(const std::vector<ExponentFunction>& qs);
  friend class ExponentFunction;

 protected:
  explicit SignedExponent(std::shared_ptr<const detail::ExponentNode> node);
  std::shared_ptr<const detail::ExponentNode> node_;
};

class ExponentFunction : public SignedExponent {
 public:
  ExponentFunction();
  explicit ExponentFunction(const SignedExponent& e);

  static ExponentFunction constant(double c);
  static ExponentFunction log_interp(double p0, double p_inf);
  static ExponentFunction piecewise(std::vector<double> breaks, std::vector<double> values);

  ExponentFunction dilated(double log_scale) const;
  ExponentFunction scaled(double factor) const;
};

SignedExponent sum(const std::vector<SignedExponent>& terms);

// q with 1/q = sum of 1/q_i; throws std::domain_error when the result leaves
// the bounded class (q_minus <= 1).
ExponentFunction combine_reciprocal(const std::vector<ExponentFunction>& qs);

// Exponent r(x) in [1, inf] defined through 1/r = 1/a(x) - 1/(zeta b(x)).
class ConjugateExponent {
 public:
  ConjugateExponent(ExponentFunction a, ExponentFunction b, double zeta);

  double reciprocal_at_log_radius(double u) const;
  double raw_reciprocal_at_log_radius(double u) const;
  double at_log_radius(double u) const;
  double operator()(double r) const;

  bool is_constant() const;
  bool infinite_everywhere() const;
  double reciprocal_at_zero() const;
  double reciprocal_at_infinity() const;
  std::vector<double> log_breakpoints() const;

  static constexpr double kSnap = 1e-12;

 private:
  ExponentFunction a_;
  ExponentFunction b_;
  double zeta_;
};

ConjugateExponent difference_reciprocal(const ExponentFunction& a, const ExponentFunction& b,
                                        double zeta);

ExponentFunction pullback_exponent(const ExponentFunction& q, const MatrixFamily& family,
                                   double t_radius);

struct PowerWeight {
  double gamma = 0.0;
  int n = 1;
};

double ball_measure(const PowerWeight& w, double R);

}  // namespace vexp
