#pragma once

#include <optional>
#include <vector>

#include "vexp/exponents.hpp"
#include "vexp/quadrature.hpp"
#include "vexp/radial_function.hpp"

namespace vexp {

// Pointwise factor 2^{kappa * alpha(x)} applied before taking the norm.
struct Multiplier {
  double kappa = 0.0;
  SignedExponent alpha;
};

struct NormContext {
  int n = 1;
  double gamma = 0.0;
  std::optional<Multiplier> multiplier;
  QuadratureOptions quad;
};

class LuxemburgNonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Modular F(eta) = |S^{n-1}| * integral over the region of r^{n-1} (h(r)/eta)^{p(r)} dr with
// h = g * r^gamma * multiplier, and the norm inf{eta : F(eta) <= 1}.
class LuxemburgProblem {
 public:
  LuxemburgProblem(const RadialFunction& g, const ExponentFunction& p, const Region& region,
                   const NormContext& ctx);

  double modular(double eta) const;
  double log_modular(double log_eta) const;
  double norm() const;

  bool is_zero() const { return pieces_.empty(); }
  bool divergent() const { return divergent_; }

  static constexpr double kCertificateDelta = 1e-10;
  static constexpr int kMaxIterations = 200;

 private:
  struct Piece {
    double a, b;
    std::optional<PowerSegment> segment;
    bool separable;
    double p_const;
    double log_k;  // separable pieces: log of the eta-free integral
  };

  double log_h(const Piece& pc, double u) const;
  void classify(Piece& pc) const;
  bool end_diverges(const Piece& pc, bool upper) const;

  RadialFunction g_;
  ExponentFunction p_;
  NormContext ctx_;
  double log_sigma_;
  std::vector<Piece> pieces_;
  bool divergent_ = false;
};

double modular(const RadialFunction& g, const ExponentFunction& p, const Region& region,
               const NormContext& ctx, double eta = 1.0);
double luxemburg_norm(const RadialFunction& g, const ExponentFunction& p, const Region& region,
                      const NormContext& ctx);
double weighted_vexp_norm(const RadialFunction& f, const ExponentFunction& p, const PowerWeight& w,
                          const Region& region, const QuadratureOptions& quad = {});

// Luxemburg norm of the constant 1 for an exponent that may be infinite.
double norm_of_one(const ConjugateExponent& r, const Region& region, int n,
                   const QuadratureOptions& quad = {});

// Bisection on a decreasing modular in log(eta); exposed for reuse by other norms.
double solve_luxemburg(const std::function<double(double)>& log_eta_to_modular);

}  // namespace vexp
