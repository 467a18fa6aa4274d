#pragma once

#include <optional>
#include <vector>

#include "vexp/matrices.hpp"
#include "vexp/spaces.hpp"

namespace vexp {

// Radial kernel: Phi(t) = phi(|t|) on r_lo <= |t| <= r_hi. For one_sided kernels
// (n = 1 only) the integral runs over t > 0 alone.
struct RadialKernel {
  PowerMap phi{1.0, 1.0};
  double r_lo = 0.0;
  double r_hi = 1.0;
  bool one_sided = false;
};

struct OperatorSpec {
  int n = 1;
  int m = 1;
  RadialKernel kernel;
  std::vector<MatrixFamily> families;

  void validate() const;
  double sigma() const;
  double log_w_lo() const;
  double log_w_hi() const;
};

// log H(f)(x) at log|x| = log_x.
double log_apply(const OperatorSpec& spec, const std::vector<RadialFunction>& fs, double log_x,
                 const QuadratureOptions& quad = {});
double apply_pointwise(const OperatorSpec& spec, const std::vector<RadialFunction>& fs, double x,
                       const QuadratureOptions& quad = {});

struct GridImage {
  std::vector<double> radii;
  std::vector<double> values;
  std::optional<PiecewisePowerFunction> exact;
};

GridImage apply_on_grid(const OperatorSpec& spec, const std::vector<RadialFunction>& fs,
                        const std::vector<double>& r_grid, const QuadratureOptions& quad = {});

// H(f) as a radial function: an exact power when every input is a single power,
// otherwise a memoised evaluator backed by log_apply.
RadialFunction image(const OperatorSpec& spec, const std::vector<RadialFunction>& fs,
                     const QuadratureOptions& quad = {});

OperatorSpec from_hardy_littlewood(PowerMap psi, int n = 1);
OperatorSpec from_hardy_cesaro(PowerMap psi, PowerMap s, int n = 1);
OperatorSpec from_multilinear_hardy_cesaro(PowerMap psi, const std::vector<PowerMap>& ss,
                                           int n = 1);

double operator_ratio(const OperatorSpec& spec, const std::vector<RadialFunction>& fs,
                      const std::vector<SpaceSpec>& sources, const SpaceSpec& target,
                      const ScanSettings& scan = {});

}  // namespace vexp
