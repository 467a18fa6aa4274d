#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vexp/bounds.hpp"

namespace vexp {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExponentSpec {
  std::string type = "constant";  // constant | log_interp | piecewise
  double value = 2.0;
  double p0 = 0.0;
  double p_inf = 0.0;
  std::vector<double> breaks;
  std::vector<double> values;

  static ExponentSpec constant(double v);
  SignedExponent signed_exponent() const;
  ExponentFunction exponent() const;
  bool operator==(const ExponentSpec&) const = default;
};

struct PowerMapSpec {
  double c = 1.0;
  double a = 1.0;
  bool operator==(const PowerMapSpec&) const = default;
};

struct FamilySpec {
  std::string type = "scalar_dilation";  // scalar_dilation | diag_equal | orth_scalar
  PowerMapSpec s;
  std::vector<int> signs;
  std::vector<std::vector<double>> q_matrix;

  MatrixFamily build(int n) const;
  bool operator==(const FamilySpec&) const = default;
};

struct KernelSpec {
  PowerMapSpec phi{1.0, 0.0};
  double r_lo = 0.0;
  double r_hi = 1.0;
  bool one_sided = false;
  bool operator==(const KernelSpec&) const = default;
};

struct SlotSpec {
  ExponentSpec q;
  double gamma = 0.0;
  ExponentSpec alpha = ExponentSpec::constant(0.0);
  double lambda = 0.0;
  double p = 2.0;
  bool operator==(const SlotSpec&) const = default;
};

struct SpaceConfig {
  std::string kind = "lebesgue";
  ExponentSpec q;
  double gamma = 0.0;
  std::optional<ExponentSpec> alpha;
  double lambda = 0.0;
  double p = 1.0;

  SpaceSpec build(int n) const;
  bool operator==(const SpaceConfig&) const = default;
};

struct ExprSpec {
  double a0 = 0.0;
  double a1 = 0.0;
  std::optional<ExponentSpec> q;
  double a2 = 0.0;
  std::optional<ExponentSpec> alpha;
  bool operator==(const ExprSpec&) const = default;
};

struct SegmentSpec {
  double r_lo = 0.0;
  std::optional<double> r_hi;  // absent means infinity
  double coeff = 1.0;
  ExprSpec exponent;
  bool operator==(const SegmentSpec&) const = default;
};

struct FunctionSpec {
  std::vector<SegmentSpec> segments;
  PiecewisePowerFunction build() const;
  bool operator==(const FunctionSpec&) const = default;
};

struct Settings {
  double rel_tol = 1e-9;
  std::array<int, 2> k_range{-40, 40};
  std::array<int, 2> k0_range{-40, 40};
  std::array<int, 2> r_grid_range{-40, 40};
  int r_grid_subdivisions = 1;
  std::vector<double> eps_list{0.1, 0.03, 0.01};
  std::uint64_t seed = 42;
  int N = 100;
  int workers = 1;
  std::vector<double> apply_grid{0.5, 1.0, 2.0, 4.0};
  bool operator==(const Settings&) const = default;
};

struct ExperimentConfig {
  int n = 1;
  int m = 1;
  KernelSpec kernel;
  std::vector<FamilySpec> families;
  std::vector<SlotSpec> slots;
  double zeta = 1.0;
  std::optional<SpaceConfig> space;
  std::vector<SpaceConfig> sources;
  std::optional<SpaceConfig> target;
  std::vector<FunctionSpec> functions;
  std::optional<std::string> extremal;
  std::optional<std::string> constant;
  Settings settings;

  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& cfg);

OperatorSpec build_operator(const ExperimentConfig& cfg);
BoundConfig build_bound_config(const ExperimentConfig& cfg);
ScanSettings build_scan(const ExperimentConfig& cfg);

}  // namespace vexp
