#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vexp/bounds.hpp"

namespace vexp {

enum class ExtremalKind { LebesgueEps, HerzB1Eps, HerzB2Eps, MorreyHerzPower, CentralMorreyPower };

std::string to_string(ExtremalKind k);
ExtremalKind parse_extremal_kind(const std::string& s);
bool uses_eps(ExtremalKind k);
ConstantId default_constant(ExtremalKind k);

struct SuiteSpaces {
  std::vector<SpaceSpec> sources;
  SpaceSpec target;
};

// Source and target spaces in which the constant `id` bounds the operator.
SuiteSpaces suite_spaces(const BoundConfig& cfg, ConstantId id);

struct HarnessOptions {
  ScanSettings scan;
  int workers = 1;
};

std::vector<PiecewisePowerFunction> extremal_family(ExtremalKind kind, const BoundConfig& cfg,
                                                    double eps, const ScanSettings& scan = {});

// Draw number `index` of the stream (seed, stream).
PiecewisePowerFunction random_test_function(std::uint64_t seed, std::uint64_t stream,
                                            std::uint64_t index, const SpaceSpec& space);
std::vector<PiecewisePowerFunction> random_test_functions(std::uint64_t seed, int count,
                                                          const SpaceSpec& space);

// Exact-constant configurations: C9 at n = 1 with scalar dilations and constant
// exponents, and C12 at n = m = 1 with a scalar dilation.
bool exact_constant_config(const BoundConfig& cfg, ConstantId id);
bool sweep_supported(const BoundConfig& cfg);

struct SuiteRow {
  std::uint64_t seed = 0;
  int index = 0;
  double ratio = 0.0;
};

struct UpperBoundResult {
  double constant = 0.0;
  bool exact = false;
  double max_ratio = 0.0;
  double max_ratio_over_constant = 0.0;
  int violations = 0;
  std::vector<SuiteRow> rows;
};

UpperBoundResult upper_bound_suite(const BoundConfig& cfg, ConstantId id, int count,
                                   std::uint64_t seed, const HarnessOptions& opts = {});

struct SweepRow {
  double eps = 0.0;
  double ratio = 0.0;
  double constant = 0.0;
  double ratio_over_constant = 0.0;
};

struct SweepResult {
  ConstantId id = ConstantId::C9;
  bool exact = false;
  bool monotone = true;
  std::vector<SweepRow> rows;
};

SweepResult sharpness_sweep(const BoundConfig& cfg, ExtremalKind kind,
                            const std::vector<double>& eps_list,
                            std::optional<ConstantId> id = std::nullopt,
                            const HarnessOptions& opts = {});

// Runs body(i) for i in [0, count) on up to `workers` threads.
void parallel_for(int count, int workers, const std::function<void(int)>& body);

}  // namespace vexp
