#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vexp/harness.hpp"

namespace vexp {

enum class CheckStatus { Pass, Fail, Skip };

struct CheckRow {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  double value = 0.0;  // worst deviation or count observed by the check
  std::string detail;
};

std::string to_string(CheckStatus s);

// Property checks over built-in fixtures plus the operator of `cfg`.
std::vector<CheckRow> run_invariants(const BoundConfig& cfg, const ScanSettings& scan,
                                     std::uint64_t seed);

}  // namespace vexp
