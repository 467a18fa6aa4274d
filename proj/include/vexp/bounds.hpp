#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "vexp/hausdorff.hpp"

namespace vexp {

enum class ConstantId { C1, C2, C2Star, C3, C4, C5, C5Star, C6, C6Star, C7, C8, C9, C10, C11, C12 };

std::string to_string(ConstantId id);
ConstantId parse_constant_id(const std::string& s);
std::vector<ConstantId> all_constant_ids();

struct SlotParams {
  ExponentFunction q = ExponentFunction::constant(2.0);
  double gamma = 0.0;
  SignedExponent alpha = SignedExponent::constant(0.0);
  double lambda = 0.0;
  double p = 2.0;
};

struct BoundConfig {
  OperatorSpec op;
  std::vector<SlotParams> slots;
  double zeta = 1.0;
};

enum class Coupling { Additive, GammaOverQ, CentralMorrey };

std::string to_string(Coupling c);
Coupling coupling_for(ConstantId id);

struct DerivedParams {
  ExponentFunction q;
  double gamma = 0.0;
  SignedExponent alpha;
  double lambda = 0.0;
  double p = 1.0;
};

DerivedParams derive(const BoundConfig& cfg, Coupling coupling);

class HypothesisError : public std::invalid_argument {
 public:
  HypothesisError(std::string hypothesis, const std::string& detail);
  const std::string& hypothesis() const { return hypothesis_; }

 private:
  std::string hypothesis_;
};

struct BoundResult {
  ConstantId id;
  double value = 0.0;
  bool finite = true;
  std::map<std::string, double> breakdown;
  std::vector<std::string> notes;
};

BoundResult evaluate_constant(const BoundConfig& cfg, ConstantId id,
                              const QuadratureOptions& quad = {});
// Same integral restricted to r_lo <= |t| <= r_hi inside the kernel support.
BoundResult evaluate_constant_truncated(const BoundConfig& cfg, ConstantId id, double r_lo,
                                        double r_hi, const QuadratureOptions& quad = {});

std::vector<BoundResult> lebesgue_constants(const BoundConfig& cfg,
                                            const QuadratureOptions& quad = {});
std::vector<BoundResult> herz_morrey_constants(const BoundConfig& cfg,
                                               const QuadratureOptions& quad = {});
std::vector<BoundResult> constparam_constants(const BoundConfig& cfg,
                                              const QuadratureOptions& quad = {});
std::vector<BoundResult> central_morrey_constants(const BoundConfig& cfg,
                                                  const QuadratureOptions& quad = {});

struct SlotRegion {
  double q_plus = 0.0, q_minus = 0.0;
  double alpha0 = 0.0, alpha_inf = 0.0;
  double c0 = 0.0, c_inf = 0.0;
  bool holder_known = true;
  double lambda = 0.0;
  double beta0 = 0.0, beta_inf = 0.0;
  double theta0 = 0.0, theta_inf = 0.0;
  double eta0 = 0.0, eta1 = 0.0;
  double zeta0 = 0.0, zeta1 = 0.0;
  double c_alpha = 0.0;

  bool theta_nonnegative() const;
  bool lambda_in_region() const;
};

SlotRegion slot_region(double q_plus, double q_minus, double alpha0, double alpha_inf, double c0,
                       double c_inf, double lambda);

enum class MorreyHerzCase { B1, B2, B3, None };
enum class HerzCase { B1, B2, None };

std::string to_string(MorreyHerzCase c);
std::string to_string(HerzCase c);

struct SharpnessReport {
  MorreyHerzCase mh_case = MorreyHerzCase::None;
  HerzCase herz_case = HerzCase::None;
  std::vector<SlotRegion> slots;
  bool satisfied = false;
  bool equivalence_holds = true;
  // 1/q_{1-} + ... + 1/q_{m-} = 1/q_+ for the combined exponent.
  bool lower_exponent_identity = false;
};

SharpnessReport sharpness_region_check(const BoundConfig& cfg);

}  // namespace vexp
