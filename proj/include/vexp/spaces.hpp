#pragma once

#include <optional>
#include <string>

#include "vexp/luxemburg.hpp"

namespace vexp {

enum class SpaceKind { Lebesgue, Herz, MorreyHerz, CentralMorrey };

std::string to_string(SpaceKind k);
SpaceKind parse_space_kind(const std::string& s);

// For central Morrey spaces weight.gamma is the exponent of the normalising
// weight w1 and alpha (a constant) is the exponent of the Lebesgue weight w2.
struct SpaceSpec {
  SpaceKind kind = SpaceKind::Lebesgue;
  SignedExponent alpha = SignedExponent::constant(0.0);
  double lambda = 0.0;
  double p = 1.0;
  ExponentFunction q = ExponentFunction::constant(2.0);
  PowerWeight weight;
};

struct ScanSettings {
  int k_min = -40;
  int k_max = 40;
  int k0_min = -40;
  int k0_max = 40;
  int j_min = -40;
  int j_max = 40;
  // Radii per octave for central Morrey scans; 1 is the dyadic grid 2^j.
  int j_subdivisions = 1;
  QuadratureOptions quad;
};

struct NormReport {
  double value = 0.0;
  bool truncation_suspect = false;
  std::optional<int> argmax;
  bool sup_suspect = false;
};

double shell_norm(const RadialFunction& f, const SpaceSpec& spec, int k,
                  const QuadratureOptions& quad = {});
NormReport herz_norm(const RadialFunction& f, const SpaceSpec& spec, int k_min, int k_max,
                     const QuadratureOptions& quad = {});
NormReport morrey_herz_norm(const RadialFunction& f, const SpaceSpec& spec, int k0_min, int k0_max,
                            int k_min, int k_max, const QuadratureOptions& quad = {});
// Supremum over R = 2^{j + s/subdivisions}; argmax reports the index j * subdivisions + s.
NormReport central_morrey_norm(const RadialFunction& f, const SpaceSpec& spec, int j_min,
                               int j_max, const QuadratureOptions& quad = {},
                               int subdivisions = 1);
NormReport space_norm(const RadialFunction& f, const SpaceSpec& spec,
                      const ScanSettings& scan = {});

}  // namespace vexp
