#include "vexp/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace vexp {

std::string to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::Lebesgue:
      return "lebesgue";
    case SpaceKind::Herz:
      return "herz";
    case SpaceKind::MorreyHerz:
      return "morrey_herz";
    case SpaceKind::CentralMorrey:
      return "central_morrey";
  }
  return "unknown";
}

SpaceKind parse_space_kind(const std::string& s) {
  if (s == "lebesgue") return SpaceKind::Lebesgue;
  if (s == "herz") return SpaceKind::Herz;
  if (s == "morrey_herz") return SpaceKind::MorreyHerz;
  if (s == "central_morrey") return SpaceKind::CentralMorrey;
  throw std::invalid_argument("unknown space kind '" + s + "'");
}

double shell_norm(const RadialFunction& f, const SpaceSpec& spec, int k,
                  const QuadratureOptions& quad) {
  NormContext ctx;
  ctx.n = spec.weight.n;
  ctx.gamma = spec.weight.gamma;
  ctx.quad = quad;
  if (!spec.alpha.is_constant() || spec.alpha.at_zero() != 0.0)
    ctx.multiplier = Multiplier{static_cast<double>(k), spec.alpha};
  return luxemburg_norm(f, spec.q, Region::shell(k), ctx);
}

namespace {

std::vector<double> shell_terms(const RadialFunction& f, const SpaceSpec& spec, int k_min,
                                int k_max, const QuadratureOptions& quad) {
  if (k_min > k_max) throw std::invalid_argument("empty shell range");
  std::vector<double> t;
  t.reserve(k_max - k_min + 1);
  for (int k = k_min; k <= k_max; ++k) t.push_back(shell_norm(f, spec, k, quad));
  return t;
}

bool decays(double far, double mid, double near) {
  if (far == 0.0) return true;
  return far < mid && mid < near;
}

bool tails_suspect(const std::vector<double>& t) {
  const std::size_t m = t.size();
  if (m < 3) return std::any_of(t.begin(), t.end(), [](double x) { return x > 0.0; });
  const bool upper = decays(t[m - 1], t[m - 2], t[m - 3]);
  const bool lower = decays(t[0], t[1], t[2]);
  return !(upper && lower);
}

}  // namespace

NormReport herz_norm(const RadialFunction& f, const SpaceSpec& spec, int k_min, int k_max,
                     const QuadratureOptions& quad) {
  const auto t = shell_terms(f, spec, k_min, k_max, quad);
  NormReport rep;
  double s = 0.0;
  for (double x : t) s += std::pow(x, spec.p);
  rep.value = std::pow(s, 1.0 / spec.p);
  rep.truncation_suspect = std::isfinite(rep.value) && tails_suspect(t);
  return rep;
}

NormReport morrey_herz_norm(const RadialFunction& f, const SpaceSpec& spec, int k0_min, int k0_max,
                            int k_min, int k_max, const QuadratureOptions& quad) {
  if (k0_min > k0_max) throw std::invalid_argument("empty k0 range");
  const auto t = shell_terms(f, spec, k_min, k_max, quad);
  NormReport rep;
  rep.truncation_suspect = tails_suspect(t);
  double s = 0.0;
  int next = k_min;
  bool first = true;
  for (int k0 = k0_min; k0 <= k0_max; ++k0) {
    while (next <= std::min(k0, k_max)) {
      s += std::pow(t[next - k_min], spec.p);
      ++next;
    }
    const double v = std::pow(2.0, -k0 * spec.lambda) * std::pow(s, 1.0 / spec.p);
    if (first || v > rep.value) {
      rep.value = v;
      rep.argmax = k0;
      first = false;
    }
  }
  if (rep.value == 0.0) rep.argmax.reset();
  return rep;
}

NormReport central_morrey_norm(const RadialFunction& f, const SpaceSpec& spec, int j_min,
                               int j_max, const QuadratureOptions& quad, int subdivisions) {
  if (j_min > j_max) throw std::invalid_argument("empty radius grid");
  if (subdivisions < 1) throw std::invalid_argument("radius subdivisions must be positive");
  if (!spec.alpha.is_constant())
    throw std::invalid_argument("central Morrey weight exponent must be constant");
  const PowerWeight w1 = spec.weight;
  if (w1.gamma <= -w1.n) throw std::domain_error("central Morrey weight requires gamma > -n");
  const double power = spec.lambda + 1.0 / spec.q.at_infinity();
  NormContext ctx;
  ctx.n = w1.n;
  ctx.gamma = spec.alpha.at_zero();
  ctx.quad = quad;
  std::vector<double> v;
  const int first = j_min * subdivisions;
  for (int i = first; i <= j_max * subdivisions; ++i) {
    const double R = subdivisions == 1 ? std::ldexp(1.0, i) : std::exp2(double(i) / subdivisions);
    const double inner = luxemburg_norm(f, spec.q, Region::ball(R), ctx);
    v.push_back(inner / std::pow(ball_measure(w1, R), power));
  }
  NormReport rep;
  const auto it = std::max_element(v.begin(), v.end());
  rep.value = *it;
  if (rep.value == 0.0) return rep;
  rep.argmax = first + static_cast<int>(it - v.begin());
  if (v.size() >= 2) {
    const double interior =
        v.size() > 2 ? *std::max_element(v.begin() + 1, v.end() - 1) : std::min(v.front(), v.back());
    const double edge = std::max(v.front(), v.back());
    rep.sup_suspect = edge > interior * (1.0 + 1e-9);
  }
  return rep;
}

NormReport space_norm(const RadialFunction& f, const SpaceSpec& spec, const ScanSettings& scan) {
  switch (spec.kind) {
    case SpaceKind::Lebesgue:
    {
      NormReport rep;
      rep.value = weighted_vexp_norm(f, spec.q, spec.weight, Region::all(), scan.quad);
      return rep;
    }
    case SpaceKind::Herz:
      return herz_norm(f, spec, scan.k_min, scan.k_max, scan.quad);
    case SpaceKind::MorreyHerz:
      return morrey_herz_norm(f, spec, scan.k0_min, scan.k0_max, scan.k_min, scan.k_max,
                              scan.quad);
    case SpaceKind::CentralMorrey:
      return central_morrey_norm(f, spec, scan.j_min, scan.j_max, scan.quad, scan.j_subdivisions);
  }
  throw std::logic_error("unhandled space kind");
}

}  // namespace vexp
