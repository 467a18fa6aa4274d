#include "vexp/hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace vexp {

void OperatorSpec::validate() const {
  if (n < 1) throw std::invalid_argument("operator dimension must be positive");
  if (m < 1) throw std::invalid_argument("operator needs m >= 1");
  if (static_cast<int>(families.size()) != m)
    throw std::invalid_argument("operator needs exactly m matrix families");
  for (const auto& f : families) {
    if (f.dim() != n) throw std::invalid_argument("matrix family dimension differs from n");
    if (f.map().c == 0.0) throw SingularMatrixError(1.0);
  }
  if (kernel.one_sided && n != 1) throw std::invalid_argument("one-sided kernels require n = 1");
  if (!(kernel.phi.c >= 0.0)) throw std::invalid_argument("kernel must be nonnegative");
  if (!(kernel.r_lo >= 0.0) || !(kernel.r_lo < kernel.r_hi))
    throw std::invalid_argument("kernel support needs 0 <= r_lo < r_hi");
}

double OperatorSpec::sigma() const { return kernel.one_sided ? 1.0 : sphere_area(n); }
double OperatorSpec::log_w_lo() const {
  return kernel.r_lo == 0.0 ? -kInf : std::log(kernel.r_lo);
}
double OperatorSpec::log_w_hi() const { return std::log(kernel.r_hi); }

namespace {

std::vector<double> knots(const RadialFunction& f) {
  std::vector<double> out;
  auto add = [&](double x) {
    if (std::isfinite(x)) out.push_back(x);
  };
  if (const auto* p = f.piecewise()) {
    for (const auto& s : p->segments()) {
      add(s.log_lo());
      add(s.log_hi());
      for (double b : s.exponent.log_breakpoints()) add(b);
    }
  } else {
    const auto* s = f.sampled();
    add(s->u_lo);
    add(s->u_hi);
    for (double b : s->log_breaks) add(b);
  }
  return out;
}

std::pair<double, double> log_support(const RadialFunction& f) {
  if (const auto* p = f.piecewise()) {
    double lo = kInf, hi = -kInf;
    for (const auto& s : p->segments()) {
      if (s.coeff == 0.0) continue;
      lo = std::min(lo, s.log_lo());
      hi = std::max(hi, s.log_hi());
    }
    return {lo, hi};
  }
  return {f.sampled()->u_lo, f.sampled()->u_hi};
}

const PowerSegment* segment_at(const PiecewisePowerFunction& f, double u) {
  for (const auto& s : f.segments())
    if (u >= s.log_lo() && u < s.log_hi()) return &s;
  return nullptr;
}

double representative(double a, double b) {
  if (std::isinf(a) && std::isinf(b)) return 0.0;
  if (std::isinf(a)) return b - 1.0;
  if (std::isinf(b)) return a + 1.0;
  return 0.5 * (a + b);
}

double affine_at(double c, double a, double w) { return a == 0.0 ? c : c + a * w; }

}  // namespace

double log_apply(const OperatorSpec& spec, const std::vector<RadialFunction>& fs, double log_x,
                 const QuadratureOptions& quad) {
  if (static_cast<int>(fs.size()) != spec.m)
    throw std::invalid_argument("number of input functions differs from m");
  if (spec.kernel.phi.c == 0.0) return -kInf;
  const double w_lo = spec.log_w_lo();
  const double w_hi = spec.log_w_hi();
  const double base = std::log(spec.kernel.phi.c) + std::log(spec.sigma());
  const double phi_slope = spec.kernel.phi.a;

  std::vector<double> offset(spec.m), rate(spec.m);
  std::vector<double> cuts;
  for (int i = 0; i < spec.m; ++i) {
    offset[i] = std::log(std::abs(spec.families[i].map().c)) + log_x;
    rate[i] = spec.families[i].map().a;
    if (rate[i] == 0.0) continue;
    for (double beta : knots(fs[i])) {
      const double w = (beta - offset[i]) / rate[i];
      if (w > w_lo && w < w_hi) cuts.push_back(w);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<double> edges;
  edges.push_back(w_lo);
  edges.insert(edges.end(), cuts.begin(), cuts.end());
  edges.push_back(w_hi);

  std::vector<double> terms;
  for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
    const double wa = edges[j], wb = edges[j + 1];
    const double wm = representative(wa, wb);
    double level = base;
    double slope = phi_slope;
    bool closed = true;
    bool zero = false;
    for (int i = 0; i < spec.m && !zero; ++i) {
      const auto* pw = fs[i].piecewise();
      if (!pw) {
        closed = false;
        continue;
      }
      const double um = affine_at(offset[i], rate[i], wm);
      const PowerSegment* seg = segment_at(*pw, um);
      if (!seg || seg->coeff == 0.0) {
        zero = true;
        break;
      }
      const double ua = affine_at(offset[i], rate[i], wa);
      const double ub = affine_at(offset[i], rate[i], wb);
      if (!seg->exponent.constant_on(std::min(ua, ub), std::max(ua, ub))) {
        closed = false;
        continue;
      }
      const double b = seg->exponent.at_log_radius(um);
      level += std::log(seg->coeff) + b * offset[i];
      slope += b * rate[i];
    }
    if (zero) continue;
    double term;
    if (closed) {
      term = level + log_exp_integral(slope, wa, wb);
    } else {
      auto integrand = [&](double w) {
        double v = base + phi_slope * w;
        for (int i = 0; i < spec.m; ++i) {
          const double f = fs[i].log_value(affine_at(offset[i], rate[i], w));
          if (f == -kInf) return -kInf;
          v += f;
        }
        return v;
      };
      term = log_integral(integrand, wa, wb, {}, quad);
    }
    if (term == kInf) return kInf;
    terms.push_back(term);
  }
  return log_sum(terms);
}

double apply_pointwise(const OperatorSpec& spec, const std::vector<RadialFunction>& fs, double x,
                       const QuadratureOptions& quad) {
  if (!(x > 0.0)) throw std::domain_error("evaluation radius must be positive");
  return std::exp(log_apply(spec, fs, std::log(x), quad));
}

namespace {

std::optional<PiecewisePowerFunction> exact_image(const OperatorSpec& spec,
                                                  const std::vector<RadialFunction>& fs,
                                                  const QuadratureOptions& quad) {
  double total = 0.0;
  for (const auto& f : fs) {
    const auto* pw = f.piecewise();
    if (!pw) return std::nullopt;
    const auto sp = pw->single_power();
    if (!sp) return std::nullopt;
    total += sp->exponent;
  }
  const double log_k = log_apply(spec, fs, 0.0, quad);
  if (!std::isfinite(log_k)) return std::nullopt;
  return PiecewisePowerFunction::power(std::exp(log_k), total);
}

struct Memo {
  std::mutex mu;
  std::unordered_map<double, double> values;
};

}  // namespace

GridImage apply_on_grid(const OperatorSpec& spec, const std::vector<RadialFunction>& fs,
                        const std::vector<double>& r_grid, const QuadratureOptions& quad) {
  for (std::size_t j = 0; j < r_grid.size(); ++j) {
    if (!(r_grid[j] > 0.0)) throw std::domain_error("grid radii must be positive");
    if (j > 0 && !(r_grid[j] > r_grid[j - 1])) throw std::domain_error("grid must be increasing");
  }
  GridImage out;
  out.radii = r_grid;
  out.exact = exact_image(spec, fs, quad);
  for (double r : r_grid) out.values.push_back(apply_pointwise(spec, fs, r, quad));
  return out;
}

RadialFunction image(const OperatorSpec& spec, const std::vector<RadialFunction>& fs,
                     const QuadratureOptions& quad) {
  spec.validate();
  if (auto e = exact_image(spec, fs, quad)) return *e;

  SampledRadialFunction s;
  const double w_lo = spec.log_w_lo();
  const double w_hi = spec.log_w_hi();
  double lo = -kInf, hi = kInf;
  for (int i = 0; i < spec.m; ++i) {
    const auto [a, b] = log_support(fs[i]);
    if (!(a < b)) {
      lo = kInf;
      hi = -kInf;
      break;
    }
    const PowerMap& map = spec.families[i].map();
    const double e1 = map.a == 0.0 ? std::log(std::abs(map.c)) : map.log_abs_at_log(w_lo);
    const double e2 = map.a == 0.0 ? std::log(std::abs(map.c)) : map.log_abs_at_log(w_hi);
    lo = std::max(lo, a - std::max(e1, e2));
    hi = std::min(hi, b - std::min(e1, e2));
    for (double beta : knots(fs[i])) {
      for (double w : {w_lo, w_hi}) {
        if (std::isfinite(w)) s.log_breaks.push_back(beta - map.log_abs_at_log(w));
      }
      if (map.a == 0.0) s.log_breaks.push_back(beta - std::log(std::abs(map.c)));
    }
  }
  if (!(lo < hi)) {
    return PiecewisePowerFunction();
  }
  s.u_lo = lo;
  s.u_hi = hi;
  std::sort(s.log_breaks.begin(), s.log_breaks.end());
  s.log_breaks.erase(std::unique(s.log_breaks.begin(), s.log_breaks.end()), s.log_breaks.end());
  auto memo = std::make_shared<Memo>();
  s.log_value = [spec, fs, quad, memo](double u) {
    {
      std::lock_guard<std::mutex> lock(memo->mu);
      auto it = memo->values.find(u);
      if (it != memo->values.end()) return it->second;
    }
    const double v = log_apply(spec, fs, u, quad);
    std::lock_guard<std::mutex> lock(memo->mu);
    memo->values.emplace(u, v);
    return v;
  };
  return s;
}

OperatorSpec from_hardy_cesaro(PowerMap psi, PowerMap s, int n) {
  return from_multilinear_hardy_cesaro(psi, {s}, n);
}

OperatorSpec from_hardy_littlewood(PowerMap psi, int n) {
  return from_hardy_cesaro(psi, PowerMap{1.0, 1.0}, n);
}

OperatorSpec from_multilinear_hardy_cesaro(PowerMap psi, const std::vector<PowerMap>& ss, int n) {
  if (n != 1)
    throw std::invalid_argument("Hardy-Cesaro kernels are only supported in dimension one");
  if (ss.empty()) throw std::invalid_argument("Hardy-Cesaro operator needs at least one map");
  OperatorSpec spec;
  spec.n = 1;
  spec.m = static_cast<int>(ss.size());
  spec.kernel = RadialKernel{PowerMap{psi.c, psi.a + 1.0}, 0.0, 1.0, true};
  for (const auto& s : ss) spec.families.push_back(MatrixFamily::scalar_dilation(1, s));
  spec.validate();
  return spec;
}

double operator_ratio(const OperatorSpec& spec, const std::vector<RadialFunction>& fs,
                      const std::vector<SpaceSpec>& sources, const SpaceSpec& target,
                      const ScanSettings& scan) {
  if (sources.size() != fs.size())
    throw std::invalid_argument("one source space per input function is required");
  double denom = 1.0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const double v = space_norm(fs[i], sources[i], scan).value;
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::domain_error("source norm must be finite and nonzero");
    denom *= v;
  }
  const RadialFunction h = image(spec, fs, scan.quad);
  return space_norm(h, target, scan).value / denom;
}

}  // namespace vexp
