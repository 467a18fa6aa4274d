#pragma once

#include <limits>
#include <span>

namespace vexp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Surface measure of the unit sphere S^{n-1}; equals 2 for n = 1.
double sphere_area(int n);

// log(exp(a) + exp(b)) with -inf treated as an empty term.
double log_add(double a, double b);
double log_sum(std::span<const double> terms);

// log of the integral of exp(B u) over [a, b]; a may be -inf and b may be +inf.
// Returns +inf when the integral diverges.
double log_exp_integral(double slope, double a, double b);

// log(e + e^u), accurate for large positive u.
double log_e_plus_exp(double u);

}  // namespace vexp
