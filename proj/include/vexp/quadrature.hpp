#pragma once

#include <functional>
#include <vector>

namespace vexp {

struct QuadratureOptions {
  double rel_tol = 1e-9;
  unsigned max_depth = 18;
  double tail_cap = 1e6;
  int max_tail_blocks = 64;
};

using LogIntegrand = std::function<double(double)>;

// Computes log of the integral of exp(log_f(u)) over [a, b]. Either end may be
// infinite; unbounded ends are swept with doubling blocks until the block
// contribution falls below rel_tol of the running total. A tail that does not
// settle before tail_cap is reported as divergent (+inf).
double log_integral(const LogIntegrand& log_f, double a, double b,
                    std::vector<double> breaks, const QuadratureOptions& opt = {});

}  // namespace vexp
