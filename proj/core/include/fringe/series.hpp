#pragma once

#include <cstdint>
#include <functional>

namespace fringe {

/// Kahan compensated accumulator.
class KahanSum {
 public:
  void add(double x) {
    double y = x - compensation_;
    double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

struct SeriesResult {
  double value = 0.0;
  double error_bound = 0.0;
};

/// Adaptive Simpson quadrature of a smooth integrand on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-13);

/// sum_{k=k0}^{infinity} f(k) for an eventually smooth, monotonically
/// decaying term function: compensated summation of the first `cutoff` terms
/// plus an Euler-Maclaurin tail (integral, half-term and derivative
/// corrections). The reported error bound covers the tail remainder, the
/// quadrature tolerance and accumulated rounding.
SeriesResult sum_to_infinity(const std::function<double(double)>& f, std::int64_t k0,
                             std::int64_t cutoff);

}  // namespace fringe
