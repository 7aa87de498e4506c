#pragma once

#include <vector>

#include "rmlab/numerics/summation.hpp"

namespace rmlab::hp {

template <class T>
struct DerivativeResult {
  T value;
  double error_estimate;
  bool stable;
};

/// Central differences D(h) = (f(x+h) - f(x-h)) / 2h for h = h0, h0/2, ...,
/// extrapolated to h = 0 in the variable h^2.  Stops once two successive
/// extrapolants agree to `target` or `max_levels` is reached.
template <class T, class F>
DerivativeResult<T> numeric_derivative(F&& f, const Real& x, const Real& h0, double target,
                                       int max_levels = 10) {
  std::vector<Real> h2;
  std::vector<T> d;
  Real h = h0;
  T best = zero_like<T>(x.bits());
  double best_err = INFINITY;
  double prev_err = INFINITY;
  for (int level = 0; level < max_levels; ++level) {
    T diff = f(x + h) - f(x - h);
    d.push_back(diff / ldexp(h, 1));
    h2.push_back(h * h);
    h = ldexp(h, -1);
    if (d.size() < 2) continue;
    auto ex = neville_at_zero(h2, d);
    if (ex.error_estimate < best_err) {
      best = ex.value;
      best_err = ex.error_estimate;
    }
    if (ex.error_estimate <= target) return {ex.value, ex.error_estimate, true};
    // Rounding has taken over once the estimate grows twice in a row.
    if (ex.error_estimate > prev_err && d.size() > 4) break;
    prev_err = ex.error_estimate;
  }
  return {best, best_err, best_err <= target};
}

}  // namespace rmlab::hp
