#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "rmlab/numerics/scalar.hpp"

namespace rmlab::hp {

/// Neumaier compensated accumulator.
template <class T>
class CompensatedSum {
 public:
  explicit CompensatedSum(Bits b) : sum_(zero_like<T>(b)), comp_(zero_like<T>(b)) {}

  void add(const T& x) { add_part(sum_, comp_, x); }
  T value() const { return sum_ + comp_; }

 private:
  static void add_part(Real& s, Real& c, const Real& x) {
    Real t = s + x;
    if (abs(s) >= abs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = std::move(t);
  }
  static void add_part(Complex& s, Complex& c, const Complex& x) {
    add_part(s.re, c.re, x.re);
    add_part(s.im, c.im, x.im);
  }

  T sum_;
  T comp_;
};

/// Sum after sorting by ascending magnitude, compensated.
template <class T>
T sorted_sum(std::vector<T> terms, Bits b) {
  std::vector<std::pair<double, std::size_t>> order(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) order[i] = {magnitude(terms[i]), i};
  std::sort(order.begin(), order.end());
  CompensatedSum<T> acc(b);
  for (const auto& [m, i] : order) acc.add(terms[i]);
  return acc.value();
}

template <class T>
struct Extrapolation {
  T value;
  double error_estimate;
};

/// Neville extrapolation of samples y_k = F(h_k) to h = 0.  The estimate is
/// the difference between the two highest order extrapolants.
template <class T>
Extrapolation<T> neville_at_zero(const std::vector<Real>& h, std::vector<T> y) {
  const std::size_t n = h.size();
  if (n == 0 || y.size() != n) throw DomainError("neville_at_zero: bad sample sizes");
  if (n == 1) return {y[0], INFINITY};
  // After pass m, y[i] holds the degree-m interpolant through h[i..i+m] at 0.
  T finer = y[1];
  for (std::size_t m = 1; m < n; ++m) {
    if (m + 1 == n) finer = y[1];
    for (std::size_t i = 0; i + m < n; ++i) {
      T num = y[i] * h[i + m] - y[i + 1] * h[i];
      y[i] = num / (h[i + m] - h[i]);
    }
  }
  // Compare with the top extrapolant that omits the coarsest sample.
  double err = magnitude(T(y[0] - finer));
  return {y[0], err};
}

}  // namespace rmlab::hp
