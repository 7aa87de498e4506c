#pragma once

// Gauss-Legendre quadrature at arbitrary precision.  Rules are cached per
// thread, keyed by (nodes, bits).

#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "rmlab/numerics/scalar.hpp"

namespace rmlab::hp {

struct GaussLegendreRule {
  std::vector<Real> nodes;    // in (-1, 1), ascending
  std::vector<Real> weights;
};

namespace detail {

// P_n(x) and P_n'(x) by the three-term recurrence.
inline void legendre_eval(int n, const Real& x, Real& p, Real& dp) {
  Real p0(1, x.bits());
  Real p1 = x;
  for (int k = 2; k <= n; ++k) {
    Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = std::move(p1);
    p1 = std::move(p2);
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1);
}

inline GaussLegendreRule build_rule(int n, Bits b) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const Bits wb{b.value + 16};
  const Real pi = const_pi(wb);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-like start, then Newton at full precision.
    Real x = cos(pi * Real::from_double(i + 0.75, wb) / Real::from_double(n + 0.5, wb));
    Real p, dp;
    for (int it = 0; it < 100; ++it) {
      legendre_eval(n, x, p, dp);
      Real dx = p / dp;
      x -= dx;
      if (dx.is_zero() || dx.exponent() < x.exponent() - wb.value + 4) break;
    }
    legendre_eval(n, x, p, dp);
    Real w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x.with_prec(b);
    rule.weights[n - 1 - i] = w.with_prec(b);
    rule.nodes[i] = (-x).with_prec(b);
    rule.weights[i] = w.with_prec(b);
  }
  if (n % 2 == 1) rule.nodes[n / 2] = Real(b);
  return rule;
}

}  // namespace detail

/// Cached n-point Gauss-Legendre rule on [-1, 1].
inline const GaussLegendreRule& gauss_legendre_rule(int n, Bits b) {
  if (n < 1) throw DomainError("gauss_legendre_rule: n must be positive");
  thread_local std::map<std::pair<int, long>, GaussLegendreRule> cache;
  auto key = std::make_pair(n, b.value);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, detail::build_rule(n, b)).first;
  return it->second;
}

/// Single panel n-point rule on [a, b].
template <class T, class F>
T gauss_legendre(F&& f, const Real& a, const Real& b, int n) {
  const Bits bits{std::max(a.prec(), b.prec())};
  const auto& rule = gauss_legendre_rule(n, bits);
  Real mid = ldexp(a + b, -1);
  Real rad = ldexp(b - a, -1);
  T acc = zero_like<T>(bits);
  for (int i = 0; i < n; ++i) {
    acc += f(mid + rad * rule.nodes[i]) * rule.weights[i];
  }
  return acc * rad;
}

/// Composite rule: `panels` equal panels, n nodes each.
template <class T, class F>
T gauss_legendre_composite(F&& f, const Real& a, const Real& b, int panels, int n) {
  const Bits bits{std::max(a.prec(), b.prec())};
  T acc = zero_like<T>(bits);
  Real h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    Real lo = a + h * p;
    Real hi = (p + 1 == panels) ? b : a + h * (p + 1);
    acc += gauss_legendre<T>(f, lo, hi, n);
  }
  return acc;
}

template <class T>
struct QuadResult {
  T value;
  double error_estimate;
  int evaluations;
};

/// Doubles the number of panels until two successive composite estimates agree
/// to `target`.  Throws ConvergenceError when `max_panels` is reached first.
template <class T, class F>
QuadResult<T> integrate(F&& f, const Real& a, const Real& b, double target, int nodes = 24,
                        int panels = 1, int max_panels = 1024) {
  T prev = gauss_legendre_composite<T>(f, a, b, panels, nodes);
  int evals = panels * nodes;
  double last_err = INFINITY;
  while (2 * panels <= max_panels) {
    panels *= 2;
    T cur = gauss_legendre_composite<T>(f, a, b, panels, nodes);
    evals += panels * nodes;
    double err = magnitude(T(cur - prev));
    prev = std::move(cur);
    last_err = err;
    if (err <= target) return {std::move(prev), err, evals};
  }
  throw ConvergenceError("quadrature did not reach target", last_err);
}

/// Doubles the node count of a single panel (smooth periodic integrands).
template <class T, class F>
QuadResult<T> integrate_nodes(F&& f, const Real& a, const Real& b, double target, int nodes = 16,
                              int max_nodes = 2048) {
  T prev = gauss_legendre<T>(f, a, b, nodes);
  int evals = nodes;
  double last_err = INFINITY;
  while (2 * nodes <= max_nodes) {
    nodes *= 2;
    T cur = gauss_legendre<T>(f, a, b, nodes);
    evals += nodes;
    double err = magnitude(T(cur - prev));
    prev = std::move(cur);
    last_err = err;
    if (err <= target) return {std::move(prev), err, evals};
  }
  throw ConvergenceError("quadrature did not reach target", last_err);
}

}  // namespace rmlab::hp
