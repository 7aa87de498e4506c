#pragma once

// Special functions at arbitrary precision: Gamma for complex argument, the
// upper incomplete Gamma function with complex order, and the Hurwitz zeta
// function with its s-derivative.

#include <cmath>
#include <vector>

#include "rmlab/numerics/quadrature.hpp"

namespace rmlab::hp {

/// Exact Bernoulli number B_n (B_1 = +1/2 convention, only even n used here).
inline const mpq_class& bernoulli(int n) {
  thread_local std::vector<mpq_class> table;
  thread_local std::vector<mpq_class> row;
  while (static_cast<int>(table.size()) <= n) {
    // Akiyama-Tanigawa, one step per index.
    const int m = static_cast<int>(table.size());
    row.push_back(mpq_class(1, m + 1));
    for (int j = m; j >= 1; --j) {
      row[j - 1] = j * (row[j - 1] - row[j]);
      row[j - 1].canonicalize();
    }
    table.push_back(row[0]);
  }
  return table[n];
}

namespace detail {

// Stirling series for ln Gamma(w), requires large |w| with Re w > 0.
inline Complex lngamma_stirling(const Complex& w) {
  const Bits b = w.bits();
  Complex result = (w - Real::from_double(0.5, b)) * log(w) - w;
  result.re += ldexp(log(ldexp(const_pi(b), 1)), -1);
  Complex inv = Complex(Real(1, b)) / w;
  Complex inv2 = inv * inv;
  Complex pw = inv;
  const double stop = std::ldexp(1.0, -static_cast<int>(b.value) - 8);
  for (int k = 1; k < 4 * b.value; ++k) {
    Real coef(bernoulli(2 * k) / mpq_class(2 * k * (2 * k - 1)), b);
    Complex term = pw * coef;
    result += term;
    if (magnitude(term) < stop) break;
    pw *= inv2;
  }
  return result;
}

inline long stirling_radius(Bits b) { return static_cast<long>(0.12 * static_cast<double>(b.value)) + 10; }

}  // namespace detail

/// 1/Gamma(z); entire, exactly zero at non-positive integers.
inline Complex rgamma(const Complex& z) {
  const Bits b = z.bits();
  const long r = detail::stirling_radius(b);
  long shift = 0;
  double re = z.re.to_double();
  if (re < static_cast<double>(r)) shift = static_cast<long>(std::ceil(r - re));
  Complex prod(Real(1, b), Real(0, b));
  for (long k = 0; k < shift; ++k) prod *= z + k;
  if (prod.is_zero()) return prod;
  return prod * exp(-detail::lngamma_stirling(z + shift));
}

inline Complex gamma(const Complex& z) {
  Complex r = rgamma(z);
  if (r.is_zero()) throw DomainError("gamma: pole");
  return Complex(Real(1, z.bits())) / r;
}

/// Upper incomplete Gamma(a, x) = int_x^inf t^(a-1) e^-t dt for x > 0.
inline Complex upper_gamma(const Complex& a, const Real& x) {
  if (x.sign() <= 0) throw DomainError("upper_gamma requires x > 0");
  const Bits b{std::max(a.bits().value, x.prec())};
  const double xd = x.to_double();
  const double rel = std::ldexp(1.0, -static_cast<int>(b.value) + 4);
  if (xd >= 2.0) {
    // Legendre continued fraction, modified Lentz.
    const Real tiny = pow2(-4 * b.value, b);
    auto guard = [&](Complex& z) {
      if (abs(z) < tiny) z = Complex(tiny, Real(b));
    };
    Complex bb = Complex(x) + 1 - a;
    Complex c(pow2(4 * b.value, b), Real(b));
    Complex d = Complex(Real(1, b)) / bb;
    Complex h = d;
    bool done = false;
    for (long i = 1; i < 200000; ++i) {
      Complex an = -((Complex(Real(i, b)) - a) * i);
      bb.re += 2;
      d = an * d + bb;
      guard(d);
      c = bb + an / c;
      guard(c);
      d = Complex(Real(1, b)) / d;
      Complex del = d * c;
      h *= del;
      if (magnitude(Complex(del - 1)) < rel) {
        done = true;
        break;
      }
    }
    if (!done) throw ConvergenceError("upper_gamma continued fraction", 1.0);
    return exp(a * log(x) - x) * h;
  }
  // Small x: t = x e^w turns the integral into x^a int_0^inf e^(a w - x e^w) dw.
  const double ar = std::max(a.re.to_double(), 0.0);
  const double need = static_cast<double>(b.value) * 0.6931471805599453 + 30.0;
  double W = 1.0;
  for (int it = 0; it < 60; ++it) W = std::log((need + ar * W) / xd);
  W = std::max(W, 1.0);
  auto f = [&](const Real& w) { return exp(a * w - x * exp(w)); };
  Real lo(0, b);
  Real hi = Real::from_double(W, b);
  Complex crude = gauss_legendre_composite<Complex>(f, lo, hi, 4, 16);
  double scale = std::max(magnitude(crude), 1e-300);
  auto q = integrate<Complex>(f, lo, hi, scale * rel * 16, 20, static_cast<int>(std::ceil(W)), 4096);
  return exp(a * log(x)) * q.value;
}

/// E_1(x) = Gamma(0, x).
inline Real expint_e1(const Real& x) { return upper_gamma(Complex(Real(0, x.bits())), x).re; }

struct HurwitzValue {
  Complex value;
  Complex derivative;  // d/ds, zero unless requested
  double error_estimate;
};

/// Hurwitz zeta(s, a) = sum_{k>=0} (k+a)^-s by Euler-Maclaurin, valid for all
/// s != 1 and a > 0.  With `derivative` the s-derivative is carried along as a
/// dual number.
inline HurwitzValue hurwitz_zeta(const Complex& s, const Real& a, double target,
                                 bool derivative = false) {
  const Bits b{std::max(s.bits().value, a.prec())};
  if (a.sign() <= 0) throw DomainError("hurwitz_zeta requires a > 0");
  if (s.im.is_zero() && s.re == Real(1, b)) throw DomainError("hurwitz_zeta: pole at s = 1");
  const double sabs = magnitude(s);
  long N = static_cast<long>(std::ceil(sabs + static_cast<double>(b.value) / 6.0)) + 10;
  for (int attempt = 0; attempt < 8; ++attempt, N *= 2) {
    Complex val(b), der(b);
    for (long k = 0; k < N; ++k) {
      Real ka = a + k;
      Real lk = log(ka);
      Complex t = exp(-s * lk);
      val += t;
      if (derivative) der -= t * lk;
    }
    const Real u = a + N;
    const Real lu = log(u);
    const Complex us = exp(-s * lu);  // u^-s
    const Complex sm1 = s - 1;
    Complex tail = us * u / sm1;
    val += tail;
    val += us * Real::from_double(0.5, b);
    if (derivative) {
      der -= tail * lu + tail / sm1;
      der -= us * lu * Real::from_double(0.5, b);
    }
    // Rising factorial (s)_{2j-1} and its derivative as a dual number.
    Complex p = s;
    Complex dp(Real(1, b), Real(b));
    Complex upow = us / u;  // u^(-s-1)
    const Real u2 = u * u;
    double last = INFINITY;
    bool ok = false;
    for (int j = 1; j < 4 * b.value; ++j) {
      mpz_class fact;
      mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(2 * j));
      Real coef(mpq_class(bernoulli(2 * j) / fact), b);
      Complex term = p * upow * coef;
      val += term;
      double m = magnitude(term);
      if (derivative) {
        Complex dterm = (dp * upow - p * upow * lu) * coef;
        m = std::max(m, magnitude(dterm));
        der += dterm;
      }
      if (m < target * 1e-3) {
        ok = true;
        last = m;
        break;
      }
      if (m > last && j > 3) break;  // asymptotic series turned; enlarge N
      last = m;
      // (s)_{2j+1} = (s)_{2j-1} (s + 2j - 1)(s + 2j)
      for (int q = 2 * j - 1; q <= 2 * j; ++q) {
        Complex f = s + q;
        dp = dp * f + p;
        p = p * f;
      }
      upow /= u2;
    }
    if (ok) return {val, der, last};
  }
  throw ConvergenceError("hurwitz_zeta: Euler-Maclaurin did not converge", 1.0);
}

}  // namespace rmlab::hp
