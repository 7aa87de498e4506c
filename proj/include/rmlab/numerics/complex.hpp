#pragma once

#include <complex>
#include <string>

#include "rmlab/numerics/real.hpp"

namespace rmlab::hp {

/// Complex number with multiprecision parts.
struct Complex {
  Real re;
  Real im;

  Complex() = default;
  explicit Complex(Bits b) : re(b), im(b) {}
  Complex(Real r) : re(std::move(r)), im(re.bits()) {}  // NOLINT implicit on purpose
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(long r, long i, Bits b) : re(r, b), im(i, b) {}

  static Complex from_std(std::complex<double> z, Bits b) {
    return {Real::from_double(z.real(), b), Real::from_double(z.imag(), b)};
  }
  std::complex<double> to_std() const { return {re.to_double(), im.to_double()}; }

  Bits bits() const { return Bits{std::max(re.prec(), im.prec())}; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  Complex operator-() const { return {-re, -im}; }
  Complex conj() const { return {re, -im}; }

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    Real den = o.re * o.re + o.im * o.im;
    Real r = (re * o.re + im * o.im) / den;
    im = (im * o.re - re * o.im) / den;
    re = std::move(r);
    return *this;
  }
  Complex& operator*=(const Real& x) {
    re *= x;
    im *= x;
    return *this;
  }
  Complex& operator/=(const Real& x) {
    re /= x;
    im /= x;
    return *this;
  }
  template <std::integral I>
  Complex& operator*=(I x) {
    re *= x;
    im *= x;
    return *this;
  }
  template <std::integral I>
  Complex& operator/=(I x) {
    re /= x;
    im /= x;
    return *this;
  }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator*(Complex a, const Real& b) { return a *= b; }
  friend Complex operator*(const Real& b, Complex a) { return a *= b; }
  friend Complex operator/(Complex a, const Real& b) { return a /= b; }
  friend Complex operator+(Complex a, const Real& b) {
    a.re += b;
    return a;
  }
  friend Complex operator-(Complex a, const Real& b) {
    a.re -= b;
    return a;
  }
  template <std::integral I>
  friend Complex operator*(Complex a, I b) { return a *= b; }
  template <std::integral I>
  friend Complex operator*(I b, Complex a) { return a *= b; }
  template <std::integral I>
  friend Complex operator/(Complex a, I b) { return a /= b; }
  template <std::integral I>
  friend Complex operator+(Complex a, I b) {
    a.re += b;
    return a;
  }
  template <std::integral I>
  friend Complex operator-(Complex a, I b) {
    a.re -= b;
    return a;
  }

  /// Multiply by i.
  Complex times_i() const { return {-im, re}; }

  std::string to_string(int digits) const {
    return "(" + re.to_string(digits) + ", " + im.to_string(digits) + ")";
  }
};

inline Complex I(Bits b) { return {Real(0, b), Real(1, b)}; }

inline Real norm2(const Complex& z) { return z.re * z.re + z.im * z.im; }
inline Real abs(const Complex& z) { return hypot(z.re, z.im); }
/// Principal argument in (-pi, pi].
inline Real arg(const Complex& z) { return atan2(z.im, z.re); }

inline Complex exp(const Complex& z) {
  Real m = exp(z.re);
  Real s, c;
  sin_cos(z.im, s, c);
  return {m * c, m * s};
}
/// e^{i x} for real x.
inline Complex expi(const Real& x) {
  Real s, c;
  sin_cos(x, s, c);
  return {std::move(c), std::move(s)};
}
/// e^{2 pi i x} for real x, reducing x modulo 1 first.
inline Complex exp2pii(const Real& x) {
  Real f = x - round(x);
  Real t = f * const_pi(x.bits());
  t.mul_2si(1);
  return expi(t);
}
/// Principal logarithm, branch cut on the negative real axis.
inline Complex log(const Complex& z) {
  if (z.is_zero()) throw DomainError("log(0)");
  return {log(abs(z)), arg(z)};
}
/// Principal square root, Re >= 0.
inline Complex sqrt(const Complex& z) {
  if (z.is_zero()) return Complex(z.bits());
  Real r = abs(z);
  Real a = sqrt(ldexp(r + abs(z.re), -1));
  if (z.re.sign() >= 0) {
    return {a, z.im / ldexp(a, 1)};
  }
  Real b = z.im.sign() >= 0 ? a : -a;
  return {abs(z.im) / ldexp(a, 1), b};
}
/// z^w = exp(w log z) on the principal branch.
inline Complex pow(const Complex& z, const Complex& w) { return exp(w * log(z)); }
/// x^w for real x > 0.
inline Complex pow(const Real& x, const Complex& w) {
  if (x.sign() <= 0) throw DomainError("pow: base must be positive");
  return exp(w * log(x));
}
inline Complex pow(const Complex& z, long n) {
  Complex result(Real(1, z.bits()), Real(0, z.bits()));
  Complex base = z;
  bool neg = n < 0;
  unsigned long m = neg ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  while (m) {
    if (m & 1UL) result *= base;
    base *= base;
    m >>= 1;
  }
  if (neg) return Complex(Real(1, z.bits()), Real(0, z.bits())) / result;
  return result;
}
inline Complex sin(const Complex& z) {
  Real s, c;
  sin_cos(z.re, s, c);
  return {s * cosh(z.im), c * sinh(z.im)};
}

/// Root of -i v with positive real part, for Im v > 0.  Equals the principal
/// square root; the half plane keeps -i v away from the cut.
inline Complex branch_sqrt_neg_iv(const Complex& v) {
  if (v.im.sign() <= 0) throw DomainError("branch_sqrt_neg_iv requires Im v > 0");
  return sqrt(Complex(v.im, -v.re));
}

}  // namespace rmlab::hp
