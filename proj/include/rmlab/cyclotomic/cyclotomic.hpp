#pragma once

// Partial zeta functions of congruence classes m + nZ, their derivative at
// s = 0, Temperley-Lieb critical values and the Jones index set.

#include <cmath>
#include <optional>

#include "rmlab/numerics/errors.hpp"
#include "rmlab/numerics/special.hpp"

namespace rmlab {

using hp::Complex;
using hp::Real;

struct CongruenceClass {
  long m = 1, n = 2;

  CongruenceClass(long m_, long n_) : m(m_), n(n_) {
    if (n < 2 || m <= 0 || m >= n) throw InvalidInput("congruence class needs 0 < m < n");
  }
};

namespace detail {
inline mpq_class ratio(long m, long n) {
  mpq_class q(m, n);
  q.canonicalize();
  return q;
}
}  // namespace detail

/// sum over k in m + nZ of |k|^{-s} = n^{-s} (zeta_H(s, m/n) + zeta_H(s, 1 - m/n)).
inline Complex zeta_mn(const CongruenceClass& c, const Complex& s, const PrecisionCtx& ctx) {
  const hp::Bits b = ctx.bits();
  const Real a(detail::ratio(c.m, c.n), b), a2(detail::ratio(c.n - c.m, c.n), b);
  auto h1 = hp::hurwitz_zeta(s, a, ctx.target_abs_err);
  auto h2 = hp::hurwitz_zeta(s, a2, ctx.target_abs_err);
  return hp::pow(Real(c.n, b), -s) * (h1.value + h2.value);
}

/// d/ds of zeta_mn, by the Euler-Maclaurin derivatives of both Hurwitz terms.
inline Complex zeta_mn_derivative(const CongruenceClass& c, const Complex& s, const PrecisionCtx& ctx) {
  const hp::Bits b = ctx.bits();
  const Real a(detail::ratio(c.m, c.n), b), a2(detail::ratio(c.n - c.m, c.n), b);
  auto h1 = hp::hurwitz_zeta(s, a, ctx.target_abs_err, true);
  auto h2 = hp::hurwitz_zeta(s, a2, ctx.target_abs_err, true);
  const Real ln = hp::log(Real(c.n, b));
  const Complex ns = hp::pow(Real(c.n, b), -s);
  return ns * (h1.derivative + h2.derivative) - ns * ln * (h1.value + h2.value);
}

/// zeta_mn'(0) = zeta_H'(0, a) + zeta_H'(0, 1 - a) since zeta_mn(0) = 0, with
/// zeta_H'(0, a) = log Gamma(a) - log(2 pi) / 2.
inline Real zeta_mn_prime_0(const CongruenceClass& c, const PrecisionCtx& ctx) {
  const hp::Bits b = ctx.bits();
  const Real a(detail::ratio(c.m, c.n), b), a2(detail::ratio(c.n - c.m, c.n), b);
  return hp::lngamma(a) + hp::lngamma(a2) - hp::log(ctx.pi().mul_2si(1));
}

struct StarkQ {
  Real lhs, rhs;
};

/// exp(-2 zeta_mn'(0)) against 4 sin^2(m pi / n).
inline StarkQ stark_q(const CongruenceClass& c, const PrecisionCtx& ctx) {
  const hp::Bits b = ctx.bits();
  StarkQ out;
  out.lhs = hp::exp(zeta_mn_prime_0(c, ctx).mul_2si(1) * -1);
  const Real sn = hp::sin(ctx.pi() * Real(detail::ratio(c.m, c.n), b));
  out.rhs = sn * sn * 4;
  return out;
}

struct TLCritical {
  Real tau_inverse;  // 4 cos^2(m pi / (n + 1))
  Real tau;
};

inline TLCritical tl_critical(long m, long n, const PrecisionCtx& ctx) {
  if (m < 1 || m > n) throw InvalidInput("tl_critical needs 1 <= m <= n");
  if (2 * m == n + 1) throw DomainError("tau undefined: cos(m pi / (n + 1)) = 0");
  const hp::Bits b = ctx.bits();
  const Real cs = hp::cos(ctx.pi() * Real(detail::ratio(m, n + 1), b));
  TLCritical t;
  t.tau_inverse = cs * cs * 4;
  t.tau = Real(1, b) / t.tau_inverse;
  return t;
}

struct JonesMembership {
  bool member = false;
  std::optional<long> n;  // witness with |x - 4 cos^2(pi / n)| <= tol
};

/// x in {4 cos^2(pi / n) : n >= 3} or x >= 4.  The discrete values increase to
/// 4, so only n <= pi / acos(sqrt((x + tol) / 4)) + 1 can match.
inline JonesMembership jones_index_member(const Real& x, const Real& tol) {
  if (x.sign() < 0) throw InvalidInput("jones_index_member needs x >= 0");
  const hp::Bits b{x.prec()};
  JonesMembership out;
  const double xt = (x + tol).to_double();
  long nmax = 3;
  if (xt < 4) nmax = std::max(3L, static_cast<long>(std::floor(M_PI / std::acos(std::sqrt(xt / 4)))) + 1);
  const Real pi = hp::const_pi(b);
  for (long n = 3; n <= nmax; ++n) {
    const Real cs = hp::cos(pi / Real(n, b));
    if (hp::abs(cs * cs * 4 - x) <= tol) {
      out.member = true;
      out.n = n;
      return out;
    }
  }
  if (x >= Real(4, b) - tol) out.member = true;
  return out;
}

}  // namespace rmlab
