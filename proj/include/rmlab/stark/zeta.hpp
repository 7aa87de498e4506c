#pragma once

// Partial zeta functions of a real quadratic field attached to (L, l0),
//   zeta(L, l0, s) = sgn l0' N(b)^s sum_{x in l0 + L mod G} sgn x' / |N x|^s,
// G the units congruent to 1 mod f, and the Stark number S0 = e^{zeta'(0)}.

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "rmlab/numerics/derivative.hpp"
#include "rmlab/numerics/special.hpp"
#include "rmlab/theta/theta.hpp"

namespace rmlab {

struct StarkInput {
  QuadIdeal L;
  QuadElem l0;
  QuadIdeal b, a0, f;
  UnitData unit;      // eps_f generates G (with -1 when -1 = 1 mod f)
  QuadElem eps_plus;  // generator of the totally positive subgroup U
  long index = 1;     // [G : U]

  Pseudolattice lattice() const { return Pseudolattice::from_ideal(L); }
  int sign_l0_conj() const { return l0.sign_conj(); }
};

/// Computes b = (L, l0), a0 = (l0) b^{-1}, f = L b^{-1} and checks
/// (i) b and a0 coprime with f, (ii) every unit = 1 mod f has positive conjugate.
inline StarkInput validate_pair(const QuadIdeal& L, const QuadElem& l0) {
  const QuadField& K = L.field();
  if (l0.D() != K.D() || !l0.is_integral()) throw InvalidInput("l0 must be an integer of K");
  if (l0.is_zero()) throw InvalidInput("l0 must be nonzero");
  StarkInput in;
  in.L = L;
  in.l0 = l0;
  in.b = L + QuadIdeal::principal(l0);
  in.a0 = QuadIdeal::principal(l0).divided_by(in.b);
  in.f = L.divided_by(in.b);
  if (!in.b.coprime_to(in.f)) throw ConditionFailed("i", "b is not coprime with f");
  if (!in.a0.coprime_to(in.f)) throw ConditionFailed("i", "a0 is not coprime with f");
  in.unit = unit_mod_f(K, in.f);
  if (in.unit.minus_one_congruent) throw ConditionFailed("ii", "-1 = 1 mod f and (-1)' < 0");
  if (in.unit.eps_f.sign_conj() < 0) throw ConditionFailed("ii", "a unit = 1 mod f has negative conjugate");
  in.eps_plus = in.unit.eps_f_plus;
  if (in.eps_plus.sign() < 0) in.eps_plus = -in.eps_plus;
  in.index = in.unit.eps_f_totally_positive ? 1 : 2;
  return in;
}

struct ZetaValue {
  Complex value;
  double error_estimate = 0;
};

namespace detail {

// Smallest X with sum over norm shells [X + k, X + k + 1) of
// (d (X + k + 1) + 8) bound(X + k) below target, d = 8 log eps / Delta.
template <class F>
double orbit_norm_cutoff(double delta, double log_eps, F&& bound, double target, double step0) {
  const double d = 8 * log_eps / delta;
  auto tail_from = [&](double X) {
    double s = 0;
    for (int k = 0; k < 1000000; ++k) {
      double t = (d * (X + k + 1) + 8) * bound(X + k);
      s += t;
      if (t < s * 1e-18 || t == 0) break;
    }
    return s;
  };
  double X = step0;
  while (tail_from(X) > target) X *= 1.1;
  return X;
}

// |Gamma(a, x)| <= 2 x^{Re a - 1} e^{-x} once x >= 2 |a - 1| + 2.
inline double upper_gamma_bound(double ar, double aabs, double x) {
  if (x < 2 * aabs + 4) return INFINITY;
  return 2 * std::pow(x, ar - 1) * std::exp(-x);
}

}  // namespace detail

struct DirectOptions {
  int levels = 8;
  double x0 = 64;       // smoothing lengths x0 2^k
  double cutoff = 40;   // terms up to n = cutoff * largest length
  double margin = 0.5;  // Re s > 1 + margin
  OrbitEnumerator enumerator = OrbitEnumerator::ratio_slice;
};

/// Direct evaluation of the Dirichlet series.  The sums
///   sum c(n) n^{-s} e^{-n / X},  n = |N x| / N(b),
/// are taken for X = x0 2^k and extrapolated to 1 / X = 0; since the series
/// continues to an entire function the smoothed sums expand in powers of 1/X.
inline ZetaValue partial_zeta_direct(const StarkInput& in, const Complex& s, const PrecisionCtx& ctx,
                                     const DirectOptions& opt = {}) {
  const hp::Bits b = ctx.bits();
  if (!(s.re.to_double() > 1 + opt.margin)) throw DomainError("direct series needs Re s > 1 + margin");
  const double Xmax = opt.x0 * std::ldexp(1.0, opt.levels - 1);
  const long nmax = static_cast<long>(std::ceil(opt.cutoff * Xmax));
  const Integer Nb = in.b.norm();
  std::map<long, long> coef;
  for_each_orbit_rep(
      in.lattice(), in.l0, in.eps_plus, Rational(Nb * nmax),
      [&](const QuadElem& x) {
        Rational n = abs(x.norm()) / Rational(Nb);
        if (n.get_den() != 1) throw DomainError("norm not divisible by N(b)");
        coef[n.get_num().get_si()] += x.sign_conj();
      },
      opt.enumerator);
  std::vector<long> ns;
  std::vector<Complex> w;  // c(n) n^{-s}
  for (const auto& [n, c] : coef) {
    if (c == 0) continue;
    ns.push_back(n);
    w.push_back(hp::exp(-s * hp::log(Real(n, b))) * c);
  }
  std::vector<Real> hs;
  std::vector<Complex> ys;
  for (int k = 0; k < opt.levels; ++k) {
    const double X = opt.x0 * std::ldexp(1.0, k);
    const Real h = Real(1, b) / Real::from_double(X, b);
    const Real r = hp::exp(-h);
    Real weight = Real(1, b);  // e^{-n h}, advanced by powers of r
    long cur = 0;
    hp::CompensatedSum<Complex> acc(b);
    for (std::size_t i = 0; i < ns.size(); ++i) {
      weight *= hp::pow(r, ns[i] - cur);
      cur = ns[i];
      acc.add(w[i] * weight);
    }
    hs.push_back(h);
    ys.push_back(acc.value());
  }
  auto ex = hp::neville_at_zero(hs, ys);
  Complex v = ex.value * in.sign_l0_conj() / in.index;
  return {v, ex.error_estimate / in.index};
}

/// Split point of the Mellin integral on the imaginary axis, v = i y0.  The
/// default y0 = 1 / Delta(L) balances the two halves.
struct ContinuedOptions {
  double y0 = 0;  // 0 selects 1 / Delta(L)
};

namespace detail {

struct SplitSums {
  // Orbit representatives of l0 + L (norm n, sign of x') and of L^? with the
  // character sgn(m) e^{2 pi i tr(m l0')} (norm N_m, value).
  std::vector<std::pair<Rational, int>> primal;
  std::vector<std::pair<Rational, Complex>> dual;
  Real y0, delta;
};

inline SplitSums split_sums(const StarkInput& in, const Complex& s, const PrecisionCtx& ctx, const ContinuedOptions& opt) {
  const hp::Bits b = ctx.bits();
  const Pseudolattice L = in.lattice();
  const Pseudolattice M = dual(L);
  SplitSums out;
  out.delta = delta(L, b);
  const double dd = out.delta.to_double();
  const double y0 = opt.y0 > 0 ? opt.y0 : 1 / dd;
  out.y0 = opt.y0 > 0 ? Real::from_double(opt.y0, b) : Real(1, b) / out.delta;
  const double le = std::log(in.eps_plus.to_double());
  const double sr = s.re.to_double(), sa = hp::abs(s).to_double();
  const double s1a = hp::abs(s - Real(1, b)).to_double();
  // Term bounds before the outer factor (2 pi)^s / Gamma(s).
  auto pb = [&](double n) {
    return std::pow(2 * M_PI * n, -sr) * upper_gamma_bound(sr, s1a, 2 * M_PI * n * y0);
  };
  auto db = [&](double n) {
    return std::pow(2 * M_PI * n, sr - 1) * upper_gamma_bound(1 - sr, sa, 2 * M_PI * n / y0) / dd;
  };
  const double outer = std::pow(2 * M_PI, sr) * std::max(1.0, hp::abs(hp::rgamma(s)).to_double());
  const double target = ctx.target_abs_err / (4 * outer);
  const double Xp = orbit_norm_cutoff(dd, le, pb, target, 0.5 * dd / 10);
  const double Xd = orbit_norm_cutoff(1 / dd, le, db, target, 0.5 / dd / 10);
  for_each_orbit_rep(L, in.l0, in.eps_plus, Rational(Xp), [&](const QuadElem& x) {
    out.primal.emplace_back(abs(x.norm()), x.sign_conj());
  });
  const QuadElem l0c = in.l0.conj();
  const QuadElem zero(in.l0.D(), 0);
  for_each_orbit_rep(M, zero, in.eps_plus, Rational(Xd), [&](const QuadElem& m) {
    Rational ph = frac_part((m * l0c).trace());
    Complex c = sgn(ph) == 0 ? Complex(Real(1, b)) : hp::exp2pii(Real(ph, b));
    out.dual.emplace_back(abs(m.norm()), c * m.sign());
  });
  std::sort(out.primal.begin(), out.primal.end());
  std::stable_sort(out.dual.begin(), out.dual.end(),
            [](const auto& a, const auto& c) { return a.first < c.first; });
  return out;
}

// sum over U-orbits of sgn x' / |N x|^s, split at v = i y0.
inline Complex orbit_dirichlet_split(const SplitSums& S, const Complex& s, hp::Bits b) {
  const Real twopi = hp::const_pi(b).mul_2si(1);
  hp::CompensatedSum<Complex> p(b), d(b);
  for (const auto& [n, sg] : S.primal) {
    Real a = twopi * Real(n, b);
    p.add(hp::pow(a, -s) * hp::upper_gamma(s, a * S.y0) * sg);
  }
  const Complex one_s = Complex(Real(1, b)) - s;
  for (const auto& [n, c] : S.dual) {
    Real a = twopi * Real(n, b);
    d.add(c * hp::pow(a, -one_s) * hp::upper_gamma(one_s, a / S.y0));
  }
  // (1 / (i Delta)) = -i / Delta
  Complex dual_part = d.value().times_i() / S.delta;
  Complex total = p.value() - dual_part;
  return hp::pow(twopi, s) * hp::rgamma(s) * total;
}

// d/ds at s = 0 of the same, using 1/Gamma(s) = s + O(s^2).
inline Real orbit_dirichlet_split_derivative_at_zero(const SplitSums& S, hp::Bits b) {
  const Real twopi = hp::const_pi(b).mul_2si(1);
  hp::CompensatedSum<Real> p(b), d(b);
  for (const auto& [n, sg] : S.primal) {
    p.add(hp::expint_e1(twopi * Real(n, b) * S.y0) * sg);
  }
  hp::CompensatedSum<Complex> dc(b);
  for (const auto& [n, c] : S.dual) {
    Real a = twopi * Real(n, b);
    dc.add(c * (hp::exp(-(a / S.y0)) / a));
  }
  Complex dual_part = dc.value().times_i() / S.delta;
  // Imaginary parts cancel between m and -m.
  return p.value() - dual_part.re;
}

}  // namespace detail

/// Continuation through the Mellin transform of Theta^U and its
/// transformation under v -> -1/v: the ray [0, i oo) is split at i y0 and the
/// lower piece is mapped to [i / y0, i oo), giving two incomplete-Gamma series
/// that converge for every s.
inline ZetaValue partial_zeta_continued(const StarkInput& in, const Complex& s, const PrecisionCtx& ctx,
                                        const ContinuedOptions& opt = {}) {
  const hp::Bits b = ctx.bits();
  detail::SplitSums S = detail::split_sums(in, s, ctx, opt);
  Complex z = detail::orbit_dirichlet_split(S, s, b);
  z *= hp::pow(Real(in.b.norm(), b), s);
  return {z * in.sign_l0_conj() / in.index, ctx.target_abs_err};
}

struct StarkResult {
  Real zeta_prime_0;
  Real s0;  // exp(zeta_prime_0)
  Real zeta_0;
  Real route_gap;
  Real zeta_prime_0_numeric;  // route (a)
};

/// zeta'(0) by (b) the closed form of the derivative of the split integral
/// and (a) numerical differentiation of the continued function.  S0 uses (b).
inline StarkResult stark_number(const StarkInput& in, const PrecisionCtx& ctx, const ContinuedOptions& opt = {}) {
  const hp::Bits b = ctx.bits();
  const Complex zero(b);
  detail::SplitSums S0 = detail::split_sums(in, zero, ctx, opt);
  StarkResult r;
  r.zeta_prime_0 = detail::orbit_dirichlet_split_derivative_at_zero(S0, b) * in.sign_l0_conj() / in.index;
  r.s0 = hp::exp(r.zeta_prime_0);
  r.zeta_0 = partial_zeta_continued(in, zero, ctx, opt).value.re;
  auto f = [&](const Real& x) { return partial_zeta_continued(in, Complex(x), ctx, opt).value.re; };
  auto d = hp::numeric_derivative<Real>(f, Real(0, b), Real::from_double(0.25, b), ctx.target_abs_err, 14);
  r.zeta_prime_0_numeric = d.value;
  r.route_gap = hp::abs(r.zeta_prime_0 - d.value);
  const double gap = r.route_gap.to_double();
  if (gap > 100 * ctx.target_abs_err) throw RouteDisagreement("zeta'(0) routes disagree", gap);
  return r;
}

}  // namespace rmlab
