#pragma once

// Theta^U_{L,eta}[l0; m0](v) for a real quadratic pseudolattice: the sum over
// x in l0 + L modulo a group U = <eps> of totally positive units of
//   (eta0 sgn x' + eta1 sgn x) e^{2 pi i v |N x|} e^{-2 pi i tr(l m0') - pi i tr(l0 m0')},
// where l = x - l0.

#include <cmath>
#include <map>
#include <set>
#include <utility>

#include "rmlab/quadfield/enumerate.hpp"
#include "rmlab/theta/lattice_sum.hpp"

namespace rmlab {

struct RMThetaSpec {
  Pseudolattice L;
  QuadElem l0, m0;
  Complex eta;
  QuadElem eps;  // generator of U, > 1
  Complex v;
};

enum class OrbitEnumerator { ratio_slice, orbit_reduction };

inline Rational frac_part(const Rational& r) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return r - Rational(fl);
}

inline bool integral_trace(const QuadElem& a) { return a.trace().get_den() == 1; }

/// Conditions on eps: totally positive, eps > 1, eps (l0 + L) = l0 + L and the
/// phases tr(l m0') invariant mod Z.  Throws ConditionFailed naming the part.
inline void validate_theta_spec(const Pseudolattice& L, const QuadElem& l0, const QuadElem& m0,
                                const QuadElem& eps) {
  if (!eps.totally_positive()) throw ConditionFailed("U", "eps is not totally positive");
  if (cmp(eps, QuadElem(eps.D(), 1)) <= 0) throw ConditionFailed("U", "eps must exceed 1");
  if (!(L.same_module(L.scaled(eps)))) throw ConditionFailed("a", "eps L != L");
  const QuadElem e1 = eps - QuadElem(eps.D(), 1);
  if (!L.contains(e1 * l0)) throw ConditionFailed("a", "eps l0 - l0 not in L");
  const QuadElem mc = m0.conj();
  for (const QuadElem& l : {L.l1(), L.l2(), l0}) {
    if (!integral_trace(e1 * l * mc)) throw ConditionFailed("b", "phase not invariant under eps");
  }
}

inline void validate_theta_spec(const RMThetaSpec& s) {
  if (s.v.im.sign() <= 0) throw DomainError("theta requires Im v > 0");
  validate_theta_spec(s.L, s.l0, s.m0, s.eps);
}

/// Least power of the totally positive stabilizer of L meeting the conditions.
inline QuadElem find_theta_unit(const Pseudolattice& L, const QuadElem& l0, const QuadElem& m0, long max_power = 1000) {
  const QuadElem g = stabilizer_plus(L, fundamental_unit(L.field()));
  QuadElem p = g;
  for (long k = 1; k <= max_power; ++k, p *= g) {
    try {
      validate_theta_spec(L, l0, m0, p);
      return p;
    } catch (const ConditionFailed&) {
    }
  }
  throw ConvergenceError("no admissible unit below the power limit", 0.0);
}

namespace detail {

// 1/eps < |x / x'| <= eps, decided exactly.
inline bool in_orbit_domain(const QuadElem& x, const QuadElem& eps) {
  const QuadElem A = x * Rational(x.sign());
  const QuadElem xc = x.conj();
  const QuadElem B = xc * Rational(xc.sign());
  return (eps * A - B).sign() > 0 && (eps * B - A).sign() >= 0;
}

// Moves x into the domain by powers of eps.
inline QuadElem reduce_into_domain(QuadElem x, const QuadElem& eps) {
  const QuadElem inv = eps.conj();  // norm 1
  for (int it = 0; it < 10000; ++it) {
    if (in_orbit_domain(x, eps)) return x;
    const QuadElem A = x * Rational(x.sign());
    const QuadElem xc = x.conj();
    const QuadElem B = xc * Rational(xc.sign());
    x = (eps * B - A).sign() < 0 ? x * inv : x * eps;
  }
  throw DomainError("orbit reduction did not terminate");
}

}  // namespace detail

/// Norm cutoff X with the orbit tail below target: representatives with
/// |N| <= X number at most 2 (4 X log eps / Delta) + 8.
inline double rm_norm_cutoff(double y, double delta, double log_eps, double coef, double target, double& tail) {
  const double d = 8 * log_eps / delta;
  auto tail_from = [&](double X) {
    double s = 0;
    for (int k = 0; k < 100000; ++k) {
      double t = (d * (X + k + 1) + 8) * coef * std::exp(-2 * M_PI * y * (X + k));
      s += t;
      if (t < s * 1e-18) break;
    }
    return s;
  };
  double X = 0.5;
  while (tail_from(X) > target) X *= 1.1;
  tail = tail_from(X);
  return X;
}

/// Calls cb(x) once per U-orbit of nonzero x in l0 + L with |N x| <= X, on
/// the representative with 1/eps < |x / x'| <= eps.  Both enumerators yield the
/// same set; orbit_reduction scans a wider window and folds points back.
template <class F>
void for_each_orbit_rep(const Pseudolattice& L, const QuadElem& l0, const QuadElem& eps, const Rational& X, F&& cb,
                        OrbitEnumerator how = OrbitEnumerator::ratio_slice) {
  const EmbeddedBasis e(l0, L.l1(), L.l2());
  const double eps_d = eps.to_double(), Xd = X.get_d();
  auto point = [&](long a, long c) { return l0 + L.l1() * Rational(a) + L.l2() * Rational(c); };
  if (how == OrbitEnumerator::ratio_slice) {
    for_each_hyperbolic_point(e, Xd, 1 / eps_d, eps_d, [&](long a, long c) {
      QuadElem x = point(a, c);
      if (x.is_zero() || abs(x.norm()) > X) return;
      if (detail::in_orbit_domain(x, eps)) cb(x);
    });
  } else {
    std::set<std::pair<Rational, Rational>> seen;
    const double w = eps_d * eps_d * eps_d;
    for_each_hyperbolic_point(e, Xd, 1 / w, w, [&](long a, long c) {
      QuadElem x = point(a, c);
      if (x.is_zero() || abs(x.norm()) > X) return;
      QuadElem r = detail::reduce_into_domain(x, eps);
      if (seen.emplace(r.x(), r.y()).second) cb(r);
    });
  }
}

inline ThetaValue theta_rm(const RMThetaSpec& s, const PrecisionCtx& ctx,
                           OrbitEnumerator how = OrbitEnumerator::ratio_slice) {
  validate_theta_spec(s);
  const hp::Bits b = ctx.bits();
  ThetaValue out{Complex(b), 0, 0};
  const Real eta0 = s.eta.re, eta1 = s.eta.im;
  if (s.eta.is_zero()) return out;
  const double coef = std::fabs(eta0.to_double()) + std::fabs(eta1.to_double());
  const double y = s.v.im.to_double();
  const double delta_d = delta(s.L, hp::Bits{64}).to_double();
  const double eps_d = s.eps.to_double();
  double tail = 0;
  const double X = rm_norm_cutoff(y, delta_d, std::log(eps_d), coef, ctx.target_abs_err / 4, tail);
  out.tail_bound = tail;
  const Rational Xq(X);

  const QuadElem mc = s.m0.conj();
  const Rational t1 = (s.L.l1() * mc).trace(), t2 = (s.L.l2() * mc).trace();
  const Rational t0 = (s.l0 * mc).trace();
  const Complex twopiiv = s.v.times_i() * ctx.pi().mul_2si(1);
  std::map<Rational, Complex> gauss;  // |N| -> e^{2 pi i v |N|}
  hp::CompensatedSum<Complex> acc(b);

  auto add_point = [&](const QuadElem& x) {
    const Rational n = abs(x.norm());
    if (++out.terms > ctx.max_terms) throw ConvergenceError("theta sum exceeds max_terms", tail);
    auto it = gauss.find(n);
    if (it == gauss.end()) it = gauss.emplace(n, hp::exp(twopiiv * Real(n, b))).first;
    Real w = eta0 * x.sign_conj() + eta1 * x.sign();
    auto [a1, a2] = s.L.coordinates(x - s.l0);
    Rational ph = frac_part(-(a1 * t1 + a2 * t2) - t0 / 2);
    Complex term = it->second * w;
    if (sgn(ph) != 0) term *= hp::exp2pii(Real(ph, b));
    acc.add(term);
  };

  for_each_orbit_rep(s.L, s.l0, s.eps, Xq, add_point, how);
  out.value = acc.value();
  return out;
}

}  // namespace rmlab
