#pragma once

// The Hecke family of complex lattices Lambda_t(L) = { l e^{t/2} + i l' e^{-t/2} }.

#include "rmlab/numerics/complex.hpp"
#include "rmlab/pseudolattice/pseudolattice.hpp"

namespace rmlab {

using hp::Complex;
using hp::Real;

/// (x . y) = x0 y1 + x1 y0 = Im(x y).
inline Real scalar_product(const Complex& x, const Complex& y) { return x.re * y.im + x.im * y.re; }

/// l e^{t/2} + i l' e^{-t/2}.
inline Complex lambda_t(const QuadElem& l, const Real& t, hp::Bits b) {
  Real h = hp::ldexp(t, -1);
  Real e = hp::exp(h.with_prec(b));
  return {l.embed(0, b) * e, l.embed(1, b) / e};
}

/// Generator pair of a complex lattice.
struct ComplexLattice {
  Complex g1, g2;

  Real covolume() const { return hp::abs(g1.re * g2.im - g2.re * g1.im); }
  Complex point(long a, long b) const { return g1 * a + g2 * b; }
  /// Dual generators for the pairing (x . y): (g_i . h_j) = delta_ij.
  ComplexLattice dual() const {
    // (g . h) = g.re h.im + g.im h.re is linear in h = (h.re, h.im) with row (g.im, g.re).
    const Real& a11 = g1.im;
    const Real& a12 = g1.re;
    const Real& a21 = g2.im;
    const Real& a22 = g2.re;
    Real det = a11 * a22 - a12 * a21;
    if (det.is_zero()) throw DomainError("degenerate lattice");
    Complex h1(a22 / det, -a21 / det);
    Complex h2(-a12 / det, a11 / det);
    return {h1, h2};
  }
};

struct HeckeLattice {
  Pseudolattice base;
  Real t;
  Complex gen1, gen2;

  ComplexLattice lattice() const { return {gen1, gen2}; }
};

inline HeckeLattice hecke_lattice(const Pseudolattice& L, const Real& t, hp::Bits b) {
  HeckeLattice H{L, t, lambda_t(L.l1(), t, b), lambda_t(L.l2(), t, b)};
  if (H.lattice().covolume().is_zero()) throw DomainError("Hecke lattice degenerated");
  return H;
}

struct ShiftPair {
  Complex lambda0, mu0;
};

inline ShiftPair shift_pair(const QuadElem& l0, const QuadElem& m0, const Real& t, hp::Bits b) {
  return {lambda_t(l0, t, b), lambda_t(m0, t, b)};
}

/// Length of the closed geodesic: 2 log eps_+, with eps_+ the totally positive
/// generator of the units stabilizing L.
inline Real geodesic_period(const Pseudolattice& L, hp::Bits b) {
  QuadElem e = stabilizer_plus(L, fundamental_unit(L.field()));
  Real r = hp::log(e.embed(0, b));
  return r.mul_2si(1);
}

}  // namespace rmlab
