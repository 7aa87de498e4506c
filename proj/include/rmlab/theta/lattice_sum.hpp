#pragma once

// Gaussian sums over shifted complex lattices,
//   sum_lambda c(lambda0 + lambda) e^{pi i v |lambda0 + lambda|^2}
//              e^{-2 pi i (lambda . mu0) - pi i (lambda0 . mu0)},
// with c = 1 or c(x) = (x . eta).

#include <cmath>
#include <vector>

#include "rmlab/hecke_flow/hecke_flow.hpp"
#include "rmlab/numerics/summation.hpp"

namespace rmlab {

struct ThetaValue {
  Complex value;
  double tail_bound = 0;  // estimate of the omitted terms
  long terms = 0;
};

enum class GaussianKind { plain, linear };

struct GaussianSumSpec {
  ComplexLattice lattice;
  Complex lambda0, mu0;
  Complex eta;  // used by the linear kind
  Complex v;
  GaussianKind kind = GaussianKind::linear;
};

namespace detail {

struct Vec2 {
  double x, y;
};
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

// Lagrange reduction; returns the reduced pair as integer combinations of g1, g2.
struct Reduced {
  long a11, a12, a21, a22;  // u1 = a11 g1 + a12 g2, u2 = a21 g1 + a22 g2
};
inline Reduced lagrange_reduce(Vec2 g1, Vec2 g2) {
  Reduced r{1, 0, 0, 1};
  Vec2 u = g1, w = g2;
  if (dot(u, u) > dot(w, w)) {
    std::swap(u, w);
    r = {0, 1, 1, 0};
  }
  for (int it = 0; it < 10000; ++it) {
    double mu = std::round(dot(u, w) / dot(u, u));
    if (mu != 0.0) {
      long m = static_cast<long>(mu);
      w = {w.x - mu * u.x, w.y - mu * u.y};
      r.a21 -= m * r.a11;
      r.a22 -= m * r.a12;
    }
    if (dot(w, w) >= dot(u, u)) break;
    std::swap(u, w);
    std::swap(r.a11, r.a21);
    std::swap(r.a12, r.a22);
  }
  return r;
}

}  // namespace detail

/// Radius R with the tail sum over |lambda0 + lambda| > R below `target`.
/// Shell bound: at most pi (r + 1 + rho)^2 / covol points with radius < r + 1,
/// each term at most (r+1)^p |eta| e^{-pi y r^2}.
inline double gaussian_radius(double y, double covol, double rho, double coef, int p, double target,
                              double& tail) {
  auto tail_from = [&](double R) {
    double s = 0;
    for (int k = 0; k < 400; ++k) {
      double r = R + k;
      double t = M_PI * (r + 1 + rho) * (r + 1 + rho) / covol * coef * std::pow(r + 1, p) * std::exp(-M_PI * y * r * r);
      s += t;
      if (t < s * 1e-18) break;
    }
    return s;
  };
  double R = 1;
  while (tail_from(R) > target) R += 0.25;
  tail = tail_from(R);
  return R;
}

inline ThetaValue gaussian_lattice_sum(const GaussianSumSpec& sp, const PrecisionCtx& ctx) {
  const hp::Bits b = ctx.bits();
  if (sp.v.im.sign() <= 0) throw DomainError("theta requires Im v > 0");
  const double y = sp.v.im.to_double();
  const double covol = sp.lattice.covolume().to_double();
  const detail::Vec2 g1{sp.lattice.g1.re.to_double(), sp.lattice.g1.im.to_double()};
  const detail::Vec2 g2{sp.lattice.g2.re.to_double(), sp.lattice.g2.im.to_double()};
  const detail::Reduced red = detail::lagrange_reduce(g1, g2);
  const Complex u1 = sp.lattice.g1 * red.a11 + sp.lattice.g2 * red.a12;
  const Complex u2 = sp.lattice.g1 * red.a21 + sp.lattice.g2 * red.a22;
  const detail::Vec2 U1{u1.re.to_double(), u1.im.to_double()}, U2{u2.re.to_double(), u2.im.to_double()};
  const double rho = std::sqrt(dot(U1, U1)) + std::sqrt(dot(U2, U2));
  const double coef = sp.kind == GaussianKind::linear ? hp::abs(sp.eta).to_double() : 1.0;
  const int p = sp.kind == GaussianKind::linear ? 1 : 0;

  ThetaValue out{Complex(b), 0, 0};
  if (sp.kind == GaussianKind::linear && sp.eta.is_zero()) return out;
  double tail = 0;
  const double R = gaussian_radius(y, covol, rho, std::max(coef, 1e-300), p, ctx.target_abs_err / 4, tail);
  out.tail_bound = tail;

  const Real pi = hp::const_pi(b);
  const Complex ipiv = sp.v.times_i() * pi;  // pi i v
  const Complex& l0 = sp.lambda0;
  const Complex& m0 = sp.mu0;
  const Real c0 = scalar_product(l0, m0);
  const detail::Vec2 L0{l0.re.to_double(), l0.im.to_double()};
  const double uu = dot(U1, U1);
  const double h2 = covol / std::sqrt(uu);  // distance between rows parallel to u1
  const long bmax = static_cast<long>(std::ceil((R + 1) / h2)) + 1;
  const double R2 = (R + 1e-9) * (R + 1e-9);
  // Components of u2 and lambda0 orthogonal to u1 locate the row of each b.
  const Real pm1 = scalar_product(u1, m0), pm2 = scalar_product(u2, m0);
  hp::CompensatedSum<Complex> acc(b);
  for (long j = -bmax; j <= bmax; ++j) {
    const detail::Vec2 c{L0.x + j * U2.x, L0.y + j * U2.y};
    const double cu = dot(c, U1) / uu;
    const double perp2 = dot(c, c) - cu * cu * uu;
    if (perp2 > R2) continue;
    const double half = std::sqrt(std::max(0.0, R2 - perp2) / uu);
    const long imin = static_cast<long>(std::floor(-cu - half)) - 1;
    const long imax = static_cast<long>(std::ceil(-cu + half)) + 1;
    for (long i = imin; i <= imax; ++i) {
      const detail::Vec2 z{c.x + i * U1.x, c.y + i * U1.y};
      if (dot(z, z) > R2) continue;
      if (++out.terms > ctx.max_terms) throw ConvergenceError("theta sum exceeds max_terms", tail);
      const Complex lam = u1 * i + u2 * j;
      const Complex x = l0 + lam;
      Complex term = hp::exp(ipiv * norm2(x));
      // -(lambda . mu0) - (lambda0 . mu0)/2
      Real ph = -(pm1 * i + pm2 * j) - hp::ldexp(c0, -1);
      term *= hp::exp2pii(ph);
      if (sp.kind == GaussianKind::linear) term *= Complex(scalar_product(x, sp.eta));
      acc.add(term);
    }
  }
  out.value = acc.value();
  return out;
}

struct ComplexThetaSpec {
  ComplexLattice lattice;
  Complex lambda0, mu0, eta, v;
};

/// theta_{Lambda,eta}[lambda0; mu0](v).
inline ThetaValue theta_complex(const ComplexThetaSpec& s, const PrecisionCtx& ctx) {
  return gaussian_lattice_sum({s.lattice, s.lambda0, s.mu0, s.eta, s.v, GaussianKind::linear}, ctx);
}

/// The same sum on the Hecke lattice Lambda_t(L) with shifts built from l0, m0.
inline ComplexThetaSpec hecke_theta_spec(const Pseudolattice& L, const QuadElem& l0, const QuadElem& m0,
                                         const Real& t, const Complex& eta, const Complex& v, hp::Bits b) {
  HeckeLattice H = hecke_lattice(L, t, b);
  ShiftPair s = shift_pair(l0, m0, t, b);
  return {H.lattice(), s.lambda0, s.mu0, eta, v};
}

}  // namespace rmlab
