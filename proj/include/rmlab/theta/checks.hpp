#pragma once

// Numerical identities linking the two theta functions: Fourier pairs,
// Poisson summation, transformation under v -> -1/v, and the average of the
// complex theta over the closed geodesic.

#include <vector>

#include "rmlab/numerics/quadrature.hpp"
#include "rmlab/theta/rm_theta.hpp"

namespace rmlab {

struct IdentityCheck {
  Complex lhs, rhs;
  Real residual;  // |lhs - rhs|
};

inline IdentityCheck make_check(Complex lhs, Complex rhs) {
  Real r = hp::abs(lhs - rhs);
  return {std::move(lhs), std::move(rhs), std::move(r)};
}

// ---------------------------------------------------------------- Fourier

/// Closed form of the transform of (x . eta) e^{pi i v |x|^2} at y:
/// (i / v^2) (y . i conj(eta)) e^{-pi i |y|^2 / v}.
inline Complex fourier_linear_closed(const Complex& eta, const Complex& v, const Complex& y, hp::Bits b) {
  const Real pi = hp::const_pi(b);
  const Complex ieta = eta.conj().times_i();
  Complex g = hp::exp(-(hp::I(b) * pi * norm2(y)) / v);
  return hp::I(b) / (v * v) * Complex(scalar_product(y, ieta)) * g;
}

/// Closed form for the plain Gaussian e^{pi i v |x|^2}: (i / v) e^{-pi i |y|^2 / v}.
inline Complex fourier_plain_closed(const Complex& v, const Complex& y, hp::Bits b) {
  const Real pi = hp::const_pi(b);
  return hp::I(b) / v * hp::exp(-(hp::I(b) * pi * norm2(y)) / v);
}

namespace detail {

// int p(s) e^{pi i v (s + a)^2} e^{-2 pi i s c} ds over the real line, p(s) = 1
// or s + a, by composite Gauss-Legendre on a window outside which the
// Gaussian is below the target.
inline Complex gaussian_moment(const Complex& v, const Real& a, const Real& c, bool linear, const PrecisionCtx& ctx) {
  const hp::Bits b = ctx.bits();
  const double y = v.im.to_double();
  const double R = std::sqrt(-std::log(ctx.target_abs_err * 1e-3) / (M_PI * y)) + 1;
  const Real pi = ctx.pi();
  const Complex ipiv = v.times_i() * pi;
  auto f = [&](const Real& u) {
    Real s = u - a;  // u = s + a
    Complex g = hp::exp(ipiv * (u * u));
    g *= hp::exp2pii(-(s * c));
    if (linear) g *= u;
    return g;
  };
  const Real lo = Real::from_double(-R, b), hi = Real::from_double(R, b);
  const int panels = std::max(8, static_cast<int>(std::ceil(2 * R * (1 + std::fabs(v.re.to_double()) * R + std::fabs(c.to_double())))));
  return hp::integrate<Complex>(f, lo, hi, ctx.target_abs_err * 1e-2, 20, panels, panels * 64).value;
}

}  // namespace detail

struct FourierPair {
  Complex closed_form, quadrature;
};

/// Transform of x -> f(x + x0) e^{-2 pi i (x . y0) - pi i (x0 . y0)} at y, with
/// f(x) = (x . eta) e^{pi i v |x|^2}, by the tensor product rule on V = R^2
/// evaluated in factored form; closed form by the shift rule
/// fhat(y + y0) e^{2 pi i (x0 . y) + pi i (x0 . y0)}.
inline FourierPair fourier_shifted_pair(const Complex& eta, const Complex& v, const Complex& x0, const Complex& y0,
                                        const Complex& y, const PrecisionCtx& ctx) {
  if (v.im.sign() <= 0) throw DomainError("Fourier pair requires Im v > 0");
  const hp::Bits b = ctx.bits();
  // (x . y) = x.re y.im + x.im y.re: coordinate x.re pairs with y.im, x.im with y.re.
  const Real c0 = y.im + y0.im, c1 = y.re + y0.re;
  Complex B0 = detail::gaussian_moment(v, x0.re, c0, false, ctx);
  Complex A0 = detail::gaussian_moment(v, x0.re, c0, true, ctx);
  Complex B1 = detail::gaussian_moment(v, x0.im, c1, false, ctx);
  Complex A1 = detail::gaussian_moment(v, x0.im, c1, true, ctx);
  // (x + x0) . eta = (x.re + x0.re) eta.im + (x.im + x0.im) eta.re
  Complex quad = A0 * B1 * eta.im + B0 * A1 * eta.re;
  quad *= hp::exp2pii(-hp::ldexp(scalar_product(x0, y0), -1));
  Complex closed = fourier_linear_closed(eta, v, y + y0, b);
  closed *= hp::exp2pii(scalar_product(x0, y) + hp::ldexp(scalar_product(x0, y0), -1));
  return {closed, quad};
}

inline FourierPair fourier_gaussian_pair(const Complex& eta, const Complex& v, const Complex& y, const PrecisionCtx& ctx) {
  const Complex z(ctx.bits());
  return fourier_shifted_pair(eta, v, z, z, y, ctx);
}

// ---------------------------------------------------------------- Poisson

/// Both sides of the shifted Poisson formula for the Gaussian family:
///   sum_Lambda f(lambda0 + lambda) e^{-2 pi i (lambda . mu0) - pi i (lambda0 . mu0)}
///     = covol^{-1} sum_{Lambda^!} fhat(mu0 + mu) e^{2 pi i (lambda0 . mu) + pi i (lambda0 . mu0)}.
inline IdentityCheck poisson_check(const ComplexLattice& lattice, GaussianKind kind, const Complex& eta,
                                   const Complex& v, const Complex& lambda0, const Complex& mu0,
                                   const PrecisionCtx& ctx) {
  const hp::Bits b = ctx.bits();
  ThetaValue lhs = gaussian_lattice_sum({lattice, lambda0, mu0, eta, v, kind}, ctx);
  const Complex vd = -Complex(Real(1, b)) / v;
  const Complex etad = eta.conj().times_i();
  ThetaValue rhs = gaussian_lattice_sum({lattice.dual(), mu0, -lambda0, etad, vd, kind}, ctx);
  Complex factor = hp::I(b) / v;
  if (kind == GaussianKind::linear) factor /= v;
  factor /= lattice.covolume();
  return make_check(lhs.value, rhs.value * factor);
}

// ------------------------------------------------- transformation v -> -1/v

struct HeckeThetaInput {
  Pseudolattice L;
  QuadElem l0, m0;
  Real t;
  Complex eta, v;
};

/// theta_{Lambda_t, eta}[lambda0; mu0](v) against
/// i / (Delta(L) v^2) theta_{Lambda_t(L^?), i conj eta}[mu0; -lambda0](-1/v).
inline IdentityCheck functional_equation_theta(const HeckeThetaInput& in, const PrecisionCtx& ctx) {
  const hp::Bits b = ctx.bits();
  ComplexThetaSpec s = hecke_theta_spec(in.L, in.l0, in.m0, in.t, in.eta, in.v, b);
  ThetaValue lhs = theta_complex(s, ctx);
  ComplexThetaSpec d = hecke_theta_spec(dual(in.L), in.m0, -in.l0, in.t, in.eta.conj().times_i(),
                                        -Complex(Real(1, b)) / in.v, b);
  ThetaValue rhs = theta_complex(d, ctx);
  Complex factor = hp::I(b) / (in.v * in.v) / delta(in.L, b);
  return make_check(lhs.value, rhs.value * factor);
}

/// The dual configuration appearing on the right of the transformation.
inline RMThetaSpec dual_theta_spec(const RMThetaSpec& s) {
  const hp::Bits b = s.v.bits();
  return {dual(s.L), s.m0, -s.l0, s.eta.conj().times_i(), s.eps, -Complex(Real(1, b)) / s.v};
}

/// Theta^U_{L,eta}[l0; m0](v) against 1 / (Delta(L) v) Theta^U_{L^?, i conj eta}[m0; -l0](-1/v).
inline IdentityCheck functional_equation_Theta(const RMThetaSpec& s, const PrecisionCtx& ctx) {
  const hp::Bits b = ctx.bits();
  ThetaValue lhs = theta_rm(s, ctx);
  ThetaValue rhs = theta_rm(dual_theta_spec(s), ctx);
  Complex factor = Complex(Real(1, b)) / s.v / delta(s.L, b);
  return make_check(lhs.value, rhs.value * factor);
}

// ------------------------------------------------------- geodesic average

struct HeckeAverage {
  Complex direct;    // Theta^U(v)
  Complex averaged;  // sqrt(-i v) int theta dt
  Real residual;
  int nodes = 0;
  std::vector<double> history;  // residual after each doubling
};

/// sqrt(-i v) * integral over t in [-log eps, log eps] of the complex theta on
/// Lambda_t.  The integrand is smooth and periodic, so the trapezoid rule
/// converges spectrally; nodes double until successive estimates agree to
/// `stable`.
inline HeckeAverage hecke_average_check(const RMThetaSpec& s, const PrecisionCtx& ctx, double stable = -1,
                                        int max_nodes = 4096) {
  validate_theta_spec(s);
  const hp::Bits b = ctx.bits();
  if (stable < 0) stable = ctx.target_abs_err * 100;
  HeckeAverage out;
  out.direct = theta_rm(s, ctx).value;
  Real loge = hp::log(s.eps.embed(0, b));
  const Real period = hp::ldexp(loge, 1);
  const Complex root = hp::branch_sqrt_neg_iv(s.v);
  auto theta_at = [&](const Real& t) {
    return theta_complex(hecke_theta_spec(s.L, s.l0, s.m0, t, s.eta, s.v, b), ctx).value;
  };
  // Trapezoid sum over n equally spaced nodes; doubling evaluates only the new midpoints.
  int n = 8;
  hp::CompensatedSum<Complex> total(b);
  for (int k = 0; k < n; ++k) total.add(theta_at(-loge + period * k / n));
  Complex prev = total.value() * (period / n) * root;
  out.history.push_back(hp::abs(prev - out.direct).to_double());
  double gap = INFINITY;
  while (2 * n <= max_nodes) {
    for (int k = 0; k < n; ++k) total.add(theta_at(-loge + period * (2 * k + 1) / (2 * n)));
    n *= 2;
    Complex cur = total.value() * (period / n) * root;
    gap = hp::abs(cur - prev).to_double();
    prev = std::move(cur);
    out.history.push_back(hp::abs(prev - out.direct).to_double());
    if (gap <= stable) break;
  }
  out.nodes = n;
  if (gap > stable) throw ConvergenceError("geodesic average did not stabilize", gap);
  out.averaged = prev;
  out.residual = hp::abs(out.averaged - out.direct);
  return out;
}

}  // namespace rmlab
