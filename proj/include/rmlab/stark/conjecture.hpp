#pragma once

// Numerical report on the Stark units E(c) of the ray classes modulo f.

#include <optional>
#include <string>
#include <vector>

#include "rmlab/stark/ray_class.hpp"
#include "rmlab/stark/recognize.hpp"
#include "rmlab/stark/zeta.hpp"

namespace rmlab {

/// (L, l0) = (f a0', N a0) has b = a0' and (l0) b^{-1} = a0.
inline StarkInput pair_for_ideal(const QuadIdeal& f, const QuadIdeal& a0) {
  const QuadField& K = f.field();
  return validate_pair(f * a0.conj(), QuadElem(K, Rational(a0.norm())));
}

// I = (n) J for a rational integer n; such pairs give identical sums.
inline bool rational_multiple(const QuadIdeal& I, const QuadIdeal& J) {
  const Rational r = frac(I.norm(), J.norm());
  if (r.get_den() != 1) return false;
  const Integer n = sqrt(r.get_num());
  return n * n == r.get_num() && I == J * QuadIdeal::principal(QuadElem(I.field(), Rational(n)));
}

struct ClassStark {
  int index = 0;
  QuadIdeal representative;
  StarkResult stark;
};

struct CoefficientReport {
  int degree = 0;  // coefficient of X^degree in prod (X - E(c))
  Real value;
  std::optional<Recognized> recognized;
};

struct ConjectureReport {
  long D = 0;
  QuadIdeal modulus;
  RayVariant variant = RayVariant::narrow;
  std::vector<ClassStark> classes;
  std::vector<CoefficientReport> coefficients;
  // Class invariance: a second pair in class `invariance_class`.
  int invariance_class = 0;
  QuadIdeal second_representative;
  Real second_s0;
  Real invariance_gap;
  std::optional<bool> unit_norm;  // |N(constant term)| = 1, when recognized
};

struct ConjectureOptions {
  RayVariant variant = RayVariant::narrow;
  RecognizeOptions recognize;
  int invariance_class = 0;
  long search_norm = 2000;
};

inline ConjectureReport conjecture_check(const QuadField& K, const QuadIdeal& f, const PrecisionCtx& ctx,
                                         const ConjectureOptions& opt = {}) {
  ConjectureReport rep;
  rep.D = K.D();
  rep.modulus = f;
  rep.variant = opt.variant;
  RayClassGroup G = ray_classes(f, opt.variant);
  const hp::Bits b = ctx.bits();
  // Another ideal in the chosen class, coprime to f f'.
  rep.invariance_class = opt.invariance_class;
  const QuadIdeal& first = G.classes.at(opt.invariance_class).representative;
  const QuadIdeal ff = f * f.conj();
  bool found = false;
  for (long n = first.norm().get_si(); n <= opt.search_norm && !found; ++n) {
    for (const QuadIdeal& I : ideals_of_norm(K, n)) {
      if (I == first || !I.coprime_to(ff) || rational_multiple(I, first)) continue;
      if (ray_class_index(G, I) != opt.invariance_class) continue;
      rep.second_representative = I;
      found = true;
      break;
    }
  }
  if (!found) throw BoundExceeded("no second ideal in the class below the search bound");
  for (std::size_t k = 0; k < G.order(); ++k) {
    const QuadIdeal& a0 = G.classes[k].representative;
    rep.classes.push_back({static_cast<int>(k), a0, stark_number(pair_for_ideal(f, a0), ctx)});
  }
  // Polynomial prod (X - E(c)) by repeated multiplication.
  std::vector<Real> poly{Real(1, b)};
  for (const ClassStark& c : rep.classes) {
    std::vector<Real> next(poly.size() + 1, Real(0, b));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * c.stark.s0;
    }
    poly = std::move(next);
  }
  for (std::size_t i = 0; i < poly.size(); ++i) {
    rep.coefficients.push_back({static_cast<int>(i), poly[i], recognize_quadratic(poly[i], K.D(), opt.recognize)});
  }
  if (rep.coefficients[0].recognized) {
    Rational n = rep.coefficients[0].recognized->value(K.D()).norm();
    rep.unit_norm = abs(n) == 1;
  }
  rep.second_s0 = stark_number(pair_for_ideal(f, rep.second_representative), ctx).s0;
  rep.invariance_gap = hp::abs(rep.second_s0 - rep.classes[opt.invariance_class].stark.s0);
  return rep;
}

}  // namespace rmlab
