#pragma once

// Ray class groups I(f) / S(f) of a real quadratic field, from explicit
// representatives and an exact equivalence test.

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "rmlab/quadfield/ideal.hpp"

namespace rmlab {

enum class RayVariant { wide, narrow };

inline std::string to_string(RayVariant v) { return v == RayVariant::wide ? "wide" : "narrow"; }

struct RayClass {
  QuadIdeal modulus;
  QuadIdeal representative;
  RayVariant ray_variant = RayVariant::narrow;
};

struct RayClassGroup {
  QuadIdeal modulus;
  RayVariant variant = RayVariant::narrow;
  UnitData units;
  std::vector<RayClass> classes;        // classes[0] is the principal ray class
  std::vector<std::vector<int>> table;  // table[i][j] = class of rep_i rep_j
  std::vector<int> inverse;
  long expected_order = 0;

  std::size_t order() const { return classes.size(); }
};

namespace detail {

// Units +-eps0^k with 0 <= k < period cover O^* modulo the units = 1 mod f
// (and totally positive in the narrow case).
inline long unit_image_size(const QuadIdeal& f, const UnitData& u, RayVariant v) {
  std::set<std::tuple<Rational, Rational, int, int>> seen;
  const QuadElem one(f.field(), 1);
  QuadElem p = one;
  const long limit = 8 * unit_residue_count(f) + 8;
  for (long k = 0; k < limit; ++k, p *= u.eps0) {
    for (int s : {1, -1}) {
      QuadElem c = s > 0 ? p : -p;
      QuadElem r = f.reduce(c);
      int s1 = v == RayVariant::narrow ? c.sign() : 0, s2 = v == RayVariant::narrow ? c.sign_conj() : 0;
      seen.emplace(r.x(), r.y(), s1, s2);
    }
  }
  return static_cast<long>(seen.size());
}

inline long class_number(const QuadField& K, const UnitData& u);

}  // namespace detail

/// alpha = 1 mod* f (alpha = beta / n with beta integral, n coprime to f).
inline bool ray_equivalent(const QuadIdeal& I, const QuadIdeal& J, const QuadIdeal& f, RayVariant v,
                           const UnitData& u) {
  // I J^{-1} = (beta) / N(J), beta a generator of I J'.
  const QuadIdeal P = I * J.conj();
  auto g = principal_generator(P, u);
  if (!g) return false;
  const QuadElem NJ(I.field(), Rational(J.norm()));
  const long limit = 8 * unit_residue_count(f) + 8;
  QuadElem p = *g;
  for (long k = 0; k < limit; ++k, p *= u.eps0) {
    for (int s : {1, -1}) {
      QuadElem c = s > 0 ? p : -p;
      if (v == RayVariant::narrow && !c.totally_positive()) continue;
      if (f.congruent(c, NJ)) return true;
    }
  }
  return false;
}

namespace detail {

inline long class_number(const QuadField& K, const UnitData& u) {
  const QuadIdeal one = QuadIdeal::unit(K);
  const long mink = static_cast<long>(std::floor(std::sqrt(static_cast<double>(K.disc())) / 2));
  std::vector<QuadIdeal> reps;
  for (const QuadIdeal& I : ideals_up_to(K, std::max(1L, mink))) {
    bool found = false;
    for (const QuadIdeal& R : reps) {
      if (ray_equivalent(I, R, one, RayVariant::wide, u)) {
        found = true;
        break;
      }
    }
    if (!found) reps.push_back(I);
  }
  return static_cast<long>(reps.size());
}

}  // namespace detail

/// h phi(f) 2^r / [O^* : O^*_{f,1}] with r = 2 for the narrow ray.
inline long ray_class_order(const QuadIdeal& f, RayVariant v, const UnitData& u) {
  const long h = detail::class_number(f.field(), u);
  const long phi = unit_residue_count(f);
  const long signs = v == RayVariant::narrow ? 4 : 1;
  long num = h * phi * signs;
  long den = detail::unit_image_size(f, u, v);
  if (num % den != 0) throw DomainError("ray class order is not an integer");
  return num / den;
}

/// Enumerates ideals coprime to f f' by increasing norm until every class has
/// a representative, then verifies the multiplication table.
inline RayClassGroup ray_classes(const QuadIdeal& f, RayVariant variant = RayVariant::narrow, long max_order = 64,
                                 long max_norm = 20000) {
  const QuadField& K = f.field();
  RayClassGroup G;
  G.modulus = f;
  G.variant = variant;
  G.units = fundamental_unit(K);
  G.expected_order = ray_class_order(f, variant, G.units);
  if (G.expected_order > max_order) throw BoundExceeded("ray class group larger than the configured bound");
  const QuadIdeal ff = f * f.conj();
  auto class_of = [&](const QuadIdeal& I) -> int {
    for (std::size_t k = 0; k < G.classes.size(); ++k) {
      if (ray_equivalent(I, G.classes[k].representative, f, variant, G.units)) return static_cast<int>(k);
    }
    return -1;
  };
  for (long n = 1; n <= max_norm && static_cast<long>(G.classes.size()) < G.expected_order; ++n) {
    for (const QuadIdeal& I : ideals_of_norm(K, n)) {
      if (!I.coprime_to(ff)) continue;
      if (class_of(I) < 0) G.classes.push_back({f, I, variant});
    }
  }
  if (static_cast<long>(G.classes.size()) != G.expected_order) throw BoundExceeded("ray class enumeration did not close");
  const std::size_t m = G.classes.size();
  G.table.assign(m, std::vector<int>(m, -1));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      int k = class_of(G.classes[i].representative * G.classes[j].representative);
      if (k < 0) throw BoundExceeded("product of representatives outside the enumerated classes");
      G.table[i][j] = k;
    }
  // Group axioms on the table.
  for (std::size_t i = 0; i < m; ++i) {
    if (G.table[0][i] != static_cast<int>(i)) throw DomainError("class of (1) is not the identity");
  }
  G.inverse.assign(m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      if (G.table[i][j] == 0) G.inverse[i] = static_cast<int>(j);
    if (G.inverse[i] < 0) throw DomainError("class without inverse");
    for (std::size_t j = 0; j < m; ++j) {
      if (G.table[i][j] != G.table[j][i]) throw DomainError("class table not commutative");
      for (std::size_t k = 0; k < m; ++k) {
        if (G.table[G.table[i][j]][k] != G.table[i][G.table[j][k]]) throw DomainError("class table not associative");
      }
    }
  }
  return G;
}

/// Index of the class of I (coprime to f f') in G.
inline int ray_class_index(const RayClassGroup& G, const QuadIdeal& I) {
  for (std::size_t k = 0; k < G.classes.size(); ++k) {
    if (ray_equivalent(I, G.classes[k].representative, G.modulus, G.variant, G.units)) return static_cast<int>(k);
  }
  throw DomainError("ideal not in any enumerated class");
}

}  // namespace rmlab
