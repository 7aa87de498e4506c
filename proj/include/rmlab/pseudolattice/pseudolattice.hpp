#pragma once

// Pseudolattices L = Z l1 + Z l2 inside a real quadratic field.

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rmlab/quadfield/ideal.hpp"

namespace rmlab {

struct IntMat2 {
  Integer a = 1, b = 0, c = 0, d = 1;

  Integer det() const { return a * d - b * c; }
  static IntMat2 identity() { return {}; }
  friend IntMat2 operator*(const IntMat2& x, const IntMat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const IntMat2& x, const IntMat2& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  /// Inverse for |det| = 1.
  IntMat2 inverse() const {
    Integer dt = det();
    if (dt != 1 && dt != -1) throw DomainError("matrix is not invertible over Z");
    return {d * dt, -b * dt, -c * dt, a * dt};
  }
  /// Fractional linear action (a x + b) / (c x + d).
  QuadElem act(const QuadElem& x) const {
    const long D = x.D();
    QuadElem num = x * Rational(a) + QuadElem(D, Rational(b));
    QuadElem den = x * Rational(c) + QuadElem(D, Rational(d));
    return num / den;
  }
  Integer max_abs() const { return std::max({abs(a), abs(b), abs(c), abs(d)}); }
};

struct OrderData {
  Integer conductor;
  QuadElem basis1, basis2;  // 1 and f omega
};

class Pseudolattice {
 public:
  Pseudolattice() = default;
  Pseudolattice(const QuadField& K, QuadElem l1, QuadElem l2, int orientation = 1)
      : K_(K), l1_(std::move(l1)), l2_(std::move(l2)), orientation_(orientation) {
    if (l1_.D() != K.D() || l2_.D() != K.D()) throw InvalidInput("generators from a different field");
    if (orientation != 1 && orientation != -1) throw InvalidInput("orientation must be +1 or -1");
    if (cross().is_zero()) throw InvalidInput("generators are rationally dependent");
  }
  /// The ideal I as a pseudolattice on its HNF basis.
  static Pseudolattice from_ideal(const QuadIdeal& I) { return {I.field(), I.basis(0), I.basis(1)}; }

  const QuadField& field() const { return K_; }
  const QuadElem& l1() const { return l1_; }
  const QuadElem& l2() const { return l2_; }
  int orientation() const { return orientation_; }
  /// theta = l2 / l1.
  QuadElem theta() const { return l2_ / l1_; }

  /// l1 l2' - l1' l2, a rational multiple of sqrt D.
  QuadElem cross() const { return l1_ * l2_.conj() - l1_.conj() * l2_; }

  /// (a, b) with x = a l1 + b l2, rational.
  std::pair<Rational, Rational> coordinates(const QuadElem& x) const {
    const QuadElem dl = cross();
    QuadElem a = (x * l2_.conj() - x.conj() * l2_) / dl;
    QuadElem b = (l1_ * x.conj() - l1_.conj() * x) / dl;
    return {a.x(), b.x()};
  }
  bool contains(const QuadElem& x) const {
    auto [a, b] = coordinates(x);
    return a.get_den() == 1 && b.get_den() == 1;
  }
  /// Other is a sublattice of this.
  bool contains(const Pseudolattice& o) const { return contains(o.l1_) && contains(o.l2_); }
  /// Same Z-module (generators may differ).
  bool same_module(const Pseudolattice& o) const { return contains(o) && o.contains(*this); }

  Pseudolattice scaled(const QuadElem& lambda) const {
    return {K_, l1_ * lambda, l2_ * lambda, orientation_ * (lambda.sign() > 0 ? 1 : -1)};
  }

 private:
  QuadField K_;
  QuadElem l1_{5, 1}, l2_{5, 0, 1};
  int orientation_ = 1;
};

/// Delta(L) = |l1 l2' - l1' l2| at the requested precision.
inline hp::Real delta(const Pseudolattice& L, hp::Bits b) { return hp::abs(L.cross().embed(0, b)); }

/// Primitive integer form A X^2 + B X + C (A > 0) vanishing at theta.
inline std::array<Integer, 3> primitive_form(const QuadElem& theta) {
  if (theta.is_rational()) throw InvalidInput("theta is rational");
  Rational t = theta.trace(), n = theta.norm();
  Integer den = t.get_den() * n.get_den() / gcd(t.get_den(), n.get_den());
  Integer A = den, B = -t.get_num() * (den / t.get_den()), C = n.get_num() * (den / n.get_den());
  Integer g = gcd(gcd(A, B), C);
  return {A / g, B / g, C / g};
}

inline OrderData endomorphism_ring(const Pseudolattice& L) {
  auto [A, B, C] = primitive_form(L.theta());
  Integer disc = B * B - 4 * A * C;
  const QuadField& K = L.field();
  Integer q = disc / K.disc();
  if (q * K.disc() != disc || !is_square(q)) throw DomainError("form discriminant is not f^2 disc(K)");
  Integer f = isqrt(q);
  return {f, QuadElem(K, 1), QuadElem::omega(K) * Rational(f)};
}

/// Trace dual {m : tr(l' m) in Z for all l in L}, on the dual basis.
inline Pseudolattice dual(const Pseudolattice& L) {
  const long D = L.field().D();
  // tr(l' (p + q sqrt D)) = 2 (lx p - D ly q) for l = lx + ly sqrt D.
  auto row = [&](const QuadElem& l) { return std::pair<Rational, Rational>{2 * l.x(), -2 * D * l.y()}; };
  auto [a11, a12] = row(L.l1());
  auto [a21, a22] = row(L.l2());
  Rational det = a11 * a22 - a12 * a21;
  // Columns of the inverse matrix give m1, m2.
  QuadElem m1(D, a22 / det, -a21 / det);
  QuadElem m2(D, -a12 / det, a11 / det);
  return {L.field(), m1, m2, L.orientation()};
}

/// New generators (c l2 + d l1, a l2 + b l1); orientation times sgn det.
inline Pseudolattice apply_morphism(const IntMat2& g, const Pseudolattice& L) {
  Integer dt = g.det();
  if (dt == 0) throw InvalidInput("morphism with zero determinant");
  QuadElem n1 = L.l2() * Rational(g.c) + L.l1() * Rational(g.d);
  QuadElem n2 = L.l2() * Rational(g.a) + L.l1() * Rational(g.b);
  return {L.field(), n1, n2, L.orientation() * sgn(dt)};
}

struct IsoResult {
  bool isomorphic = false;
  std::optional<IntMat2> witness;  // apply_morphism(witness, L1) is a scalar multiple of L2
};

namespace detail {

// Complete quotients x_n of theta with M_n = (p_{n-1} p_{n-2}; q_{n-1} q_{n-2}),
// so that theta = M_n x_n.  Runs until the first repetition, then `extra`
// further periods.
struct CFOrbit {
  std::vector<QuadElem> x;
  std::vector<IntMat2> M;
  std::size_t pre = 0, period = 0;
};

inline CFOrbit cf_orbit(const QuadElem& theta, std::size_t extra = 2, std::size_t max_steps = 100000) {
  CFOrbit o;
  QuadCF cf(theta);
  std::map<CFState, std::size_t> seen;
  IntMat2 M = IntMat2::identity();
  std::size_t stop = max_steps;
  for (std::size_t n = 0; n < stop; ++n) {
    CFState s = cf.state();
    if (o.period == 0) {
      auto it = seen.find(s);
      if (it != seen.end()) {
        o.pre = it->second;
        o.period = n - it->second;
        stop = n + extra * o.period;
      } else {
        seen.emplace(s, n);
      }
    }
    if (n >= stop) break;
    o.x.push_back(cf.value());
    o.M.push_back(M);
    Integer a = cf.next();
    M = M * IntMat2{a, 1, 1, 0};
  }
  if (o.period == 0) throw ConvergenceError("continued fraction did not become periodic", 0.0);
  return o;
}

}  // namespace detail

/// GL(2,Z) equivalence of l2/l1, decided by matching complete quotients of the
/// continued fractions.  When oriented the witness must have determinant
/// orientation(L1) orientation(L2), i.e. SL(2,Z) for the default tags.  The
/// witness with the smallest entries among the matches found is returned.
inline IsoResult is_isomorphic(const Pseudolattice& L1, const Pseudolattice& L2, bool oriented = true) {
  if (!(L1.field() == L2.field())) throw InvalidInput("pseudolattices in different fields");
  const detail::CFOrbit o1 = detail::cf_orbit(L1.theta());
  const detail::CFOrbit o2 = detail::cf_orbit(L2.theta());
  const int want = L1.orientation() * L2.orientation();
  std::optional<IntMat2> best;
  for (std::size_t i = 0; i < o1.x.size(); ++i) {
    for (std::size_t j = 0; j < o2.x.size(); ++j) {
      if (o1.x[i] != o2.x[j]) continue;
      IntMat2 g = o2.M[j] * o1.M[i].inverse();
      if (oriented && sgn(g.det()) != want) continue;
      if (!best || g.max_abs() < best->max_abs()) best = g;
    }
  }
  if (!best) return {};
  if (apply_morphism(*best, L1).theta() != L2.theta()) throw DomainError("isomorphism witness failed verification");
  return {true, best};
}

/// K_0 shadow of the quantum torus: Z + Z theta.  The positive cone is
/// {m + n theta > 0}.
inline Pseudolattice k0_pseudolattice(const QuadElem& theta) {
  if (theta.is_rational()) throw InvalidInput("rational theta gives a degenerate pseudolattice");
  return {QuadField(theta.D()), QuadElem(theta.D(), 1), theta, 1};
}
inline bool in_positive_cone(const Pseudolattice& L, const Integer& m, const Integer& n) {
  return (L.l1() * Rational(m) + L.l2() * Rational(n)).sign() > 0;
}

struct AutomorphismGroup {
  QuadElem generator;  // fundamental unit of End L, > 1
  long eps0_power = 1;
  int torsion_order = 2;
};

/// Aut L = <generator> x {+-1}.
inline AutomorphismGroup automorphism_group(const Pseudolattice& L, const UnitData& units) {
  const OrderData R = endomorphism_ring(L);
  QuadElem p = units.eps0;
  for (long k = 1; k < 1000000; ++k, p *= units.eps0) {
    auto [u, v] = p.omega_coords();
    if (mod_pos(v.get_num(), R.conductor) != 0) continue;
    if (!L.contains(p * L.l1()) || !L.contains(p * L.l2())) throw DomainError("order unit does not fix L");
    return {p, k, 2};
  }
  throw ConvergenceError("no unit in the order found", 0.0);
}
inline AutomorphismGroup automorphism_group(const Pseudolattice& L) {
  return automorphism_group(L, fundamental_unit(L.field()));
}

/// Smallest totally positive unit > 1 stabilizing L.
inline QuadElem stabilizer_plus(const Pseudolattice& L, const UnitData& units) {
  QuadElem g = automorphism_group(L, units).generator;
  return g.totally_positive() ? g : g * g;
}

}  // namespace rmlab
