#pragma once

// Integral ideals of O_K in Hermite normal form  A Z + (B + C omega) Z  with
// A, C > 0, C | A, C | B, 0 <= B < A.

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "rmlab/quadfield/enumerate.hpp"

namespace rmlab {

namespace detail {

struct IVec {
  Integer u, v;
};

inline Integer extgcd(const Integer& a, const Integer& b, Integer& x, Integer& y) {
  Integer g;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// HNF of the Z-span of vectors in Z^2 (coordinates in the basis 1, omega).
inline void hnf2(const std::vector<IVec>& vs, Integer& A, Integer& B, Integer& C) {
  Integer pu = 0, pv = 0, g = 0;
  for (const auto& w : vs) {
    if (w.v == 0) {
      g = gcd(g, w.u);
      continue;
    }
    if (pv == 0) {
      pu = w.u;
      pv = w.v;
      continue;
    }
    Integer x, y;
    Integer d = extgcd(pv, w.v, x, y);
    // Unimodular change: new pivot with v = d, and one vector with v = 0.
    Integer nu = x * pu + y * w.u;
    Integer zu = (w.v / d) * pu - (pv / d) * w.u;
    g = gcd(g, zu);
    pu = nu;
    pv = d;
  }
  if (pv == 0 || g == 0) throw DomainError("module is not of full rank");
  if (pv < 0) {
    pv = -pv;
    pu = -pu;
  }
  A = abs(g);
  C = pv;
  B = mod_pos(pu, A);
}

}  // namespace detail

class QuadIdeal {
 public:
  QuadIdeal() = default;

  /// Ideal from an HNF triple; validates closure under multiplication by omega.
  QuadIdeal(const QuadField& K, Integer A, Integer B, Integer C) : K_(K), A_(A), B_(B), C_(C) {
    if (A <= 0 || C <= 0 || A % C != 0 || B % C != 0 || B < 0 || B >= A)
      throw InvalidInput("not a Hermite normal form triple");
    if (!contains(QuadElem::omega(K) * basis(0)) || !contains(QuadElem::omega(K) * basis(1)))
      throw InvalidInput("HNF triple is not an ideal of O_K");
  }

  static QuadIdeal unit(const QuadField& K) { return QuadIdeal(K, 1, 0, 1); }

  /// Ideal generated by integral elements.
  static QuadIdeal generated(const QuadField& K, const std::vector<QuadElem>& gens) {
    std::vector<detail::IVec> vs;
    const QuadElem om = QuadElem::omega(K);
    for (const auto& g : gens) {
      if (!g.is_integral()) throw DomainError("ideal generator is not integral");
      for (const QuadElem& h : {g, g * om}) {
        auto [u, v] = h.omega_coords();
        vs.push_back({u.get_num(), v.get_num()});
      }
    }
    Integer A, B, C;
    detail::hnf2(vs, A, B, C);
    QuadIdeal I;
    I.K_ = K;
    I.A_ = A;
    I.B_ = B;
    I.C_ = C;
    return I;
  }
  static QuadIdeal principal(const QuadElem& g) { return generated(QuadField(g.D()), {g}); }

  const QuadField& field() const { return K_; }
  const Integer& A() const { return A_; }
  const Integer& B() const { return B_; }
  const Integer& C() const { return C_; }
  Integer norm() const { return A_ * C_; }
  bool is_unit() const { return A_ == 1 && C_ == 1; }

  /// Z-basis: A and B + C omega.
  QuadElem basis(int i) const {
    if (i == 0) return QuadElem(K_, Rational(A_));
    return QuadElem::from_omega(K_, Rational(B_), Rational(C_));
  }
  std::vector<QuadElem> basis() const { return {basis(0), basis(1)}; }

  bool contains(const QuadElem& x) const {
    if (x.D() != K_.D() || !x.is_integral()) return false;
    auto [u, v] = x.omega_coords();
    const Integer& vi = v.get_num();
    if (vi % C_ != 0) return false;
    Integer k = vi / C_;
    return (u.get_num() - k * B_) % A_ == 0;
  }
  /// Congruence a = b mod this, for integral a, b.
  bool congruent(const QuadElem& a, const QuadElem& b) const { return contains(a - b); }

  friend bool operator==(const QuadIdeal& I, const QuadIdeal& J) {
    return I.K_ == J.K_ && I.A_ == J.A_ && I.B_ == J.B_ && I.C_ == J.C_;
  }
  friend bool operator!=(const QuadIdeal& I, const QuadIdeal& J) { return !(I == J); }
  friend bool operator<(const QuadIdeal& I, const QuadIdeal& J) {
    return std::tie(I.A_, I.C_, I.B_) < std::tie(J.A_, J.C_, J.B_);
  }

  friend QuadIdeal operator*(const QuadIdeal& I, const QuadIdeal& J) {
    std::vector<QuadElem> g;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) g.push_back(I.basis(i) * J.basis(j));
    return generated(I.K_, g);
  }
  /// I + J, the gcd.
  friend QuadIdeal operator+(const QuadIdeal& I, const QuadIdeal& J) {
    return generated(I.K_, {I.basis(0), I.basis(1), J.basis(0), J.basis(1)});
  }
  QuadIdeal conj() const { return generated(K_, {basis(0).conj(), basis(1).conj()}); }
  QuadIdeal pow(long k) const {
    QuadIdeal r = unit(K_);
    for (long i = 0; i < k; ++i) r = r * *this;
    return r;
  }
  /// J divides I  iff  I is contained in J.
  bool divides(const QuadIdeal& I) const { return contains(I.basis(0)) && contains(I.basis(1)); }
  bool coprime_to(const QuadIdeal& J) const { return (*this + J).is_unit(); }
  /// I / J for J | I, via J J' = (N J).
  QuadIdeal divided_by(const QuadIdeal& J) const {
    if (!J.divides(*this)) throw DomainError("ideal quotient is not integral");
    QuadIdeal P = *this * J.conj();
    Rational n(J.norm());
    return generated(K_, {P.basis(0) * (1 / n), P.basis(1) * (1 / n)});
  }

  /// Canonical representative of an integral element modulo this ideal.
  QuadElem reduce(const QuadElem& x) const {
    auto [u, v] = x.omega_coords();
    if (u.get_den() != 1 || v.get_den() != 1) throw DomainError("reduce: element not integral");
    Integer vv = v.get_num(), uu = u.get_num();
    Integer q = floor_div(vv, C_);
    vv -= q * C_;
    uu -= q * B_;
    uu = mod_pos(uu, A_);
    return QuadElem::from_omega(K_, Rational(uu), Rational(vv));
  }

  /// All residues i + j omega, 0 <= i < A, 0 <= j < C.
  std::vector<QuadElem> residues() const {
    std::vector<QuadElem> out;
    for (Integer j = 0; j < C_; ++j)
      for (Integer i = 0; i < A_; ++i) out.push_back(QuadElem::from_omega(K_, Rational(i), Rational(j)));
    return out;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "[" << A_ << "," << B_ << "," << C_ << "]";
    return os.str();
  }

 private:
  QuadField K_;
  Integer A_ = 1, B_ = 0, C_ = 1;
};

/// Integral ideals of norm n.
inline std::vector<QuadIdeal> ideals_of_norm(const QuadField& K, long n) {
  std::vector<QuadIdeal> out;
  const long m = K.one_mod_4() ? (K.D() - 1) / 4 : 0;
  for (long c = 1; c * c <= n; ++c) {
    if (n % (c * c) != 0) continue;
    const long a = n / (c * c);
    for (long b = 0; b < a; ++b) {
      // a Z + (b + omega) Z is an ideal iff a | N(b + omega).
      Integer nb = K.one_mod_4() ? Integer(Integer(b) * b + b - m) : Integer(Integer(b) * b - K.D());
      if (mod_pos(nb, a) != 0) continue;
      out.emplace_back(K, Integer(c * a), Integer(c * b), Integer(c));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// All integral ideals with norm <= bound, ordered by norm then HNF.
inline std::vector<QuadIdeal> ideals_up_to(const QuadField& K, long bound) {
  std::vector<QuadIdeal> out;
  for (long n = 1; n <= bound; ++n) {
    auto v = ideals_of_norm(K, n);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

/// Order of (O_K / f)^*.
inline long unit_residue_count(const QuadIdeal& f) {
  if (f.norm() > 1000000) throw BoundExceeded("modulus too large for residue enumeration");
  long count = 0;
  for (const auto& r : f.residues()) {
    if (r.is_zero() && !f.is_unit()) continue;
    if (f.is_unit() || QuadIdeal::generated(f.field(), {r}).coprime_to(f)) ++count;
  }
  return count;
}

/// Unit data relative to the modulus f: the least k with +-eps0^k = 1 mod f.
inline UnitData unit_mod_f(const QuadField& K, const QuadIdeal& f, const UnitData& base) {
  UnitData u = base;
  const QuadElem one(K, 1);
  u.minus_one_congruent = f.contains(QuadElem(K, 2));
  const long limit = 4 * unit_residue_count(f) + 4;
  QuadElem p = base.eps0;
  for (long k = 1; k <= limit; ++k, p *= base.eps0) {
    for (int s : {1, -1}) {
      QuadElem c = s > 0 ? p : -p;
      if (!f.congruent(c, one)) continue;
      u.eps_f = c;
      u.eps_f_exponent = k;
      u.eps_f_totally_positive = c.totally_positive();
      u.eps_f_plus = u.eps_f_totally_positive ? c : c * c;
      return u;
    }
  }
  throw ConvergenceError("unit_mod_f: no unit congruent to 1 found", 0.0);
}
inline UnitData unit_mod_f(const QuadField& K, const QuadIdeal& f) { return unit_mod_f(K, f, fundamental_unit(K)); }

/// Some generator of I when I is principal.  The search covers one period of
/// |x / x'| under the fundamental unit, where a generator must exist.
inline std::optional<QuadElem> principal_generator(const QuadIdeal& I, const UnitData& units) {
  const QuadField& K = I.field();
  const QuadElem zero(K, 0);
  EmbeddedBasis e(zero, I.basis(0), I.basis(1));
  const double eps = units.eps0.to_double();
  const Integer n = I.norm();
  std::optional<QuadElem> found;
  for_each_hyperbolic_point(e, n.get_d(), 1.0 / eps, eps, [&](long a, long b) {
    if (found) return;
    QuadElem x = I.basis(0) * Rational(a) + I.basis(1) * Rational(b);
    if (x.is_zero()) return;
    Rational nx = x.norm();
    if (abs(nx) == Rational(n)) found = x;
  });
  return found;
}

}  // namespace rmlab
