#pragma once

// Exact arithmetic in a real quadratic field K = Q(sqrt D), D > 1 squarefree.
// Elements are stored as x + y sqrt(D) with rational x, y; every sign and
// comparison is decided with integers only.

#include <gmpxx.h>

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "rmlab/numerics/real.hpp"

namespace rmlab {

using Integer = mpz_class;
using Rational = mpq_class;

inline int sgn(const Integer& z) { return mpz_sgn(z.get_mpz_t()); }
inline int sgn(const Rational& q) { return mpq_sgn(q.get_mpq_t()); }

/// floor(a / b) for b != 0.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
/// a mod b in [0, |b|).
inline Integer mod_pos(const Integer& a, const Integer& b) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}
inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}
inline Integer isqrt(const Integer& a) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
  return r;
}
inline bool is_square(const Integer& a) { return sgn(a) >= 0 && mpz_perfect_square_p(a.get_mpz_t()); }
/// n / d in canonical form (mpq_class(n, d) is not canonicalized).
inline Rational frac(const Integer& n, const Integer& d) {
  if (d == 0) throw DomainError("zero denominator");
  Rational q(n, d);
  q.canonicalize();
  return q;
}
inline Integer floor_q(const Rational& q) { return floor_div(q.get_num(), q.get_den()); }

/// Parses "p/q" or "p" into a canonical rational.
inline Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw InvalidInput("not a rational: " + s);
  if (q.get_den() == 0) throw InvalidInput("zero denominator: " + s);
  q.canonicalize();
  return q;
}
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_squarefree(long n) {
  if (n < 1) return false;
  for (long p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

/// The field datum: squarefree D and the integral basis (1, omega).
class QuadField {
 public:
  QuadField() = default;
  explicit QuadField(long D) : D_(D) {
    if (D < 2 || !is_squarefree(D)) throw InvalidInput("D must be a squarefree integer > 1");
  }
  long D() const { return D_; }
  bool one_mod_4() const { return D_ % 4 == 1; }
  /// Field discriminant.
  long disc() const { return one_mod_4() ? D_ : 4 * D_; }
  friend bool operator==(const QuadField& a, const QuadField& b) { return a.D_ == b.D_; }

 private:
  long D_ = 5;
};

/// x + y sqrt(D).
class QuadElem {
 public:
  QuadElem() = default;
  QuadElem(long D, Rational x, Rational y = 0) : D_(D), x_(std::move(x)), y_(std::move(y)) {
    x_.canonicalize();
    y_.canonicalize();
  }
  QuadElem(const QuadField& K, Rational x, Rational y = 0) : QuadElem(K.D(), std::move(x), std::move(y)) {}

  /// u + v omega in the integral basis.
  static QuadElem from_omega(const QuadField& K, Rational u, Rational v) {
    u.canonicalize();
    v.canonicalize();
    if (K.one_mod_4()) return QuadElem(K, u + v / 2, v / 2);
    return QuadElem(K, u, v);
  }
  static QuadElem omega(const QuadField& K) { return from_omega(K, 0, 1); }

  long D() const { return D_; }
  const Rational& x() const { return x_; }
  const Rational& y() const { return y_; }

  /// Coordinates (u, v) with this = u + v omega.
  std::pair<Rational, Rational> omega_coords() const {
    if (D_ % 4 == 1) {
      Rational v = 2 * y_;
      return {x_ - y_, v};
    }
    return {x_, y_};
  }
  bool is_integral() const {
    auto [u, v] = omega_coords();
    return u.get_den() == 1 && v.get_den() == 1;
  }
  bool is_rational() const { return sgn(y_) == 0; }
  bool is_zero() const { return sgn(x_) == 0 && sgn(y_) == 0; }

  QuadElem conj() const { return QuadElem(D_, x_, -y_); }
  Rational norm() const { return x_ * x_ - D_ * y_ * y_; }
  Rational trace() const { return 2 * x_; }

  /// Exact sign of x + y sqrt(D) in the embedding sqrt(D) > 0.
  int sign() const {
    const int sx = sgn(x_), sy = sgn(y_);
    if (sy == 0) return sx;
    if (sx == 0 || sx == sy) return sy;
    Rational lhs = x_ * x_;
    Rational rhs = D_ * y_ * y_;
    int c = cmp(lhs, rhs);
    return c > 0 ? sx : sy;  // c == 0 impossible for squarefree D
  }
  /// Sign in the second embedding sqrt(D) -> -sqrt(D).
  int sign_conj() const { return conj().sign(); }
  bool totally_positive() const { return sign() > 0 && sign_conj() > 0; }

  QuadElem operator-() const { return QuadElem(D_, -x_, -y_); }
  QuadElem& operator+=(const QuadElem& o) {
    check(o);
    x_ += o.x_;
    y_ += o.y_;
    return *this;
  }
  QuadElem& operator-=(const QuadElem& o) {
    check(o);
    x_ -= o.x_;
    y_ -= o.y_;
    return *this;
  }
  QuadElem& operator*=(const QuadElem& o) {
    check(o);
    Rational nx = x_ * o.x_ + D_ * y_ * o.y_;
    Rational ny = x_ * o.y_ + y_ * o.x_;
    x_ = std::move(nx);
    y_ = std::move(ny);
    return *this;
  }
  QuadElem& operator/=(const QuadElem& o) {
    check(o);
    Rational n = o.norm();
    if (sgn(n) == 0) throw DomainError("division by zero in K");
    *this *= o.conj();
    x_ /= n;
    y_ /= n;
    return *this;
  }
  QuadElem& operator*=(const Rational& q) {
    x_ *= q;
    y_ *= q;
    return *this;
  }
  friend QuadElem operator+(QuadElem a, const QuadElem& b) { return a += b; }
  friend QuadElem operator-(QuadElem a, const QuadElem& b) { return a -= b; }
  friend QuadElem operator*(QuadElem a, const QuadElem& b) { return a *= b; }
  friend QuadElem operator/(QuadElem a, const QuadElem& b) { return a /= b; }
  friend QuadElem operator*(QuadElem a, const Rational& q) { return a *= q; }
  friend QuadElem operator*(const Rational& q, QuadElem a) { return a *= q; }
  friend bool operator==(const QuadElem& a, const QuadElem& b) {
    return a.D_ == b.D_ && a.x_ == b.x_ && a.y_ == b.y_;
  }
  friend bool operator!=(const QuadElem& a, const QuadElem& b) { return !(a == b); }
  /// Compare in the first embedding.
  friend int cmp(const QuadElem& a, const QuadElem& b) { return (a - b).sign(); }

  QuadElem pow(long n) const {
    QuadElem r(D_, 1), base = *this;
    bool inv = n < 0;
    unsigned long m = inv ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    while (m) {
      if (m & 1UL) r *= base;
      base *= base;
      m >>= 1;
    }
    return inv ? QuadElem(D_, 1) / r : r;
  }

  /// Real value in the first (which = 0) or second (which = 1) embedding.
  hp::Real embed(int which, hp::Bits b) const {
    const hp::Bits wb{b.value + 8};
    hp::Real s = hp::sqrt(hp::Real(D_, wb));
    Rational t = which == 0 ? y_ : Rational(-y_);
    hp::Real r(wb);
    if (sgn(x_) * sgn(t) < 0) {
      // Cancellation: go through the norm instead.
      r = hp::Real(norm(), wb) / (hp::Real(x_, wb) - s * hp::Real(t, wb));
    } else {
      r = hp::Real(x_, wb) + s * hp::Real(t, wb);
    }
    return r.with_prec(b);
  }
  double to_double(int which = 0) const { return embed(which, hp::Bits{64}).to_double(); }

  std::string to_string() const { return x_.get_str() + (sgn(y_) < 0 ? "" : "+") + y_.get_str() + "*sqrt(" + std::to_string(D_) + ")"; }
  friend std::ostream& operator<<(std::ostream& os, const QuadElem& e) { return os << e.to_string(); }

 private:
  void check(const QuadElem& o) const {
    if (o.D_ != D_) throw DomainError("elements of different fields");
  }

  long D_ = 5;
  Rational x_ = 0;
  Rational y_ = 0;
};

/// Quadratic irrational (P + sqrt d) / Q with Q | d - P^2, the state of an
/// exact continued fraction expansion.
struct CFState {
  Integer P, Q;
  friend bool operator==(const CFState& a, const CFState& b) { return a.P == b.P && a.Q == b.Q; }
  friend bool operator<(const CFState& a, const CFState& b) {
    return a.P < b.P || (a.P == b.P && a.Q < b.Q);
  }
};

/// Exact continued fraction of an irrational element of K.
class QuadCF {
 public:
  explicit QuadCF(const QuadElem& theta) : D_(theta.D()) {
    if (theta.is_rational()) throw DomainError("continued fraction of a rational element");
    // theta = x + y sqrt D = (P + sqrt d)/Q with d = D m^2.
    const Rational& x = theta.x();
    const Rational& y = theta.y();
    Integer den = x.get_den() * y.get_den() / gcd(x.get_den(), y.get_den());
    // theta = (X + Y sqrt D)/den with integers X, Y.
    Integer X = x.get_num() * (den / x.get_den());
    Integer Y = y.get_num() * (den / y.get_den());
    int s = sgn(Y);
    Integer aY = abs(Y);
    // (X + Y sqrtD)/den = (sX + sqrt(D Y^2)) / (s den)
    P_ = s * X;
    Q_ = s * den;
    d_ = D_ * aY * aY;
    // Make Q | d - P^2 by scaling with |Q|.
    Integer r = d_ - P_ * P_;
    if (r % Q_ != 0) {
      Integer aq = abs(Q_);
      P_ *= aq;
      Q_ *= aq;
      d_ *= aq * aq;
    }
    sd_ = isqrt(d_);
    m_ = isqrt(d_ / D_);
  }

  const Integer& d() const { return d_; }
  CFState state() const { return {P_, Q_}; }
  /// Current complete quotient as an element of K.
  QuadElem value() const { return QuadElem(D_, Rational(P_, Q_), Rational(m_, Q_)); }

  /// Partial quotient of the current state, then advance.
  Integer next() {
    Integer a = sgn(Q_) > 0 ? floor_div(P_ + sd_, Q_) : floor_div(P_ + sd_ + 1, Q_);
    Integer P2 = a * Q_ - P_;
    Integer Q2 = (d_ - P2 * P2) / Q_;
    P_ = std::move(P2);
    Q_ = std::move(Q2);
    return a;
  }

 private:
  long D_;
  Integer P_, Q_, d_, sd_, m_;
};

/// Units of O_K.  eps0 > 1 is fundamental, eps_plus the smallest totally
/// positive unit > 1.  The eps_f block describes the units = 1 mod a modulus
/// f as filled in by unit_mod_f; for f = (1) it equals eps0.
struct UnitData {
  QuadElem eps0;
  int norm_sign = 1;
  QuadElem eps_plus;
  QuadElem eps_f;              // generator +-eps0^k of {units = 1 mod f} / torsion
  long eps_f_exponent = 1;     // k
  bool eps_f_totally_positive = false;
  QuadElem eps_f_plus;         // eps_f or eps_f^2
  bool minus_one_congruent = true;  // -1 = 1 mod f, i.e. f | 2
};

namespace detail {
inline UnitData make_unit_data(QuadElem eps, int norm_sign) {
  UnitData u;
  u.eps0 = eps;
  u.norm_sign = norm_sign;
  u.eps_plus = norm_sign > 0 ? eps : eps * eps;
  u.eps_f = eps;
  u.eps_f_totally_positive = eps.totally_positive();
  u.eps_f_plus = u.eps_f_totally_positive ? eps : eps * eps;
  return u;
}
}  // namespace detail

/// Fundamental unit via the continued fraction of omega, with a Pell search
/// fallback bounded by `pell_limit`.
inline UnitData fundamental_unit(const QuadField& K, long pell_limit = 10000000) {
  const QuadElem om = QuadElem::omega(K);
  QuadCF cf(om);
  // Convergents p_k / q_k of omega; p_{-1} = 1, p_{-2} = 0, q_{-1} = 0, q_{-2} = 1.
  Integer p1 = 1, p2 = 0, q1 = 0, q2 = 1;
  for (int k = 0; k < 100000; ++k) {
    Integer a = cf.next();
    Integer pk = a * p1 + p2;
    Integer qk = a * q1 + q2;
    p2 = std::move(p1);
    q2 = std::move(q1);
    p1 = std::move(pk);
    q1 = std::move(qk);
    QuadElem cand = QuadElem::from_omega(K, Rational(p1), Rational(-q1));
    Rational n = cand.norm();
    if (n == 1 || n == -1) {
      QuadElem eps = cand.conj();
      if (eps.sign() < 0) eps = -eps;
      if (cmp(eps, QuadElem(K, 1)) < 0) eps = QuadElem(K, 1) / eps;
      if (eps != QuadElem(K, 1)) return detail::make_unit_data(eps, n == 1 ? 1 : -1);
    }
  }
  // Pell search: smallest y with x^2 - D y^2 = +-1 (or +-4 when D = 1 mod 4).
  const long sc = K.one_mod_4() ? 4 : 1;
  for (long y = 1; y <= pell_limit; ++y) {
    Integer Dy2 = Integer(K.D()) * y * y;
    for (long s : {-1L, 1L}) {
      Integer x2 = Dy2 + s * sc;
      if (is_square(x2)) {
        Integer x = isqrt(x2);
        QuadElem eps = sc == 4 ? QuadElem(K, Rational(x, 2), Rational(y, 2)) : QuadElem(K, Rational(x), Rational(y));
        return detail::make_unit_data(eps, static_cast<int>(s));
      }
    }
  }
  throw ConvergenceError("fundamental_unit: no unit found", 0.0);
}

}  // namespace rmlab
