#pragma once

// Arbitrary precision real scalar on top of MPFR.  Every value carries its own
// precision; binary operations produce the larger of the operand precisions,
// so no global state is involved and values may be used from several threads.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdlib>
#include <ostream>
#include <string>
#include <utility>

#include "rmlab/numerics/errors.hpp"

namespace rmlab::hp {

struct Bits {
  long value;
};

class Real {
 public:
  Real() {
    mpfr_init2(v_, 64);
    mpfr_set_zero(v_, 1);
  }
  explicit Real(Bits b) {
    mpfr_init2(v_, clamp(b.value));
    mpfr_set_zero(v_, 1);
  }
  Real(int x, Bits b) : Real(b) { mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(long x, Bits b) : Real(b) { mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(long long x, Bits b) : Real(b) { mpfr_set_sj(v_, x, MPFR_RNDN); }
  Real(const mpz_class& x, Bits b) : Real(b) { mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
  Real(const mpq_class& x, Bits b) : Real(b) { mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }

  static Real from_double(double x, Bits b) {
    Real r(b);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }
  static Real from_string(const std::string& s, Bits b) {
    Real r(b);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
      throw InvalidInput("not a decimal number: " + s);
    return r;
  }

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  long prec() const { return static_cast<long>(mpfr_get_prec(v_)); }
  Bits bits() const { return Bits{prec()}; }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  /// Same value rounded to a different precision.
  Real with_prec(Bits b) const {
    Real r(b);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  mpz_class to_mpz_round() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
  }
  mpz_class to_mpz_floor() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
    return z;
  }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  /// Binary exponent e with |x| in [2^(e-1), 2^e); very negative for zero.
  long exponent() const { return is_zero() ? -(1L << 40) : static_cast<long>(mpfr_get_exp(v_)); }

  Real operator-() const {
    Real r(bits());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  Real& operator+=(const Real& o) {
    widen(o);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(const Real& o) {
    widen(o);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(const Real& o) {
    widen(o);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(const Real& o) {
    widen(o);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  template <std::integral I>
  Real& operator+=(I x) {
    mpfr_add_si(v_, v_, static_cast<long>(x), MPFR_RNDN);
    return *this;
  }
  template <std::integral I>
  Real& operator-=(I x) {
    mpfr_sub_si(v_, v_, static_cast<long>(x), MPFR_RNDN);
    return *this;
  }
  template <std::integral I>
  Real& operator*=(I x) {
    mpfr_mul_si(v_, v_, static_cast<long>(x), MPFR_RNDN);
    return *this;
  }
  template <std::integral I>
  Real& operator/=(I x) {
    mpfr_div_si(v_, v_, static_cast<long>(x), MPFR_RNDN);
    return *this;
  }
  Real& operator*=(double x) {
    mpfr_mul_d(v_, v_, x, MPFR_RNDN);
    return *this;
  }
  Real& operator+=(double x) {
    mpfr_add_d(v_, v_, x, MPFR_RNDN);
    return *this;
  }
  Real& mul_2si(long e) {
    mpfr_mul_2si(v_, v_, e, MPFR_RNDN);
    return *this;
  }

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  template <std::integral I>
  friend Real operator+(Real a, I b) { return a += b; }
  template <std::integral I>
  friend Real operator+(I b, Real a) { return a += b; }
  template <std::integral I>
  friend Real operator-(Real a, I b) { return a -= b; }
  template <std::integral I>
  friend Real operator-(I b, const Real& a) {
    Real r(a.bits());
    mpfr_si_sub(r.v_, static_cast<long>(b), a.v_, MPFR_RNDN);
    return r;
  }
  template <std::integral I>
  friend Real operator*(Real a, I b) { return a *= b; }
  template <std::integral I>
  friend Real operator*(I b, Real a) { return a *= b; }
  template <std::integral I>
  friend Real operator/(Real a, I b) { return a /= b; }
  template <std::integral I>
  friend Real operator/(I b, const Real& a) {
    Real r(a.bits());
    mpfr_si_div(r.v_, static_cast<long>(b), a.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(Real a, double b) { return a *= b; }
  friend Real operator*(double b, Real a) { return a *= b; }

  friend int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_); }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_); }
  friend bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) < 0; }
  friend bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) > 0; }
  friend bool operator<=(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) <= 0; }
  friend bool operator>=(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) >= 0; }

  /// Scientific decimal string with `digits` significant digits, e.g. "1.25e-3".
  std::string to_string(int digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    if (mpfr_zero_p(v_)) return "0";
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", std::max(digits - 1, 0), v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }
  /// All digits carried by the precision.
  std::string to_string() const { return to_string(full_digits(prec())); }

  static int full_digits(long bits) {
    return static_cast<int>(std::ceil(static_cast<double>(bits) * 0.30102999566398120)) + 1;
  }

  friend std::ostream& operator<<(std::ostream& os, const Real& x) {
    return os << x.to_string(static_cast<int>(os.precision()));
  }

 private:
  static mpfr_prec_t clamp(long b) {
    return static_cast<mpfr_prec_t>(std::clamp<long>(b, MPFR_PREC_MIN, 1L << 24));
  }
  void widen(const Real& o) {
    if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
  }

  mpfr_t v_;
};

#define RMLAB_HP_UNARY(name, fn)          \
  inline Real name(const Real& x) {       \
    Real r(x.bits());                     \
    fn(r.raw(), x.raw(), MPFR_RNDN);      \
    return r;                             \
  }
RMLAB_HP_UNARY(sqrt, mpfr_sqrt)
RMLAB_HP_UNARY(exp, mpfr_exp)
RMLAB_HP_UNARY(expm1, mpfr_expm1)
RMLAB_HP_UNARY(log, mpfr_log)
RMLAB_HP_UNARY(log1p, mpfr_log1p)
RMLAB_HP_UNARY(sin, mpfr_sin)
RMLAB_HP_UNARY(cos, mpfr_cos)
RMLAB_HP_UNARY(tan, mpfr_tan)
RMLAB_HP_UNARY(atan, mpfr_atan)
RMLAB_HP_UNARY(sinh, mpfr_sinh)
RMLAB_HP_UNARY(cosh, mpfr_cosh)
RMLAB_HP_UNARY(abs, mpfr_abs)
RMLAB_HP_UNARY(gamma, mpfr_gamma)
RMLAB_HP_UNARY(digamma, mpfr_digamma)
RMLAB_HP_UNARY(zeta, mpfr_zeta)
RMLAB_HP_UNARY(eint, mpfr_eint)
#undef RMLAB_HP_UNARY

inline Real floor(const Real& x) {
  Real r(x.bits());
  mpfr_floor(r.raw(), x.raw());
  return r;
}
inline Real round(const Real& x) {
  Real r(x.bits());
  mpfr_round(r.raw(), x.raw());
  return r;
}
/// ln|Gamma(x)|.
inline Real lngamma(const Real& x) {
  Real r(x.bits());
  int s = 0;
  mpfr_lgamma(r.raw(), &s, x.raw(), MPFR_RNDN);
  return r;
}
inline Real atan2(const Real& y, const Real& x) {
  Real r(Bits{std::max(x.prec(), y.prec())});
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}
inline Real hypot(const Real& x, const Real& y) {
  Real r(Bits{std::max(x.prec(), y.prec())});
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}
inline Real pow(const Real& x, const Real& y) {
  Real r(Bits{std::max(x.prec(), y.prec())});
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}
inline Real pow(const Real& x, long n) {
  Real r(x.bits());
  mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
  return r;
}
inline void sin_cos(const Real& x, Real& s, Real& c) {
  s = Real(x.bits());
  c = Real(x.bits());
  mpfr_sin_cos(s.raw(), c.raw(), x.raw(), MPFR_RNDN);
}
inline Real ldexp(Real x, long e) { return std::move(x.mul_2si(e)); }
inline Real min(const Real& a, const Real& b) { return a < b ? a : b; }
inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }

inline Real const_pi(Bits b) {
  Real r(b);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}
inline Real const_euler(Bits b) {
  Real r(b);
  mpfr_const_euler(r.raw(), MPFR_RNDN);
  return r;
}
inline Real const_log2(Bits b) {
  Real r(b);
  mpfr_const_log2(r.raw(), MPFR_RNDN);
  return r;
}
/// 2^e at precision b.
inline Real pow2(long e, Bits b) {
  Real r(1, b);
  return ldexp(std::move(r), e);
}

}  // namespace rmlab::hp

namespace rmlab {

/// Working precision and absolute error target shared by a computation.
struct PrecisionCtx {
  long work_bits = 128;
  double target_abs_err = 1e-30;
  long max_terms = 50000000;

  PrecisionCtx() = default;
  PrecisionCtx(long bits, double err) : work_bits(bits), target_abs_err(err) {
    if (bits < 64) throw InvalidInput("work_bits must be at least 64");
    if (!(err > 0.0)) throw InvalidInput("target_abs_err must be positive");
  }
  /// Context whose default error target sits a few bits above rounding level.
  static PrecisionCtx with_bits(long bits) {
    return PrecisionCtx(bits, std::ldexp(1.0, -static_cast<int>(bits) + 8));
  }

  hp::Bits bits() const { return hp::Bits{work_bits}; }
  hp::Real real(long x) const { return hp::Real(x, bits()); }
  hp::Real real(const mpq_class& q) const { return hp::Real(q, bits()); }
  hp::Real parse(const std::string& s) const { return hp::Real::from_string(s, bits()); }
  hp::Real pi() const { return hp::const_pi(bits()); }
  /// Unit roundoff 2^-work_bits.
  double eps() const { return std::ldexp(1.0, -static_cast<int>(work_bits)); }
  PrecisionCtx scaled(double factor) const {
    PrecisionCtx c(static_cast<long>(std::ceil(static_cast<double>(work_bits) * factor)), target_abs_err);
    c.max_terms = max_terms;
    return c;
  }
  PrecisionCtx with_error(double err) const {
    PrecisionCtx c(work_bits, err);
    c.max_terms = max_terms;
    return c;
  }
};

}  // namespace rmlab
