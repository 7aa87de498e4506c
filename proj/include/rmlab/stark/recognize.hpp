#pragma once

// Recognition of reals as (a + b sqrt D) / c with bounded height, by an
// integer relation search (LLL) on (x, 1, sqrt D).

#include <algorithm>
#include <climits>
#include <optional>
#include <vector>

#include "rmlab/numerics/real.hpp"
#include "rmlab/quadfield/field.hpp"

namespace rmlab {

struct Recognized {
  Integer a, b, c;  // (a + b sqrt D) / c, c > 0, gcd 1
  double residual = 0;
  long height() const {
    Integer h = abs(a);
    if (abs(b) > h) h = abs(b);
    if (c > h) h = c;
    return h.fits_slong_p() ? h.get_si() : LONG_MAX;
  }
  QuadElem value(long D) const { return QuadElem(D, Rational(a, c), Rational(b, c)); }
};

struct RecognizeOptions {
  long max_height = 1000;
  double threshold = 1e-6;
};

namespace detail {

using IntVec = std::vector<Integer>;

inline Rational dotq(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

/// LLL with delta = 3/4 in exact rational arithmetic; rows are the basis.
inline void lll_reduce(std::vector<IntVec>& B) {
  const std::size_t n = B.size();
  auto as_q = [](const IntVec& v) {
    std::vector<Rational> q(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) q[i] = Rational(v[i]);
    return q;
  };
  std::vector<std::vector<Rational>> Bs(n);
  std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n));
  std::vector<Rational> norm(n);
  auto gram_schmidt = [&]() {
    for (std::size_t i = 0; i < n; ++i) {
      Bs[i] = as_q(B[i]);
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = dotq(as_q(B[i]), Bs[j]) / norm[j];
        for (std::size_t k = 0; k < Bs[i].size(); ++k) Bs[i][k] -= mu[i][j] * Bs[j][k];
      }
      norm[i] = dotq(Bs[i], Bs[i]);
    }
  };
  gram_schmidt();
  std::size_t k = 1;
  for (int guard = 0; k < n && guard < 100000; ++guard) {
    for (std::size_t jj = k; jj-- > 0;) {
      Rational m = mu[k][jj];
      Integer r;
      mpz_fdiv_q(r.get_mpz_t(), Integer(2 * m.get_num() + m.get_den()).get_mpz_t(), Integer(2 * m.get_den()).get_mpz_t());
      if (r != 0) {
        for (std::size_t c = 0; c < B[k].size(); ++c) B[k][c] -= r * B[jj][c];
        gram_schmidt();
      }
    }
    if (norm[k] >= (Rational(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * norm[k - 1]) {
      ++k;
    } else {
      std::swap(B[k], B[k - 1]);
      gram_schmidt();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
}

inline std::optional<Recognized> candidate(long D, const hp::Real& x, const Integer& c, const Integer& na,
                                           const Integer& nb) {
  // c x - a - b sqrt D = 0 with (c, -a, -b) = (c, na, nb).
  if (c == 0) return std::nullopt;
  Recognized r{-na, -nb, c};
  if (r.c < 0) {
    r.a = -r.a;
    r.b = -r.b;
    r.c = -r.c;
  }
  Integer g = gcd(gcd(r.a, r.b), r.c);
  if (g > 1) {
    r.a /= g;
    r.b /= g;
    r.c /= g;
  }
  const hp::Bits bits{std::max<long>(x.prec(), 64)};
  hp::Real v = (hp::Real(r.a, bits) + hp::Real(r.b, bits) * hp::sqrt(hp::Real(D, bits))) / hp::Real(r.c, bits);
  r.residual = hp::abs(v - x).to_double();
  return r;
}

}  // namespace detail

/// Smallest-height (a + b sqrt D) / c within `threshold` of x, or nothing.
/// Scales C = 10^k turn (x, 1, sqrt D) into integer columns; each reduced
/// basis row yields a candidate.
inline std::optional<Recognized> recognize_quadratic(const hp::Real& x, long D, const RecognizeOptions& opt = {}) {
  if (x.is_zero()) return Recognized{0, 0, 1, 0.0};
  const hp::Bits bits{std::max<long>(x.prec(), 64)};
  const hp::Real sd = hp::sqrt(hp::Real(D, bits));
  std::optional<Recognized> best;
  const int max_k = std::min(30, static_cast<int>(0.3 * static_cast<double>(bits.value)));
  for (int k = 3; k <= max_k; ++k) {
    hp::Real C = hp::pow(hp::Real(10, bits), static_cast<long>(k));
    auto to_int = [](const hp::Real& r) {
      Integer z;
      mpfr_get_z(z.get_mpz_t(), hp::round(r).raw(), MPFR_RNDN);
      return z;
    };
    std::vector<detail::IntVec> B = {{1, 0, 0, to_int(C * x)}, {0, 1, 0, to_int(C)}, {0, 0, 1, to_int(C * sd)}};
    detail::lll_reduce(B);
    for (const auto& row : B) {
      auto r = detail::candidate(D, x, row[0], row[1], row[2]);
      if (!r || r->height() > opt.max_height || !(r->residual < opt.threshold)) continue;
      if (!best || r->height() < best->height()) best = r;
    }
  }
  return best;
}

}  // namespace rmlab
