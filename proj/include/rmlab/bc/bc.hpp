#pragma once

// Bost-Connes system at finite truncation: the representation on l^2(N*),
// its relations, and the Gibbs states on e(gamma).

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "rmlab/numerics/errors.hpp"
#include "rmlab/numerics/special.hpp"

namespace rmlab {

using hp::Complex;
using hp::Real;

/// gamma reduced into [0, 1).
inline mpq_class mod_one(mpq_class g) {
  g.canonicalize();
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), g.get_num_mpz_t(), g.get_den_mpz_t());
  mpq_class r = g - mpq_class(fl);
  r.canonicalize();
  return r;
}

struct BCGenerator {
  enum class Kind { mu, mu_star, e };
  Kind kind = Kind::e;
  long n = 1;
  mpq_class gamma = 0;

  static BCGenerator mu(long n) { return make(Kind::mu, n); }
  static BCGenerator mu_star(long n) { return make(Kind::mu_star, n); }
  static BCGenerator e(const mpq_class& g) {
    BCGenerator x;
    x.gamma = mod_one(g);
    return x;
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::mu: return "mu_" + std::to_string(n);
      case Kind::mu_star: return "mu*_" + std::to_string(n);
      default: return "e(" + gamma.get_str() + ")";
    }
  }

 private:
  static BCGenerator make(Kind k, long n) {
    if (n < 1) throw InvalidInput("mu_n needs n >= 1");
    BCGenerator x;
    x.kind = k;
    x.n = n;
    return x;
  }
};

using Word = std::vector<BCGenerator>;

/// Finite section of l^2(N*) with basis eps_1..eps_N, twisted by the residue r
/// acting on every root of unity.
struct TruncatedRep {
  long N = 64;
  long galois_twist = 1;

  TruncatedRep() = default;
  TruncatedRep(long N_, long r = 1) : N(N_), galois_twist(r) {
    if (N < 1) throw InvalidInput("truncation size must be positive");
  }

  /// r gamma mod 1; r must be a unit modulo the denominator.
  mpq_class twist(const mpq_class& g) const {
    const mpz_class& q = g.get_den();
    mpz_class gc;
    mpz_class r(galois_twist);
    mpz_gcd(gc.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t());
    if (gc != 1) throw InvalidInput("galois twist is not a unit modulo " + q.get_str());
    return mod_one(g * r);
  }
};

using SparseVec = std::map<long, Complex>;

/// e^{2 pi i q} for rational q, exact at quarter turns.
inline Complex root_of_unity(const mpq_class& q, hp::Bits b) {
  const mpq_class r = mod_one(q);
  if (r == 0) return Complex(Real(1, b));
  if (r == mpq_class(1, 2)) return Complex(Real(-1, b));
  if (r == mpq_class(1, 4)) return hp::I(b);
  if (r == mpq_class(3, 4)) return -hp::I(b);
  return hp::exp2pii(Real(r, b));
}

namespace detail {

inline void apply_generator(const BCGenerator& g, SparseVec& v, const TruncatedRep& rep, hp::Bits b) {
  SparseVec out;
  for (auto& [k, c] : v) {
    switch (g.kind) {
      case BCGenerator::Kind::mu: {
        if (k > rep.N / g.n) throw TruncationOverflow("index " + std::to_string(k) + " * " + std::to_string(g.n) +
                                                      " exceeds N = " + std::to_string(rep.N));
        out.emplace(k * g.n, c);
        break;
      }
      case BCGenerator::Kind::mu_star:
        if (k % g.n == 0) out.emplace(k / g.n, c);
        break;
      default: {
        const mpq_class ph = rep.twist(g.gamma) * k;
        out.emplace(k, c * root_of_unity(ph, b));
      }
    }
  }
  v = std::move(out);
}

}  // namespace detail

/// rho(x_1 ... x_r) eps_k, the rightmost generator acting first.
inline SparseVec apply_word(const Word& w, long k, const TruncatedRep& rep, const PrecisionCtx& ctx) {
  if (k < 1 || k > rep.N) throw InvalidInput("basis index outside 1..N");
  const hp::Bits b = ctx.bits();
  SparseVec v{{k, Complex(Real(1, b))}};
  for (auto it = w.rbegin(); it != w.rend(); ++it) detail::apply_generator(*it, v, rep, b);
  return v;
}

/// Linear combination sum c_i rho(w_i) applied to eps_k.
inline SparseVec apply_combination(const std::vector<std::pair<Complex, Word>>& terms, long k, const TruncatedRep& rep,
                                   const PrecisionCtx& ctx) {
  SparseVec out;
  for (const auto& [c, w] : terms) {
    for (auto& [j, x] : apply_word(w, k, rep, ctx)) {
      auto it = out.find(j);
      if (it == out.end()) {
        out.emplace(j, c * x);
      } else {
        it->second += c * x;
      }
    }
  }
  return out;
}

inline Real sparse_distance(const SparseVec& a, const SparseVec& b, hp::Bits bits) {
  Real d(0, bits);
  auto upd = [&](const Complex& z) {
    Real m = hp::abs(z);
    if (m > d) d = m;
  };
  for (auto& [k, x] : a) {
    auto it = b.find(k);
    upd(it == b.end() ? x : x - it->second);
  }
  for (auto& [k, y] : b) {
    if (!a.count(k)) upd(y);
  }
  return d;
}

struct RelationResult {
  std::string family;
  long cases = 0;
  Real max_deviation;
  double max_ulp = 0;
};

struct RelationReport {
  std::vector<RelationResult> families;
  double max_ulp = 0;
};

struct RelationSample {
  std::vector<long> indices;
  std::vector<long> ns{1, 2, 3, 4, 5, 6};
  std::vector<mpq_class> gammas{mpq_class(0), mpq_class(1, 2), mpq_class(1, 3), mpq_class(2, 3), mpq_class(1, 5),
                                mpq_class(3, 7), mpq_class(5, 12)};
};

/// Applies both sides of each relation family to the sampled basis vectors.
/// Deviations are measured in units of 2^{1 - bits}.
inline RelationReport check_relations(const TruncatedRep& rep, const RelationSample& sample, const PrecisionCtx& ctx) {
  using G = BCGenerator;
  const hp::Bits b = ctx.bits();
  const double ulp = std::ldexp(1.0, 1 - static_cast<int>(b.value));
  const Complex one(Real(1, b));
  RelationReport report;
  auto family = [&](const std::string& name, auto&& body) {
    RelationResult r{name, 0, Real(0, b), 0};
    auto compare = [&](const std::vector<std::pair<Complex, Word>>& lhs, const std::vector<std::pair<Complex, Word>>& rhs,
                       long k) {
      Real d = sparse_distance(apply_combination(lhs, k, rep, ctx), apply_combination(rhs, k, rep, ctx), b);
      ++r.cases;
      if (d > r.max_deviation) r.max_deviation = d;
    };
    body(compare);
    r.max_ulp = r.max_deviation.to_double() / ulp;
    report.max_ulp = std::max(report.max_ulp, r.max_ulp);
    report.families.push_back(std::move(r));
  };
  auto single = [&](Word w) { return std::vector<std::pair<Complex, Word>>{{one, std::move(w)}}; };

  family("mu*_n mu_n = 1", [&](auto& cmp) {
    for (long n : sample.ns)
      for (long k : sample.indices) cmp(single({G::mu_star(n), G::mu(n)}), single({}), k);
  });
  family("mu_mn = mu_m mu_n", [&](auto& cmp) {
    for (long m : sample.ns)
      for (long n : sample.ns)
        for (long k : sample.indices) cmp(single({G::mu(m * n)}), single({G::mu(m), G::mu(n)}), k);
  });
  family("mu_n mu*_m = mu*_m mu_n, (m, n) = 1", [&](auto& cmp) {
    for (long m : sample.ns)
      for (long n : sample.ns) {
        if (std::gcd(m, n) != 1) continue;
        for (long k : sample.indices) cmp(single({G::mu(n), G::mu_star(m)}), single({G::mu_star(m), G::mu(n)}), k);
      }
  });
  family("e(g) e(h) = e(g + h)", [&](auto& cmp) {
    for (const mpq_class& g : sample.gammas)
      for (const mpq_class& h : sample.gammas)
        for (long k : sample.indices) cmp(single({G::e(g), G::e(h)}), single({G::e(g + h)}), k);
  });
  family("e(g) mu_n = mu_n e(n g)", [&](auto& cmp) {
    for (long n : sample.ns)
      for (const mpq_class& g : sample.gammas)
        for (long k : sample.indices) cmp(single({G::e(g), G::mu(n)}), single({G::mu(n), G::e(g * n)}), k);
  });
  family("mu_n e(g) mu*_n = (1/n) sum_{n d = g} e(d)", [&](auto& cmp) {
    for (long n : sample.ns)
      for (const mpq_class& g : sample.gammas) {
        std::vector<std::pair<Complex, Word>> rhs;
        const Complex w(Real(1, b) / Real(n, b));
        for (long j = 0; j < n; ++j) rhs.push_back({w, {G::e((g + j) / mpq_class(n))}});
        for (long k : sample.indices) cmp(single({G::mu(n), G::e(g), G::mu_star(n)}), rhs, k);
      }
  });
  return report;
}

/// zeta(beta) for real beta > 1.
inline Real partition_function(const Real& beta, const PrecisionCtx& ctx) {
  if (!(beta > Real(1, ctx.bits()))) throw DomainError("partition function needs beta > 1");
  return hp::hurwitz_zeta(Complex(beta.with_prec(ctx.bits())), Real(1, ctx.bits()), ctx.target_abs_err).value.re;
}

struct KMSValue {
  Complex value;
  double tail_bound = 0;
};

/// zeta(beta)^{-1} sum_k e^{2 pi i k r gamma} k^{-beta}.  With r gamma = p/q the
/// series splits into residue classes j mod q,
///   q^{-beta} sum_{j=1}^{q} e^{2 pi i j p / q} zeta_H(beta, j / q).
inline KMSValue kms_state(const Real& beta, const mpq_class& gamma, long twist, const PrecisionCtx& ctx) {
  const hp::Bits b = ctx.bits();
  if (!(beta > Real(1, b))) throw DomainError("KMS states are evaluated for beta > 1 only");
  const TruncatedRep rep(1, twist);
  const mpq_class g = rep.twist(mod_one(gamma));
  const long q = g.get_den().get_si();
  const Complex s(beta.with_prec(b));
  KMSValue out{Complex(b), 0};
  const Real z = partition_function(beta, ctx);
  if (q == 1) {
    out.value = Complex(z / z);
    return out;
  }
  Complex acc(b);
  double err = 0;
  for (long j = 1; j <= q; ++j) {
    mpq_class a(j, q);
    a.canonicalize();
    auto h = hp::hurwitz_zeta(s, Real(a, b), ctx.target_abs_err);
    acc += root_of_unity(g * j, b) * h.value;
    err += h.error_estimate;
  }
  const Real scale = hp::pow(Real(q, b), -beta.with_prec(b)) / z;
  out.value = acc * scale;
  out.tail_bound = err * scale.to_double();
  return out;
}

/// The truncated series sum_{k <= K} e^{2 pi i k r gamma} k^{-beta} / zeta(beta)
/// with tail bound K^{1 - beta} / ((beta - 1) zeta(beta)).
inline KMSValue kms_state_truncated(const Real& beta, const mpq_class& gamma, long twist, long K, const PrecisionCtx& ctx) {
  const hp::Bits b = ctx.bits();
  if (!(beta > Real(1, b))) throw DomainError("KMS states are evaluated for beta > 1 only");
  const mpq_class g = TruncatedRep(1, twist).twist(mod_one(gamma));
  const Real z = partition_function(beta, ctx);
  Complex acc(b);
  for (long k = K; k >= 1; --k) acc += root_of_unity(g * k, b) * hp::pow(Real(k, b), -beta.with_prec(b));
  KMSValue out{acc * (Real(1, b) / z), 0};
  const double bd = beta.to_double();
  out.tail_bound = std::pow(static_cast<double>(K), 1 - bd) / ((bd - 1) * z.to_double());
  return out;
}

}  // namespace rmlab
