#include <gtest/gtest.h>

#include "rmlab/bc/bc.hpp"

using namespace rmlab;
using G = BCGenerator;

namespace {

const PrecisionCtx kCtx(128, 1e-30);

Real R(const char* s) { return Real::from_string(s, kCtx.bits()); }
mpq_class Q(long p, long q) {
  mpq_class r(p, q);
  r.canonicalize();
  return r;
}

std::vector<long> range(long a, long b) {
  std::vector<long> v;
  for (long k = a; k <= b; ++k) v.push_back(k);
  return v;
}

}  // namespace

TEST(ApplyWord, Examples) {
  const TruncatedRep rep(100);
  auto v = apply_word({G::mu(2)}, 3, rep, kCtx);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v.begin()->first, 6);
  EXPECT_EQ(hp::abs(v.begin()->second - Complex(Real(1, kCtx.bits()))).to_double(), 0);

  auto w = apply_word({G::mu_star(2), G::mu(2)}, 5, rep, kCtx);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w.begin()->first, 5);

  auto e = apply_word({G::e(Q(1, 2))}, 1, rep, kCtx);
  EXPECT_EQ(e.at(1).re.to_double(), -1);
  EXPECT_EQ(e.at(1).im.to_double(), 0);

  EXPECT_TRUE(apply_word({G::mu_star(2)}, 5, rep, kCtx).empty());
  auto p = apply_word({G::e(Q(1, 3))}, 2, rep, kCtx);
  EXPECT_LT(hp::abs(p.at(2) - hp::exp2pii(R("2") / 3)).to_double(), 1e-35);
}

TEST(ApplyWord, GeneratorsNormalize) {
  EXPECT_EQ(G::e(Q(7, 3)).gamma, Q(1, 3));
  EXPECT_EQ(G::e(Q(-1, 4)).gamma, Q(3, 4));
  EXPECT_THROW(G::mu(0), InvalidInput);
}

TEST(ApplyWord, TruncationOverflow) {
  const TruncatedRep rep(10);
  EXPECT_THROW(apply_word({G::mu(2)}, 6, rep, kCtx), TruncationOverflow);
  EXPECT_NO_THROW(apply_word({G::mu(2)}, 5, rep, kCtx));
  EXPECT_THROW(apply_word({G::mu(3), G::mu(2)}, 2, rep, kCtx), TruncationOverflow);
  EXPECT_THROW(apply_word({}, 11, rep, kCtx), InvalidInput);
}

TEST(ApplyWord, TwistActsOnPhases) {
  const TruncatedRep rep(50, 2);
  auto v = apply_word({G::e(Q(1, 5))}, 1, rep, kCtx);
  EXPECT_LT(hp::abs(v.at(1) - hp::exp2pii(R("2") / 5)).to_double(), 1e-35);
  const TruncatedRep bad(50, 5);
  EXPECT_THROW(apply_word({G::e(Q(1, 5))}, 1, bad, kCtx), InvalidInput);
}

TEST(Relations, SpotChecks) {
  const TruncatedRep rep(400);
  for (long k = 1; k <= 50; ++k) {
    auto a = apply_word({G::mu(6)}, k, rep, kCtx), b = apply_word({G::mu(2), G::mu(3)}, k, rep, kCtx);
    EXPECT_EQ(sparse_distance(a, b, kCtx.bits()).to_double(), 0);
    auto c = apply_word({G::e(Q(1, 3)), G::e(Q(2, 3))}, k, rep, kCtx);
    EXPECT_LT(hp::abs(c.at(k) - Complex(Real(1, kCtx.bits()))).to_double(), 1e-36);
  }
  // mu_2 mu_2* = (e(0) + e(1/2)) / 2: identity on even k, zero on odd k.
  for (long k = 1; k <= 20; ++k) {
    auto lhs = apply_word({G::mu(2), G::mu_star(2)}, k, rep, kCtx);
    const Complex half(R("0.5"));
    auto rhs = apply_combination({{half, {G::e(0)}}, {half, {G::e(Q(1, 2))}}}, k, rep, kCtx);
    EXPECT_LT(sparse_distance(lhs, rhs, kCtx.bits()).to_double(), 1e-36) << k;
    EXPECT_EQ(lhs.size(), k % 2 == 0 ? 1u : 0u);
  }
}

TEST(Relations, SuiteWithinEightUlp) {
  for (long r : {1L, 11L, 13L}) {
    const TruncatedRep rep(2000, r);
    RelationSample s;
    s.indices = range(1, 40);
    RelationReport rep_out = check_relations(rep, s, kCtx);
    ASSERT_EQ(rep_out.families.size(), 6u);
    for (const auto& f : rep_out.families) {
      EXPECT_GT(f.cases, 0) << f.family;
      EXPECT_LE(f.max_ulp, 8) << f.family << " twist " << r;
    }
  }
}

TEST(Relations, TruncationReported) {
  RelationSample s;
  s.indices = range(1, 40);
  EXPECT_THROW(check_relations(TruncatedRep(100), s, kCtx), TruncationOverflow);
}

TEST(PartitionFunction, ClosedForms) {
  const Real pi = kCtx.pi();
  EXPECT_LT(hp::abs(partition_function(R("2"), kCtx) - pi * pi / 6).to_double(), 1e-30);
  EXPECT_LT(hp::abs(partition_function(R("4"), kCtx) - hp::pow(pi, 4L) / 90).to_double(), 1e-30);
  Real b = R("1.001");
  EXPECT_LT(std::fabs(((b - 1) * partition_function(b, kCtx)).to_double() - 1), 1e-2);
  EXPECT_THROW(partition_function(R("1"), kCtx), DomainError);
}

TEST(KMS, Examples) {
  KMSValue h = kms_state(R("2"), Q(1, 2), 1, kCtx);
  EXPECT_LT(hp::abs(h.value - Complex(R("-0.5"))).to_double(), 1e-30);
  for (const char* beta : {"1.5", "2", "3.25", "10"}) {
    KMSValue one = kms_state(R(beta), Q(0, 1), 1, kCtx);
    EXPECT_LT(hp::abs(one.value - Complex(Real(1, kCtx.bits()))).to_double(), 1e-30);
    // gamma = 1/2: 2^{1 - beta} - 1.
    Real want = hp::pow(Real(2, kCtx.bits()), Real(1, kCtx.bits()) - R(beta)) - 1;
    EXPECT_LT(hp::abs(kms_state(R(beta), Q(1, 2), 1, kCtx).value - Complex(want)).to_double(), 1e-28) << beta;
  }
  KMSValue big = kms_state(R("50"), Q(1, 3), 1, kCtx);
  EXPECT_LT(hp::abs(big.value - hp::exp2pii(R("1") / 3)).to_double(), 2 * std::ldexp(1.0, -50));
  EXPECT_THROW(kms_state(R("1"), Q(1, 2), 1, kCtx), DomainError);
  EXPECT_THROW(kms_state(R("0.5"), Q(1, 2), 1, kCtx), DomainError);
  EXPECT_THROW(kms_state(R("2"), Q(1, 4), 2, kCtx), InvalidInput);
}

TEST(KMS, MatchesTruncatedSeries) {
  for (auto [p, q] : std::vector<std::pair<long, long>>{{1, 3}, {1, 4}, {2, 5}, {5, 12}, {3, 7}}) {
    for (long r : {1L, 11L}) {
      if (std::gcd(r, q) != 1) continue;
      KMSValue a = kms_state(R("6"), Q(p, q), r, kCtx);
      KMSValue b = kms_state_truncated(R("6"), Q(p, q), r, 20000, kCtx);
      EXPECT_LT(b.tail_bound, 1e-20);
      EXPECT_LT(hp::abs(a.value - b.value).to_double(), 2 * b.tail_bound) << p << "/" << q;
    }
  }
}

TEST(KMS, TwistsAreSeparatedAndBounded) {
  std::vector<Complex> vals;
  for (long r = 1; r <= 4; ++r) vals.push_back(kms_state(R("2"), Q(1, 5), r, kCtx).value);
  // Residue 0 acts as gamma -> 0.
  vals.push_back(kms_state(R("2"), Q(0, 1), 1, kCtx).value);
  for (std::size_t i = 0; i < vals.size(); ++i) {
    EXPECT_LE(hp::abs(vals[i]).to_double(), 1 + 1e-30);
    for (std::size_t j = 0; j < i; ++j) EXPECT_GT(hp::abs(vals[i] - vals[j]).to_double(), 1e-3) << i << " " << j;
  }
}
