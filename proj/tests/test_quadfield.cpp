#include <gtest/gtest.h>

#include <random>

#include "rmlab/quadfield/ideal.hpp"

using namespace rmlab;

namespace {

struct UnitRow {
  long D;
  const char* x;
  const char* y;
  int den;
  int norm;
};

// Fundamental units (x + y sqrt D) / den, from an independent Pell solver.
const UnitRow kUnits[] = {
#include "data/fundamental_units.inc"
};

QuadElem rnd_elem(std::mt19937_64& g, long D, int h = 50, int qh = 7) {
  std::uniform_int_distribution<int> n(-h, h), d(1, qh);
  return QuadElem(D, Rational(n(g), d(g)), Rational(n(g), d(g)));
}

}  // namespace

TEST(QuadElem, FieldAxiomsOnRandomElements) {
  std::mt19937_64 g(7);
  for (long D : {2L, 3L, 5L, 13L, 94L}) {
    for (int i = 0; i < 200; ++i) {
      QuadElem a = rnd_elem(g, D), b = rnd_elem(g, D), c = rnd_elem(g, D);
      EXPECT_EQ((a + b) * c, a * c + b * c);
      EXPECT_EQ((a * b).norm(), a.norm() * b.norm());
      EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
      if (!b.is_zero()) {
        EXPECT_EQ((a / b) * b, a);
      }
      double v = a.to_double();
      if (std::fabs(v) > 1e-9) {
        EXPECT_EQ(a.sign(), v > 0 ? 1 : -1);
      }
    }
  }
}

TEST(QuadElem, ExactSignNearCancellation) {
  // Convergents p/q of sqrt 2 make p - q sqrt 2 tiny with alternating sign.
  Integer p = 1, q = 1;
  for (int k = 0; k < 60; ++k) {
    QuadElem e(2, Rational(p), Rational(-q));
    hp::Real ref = hp::Real(p, hp::Bits{1024}) - hp::sqrt(hp::Real(2, hp::Bits{1024})) * hp::Real(q, hp::Bits{1024});
    EXPECT_EQ(e.sign(), ref.sign());
    hp::Real emb = e.embed(0, hp::Bits{128});
    EXPECT_LT(std::fabs(((emb - ref) / ref).to_double()), 1e-36);
    Integer np = p + 2 * q, nq = p + q;
    p = np;
    q = nq;
  }
}

TEST(QuadElem, OmegaCoordinates) {
  QuadField K5(5), K3(3);
  QuadElem om = QuadElem::omega(K5);
  EXPECT_EQ(om * om, om + QuadElem(K5, 1));
  EXPECT_TRUE(om.is_integral());
  EXPECT_FALSE(QuadElem(K3, Rational(1, 2), Rational(1, 2)).is_integral());
  EXPECT_TRUE(QuadElem(K5, Rational(1, 2), Rational(1, 2)).is_integral());
  EXPECT_THROW(QuadField(12), InvalidInput);
}

TEST(Units, MatchesIndependentTable) {
  int rows = 0;
  for (const auto& r : kUnits) {
    QuadField K(r.D);
    UnitData u = fundamental_unit(K);
    QuadElem ref(K, Rational(Integer(r.x), r.den), Rational(Integer(r.y), r.den));
    EXPECT_EQ(u.eps0, ref) << "D=" << r.D;
    EXPECT_EQ(u.norm_sign, r.norm) << "D=" << r.D;
    ++rows;
  }
  EXPECT_EQ(rows, 121);  // squarefree D in [2, 200]
}

TEST(Units, MinimalAgainstBruteForce) {
  // No unit (x + y sqrt D)/den with 0 < |x|, |y| <= 100 lies strictly in (1, eps0).
  for (long D = 2; D <= 200; ++D) {
    if (!is_squarefree(D)) continue;
    QuadField K(D);
    UnitData u = fundamental_unit(K);
    const long den = K.one_mod_4() ? 2 : 1;
    for (long y = 1; y <= 100; ++y) {
      for (long x = 1; x <= 100; ++x) {
        Integer n = Integer(x) * x - Integer(D) * y * y;
        if (n != den * den && n != -den * den) continue;
        QuadElem e(K, frac(x, den), frac(y, den));
        EXPECT_GE(cmp(e, u.eps0), 0) << "D=" << D;
      }
    }
  }
}

TEST(Ideals, HnfAndArithmetic) {
  QuadField K(5);
  QuadIdeal two = QuadIdeal::principal(QuadElem(K, 2));
  EXPECT_EQ(two.norm(), 4);
  QuadIdeal four = two * two;
  EXPECT_EQ(four, QuadIdeal::principal(QuadElem(K, 4)));
  EXPECT_EQ(four.to_string(), "[4,0,4]");
  QuadIdeal r5 = QuadIdeal::principal(QuadElem(K, 0, 1));
  EXPECT_EQ(r5.norm(), 5);
  EXPECT_EQ(r5 * r5, QuadIdeal::principal(QuadElem(K, 5)));
  EXPECT_TRUE(two.divides(four));
  EXPECT_EQ(four.divided_by(two), two);
  EXPECT_TRUE(two.coprime_to(r5));
  EXPECT_THROW(QuadIdeal(K, 4, 1, 1), InvalidInput);  // not an ideal
}

TEST(Ideals, NormCountsMatchDedekind) {
  // #{I : N I = n} = sum_{d | n} (disc / d).
  for (long D : {2L, 3L, 5L, 10L, 13L, 15L, 21L}) {
    QuadField K(D);
    for (long n = 1; n <= 60; ++n) {
      long expect = 0;
      for (long d = 1; d <= n; ++d)
        if (n % d == 0) expect += mpz_kronecker_si(Integer(K.disc()).get_mpz_t(), d);
      EXPECT_EQ(static_cast<long>(ideals_of_norm(K, n).size()), expect) << "D=" << D << " n=" << n;
    }
  }
}

TEST(Ideals, ConjugateProductIsNorm) {
  for (long D : {3L, 5L, 10L, 13L}) {
    QuadField K(D);
    for (const auto& I : ideals_up_to(K, 40)) {
      EXPECT_EQ(I * I.conj(), QuadIdeal::principal(QuadElem(K, Rational(I.norm()))));
    }
  }
}

TEST(Ideals, ReduceIsCanonical) {
  QuadField K(13);
  std::mt19937_64 g(3);
  QuadIdeal f = QuadIdeal::generated(K, {QuadElem(K, 6), QuadElem::from_omega(K, 1, 1)});
  for (int i = 0; i < 200; ++i) {
    std::uniform_int_distribution<int> n(-500, 500);
    QuadElem x = QuadElem::from_omega(K, n(g), n(g));
    QuadElem r = f.reduce(x);
    EXPECT_TRUE(f.congruent(x, r));
    EXPECT_EQ(f.reduce(r), r);
  }
}

TEST(Ideals, ResidueUnitCounts) {
  QuadField K(5);
  EXPECT_EQ(unit_residue_count(QuadIdeal::principal(QuadElem(K, 4))), 12);
  EXPECT_EQ(unit_residue_count(QuadIdeal::principal(QuadElem(K, 2))), 3);
  EXPECT_EQ(unit_residue_count(QuadIdeal::principal(QuadElem(K, 5))), 20);
  EXPECT_EQ(unit_residue_count(QuadIdeal::unit(K)), 1);
  // 11 splits in Q(sqrt 5): (O/11)^* = F_11^* x F_11^*.
  EXPECT_EQ(unit_residue_count(QuadIdeal::principal(QuadElem(K, 11))), 100);
}

TEST(Ideals, PrincipalGenerator) {
  QuadField K10(10);
  UnitData u10 = fundamental_unit(K10);
  // Primes above 2 and 3 are not principal in Q(sqrt 10).
  for (const auto& P : ideals_of_norm(K10, 2)) EXPECT_FALSE(principal_generator(P, u10));
  for (const auto& P : ideals_of_norm(K10, 3)) EXPECT_FALSE(principal_generator(P, u10));
  for (const auto& P : ideals_of_norm(K10, 6)) {
    auto g = principal_generator(P, u10);
    ASSERT_TRUE(g);
    EXPECT_EQ(QuadIdeal::principal(*g), P);
  }
  QuadField K5(5);
  UnitData u5 = fundamental_unit(K5);
  for (const auto& I : ideals_up_to(K5, 80)) {
    auto g = principal_generator(I, u5);
    ASSERT_TRUE(g) << I.to_string();
    EXPECT_EQ(QuadIdeal::principal(*g), I);
  }
}

TEST(Units, TotallyPositive) {
  for (long D : {2L, 3L, 5L, 6L, 7L, 10L, 13L, 29L, 34L}) {
    QuadField K(D);
    UnitData u = fundamental_unit(K);
    EXPECT_TRUE(u.eps_plus.totally_positive()) << D;
    EXPECT_EQ(u.eps_plus.norm(), 1);
    EXPECT_TRUE(u.eps_plus == u.eps0 || u.eps_plus == u.eps0 * u.eps0);
  }
  EXPECT_EQ(fundamental_unit(QuadField(3)).eps_plus, QuadElem(3, 2, 1));
}

TEST(Units, ModF) {
  QuadField K(5);
  const QuadElem one(K, 1);
  auto principal = [&](long n) { return QuadIdeal::principal(QuadElem(K, n)); };

  UnitData u1 = unit_mod_f(K, QuadIdeal::unit(K));
  EXPECT_EQ(u1.eps_f, u1.eps0);
  EXPECT_TRUE(u1.minus_one_congruent);

  UnitData u2 = unit_mod_f(K, principal(2));
  EXPECT_EQ(u2.eps_f, QuadElem(K, 2, 1));
  EXPECT_EQ(u2.eps_f_exponent, 3);
  EXPECT_FALSE(u2.eps_f_totally_positive);
  EXPECT_EQ(u2.eps_f_plus, QuadElem(K, 9, 4));

  UnitData u4 = unit_mod_f(K, principal(4));
  EXPECT_EQ(u4.eps_f, QuadElem(K, 9, 4));
  EXPECT_TRUE(u4.eps_f_totally_positive);
  EXPECT_FALSE(u4.minus_one_congruent);

  // Exhaustive powering oracle over several moduli and fields.
  for (long D : {2L, 3L, 5L, 13L}) {
    QuadField F(D);
    UnitData base = fundamental_unit(F);
    for (const auto& f : ideals_up_to(F, 30)) {
      UnitData u = unit_mod_f(F, f, base);
      EXPECT_TRUE(f.congruent(u.eps_f, QuadElem(F, 1)));
      long best = 0;
      QuadElem p = base.eps0;
      for (long k = 1; k <= 1000 && best == 0; ++k, p *= base.eps0) {
        if (f.congruent(p, QuadElem(F, 1)) || f.congruent(-p, QuadElem(F, 1))) best = k;
      }
      EXPECT_EQ(u.eps_f_exponent, best) << D << " " << f.to_string();
      if (u.eps_f_totally_positive) {
        EXPECT_GT(u.eps_f.sign_conj(), 0);
      }
      EXPECT_TRUE(u.eps_f_plus.totally_positive());
    }
  }
}
