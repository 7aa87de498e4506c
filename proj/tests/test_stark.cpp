#include <gtest/gtest.h>

#include <random>
#include <set>

#include "rmlab/stark/stark.hpp"

using namespace rmlab;

namespace {

const PrecisionCtx kCtx(128, 1e-30);

QuadIdeal principal(const QuadField& K, long n) { return QuadIdeal::principal(QuadElem(K, n)); }

// Standard configurations: L = (f), l0 = 1 with f chosen so that no unit
// = 1 mod f has a negative conjugate.
StarkInput standard(long D) {
  QuadField K(D);
  return validate_pair(principal(K, D == 3 ? 5 : 4), QuadElem(K, 1));
}

Complex C(double re, double im = 0) {
  return Complex(Real::from_double(re, kCtx.bits()), Real::from_double(im, kCtx.bits()));
}

double rel(const Complex& a, const Complex& b) { return hp::abs(a - b).to_double() / hp::abs(b).to_double(); }

// Valuations through membership in powers of a prime ideal.
int valuation(const QuadIdeal& P, const QuadElem& x) {
  QuadIdeal Q = P;
  int k = 0;
  while (k < 40 && Q.contains(x)) {
    ++k;
    Q = Q * P;
  }
  return k;
}

std::vector<QuadIdeal> primes_over(const QuadField& K, long p) {
  auto split = ideals_of_norm(K, p);
  if (!split.empty()) return split;
  return {principal(K, p)};
}

std::vector<long> prime_factors(Integer n) {
  n = abs(n);
  std::vector<long> out;
  for (long p = 2; Integer(p) * p <= n; ++p) {
    if (n % p == 0) out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n.get_si());
  return out;
}

// Expected outcome of validate_pair for L = (lambda): "", "i" or "ii".
std::string brute_force_conditions(const QuadField& K, const QuadElem& lambda, const QuadElem& l0) {
  std::set<long> ps;
  for (long p : prime_factors(lambda.norm().get_num())) ps.insert(p);
  for (long p : prime_factors(l0.norm().get_num())) ps.insert(p);
  QuadIdeal f = QuadIdeal::unit(K);
  bool bad_i = false;
  for (long p : ps) {
    for (const QuadIdeal& P : primes_over(K, p)) {
      int vL = valuation(P, lambda), vl = valuation(P, l0);
      int vb = std::min(vL, vl), vf = vL - vb, va = vl - vb;
      if (vf > 0 && (vb > 0 || va > 0)) bad_i = true;
      for (int k = 0; k < vf; ++k) f = f * P;
    }
  }
  if (bad_i) return "i";
  const QuadElem eps = fundamental_unit(K).eps0;
  QuadElem u(K, 1);
  for (int k = 0; k < 200; ++k, u *= eps) {
    for (const QuadElem& w : {u, -u}) {
      if (f.contains(w - QuadElem(K, 1)) && w.sign_conj() < 0) return "ii";
    }
  }
  return "";
}

std::string outcome(const QuadIdeal& L, const QuadElem& l0) {
  try {
    validate_pair(L, l0);
    return "";
  } catch (const ConditionFailed& e) {
    return e.which();
  }
}

}  // namespace

TEST(ValidatePair, Examples) {
  QuadField K(5);
  try {
    validate_pair(QuadIdeal::unit(K), QuadElem(K, 1));
    FAIL() << "((1), 1) accepted";
  } catch (const ConditionFailed& e) {
    EXPECT_EQ(e.which(), "ii");
  }
  StarkInput in = standard(5);
  EXPECT_EQ(in.b, QuadIdeal::unit(K));
  EXPECT_EQ(in.f, principal(K, 4));
  EXPECT_EQ(in.a0, QuadIdeal::unit(K));
  EXPECT_EQ(in.index, 1);
  EXPECT_EQ(in.eps_plus, QuadElem(5, 9, 4));
  // l0 in L: b = L and f = (1), which fails (ii).
  EXPECT_EQ(outcome(principal(K, 3), QuadElem(K, 3)), "ii");
  EXPECT_EQ(outcome(principal(K, 4), QuadElem(K, 2)), "i");
  EXPECT_THROW(validate_pair(principal(K, 4), QuadElem(K, frac(1, 2))), InvalidInput);
  EXPECT_THROW(validate_pair(principal(K, 4), QuadElem(K, 0)), InvalidInput);
}

TEST(ValidatePair, BruteForceOracle) {
  std::mt19937_64 g(7);
  std::uniform_int_distribution<int> n(-6, 6);
  int checked = 0, valid = 0;
  for (long D : {2L, 3L, 5L, 13L}) {
    QuadField K(D);
    for (int trial = 0; trial < 30; ++trial) {
      QuadElem lambda = QuadElem::from_omega(K, n(g), n(g));
      QuadElem l0 = QuadElem::from_omega(K, n(g), n(g));
      if (lambda.is_zero() || l0.is_zero() || abs(lambda.norm()) > 200) continue;
      std::string want = brute_force_conditions(K, lambda, l0);
      EXPECT_EQ(outcome(QuadIdeal::principal(lambda), l0), want) << lambda << " " << l0;
      ++checked;
      valid += want.empty();
    }
  }
  EXPECT_GT(checked, 80);
  EXPECT_GT(valid, 5);
}

TEST(PartialZeta, DirectMatchesContinued) {
  for (long D : {2L, 3L, 5L}) {
    StarkInput in = standard(D);
    for (const Complex& s : {C(1.6), C(2), C(3), C(2, 1)}) {
      Complex a = partial_zeta_direct(in, s, kCtx).value;
      Complex b = partial_zeta_continued(in, s, kCtx).value;
      EXPECT_LT(rel(a, b), 1e-12) << "D=" << D << " s=" << s.re.to_double() << "+" << s.im.to_double() << "i";
    }
  }
}

TEST(PartialZeta, FrozenValues) {
  // Continued route at 128 bits; cross-checked by the direct route.
  struct Row {
    long D;
    double s;
    const char* value;
  };
  const std::vector<Row> rows = {
      {5, 2, "0.95034153513745835720035517081874"}, {5, 3, "0.99074343959987163370340698774092"},
      {5, 1.6, "0.90336040218546242196185092135227"}, {2, 2, "0.98348037803442454517"},
      {2, 3, "0.99831631746942379713"},              {3, 2, "0.969445364491424522776"},
      {3, 3, "0.995158558928885027381"},
  };
  for (const Row& r : rows) {
    Complex z = partial_zeta_continued(standard(r.D), C(r.s), kCtx).value;
    Real want = Real::from_string(r.value, kCtx.bits());
    EXPECT_LT(hp::abs(z.re - want).to_double(), 1e-19) << r.D << " " << r.s;
    EXPECT_LT(hp::abs(z.im).to_double(), 1e-25);
  }
}

TEST(PartialZeta, EnumeratorsAgree) {
  StarkInput in = standard(5);
  DirectOptions a, b;
  b.enumerator = OrbitEnumerator::orbit_reduction;
  Complex za = partial_zeta_direct(in, C(2.5), kCtx, a).value;
  Complex zb = partial_zeta_direct(in, C(2.5), kCtx, b).value;
  EXPECT_LT(rel(za, zb), 1e-25);
}

TEST(PartialZeta, ShiftOfL0WithinCoset) {
  QuadField K(5);
  StarkInput a = standard(5);
  StarkInput b = validate_pair(principal(K, 4), QuadElem(5, 1) + QuadElem::from_omega(K, 4, -8));
  for (const Complex& s : {C(2), C(0.5)}) {
    EXPECT_LT(rel(partial_zeta_continued(a, s, kCtx).value, partial_zeta_continued(b, s, kCtx).value), 1e-25);
  }
}

TEST(PartialZeta, SplitPointIndependence) {
  StarkInput in = standard(2);
  Complex ref = partial_zeta_continued(in, C(0.3, 0.7), kCtx).value;
  for (double y0 : {0.2, 0.5, 1.0}) {
    ContinuedOptions o;
    o.y0 = y0;
    EXPECT_LT(rel(partial_zeta_continued(in, C(0.3, 0.7), kCtx, o).value, ref), 1e-25) << y0;
  }
}

TEST(PartialZeta, DirectRejectsSmallRealPart) {
  EXPECT_THROW(partial_zeta_direct(standard(5), C(1.2), kCtx), DomainError);
}

TEST(Stark, StandardConfigurations) {
  const std::vector<std::pair<long, const char*>> frozen = {
      {5, "1.0612750619050356520330189162136"},
      {2, "1.5285709194809981612724561847937"},
      {3, "1.3586306533922081625951130822938"},
  };
  for (const auto& [D, value] : frozen) {
    StarkResult r = stark_number(standard(D), kCtx);
    EXPECT_LT(hp::abs(r.zeta_prime_0 - Real::from_string(value, kCtx.bits())).to_double(), 1e-28) << D;
    EXPECT_LT(hp::abs(r.zeta_0).to_double(), 1e-8);
    EXPECT_LT(r.route_gap.to_double(), 1e-10);
    EXPECT_GT(r.s0.sign(), 0);
    EXPECT_LT(hp::abs(r.s0 - hp::exp(r.zeta_prime_0)).to_double(), 1e-30);
  }
}

TEST(Stark, RouteGapAtHigherPrecision) {
  const PrecisionCtx ctx(192, 1e-45);
  StarkResult r = stark_number(standard(5), ctx);
  EXPECT_LT(r.route_gap.to_double(), 1e-10);
  EXPECT_LT(hp::abs(r.zeta_prime_0 - Real::from_string("1.0612750619050356520330189162136", ctx.bits())).to_double(),
            1e-28);
}

TEST(RayClass, TrivialModulus) {
  QuadField K(5);
  RayClassGroup G = ray_classes(QuadIdeal::unit(K));
  EXPECT_EQ(G.order(), 1u);
  // Every ideal of small norm has a totally positive generator.
  const QuadElem eps = fundamental_unit(K).eps0;
  for (const QuadIdeal& I : ideals_up_to(K, 60)) {
    bool found = false;
    for (int u = -20; u <= 20 && !found; ++u)
      for (int v = -20; v <= 20 && !found; ++v) {
        QuadElem a = QuadElem::from_omega(K, u, v);
        if (abs(a.norm()) != Rational(I.norm()) || QuadIdeal::principal(a) != I) continue;
        for (const QuadElem& c : {a, -a, a * eps, -(a * eps)}) found = found || c.totally_positive();
      }
    EXPECT_TRUE(found) << I.to_string();
  }
}

TEST(RayClass, OrdersAgainstResidueCount) {
  // h = 1 for D = 5; the order is |(O/f)^* x signs| over the image of +-eps0^k,
  // counted here on explicit residues.
  QuadField K(5);
  const QuadElem eps = fundamental_unit(K).eps0;
  for (long m : {2L, 4L, 8L, 11L}) {
    for (RayVariant v : {RayVariant::wide, RayVariant::narrow}) {
      QuadIdeal f = principal(K, m);
      std::set<std::tuple<long, long, int, int>> image;
      QuadElem p(K, 1);
      for (int k = 0; k < 400; ++k, p *= eps) {
        for (const QuadElem& c : {p, -p}) {
          auto [u, w] = c.omega_coords();
          long ur = mod_pos(u.get_num(), Integer(m)).get_si(), wr = mod_pos(w.get_num(), Integer(m)).get_si();
          if (v == RayVariant::narrow) {
            image.emplace(ur, wr, c.sign(), c.sign_conj());
          } else {
            image.emplace(ur, wr, 0, 0);
          }
        }
      }
      long units = 0;
      for (long u = 0; u < m; ++u)
        for (long w = 0; w < m; ++w) units += std::gcd(QuadElem::from_omega(K, u, w).norm().get_num().get_si(), m) == 1;
      long want = units * (v == RayVariant::narrow ? 4 : 1) / static_cast<long>(image.size());
      EXPECT_EQ(ray_class_order(f, v, fundamental_unit(K)), want) << m << " " << to_string(v);
      if (want <= 8) {
        EXPECT_EQ(static_cast<long>(ray_classes(f, v).order()), want);
      }
    }
  }
  EXPECT_EQ(ray_classes(principal(K, 4), RayVariant::narrow).order(), 4u);
  EXPECT_EQ(ray_classes(principal(K, 4), RayVariant::wide).order(), 1u);
}

TEST(RayClass, TableIsAGroup) {
  QuadField K(5);
  RayClassGroup G = ray_classes(principal(K, 8));
  const std::size_t m = G.order();
  for (std::size_t i = 0; i < m; ++i) {
    EXPECT_EQ(G.table[i][G.inverse[i]], 0);
    EXPECT_TRUE(G.classes[i].representative.coprime_to(G.modulus));
    for (std::size_t j = 0; j < m; ++j) {
      int k = ray_class_index(G, G.classes[i].representative * G.classes[j].representative);
      EXPECT_EQ(G.table[i][j], k);
    }
  }
  // A pair built on a class representative has a0 equal to it.
  for (const RayClass& c : G.classes) {
    StarkInput in = pair_for_ideal(G.modulus, c.representative);
    EXPECT_EQ(in.a0, c.representative);
    EXPECT_EQ(in.f, G.modulus);
  }
}

TEST(RayClass, BoundExceeded) {
  QuadField K(5);
  EXPECT_THROW(ray_classes(principal(K, 11), RayVariant::narrow, 8), BoundExceeded);
}

namespace {

// Smallest-height (a + b sqrt D) / c within tol of x by exhaustive search.
std::optional<Recognized> brute_force_recognize(double x, long D, long H, double tol) {
  std::optional<Recognized> best;
  const double sd = std::sqrt(static_cast<double>(D));
  for (long c = 1; c <= H; ++c)
    for (long b = -H; b <= H; ++b)
      for (long a = -H; a <= H; ++a) {
        if (std::gcd(std::gcd(std::labs(a), std::labs(b)), c) != 1) continue;
        if (std::fabs((a + b * sd) / c - x) > tol) continue;
        Recognized r{a, b, c, 0.0};
        if (!best || r.height() < best->height()) best = r;
      }
  return best;
}

}  // namespace

TEST(Recognize, GoldenRatioSquare) {
  auto r = recognize_quadratic(Real::from_string("2.6180339887498948482045868343656", kCtx.bits()), 5);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->a, 3);
  EXPECT_EQ(r->b, 1);
  EXPECT_EQ(r->c, 2);
  auto o = brute_force_recognize(2.6180339887498948482, 5, 10, 1e-12);
  ASSERT_TRUE(o);
  EXPECT_EQ(o->a, r->a);
  EXPECT_EQ(o->b, r->b);
  EXPECT_EQ(o->c, r->c);
}

TEST(Recognize, Zero) {
  auto r = recognize_quadratic(Real(0, kCtx.bits()), 5);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->a, 0);
  EXPECT_EQ(r->b, 0);
  EXPECT_EQ(r->c, 1);
}

TEST(Recognize, PlantedValues) {
  std::mt19937_64 g(11);
  std::uniform_int_distribution<long> n(-10, 10), q(1, 10);
  std::uniform_real_distribution<double> pert(-1e-12, 1e-12);
  const hp::Bits b = kCtx.bits();
  const Real s5 = hp::sqrt(Real(5, b));
  int done = 0;
  while (done < 200) {
    long a = n(g), bb = n(g), c = q(g);
    if (std::gcd(std::gcd(std::labs(a), std::labs(bb)), c) != 1) continue;
    Real x = (Real(a, b) + Real(bb, b) * s5) / Real(c, b) + Real::from_double(pert(g), b);
    auto r = recognize_quadratic(x, 5);
    ASSERT_TRUE(r) << a << " " << bb << " " << c;
    EXPECT_EQ(r->a, a);
    EXPECT_EQ(r->b, bb);
    EXPECT_EQ(r->c, c);
    ++done;
  }
}

TEST(Recognize, NothingForTranscendental) {
  EXPECT_FALSE(recognize_quadratic(kCtx.pi(), 5, {10, 1e-12}));
}

TEST(Conjecture, D5ModulusFour) {
  QuadField K(5);
  ConjectureReport rep = conjecture_check(K, principal(K, 4), kCtx);
  ASSERT_EQ(rep.classes.size(), 4u);
  EXPECT_LT(rep.invariance_gap.to_double(), 1e-8);
  EXPECT_NE(rep.second_representative, rep.classes[0].representative);
  const Real S = Real::from_string("2.89005363826396381245700929610", kCtx.bits());
  EXPECT_LT(hp::abs(rep.classes[0].stark.s0 - S).to_double(), 1e-27);
  for (const ClassStark& c : rep.classes) EXPECT_LT(c.stark.route_gap.to_double(), 1e-10);
  ASSERT_EQ(rep.coefficients.size(), 5u);
  for (const CoefficientReport& c : rep.coefficients) EXPECT_TRUE(c.recognized) << c.degree;
  ASSERT_TRUE(rep.unit_norm);
  EXPECT_TRUE(*rep.unit_norm);
  // X^3 coefficient.
  EXPECT_EQ(rep.coefficients[3].recognized->a, -2);
  EXPECT_EQ(rep.coefficients[3].recognized->b, -2);
}
