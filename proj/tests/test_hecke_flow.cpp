#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rmlab/hecke_flow/hecke_flow.hpp"

using namespace rmlab;

namespace {
const hp::Bits kB{128};
double dist(const Complex& a, const Complex& b) { return hp::abs(a - b).to_double(); }
}  // namespace

TEST(HeckeFlow, GeneratorsAtZero) {
  for (long D : {2L, 3L, 5L}) {
    QuadField K(D);
    Pseudolattice L(K, QuadElem(K, 1), QuadElem(K, 0, 1));
    HeckeLattice H = hecke_lattice(L, Real(0, kB), kB);
    Real s = hp::sqrt(Real(D, kB));
    EXPECT_LT(dist(H.gen1, Complex(1, 1, kB)), 1e-36);
    EXPECT_LT(dist(H.gen2, Complex(s, -s)), 1e-36);
  }
}

TEST(HeckeFlow, CovolumeIndependentOfT) {
  std::mt19937_64 g(21);
  for (int i = 0; i < 10; ++i) {
    long D = std::vector<long>{2, 3, 5, 6, 7, 13}[i % 6];
    Pseudolattice L = i < 3 ? Pseudolattice(QuadField(D), QuadElem(D, 1), QuadElem(D, 0, 1))
                            : oracle::random_pseudolattice(g, D);
    Real want = delta(L, kB);
    if (i < 3) EXPECT_LT(hp::abs(want - hp::sqrt(Real(4 * D, kB))).to_double(), 1e-35);
    for (int t = -5; t <= 5; ++t) {
      Real cov = hecke_lattice(L, Real(t, kB), kB).lattice().covolume();
      EXPECT_LT((hp::abs(cov - want) / want).to_double(), 1e-32);
    }
  }
}

TEST(HeckeFlow, UnitShiftsT) {
  QuadField K(5);
  Pseudolattice L(K, QuadElem(K, 1), QuadElem::omega(K));
  QuadElem e = stabilizer_plus(L, fundamental_unit(K));
  Real t = Real::from_string("0.3", kB);
  Real t2 = t + hp::log(e.embed(0, kB)) * 2;
  std::mt19937_64 g(22);
  for (int i = 0; i < 20; ++i) {
    QuadElem l = oracle::random_irrational(g, 5);
    EXPECT_LT(dist(lambda_t(e * l, t, kB), lambda_t(l, t2, kB)), 1e-30);
  }
}

TEST(HeckeFlow, GeodesicPeriod) {
  QuadField K5(5), K3(3);
  Pseudolattice O5(K5, QuadElem(K5, 1), QuadElem::omega(K5));
  Real want5 = hp::log(QuadElem(K5, Rational(3, 2), Rational(1, 2)).embed(0, kB)) * 2;
  EXPECT_LT(hp::abs(geodesic_period(O5, kB) - want5).to_double(), 1e-36);
  Pseudolattice O3(K3, QuadElem(K3, 1), QuadElem::omega(K3));
  Real want3 = hp::log(QuadElem(K3, 2, 1).embed(0, kB)) * 2;
  EXPECT_LT(hp::abs(geodesic_period(O3, kB) - want3).to_double(), 1e-36);
  EXPECT_EQ(geodesic_period(O5.scaled(QuadElem(K5, Rational(2, 3), 1)), kB), geodesic_period(O5, kB));
}

TEST(HeckeFlow, ScalarProduct) {
  EXPECT_EQ(scalar_product(Complex(1, 0, kB), Complex(0, 1, kB)).to_double(), 1.0);
  std::mt19937_64 g(23);
  for (int i = 0; i < 100; ++i) {
    long D = std::vector<long>{2, 3, 5, 13}[i % 4];
    QuadElem l = oracle::random_irrational(g, D), m = oracle::random_irrational(g, D);
    Real t = Real::from_double(0.1 * (i % 11) - 0.5, kB);
    Complex x = lambda_t(l, t, kB), y = lambda_t(m, t, kB);
    EXPECT_EQ(scalar_product(x, y), scalar_product(y, x));
    Real want(Rational((l * m.conj()).trace()), kB);
    EXPECT_LT(hp::abs(scalar_product(x, y) - want).to_double(), 1e-30);
  }
}

TEST(HeckeFlow, DualLattice) {
  std::mt19937_64 g(24);
  for (int i = 0; i < 20; ++i) {
    long D = std::vector<long>{2, 3, 5, 13}[i % 4];
    Pseudolattice L = oracle::random_pseudolattice(g, D);
    Real t = Real::from_double(0.37 * i - 3, kB);
    ComplexLattice Ld = hecke_lattice(L, t, kB).lattice().dual();
    HeckeLattice M = hecke_lattice(dual(L), t, kB);
    EXPECT_LT(dist(Ld.g1, M.gen1), 1e-28);
    EXPECT_LT(dist(Ld.g2, M.gen2), 1e-28);
  }
}
