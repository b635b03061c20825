#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "hypfol/corpus.hpp"
#include "hypfol/holmap.hpp"
#include "oracles.hpp"

using namespace hypfol;

namespace {

TEST(Jet, ArithmeticMatchesKnownSeries) {
  // 1 / (1 - z) at 0 has all coefficients 1
  const Jet z = Jet::variable(0.0, 6);
  const Jet g = Jet::constant(1.0, 6) / (Jet::constant(1.0, 6) - z);
  for (int k = 0; k <= 6; ++k) EXPECT_NEAR(std::abs(g[k] - 1.0), 0.0, 1e-15);
  // (z + 1)^2 at 1: 4 + 4h + h^2
  const Jet w = Jet::variable(1.0, 3) + Jet::constant(1.0, 3);
  const Jet sq = w * w;
  EXPECT_EQ(sq[0], Complex(4.0));
  EXPECT_EQ(sq[1], Complex(4.0));
  EXPECT_EQ(sq[2], Complex(1.0));
  EXPECT_EQ(sq[3], Complex(0.0));
  EXPECT_EQ(sq.derivative(2), Complex(2.0));
}

TEST(Poly, RootsOfKnownPolynomial) {
  // (z - 0.5)(z + 0.25i)(z - 2)
  const Poly p{{Complex(0.0, 0.25), Complex(1.0, -0.625), Complex(-2.5, 0.25), 1.0}};
  auto r = poly_roots(p);
  ASSERT_EQ(r.size(), 3u);
  for (Complex want : {Complex(0.5), Complex(0, -0.25), Complex(2.0)}) {
    double best = kInf;
    for (auto x : r) best = std::min(best, std::abs(x - want));
    EXPECT_LT(best, 1e-12);
  }
}

TEST(HolMap, DerivativeAgreesWithCentredDifferences) {
  oracle::Rng rng(30);
  for (int i = 0; i < 300; ++i) {
    const HolMap f = oracle::self_map(rng);
    const Complex z = oracle::point_in_disc(rng, 0.9);
    const double h = 1e-5;
    const Complex fd = (f(z + h) - f(z - h)) / (2 * h);
    const Complex d = f.derivative(z);
    EXPECT_LE(std::abs(fd - d), 1e-6 * std::max(1.0, std::abs(d)));
  }
}

TEST(HolMap, RationalFormAgreesWithTree) {
  oracle::Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const HolMap f = oracle::self_map(rng);
    const Rational q = f.rational();
    for (int k = 0; k < 10; ++k) {
      const Complex z = oracle::point_in_disc(rng, 0.95);
      EXPECT_LE(std::abs(q.num(z) / q.den(z) - f(z)), 1e-10);
    }
  }
}

TEST(HolMap, PrimitivesEvaluate) {
  EXPECT_EQ(HolMap::constant(Complex(1, 2))(0.3), Complex(1, 2));
  EXPECT_EQ(HolMap::monomial(3, 2.0)(0.5), Complex(0.25));
  EXPECT_EQ(HolMap::polynomial({1.0, 2.0, 3.0})(2.0), Complex(17.0));
  EXPECT_EQ(HolMap::scale(2.0, HolMap::identity())(0.25), Complex(0.5));
  EXPECT_EQ(HolMap::product(HolMap::identity(), HolMap::identity())(0.5), Complex(0.25));
  const Complex a(0.2, 0.1);
  const double th = 0.7;
  const Complex z(0.1, -0.3);
  EXPECT_NEAR(std::abs(HolMap::mobius(a, th)(z) - std::polar(1.0, th) * (z + a) / (1.0 + std::conj(a) * z)), 0.0,
              1e-15);
  EXPECT_THROW(HolMap::monomial(-1), DomainError);
}

TEST(CriticalPoints, MonomialAndMobius) {
  const auto c = HolMap::monomial(4).critical_points();
  ASSERT_EQ(c.size(), 1u);
  EXPECT_LT(std::abs(c[0].z), 1e-12);
  EXPECT_EQ(c[0].order, 3);
  EXPECT_TRUE(HolMap::mobius(Complex(0.3, 0.2), 1.0).critical_points().empty());
  EXPECT_TRUE(HolMap::constant(0.5).is_constant());
  EXPECT_TRUE(HolMap::constant(0.5).critical_points().empty());
}

TEST(CriticalPoints, ConjugatedPowerHasOneCriticalPoint) {
  const Complex b(0.4, -0.3);
  const HolMap f = HolMap::compose(HolMap::mobius(0.2, 0.0), HolMap::compose(HolMap::monomial(3), HolMap::mobius(-b, 0.0)));
  const auto c = f.critical_points();
  ASSERT_EQ(c.size(), 1u);
  EXPECT_LT(std::abs(c[0].z - b), 1e-10);
  EXPECT_EQ(c[0].order, 2);
}

// Every enumerated point is critical, and the orders add up to the
// argument-principle count of zeros of f' inside the disc.
TEST(CriticalPoints, PropertyAgainstArgumentPrinciple) {
  oracle::Rng rng(32);
  for (int i = 0; i < 60; ++i) {
    SCOPED_TRACE(i);
    Rng corpus_rng(1000 + i);
    const HolMap f = i % 2 ? oracle::self_map(rng) : random_om_map(corpus_rng, 1 + i % 3);
    const auto crit = f.critical_points();
    int total = 0;
    double rmax = 0.0;
    for (const auto& c : crit) {
      EXPECT_LE(std::abs(f.derivative(c.z)), 1e-10 * std::max(1.0, std::abs(f.jet(c.z, c.order + 1)[c.order + 1])));
      total += c.order;
      rmax = std::max(rmax, std::abs(c.z));
    }
    // a circle between the outermost critical point and the unit circle
    const double t = std::max(0.5 * (rmax + 1.0), 0.97);
    EXPECT_EQ(oracle::winding_count(f, t), total);
  }
}

TEST(CriticalPoints, OmCorpusHasOrdersDivisibleByM) {
  for (int m = 1; m <= 3; ++m) {
    Rng rng(40 + m);
    for (int i = 0; i < 30; ++i) {
      const HolMap f = random_om_map(rng, m);
      for (const auto& c : f.critical_points()) EXPECT_EQ(c.order % m, 0) << "m=" << m << " case " << i;
    }
  }
}

}  // namespace
