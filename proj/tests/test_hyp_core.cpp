#include <gtest/gtest.h>

#include <cmath>

#include "hypfol/hyp_core.hpp"
#include "oracles.hpp"

using namespace hypfol;

namespace {

const ModelSurface kDisc = ModelSurface::disc();

TEST(Density, DiscClosedForm) {
  EXPECT_DOUBLE_EQ(density(kDisc, 0.0), 2.0);
  EXPECT_DOUBLE_EQ(density(kDisc, 0.5), 8.0 / 3.0);
  EXPECT_DOUBLE_EQ(density(ModelSurface::half_plane(), Complex(3.0, 0.25)), 4.0);
}

TEST(Density, PuncturedDiscFromExponentialCovering) {
  // w -> R e^{iw} covers the punctured disc from the upper half-plane, whose
  // density is 1 / Im w; pulling back gives lambda(z) |z| = 1 / Im w
  EXPECT_NEAR(density(ModelSurface::punctured_disc(1.0), std::exp(-1.0)), std::exp(1.0), 1e-14);
  oracle::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const double radius = oracle::uniform(rng, 0.2, 3.0);
    const Complex w(oracle::uniform(rng, -5.0, 5.0), oracle::uniform(rng, 0.05, 8.0));
    const Complex z = radius * std::exp(Complex(0, 1) * w);
    const double expected = 1.0 / w.imag();
    EXPECT_NEAR(density(ModelSurface::punctured_disc(radius), z) * std::abs(z), expected, 1e-12 * expected);
  }
}

TEST(Density, AnnulusFromStripCovering) {
  // sigma -> e^sigma sends the strip 0 < Im sigma < pi to the half-plane, and
  // sigma -> r exp(-i W sigma / pi) sends it onto r < |z| < 1
  oracle::Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const double r = oracle::uniform(rng, 0.05, 0.8);
    const double width = std::log(1.0 / r);
    const Complex sigma(oracle::uniform(rng, -3.0, 3.0), oracle::uniform(rng, 0.02, kPi - 0.02));
    const Complex xi = std::exp(sigma);
    const double lambda_strip = std::abs(xi) / xi.imag();
    const Complex z = r * std::exp(Complex(0, -width / kPi) * sigma);
    const double dz = width / kPi * std::abs(z);
    EXPECT_NEAR(density(ModelSurface::annulus(r), z) * dz, lambda_strip, 1e-11 * lambda_strip);
  }
}

TEST(Density, RejectsPointsOutsideOrOnBoundary) {
  EXPECT_THROW(density(kDisc, 1.0), DomainError);
  EXPECT_THROW(density(kDisc, 1.0 - 1e-13), DomainError);
  EXPECT_THROW(density(ModelSurface::punctured_disc(1.0), 0.0), DomainError);
  EXPECT_THROW(density(ModelSurface::annulus(0.3), 0.2), DomainError);
  EXPECT_THROW(density(ModelSurface::half_plane(), Complex(1.0, -1.0)), DomainError);
  EXPECT_THROW(ModelSurface::annulus(1.5), DomainError);
  EXPECT_THROW(ModelSurface::punctured_disc(0.0), DomainError);
}

TEST(Density, DiscTimesComplementIsTwo) {
  oracle::Rng rng(13);
  for (int i = 0; i < 1000; ++i) {
    const Complex z = oracle::point_in_disc(rng, 0.999);
    EXPECT_NEAR(density(kDisc, z) * (1.0 - std::norm(z)), 2.0, 1e-12);
  }
}

TEST(HypDistance, RadialClosedForm) {
  EXPECT_EQ(hyp_distance(0.0, 0.0), 0.0);
  for (double r : {0.1, 0.5, 0.9, 0.999}) EXPECT_NEAR(hyp_distance(0.0, r), std::log((1 + r) / (1 - r)), 1e-13);
}

TEST(HypDistance, MatchesGeodesicIntegral) {
  EXPECT_NEAR(hyp_distance(0.3, Complex(0, 0.3)), oracle::geodesic_length(0.3, Complex(0, 0.3)), 1e-8);
  oracle::Rng rng(14);
  for (int i = 0; i < 100; ++i) {
    const Complex z = oracle::point_in_disc(rng, 0.95), w = oracle::point_in_disc(rng, 0.95);
    EXPECT_NEAR(hyp_distance(z, w), oracle::geodesic_length(z, w), 1e-8);
  }
}

TEST(HypDistance, MetricAxiomsOnSampledTriples) {
  oracle::Rng rng(15);
  for (int i = 0; i < 1000; ++i) {
    const Complex a = oracle::point_in_disc(rng, 0.99), b = oracle::point_in_disc(rng, 0.99),
                  c = oracle::point_in_disc(rng, 0.99);
    EXPECT_EQ(hyp_distance(a, b), hyp_distance(b, a));
    EXPECT_LE(hyp_distance(a, c), hyp_distance(a, b) + hyp_distance(b, c) + 1e-12);
    EXPECT_GE(hyp_distance(a, b), 0.0);
  }
}

TEST(HypDistance, InvariantUnderAutomorphisms) {
  oracle::Rng rng(16);
  for (int i = 0; i < 500; ++i) {
    const HolMap phi = mobius(oracle::point_in_disc(rng, 0.9), oracle::uniform(rng, 0.0, 2 * kPi));
    const Complex z = oracle::point_in_disc(rng, 0.9), w = oracle::point_in_disc(rng, 0.9);
    EXPECT_NEAR(hyp_distance(phi(z), phi(w)), hyp_distance(z, w), 1e-10);
  }
}

TEST(HypDistance, RejectsPointsOutsideDisc) { EXPECT_THROW(hyp_distance(0.0, 1.2), DomainError); }

TEST(HypBall, Membership) {
  EXPECT_TRUE(hyp_ball_contains(0.0, 1.0, 0.0));
  EXPECT_FALSE(hyp_ball_contains(0.0, 0.0, 0.3));
  const Complex z(0.51, 0.0);
  EXPECT_EQ(hyp_ball_contains(0.5, 0.2, z), hyp_distance(0.5, z) < 0.2);
  EXPECT_TRUE(hyp_ball_contains(0.5, 0.2, z));  // d = 2 atanh(0.01 / 0.745) ~ 0.027
  EXPECT_THROW(hyp_ball_contains(0.0, -1.0, 0.0), DomainError);
}

TEST(Mobius, BasicValues) {
  const HolMap id = mobius(0.0, 0.0);
  for (double x : {0.0, 0.3, -0.7}) EXPECT_EQ(id(x), Complex(x));
  const Complex a(0.3, -0.4);
  EXPECT_NEAR(std::abs(mobius(a, 0.0)(0.0) - a), 0.0, 1e-15);
  EXPECT_THROW(mobius(1.0, 0.0), DomainError);
}

TEST(Mobius, InverseComposesToIdentity) {
  oracle::Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Complex a = oracle::point_in_disc(rng, 0.95);
    const HolMap c = HolMap::compose(mobius(a, 0.0), mobius(-a, 0.0));
    for (int i = 0; i < 100; ++i) {
      const Complex z = oracle::point_in_disc(rng, 0.95);
      EXPECT_NEAR(std::abs(c(z) - z), 0.0, 1e-12);
    }
  }
}

TEST(Distortion, ClosedFormCases) {
  EXPECT_NEAR(distortion(HolMap::identity(), kDisc, Complex(0.2, 0.7)), 1.0, 1e-15);
  const HolMap sq = HolMap::monomial(2);
  EXPECT_EQ(distortion(sq, kDisc, 0.0), 0.0);
  EXPECT_NEAR(distortion(sq, kDisc, 0.5), 0.8, 1e-15);
  // 2|p| / (1 + |p|^2) from the two densities
  oracle::Rng rng(18);
  for (int i = 0; i < 100; ++i) {
    const Complex p = oracle::point_in_disc(rng, 0.99);
    const double r = std::abs(p);
    EXPECT_NEAR(distortion(sq, kDisc, p), 2 * r / (1 + r * r), 1e-13);
  }
}

TEST(Distortion, SchwarzPickOnSampledSelfMaps) {
  oracle::Rng rng(19);
  for (int i = 0; i < 3000; ++i) {
    const HolMap f = oracle::self_map(rng);
    const Complex p = oracle::point_in_disc(rng, 0.99);
    EXPECT_LE(distortion(f, kDisc, p), 1.0 + 1e-12);
  }
}

TEST(Distortion, AutomorphismsAreIsometries) {
  oracle::Rng rng(20);
  for (int i = 0; i < 1000; ++i) {
    const HolMap phi = mobius(oracle::point_in_disc(rng, 0.95), oracle::uniform(rng, 0.0, 2 * kPi));
    EXPECT_NEAR(distortion(phi, kDisc, oracle::point_in_disc(rng, 0.99)), 1.0, 1e-12);
  }
}

TEST(Distortion, RejectsImageOutsideTarget) {
  EXPECT_THROW(distortion(HolMap::constant(2.0), kDisc, 0.0), DomainError);
  EXPECT_THROW(distortion(HolMap::identity(), ModelSurface::punctured_disc(1.0), 0.0), DomainError);
}

}  // namespace
