#include <gtest/gtest.h>

#include <cmath>

#include "hypfol/curvature.hpp"
#include "hypfol/hyp_core.hpp"
#include "oracles.hpp"

using namespace hypfol;

namespace {

const PolyVectorField kIdentity1 = PolyVectorField::linear_diagonal({1.0}, 0.9);

Example3 one_dimensional() { return {{1}, {MultiPoly::constant(1, 1.0)}}; }

Example3 diagonal_pair() { return {{1, 1}, {MultiPoly::constant(2, 1.0), MultiPoly::constant(2, 1.0)}}; }

CVec nonzero_sample(oracle::Rng& rng, int n, double radius) {
  for (;;) {
    CVec z = oracle::point_in_ball(rng, n, radius);
    if (std::sqrt(norm2(z)) > 0.05 * radius) return z;
  }
}

// ------------------------------------------------------------ wedge and Example 1

TEST(Wedge, ExamplesAndCauchySchwarz) {
  EXPECT_EQ(wedge_norm_sq({1.0, 0.0}, {0.0, 1.0}), 1.0);
  EXPECT_EQ(wedge_norm_sq({1.0, 0.0}, {1.0, 0.0}), 0.0);
  EXPECT_EQ(wedge_norm_sq({1.0, 0.0}, {1.0, 1.0}), 1.0);
  EXPECT_THROW(wedge_norm_sq({1.0}, {1.0, 0.0}), DomainError);
  oracle::Rng rng(90);
  for (int i = 0; i < 10000; ++i) {
    const int n = 1 + i % 4;
    EXPECT_GE(wedge_norm_sq(oracle::point_in_ball(rng, n, 2.0), oracle::point_in_ball(rng, n, 2.0)), -1e-12);
  }
}

TEST(Example1, RadialFieldHasCurvatureMinusOne) {
  EXPECT_NEAR(curvature_example1(kIdentity1, {0.5}), -1.0, 1e-14);
  // the pulled-back leaf metric of X = z is the disc metric itself
  auto dens = [](Complex t) {
    const double r2 = std::norm(0.5 * std::exp(t));
    return 4 * r2 / ((1 - r2) * (1 - r2));
  };
  EXPECT_NEAR(oracle::curvature_5pt(dens, 1e-3), -1.0, 1e-5);
  EXPECT_NEAR(pullback_curvature_fd(Example1{}, kIdentity1, {0.5}, 1e-3), -1.0, 1e-3);
}

TEST(Example1, BoundedByRadiusTerm) {
  oracle::Rng rng(91);
  for (int i = 0; i < 500; ++i) {
    const int n = 1 + i % 3;
    const PolyVectorField x = oracle::quadratic_field(rng, n, 0.8);
    const CVec z = nonzero_sample(rng, n, 0.8);
    EXPECT_LE(curvature_example1(x, z), norm2(z) - 1.0 + 1e-12);
  }
}

TEST(Example1, LinearPairAgreesWithFiniteDifferences) {
  const PolyVectorField x = PolyVectorField::linear_diagonal({1.0, 1.0}, 0.9);
  const CVec z{0.3, 0.4};
  const double k = curvature_example1(x, z);
  EXPECT_NEAR(k, norm2(z) - 1.0 - norm2(z), 1e-14);  // parallel field: the wedge term vanishes
  EXPECT_NEAR(pullback_curvature_fd(Example1{}, x, z), k, 1e-3 * std::abs(k));
}

TEST(Example1, ClosedFormAgreesWithFiniteDifferencesOnCorpus) {
  oracle::Rng rng(92);
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + i % 3;
    const PolyVectorField x = oracle::quadratic_field(rng, n, 0.6);
    const CVec z = nonzero_sample(rng, n, 0.5);
    const double k = curvature_example1(x, z);
    EXPECT_LE(std::abs(pullback_curvature_fd(Example1{}, x, z) - k), std::max(1e-3, 1e-2 * std::abs(k))) << i;
  }
}

TEST(Example1, RejectsSingularPoints) {
  EXPECT_THROW(curvature_example1(kIdentity1, {0.0}), DomainError);
  EXPECT_THROW(curvature_example1(kIdentity1, {0.95}), DomainError);
  EXPECT_THROW(pullback_curvature_fd(Example1{}, kIdentity1, {0.0}), DomainError);
}

TEST(FiniteDifference, SecondOrderConvergence) {
  oracle::Rng rng(93);
  int checked = 0;
  for (int i = 0; i < 10; ++i) {
    const PolyVectorField x = oracle::quadratic_field(rng, 2, 0.6);
    const CVec z = nonzero_sample(rng, 2, 0.4);
    const double k = curvature_example1(x, z);
    const double e1 = std::abs(pullback_curvature_fd(Example1{}, x, z, 1e-2) - k);
    const double e2 = std::abs(pullback_curvature_fd(Example1{}, x, z, 5e-3) - k);
    if (e1 < 1e-9) continue;  // curvature nearly flat in T: no truncation error to measure
    ++checked;
    EXPECT_GE(e2 / e1, 0.15) << i;
    EXPECT_LE(e2 / e1, 0.45) << i;
  }
  EXPECT_GE(checked, 5);
}

// ------------------------------------------------------------ Example 2

TEST(Example2, LowerBoundValues) {
  const double r = std::exp(-1.0);
  EXPECT_NEAR(example2_lower_bound(kIdentity1, psh_zero(), {r}), 0.5, 1e-14);
  oracle::Rng rng(94);
  const PolyVectorField x = oracle::quadratic_field(rng, 2, 0.6);
  for (int i = 0; i < 100; ++i) {
    const CVec z = nonzero_sample(rng, 2, 0.6);
    const double c = oracle::uniform(rng, -2.0, 2.0);
    for (const auto& u : {psh_zero(), psh_norm_sq(), psh_smooth_max()}) {
      const double base = example2_lower_bound(x, u, z);
      EXPECT_NEAR(example2_lower_bound(x, psh_shift(u, c), z), std::exp(-c) * base, 1e-12 * base);
      const double floor = norm2(x(z)) / (2 * norm2(z) * std::exp(u.value(z)));
      EXPECT_GE(base, floor * (1 - 1e-12));
    }
  }
  EXPECT_THROW(example2_lower_bound(kIdentity1, psh_zero(), {0.0}), DomainError);
}

TEST(Example2, ClosedFormAgreesWithFiniteDifferences) {
  oracle::Rng rng(95);
  const PolyVectorField x = oracle::quadratic_field(rng, 2, 0.55);
  for (const auto& u : {psh_zero(), psh_norm_sq(), psh_smooth_max()}) {
    for (int i = 0; i < 30; ++i) {
      const CVec z = nonzero_sample(rng, 2, 0.5);
      const Example2 spec{u};
      const double k = curvature_closed(spec, x, z);
      EXPECT_LE(std::abs(pullback_curvature_fd(spec, x, z) - k), std::max(1e-3, 1e-2 * std::abs(k))) << u.name;
    }
  }
}

TEST(Example2, InequalityHoldsForTheDefaultCorpus) {
  const PolyVectorField x = PolyVectorField::linear_diagonal({1.0, Complex(1.5, 0.3)}, 0.55);
  oracle::Rng rng(96);
  std::vector<CVec> samples;
  for (int i = 0; i < 60; ++i) samples.push_back(nonzero_sample(rng, 2, 0.55));
  for (const auto& u : {psh_zero(), psh_norm_sq(), psh_smooth_max()}) {
    const Example2Report rep = example2_curvature_check(x, u, samples);
    EXPECT_TRUE(rep.pass) << u.name;
    EXPECT_EQ(rep.u_name, u.name);
    for (const auto& row : rep.rows) EXPECT_GE(-0.5 * row.k_fd, row.rhs - 1e-3);
    if (u.name == "norm_sq") {
      for (const auto& row : rep.rows) EXPECT_LT(row.k_fd, 0.0);
    }
    EXPECT_GE(rep.c_estimate, 1.0);
  }
  EXPECT_EQ(example2_curvature_check(x, psh_smooth_max(), samples).smoothing, 0.05);
}

TEST(Example2, RadialFieldOnTheCriticalShell) {
  const PolyVectorField x = PolyVectorField::linear_diagonal({1.0}, 0.6);
  std::vector<CVec> samples;
  const double r = 0.9 * std::exp(-0.5);
  for (int i = 0; i < 12; ++i) samples.push_back({std::polar(r, 0.5 * i)});
  const Example2Report rep = example2_curvature_check(x, psh_zero(), samples);
  EXPECT_TRUE(rep.pass);
  for (const auto& row : rep.rows) EXPECT_GE(-row.k_fd, norm2(x(row.z)) / norm2(row.z) - 1e-3);
  EXPECT_THROW(example2_curvature_check(PolyVectorField::linear_diagonal({1.0}, 0.7), psh_zero(), samples),
               DomainError);
}

// ------------------------------------------------------------ Example 3

TEST(Example3, OneDimensionalIsThePuncturedDiscMetric) {
  const Example3 spec = one_dimensional();
  const PolyVectorField x = example3_field(spec, 0.9);
  oracle::Rng rng(97);
  for (int i = 0; i < 50; ++i) {
    const Complex z = oracle::point_in_disc(rng, 0.85);
    if (std::abs(z) < 0.02) continue;
    const double lam = density(ModelSurface::punctured_disc(1.0), z);
    EXPECT_NEAR(example3_metric(spec, {z}), lam * lam, 1e-12 * lam * lam);
    EXPECT_NEAR(curvature_closed(spec, x, {z}), -1.0, 1e-14);
    EXPECT_NEAR(pullback_curvature_fd(spec, x, {z}), -1.0, 1e-3);
  }
}

TEST(Example3, ScalingAndAxisContinuity) {
  const Example3 base = diagonal_pair();
  Example3 scaled = base;
  scaled.f[1] = MultiPoly::constant(2, 3.0);
  const PolyVectorField xb = example3_field(base, 0.9), xs = example3_field(scaled, 0.9);
  // psi = metric * |X|^2; the second piece picks up |3|^2
  const CVec z{0.05, 0.4};
  const double psi_b = example3_metric(base, z) * norm2(xb(z));
  const double psi_s = example3_metric(scaled, z) * norm2(xs(z));
  const double l2 = std::log(0.4);
  EXPECT_NEAR(psi_b, 1.0 / (l2 * l2), 1e-12);
  EXPECT_NEAR(psi_s, 9.0 / (l2 * l2), 1e-11);
  // z_2 -> 0 with z_1 fixed: the vanishing piece drops out continuously
  const double on_axis = example3_metric(base, {0.3, 0.0});
  EXPECT_NEAR(example3_metric(base, {0.3, 1e-12}), on_axis, 1e-9 * on_axis);
  EXPECT_THROW(example3_metric(base, {0.0, 0.0}), DomainError);
}

TEST(Example3, DiagonalPairIsBoundedByMinusOneAwayFromTies) {
  const Example3 spec = diagonal_pair();
  const PolyVectorField x = example3_field(spec, 0.9);
  oracle::Rng rng(98);
  std::vector<CVec> samples;
  for (int i = 0; i < 80; ++i) samples.push_back(nonzero_sample(rng, 2, 0.8));
  samples.push_back({0.3, 0.3});  // exact tie
  const UltraReport rep = ultrahyperbolic_check(spec, x, -1.0, samples);
  EXPECT_TRUE(rep.pass);
  EXPECT_GE(rep.ties_skipped, 1);
  for (const auto& row : rep.rows) EXPECT_LE(row.k_fd, -1.0 + 1e-2);
  EXPECT_THROW(curvature_closed(spec, x, {0.3, 0.3}), DomainError);
}

TEST(Ultrahyperbolic, ExampleOneOnHalfBall) {
  oracle::Rng rng(99);
  const PolyVectorField x = oracle::quadratic_field(rng, 2, 0.5);
  std::vector<CVec> samples;
  for (int i = 0; i < 60; ++i) samples.push_back(nonzero_sample(rng, 2, 0.48));
  const UltraReport rep = ultrahyperbolic_check(Example1{}, x, -0.75, samples);
  EXPECT_TRUE(rep.pass);
  for (const auto& row : rep.rows) EXPECT_LE(row.k_closed, -0.75 + 1e-12);
  EXPECT_THROW(ultrahyperbolic_check(Example1{}, x, 0.5, samples), DomainError);
}

}  // namespace
