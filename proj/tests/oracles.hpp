#pragma once

// Independent reference computations and hand-rolled generators shared by the
// unit tests and the acceptance binary. Nothing here calls the routine it is
// used to check.

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "hypfol/holmap.hpp"
#include "hypfol/types.hpp"
#include "hypfol/vector_field.hpp"

namespace oracle {

using hypfol::Complex;
using hypfol::CVec;
using hypfol::HolMap;

// ------------------------------------------------------------ generators

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline Complex point_in_disc(Rng& rng, double radius) {
  return std::polar(radius * std::sqrt(uniform(rng, 0.0, 1.0)), uniform(rng, 0.0, 2 * hypfol::kPi));
}

inline CVec point_in_ball(Rng& rng, int n, double radius) {
  std::normal_distribution<double> g;
  CVec z(n);
  for (auto& x : z) x = Complex(g(rng), g(rng));
  const double r = radius * std::pow(uniform(rng, 0.0, 1.0), 1.0 / (2 * n));
  const double s = r / std::sqrt(hypfol::norm2(z));
  for (auto& x : z) x *= s;
  return z;
}

/// Finite Blaschke product with `degree` factors, zeros in D(0, 0.9).
inline HolMap blaschke(Rng& rng, int degree) {
  HolMap f = HolMap::mobius(-point_in_disc(rng, 0.9), uniform(rng, 0.0, 2 * hypfol::kPi));
  for (int i = 1; i < degree; ++i) f = HolMap::product(f, HolMap::mobius(-point_in_disc(rng, 0.9), 0.0));
  return f;
}

/// Self-map of the disc: a Blaschke product, possibly contracted or composed.
inline HolMap self_map(Rng& rng) {
  const int kind = std::uniform_int_distribution<int>(0, 3)(rng);
  const HolMap b = blaschke(rng, std::uniform_int_distribution<int>(1, 3)(rng));
  switch (kind) {
    case 0: return b;
    case 1: return HolMap::scale(std::polar(uniform(rng, 0.1, 0.99), uniform(rng, 0.0, 6.0)), b);
    case 2: return HolMap::compose(b, blaschke(rng, 2));
    default: return HolMap::compose(HolMap::mobius(point_in_disc(rng, 0.8), 1.0), HolMap::monomial(3));
  }
}

/// Quadratic polynomial field on C^n with X(0) = 0: diagonal linear part
/// plus small random quadratic terms.
inline hypfol::PolyVectorField quadratic_field(Rng& rng, int n, double radius) {
  std::vector<hypfol::MultiPoly> comps;
  for (int i = 0; i < n; ++i) {
    std::vector<hypfol::Monomial> terms;
    std::vector<int> e(n, 0);
    e[i] = 1;
    terms.push_back({e, Complex(uniform(rng, 0.5, 2.0), uniform(rng, -0.5, 0.5))});
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        std::vector<int> q(n, 0);
        ++q[j];
        ++q[k];
        terms.push_back({q, Complex(uniform(rng, -0.4, 0.4), uniform(rng, -0.4, 0.4))});
      }
    comps.emplace_back(n, std::move(terms));
  }
  return hypfol::PolyVectorField(std::move(comps), radius);
}

// ------------------------------------------------------------ hyperbolic distance

/// Integral of 2|dz|/(1-|z|^2) along the circular-arc geodesic from z to w,
/// obtained as the image of the segment [0, w'] under the automorphism
/// sending 0 to z.
inline double geodesic_length(Complex z, Complex w) {
  const Complex wp = (w - z) / (1.0 - std::conj(z) * w);
  auto integrand = [&](double s) {
    const Complex zeta = s * wp;
    const Complex gamma = (zeta + z) / (1.0 + std::conj(z) * zeta);
    const Complex dgamma = (1.0 - std::norm(z)) / ((1.0 + std::conj(z) * zeta) * (1.0 + std::conj(z) * zeta)) * wp;
    return 2.0 * std::abs(dgamma) / (1.0 - std::norm(gamma));
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, 1.0, 15, 1e-13);
}

// ------------------------------------------------------------ tau in 50 digits

using Big = boost::multiprecision::cpp_dec_float_50;

inline Big tau_big(int m, const Big& a) {
  const Big mm = m;
  const Big c = mm * mm + 2 * mm + 2;
  Big rad = a * a * a * a - c * a * a + (mm + 1) * (mm + 1);
  if (rad < 0) rad = 0;
  const Big den = 2 * (mm + 1) * (mm + 1) - c * a * a + 2 * (mm + 1) * sqrt(rad);
  return a * sqrt(mm * (mm + 2) / den);
}

inline double tau(int m, double alpha) { return static_cast<double>(tau_big(m, Big(alpha))); }

inline double bloch_bound(int m, double alpha) {
  const Big t = tau_big(m, pow(Big(alpha), Big(1) / Big(m + 1)));
  return static_cast<double>(log((1 + t) / (1 - t)));
}

// ------------------------------------------------------------ argument principle

/// Number of zeros of f' inside the closed curve gamma(theta), theta in
/// [0, 2 pi], from the accumulated change of arg f' along it. The step is
/// sized from the local arg rate |f''/f'| |gamma'|, which grows steadily as
/// the curve nears a zero, so a near miss cannot hide a turn inside one step;
/// each increment is also capped at pi / 8.
inline int winding_count(const HolMap& f, const std::function<Complex(double)>& gamma,
                         const std::function<Complex(double)>& dgamma) {
  constexpr double kMaxStep = 2 * hypfol::kPi / 256;
  auto rate = [&](double th) {
    const hypfol::Jet j = f.jet(gamma(th), 2);
    return std::abs(j.derivative(2) / j.derivative(1)) * std::abs(dgamma(th));
  };
  double total = 0.0, th = 0.0;
  Complex prev = f.derivative(gamma(0.0));
  while (th < 2 * hypfol::kPi) {
    double step = std::min({kMaxStep, (hypfol::kPi / 16) / (rate(th) + 1e-300), 2 * hypfol::kPi - th});
    for (;;) {
      const Complex next = f.derivative(gamma(th + step));
      const double d = std::arg(next / prev);
      if (std::abs(d) <= hypfol::kPi / 8 || step < 1e-15) {
        total += d;
        th += step;
        prev = next;
        break;
      }
      step *= 0.5;
    }
  }
  return static_cast<int>(std::lround(total / (2 * hypfol::kPi)));
}

/// Zeros of f' inside the euclidean circle |w| = t.
inline int winding_count(const HolMap& f, double t) {
  return winding_count(
      f, [&](double th) { return std::polar(t, th); }, [&](double th) { return Complex(0.0, 1.0) * std::polar(t, th); });
}

/// Zeros of f' in the hyperbolic ball B_h(z, r), via the euclidean circle
/// that bounds it.
inline int critical_count(const HolMap& f, Complex z, double r) {
  const double t = std::tanh(r / 2);
  auto gamma = [&](double th) {
    const Complex zeta = std::polar(t, th);
    return (zeta + z) / (1.0 + std::conj(z) * zeta);
  };
  auto dgamma = [&](double th) {
    const Complex zeta = std::polar(t, th);
    const Complex den = 1.0 + std::conj(z) * zeta;
    return Complex(0.0, 1.0) * zeta * (1.0 - std::norm(z)) / (den * den);
  };
  return winding_count(f, gamma, dgamma);
}

/// Smallest r with a zero of f' in the closed ball B_h(z, r), by bisection on
/// the argument-principle count; +inf when none lies within r_max.
inline double critical_radius(const HolMap& f, Complex z, double r_max = 24.0, double tol = 1e-9) {
  if (std::abs(f.derivative(z)) < 1e-13) return 0.0;
  if (critical_count(f, z, r_max) == 0) return hypfol::kInf;
  double lo = 0.0, hi = r_max;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (critical_count(f, z, mid) > 0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

// ------------------------------------------------------------ Hausdorff

inline double brute_hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  auto directed = [](const std::vector<Complex>& p, const std::vector<Complex>& q) {
    double worst = 0.0;
    for (const auto& x : p) {
      double best = hypfol::kInf;
      for (const auto& y : q) best = std::min(best, std::abs(x - y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

// ------------------------------------------------------------ leaf curvature

/// -Laplacian(log f) / (2 f) at T = 0 for the density f(T) = density(T) with
/// a plain 5-point stencil; used as a second, stencil-independent oracle.
inline double curvature_5pt(const std::function<double(Complex)>& density, double h) {
  auto lf = [&](Complex t) { return std::log(density(t)); };
  const double lap = (lf(h) + lf(-h) + lf(Complex(0, h)) + lf(Complex(0, -h)) - 4 * lf(0.0)) / (h * h);
  return -lap / (2 * density(0.0));
}

}  // namespace oracle
