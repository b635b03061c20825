#pragma once

#include <random>

#include "hypfol/holmap.hpp"

namespace hypfol {

using Rng = std::mt19937_64;

/// Uniform point in the open disc of the given radius.
Complex random_in_disc(Rng& rng, double radius = 1.0);

/// Uniform point in the open ball B^n(0, radius).
CVec random_in_ball(Rng& rng, int n, double radius);

/// Uniform point on the sphere |z| = radius in C^n.
CVec random_on_sphere(Rng& rng, int n, double radius);

/// Random disc automorphism e^{i theta} (z + a) / (1 + conj(a) z), |a| <= 0.95.
HolMap random_automorphism(Rng& rng);

/// Random holomorphic self-map of the disc: compositions and products of
/// automorphisms, monomials, contracting scalings and polynomials with
/// coefficient l1-norm at most 1.
HolMap random_self_map(Rng& rng, int depth = 3);

/// Random member of O_m with a non-critical origin: nested compositions
/// M_1 o w^{m+1} o M_2 (o w^{m+1} o M_3), so every critical point has
/// multiplicity a multiple of m + 1.
HolMap random_om_map(Rng& rng, int m);

}  // namespace hypfol
