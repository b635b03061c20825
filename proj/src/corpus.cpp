#include "hypfol/corpus.hpp"

#include <cmath>

#include "hypfol/hyp_core.hpp"

namespace hypfol {

namespace {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

HolMap random_leaf(Rng& rng) {
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: return random_automorphism(rng);
    case 1: return HolMap::monomial(std::uniform_int_distribution<int>(1, 4)(rng), std::polar(1.0, uniform(rng, 0, 2 * kPi)));
    case 2: {
      const int deg = std::uniform_int_distribution<int>(1, 4)(rng);
      std::vector<Complex> c(deg + 1);
      double l1 = 0.0;
      for (auto& v : c) {
        v = random_in_disc(rng);
        l1 += std::abs(v);
      }
      for (auto& v : c) v /= l1;
      return HolMap::polynomial(std::move(c));
    }
    default: return HolMap::scale(random_in_disc(rng), random_automorphism(rng));
  }
}

}  // namespace

Complex random_in_disc(Rng& rng, double radius) {
  return std::polar(radius * std::sqrt(uniform(rng, 0.0, 1.0)), uniform(rng, 0.0, 2 * kPi));
}

CVec random_on_sphere(Rng& rng, int n, double radius) {
  std::normal_distribution<double> g;
  CVec z(n);
  for (auto& v : z) v = {g(rng), g(rng)};
  const double s = std::sqrt(norm2(z));
  for (auto& v : z) v *= radius / s;
  return z;
}

CVec random_in_ball(Rng& rng, int n, double radius) {
  const double r = radius * std::pow(uniform(rng, 0.0, 1.0), 1.0 / (2.0 * n));
  return random_on_sphere(rng, n, r);
}

HolMap random_automorphism(Rng& rng) {
  return HolMap::mobius(random_in_disc(rng, 0.95), uniform(rng, 0.0, 2 * kPi));
}

HolMap random_self_map(Rng& rng, int depth) {
  if (depth <= 0) return random_leaf(rng);
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0: return HolMap::compose(random_self_map(rng, depth - 1), random_self_map(rng, depth - 1));
    case 1: return HolMap::product(random_self_map(rng, depth - 1), random_self_map(rng, depth - 1));
    default: return random_leaf(rng);
  }
}

HolMap random_om_map(Rng& rng, int m) {
  if (m < 1) throw DomainError("random_om_map: m must be >= 1");
  const HolMap power = HolMap::monomial(m + 1);
  for (;;) {
    HolMap f = HolMap::compose(power, random_automorphism(rng));
    if (std::uniform_int_distribution<int>(0, 1)(rng) == 1)
      f = HolMap::compose(power, HolMap::compose(random_automorphism(rng), f));
    f = HolMap::compose(random_automorphism(rng), f);
    // keep the origin at hyperbolic distance >= 0.1 from the critical set
    bool ok = true;
    for (const auto& c : f.critical_points()) ok = ok && hyp_distance(0.0, c.z) >= 0.1;
    if (ok) return f;
  }
}

}  // namespace hypfol
