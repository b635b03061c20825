#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "hypfol/holmap.hpp"
#include "hypfol/types.hpp"

namespace hypfol {

/// Order value standing for m = infinity (locally injective maps).
inline constexpr int kOrderInf = std::numeric_limits<int>::max();

/// tau_m(alpha) for m >= 1 and alpha in [0, 1].
double tau(int m, double alpha);

/// log((1 + tau) / (1 - tau)) with tau = tau_m(alpha^{1/(m+1)}); +inf at
/// alpha = 1 and for m = kOrderInf.
double bloch_lower_bound(int m, double alpha);

struct BlochParams {
  int m = 1;
  double alpha = 0.5;
  double a = 1.0;  // curvature bounded above by -a^2
};

/// A leafwise map with g-distortion >= alpha has leaf distortion >= a alpha,
/// so the bound is bloch_lower_bound(m, a alpha). Requires alpha in (0, 1/a].
double foliated_bloch_bound(const BlochParams& params);

double variable_bloch_bound(int m, const std::function<double(const CVec&)>& alpha_fn, const CVec& x);

/// True iff every critical point of f has local multiplicity >= m + 1.
bool multiplicity_class(const HolMap& f, int m);

/// Hyperbolic distance from z to the critical set of f (+inf if empty).
double t_local(const HolMap& f, Complex z);
double t_local(const HolMap& f, const std::vector<CriticalPoint>& critical, Complex z);

struct SamplingSpec {
  int count = 10000;
  std::uint64_t seed = 1;
  /// When set, the supremum is restricted to |z| < radius and estimated
  /// from below on a hyperbolic-area-uniform sample.
  std::optional<double> radius;
};

struct TEstimate {
  double value = kInf;
  bool lower_bound = false;
};

/// Sample of `count` points in D(0, radius) with density proportional to
/// lambda_disc^2.
std::vector<Complex> hyperbolic_sample(int count, double radius, std::uint64_t seed);

TEstimate t_of_map(const HolMap& f, const SamplingSpec& sampling = {});

struct BlochReport {
  double alpha0 = 0.0;
  double bound = 0.0;
  double t_f = kInf;
  bool satisfied = true;
  bool lower_bound_flag = false;
  bool skipped = false;  // alpha0 below 1e-12, bound undefined
};

/// Checks t(f) >= bloch_lower_bound(m, distortion(f, disc, 0)). Throws
/// DomainError when f is not in the class O_m.
BlochReport bloch_inequality_check(const HolMap& f, int m, const SamplingSpec& sampling = {});

}  // namespace hypfol
