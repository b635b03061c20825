#include "hypfol/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hypfol/hyp_core.hpp"

namespace hypfol {

namespace {
constexpr double kAlphaFloor = 1e-12;
}

double tau(int m, double alpha) {
  if (m < 1) throw DomainError("tau: m must be >= 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("tau: alpha outside [0, 1]");
  const double mm = m;
  const double q = mm * mm + 2 * mm + 2;
  const double p = (mm + 1) * (mm + 1);
  const double a2 = alpha * alpha;
  double rad = a2 * a2 - q * a2 + p;
  if (rad < 0.0) {
    if (rad < -1e-14) throw DomainError("tau: negative radicand");
    rad = 0.0;
  }
  const double den = 2 * p - q * a2 + 2 * (mm + 1) * std::sqrt(rad);
  return std::min(1.0, alpha * std::sqrt(mm * (mm + 2) / den));
}

double bloch_lower_bound(int m, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("bloch_lower_bound: alpha outside (0, 1]");
  if (m == kOrderInf) return kInf;
  const double t = tau(m, std::pow(alpha, 1.0 / (m + 1.0)));
  if (t >= 1.0) return kInf;
  return std::log1p(t) - std::log1p(-t);
}

double foliated_bloch_bound(const BlochParams& params) {
  if (!(params.a > 0.0)) throw DomainError("foliated_bloch_bound: a must be positive");
  const double cap = 1.0 / params.a;
  if (!(params.alpha > 0.0 && params.alpha <= cap)) throw DomainError("foliated_bloch_bound: alpha outside (0, 1/a]");
  const double scaled = params.alpha == cap ? 1.0 : std::min(1.0, params.a * params.alpha);
  return bloch_lower_bound(params.m, scaled);
}

double variable_bloch_bound(int m, const std::function<double(const CVec&)>& alpha_fn, const CVec& x) {
  return bloch_lower_bound(m, alpha_fn(x));
}

bool multiplicity_class(const HolMap& f, int m) {
  if (m < 1) throw DomainError("multiplicity_class: m must be >= 1");
  if (f.is_constant()) throw DomainError("multiplicity_class: constant map");
  const auto crit = f.critical_points();
  if (m == kOrderInf) return crit.empty();
  return std::all_of(crit.begin(), crit.end(), [m](const CriticalPoint& c) { return c.order >= m; });
}

double t_local(const HolMap& f, const std::vector<CriticalPoint>& critical, Complex z) {
  if (!ModelSurface::disc().contains(z)) throw DomainError("t_local: z outside the disc");
  if (f.derivative(z) == Complex(0.0)) return 0.0;
  double best = kInf;
  for (const auto& c : critical) best = std::min(best, hyp_distance(z, c.z));
  return best;
}

double t_local(const HolMap& f, Complex z) { return t_local(f, f.critical_points(), z); }

std::vector<Complex> hyperbolic_sample(int count, double radius, std::uint64_t seed) {
  if (count < 1) throw DomainError("hyperbolic_sample: count must be positive");
  if (!(radius > 0.0 && radius < 1.0)) throw DomainError("hyperbolic_sample: radius outside (0, 1)");
  // hyperbolic area of D(0, r) is proportional to r^2 / (1 - r^2)
  const double total = radius * radius / (1.0 - radius * radius);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Complex> out(count);
  for (auto& z : out) {
    const double s = unit(rng) * total;
    const double r = std::sqrt(s / (1.0 + s));
    z = std::polar(r, 2.0 * kPi * unit(rng));
  }
  return out;
}

TEstimate t_of_map(const HolMap& f, const SamplingSpec& sampling) {
  if (f.is_constant()) throw DomainError("t_of_map: constant map");
  const auto crit = f.critical_points();
  if (crit.empty() || !sampling.radius) return {};
  const auto pts = hyperbolic_sample(sampling.count, *sampling.radius, sampling.seed);
  const int n = static_cast<int>(pts.size());
  double best = 0.0;
#pragma omp parallel for reduction(max : best)
  for (int i = 0; i < n; ++i) best = std::max(best, t_local(f, crit, pts[i]));
  return {best, true};
}

BlochReport bloch_inequality_check(const HolMap& f, int m, const SamplingSpec& sampling) {
  if (!multiplicity_class(f, m)) throw DomainError("bloch_inequality_check: map is not in the class O_m");
  BlochReport r;
  r.alpha0 = std::min(1.0, distortion(f, ModelSurface::disc(), 0.0));
  const TEstimate t = t_of_map(f, sampling);
  r.t_f = t.value;
  r.lower_bound_flag = t.lower_bound;
  if (r.alpha0 < kAlphaFloor) {
    r.skipped = true;
    return r;
  }
  r.bound = bloch_lower_bound(m, r.alpha0);
  r.satisfied = r.t_f >= r.bound;
  return r;
}

}  // namespace hypfol
