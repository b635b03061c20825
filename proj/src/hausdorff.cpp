#include <cmath>

#include "hypfol/kernels.hpp"
#include "hypfol/liouville.hpp"

namespace hypfol {

double hausdorff_distance(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.empty() || b.empty()) throw DomainError("hausdorff_distance: empty set");
  return std::max(parallel::directed_hausdorff(a, b), parallel::directed_hausdorff(b, a));
}

double rho_metric(const GridDomain& u, const GridDomain& v) {
  const auto cu = u.closure_points();
  const auto cv = v.closure_points();
  const auto bu = u.boundary_points();
  const auto bv = v.boundary_points();
  return hausdorff_distance(cu, cv) + hausdorff_distance(bu, bv);
}

std::vector<GridDomain> perturb_sequence(const GridDomain& u, PerturbKind kind, int n) {
  if (n < 1) throw DomainError("perturb_sequence: n must be >= 1");
  const double h = u.spacing();
  const Complex lo = u.origin();
  const Complex hi = u.center(u.rows() - 1, u.cols() - 1);
  std::vector<GridDomain> out;
  out.reserve(n);
  for (int k = 1; k <= n; ++k) {
    if (kind == PerturbKind::dilate) {
      const double s = static_cast<double>(k) / (k + 1);
      out.push_back(GridDomain::from_predicate(lo, hi, h, [&](Complex z) { return u.contains(z / s); }));
      continue;
    }
    const double eps = 1.0 / (k + 1);
    auto factor = [eps](Complex z) {
      return 1.0 + eps * std::sin(kWobbleLobes * std::arg(z));
    };
    // grow the box to hold the outward bulges, keeping cell alignment with U
    const double grow = 1.0 + eps;
    const double cx = std::ceil(std::max(0.0, lo.real() - std::min(lo.real(), grow * lo.real())) / h);
    const double cy = std::ceil(std::max(0.0, lo.imag() - std::min(lo.imag(), grow * lo.imag())) / h);
    const double ex = std::ceil(std::max(0.0, std::max(hi.real(), grow * hi.real()) - hi.real()) / h);
    const double ey = std::ceil(std::max(0.0, std::max(hi.imag(), grow * hi.imag()) - hi.imag()) / h);
    const Complex nlo = lo - h * Complex(cx, cy);
    const Complex nhi = hi + h * Complex(ex, ey);
    out.push_back(GridDomain::from_predicate(nlo, nhi, h, [&](Complex z) {
      if (z == Complex(0.0)) return u.contains(z);
      return u.contains(z / factor(z));
    }));
  }
  return out;
}

}  // namespace hypfol
