#pragma once

#include <span>
#include <vector>

#include "hypfol/grid_domain.hpp"
#include "hypfol/types.hpp"

namespace hypfol {

// ------------------------------------------------------------ set distances

/// max(sup_a d(a, B), sup_b d(b, A)) over finite point sets.
double hausdorff_distance(std::span<const Complex> a, std::span<const Complex> b);

/// H(closure U, closure V) + H(boundary U, boundary V) on cell centers.
double rho_metric(const GridDomain& u, const GridDomain& v);

enum class PerturbKind { dilate, boundary_wobble };

/// Lobe count of the boundary wobble, r -> r (1 + eps sin(kWobbleLobes theta)).
inline constexpr int kWobbleLobes = 5;

/// U_1..U_n approaching U. dilate: U_k = (k / (k + 1)) U about the origin.
/// boundary_wobble: x in U_k iff x / (1 + sin(5 arg x) / (k + 1)) in U.
std::vector<GridDomain> perturb_sequence(const GridDomain& u, PerturbKind kind, int n);

// ------------------------------------------------------------ Liouville solve

struct SolverOptions {
  double tol = 1e-8;
  int max_iter = 200;
  /// Use red-black Gauss-Seidel from the start instead of Newton.
  bool gauss_seidel_only = false;
};

struct SolveStats {
  int newton_steps = 0;
  int gs_sweeps = 0;
  int newton_divergences = 0;
  double residual = 0.0;
};

/// Curvature -1 Poincare density lambda = e^u sampled on a grid domain.
class DensityField {
 public:
  DensityField(GridDomain domain, std::vector<double> log_density, SolveStats stats);

  const GridDomain& domain() const { return domain_; }
  const SolveStats& stats() const { return stats_; }

  /// Density at an inside cell.
  double at_cell(int row, int col) const;
  /// Bilinear interpolation of log lambda between the four surrounding cells
  /// when they are all inside; nearest inside cell otherwise.
  double at(Complex z) const;
  const std::vector<double>& log_density() const { return u_; }

 private:
  GridDomain domain_;
  std::vector<double> u_;
  SolveStats stats_;
};

/// Solves Laplace(u) = exp(2u) with Dirichlet data on a two-cell collar,
/// u = -log(dist) + kappa dist / 2 where dist and the boundary curvature
/// kappa come from a local fit of the mask boundary (chamfer distance minus
/// half a cell where no fit is available).
/// Damped Newton (factor 0.5 on residual increase), switching to red-black
/// Gauss-Seidel after two Newton divergences. Throws NonConvergence.
DensityField solve_poincare(const GridDomain& domain, const SolverOptions& opts = {});

}  // namespace hypfol
