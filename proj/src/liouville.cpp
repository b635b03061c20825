#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <optional>

#include "hypfol/kernels.hpp"
#include "hypfol/liouville.hpp"

namespace hypfol {

DensityField::DensityField(GridDomain domain, std::vector<double> log_density, SolveStats stats)
    : domain_(std::move(domain)), u_(std::move(log_density)), stats_(stats) {}

double DensityField::at_cell(int row, int col) const {
  if (!domain_.inside(row, col)) throw DomainError("density field: cell outside domain");
  return std::exp(u_[domain_.index(row, col)]);
}

double DensityField::at(Complex z) const {
  const Complex q = (z - domain_.origin()) / domain_.spacing();
  const int c0 = static_cast<int>(std::floor(q.real()));
  const int r0 = static_cast<int>(std::floor(q.imag()));
  if (domain_.inside(r0, c0) && domain_.inside(r0, c0 + 1) && domain_.inside(r0 + 1, c0) &&
      domain_.inside(r0 + 1, c0 + 1)) {
    const double fx = q.real() - c0;
    const double fy = q.imag() - r0;
    const double u = (1 - fx) * (1 - fy) * u_[domain_.index(r0, c0)] +
                     fx * (1 - fy) * u_[domain_.index(r0, c0 + 1)] +
                     (1 - fx) * fy * u_[domain_.index(r0 + 1, c0)] +
                     fx * fy * u_[domain_.index(r0 + 1, c0 + 1)];
    return std::exp(u);
  }
  const auto cell = domain_.locate(z);
  if (!cell || !domain_.inside(cell->row, cell->col))
    throw DomainError("density field: point outside domain");
  return at_cell(cell->row, cell->col);
}

namespace {

using SpMat = Eigen::SparseMatrix<double>;

struct Problem {
  const GridDomain& dom;
  std::vector<CellRole> role;
  std::vector<int> unknown_id;   // cell -> unknown index or -1
  std::vector<std::size_t> cells;  // unknown index -> cell
  LiouvilleGrid grid() const { return {dom.rows(), dom.cols(), dom.spacing(), role}; }
};

constexpr int kCollarCells = 2;
constexpr int kFitWindow = 6;

struct BoundaryFit {
  double dist;
  double curvature;
};

// Quadratic least-squares fit, in a PCA frame, of the midpoints between
// inside and outside 4-neighbours within kFitWindow cells of (row, col).
// Returns the distance to the fitted curve and its curvature (positive when
// convex), or nothing when the local boundary is not a single smooth arc.
std::optional<BoundaryFit> fit_boundary(const GridDomain& g, int row, int col) {
  std::vector<Eigen::Vector2d> pts;
  for (int dr = -kFitWindow; dr <= kFitWindow; ++dr)
    for (int dc = -kFitWindow; dc <= kFitWindow; ++dc) {
      if (!g.inside(row + dr, col + dc)) continue;
      const int nb[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
      for (const auto& q : nb) {
        if (g.inside(row + dr + q[0], col + dc + q[1])) continue;
        const Eigen::Vector2d m(dc + 0.5 * q[1], dr + 0.5 * q[0]);
        if (m.norm() <= kFitWindow) pts.push_back(m);
      }
    }
  if (pts.size() < 6) return std::nullopt;
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& q : pts) mean += q;
  mean /= static_cast<double>(pts.size());
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  for (const auto& q : pts) cov += (q - mean) * (q - mean).transpose();
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov);
  const Eigen::Vector2d t = es.eigenvectors().col(1);
  Eigen::Vector2d n = es.eigenvectors().col(0);
  if (n.dot(mean) > 0) n = -n;  // inward normal: the cell lies on the +n side
  Eigen::MatrixXd a(pts.size(), 3);
  Eigen::VectorXd y(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double x = pts[i].dot(t);
    a.row(static_cast<Eigen::Index>(i)) << 1.0, x, x * x;
    y[static_cast<Eigen::Index>(i)] = pts[i].dot(n);
  }
  const Eigen::Vector3d co = a.colPivHouseholderQr().solve(y);
  const double rms = std::sqrt((a * co - y).squaredNorm() / static_cast<double>(pts.size()));
  if (!(rms < 0.75) || !(co[0] < 0.0)) return std::nullopt;
  const double s = std::sqrt(1.0 + co[1] * co[1]);
  const double h = g.spacing();
  return BoundaryFit{-co[0] / s * h, 2.0 * co[2] / (s * s * s) / h};
}

// Collar value from the boundary expansion u = -log d + kappa d / 2 + O(d^2).
double collar_value(const GridDomain& g, int row, int col, double chamfer) {
  const double h = g.spacing();
  const double fallback = -std::log(chamfer - 0.5 * h);
  const auto fit = fit_boundary(g, row, col);
  if (!fit || !(fit->dist > 0.0 && fit->dist <= chamfer + h)) return fallback;
  const double bend = fit->curvature * fit->dist;
  return -std::log(fit->dist) + (std::abs(bend) < 1.0 ? 0.5 * bend : 0.0);
}

SpMat assemble(const Problem& p, const std::vector<double>& u) {
  const double inv_h2 = 1.0 / (p.dom.spacing() * p.dom.spacing());
  const int cols = p.dom.cols();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(p.cells.size() * 5);
  for (std::size_t k = 0; k < p.cells.size(); ++k) {
    const std::size_t i = p.cells[k];
    trip.emplace_back(k, k, 4.0 * inv_h2 + 2.0 * std::exp(2.0 * u[i]));
    const std::size_t nb[4] = {i - 1, i + 1, i - cols, i + cols};
    for (std::size_t j : nb)
      if (p.unknown_id[j] >= 0) trip.emplace_back(k, p.unknown_id[j], -inv_h2);
  }
  SpMat a(static_cast<Eigen::Index>(p.cells.size()), static_cast<Eigen::Index>(p.cells.size()));
  a.setFromTriplets(trip.begin(), trip.end());
  return a;
}

}  // namespace

DensityField solve_poincare(const GridDomain& domain, const SolverOptions& opts) {
  if (!(opts.tol > 0.0)) throw DomainError("solve_poincare: tol must be positive");
  if (domain.interior_count() == 0) throw DomainError("solve_poincare: empty interior");

  const std::vector<double> chamfer = domain.chamfer_distance();
  const double h = domain.spacing();
  // cells within kCollarCells of the outside carry Dirichlet data; thin
  // domains fall back to the one-cell boundary layer
  auto in_collar = [&](int r, int c, int width) {
    return width == 1 ? domain.is_boundary(r, c) : chamfer[domain.index(r, c)] <= width * h * (1 + 1e-12);
  };
  int width = kCollarCells;
  for (; width > 1; --width) {
    bool any = false;
    for (int r = 0; r < domain.rows() && !any; ++r)
      for (int c = 0; c < domain.cols() && !any; ++c) any = domain.inside(r, c) && !in_collar(r, c, width);
    if (any) break;
  }

  Problem p{domain, {}, {}, {}};
  const std::size_t ncell = static_cast<std::size_t>(domain.rows()) * domain.cols();
  p.role.assign(ncell, CellRole::outside);
  p.unknown_id.assign(ncell, -1);
  std::vector<double> u(ncell, 0.0);
  for (int r = 0; r < domain.rows(); ++r)
    for (int c = 0; c < domain.cols(); ++c) {
      const std::size_t i = domain.index(r, c);
      if (!domain.inside(r, c)) continue;
      if (in_collar(r, c, width)) {
        p.role[i] = CellRole::fixed;
        u[i] = collar_value(domain, r, c, chamfer[i]);
      } else {
        p.role[i] = CellRole::unknown;
        p.unknown_id[i] = static_cast<int>(p.cells.size());
        p.cells.push_back(i);
        u[i] = -std::log(chamfer[i] - 0.5 * h);  // initial guess from lambda ~ 1 / dist
      }
    }

  const LiouvilleGrid grid = p.grid();
  SolveStats stats;
  double res = parallel::liouville_residual(grid, u, {});
  int iter = 0;
  bool use_gs = opts.gauss_seidel_only;

  std::vector<double> rvec(ncell, 0.0);
  std::vector<double> trial(ncell);
  Eigen::SimplicialLDLT<SpMat> ldlt;
  bool analyzed = false;
  while (!use_gs && res > opts.tol && iter < opts.max_iter) {
    parallel::liouville_residual(grid, u, rvec);
    const SpMat a = assemble(p, u);
    if (!analyzed) {
      ldlt.analyzePattern(a);
      analyzed = true;
    }
    ldlt.factorize(a);
    if (ldlt.info() != Eigen::Success) {
      use_gs = true;
      break;
    }
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(p.cells.size()));
    for (std::size_t k = 0; k < p.cells.size(); ++k) rhs[k] = rvec[p.cells[k]];
    const Eigen::VectorXd delta = ldlt.solve(rhs);

    double step = 1.0;
    double trial_res = kInf;
    for (int damp = 0; damp < 40; ++damp) {
      trial = u;
      for (std::size_t k = 0; k < p.cells.size(); ++k) trial[p.cells[k]] += step * delta[k];
      trial_res = parallel::liouville_residual(grid, trial, {});
      if (damp == 0 && !(trial_res <= res)) ++stats.newton_divergences;
      if (trial_res <= res) break;
      step *= 0.5;
    }
    ++iter;
    ++stats.newton_steps;
    if (trial_res <= res) {
      u.swap(trial);
      res = trial_res;
    }
    if (stats.newton_divergences >= 2) use_gs = true;
  }

  while (res > opts.tol && iter < opts.max_iter) {
    parallel::liouville_sweep(grid, u);
    res = parallel::liouville_residual(grid, u, {});
    ++iter;
    ++stats.gs_sweeps;
  }

  stats.residual = res;
  if (!(res <= opts.tol)) throw NonConvergence("solve_poincare did not converge", res, iter);
  return DensityField(domain, std::move(u), stats);
}

}  // namespace hypfol
