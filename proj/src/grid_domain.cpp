#include "hypfol/grid_domain.hpp"

#include <algorithm>
#include <cmath>

namespace hypfol {

GridDomain::GridDomain(Complex origin, double spacing, int rows, int cols,
                       std::vector<std::uint8_t> mask)
    : origin_(origin), spacing_(spacing), rows_(rows), cols_(cols), mask_(std::move(mask)) {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw DomainError("grid spacing must be positive");
  if (rows <= 0 || cols <= 0) throw DomainError("grid must have positive extent");
  if (mask_.size() != static_cast<std::size_t>(rows) * cols)
    throw DomainError("grid mask size does not match rows * cols");
  for (auto& m : mask_) m = m ? 1 : 0;
  if (inside_count() == 0) throw DomainError("grid domain is empty");
}

GridDomain GridDomain::from_predicate(Complex lo, Complex hi, double spacing,
                                      const std::function<bool(Complex)>& inside) {
  const int cols = static_cast<int>(std::floor((hi.real() - lo.real()) / spacing + 1e-9)) + 1;
  const int rows = static_cast<int>(std::floor((hi.imag() - lo.imag()) / spacing + 1e-9)) + 1;
  if (rows <= 0 || cols <= 0) throw DomainError("from_predicate: empty box");
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(rows) * cols, 0);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      mask[static_cast<std::size_t>(r) * cols + c] = inside(lo + spacing * Complex(c, r)) ? 1 : 0;
  return GridDomain(lo, spacing, rows, cols, std::move(mask));
}

GridDomain GridDomain::disc(Complex center, double radius, int n) {
  if (!(radius > 0.0) || n < 3) throw DomainError("disc: need radius > 0 and n >= 3");
  const double h = 2.0 * radius / n;
  const Complex lo = center - (radius - 0.5 * h) * Complex(1.0, 1.0);
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(n) * n, 0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const Complex z = lo + h * Complex(c, r);
      mask[static_cast<std::size_t>(r) * n + c] = std::abs(z - center) < radius ? 1 : 0;
    }
  return GridDomain(lo, h, n, n, std::move(mask));
}

GridDomain GridDomain::annulus(Complex center, double inner, double outer, int n) {
  if (!(inner > 0.0 && inner < outer) || n < 3) throw DomainError("annulus: need 0 < inner < outer");
  const double h = 2.0 * outer / n;
  const Complex lo = center - (outer - 0.5 * h) * Complex(1.0, 1.0);
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(n) * n, 0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const double d = std::abs(lo + h * Complex(c, r) - center);
      mask[static_cast<std::size_t>(r) * n + c] = (d > inner && d < outer) ? 1 : 0;
    }
  return GridDomain(lo, h, n, n, std::move(mask));
}

bool GridDomain::inside(int row, int col) const {
  if (row < 0 || col < 0 || row >= rows_ || col >= cols_) return false;
  return mask_[index(row, col)] != 0;
}

bool GridDomain::is_boundary(int row, int col) const {
  if (!inside(row, col)) return false;
  return !inside(row - 1, col) || !inside(row + 1, col) || !inside(row, col - 1) ||
         !inside(row, col + 1);
}

std::size_t GridDomain::inside_count() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), std::uint8_t{1}));
}

std::size_t GridDomain::interior_count() const {
  std::size_t n = 0;
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) n += is_interior(r, c) ? 1 : 0;
  return n;
}

std::optional<Cell> GridDomain::locate(Complex z) const {
  const Complex q = (z - origin_) / spacing_;
  const double fc = std::round(q.real());
  const double fr = std::round(q.imag());
  if (!(fc >= 0 && fr >= 0 && fc < cols_ && fr < rows_)) return std::nullopt;
  return Cell{static_cast<int>(fr), static_cast<int>(fc)};
}

bool GridDomain::contains(Complex z) const {
  const auto cell = locate(z);
  return cell && inside(cell->row, cell->col);
}

std::vector<Complex> GridDomain::closure_points() const {
  std::vector<Complex> pts;
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if (inside(r, c)) pts.push_back(center(r, c));
  return pts;
}

std::vector<Complex> GridDomain::boundary_points() const {
  std::vector<Complex> pts;
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if (is_boundary(r, c)) pts.push_back(center(r, c));
  return pts;
}

GridDomain GridDomain::translated(Complex shift) const {
  return GridDomain(origin_ + shift, spacing_, rows_, cols_, mask_);
}

GridDomain GridDomain::component_containing(Complex z) const {
  const auto seed = locate(z);
  if (!seed || !inside(seed->row, seed->col))
    throw DomainError("component_containing: point outside domain");
  std::vector<std::uint8_t> comp(mask_.size(), 0);
  std::vector<Cell> stack{*seed};
  comp[index(seed->row, seed->col)] = 1;
  while (!stack.empty()) {
    const Cell c = stack.back();
    stack.pop_back();
    const Cell nb[4] = {{c.row - 1, c.col}, {c.row + 1, c.col}, {c.row, c.col - 1}, {c.row, c.col + 1}};
    for (const Cell& n : nb)
      if (inside(n.row, n.col) && !comp[index(n.row, n.col)]) {
        comp[index(n.row, n.col)] = 1;
        stack.push_back(n);
      }
  }
  return GridDomain(origin_, spacing_, rows_, cols_, std::move(comp));
}

std::vector<double> GridDomain::chamfer_distance() const {
  const double a = spacing_;
  const double b = std::sqrt(2.0) * spacing_;
  std::vector<double> d(mask_.size());
  for (std::size_t i = 0; i < mask_.size(); ++i) d[i] = mask_[i] ? kInf : 0.0;
  auto at = [&](int r, int c) -> double {
    if (r < 0 || c < 0 || r >= rows_ || c >= cols_) return 0.0;
    return d[index(r, c)];
  };
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) {
      double& v = d[index(r, c)];
      if (v == 0.0) continue;
      v = std::min({v, at(r - 1, c - 1) + b, at(r - 1, c) + a, at(r - 1, c + 1) + b, at(r, c - 1) + a});
    }
  for (int r = rows_ - 1; r >= 0; --r)
    for (int c = cols_ - 1; c >= 0; --c) {
      double& v = d[index(r, c)];
      if (v == 0.0) continue;
      v = std::min({v, at(r + 1, c + 1) + b, at(r + 1, c) + a, at(r + 1, c - 1) + b, at(r, c + 1) + a});
    }
  return d;
}

}  // namespace hypfol
