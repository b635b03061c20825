#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hypfol/types.hpp"

namespace hypfol {

struct Cell {
  int row;
  int col;
};

/// A bounded planar domain represented by an occupancy mask on a uniform grid.
/// Cell (row, col) has center origin + spacing * (col + i row). Cells outside
/// the array count as outside the domain.
class GridDomain {
 public:
  GridDomain(Complex origin, double spacing, int rows, int cols, std::vector<std::uint8_t> mask);

  /// Rasterize `inside` on the grid whose first cell center is `lo` and
  /// which covers `hi`.
  static GridDomain from_predicate(Complex lo, Complex hi, double spacing,
                                   const std::function<bool(Complex)>& inside);
  /// Open disc on the n x n square cells tiling its bounding box.
  static GridDomain disc(Complex center, double radius, int n);
  /// inner < |z - center| < outer on the n x n cells tiling the outer box.
  static GridDomain annulus(Complex center, double inner, double outer, int n);

  Complex origin() const { return origin_; }
  double spacing() const { return spacing_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<std::uint8_t>& mask() const { return mask_; }

  std::size_t index(int row, int col) const { return static_cast<std::size_t>(row) * cols_ + col; }
  Complex center(int row, int col) const { return origin_ + spacing_ * Complex(col, row); }
  bool inside(int row, int col) const;
  /// Inside cell with at least one 4-neighbour outside.
  bool is_boundary(int row, int col) const;
  /// Inside, not on the boundary layer.
  bool is_interior(int row, int col) const { return inside(row, col) && !is_boundary(row, col); }

  std::size_t inside_count() const;
  std::size_t interior_count() const;

  /// Nearest cell to z, if z falls within the array.
  std::optional<Cell> locate(Complex z) const;
  /// z's nearest cell is inside.
  bool contains(Complex z) const;

  /// Cell centers of the closure (all inside cells) and of the boundary layer.
  std::vector<Complex> closure_points() const;
  std::vector<Complex> boundary_points() const;

  GridDomain translated(Complex shift) const;
  /// Connected (4-neighbour) component of the inside cells containing z.
  GridDomain component_containing(Complex z) const;

  /// Euclidean distance from each inside cell center to the nearest outside
  /// cell center by a two-pass chamfer transform; 0 outside.
  std::vector<double> chamfer_distance() const;

 private:
  Complex origin_;
  double spacing_;
  int rows_;
  int cols_;
  std::vector<std::uint8_t> mask_;
};

}  // namespace hypfol
