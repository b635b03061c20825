#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hypfol/types.hpp"

// Data-parallel inner loops. Each OpenMP kernel in `parallel` has a serial
// counterpart in `serial` that is kept as the reference for tests and the
// benchmark. Every reduction here is a max, so results do not depend on the
// thread count.

namespace hypfol {

/// Cell roles for the Liouville grid problem.
enum class CellRole : std::uint8_t { outside = 0, fixed = 1, unknown = 2 };

/// 5-point Liouville problem  Laplace(u) = exp(2u)  on a rows x cols grid.
struct LiouvilleGrid {
  int rows = 0;
  int cols = 0;
  double spacing = 0.0;
  std::span<const CellRole> role;
};

namespace serial {

/// Max-norm of Laplace(u) - exp(2u) over unknown cells; writes the residual
/// into `out` when it is non-empty.
double liouville_residual(const LiouvilleGrid& g, std::span<const double> u, std::span<double> out);

/// One red-black nonlinear Gauss-Seidel sweep (pointwise Newton update).
void liouville_sweep(const LiouvilleGrid& g, std::span<double> u);

/// sup_{a in A} min_{b in B} |a - b| by exhaustive search.
double directed_hausdorff(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace serial

namespace parallel {

double liouville_residual(const LiouvilleGrid& g, std::span<const double> u, std::span<double> out);
void liouville_sweep(const LiouvilleGrid& g, std::span<double> u);

/// Same value as the serial version; B is bucketed on a uniform grid and each
/// query searches outward ring by ring.
double directed_hausdorff(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace parallel

}  // namespace hypfol
