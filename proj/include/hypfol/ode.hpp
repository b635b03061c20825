#pragma once

#include <functional>
#include <vector>

#include "hypfol/types.hpp"

namespace hypfol {

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-14;
  double min_step = 1e-13;
  int max_steps = 1000000;
};

/// Accepted steps of an integration along s in [0, s_end]; cubic Hermite
/// interpolation between nodes.
class DenseRay {
 public:
  enum class Status { completed, stopped, underflow };

  Status status = Status::completed;
  std::vector<double> s;
  std::vector<CVec> y;
  std::vector<CVec> dy;  // dy/ds at the nodes

  double s_reached() const { return s.empty() ? 0.0 : s.back(); }
  CVec at(double s_query) const;
};

using Field = std::function<CVec(const CVec&)>;

/// Dormand-Prince 5(4) integration of dy/ds = direction * field(y) from s = 0
/// to s_end. Abscissas in `hit` (ascending) are landed on exactly. The run
/// stops early when `stop(y)` becomes true or the step underflows.
DenseRay integrate_ray(const Field& field, const CVec& y0, Complex direction, double s_end,
                       const std::vector<double>& hit, const OdeOptions& opts,
                       const std::function<bool(const CVec&)>& stop = {});

}  // namespace hypfol
