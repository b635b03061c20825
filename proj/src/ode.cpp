#include "hypfol/ode.hpp"

#include <algorithm>
#include <cmath>

namespace hypfol {

namespace {

// Dormand-Prince 5(4) tableau (autonomous, so the nodes c_i are not needed)
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

CVec axpy(const CVec& y, double h, std::initializer_list<std::pair<double, const CVec*>> terms) {
  CVec out = y;
  for (const auto& [w, k] : terms)
    if (w != 0.0)
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * w * (*k)[i];
  return out;
}

}  // namespace

CVec DenseRay::at(double q) const {
  if (s.empty()) throw DomainError("DenseRay: empty trajectory");
  if (q <= s.front()) return y.front();
  if (q >= s.back()) return y.back();
  const auto it = std::upper_bound(s.begin(), s.end(), q);
  const std::size_t k = static_cast<std::size_t>(it - s.begin()) - 1;
  const double h = s[k + 1] - s[k];
  const double t = (q - s[k]) / h;
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
  CVec out(y[k].size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = h00 * y[k][i] + h10 * h * dy[k][i] + h01 * y[k + 1][i] + h11 * h * dy[k + 1][i];
  return out;
}

DenseRay integrate_ray(const Field& field, const CVec& y0, Complex direction, double s_end,
                       const std::vector<double>& hit, const OdeOptions& opts,
                       const std::function<bool(const CVec&)>& stop) {
  auto rhs = [&](const CVec& y) {
    CVec f = field(y);
    for (auto& v : f) v *= direction;
    return f;
  };
  DenseRay ray;
  CVec y = y0;
  CVec k1 = rhs(y);
  double s = 0.0;
  ray.s.push_back(s);
  ray.y.push_back(y);
  ray.dy.push_back(k1);
  if (s_end <= 0.0) return ray;
  if (stop && stop(y)) {
    ray.status = DenseRay::Status::stopped;
    return ray;
  }

  std::size_t next_hit = 0;
  while (next_hit < hit.size() && hit[next_hit] <= 0.0) ++next_hit;
  double h = std::min(s_end, 1e-2);
  int steps = 0;
  while (s < s_end) {
    if (++steps > opts.max_steps) {
      ray.status = DenseRay::Status::underflow;
      return ray;
    }
    double target = s_end;
    if (next_hit < hit.size()) target = std::min(target, hit[next_hit]);
    const double nominal = h;
    bool lands = false;
    if (s + h >= target) {
      h = target - s;
      lands = true;
    }

    const CVec k2 = rhs(axpy(y, h, {{a21, &k1}}));
    const CVec k3 = rhs(axpy(y, h, {{a31, &k1}, {a32, &k2}}));
    const CVec k4 = rhs(axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const CVec k5 = rhs(axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const CVec k6 = rhs(axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const CVec ynew = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const CVec k7 = rhs(ynew);

    double err = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const Complex ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = opts.atol + opts.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err += std::norm(ei) / (sc * sc);
    }
    err = std::sqrt(err / static_cast<double>(y.size()));
    if (!std::isfinite(err)) err = 1e10;

    if (err <= 1.0) {
      s = lands ? target : s + h;
      y = ynew;
      k1 = k7;
      ray.s.push_back(s);
      ray.y.push_back(y);
      ray.dy.push_back(k1);
      while (next_hit < hit.size() && hit[next_hit] <= s) ++next_hit;
      if (stop && stop(y)) {
        ray.status = DenseRay::Status::stopped;
        return ray;
      }
    }
    const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    // a step shortened to land on an abscissa does not shrink the next one
    h = (lands && err <= 1.0) ? std::max(nominal, h * fac) : h * fac;
    if (h < opts.min_step * std::max(1.0, s)) {
      ray.status = DenseRay::Status::underflow;
      return ray;
    }
  }
  return ray;
}

}  // namespace hypfol
