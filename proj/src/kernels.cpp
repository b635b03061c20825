#include "hypfol/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

namespace hypfol {

namespace {

inline double cell_residual(const LiouvilleGrid& g, const double* u, int r, int c, double inv_h2) {
  const std::size_t i = static_cast<std::size_t>(r) * g.cols + c;
  const double lap = (u[i - 1] + u[i + 1] + u[i - g.cols] + u[i + g.cols] - 4.0 * u[i]) * inv_h2;
  return lap - std::exp(2.0 * u[i]);
}

inline void cell_update(const LiouvilleGrid& g, double* u, int r, int c, double inv_h2) {
  const std::size_t i = static_cast<std::size_t>(r) * g.cols + c;
  const double res = cell_residual(g, u, r, c, inv_h2);
  const double diag = -4.0 * inv_h2 - 2.0 * std::exp(2.0 * u[i]);
  u[i] -= res / diag;
}

}  // namespace

namespace serial {

double liouville_residual(const LiouvilleGrid& g, std::span<const double> u, std::span<double> out) {
  const double inv_h2 = 1.0 / (g.spacing * g.spacing);
  double worst = 0.0;
  for (int r = 0; r < g.rows; ++r)
    for (int c = 0; c < g.cols; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * g.cols + c;
      if (g.role[i] != CellRole::unknown) continue;
      const double res = cell_residual(g, u.data(), r, c, inv_h2);
      if (!out.empty()) out[i] = res;
      worst = std::max(worst, std::abs(res));
    }
  return worst;
}

void liouville_sweep(const LiouvilleGrid& g, std::span<double> u) {
  const double inv_h2 = 1.0 / (g.spacing * g.spacing);
  for (int color = 0; color < 2; ++color)
    for (int r = 0; r < g.rows; ++r)
      for (int c = (r + color) % 2; c < g.cols; c += 2) {
        const std::size_t i = static_cast<std::size_t>(r) * g.cols + c;
        if (g.role[i] == CellRole::unknown) cell_update(g, u.data(), r, c, inv_h2);
      }
}

double directed_hausdorff(std::span<const Complex> a, std::span<const Complex> b) {
  double worst = 0.0;
  for (const Complex& p : a) {
    double best = kInf;
    for (const Complex& q : b) best = std::min(best, std::norm(p - q));
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

}  // namespace serial

namespace parallel {

double liouville_residual(const LiouvilleGrid& g, std::span<const double> u, std::span<double> out) {
  const double inv_h2 = 1.0 / (g.spacing * g.spacing);
  const bool write = !out.empty();
  double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst)
  for (int r = 0; r < g.rows; ++r)
    for (int c = 0; c < g.cols; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * g.cols + c;
      if (g.role[i] != CellRole::unknown) continue;
      const double res = cell_residual(g, u.data(), r, c, inv_h2);
      if (write) out[i] = res;
      worst = std::max(worst, std::abs(res));
    }
  return worst;
}

void liouville_sweep(const LiouvilleGrid& g, std::span<double> u) {
  const double inv_h2 = 1.0 / (g.spacing * g.spacing);
  double* data = u.data();
  for (int color = 0; color < 2; ++color) {
#pragma omp parallel for schedule(static)
    for (int r = 0; r < g.rows; ++r)
      for (int c = (r + color) % 2; c < g.cols; c += 2) {
        const std::size_t i = static_cast<std::size_t>(r) * g.cols + c;
        if (g.role[i] == CellRole::unknown) cell_update(g, data, r, c, inv_h2);
      }
  }
}

double directed_hausdorff(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.empty() || b.empty()) return 0.0;
  double minx = kInf, miny = kInf, maxx = -kInf, maxy = -kInf;
  for (const Complex& q : b) {
    minx = std::min(minx, q.real());
    maxx = std::max(maxx, q.real());
    miny = std::min(miny, q.imag());
    maxy = std::max(maxy, q.imag());
  }
  const double extent = std::max({maxx - minx, maxy - miny, 1e-300});
  const double cell = std::max(extent / std::sqrt(static_cast<double>(b.size())), extent * 1e-6);
  const int gx = static_cast<int>((maxx - minx) / cell) + 1;
  const int gy = static_cast<int>((maxy - miny) / cell) + 1;
  auto bucket_of = [&](const Complex& p, int& ix, int& iy) {
    ix = std::clamp(static_cast<int>(std::floor((p.real() - minx) / cell)), 0, gx - 1);
    iy = std::clamp(static_cast<int>(std::floor((p.imag() - miny) / cell)), 0, gy - 1);
  };

  // CSR bucket layout
  std::vector<int> start(static_cast<std::size_t>(gx) * gy + 1, 0);
  std::vector<int> bucket(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) {
    int ix, iy;
    bucket_of(b[k], ix, iy);
    bucket[k] = iy * gx + ix;
    ++start[bucket[k] + 1];
  }
  for (std::size_t k = 1; k < start.size(); ++k) start[k] += start[k - 1];
  std::vector<Complex> sorted(b.size());
  {
    std::vector<int> fill(start.begin(), start.end() - 1);
    for (std::size_t k = 0; k < b.size(); ++k) sorted[fill[bucket[k]]++] = b[k];
  }

  const int na = static_cast<int>(a.size());
  const int max_ring = std::max(gx, gy);
  double worst = 0.0;
#pragma omp parallel for schedule(dynamic, 256) reduction(max : worst)
  for (int k = 0; k < na; ++k) {
    const Complex p = a[k];
    int ix, iy;
    bucket_of(p, ix, iy);
    double best = kInf;
    for (int ring = 0; ring <= max_ring; ++ring) {
      for (int y = iy - ring; y <= iy + ring; ++y) {
        if (y < 0 || y >= gy) continue;
        const bool edge_row = (y == iy - ring || y == iy + ring);
        const int step = edge_row ? 1 : 2 * ring;
        for (int x = ix - ring; x <= ix + ring; x += std::max(step, 1)) {
          if (x < 0 || x >= gx) continue;
          const int id = y * gx + x;
          for (int j = start[id]; j < start[id + 1]; ++j) best = std::min(best, std::norm(p - sorted[j]));
        }
      }
      // anything in a farther ring is at least ring * cell away
      const double reach = ring * cell;
      if (best <= reach * reach) break;
    }
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

}  // namespace parallel

}  // namespace hypfol
