#include "hypfol/curvature.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "hypfol/foliation.hpp"

namespace hypfol {

namespace {

constexpr double kTieGap = 1e-8;
constexpr double kDensityFloor = 1e-300;
constexpr double kDensityCeil = 1e300;

void require_point(const PolyVectorField& x, const CVec& z) {
  if (static_cast<int>(z.size()) != x.dim()) throw DomainError("point dimension does not match the field");
}

std::vector<double> psi_pieces(const Example3& spec, const CVec& z) {
  std::vector<double> psi(z.size(), 0.0);
  bool any = false;
  for (std::size_t j = 0; j < z.size(); ++j) {
    const double r = std::abs(z[j]);
    if (r == 0.0) continue;
    if (!(r < 1.0)) throw DomainError("example 3: |z_j| must be below 1");
    any = true;
    const double l = std::log(r);
    psi[j] = std::pow(r, 2 * spec.k[j] - 2) * std::norm(spec.f[j](z)) / (l * l);
  }
  if (!any) throw DomainError("example 3: all coordinates vanish");
  return psi;
}

// index of the largest piece, or -1 at a max-tie
int psi_argmax(const std::vector<double>& psi) {
  const auto top = std::max_element(psi.begin(), psi.end());
  double second = 0.0;
  for (auto it = psi.begin(); it != psi.end(); ++it)
    if (it != top) second = std::max(second, *it);
  if (psi.size() > 1 && (*top - second) < kTieGap * *top) return -1;
  return static_cast<int>(top - psi.begin());
}

void check_example3(const Example3& spec, int n) {
  if (static_cast<int>(spec.k.size()) != n || static_cast<int>(spec.f.size()) != n)
    throw DomainError("example 3: k and f must have one entry per coordinate");
  const CVec zero(n, 0.0);
  for (int j = 0; j < n; ++j) {
    if (spec.k[j] < 1) throw DomainError("example 3: k_j must be >= 1");
    if (spec.f[j].nvars() != n) throw DomainError("example 3: f_j has the wrong variable count");
    if (spec.f[j](zero) == Complex(0.0)) throw DomainError("example 3: f_j must not vanish at 0");
  }
}

struct Stencil {
  double k = 0.0;
  bool straddles_tie = false;
};

Stencil fd_stencil(const MetricSpec& spec, const PolyVectorField& x, const CVec& z, double h) {
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  const std::vector<Complex> times = {0.0,           {h, 0.0},  {-h, 0.0}, {0.0, h},  {0.0, -h},
                                      {h, h},        {h, -h},   {-h, h},   {-h, -h}};
  OdeOptions opts;
  opts.rtol = 1e-13;
  opts.atol = 1e-16;
  const auto leaf = trace_leaf(x, z, times, opts);
  std::array<double, 9> lf{};
  double f0 = 0.0;
  Stencil out;
  int arg0 = 0;
  for (std::size_t i = 0; i < leaf.size(); ++i) {
    if (leaf[i].exited) throw DomainError("finite-difference stencil leaves the ball");
    const double f = pullback_density(spec, x, leaf[i].point);
    if (!(f > kDensityFloor && f < kDensityCeil)) throw DomainError("degenerate pullback density");
    lf[i] = std::log(f);
    if (i == 0) f0 = f;
    if (const auto* e3 = std::get_if<Example3>(&spec)) {
      const int a = psi_argmax(psi_pieces(*e3, leaf[i].point));
      if (i == 0) arg0 = a;
      if (a < 0 || a != arg0) out.straddles_tie = true;
    }
  }
  const double edges = lf[1] + lf[2] + lf[3] + lf[4];
  const double corners = lf[5] + lf[6] + lf[7] + lf[8];
  const double lap = (4.0 * edges + corners - 20.0 * lf[0]) / (6.0 * h * h);
  out.k = -lap / (2.0 * f0);
  return out;
}

}  // namespace

double wedge_norm_sq(const CVec& z, const CVec& w) {
  if (z.size() != w.size()) throw DomainError("wedge_norm_sq: dimension mismatch");
  return std::max(0.0, norm2(z) * norm2(w) - std::norm(hermitian(z, w)));
}

double curvature_example1(const PolyVectorField& x, const CVec& z) {
  require_point(x, z);
  const double r2 = norm2(z);
  if (!(r2 > 0.0 && r2 < x.radius() * x.radius())) throw DomainError("curvature_example1: need 0 < |z| < rho");
  const CVec xz = x(z);
  const double x2 = norm2(xz);
  if (x2 == 0.0) throw DomainError("curvature_example1: X(z) = 0");
  const double w = wedge_norm_sq(xz, x.jacobian_apply(z, xz));
  const double s = 1.0 - r2;
  return (r2 - 1.0) - std::norm(hermitian(z, xz)) / x2 - 0.5 * s * s * w / (x2 * x2 * x2);
}

PshFunction psh_zero() {
  return {"zero", [](const CVec&) { return 0.0; }, [](const CVec&, const CVec&) { return 0.0; }, 0.0};
}

PshFunction psh_norm_sq() {
  return {"norm_sq", [](const CVec& z) { return norm2(z); }, [](const CVec&, const CVec& v) { return norm2(v); },
          0.0};
}

PshFunction psh_smooth_max(double s) {
  if (!(s > 0.0)) throw DomainError("psh_smooth_max: smoothing radius must be positive");
  return {"smooth_max",
          [s](const CVec& z) {
            const double x = z.at(0).real();
            return 0.5 * (x + std::hypot(x, s));
          },
          [s](const CVec& z, const CVec& v) {
            // u = g(Re z_1), so d dbar u (v, v) = g''(x) |v_1|^2 / 4
            const double x = z.at(0).real();
            const double r = std::hypot(x, s);
            return s * s / (2.0 * r * r * r) * std::norm(v.at(0)) / 4.0;
          },
          s};
}

PshFunction psh_shift(const PshFunction& u, double c) {
  PshFunction out = u;
  out.name = u.name + "+c";
  out.value = [v = u.value, c](const CVec& z) { return v(z) + c; };
  return out;
}

std::string metric_name(const MetricSpec& spec) {
  switch (spec.index()) {
    case 0: return "example1";
    case 1: return "example2";
    default: return "example3";
  }
}

PolyVectorField example3_field(const Example3& spec, double radius) {
  const int n = static_cast<int>(spec.k.size());
  if (n < 1) throw DomainError("example 3: empty specification");
  check_example3(spec, n);
  std::vector<MultiPoly> comp;
  for (int j = 0; j < n; ++j) comp.push_back(MultiPoly::power(n, j, spec.k[j]) * spec.f[j]);
  return PolyVectorField(std::move(comp), radius);
}

double example3_metric(const Example3& spec, const CVec& z) {
  check_example3(spec, static_cast<int>(z.size()));
  const auto psi = psi_pieces(spec, z);
  const double x2 = norm2(example3_field(spec, 0.5)(z));
  if (x2 == 0.0) throw DomainError("example 3: X(z) = 0");
  return *std::max_element(psi.begin(), psi.end()) / x2;
}

double pullback_density(const MetricSpec& spec, const PolyVectorField& x, const CVec& z) {
  require_point(x, z);
  const double r2 = norm2(z);
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Example1>) {
          if (!(r2 < 1.0)) throw DomainError("example 1: point outside the unit ball");
          const double s = 1.0 - r2;
          return 4.0 * norm2(x(z)) / (s * s);
        } else if constexpr (std::is_same_v<T, Example2>) {
          if (!(r2 > 0.0 && r2 < 1.0)) throw DomainError("example 2: need 0 < |z| < 1");
          const double l = 0.5 * std::log(r2);
          return std::exp(m.u.value(z)) / (l * l);
        } else {
          check_example3(m, x.dim());
          const auto psi = psi_pieces(m, z);
          return *std::max_element(psi.begin(), psi.end());
        }
      },
      spec);
}

double pullback_curvature_fd(const MetricSpec& spec, const PolyVectorField& x, const CVec& z, double h) {
  require_point(x, z);
  if (norm2(x(z)) == 0.0) throw DomainError("pullback_curvature_fd: X(z) = 0");
  return fd_stencil(spec, x, z, h).k;
}

double example2_lower_bound(const PolyVectorField& x, const PshFunction& u, const CVec& z) {
  require_point(x, z);
  const double r2 = norm2(z);
  if (!(r2 > 0.0 && r2 < 1.0)) throw DomainError("example2_lower_bound: need 0 < |z| < 1");
  const CVec xz = x(z);
  const double x2 = norm2(xz);
  if (x2 == 0.0) throw DomainError("example2_lower_bound: X(z) = 0");
  const double eu = std::exp(u.value(z));
  const double p2 = std::norm(hermitian(xz, z));
  const double absl = std::abs(0.5 * std::log(r2));
  return absl / eu * (x2 / r2 - p2 / (r2 * r2)) + p2 / (2.0 * r2 * r2 * eu);
}

double curvature_closed(const MetricSpec& spec, const PolyVectorField& x, const CVec& z) {
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Example1>) {
          return curvature_example1(x, z);
        } else if constexpr (std::is_same_v<T, Example2>) {
          // -K/2 = e^{-u} log^2|z| L_u(X, X) + (lower-bound expression)
          const double rhs = example2_lower_bound(x, m.u, z);
          const double l = 0.5 * std::log(norm2(z));
          return -2.0 * (std::exp(-m.u.value(z)) * l * l * m.u.levi(z, x(z)) + rhs);
        } else {
          require_point(x, z);
          if (psi_argmax(psi_pieces(m, z)) < 0) throw DomainError("example 3: max-tie at the sample");
          return -1.0;
        }
      },
      spec);
}

Example2Report example2_curvature_check(const PolyVectorField& x, const PshFunction& u, const std::vector<CVec>& samples,
                                        double h, double tol) {
  if (!(x.radius() < std::exp(-0.5))) throw DomainError("example 2 check: radius must be below 1/sqrt(e)");
  Example2Report rep;
  rep.u_name = u.name;
  rep.smoothing = u.smoothing;
  const MetricSpec spec = Example2{u};
  const int n = static_cast<int>(samples.size());
  rep.rows.resize(samples.size());
  std::vector<std::string> err(samples.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      const CVec& z = samples[i];
      if (norm2(z) == 0.0) throw DomainError("example 2 check: sample at the origin");
      Example2Row& r = rep.rows[i];
      r.z = z;
      r.k_fd = pullback_curvature_fd(spec, x, z, h);
      r.k_closed = curvature_closed(spec, x, z);
      r.rhs = example2_lower_bound(x, u, z);
      r.pass = -0.5 * r.k_fd >= r.rhs - tol;
    } catch (const std::exception& e) {
      err[i] = e.what();
    }
  }
  for (const auto& e : err)
    if (!e.empty()) throw DomainError(e);

  for (const auto& r : rep.rows) {
    rep.pass = rep.pass && r.pass;
    const double ratio = std::sqrt(norm2(x(r.z)) / norm2(r.z));
    rep.c_estimate = std::max({rep.c_estimate, ratio, 1.0 / ratio});
  }
  if (rep.c_estimate > 0.0)
    rep.limsup_bound = -1.0 / (rep.c_estimate * rep.c_estimate * std::exp(u.value(CVec(x.dim(), 0.0))));
  for (int k = 0; k < 4 && !samples.empty(); ++k) {
    LimsupRow row;
    row.radius = 0.5 * x.radius() / std::pow(2.0, k);
    row.max_k = -kInf;
    for (const auto& z : samples) {
      CVec w = z;
      const double s = row.radius / std::sqrt(norm2(z));
      for (auto& c : w) c *= s;
      row.max_k = std::max(row.max_k, pullback_curvature_fd(spec, x, w, h * row.radius));
    }
    rep.limsup.push_back(row);
  }
  return rep;
}

UltraReport ultrahyperbolic_check(const MetricSpec& spec, const PolyVectorField& x, double kappa,
                                  const std::vector<CVec>& samples, double h, double tol) {
  if (!(kappa < 0.0)) throw DomainError("ultrahyperbolic_check: curvature bound must be negative");
  const int n = static_cast<int>(samples.size());
  std::vector<UltraRow> rows(samples.size());
  std::vector<char> tie(samples.size(), 0);
  std::vector<std::string> err(samples.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      const CVec& z = samples[i];
      require_point(x, z);
      if (std::holds_alternative<Example3>(spec) && psi_argmax(psi_pieces(std::get<Example3>(spec), z)) < 0) {
        tie[i] = 1;
        continue;
      }
      if (norm2(x(z)) == 0.0) throw DomainError("ultrahyperbolic_check: X(z) = 0");
      const Stencil st = fd_stencil(spec, x, z, h);
      if (st.straddles_tie) {
        tie[i] = 1;
        continue;
      }
      UltraRow& r = rows[i];
      r.z = z;
      r.k_fd = st.k;
      r.k_closed = curvature_closed(spec, x, z);
      r.bound = kappa;
      r.pass = r.k_fd <= kappa + tol;
    } catch (const std::exception& e) {
      err[i] = e.what();
    }
  }
  for (const auto& e : err)
    if (!e.empty()) throw DomainError(e);
  UltraReport rep;
  for (int i = 0; i < n; ++i) {
    if (tie[i]) {
      ++rep.ties_skipped;
      continue;
    }
    rep.pass = rep.pass && rows[i].pass;
    rep.rows.push_back(std::move(rows[i]));
  }
  return rep;
}

}  // namespace hypfol
