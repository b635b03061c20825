#include "hypfol/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace hypfol {

// ------------------------------------------------------------ leaf tracing

std::vector<LeafSample> trace_leaf(const PolyVectorField& x, const CVec& p, const std::vector<Complex>& times,
                                   const OdeOptions& opts) {
  if (static_cast<int>(p.size()) != x.dim()) throw DomainError("trace_leaf: dimension mismatch");
  const double r2 = x.radius() * x.radius();
  if (!(norm2(p) < r2)) throw DomainError("trace_leaf: start point outside the declared ball");

  std::vector<LeafSample> out(times.size());
  std::map<double, std::vector<std::size_t>> rays;  // direction angle -> sample indices
  for (std::size_t i = 0; i < times.size(); ++i) {
    out[i].time = times[i];
    if (times[i] == Complex(0.0)) {
      out[i].point = p;
      continue;
    }
    rays[std::arg(times[i])].push_back(i);
  }

  const Field field = [&x](const CVec& z) { return x(z); };
  const auto stop = [r2](const CVec& z) { return !(norm2(z) < r2); };
  for (auto& [angle, idx] : rays) {
    std::vector<double> hit;
    for (std::size_t i : idx) hit.push_back(std::abs(times[i]));
    std::sort(hit.begin(), hit.end());
    const DenseRay ray = integrate_ray(field, p, std::polar(1.0, angle), hit.back(), hit, opts, stop);
    for (std::size_t i : idx) {
      const double s = std::abs(times[i]);
      const auto it = std::lower_bound(ray.s.begin(), ray.s.end(), s);
      const bool reached = it != ray.s.end() && *it == s;
      if (reached && !(ray.status == DenseRay::Status::stopped && it == ray.s.end() - 1)) {
        out[i].point = ray.y[static_cast<std::size_t>(it - ray.s.begin())];
        continue;
      }
      if (ray.status == DenseRay::Status::underflow)
        throw NonConvergence("trace_leaf: step size underflow", ray.s_reached(), static_cast<int>(ray.s.size()));
      out[i].exited = true;
      out[i].point = ray.y.back();
    }
  }
  return out;
}

// ------------------------------------------------------------ foliations

int ModelFoliation::dim() const {
  return std::visit(
      [](const auto& k) -> int {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ProductFoliation>) return 1 + k.transverse_dim;
        else if constexpr (std::is_same_v<T, RadialFoliation>) return k.dim;
        else return k.field.dim();
      },
      kind);
}

bool ModelFoliation::singular_at(const CVec& p) const {
  if (std::holds_alternative<ProductFoliation>(kind)) return false;
  return norm2(p) == 0.0;
}

double metric_length(AmbientMetric metric, const CVec& z, const CVec& v) {
  const double len = std::sqrt(norm2(v));
  if (metric == AmbientMetric::euclidean) return len;
  const double r2 = norm2(z);
  if (!(r2 < 1.0)) throw DomainError("poincare_factor metric: point outside the unit ball");
  return 2.0 * len / (1.0 - r2);
}

bool domain_contains(const FoliatedDomain& u, const CVec& p) {
  return std::visit(
      [&p](const auto& d) -> bool {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return norm2(p) < d.radius * d.radius;
        } else {
          for (std::size_t j = 1; j < p.size(); ++j)
            if (!(std::abs(p[j]) < d.transverse_radius)) return false;
          if constexpr (std::is_same_v<T, Polydisc>) return std::abs(p[0]) < d.leaf_radius;
          else return d.leaf.contains(p[0]);
        }
      },
      u);
}

GridDomain leaf_plane_grid(const FoliatedDomain& u, double spacing) {
  if (const auto* g = std::get_if<GridProduct>(&u)) return g->leaf;
  const double r = std::holds_alternative<Polydisc>(u) ? std::get<Polydisc>(u).leaf_radius : std::get<Ball>(u).radius;
  // cell-aligned with the origin so that concentric discs share a lattice
  const double extent = spacing * std::ceil(r / spacing);
  return GridDomain::from_predicate(Complex(-extent, -extent), Complex(extent, extent), spacing,
                                    [r](Complex z) { return std::abs(z) < r; });
}

bool LeafChart::image_contains(Complex t) const {
  return std::visit(
      [t](const auto& im) -> bool {
        using T = std::decay_t<decltype(im)>;
        if constexpr (std::is_same_v<T, PlanarDisc>) return std::abs(t - im.center) < im.radius;
        else if constexpr (std::is_same_v<T, ModelSurface>) return im.contains(t);
        else return im->domain().contains(t);
      },
      image);
}

double LeafChart::image_density(Complex t) const {
  return std::visit(
      [t](const auto& im) -> double {
        using T = std::decay_t<decltype(im)>;
        if constexpr (std::is_same_v<T, PlanarDisc>)
          return density(ModelSurface::disc(), (t - im.center) / im.radius) / im.radius;
        else if constexpr (std::is_same_v<T, ModelSurface>) return density(im, t);
        else return im->at(t);
      },
      image);
}

namespace {

LeafChart product_chart(const ModelFoliation& f, const CVec& p, ChartImage image) {
  LeafChart c;
  c.base_point = p;
  c.base_coordinate = p[0];
  c.image = std::move(image);
  c.embed = [p](Complex t) {
    CVec z = p;
    z[0] = t;
    return z;
  };
  const AmbientMetric metric = f.metric;
  const CVec e1 = [&] {
    CVec v(p.size(), 0.0);
    v[0] = 1.0;
    return v;
  }();
  c.g_scale = [metric, embed = c.embed, e1](Complex t) { return metric_length(metric, embed(t), e1); };
  return c;
}

LeafChart radial_chart(const ModelFoliation& f, const CVec& p, double component_radius) {
  LeafChart c;
  c.base_point = p;
  c.base_coordinate = 1.0;
  c.image = ModelSurface::punctured_disc(component_radius);
  c.embed = [p](Complex t) {
    CVec z = p;
    for (auto& v : z) v *= t;
    return z;
  };
  const AmbientMetric metric = f.metric;
  c.g_scale = [metric, embed = c.embed, p](Complex t) { return metric_length(metric, embed(t), p); };
  return c;
}

void check_point(const ModelFoliation& f, const FoliatedDomain& u, const CVec& p) {
  if (static_cast<int>(p.size()) != f.dim()) throw DomainError("point dimension does not match the foliation");
  if (f.singular_at(p)) throw DomainError("point lies in the singular set E");
  if (!domain_contains(u, p)) throw DomainError("point outside the domain U");
}

LeafChart chart_with_image(const ModelFoliation& f, const FoliatedDomain& u, const CVec& p,
                           const std::shared_ptr<const DensityField>& solved) {
  check_point(f, u, p);
  if (std::holds_alternative<ProductFoliation>(f.kind)) {
    if (const auto* d = std::get_if<Polydisc>(&u)) return product_chart(f, p, PlanarDisc{0.0, d->leaf_radius});
    if (const auto* b = std::get_if<Ball>(&u)) {
      double rest = 0.0;
      for (std::size_t j = 1; j < p.size(); ++j) rest += std::norm(p[j]);
      return product_chart(f, p, PlanarDisc{0.0, std::sqrt(b->radius * b->radius - rest)});
    }
    return product_chart(f, p, solved);
  }
  if (const auto* rad = std::get_if<RadialFoliation>(&f.kind)) {
    if (const auto* b = std::get_if<Ball>(&u)) {
      if (b->radius > rad->ball_radius) throw DomainError("radial foliation: U exceeds the ambient ball");
      return radial_chart(f, p, b->radius / std::sqrt(norm2(p)));
    }
    if (const auto* d = std::get_if<Polydisc>(&u)) {
      if (d->leaf_radius * d->leaf_radius + (p.size() - 1) * d->transverse_radius * d->transverse_radius >
          rad->ball_radius * rad->ball_radius)
        throw DomainError("radial foliation: U exceeds the ambient ball");
      double reach = std::abs(p[0]) > 0.0 ? d->leaf_radius / std::abs(p[0]) : kInf;
      for (std::size_t j = 1; j < p.size(); ++j)
        if (std::abs(p[j]) > 0.0) reach = std::min(reach, d->transverse_radius / std::abs(p[j]));
      return radial_chart(f, p, reach);
    }
  }
  throw DomainError("leaf_component: unsupported foliation/domain pair");
}

}  // namespace

LeafChart leaf_component(const ModelFoliation& f, const FoliatedDomain& u, const CVec& p, const SolverOptions& solver) {
  std::shared_ptr<const DensityField> solved;
  if (const auto* g = std::get_if<GridProduct>(&u); g && std::holds_alternative<ProductFoliation>(f.kind)) {
    check_point(f, u, p);
    solved = std::make_shared<const DensityField>(solve_poincare(g->leaf.component_containing(p[0]), solver));
  }
  return chart_with_image(f, u, p, solved);
}

double eta(const LeafChart& chart) {
  constexpr double kDiscDensityAtOrigin = 2.0;
  const Complex t = chart.base_coordinate;
  return kDiscDensityAtOrigin * chart.g_scale(t) / chart.image_density(t);
}

double eta(const ModelFoliation& f, const FoliatedDomain& u, const CVec& p, const SolverOptions& solver) {
  return eta(leaf_component(f, u, p, solver));
}

std::vector<double> eta_many(const ModelFoliation& f, const FoliatedDomain& u, const std::vector<CVec>& points,
                             const SolverOptions& solver) {
  const int n = static_cast<int>(points.size());
  std::vector<std::shared_ptr<const DensityField>> field(points.size());
  if (const auto* g = std::get_if<GridProduct>(&u); g && std::holds_alternative<ProductFoliation>(f.kind)) {
    // one solve per connected component of the leaf domain
    std::vector<std::pair<GridDomain, std::shared_ptr<const DensityField>>> solved;
    for (int i = 0; i < n; ++i) {
      check_point(f, u, points[i]);
      const auto cell = g->leaf.locate(points[i][0]);
      for (const auto& [comp, df] : solved)
        if (comp.inside(cell->row, cell->col)) field[i] = df;
      if (field[i]) continue;
      GridDomain comp = g->leaf.component_containing(points[i][0]);
      field[i] = std::make_shared<const DensityField>(solve_poincare(comp, solver));
      solved.emplace_back(std::move(comp), field[i]);
    }
  }
  std::vector<double> out(points.size());
  std::vector<std::string> errors(points.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      out[i] = eta(chart_with_image(f, u, points[i], field[i]));
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw DomainError(e);
  return out;
}

// ------------------------------------------------------------ convergence

ConvergenceReport eta_convergence(const ModelFoliation& f, const FoliatedDomain& u,
                                  const std::vector<FoliatedDomain>& seq, const std::vector<CVec>& k,
                                  const ConvergenceOptions& opts) {
  if (k.empty()) throw DomainError("eta_convergence: empty sample set");
  const double tube = opts.e_tube > 0.0 ? opts.e_tube : 10.0 * opts.rho_spacing;
  const bool has_e = !std::holds_alternative<ProductFoliation>(f.kind);
  for (const auto& p : k) {
    if (!domain_contains(u, p)) throw DomainError("eta_convergence: sample outside U");
    if (has_e && std::sqrt(norm2(p)) <= tube) throw DomainError("eta_convergence: sample inside the E-tube");
    for (const auto& un : seq)
      if (!domain_contains(un, p)) throw DomainError("eta_convergence: sample exits some U_n");
  }

  ConvergenceReport report;
  report.spacing = opts.rho_spacing;
  const std::vector<double> base = eta_many(f, u, k, opts.solver);
  const GridDomain ugrid = leaf_plane_grid(u, opts.rho_spacing);
  for (std::size_t n = 0; n < seq.size(); ++n) {
    const std::vector<double> vals = eta_many(f, seq[n], k, opts.solver);
    ConvergenceRow row;
    row.n = opts.first_n + static_cast<int>(n);
    row.rho = rho_metric(ugrid, leaf_plane_grid(seq[n], opts.rho_spacing));
    std::size_t arg = 0;
    for (std::size_t i = 0; i < k.size(); ++i) {
      const double err = std::abs(vals[i] - base[i]);
      if (err > row.sup_err) {
        row.sup_err = err;
        arg = i;
      }
    }
    row.argmax = k[arg];
    report.rows.push_back(std::move(row));
  }
  return report;
}

double foliated_distortion(const HolMap& f, const LeafChart& chart, Complex p) {
  if (!ModelSurface::disc().contains(p)) throw DomainError("foliated_distortion: p outside the disc");
  const Jet j = f.jet(p, 1);
  if (!chart.image_contains(j[0])) throw DomainError("foliated_distortion: image leaves the chart");
  const double r = std::abs(p);
  return chart.g_scale(j[0]) * std::abs(j[1]) * (1.0 - r) * (1.0 + r) / 2.0;
}

}  // namespace hypfol
