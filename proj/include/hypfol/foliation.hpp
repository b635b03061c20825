#pragma once

#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "hypfol/grid_domain.hpp"
#include "hypfol/holmap.hpp"
#include "hypfol/hyp_core.hpp"
#include "hypfol/liouville.hpp"
#include "hypfol/ode.hpp"
#include "hypfol/vector_field.hpp"

namespace hypfol {

// ------------------------------------------------------------ leaf tracing

struct LeafSample {
  Complex time;
  CVec point;
  bool exited = false;  // left the declared ball before reaching `time`
};

/// Solves dZ/dT = X(Z), Z(0) = p along the ray from 0 to each requested
/// complex time. Rays sharing a direction are integrated once. Throws
/// NonConvergence on step-size underflow.
std::vector<LeafSample> trace_leaf(const PolyVectorField& x, const CVec& p, const std::vector<Complex>& times,
                                   const OdeOptions& opts = {});

// ------------------------------------------------------------ foliations

enum class AmbientMetric { euclidean, poincare_factor };

/// Leaves {y = const} of C x C^k, E empty.
struct ProductFoliation {
  int transverse_dim = 1;
};

/// Punctured complex lines through the origin in B^n(0, ball_radius), E = {0}.
struct RadialFoliation {
  int dim = 2;
  double ball_radius = 0.9;
};

/// Foliation by the complex trajectories of a polynomial field, E = {0}.
struct FieldFoliation {
  PolyVectorField field;
};

struct ModelFoliation {
  std::variant<ProductFoliation, RadialFoliation, FieldFoliation> kind;
  AmbientMetric metric = AmbientMetric::euclidean;

  int dim() const;
  bool singular_at(const CVec& p) const;
};

/// g-length of the tangent vector v at z. `poincare_factor` is the
/// 2 |v| / (1 - |z|^2) metric of the unit ball.
double metric_length(AmbientMetric metric, const CVec& z, const CVec& v);

// ------------------------------------------------------------ restricted domains

/// D(0, leaf_radius) x D(0, transverse_radius)^k.
struct Polydisc {
  double leaf_radius = 1.0;
  double transverse_radius = 1.0;
};

/// W x D(0, transverse_radius)^k with W a grid domain in the leaf plane.
struct GridProduct {
  GridDomain leaf;
  double transverse_radius = 1.0;
};

/// B^n(0, radius).
struct Ball {
  double radius = 1.0;
};

using FoliatedDomain = std::variant<Polydisc, GridProduct, Ball>;

bool domain_contains(const FoliatedDomain& u, const CVec& p);

/// Leaf-plane cross-section of U rasterized with the given spacing (grid
/// domains are returned as is). Used for the rho distance between domains.
GridDomain leaf_plane_grid(const FoliatedDomain& u, double spacing);

/// Euclidean disc in the leaf chart plane.
struct PlanarDisc {
  Complex center;
  double radius;
};

using ChartImage = std::variant<PlanarDisc, ModelSurface, std::shared_ptr<const DensityField>>;

/// Biholomorphic parametrization t -> embed(t) of the leaf component L_{p,U}.
struct LeafChart {
  CVec base_point;
  Complex base_coordinate;
  ChartImage image;
  std::function<CVec(Complex)> embed;
  /// |embed'(t)|_g.
  std::function<double(Complex)> g_scale;

  bool image_contains(Complex t) const;
  /// Curvature -1 Poincare density of the chart image at t.
  double image_density(Complex t) const;
};

/// Chart of the connected component of L_p intersected with U through p.
/// Grid leaf domains are uniformized with solve_poincare.
LeafChart leaf_component(const ModelFoliation& f, const FoliatedDomain& u, const CVec& p,
                         const SolverOptions& solver = {});

/// eta_U(p) = |pi'(0)|_g for the uniformization pi of the chart image with
/// pi(0) = t_p, i.e. lambda_disc(0) * g_scale(t_p) / lambda_image(t_p).
double eta(const LeafChart& chart);
double eta(const ModelFoliation& f, const FoliatedDomain& u, const CVec& p, const SolverOptions& solver = {});

/// eta_U at many points; grid components are solved once each.
std::vector<double> eta_many(const ModelFoliation& f, const FoliatedDomain& u, const std::vector<CVec>& points,
                             const SolverOptions& solver = {});

// ------------------------------------------------------------ convergence

struct ConvergenceOptions {
  double rho_spacing = 1.0 / 128;
  /// Sample points within this distance of E are rejected; <= 0 selects
  /// 10 * rho_spacing.
  double e_tube = 0.0;
  /// Index reported for seq[0].
  int first_n = 1;
  SolverOptions solver;
};

struct ConvergenceRow {
  int n = 0;
  double rho = 0.0;
  double sup_err = 0.0;
  CVec argmax;
};

struct ConvergenceReport {
  double spacing = 0.0;
  std::vector<ConvergenceRow> rows;
};

/// Rows (n, rho(U, U_n), sup_K |eta_{U_n} - eta_U|, argmax), n counting from first_n.
ConvergenceReport eta_convergence(const ModelFoliation& f, const FoliatedDomain& u,
                                  const std::vector<FoliatedDomain>& seq, const std::vector<CVec>& k,
                                  const ConvergenceOptions& opts = {});

/// |(chart o f)'(p)|_g / lambda_disc(p).
double foliated_distortion(const HolMap& f, const LeafChart& chart, Complex p);

}  // namespace hypfol
