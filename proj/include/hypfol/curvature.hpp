#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "hypfol/ode.hpp"
#include "hypfol/vector_field.hpp"

namespace hypfol {

/// |z|^2 |w|^2 - |<z, w>|^2.
double wedge_norm_sq(const CVec& z, const CVec& w);

/// Leaf curvature of the metric 2|dz| / (1 - |z|^2) restricted to the
/// trajectories of X.
double curvature_example1(const PolyVectorField& x, const CVec& z);

/// Plurisubharmonic weight u with its Levi form L_u(z)(v, v).
struct PshFunction {
  std::string name;
  std::function<double(const CVec&)> value;
  std::function<double(const CVec&, const CVec&)> levi;
  double smoothing = 0.0;  // smoothing radius, 0 for smooth samples
};

PshFunction psh_zero();
PshFunction psh_norm_sq();
/// (x + sqrt(x^2 + s^2)) / 2 with x = Re z_1, a smoothing of max(Re z_1, 0).
PshFunction psh_smooth_max(double s = 0.05);
PshFunction psh_shift(const PshFunction& u, double c);

/// The metric 2|dz| / (1 - |z|^2).
struct Example1 {};
/// e^u / log^2|z| * h / h(X) with h euclidean.
struct Example2 {
  PshFunction u;
};
/// psi / |X|^2 |dz|^2 for X_j = z_j^{k_j} f_j(z).
struct Example3 {
  std::vector<int> k;
  std::vector<MultiPoly> f;
};

using MetricSpec = std::variant<Example1, Example2, Example3>;

std::string metric_name(const MetricSpec& spec);

/// The field z_j^{k_j} f_j(z) of an Example3 metric.
PolyVectorField example3_field(const Example3& spec, double radius);

/// psi(z) / |X(z)|^2.
double example3_metric(const Example3& spec, const CVec& z);

/// Leafwise metric coefficient f(Z) of Z*g = f |dT|^2 along dZ/dT = X(Z).
double pullback_density(const MetricSpec& spec, const PolyVectorField& x, const CVec& z);

/// -Laplacian(log f) / (2 f) at T = 0, using the 9-point isotropic stencil
/// on the leaf through z. Throws DomainError on a degenerate density.
double pullback_curvature_fd(const MetricSpec& spec, const PolyVectorField& x, const CVec& z, double h = 1e-3);

/// Closed-form leaf curvature. Example 3 throws DomainError at a max-tie.
double curvature_closed(const MetricSpec& spec, const PolyVectorField& x, const CVec& z);

/// Right side of the Example 2 lower bound for -K/2.
double example2_lower_bound(const PolyVectorField& x, const PshFunction& u, const CVec& z);

struct CurvatureSample {
  CVec z;
  double closed = 0.0;
  double fd = 0.0;
  double h = 0.0;
};

struct Example2Row {
  CVec z;
  double k_fd = 0.0;
  double k_closed = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

struct LimsupRow {
  double radius = 0.0;
  double max_k = 0.0;  // largest sampled curvature on the shell |z| = radius
};

struct Example2Report {
  std::string u_name;
  double smoothing = 0.0;
  std::vector<Example2Row> rows;
  double c_estimate = 0.0;     // max over samples of max(|X|/|z|, |z|/|X|)
  double limsup_bound = 0.0;   // -C^{-2} / e^{u(0)}
  std::vector<LimsupRow> limsup;
  bool pass = true;
};

Example2Report example2_curvature_check(const PolyVectorField& x, const PshFunction& u, const std::vector<CVec>& samples,
                                        double h = 1e-3, double tol = 1e-3);

struct UltraRow {
  CVec z;
  double k_closed = 0.0;
  double k_fd = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct UltraReport {
  std::vector<UltraRow> rows;
  int ties_skipped = 0;
  bool pass = true;
};

/// Checks K_fd <= kappa + tol at every sample (kappa = -a^2). Example 3
/// samples at a max-tie, or whose stencil straddles one, are skipped.
UltraReport ultrahyperbolic_check(const MetricSpec& spec, const PolyVectorField& x, double kappa,
                                  const std::vector<CVec>& samples, double h = 1e-3, double tol = 1e-2);

}  // namespace hypfol
