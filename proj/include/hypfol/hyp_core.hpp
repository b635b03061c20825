#pragma once

#include "hypfol/holmap.hpp"
#include "hypfol/types.hpp"

namespace hypfol {

/// Points closer than this to the boundary of a model surface are rejected.
inline constexpr double kBoundaryMargin = 1e-12;

/// The four hyperbolic model surfaces with closed-form Poincare densities.
/// Convention throughout: curvature -1, unit-disc density 2 / (1 - |z|^2).
class ModelSurface {
 public:
  enum class Kind { disc, punctured_disc, annulus, half_plane };

  static ModelSurface disc() { return ModelSurface(Kind::disc, 1.0); }
  /// 0 < |z| < radius.
  static ModelSurface punctured_disc(double radius);
  /// inner < |z| < 1.
  static ModelSurface annulus(double inner);
  static ModelSurface half_plane() { return ModelSurface(Kind::half_plane, 0.0); }

  Kind kind() const { return kind_; }
  double parameter() const { return param_; }
  bool contains(Complex z) const;

 private:
  ModelSurface(Kind k, double p) : kind_(k), param_(p) {}
  Kind kind_;
  double param_;
};

/// Curvature -1 Poincare density of `surface` at z.
double density(const ModelSurface& surface, Complex z);

/// Poincare distance in the unit disc, log((1 + t) / (1 - t)) with
/// t the pseudo-hyperbolic distance.
double hyp_distance(Complex z, Complex w);

/// Open hyperbolic ball membership.
bool hyp_ball_contains(Complex center, double radius, Complex z);

/// Disc automorphism z -> e^{i theta} (z + a) / (1 + conj(a) z).
HolMap mobius(Complex a, double theta);

/// lambda_target(f(p)) |f'(p)| / lambda_disc(p).
double distortion(const HolMap& f, const ModelSurface& target, Complex p);

}  // namespace hypfol
