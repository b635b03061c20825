#include "hypfol/hyp_core.hpp"

#include <cmath>

namespace hypfol {

ModelSurface ModelSurface::punctured_disc(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw DomainError("punctured disc radius must be positive");
  return ModelSurface(Kind::punctured_disc, radius);
}

ModelSurface ModelSurface::annulus(double inner) {
  if (!(inner > 0.0 && inner < 1.0)) throw DomainError("annulus inner radius must lie in (0, 1)");
  return ModelSurface(Kind::annulus, inner);
}

bool ModelSurface::contains(Complex z) const {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  const double r = std::abs(z);
  switch (kind_) {
    case Kind::disc:
      return r < 1.0 - kBoundaryMargin;
    case Kind::punctured_disc:
      return r > kBoundaryMargin && r < param_ - kBoundaryMargin;
    case Kind::annulus:
      return r > param_ + kBoundaryMargin && r < 1.0 - kBoundaryMargin;
    case Kind::half_plane:
      return z.imag() > kBoundaryMargin;
  }
  return false;
}

double density(const ModelSurface& s, Complex z) {
  if (!s.contains(z)) throw DomainError("density: point outside surface");
  const double r = std::abs(z);
  switch (s.kind()) {
    case ModelSurface::Kind::disc:
      return 2.0 / ((1.0 - r) * (1.0 + r));
    case ModelSurface::Kind::punctured_disc:
      return 1.0 / (r * std::log(s.parameter() / r));
    case ModelSurface::Kind::annulus: {
      // log z maps onto the strip log(inner) < Re w < 0 of width W
      const double width = -std::log(s.parameter());
      const double x = std::log(r / s.parameter());
      return (kPi / (width * r)) / std::sin(kPi * x / width);
    }
    case ModelSurface::Kind::half_plane:
      return 1.0 / z.imag();
  }
  return 0.0;
}

namespace {
void require_disc(Complex z, const char* what) {
  if (!ModelSurface::disc().contains(z)) throw DomainError(std::string(what) + ": point outside disc");
}
}  // namespace

double hyp_distance(Complex z, Complex w) {
  require_disc(z, "hyp_distance");
  require_disc(w, "hyp_distance");
  const double t = std::abs(z - w) / std::abs(1.0 - std::conj(z) * w);
  return 2.0 * std::atanh(t);
}

bool hyp_ball_contains(Complex center, double radius, Complex z) {
  if (radius < 0.0) throw DomainError("hyp_ball_contains: negative radius");
  return hyp_distance(center, z) < radius;
}

HolMap mobius(Complex a, double theta) { return HolMap::mobius(a, theta); }

double distortion(const HolMap& f, const ModelSurface& target, Complex p) {
  require_disc(p, "distortion");
  const Jet j = f.jet(p, 1);
  if (!target.contains(j[0])) throw DomainError("distortion: f(p) outside target surface");
  const double r = std::abs(p);
  return density(target, j[0]) * std::abs(j[1]) * (1.0 - r) * (1.0 + r) / 2.0;
}

}  // namespace hypfol
