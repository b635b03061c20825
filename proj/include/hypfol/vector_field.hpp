#pragma once

#include <vector>

#include "hypfol/types.hpp"

namespace hypfol {

struct Monomial {
  std::vector<int> exponents;
  Complex coeff;
};

/// Polynomial in n complex variables, a sum of monomials.
class MultiPoly {
 public:
  MultiPoly() = default;
  MultiPoly(int nvars, std::vector<Monomial> terms);

  static MultiPoly constant(int nvars, Complex c);
  /// c * z_var^power.
  static MultiPoly power(int nvars, int var, int power, Complex c = 1.0);

  int nvars() const { return nvars_; }
  const std::vector<Monomial>& terms() const { return terms_; }

  Complex operator()(const CVec& z) const;
  MultiPoly partial(int var) const;
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);

 private:
  int nvars_ = 0;
  std::vector<Monomial> terms_;
};

/// Holomorphic polynomial vector field on C^n, declared on the ball of
/// radius `radius` < 1.
class PolyVectorField {
 public:
  PolyVectorField(std::vector<MultiPoly> components, double radius = 0.5);

  /// X(z) = diag(eigenvalues) z.
  static PolyVectorField linear_diagonal(const CVec& eigenvalues, double radius = 0.5);

  int dim() const { return static_cast<int>(comp_.size()); }
  double radius() const { return radius_; }
  const std::vector<MultiPoly>& components() const { return comp_; }

  CVec operator()(const CVec& z) const;
  /// DX(z) v from symbolically differentiated coefficients.
  CVec jacobian_apply(const CVec& z, const CVec& v) const;

 private:
  std::vector<MultiPoly> comp_;
  std::vector<std::vector<MultiPoly>> jac_;  // jac_[i][j] = d X_i / d z_j
  double radius_;
};

}  // namespace hypfol
