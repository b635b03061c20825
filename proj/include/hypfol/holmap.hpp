#pragma once

#include <memory>
#include <vector>

#include "hypfol/types.hpp"

namespace hypfol {

/// Truncated Taylor expansion f(z0 + h) = sum_k c[k] h^k, k <= order.
class Jet {
 public:
  Jet() = default;
  explicit Jet(std::vector<Complex> coeffs) : c_(std::move(coeffs)) {}

  static Jet constant(Complex value, int order);
  static Jet variable(Complex at, int order);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  Complex operator[](int k) const { return c_[k]; }
  Complex& operator[](int k) { return c_[k]; }
  const std::vector<Complex>& coeffs() const { return c_; }

  /// k-th derivative at the expansion point.
  Complex derivative(int k) const;

  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator*(Complex s, const Jet& a);

  /// outer(inner(z0 + h)) where `outer` is expanded at inner[0].
  static Jet compose(const Jet& outer, const Jet& inner);

 private:
  std::vector<Complex> c_;
};

/// Dense polynomial, coefficients in increasing degree.
struct Poly {
  std::vector<Complex> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  Complex operator()(Complex z) const;
  Poly derivative() const;
  void trim(double rel = 0.0);
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
};

/// Roots of a polynomial via companion-matrix eigenvalues.
std::vector<Complex> poly_roots(const Poly& p);

/// f = num / den.
struct Rational {
  Poly num;
  Poly den;
};

/// A critical point of f inside the unit disc; `order` is the vanishing
/// order of f' there, so the local multiplicity of f - f(c) is order + 1.
struct CriticalPoint {
  Complex z;
  int order;
};

/// Holomorphic map on the unit disc given as an immutable expression tree.
/// Copies share structure.
class HolMap {
 public:
  enum class Op { identity, constant, monomial, mobius, polynomial, scale, compose, product };

  static HolMap identity();
  static HolMap constant(Complex c);
  /// coeff * z^k, k >= 0.
  static HolMap monomial(int k, Complex coeff = 1.0);
  /// z -> e^{i theta} (z + a) / (1 + conj(a) z), |a| < 1.
  static HolMap mobius(Complex a, double theta);
  static HolMap polynomial(std::vector<Complex> coeffs);
  static HolMap scale(Complex c, const HolMap& f);
  /// outer o inner.
  static HolMap compose(const HolMap& outer, const HolMap& inner);
  static HolMap product(const HolMap& f, const HolMap& g);

  Op op() const;
  Complex operator()(Complex z) const;
  Complex derivative(Complex z) const;
  Jet jet(Complex z, int order) const;

  /// Exact rational form num/den of the expression.
  Rational rational() const;

  /// Zero-derivative points strictly inside the unit disc.
  /// Throws NonConvergence when a candidate cannot be refined.
  std::vector<CriticalPoint> critical_points() const;

  bool is_constant() const;

  // Node accessors used by serialization.
  Complex param() const;
  double angle() const;
  int power() const;
  const std::vector<Complex>& coeffs() const;
  const std::vector<HolMap>& children() const;

 private:
  struct Node;
  explicit HolMap(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace hypfol
