#include "hypfol/vector_field.hpp"

#include <map>

namespace hypfol {

MultiPoly::MultiPoly(int nvars, std::vector<Monomial> terms) : nvars_(nvars), terms_(std::move(terms)) {
  if (nvars < 1) throw DomainError("polynomial needs at least one variable");
  for (const auto& t : terms_) {
    if (static_cast<int>(t.exponents.size()) != nvars)
      throw DomainError("monomial exponent count does not match variable count");
    for (int e : t.exponents)
      if (e < 0) throw DomainError("negative exponent");
  }
}

MultiPoly MultiPoly::constant(int nvars, Complex c) {
  return MultiPoly(nvars, {Monomial{std::vector<int>(nvars, 0), c}});
}

MultiPoly MultiPoly::power(int nvars, int var, int power, Complex c) {
  std::vector<int> e(nvars, 0);
  e.at(var) = power;
  return MultiPoly(nvars, {Monomial{e, c}});
}

Complex MultiPoly::operator()(const CVec& z) const {
  Complex s = 0.0;
  for (const auto& t : terms_) {
    Complex m = t.coeff;
    for (int j = 0; j < nvars_; ++j)
      for (int e = 0; e < t.exponents[j]; ++e) m *= z[j];
    s += m;
  }
  return s;
}

MultiPoly MultiPoly::partial(int var) const {
  std::vector<Monomial> out;
  for (const auto& t : terms_) {
    if (t.exponents[var] == 0) continue;
    Monomial d = t;
    d.coeff *= static_cast<double>(t.exponents[var]);
    --d.exponents[var];
    out.push_back(std::move(d));
  }
  return MultiPoly(nvars_, std::move(out));
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  std::map<std::vector<int>, Complex> acc;
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) {
      std::vector<int> e(a.nvars_);
      for (int j = 0; j < a.nvars_; ++j) e[j] = s.exponents[j] + t.exponents[j];
      acc[e] += s.coeff * t.coeff;
    }
  std::vector<Monomial> terms;
  for (auto& [e, c] : acc) terms.push_back({e, c});
  return MultiPoly(a.nvars_, std::move(terms));
}

PolyVectorField::PolyVectorField(std::vector<MultiPoly> components, double radius)
    : comp_(std::move(components)), radius_(radius) {
  if (comp_.empty()) throw DomainError("vector field needs at least one component");
  if (!(radius > 0.0 && radius < 1.0)) throw DomainError("vector field radius must lie in (0, 1)");
  const int n = dim();
  for (const auto& c : comp_)
    if (c.nvars() != n) throw DomainError("vector field component has wrong variable count");
  jac_.resize(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) jac_[i].push_back(comp_[i].partial(j));
}

PolyVectorField PolyVectorField::linear_diagonal(const CVec& eigenvalues, double radius) {
  const int n = static_cast<int>(eigenvalues.size());
  std::vector<MultiPoly> comp;
  for (int j = 0; j < n; ++j) comp.push_back(MultiPoly::power(n, j, 1, eigenvalues[j]));
  return PolyVectorField(std::move(comp), radius);
}

CVec PolyVectorField::operator()(const CVec& z) const {
  CVec out(comp_.size());
  for (std::size_t i = 0; i < comp_.size(); ++i) out[i] = comp_[i](z);
  return out;
}

CVec PolyVectorField::jacobian_apply(const CVec& z, const CVec& v) const {
  const int n = dim();
  CVec out(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i] += jac_[i][j](z) * v[j];
  return out;
}

}  // namespace hypfol
