#include "hypfol/holmap.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace hypfol {

// ---------------------------------------------------------------- Jet

Jet Jet::constant(Complex value, int order) {
  std::vector<Complex> c(order + 1, 0.0);
  c[0] = value;
  return Jet(std::move(c));
}

Jet Jet::variable(Complex at, int order) {
  std::vector<Complex> c(order + 1, 0.0);
  c[0] = at;
  if (order >= 1) c[1] = 1.0;
  return Jet(std::move(c));
}

Complex Jet::derivative(int k) const {
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  return fact * c_[k];
}

Jet operator+(const Jet& a, const Jet& b) {
  Jet r = a;
  for (int k = 0; k <= r.order(); ++k) r.c_[k] += b.c_[k];
  return r;
}

Jet operator-(const Jet& a, const Jet& b) {
  Jet r = a;
  for (int k = 0; k <= r.order(); ++k) r.c_[k] -= b.c_[k];
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  const int n = a.order();
  std::vector<Complex> c(n + 1, 0.0);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Jet(std::move(c));
}

Jet operator/(const Jet& a, const Jet& b) {
  const int n = a.order();
  std::vector<Complex> q(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    Complex s = a.c_[k];
    for (int j = 1; j <= k; ++j) s -= b.c_[j] * q[k - j];
    q[k] = s / b.c_[0];
  }
  return Jet(std::move(q));
}

Jet operator*(Complex s, const Jet& a) {
  Jet r = a;
  for (auto& x : r.c_) x *= s;
  return r;
}

Jet Jet::compose(const Jet& outer, const Jet& inner) {
  const int n = inner.order();
  Jet d = inner;
  d.c_[0] = 0.0;
  Jet r = Jet::constant(outer.c_[n], n);
  for (int k = n - 1; k >= 0; --k) {
    r = r * d;
    r.c_[0] += outer.c_[k];
  }
  return r;
}

// ---------------------------------------------------------------- Poly

Complex Poly::operator()(Complex z) const {
  Complex r = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * z + *it;
  return r;
}

Poly Poly::derivative() const {
  Poly d;
  for (std::size_t k = 1; k < c.size(); ++k) d.c.push_back(static_cast<double>(k) * c[k]);
  if (d.c.empty()) d.c.push_back(0.0);
  return d;
}

void Poly::trim(double rel) {
  double scale = 0.0;
  for (const auto& x : c) scale = std::max(scale, std::abs(x));
  while (c.size() > 1 && std::abs(c.back()) <= rel * scale) c.pop_back();
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), 0.0);
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  Poly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), 0.0);
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}

std::vector<Complex> poly_roots(const Poly& p) {
  Poly q = p;
  q.trim(1e-14);
  std::vector<Complex> roots;
  // exact zero low-order coefficients are exact roots at the origin
  std::size_t lead = 0;
  while (lead + 1 < q.c.size() && q.c[lead] == Complex(0.0)) ++lead;
  roots.assign(lead, Complex(0.0));
  std::vector<Complex> c(q.c.begin() + static_cast<std::ptrdiff_t>(lead), q.c.end());
  const int n = static_cast<int>(c.size()) - 1;
  if (n <= 0) return roots;
  if (n == 1) {
    roots.push_back(-c[0] / c[1]);
    return roots;
  }
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  for (int i = 0; i < n; ++i) roots.push_back(es.eigenvalues()[i]);
  return roots;
}

// ---------------------------------------------------------------- HolMap

struct HolMap::Node {
  Op op;
  Complex c{0.0};       // constant value, monomial/scale coefficient, mobius a
  double theta = 0.0;   // mobius rotation
  int k = 0;            // monomial power
  std::vector<Complex> coeffs;
  std::vector<HolMap> args;
};

HolMap HolMap::identity() {
  auto n = std::make_shared<Node>();
  n->op = Op::identity;
  return HolMap(n);
}

HolMap HolMap::constant(Complex c) {
  auto n = std::make_shared<Node>();
  n->op = Op::constant;
  n->c = c;
  return HolMap(n);
}

HolMap HolMap::monomial(int k, Complex coeff) {
  if (k < 0) throw DomainError("monomial power must be nonnegative");
  auto n = std::make_shared<Node>();
  n->op = Op::monomial;
  n->k = k;
  n->c = coeff;
  return HolMap(n);
}

HolMap HolMap::mobius(Complex a, double theta) {
  if (!(std::abs(a) < 1.0)) throw DomainError("mobius: |a| must be < 1");
  auto n = std::make_shared<Node>();
  n->op = Op::mobius;
  n->c = a;
  n->theta = theta;
  return HolMap(n);
}

HolMap HolMap::polynomial(std::vector<Complex> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  auto n = std::make_shared<Node>();
  n->op = Op::polynomial;
  n->coeffs = std::move(coeffs);
  return HolMap(n);
}

HolMap HolMap::scale(Complex c, const HolMap& f) {
  auto n = std::make_shared<Node>();
  n->op = Op::scale;
  n->c = c;
  n->args = {f};
  return HolMap(n);
}

HolMap HolMap::compose(const HolMap& outer, const HolMap& inner) {
  auto n = std::make_shared<Node>();
  n->op = Op::compose;
  n->args = {outer, inner};
  return HolMap(n);
}

HolMap HolMap::product(const HolMap& f, const HolMap& g) {
  auto n = std::make_shared<Node>();
  n->op = Op::product;
  n->args = {f, g};
  return HolMap(n);
}

HolMap::Op HolMap::op() const { return node_->op; }
Complex HolMap::param() const { return node_->c; }
double HolMap::angle() const { return node_->theta; }
int HolMap::power() const { return node_->k; }
const std::vector<Complex>& HolMap::coeffs() const { return node_->coeffs; }
const std::vector<HolMap>& HolMap::children() const { return node_->args; }

Jet HolMap::jet(Complex z, int order) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::identity:
      return Jet::variable(z, order);
    case Op::constant:
      return Jet::constant(n.c, order);
    case Op::monomial: {
      // (z + h)^k = sum_j C(k, j) z^{k-j} h^j
      std::vector<Complex> c(order + 1, 0.0);
      double binom = 1.0;
      for (int j = 0; j <= std::min(order, n.k); ++j) {
        c[j] = n.c * binom * std::pow(z, n.k - j);
        binom = binom * (n.k - j) / (j + 1);
      }
      return Jet(std::move(c));
    }
    case Op::mobius: {
      const Jet v = Jet::variable(z, order);
      const Jet num = v + Jet::constant(n.c, order);
      const Jet den = Jet::constant(1.0, order) + std::conj(n.c) * v;
      return std::polar(1.0, n.theta) * (num / den);
    }
    case Op::polynomial: {
      const Jet v = Jet::variable(z, order);
      Jet r = Jet::constant(n.coeffs.back(), order);
      for (auto it = n.coeffs.rbegin() + 1; it != n.coeffs.rend(); ++it) {
        r = r * v;
        r[0] += *it;
      }
      return r;
    }
    case Op::scale:
      return n.c * n.args[0].jet(z, order);
    case Op::compose: {
      const Jet inner = n.args[1].jet(z, order);
      const Jet outer = n.args[0].jet(inner[0], order);
      return Jet::compose(outer, inner);
    }
    case Op::product:
      return n.args[0].jet(z, order) * n.args[1].jet(z, order);
  }
  return {};
}

Complex HolMap::operator()(Complex z) const { return jet(z, 0)[0]; }
Complex HolMap::derivative(Complex z) const { return jet(z, 1)[1]; }

Rational HolMap::rational() const {
  const Node& n = *node_;
  const Poly one{{1.0}};
  switch (n.op) {
    case Op::identity:
      return {Poly{{0.0, 1.0}}, one};
    case Op::constant:
      return {Poly{{n.c}}, one};
    case Op::monomial: {
      Poly p;
      p.c.assign(n.k + 1, 0.0);
      p.c[n.k] = n.c;
      return {p, one};
    }
    case Op::mobius: {
      const Complex rot = std::polar(1.0, n.theta);
      return {Poly{{rot * n.c, rot}}, Poly{{1.0, std::conj(n.c)}}};
    }
    case Op::polynomial:
      return {Poly{n.coeffs}, one};
    case Op::scale: {
      Rational r = n.args[0].rational();
      for (auto& x : r.num.c) x *= n.c;
      return r;
    }
    case Op::product: {
      const Rational a = n.args[0].rational();
      const Rational b = n.args[1].rational();
      return {a.num * b.num, a.den * b.den};
    }
    case Op::compose: {
      const Rational outer = n.args[0].rational();
      const Rational inner = n.args[1].rational();
      const int d = std::max(outer.num.degree(), outer.den.degree());
      std::vector<Poly> ppow{one}, qpow{one};
      for (int i = 1; i <= d; ++i) {
        ppow.push_back(ppow.back() * inner.num);
        qpow.push_back(qpow.back() * inner.den);
      }
      Poly num{{0.0}}, den{{0.0}};
      for (int i = 0; i <= outer.num.degree(); ++i)
        num = num + Poly{{outer.num.c[i]}} * ppow[i] * qpow[d - i];
      for (int i = 0; i <= outer.den.degree(); ++i)
        den = den + Poly{{outer.den.c[i]}} * ppow[i] * qpow[d - i];
      return {num, den};
    }
  }
  return {};
}

namespace {

Poly derivative_numerator(const Rational& r) {
  Poly w = r.num.derivative() * r.den - r.num * r.den.derivative();
  w.trim(1e-13);
  return w;
}

bool all_zero(const Poly& p) {
  double s = 0.0;
  for (const auto& x : p.c) s = std::max(s, std::abs(x));
  return s == 0.0;
}

// Vanishing order of f' at z: number of leading Taylor coefficients c_1, c_2, ...
// below the relative threshold, capped at max_order. Coefficients are weighed
// by delta^k with delta = 1 - |z|, a lower bound on the distance to the poles,
// so jets that blow up near the unit circle do not swamp c_1.
int vanishing_order(const HolMap& f, Complex z, int max_order) {
  const Jet j = f.jet(z, max_order + 1);
  const double delta = std::clamp(1.0 - std::abs(z), 1e-3, 1.0);
  std::vector<double> a(max_order + 2, 0.0);
  double scale = 0.0, w = 1.0;
  for (int k = 1; k <= max_order + 1; ++k) {
    w *= delta;
    a[k] = std::abs(j[k]) * w;
    scale = std::max(scale, a[k]);
  }
  int v = 0;
  while (v < max_order && a[v + 1] <= 1e-9 * scale) ++v;
  return v;
}

constexpr int kRefineIters = 60;
constexpr int kMaxOrderProbe = 8;
constexpr double kSeedMargin = 0.05;
constexpr double kMergeTol = 1e-7;
constexpr double kConvergedStep = 1e-12;
constexpr double kClusterRadius = 1e-2;

// Newton on the v-th derivative, for which a critical point of order v is simple.
Complex refine(const HolMap& f, Complex z, int v) {
  for (int it = 0; it < kRefineIters; ++it) {
    const Jet j = f.jet(z, v + 1);
    const Complex g = j.derivative(v);
    const Complex dg = j.derivative(v + 1);
    if (dg == Complex(0.0)) break;
    const Complex step = g / dg;
    z -= step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z))) break;
  }
  return z;
}

// Schroeder's iteration z -= g g' / (g'^2 - g g'') on g = f^{(d)} - c, which
// converges quadratically to zeros of any multiplicity. False when it stalls.
bool schroeder(const HolMap& f, Complex& z, int d, Complex c = 0.0) {
  for (int it = 0; it < kRefineIters; ++it) {
    const Jet j = f.jet(z, d + 2);
    const Complex g0 = j.derivative(d) - c, g1 = j.derivative(d + 1), g2 = j.derivative(d + 2);
    if (g0 == Complex(0.0)) return true;
    const Complex step = g0 * g1 / (g1 * g1 - g0 * g2);
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return false;
    z -= step;
    if (std::abs(step) <= kConvergedStep * (1.0 + std::abs(z))) return true;
  }
  return false;
}

bool close(Complex a, Complex b) { return std::abs(a - b) <= kMergeTol * (1.0 + std::abs(a)); }

void add_point(std::vector<CriticalPoint>& pts, Complex z, int v) {
  for (auto& p : pts)
    if (close(p.z, z)) {
      p.order = std::max(p.order, v);
      return;
    }
  pts.push_back({z, v});
}

void add_root(std::vector<Complex>& pts, Complex z) {
  for (auto p : pts)
    if (close(p, z)) return;
  pts.push_back(z);
}

// Finite critical points of a product or polynomial node, seeded by the roots
// of the derivative numerator.
std::vector<CriticalPoint> critical_from_rational(const HolMap& f) {
  const Poly w = derivative_numerator(f.rational());
  if (all_zero(w) || w.degree() == 0) return {};
  const int cap = std::min(w.degree(), kMaxOrderProbe);
  const std::vector<Complex> seeds = poly_roots(w);
  std::vector<bool> done(seeds.size(), false);
  std::vector<CriticalPoint> out;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (done[i]) continue;
    const Complex seed = seeds[i];
    // a zero of order k scatters into k roots at distance ~eps^(1/k), where
    // f' sits at rounding level; their mean is well conditioned
    Complex mean = 0.0;
    int k = 0;
    for (std::size_t j = i; j < seeds.size(); ++j)
      if (!done[j] && std::abs(seeds[j] - seed) < kClusterRadius) {
        mean += seeds[j];
        done[j] = true;
        ++k;
      }
    Complex z = k > 1 ? mean / static_cast<double>(k) : seed;
    int v = 0;
    if (k == 1) {
      v = schroeder(f, z, 1) ? vanishing_order(f, z, cap) : 0;
    } else {
      v = vanishing_order(f, z, cap);
      // jets are at rounding level around a flat zero, so polishing is only
      // kept when it stays put
      Complex polished = z;
      if (v > 0 && schroeder(f, polished, 1) && std::abs(polished - z) < kMergeTol &&
          vanishing_order(f, polished, cap) >= v)
        z = polished;
    }
    if (v > 0) {
      add_point(out, z, v);
    } else if (std::abs(seed) < 1.0) {
      throw NonConvergence("critical point refinement failed near (" + std::to_string(seed.real()) + ", " +
                               std::to_string(seed.imag()) + ")",
                           std::abs(f.derivative(z)), kRefineIters);
    }
  }
  return out;
}

std::vector<Complex> preimages_from_rational(const HolMap& f, Complex c) {
  const Rational r = f.rational();
  Poly p = r.num - Poly{{c}} * r.den;
  p.trim();
  if (all_zero(p) || p.degree() < 1) return {};
  std::vector<Complex> out;
  for (Complex z : poly_roots(p))
    if (schroeder(f, z, 0, c)) add_root(out, z);
  return out;
}

// All finite z with f(z) = c. Constant subtrees have none.
std::vector<Complex> preimages(const HolMap& f, Complex c) {
  const auto& args = f.children();
  switch (f.op()) {
    case HolMap::Op::identity: return {c};
    case HolMap::Op::constant: return {};
    case HolMap::Op::monomial: {
      const int k = f.power();
      if (k == 0 || f.param() == Complex(0.0)) return {};
      const Complex w = c / f.param();
      if (w == Complex(0.0)) return {Complex(0.0)};
      std::vector<Complex> out;
      for (int j = 0; j < k; ++j) out.push_back(std::polar(std::pow(std::abs(w), 1.0 / k), (std::arg(w) + 2 * kPi * j) / k));
      return out;
    }
    case HolMap::Op::mobius: {
      const Complex w = c * std::polar(1.0, -f.angle()), a = f.param();
      const Complex den = 1.0 - std::conj(a) * w;
      if (den == Complex(0.0)) return {};
      return {(w - a) / den};
    }
    case HolMap::Op::scale:
      return f.param() == Complex(0.0) ? std::vector<Complex>{} : preimages(args[0], c / f.param());
    case HolMap::Op::compose: {
      std::vector<Complex> out;
      for (Complex w : preimages(args[0], c))
        for (Complex z : preimages(args[1], w)) add_root(out, z);
      return out;
    }
    default: return preimages_from_rational(f, c);
  }
}

// All finite critical points with the vanishing order of f'. For g o h the
// local multiplicities multiply: m(z) = m_g(h(z)) m_h(z).
std::vector<CriticalPoint> plane_critical(const HolMap& f) {
  const auto& args = f.children();
  switch (f.op()) {
    case HolMap::Op::identity:
    case HolMap::Op::constant:
    case HolMap::Op::mobius: return {};
    case HolMap::Op::monomial:
      if (f.power() < 2 || f.param() == Complex(0.0)) return {};
      return {{Complex(0.0), f.power() - 1}};
    case HolMap::Op::scale: return f.param() == Complex(0.0) ? std::vector<CriticalPoint>{} : plane_critical(args[0]);
    case HolMap::Op::compose: {
      const HolMap &g = args[0], &h = args[1];
      if (h.is_constant()) return {};
      const auto inner = plane_critical(h);
      std::vector<CriticalPoint> out;
      std::vector<bool> used(inner.size(), false);
      for (const auto& cg : plane_critical(g))
        for (Complex z : preimages(h, cg.z)) {
          int oh = 0;
          for (std::size_t i = 0; i < inner.size(); ++i)
            if (close(inner[i].z, z)) {
              oh = inner[i].order;
              used[i] = true;
            }
          add_point(out, z, (cg.order + 1) * (oh + 1) - 1);
        }
      for (std::size_t i = 0; i < inner.size(); ++i)
        if (!used[i]) add_point(out, inner[i].z, inner[i].order);
      return out;
    }
    default: return critical_from_rational(f);
  }
}

}  // namespace

bool HolMap::is_constant() const { return all_zero(derivative_numerator(rational())); }

std::vector<CriticalPoint> HolMap::critical_points() const {
  if (is_constant()) return {};
  // enumerated along the expression tree: expanding a deep composition into
  // one rational function loses the critical points to cancellation when a
  // Mobius factor sits near the circle
  std::vector<CriticalPoint> out;
  for (const auto& c : plane_critical(*this)) {
    if (!(std::abs(c.z) < 1.0)) continue;
    const Complex zr = refine(*this, c.z, c.order);
    const Complex z = std::abs(zr - c.z) <= 1e-6 && std::abs(zr) < 1.0 ? zr : c.z;
    add_point(out, z, c.order);
  }
  std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    return a.z.real() != b.z.real() ? a.z.real() < b.z.real() : a.z.imag() < b.z.imag();
  });
  return out;
}

}  // namespace hypfol
