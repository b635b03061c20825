#include "hypfol/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hypfol::io {

std::string format_number(double x) {
  if (std::isnan(x)) throw Error("refusing to serialize NaN");
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json number(double x) {
  if (std::isnan(x)) throw Error("refusing to serialize NaN");
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double to_number(const Json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw ConfigError(what + ": expected a number");
}

Json complex_json(Complex z) { return Json::array({number(z.real()), number(z.imag())}); }

Complex to_complex(const Json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_array() || j.size() != 2) throw ConfigError(what + ": expected [re, im]");
  return {to_number(j[0], what), to_number(j[1], what)};
}

void check_keys(const Json& j, const std::vector<std::string>& allowed, const std::vector<std::string>& required,
                const std::string& what) {
  if (!j.is_object()) throw ConfigError(what + ": expected an object");
  for (const auto& [key, value] : j.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError(what + ": unknown key '" + key + "'");
  for (const auto& key : required)
    if (!j.contains(key)) throw ConfigError(what + ": missing key '" + key + "'");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

Json report_header(std::optional<double> spacing) {
  Json h;
  h["version"] = kVersion;
  h["convention"] = kConvention;
  h["spacing"] = spacing ? number(*spacing) : Json(nullptr);
  return h;
}

std::string csv_header(std::optional<double> spacing) {
  std::string s = std::string("# version=") + kVersion + "\n# convention=" + kConvention + "\n";
  if (spacing) s += "# spacing=" + format_number(*spacing) + "\n";
  return s;
}

namespace {

int to_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) throw ConfigError(what + ": expected an integer");
  return j.get<int>();
}

std::string to_string(const Json& j, const std::string& what) {
  if (!j.is_string()) throw ConfigError(what + ": expected a string");
  return j.get<std::string>();
}

template <class F>
auto rethrow_as_config(F&& f, const std::string& what) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

}  // namespace

GridDomain grid_from_json(const Json& j) {
  check_keys(j, {"origin", "spacing", "rows", "cols", "mask"}, {"origin", "spacing", "rows", "cols", "mask"}, "grid");
  const int rows = to_int(j["rows"], "grid.rows");
  const int cols = to_int(j["cols"], "grid.cols");
  if (!j["mask"].is_array()) throw ConfigError("grid.mask: expected an array");
  std::vector<std::uint8_t> mask;
  mask.reserve(j["mask"].size());
  for (const auto& v : j["mask"]) {
    const int b = to_int(v, "grid.mask");
    if (b != 0 && b != 1) throw ConfigError("grid.mask: entries must be 0 or 1");
    mask.push_back(static_cast<std::uint8_t>(b));
  }
  const Complex origin = to_complex(j["origin"], "grid.origin");
  const double h = to_number(j["spacing"], "grid.spacing");
  return rethrow_as_config([&] { return GridDomain(origin, h, rows, cols, std::move(mask)); }, "grid");
}

Json grid_to_json(const GridDomain& g) {
  Json j;
  j["origin"] = complex_json(g.origin());
  j["spacing"] = number(g.spacing());
  j["rows"] = g.rows();
  j["cols"] = g.cols();
  Json mask = Json::array();
  for (auto b : g.mask()) mask.push_back(static_cast<int>(b));
  j["mask"] = std::move(mask);
  return j;
}

std::string density_csv(const DensityField& field) {
  const GridDomain& g = field.domain();
  std::ostringstream out;
  out << csv_header(g.spacing()) << "re,im,lambda\n";
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c) {
      if (!g.inside(r, c)) continue;
      const Complex z = g.center(r, c);
      out << format_number(z.real()) << ',' << format_number(z.imag()) << ',' << format_number(field.at_cell(r, c))
          << '\n';
    }
  return out.str();
}

MultiPoly multipoly_from_json(const Json& j, int nvars) {
  check_keys(j, {"monomials"}, {"monomials"}, "polynomial");
  if (!j["monomials"].is_array()) throw ConfigError("polynomial.monomials: expected an array");
  std::vector<Monomial> terms;
  for (const auto& m : j["monomials"]) {
    check_keys(m, {"exponents", "coeff_re", "coeff_im"}, {"exponents"}, "monomial");
    if (!m["exponents"].is_array()) throw ConfigError("monomial.exponents: expected an array");
    std::vector<int> e;
    for (const auto& v : m["exponents"]) e.push_back(to_int(v, "monomial.exponents"));
    const double re = m.contains("coeff_re") ? to_number(m["coeff_re"], "monomial.coeff_re") : 0.0;
    const double im = m.contains("coeff_im") ? to_number(m["coeff_im"], "monomial.coeff_im") : 0.0;
    terms.push_back({std::move(e), {re, im}});
  }
  return rethrow_as_config([&] { return MultiPoly(nvars, std::move(terms)); }, "polynomial");
}

PolyVectorField field_from_json(const Json& j) {
  check_keys(j, {"n", "components", "radius"}, {"n", "components"}, "vector field");
  const int n = to_int(j["n"], "vector field.n");
  if (!j["components"].is_array() || static_cast<int>(j["components"].size()) != n)
    throw ConfigError("vector field.components: expected n entries");
  std::vector<MultiPoly> comp;
  for (const auto& c : j["components"]) comp.push_back(multipoly_from_json(c, n));
  const double radius = j.contains("radius") ? to_number(j["radius"], "vector field.radius") : 0.5;
  return rethrow_as_config([&] { return PolyVectorField(std::move(comp), radius); }, "vector field");
}

Json field_to_json(const PolyVectorField& x) {
  Json j;
  j["n"] = x.dim();
  Json comps = Json::array();
  for (const auto& c : x.components()) {
    Json mons = Json::array();
    for (const auto& t : c.terms())
      mons.push_back({{"exponents", t.exponents}, {"coeff_re", number(t.coeff.real())},
                      {"coeff_im", number(t.coeff.imag())}});
    comps.push_back({{"monomials", std::move(mons)}});
  }
  j["components"] = std::move(comps);
  j["radius"] = number(x.radius());
  return j;
}

ModelFoliation foliation_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type")) throw ConfigError("foliation: missing key 'type'");
  const std::string type = to_string(j["type"], "foliation.type");
  ModelFoliation f;
  if (j.contains("metric")) {
    const std::string m = to_string(j["metric"], "foliation.metric");
    if (m == "euclidean") f.metric = AmbientMetric::euclidean;
    else if (m == "poincare_factor") f.metric = AmbientMetric::poincare_factor;
    else throw ConfigError("foliation.metric: unknown metric '" + m + "'");
  }
  if (type == "product") {
    check_keys(j, {"type", "metric", "transverse_dim"}, {}, "foliation");
    ProductFoliation p;
    if (j.contains("transverse_dim")) p.transverse_dim = to_int(j["transverse_dim"], "foliation.transverse_dim");
    if (p.transverse_dim < 1) throw ConfigError("foliation.transverse_dim must be >= 1");
    f.kind = p;
  } else if (type == "radial") {
    check_keys(j, {"type", "metric", "dim", "ball_radius"}, {}, "foliation");
    RadialFoliation r;
    if (j.contains("dim")) r.dim = to_int(j["dim"], "foliation.dim");
    if (j.contains("ball_radius")) r.ball_radius = to_number(j["ball_radius"], "foliation.ball_radius");
    if (r.dim < 2 || !(r.ball_radius > 0.0 && r.ball_radius < 1.0))
      throw ConfigError("foliation: radial needs dim >= 2 and ball_radius in (0, 1)");
    f.kind = r;
  } else if (type == "vector_field") {
    check_keys(j, {"type", "metric", "field"}, {"field"}, "foliation");
    f.kind = FieldFoliation{field_from_json(j["field"])};
  } else {
    throw ConfigError("foliation.type: unknown type '" + type + "'");
  }
  return f;
}

FoliatedDomain foliated_domain_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type")) throw ConfigError("domain: missing key 'type'");
  const std::string type = to_string(j["type"], "domain.type");
  if (type == "polydisc") {
    check_keys(j, {"type", "leaf_radius", "transverse_radius"}, {"leaf_radius", "transverse_radius"}, "domain");
    return Polydisc{to_number(j["leaf_radius"], "domain.leaf_radius"),
                    to_number(j["transverse_radius"], "domain.transverse_radius")};
  }
  if (type == "ball") {
    check_keys(j, {"type", "radius"}, {"radius"}, "domain");
    return Ball{to_number(j["radius"], "domain.radius")};
  }
  if (type == "grid_product") {
    check_keys(j, {"type", "leaf", "transverse_radius"}, {"leaf", "transverse_radius"}, "domain");
    return GridProduct{grid_from_json(j["leaf"]), to_number(j["transverse_radius"], "domain.transverse_radius")};
  }
  throw ConfigError("domain.type: unknown type '" + type + "'");
}

HolMap holmap_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("op")) throw ConfigError("map: missing key 'op'");
  const std::string op = to_string(j["op"], "map.op");
  auto args = [&](std::size_t n) {
    if (!j.contains("args") || !j["args"].is_array() || j["args"].size() != n)
      throw ConfigError("map." + op + ": expected " + std::to_string(n) + " args");
    std::vector<HolMap> out;
    for (const auto& a : j["args"]) out.push_back(holmap_from_json(a));
    return out;
  };
  return rethrow_as_config(
      [&]() -> HolMap {
        if (op == "identity") {
          check_keys(j, {"op"}, {}, "map");
          return HolMap::identity();
        }
        if (op == "constant") {
          check_keys(j, {"op", "c"}, {"c"}, "map");
          return HolMap::constant(to_complex(j["c"], "map.c"));
        }
        if (op == "monomial") {
          check_keys(j, {"op", "k", "coeff"}, {"k"}, "map");
          const Complex c = j.contains("coeff") ? to_complex(j["coeff"], "map.coeff") : Complex(1.0);
          return HolMap::monomial(to_int(j["k"], "map.k"), c);
        }
        if (op == "mobius") {
          check_keys(j, {"op", "a", "theta"}, {"a"}, "map");
          const double theta = j.contains("theta") ? to_number(j["theta"], "map.theta") : 0.0;
          return HolMap::mobius(to_complex(j["a"], "map.a"), theta);
        }
        if (op == "polynomial") {
          check_keys(j, {"op", "coeffs"}, {"coeffs"}, "map");
          if (!j["coeffs"].is_array()) throw ConfigError("map.coeffs: expected an array");
          std::vector<Complex> c;
          for (const auto& v : j["coeffs"]) c.push_back(to_complex(v, "map.coeffs"));
          return HolMap::polynomial(std::move(c));
        }
        if (op == "scale") {
          check_keys(j, {"op", "c", "args"}, {"c", "args"}, "map");
          return HolMap::scale(to_complex(j["c"], "map.c"), args(1)[0]);
        }
        if (op == "compose" || op == "product") {
          check_keys(j, {"op", "args"}, {"args"}, "map");
          const auto a = args(2);
          return op == "compose" ? HolMap::compose(a[0], a[1]) : HolMap::product(a[0], a[1]);
        }
        throw ConfigError("map.op: unknown op '" + op + "'");
      },
      "map");
}

Json holmap_to_json(const HolMap& f) {
  Json j;
  auto children = [&] {
    Json a = Json::array();
    for (const auto& c : f.children()) a.push_back(holmap_to_json(c));
    return a;
  };
  switch (f.op()) {
    case HolMap::Op::identity: j["op"] = "identity"; break;
    case HolMap::Op::constant:
      j["op"] = "constant";
      j["c"] = complex_json(f.param());
      break;
    case HolMap::Op::monomial:
      j["op"] = "monomial";
      j["k"] = f.power();
      j["coeff"] = complex_json(f.param());
      break;
    case HolMap::Op::mobius:
      j["op"] = "mobius";
      j["a"] = complex_json(f.param());
      j["theta"] = number(f.angle());
      break;
    case HolMap::Op::polynomial: {
      j["op"] = "polynomial";
      Json c = Json::array();
      for (auto v : f.coeffs()) c.push_back(complex_json(v));
      j["coeffs"] = std::move(c);
      break;
    }
    case HolMap::Op::scale:
      j["op"] = "scale";
      j["c"] = complex_json(f.param());
      j["args"] = children();
      break;
    case HolMap::Op::compose: j["op"] = "compose"; j["args"] = children(); break;
    case HolMap::Op::product: j["op"] = "product"; j["args"] = children(); break;
  }
  return j;
}

std::vector<CVec> points_from_json(const Json& j) {
  check_keys(j, {"points"}, {"points"}, "points");
  if (!j["points"].is_array()) throw ConfigError("points: expected an array");
  std::vector<CVec> out;
  for (const auto& p : j["points"]) {
    if (!p.is_array() || p.empty() || p.size() % 2 != 0) throw ConfigError("points: each point is [re, im, ...]");
    CVec z;
    for (std::size_t i = 0; i < p.size(); i += 2)
      z.emplace_back(to_number(p[i], "points"), to_number(p[i + 1], "points"));
    out.push_back(std::move(z));
  }
  return out;
}

Json point_json(const CVec& p) {
  Json a = Json::array();
  for (auto z : p) {
    a.push_back(number(z.real()));
    a.push_back(number(z.imag()));
  }
  return a;
}

Json bloch_report_json(const BlochReport& r) {
  Json j;
  j["header"] = report_header();
  j["alpha0"] = number(r.alpha0);
  j["bound"] = r.skipped ? Json(nullptr) : number(r.bound);
  j["t_f"] = number(r.t_f);
  j["satisfied"] = r.satisfied;
  j["lower_bound_flag"] = r.lower_bound_flag;
  j["skipped"] = r.skipped;
  return j;
}

Json convergence_report_json(const ConvergenceReport& r) {
  Json j;
  j["header"] = report_header(r.spacing);
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"n", row.n}, {"rho", number(row.rho)}, {"sup_err", number(row.sup_err)},
                    {"argmax", point_json(row.argmax)}});
  j["rows"] = std::move(rows);
  return j;
}

std::string curvature_csv(const std::vector<CurvatureRow>& rows, double step) {
  std::ostringstream out;
  out << csv_header(step);
  const std::size_t n = rows.empty() ? 0 : rows.front().z.size();
  for (std::size_t i = 0; i < n; ++i) out << "re" << i << ",im" << i << ',';
  out << "K_closed,K_fd,bound,pass\n";
  for (const auto& r : rows) {
    for (auto z : r.z) out << format_number(z.real()) << ',' << format_number(z.imag()) << ',';
    out << format_number(r.k_closed) << ',' << format_number(r.k_fd) << ',' << format_number(r.bound) << ','
        << (r.pass ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace hypfol::io
