#include "hypfol/cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "hypfol/bloch.hpp"
#include "hypfol/corpus.hpp"
#include "hypfol/curvature.hpp"
#include "hypfol/foliation.hpp"
#include "hypfol/hyp_core.hpp"
#include "hypfol/io.hpp"
#include "hypfol/liouville.hpp"

namespace hypfol::cli {

using io::Json;

bool SuiteResult::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.status == Status::fail; });
}

namespace {

// ------------------------------------------------------------ verify suites

CheckRecord at_most(std::string name, double measured, double limit) {
  return {std::move(name), measured <= limit ? Status::pass : Status::fail, measured, limit, 0.0};
}

CheckRecord near(std::string name, double measured, double expected, double tol) {
  return {std::move(name), std::abs(measured - expected) <= tol ? Status::pass : Status::fail, measured, expected, tol};
}

void hyp_suite(std::vector<CheckRecord>& out, Rng& rng) {
  out.push_back(near("hyp.disc_density_origin", density(ModelSurface::disc(), 0.0), 2.0, 0.0));

  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const HolMap f = random_self_map(rng);
    worst = std::max(worst, distortion(f, ModelSurface::disc(), random_in_disc(rng, 0.99)));
  }
  out.push_back(at_most("hyp.schwarz_pick_distortion", worst, 1.0 + 1e-12));

  double dev = 0.0;
  for (int i = 0; i < 500; ++i)
    dev = std::max(dev, std::abs(distortion(random_automorphism(rng), ModelSurface::disc(), random_in_disc(rng, 0.99)) - 1.0));
  out.push_back(near("hyp.automorphism_isometry", dev, 0.0, 1e-12));

  double viol = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Complex a = random_in_disc(rng, 0.95), b = random_in_disc(rng, 0.95), c = random_in_disc(rng, 0.95);
    viol = std::max(viol, hyp_distance(a, c) - hyp_distance(a, b) - hyp_distance(b, c));
  }
  out.push_back(at_most("hyp.distance_triangle", viol, 1e-12));
}

void bloch_suite(std::vector<CheckRecord>& out, Rng& rng) {
  double fix = 0.0;
  for (int m = 1; m <= 20; ++m) fix = std::max({fix, std::abs(tau(m, 0.0)), std::abs(tau(m, 1.0) - 1.0)});
  out.push_back(near("bloch.tau_fixed_points", fix, 0.0, 1e-12));

  int violations = 0;
  for (int m = 1; m <= 10; ++m) {
    double prev = 0.0;
    for (int k = 1; k <= 1000; ++k) {
      const double b = bloch_lower_bound(m, k * 1e-3);
      if (b < prev) ++violations;
      prev = b;
    }
  }
  out.push_back(near("bloch.bound_monotone_violations", violations, 0.0, 0.0));

  int mismatch = 0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const int m = std::uniform_int_distribution<int>(1, 10)(rng);
    const double a = 0.1 + 4.9 * unit(rng);
    const double alpha = (1.0 - unit(rng)) / a;
    if (foliated_bloch_bound({m, alpha, a}) != bloch_lower_bound(m, std::min(1.0, a * alpha))) ++mismatch;
  }
  out.push_back(near("bloch.foliated_reduction_mismatches", mismatch, 0.0, 0.0));

  int unsatisfied = 0;
  for (int i = 0; i < 30; ++i) {
    const int m = std::uniform_int_distribution<int>(1, 3)(rng);
    const auto rep = bloch_inequality_check(random_om_map(rng, m), m);
    if (rep.skipped || !rep.satisfied) ++unsatisfied;
  }
  out.push_back(near("bloch.inequality_corpus_failures", unsatisfied, 0.0, 0.0));
}

void curvature_suite(std::vector<CheckRecord>& out, Rng& rng) {
  const PolyVectorField x2 = PolyVectorField::linear_diagonal({1.0, Complex(2.0, 0.5)}, 0.5);
  double agree = 0.0, bound = -kInf;
  for (int i = 0; i < 40; ++i) {
    CVec z = random_in_ball(rng, 2, 0.45);
    if (norm2(z) < 1e-4) z[0] += 0.05;
    const double k = curvature_example1(x2, z);
    const double fd = pullback_curvature_fd(Example1{}, x2, z);
    agree = std::max(agree, std::abs(k - fd) / std::max(1e-3, 1e-2 * std::abs(k)));
    bound = std::max(bound, k - (norm2(z) - 1.0));
  }
  out.push_back(at_most("curvature.example1_fd_agreement", agree, 1.0));
  out.push_back(at_most("curvature.example1_bound", bound, 1e-12));

  const PolyVectorField x2b = PolyVectorField::linear_diagonal({1.0, Complex(1.5, 0.3)}, 0.55);
  double margin = kInf;
  for (const auto& u : {psh_zero(), psh_norm_sq(), psh_smooth_max()}) {
    std::vector<CVec> samples;
    for (int i = 0; i < 15; ++i) samples.push_back(random_on_sphere(rng, 2, 0.05 + 0.45 * std::uniform_real_distribution<double>()(rng)));
    for (const auto& r : example2_curvature_check(x2b, u, samples).rows) margin = std::min(margin, -0.5 * r.k_fd - r.rhs);
  }
  out.push_back({"curvature.example2_lower_bound_margin", margin >= -1e-3 ? Status::pass : Status::fail, margin, 0.0,
                 1e-3});

  const Example3 one{{1}, {MultiPoly::constant(1, 1.0)}};
  const PolyVectorField x1 = example3_field(one, 0.9);
  double dev = 0.0;
  for (double r : {0.1, 0.3, 0.6}) dev = std::max(dev, std::abs(pullback_curvature_fd(one, x1, {Complex(r, 0.1)}) + 1.0));
  out.push_back(near("curvature.example3_punctured_disc", dev, 0.0, 1e-3));
}

void converge_suite(std::vector<CheckRecord>& out, Rng&) {
  const GridDomain disc = GridDomain::disc(0.0, 1.0, 257);
  const DensityField field = solve_poincare(disc);
  double err = 0.0;
  for (int r = 0; r < disc.rows(); ++r)
    for (int c = 0; c < disc.cols(); ++c) {
      const Complex z = disc.center(r, c);
      if (disc.inside(r, c) && std::abs(z) <= 0.9)
        err = std::max(err, std::abs(field.at_cell(r, c) / density(ModelSurface::disc(), z) - 1.0));
    }
  out.push_back(at_most("converge.poincare_disc_257", err, 0.02));

  const ModelFoliation prod{ProductFoliation{}, AmbientMetric::euclidean};
  std::vector<FoliatedDomain> seq;
  for (int n = 2; n <= 32; ++n) seq.push_back(Polydisc{n / (n + 1.0), 1.0});
  std::vector<CVec> k;
  for (int i = 0; i <= 8; ++i) k.push_back({std::polar(0.5 * i / 8.0, 0.7 * i), 0.3});
  ConvergenceOptions opts;
  opts.first_n = 2;
  const auto rep = eta_convergence(prod, Polydisc{1.0, 1.0}, seq, k, opts);
  double ratio = 0.0;
  int nonmonotone = 0;
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    ratio = std::max(ratio, rep.rows[i].sup_err / rep.rows[i].rho);
    if (i > 0 && rep.rows[i].sup_err >= rep.rows[i - 1].sup_err) ++nonmonotone;
  }
  out.push_back(near("converge.product_dilation_nonmonotone", nonmonotone, 0.0, 0.0));
  out.push_back(at_most("converge.product_dilation_ratio", ratio, 3.0));
}

// ------------------------------------------------------------ subcommands

[[noreturn]] void fail_config(const std::string& msg) { throw ConfigError(msg); }

int parse_order(const std::string& s) {
  if (s == "inf") return kOrderInf;
  try {
    std::size_t pos = 0;
    const int m = std::stoi(s, &pos);
    if (pos != s.size()) fail_config("--m: expected an integer or 'inf'");
    return m;
  } catch (const std::logic_error&) {
    fail_config("--m: expected an integer or 'inf'");
  }
}

std::vector<CVec> curvature_samples(Rng& rng, int dim, double radius, int count) {
  std::vector<CVec> out;
  while (static_cast<int>(out.size()) < count) {
    CVec z = random_in_ball(rng, dim, 0.9 * radius);
    if (std::sqrt(norm2(z)) >= 0.05 * radius) out.push_back(std::move(z));
  }
  return out;
}

Example3 example3_from_json(const Json& j, double& radius) {
  io::check_keys(j, {"k", "f", "radius"}, {"k", "f"}, "example 3");
  if (!j["k"].is_array() || !j["f"].is_array() || j["k"].size() != j["f"].size())
    fail_config("example 3: k and f must be arrays of equal length");
  Example3 spec;
  const int n = static_cast<int>(j["k"].size());
  for (const auto& k : j["k"]) {
    if (!k.is_number_integer()) fail_config("example 3: k entries must be integers");
    spec.k.push_back(k.get<int>());
  }
  for (const auto& f : j["f"]) spec.f.push_back(io::multipoly_from_json(f, n));
  radius = j.contains("radius") ? io::to_number(j["radius"], "example 3.radius") : 0.5;
  return spec;
}

PshFunction psh_by_name(const std::string& name) {
  if (name == "zero") return psh_zero();
  if (name == "norm_sq") return psh_norm_sq();
  if (name == "smooth_max") return psh_smooth_max();
  fail_config("--u: expected zero, norm_sq or smooth_max");
}

std::vector<FoliatedDomain> build_sequence(const FoliatedDomain& u, const Json& j, int& first) {
  io::check_keys(j, {"kind", "n", "first"}, {"kind", "n"}, "sequence");
  const std::string kind = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
  if (!j["n"].is_number_integer()) fail_config("sequence.n: expected an integer");
  const int n = j["n"].get<int>();
  first = j.contains("first") && j["first"].is_number_integer() ? j["first"].get<int>() : 1;
  if (n < 1 || first < 1 || first > n) fail_config("sequence: need 1 <= first <= n");
  if (kind != "dilate" && kind != "boundary_wobble") fail_config("sequence.kind: expected dilate or boundary_wobble");
  std::vector<FoliatedDomain> seq;
  if (const auto* g = std::get_if<GridProduct>(&u)) {
    const auto leaves = perturb_sequence(g->leaf, kind == "dilate" ? PerturbKind::dilate : PerturbKind::boundary_wobble, n);
    for (int k = first; k <= n; ++k) seq.push_back(GridProduct{leaves[k - 1], g->transverse_radius});
    return seq;
  }
  if (kind != "dilate") fail_config("sequence: boundary_wobble needs a grid_product domain");
  for (int k = first; k <= n; ++k) {
    const double s = k / (k + 1.0);
    if (const auto* p = std::get_if<Polydisc>(&u)) seq.push_back(Polydisc{s * p->leaf_radius, p->transverse_radius});
    else seq.push_back(Ball{s * std::get<Ball>(u).radius});
  }
  return seq;
}

SolverOptions solver_from_json(const Json& j) {
  io::check_keys(j, {"tol", "max_iter"}, {}, "solver");
  SolverOptions s;
  if (j.contains("tol")) s.tol = io::to_number(j["tol"], "solver.tol");
  if (j.contains("max_iter")) s.max_iter = j["max_iter"].get<int>();
  return s;
}

}  // namespace

SuiteResult run_suite(const std::string& suite, std::uint64_t seed) {
  static const std::map<std::string, std::function<void(std::vector<CheckRecord>&, Rng&)>> suites = {
      {"hyp", hyp_suite}, {"bloch", bloch_suite}, {"curvature", curvature_suite}, {"converge", converge_suite}};
  if (suite != "all" && !suites.count(suite)) throw ConfigError("unknown suite '" + suite + "'");
  SuiteResult res;
  for (const auto& [name, fn] : suites) {
    if (suite != "all" && suite != name) continue;
    // each suite draws from its own stream so suites are reproducible in isolation
    std::uint64_t tag = 1469598103934665603ull;  // FNV-1a of the suite name
    for (unsigned char ch : name) tag = (tag ^ ch) * 1099511628211ull;
    Rng rng(seed ^ tag);
    try {
      fn(res.checks, rng);
    } catch (const Error& e) {
      res.checks.push_back({name + ".error", Status::fail, 0.0, 0.0, 0.0});
    }
  }
  std::sort(res.checks.begin(), res.checks.end(),
            [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
  return res;
}

std::string render_suite(const SuiteResult& result, const std::string& suite, std::uint64_t seed) {
  std::ostringstream out;
  out << io::csv_header() << "# suite=" << suite << "\n# seed=" << seed << "\n";
  out << "check,status,measured,expected,tolerance\n";
  for (const auto& c : result.checks) {
    const char* s = c.status == Status::pass ? "pass" : c.status == Status::fail ? "fail" : "skip";
    out << c.name << ',' << s << ',' << io::format_number(c.measured) << ',' << io::format_number(c.expected) << ','
        << io::format_number(c.tolerance) << '\n';
  }
  out << "# overall=" << (result.passed() ? "pass" : "fail") << '\n';
  return out.str();
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hyperbolic foliation numerics"};
  app.require_subcommand(1);
  std::function<int()> action;

  int m_int = 1;
  std::string m_str = "1";
  double alpha = 0.0, a = 1.0;

  auto* tau_cmd = app.add_subcommand("tau", "The function tau_m(alpha)");
  tau_cmd->add_option("--m", m_int)->required();
  tau_cmd->add_option("--alpha", alpha)->required();
  tau_cmd->callback([&] { action = [&] { out << io::format_number(tau(m_int, alpha)) << '\n'; return 0; }; });

  auto* bloch_cmd = app.add_subcommand("bloch", "Domain Bloch lower bound");
  bloch_cmd->add_option("--m", m_str, "integer or inf")->required();
  bloch_cmd->add_option("--alpha", alpha)->required();
  bloch_cmd->callback([&] {
    action = [&] { out << io::format_number(bloch_lower_bound(parse_order(m_str), alpha)) << '\n'; return 0; };
  });

  auto* fol_cmd = app.add_subcommand("foliated-bloch", "Foliated Bloch lower bound");
  fol_cmd->add_option("--m", m_str)->required();
  fol_cmd->add_option("--alpha", alpha)->required();
  fol_cmd->add_option("--a", a)->required();
  fol_cmd->callback([&] {
    action = [&] {
      out << io::format_number(foliated_bloch_bound({parse_order(m_str), alpha, a})) << '\n';
      return 0;
    };
  });

  std::string domain_file, out_file;
  SolverOptions solver;
  auto* poincare_cmd = app.add_subcommand("poincare", "Solve for the Poincare density of a grid domain");
  poincare_cmd->add_option("--domain", domain_file)->required();
  poincare_cmd->add_option("--tol", solver.tol);
  poincare_cmd->add_option("--max-iter", solver.max_iter);
  poincare_cmd->add_option("--out", out_file)->required();
  poincare_cmd->callback([&] {
    action = [&] {
      const GridDomain g = io::grid_from_json(io::read_json_file(domain_file));
      const DensityField field = solve_poincare(g, solver);
      io::write_text_file(out_file, io::density_csv(field));
      const auto& s = field.stats();
      out << "newton_steps=" << s.newton_steps << " gs_sweeps=" << s.gs_sweeps
          << " residual=" << io::format_number(s.residual) << '\n';
      return 0;
    };
  });

  std::string foliation_file, points_file;
  auto* eta_cmd = app.add_subcommand("eta", "Evaluate eta_U at points");
  eta_cmd->add_option("--foliation", foliation_file)->required();
  eta_cmd->add_option("--domain", domain_file)->required();
  eta_cmd->add_option("--points", points_file)->required();
  eta_cmd->add_option("--out", out_file)->required();
  eta_cmd->callback([&] {
    action = [&] {
      const ModelFoliation f = io::foliation_from_json(io::read_json_file(foliation_file));
      const FoliatedDomain u = io::foliated_domain_from_json(io::read_json_file(domain_file));
      const auto pts = io::points_from_json(io::read_json_file(points_file));
      const auto vals = eta_many(f, u, pts);
      std::ostringstream csv;
      csv << io::csv_header();
      for (int j = 0; j < f.dim(); ++j) csv << "re" << j << ",im" << j << ',';
      csv << "eta\n";
      for (std::size_t i = 0; i < pts.size(); ++i) {
        for (auto z : pts[i]) csv << io::format_number(z.real()) << ',' << io::format_number(z.imag()) << ',';
        csv << io::format_number(vals[i]) << '\n';
      }
      io::write_text_file(out_file, csv.str());
      return 0;
    };
  });

  std::string config_file;
  auto* conv_cmd = app.add_subcommand("converge", "eta convergence along a domain sequence");
  conv_cmd->add_option("--config", config_file)->required();
  conv_cmd->add_option("--out", out_file)->required();
  conv_cmd->callback([&] {
    action = [&] {
      const Json cfg = io::read_json_file(config_file);
      io::check_keys(cfg, {"foliation", "domain", "sequence", "samples", "rho_spacing", "e_tube", "solver"},
                     {"foliation", "domain", "sequence", "samples"}, "converge config");
      const ModelFoliation f = io::foliation_from_json(cfg["foliation"]);
      const FoliatedDomain u = io::foliated_domain_from_json(cfg["domain"]);
      ConvergenceOptions opts;
      const auto seq = build_sequence(u, cfg["sequence"], opts.first_n);
      const auto k = io::points_from_json(cfg["samples"]);
      if (cfg.contains("rho_spacing")) opts.rho_spacing = io::to_number(cfg["rho_spacing"], "rho_spacing");
      if (cfg.contains("e_tube")) opts.e_tube = io::to_number(cfg["e_tube"], "e_tube");
      if (cfg.contains("solver")) opts.solver = solver_from_json(cfg["solver"]);
      const ConvergenceReport rep = eta_convergence(f, u, seq, k, opts);
      io::write_text_file(out_file, io::convergence_report_json(rep).dump(2) + "\n");
      bool monotone = true;
      for (std::size_t i = 1; i < rep.rows.size(); ++i) monotone = monotone && rep.rows[i].sup_err <= rep.rows[i - 1].sup_err;
      out << "rows=" << rep.rows.size() << " monotone=" << (monotone ? "yes" : "no") << '\n';
      return monotone ? 0 : 1;
    };
  });

  int example = 1, samples = 200;
  std::uint64_t seed = 1;
  std::string field_file, u_name = "zero";
  auto* curv_cmd = app.add_subcommand("curvature", "Closed-form versus finite-difference leaf curvature");
  curv_cmd->add_option("--example", example)->required()->check(CLI::IsMember({1, 2, 3}));
  curv_cmd->add_option("--field", field_file)->required();
  curv_cmd->add_option("--u", u_name);
  curv_cmd->add_option("--samples", samples);
  curv_cmd->add_option("--seed", seed);
  curv_cmd->add_option("--out", out_file)->required();
  curv_cmd->callback([&] {
    action = [&] {
      const Json fj = io::read_json_file(field_file);
      Rng rng(seed);
      std::vector<io::CurvatureRow> rows;
      constexpr double h = 1e-3;
      bool ok = true;
      int ties = 0;
      if (example == 3) {
        double radius = 0.5;
        const Example3 spec = example3_from_json(fj, radius);
        const PolyVectorField x = example3_field(spec, radius);
        const auto rep = ultrahyperbolic_check(spec, x, -1.0, curvature_samples(rng, x.dim(), radius, samples), h);
        ties = rep.ties_skipped;
        for (const auto& r : rep.rows) rows.push_back({r.z, r.k_closed, r.k_fd, r.bound, r.pass});
        ok = rep.pass;
      } else {
        const PolyVectorField x = io::field_from_json(fj);
        const auto pts = curvature_samples(rng, x.dim(), x.radius(), samples);
        if (example == 1) {
          for (const auto& z : pts) {
            const double k = curvature_example1(x, z);
            const double fd = pullback_curvature_fd(Example1{}, x, z, h);
            const bool pass = std::abs(k - fd) <= std::max(1e-3, 1e-2 * std::abs(k)) && k <= norm2(z) - 1.0 + 1e-12;
            rows.push_back({z, k, fd, norm2(z) - 1.0, pass});
            ok = ok && pass;
          }
        } else {
          const auto rep = example2_curvature_check(x, psh_by_name(u_name), pts, h);
          for (const auto& r : rep.rows) rows.push_back({r.z, r.k_closed, r.k_fd, -2.0 * r.rhs, r.pass});
          ok = rep.pass;
        }
      }
      io::write_text_file(out_file, io::curvature_csv(rows, h));
      out << "samples=" << rows.size() << " ties_skipped=" << ties << " pass=" << (ok ? "yes" : "no") << '\n';
      return ok ? 0 : 1;
    };
  });

  std::string suite = "all";
  auto* verify_cmd = app.add_subcommand("verify", "Run a property suite");
  verify_cmd->add_option("--suite", suite)->check(CLI::IsMember({"all", "hyp", "bloch", "curvature", "converge"}));
  verify_cmd->add_option("--seed", seed);
  verify_cmd->callback([&] {
    action = [&] {
      const SuiteResult res = run_suite(suite, seed);
      out << render_suite(res, suite, seed);
      return res.passed() ? 0 : 1;
    };
  });

  std::string map_file;
  SamplingSpec sampling;
  double radius = 0.0;
  auto* check_cmd = app.add_subcommand("bloch-check", "Check t(f) against the Bloch lower bound for a map");
  check_cmd->add_option("--map", map_file)->required();
  check_cmd->add_option("--m", m_str)->required();
  check_cmd->add_option("--samples", sampling.count);
  check_cmd->add_option("--seed", sampling.seed);
  check_cmd->add_option("--radius", radius, "restrict the supremum to |z| < radius");
  check_cmd->callback([&] {
    action = [&] {
      if (radius > 0.0) sampling.radius = radius;
      const HolMap f = io::holmap_from_json(io::read_json_file(map_file));
      const BlochReport rep = bloch_inequality_check(f, parse_order(m_str), sampling);
      out << io::bloch_report_json(rep).dump(2) << '\n';
      return rep.satisfied ? 0 : 1;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }
  try {
    return action();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const NonConvergence& e) {
    err << "non-convergence: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace hypfol::cli
