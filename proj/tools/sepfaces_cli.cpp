// Command-line front end: reproduces the library's showcase computations,
// runs the solvers on user-supplied JSON inputs, and emits machine-readable
// reports (JSON lines on stdout, optional table on stderr).

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sepfaces/sepfaces.hpp>

namespace {

using sepfaces::json;

struct Claim {
  std::string name;
  json expected;
  json computed;
  double tolerance = 0.0;
  bool pass = false;
};

struct Report {
  std::string command;
  json params = json::object();
  std::vector<Claim> claims;
  json data = json::object();
  uint64_t seed = 0;

  void add_numeric(const std::string& name, double expected, double computed,
                   double tolerance) {
    claims.push_back({name, expected, computed, tolerance,
                      std::abs(expected - computed) <= tolerance});
  }
  void add_bool(const std::string& name, bool expected, bool computed) {
    claims.push_back({name, expected, computed, 0.0, expected == computed});
  }
  void add_exact(const std::string& name, json expected, json computed) {
    const bool ok = expected == computed;
    claims.push_back({name, std::move(expected), std::move(computed), 0.0, ok});
  }
  bool all_pass() const {
    for (const auto& c : claims) {
      if (!c.pass) return false;
    }
    return true;
  }
};

json to_json(const Report& r, long long elapsed_ms) {
  json claims = json::array();
  for (const auto& c : r.claims) {
    claims.push_back(json{{"name", c.name},
                          {"expected", c.expected},
                          {"computed", c.computed},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
  }
  json out{{"command", r.command}, {"params", r.params},
           {"claims", std::move(claims)}, {"elapsed_ms", elapsed_ms},
           {"seed", r.seed}};
  if (!r.data.empty()) out["data"] = r.data;
  return out;
}

void print_pretty(const Report& r, std::ostream& os) {
  os << "command: " << r.command << "  params: " << r.params.dump() << "\n";
  os << "  " << std::string(76, '-') << "\n";
  for (const auto& c : r.claims) {
    os << "  " << (c.pass ? "PASS" : "FAIL") << "  " << c.name
       << "  expected=" << c.expected.dump() << "  computed=" << c.computed.dump()
       << "\n";
  }
}

sepfaces::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return sepfaces::json::parse(in);
}

std::vector<sepfaces::ProductVector> family_from_json(const json& j) {
  const json& arr = j.contains("family") ? j.at("family") : j;
  std::vector<sepfaces::ProductVector> family;
  for (const auto& e : arr) family.push_back(sepfaces::product_vector_from_json(e));
  return family;
}

// ---- section reproductions -------------------------------------------------

void reproduce_s3(Report& rep, double b, const sepfaces::LocatorConfig& cfg) {
  using namespace sepfaces;
  const auto rb = gallery::rho_b(b);
  const auto type = state_type(rb, cfg.tol);
  rep.add_exact("rho_b.rank_type", json::array({4, 4}),
                json::array({type.first, type.second}));
  rep.add_bool("rho_b.is_ppt", true, is_ppt(rb, cfg.tol));
  rep.add_exact("rho_b.edge", "edge",
                edge_verdict_string(is_edge_state(rb, cfg)));

  const auto fam = gallery::six_products_b(b);
  const auto ker = kernel_of(rb, cfg.tol);
  auto found = find_product_vectors(ker, cfg);
  rep.add_numeric("kernel.product_count", 6.0,
                  static_cast<double>(found.vectors.size()), 0.0);
  int matched = 0;
  for (const auto& p : found.vectors) {
    for (const auto& q : fam) {
      if (p.matches(q, 1e-6)) {
        ++matched;
        break;
      }
    }
  }
  rep.add_numeric("kernel.family_matches", 6.0, matched, 0.0);
  rep.add_numeric("kernel.max_residual", 0.0, found.max_residual(), 1e-8);

  std::vector<BipartiteOperator> pure;
  for (const auto& p : fam) pure.push_back(pure_state(p));
  Mat rho0m = Mat::Zero(9, 9);
  for (const auto& s : pure) rho0m += s.matrix;
  const BipartiteOperator rho0(rho0m / 6.0, 3, 3);
  std::vector<BipartiteOperator> sigma;
  for (int k = 0; k < 6; ++k) {
    Mat rk = Mat::Zero(9, 9);
    for (int i = 0; i < 6; ++i) {
      if (i != k) rk += pure[static_cast<size_t>(i)].matrix;
    }
    const BipartiteOperator rhok(rk / 5.0, 3, 3);
    const auto eps = max_epsilon_ppt(rhok, rho0, cfg.tol);
    rep.add_numeric("epsilon_star.k" + std::to_string(k + 1), 0.2,
                    eps.epsilon_star, 1e-7);
    const auto ex = extract_edge_state(rhok, rho0, cfg);
    rep.add_exact("sigma.k" + std::to_string(k + 1) + ".rank_type",
                  json::array({4, 4}),
                  json::array({ex.rank_type.first, ex.rank_type.second}));
    rep.add_exact("sigma.k" + std::to_string(k + 1) + ".edge", "edge",
                  edge_verdict_string(ex.edge));
    const double orth = (range_of(ex.boundary_state, cfg.tol).projector() *
                         range_of(rb, cfg.tol).projector())
                            .norm();
    rep.add_numeric("sigma.k" + std::to_string(k + 1) + ".range_orth", 0.0,
                    orth, 1e-8);
    sigma.push_back(ex.boundary_state);
  }
  for (double t : {1.0 / 6.0, 0.5, 5.0 / 6.0}) {
    const Mat st = t * sigma[0].matrix + (1 - t) * sigma[1].matrix;
    rep.add_bool("segment.t" + std::to_string(t) + ".separable", true,
                 separability_solve(BipartiteOperator(st, 3, 3), fam, cfg.tol)
                     .feasible);
  }
  for (double t : {0.05, 0.95}) {
    const Mat st = t * sigma[0].matrix + (1 - t) * sigma[1].matrix;
    rep.add_bool("segment.t" + std::to_string(t) + ".separable", false,
                 separability_solve(BipartiteOperator(st, 3, 3), fam, cfg.tol)
                     .feasible);
  }
}

void reproduce_s4(Report& rep, double b, double theta,
                  const sepfaces::LocatorConfig& cfg) {
  using namespace sepfaces;
  const auto rt = gallery::rho_theta(b, theta);
  const auto rs = gallery::rho_sep(b, theta);
  auto tt = state_type(rt, cfg.tol);
  rep.add_exact("rho_theta.rank_type", json::array({5, 5}),
                json::array({tt.first, tt.second}));
  rep.add_exact("rho_theta.edge", "edge",
                edge_verdict_string(is_edge_state(rt, cfg)));
  auto ts = state_type(rs, cfg.tol);
  rep.add_exact("rho_sep.rank_type", json::array({5, 6}),
                json::array({ts.first, ts.second}));
  const BipartiteOperator mix((rt.matrix + rs.matrix) / 2.0, 3, 3);
  auto tm = state_type(mix, cfg.tol);
  rep.add_exact("mix.rank_type", json::array({5, 9}),
                json::array({tm.first, tm.second}));

  const auto kerm = kernel_of(mix, cfg.tol);
  const auto spanw = Subspace::span(gallery::kernel_w(b, theta), 3, 3);
  rep.add_numeric("mix.kernel_matches_w", 0.0,
                  (kerm.projector() - spanw.projector()).norm(), 1e-8);
  rep.add_numeric("mix.kernel_product_count", 0.0,
                  static_cast<double>(find_product_vectors(kerm, cfg)
                                          .vectors.size()),
                  0.0);
  auto range_products = find_product_vectors(range_of(rt, cfg.tol), cfg);
  rep.add_numeric("rho_theta.range_product_count", 6.0,
                  static_cast<double>(range_products.vectors.size()), 0.0);
  const auto w = gallery::witness_W(b, theta);
  rep.add_numeric("witness.entry_0_4_matches", 0.0,
                  std::abs(w.matrix(0, 4) - std::polar(1.0, theta)), 1e-12);
  rep.add_numeric("witness.hermitian_defect", 0.0, w.hermiticity_defect(),
                  1e-12);
  auto sol = separability_solve(rs, gallery::six_products_theta(b, theta),
                                cfg.tol);
  rep.add_bool("rho_sep.decomposes_over_range_products", true, sol.feasible);
}

void reproduce_s5(Report& rep, double b, double s,
                  const sepfaces::LocatorConfig& cfg) {
  using namespace sepfaces;
  const auto fam = gallery::delta9_family(b);
  rep.add_bool("delta9.pure_states_independent", true,
               pure_states_independent(fam, cfg.tol.rank_rel_tol));
  rep.add_exact("delta9.condition_C", "fails",
                to_string(check_condition_C(fam, cfg).verdict));
  const auto pp = gallery::phi_s_params(s);
  rep.add_numeric("phi_s.sum_identity", 2.0, pp.alpha + pp.beta + pp.gamma,
                  1e-12);
  rep.add_numeric("phi_s.product_identity", 0.0,
                  pp.beta * pp.gamma - (1 - pp.alpha) * (1 - pp.alpha), 1e-12);
  const auto dual = gallery::phi_s_params(1.0 / b);
  const auto choi =
      gallery::choi_matrix_generalized(dual.alpha, dual.beta, dual.gamma);
  const auto choi_gamma = partial_transpose(choi);
  double mx = 0.0;
  for (const auto& p : fam) {
    const auto ps = pure_state(p);
    mx = std::max(mx, std::abs(dual_pairing(ps, choi)));
    mx = std::max(mx, std::abs(dual_pairing(ps, choi_gamma)));
  }
  rep.add_numeric("delta9.max_dual_pairing", 0.0, mx, 1e-9);

  std::vector<BipartiteOperator> pure;
  for (const auto& p : fam) pure.push_back(pure_state(p));
  Mat r0 = Mat::Zero(9, 9);
  for (const auto& p : pure) r0 += p.matrix;
  const BipartiteOperator rho0(r0 / 10.0, 3, 3);
  for (int k : {1, 4, 7, 10}) {
    Mat sk = Mat::Zero(9, 9);
    for (int i = 0; i < 10; ++i) {
      if (i != k - 1) sk += pure[static_cast<size_t>(i)].matrix;
    }
    const BipartiteOperator sigk(sk / 9.0, 3, 3);
    const auto eps = max_epsilon_ppt(sigk, rho0, cfg.tol);
    rep.add_numeric("lambda.k" + std::to_string(k),
                    gallery::lambda_k_closed_form(b, k), eps.epsilon_star,
                    1e-7);
    const auto ex = extract_edge_state(sigk, rho0, cfg);
    rep.add_exact("rho.k" + std::to_string(k) + ".rank_type",
                  json::array({8, 8}),
                  json::array({ex.rank_type.first, ex.rank_type.second}));
  }
}

void reproduce_s6(Report& rep, const sepfaces::LocatorConfig& cfg) {
  using namespace sepfaces;
  const auto fam = gallery::qubit_qudit_example();
  rep.add_bool("family.general_position", true,
               is_general_position(fam).first);
  rep.add_bool("family.nonreal_condition", true,
               check_2xn_condition(fam, cfg.tol));
  const auto cert = certify_simplicial_face(fam, cfg);
  rep.add_bool("certificate.condition_A", true, cert.condition_A);
  rep.add_exact("certificate.condition_C", "holds",
                to_string(cert.condition_C.verdict));
  rep.add_bool("certificate.induced", true, cert.induced);
  // Five extreme points give a 4-simplex.
  rep.add_exact("certificate.simplex_dim", 4,
                cert.simplex_dim ? json(*cert.simplex_dim) : json());
  rep.data["certificate"] = to_json(cert);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"separable-state face toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global flags after the subcommand name

  sepfaces::LocatorConfig cfg;
  bool pretty = false;
  std::string json_out;
  app.add_option("--tol-rank", cfg.tol.rank_rel_tol, "relative rank cutoff");
  app.add_option("--tol-residual", cfg.tol.residual_tol,
                 "membership residual tolerance");
  app.add_option("--seed", cfg.rng_seed, "random seed for multistart solvers");
  app.add_flag("--pretty", pretty, "print a claim table to stderr");
  app.add_option("--json-out", json_out, "also write the JSON report to FILE");

  // reproduce
  auto* rep_cmd = app.add_subcommand("reproduce", "rerun a showcase suite");
  std::string section;
  double b = 2.0;
  double theta = std::numbers::pi / 6.0;
  double s = 0.5;
  double theta_frac_pi = 0.0;
  rep_cmd->add_option("section", section, "one of s3, s4, s5, s6")->required();
  rep_cmd->add_option("--b", b, "parameter b (> 0, != 1)");
  rep_cmd->add_option("--theta", theta, "phase parameter in radians");
  rep_cmd->add_option("--theta-frac-pi", theta_frac_pi,
                      "set theta = pi / k for the given k");
  rep_cmd->add_option("--s", s, "map family parameter (> 0, != 1)");

  // find-products
  auto* find_cmd =
      app.add_subcommand("find-products", "enumerate product vectors");
  std::string find_input;
  find_cmd->add_option("input", find_input,
                       "JSON file: subspace, or operator (its kernel is used)")
      ->required();

  // certify
  auto* cert_cmd = app.add_subcommand("certify", "certify a product family");
  std::string cert_input;
  cert_cmd->add_option("input", cert_input, "JSON file with a product family")
      ->required();

  // extract-edge
  auto* edge_cmd =
      app.add_subcommand("extract-edge", "boundary extension sigma - eps*rho0");
  std::string sigma_file, rho0_file;
  edge_cmd->add_option("sigma", sigma_file, "JSON operator file")->required();
  edge_cmd->add_option("rho0", rho0_file, "JSON operator file")->required();

  // gupb-search
  auto* gupb_cmd = app.add_subcommand(
      "gupb-search", "sample random six-vector families, tabulate predicates");
  int count = 100;
  gupb_cmd->add_option("--count", count, "number of sampled families");

  CLI11_PARSE(app, argc, argv);

  Report rep;
  rep.seed = cfg.rng_seed;
  const auto t0 = std::chrono::steady_clock::now();
  int exit_code = 0;
  try {
    if (rep_cmd->parsed()) {
      if (theta_frac_pi != 0.0) theta = std::numbers::pi / theta_frac_pi;
      rep.command = "reproduce";
      rep.params = {{"section", section}, {"b", b}, {"theta", theta}, {"s", s}};
      if (section == "s3") {
        reproduce_s3(rep, b, cfg);
      } else if (section == "s4") {
        reproduce_s4(rep, b, theta, cfg);
      } else if (section == "s5") {
        reproduce_s5(rep, b, s, cfg);
      } else if (section == "s6") {
        reproduce_s6(rep, cfg);
      } else {
        throw CLI::ValidationError("section must be one of s3, s4, s5, s6");
      }
    } else if (find_cmd->parsed()) {
      rep.command = "find-products";
      rep.params = {{"input", find_input}};
      const auto j = load_json(find_input);
      sepfaces::Subspace d = j.contains("entries")
                                 ? sepfaces::kernel_of(
                                       sepfaces::operator_from_json(j), cfg.tol)
                                 : sepfaces::subspace_from_json(j);
      sepfaces::LocatorResult exhaustive;
      bool degenerate = false;
      try {
        exhaustive = sepfaces::find_product_vectors(d, cfg);
      } catch (const sepfaces::DegeneratePencilError&) {
        degenerate = true;
      }
      const auto oracle = sepfaces::brute_force_products(d, cfg);
      rep.data["degenerate"] = degenerate;
      rep.data["exhaustive"] = sepfaces::to_json(exhaustive);
      rep.data["oracle"] = sepfaces::to_json(oracle);
      if (!degenerate) {
        bool agree = true;
        for (const auto& p : oracle.vectors) {
          bool found = false;
          for (const auto& q : exhaustive.vectors) {
            if (p.matches(q, 1e-6)) {
              found = true;
              break;
            }
          }
          agree = agree && found;
        }
        rep.add_bool("solver_agreement", true, agree);
        rep.add_numeric("max_residual", 0.0, exhaustive.max_residual(),
                        cfg.tol.residual_tol);
      } else {
        rep.add_bool("degenerate_detected", true, true);
      }
    } else if (cert_cmd->parsed()) {
      rep.command = "certify";
      rep.params = {{"input", cert_input}};
      const auto family = family_from_json(load_json(cert_input));
      const auto cert = sepfaces::certify_simplicial_face(family, cfg);
      rep.data["certificate"] = sepfaces::to_json(cert);
      rep.add_bool("certified", true, true);
    } else if (edge_cmd->parsed()) {
      rep.command = "extract-edge";
      rep.params = {{"sigma", sigma_file}, {"rho0", rho0_file}};
      const auto sigma = sepfaces::operator_from_json(load_json(sigma_file));
      const auto rho0 = sepfaces::operator_from_json(load_json(rho0_file));
      const auto ex = sepfaces::extract_edge_state(sigma, rho0, cfg);
      rep.data["extraction"] = sepfaces::to_json(ex);
      rep.add_numeric("epsilon_star_is_min",
                      std::min(ex.eps_positive, ex.eps_ppt_side),
                      ex.epsilon_star, 1e-10);
      rep.add_bool("boundary_is_ppt", true,
                   sepfaces::is_ppt(ex.boundary_state, cfg.tol));
    } else if (gupb_cmd->parsed()) {
      rep.command = "gupb-search";
      rep.params = {{"count", count}};
      std::mt19937_64 rng(cfg.rng_seed);
      std::normal_distribution<double> gauss(0.0, 1.0);
      int both = 0, gupb_only = 0, gp_only = 0, neither = 0;
      for (int it = 0; it < count; ++it) {
        std::vector<sepfaces::ProductVector> family;
        for (int i = 0; i < 6; ++i) {
          sepfaces::Vec x(3), y(3);
          for (int a = 0; a < 3; ++a) {
            x(a) = sepfaces::cplx(gauss(rng), gauss(rng));
            y(a) = sepfaces::cplx(gauss(rng), gauss(rng));
          }
          family.emplace_back(std::move(x), std::move(y));
        }
        const bool g = sepfaces::is_gupb(family).first;
        const bool p = sepfaces::is_general_position(family).first;
        if (g && p) {
          ++both;
        } else if (g) {
          ++gupb_only;
        } else if (p) {
          ++gp_only;
        } else {
          ++neither;
        }
      }
      rep.data["counts"] = {{"gupb_and_general_position", both},
                            {"gupb_only", gupb_only},
                            {"general_position_only", gp_only},
                            {"neither", neither}};
      rep.add_bool("completed", true, true);
    }
    exit_code = rep.all_pass() ? 0 : 1;
  } catch (const std::exception& e) {
    rep.data["error"] = e.what();
    rep.claims.push_back({"no_error", true, false, 0.0, false});
    exit_code = 2;
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
  const json out = to_json(rep, elapsed);
  std::cout << out.dump() << "\n";
  if (pretty) print_pretty(rep, std::cerr);
  if (!json_out.empty()) {
    std::ofstream f(json_out);
    f << out.dump(2) << "\n";
  }
  return exit_code;
}
