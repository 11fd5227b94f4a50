#include <catch2/catch_amalgamated.hpp>
#include <numbers>
#include <random>
#include <sepfaces/gallery.hpp>
#include <sepfaces/ppt.hpp>

using namespace sepfaces;

namespace {

constexpr double kTheta = std::numbers::pi / 6;

void require_density_matrix(const BipartiteOperator& rho) {
  REQUIRE(rho.hermiticity_defect() < 1e-12);
  Eigen::SelfAdjointEigenSolver<Mat> es(rho.matrix, Eigen::EigenvaluesOnly);
  REQUIRE(es.eigenvalues().minCoeff() > -1e-10);
  REQUIRE(std::abs(rho.matrix.trace().real() - 1.0) < 1e-10);
}

}  // namespace

TEST_CASE("parameter domains are enforced") {
  REQUIRE_THROWS_AS(gallery::rho_b(1.0), std::domain_error);
  REQUIRE_THROWS_AS(gallery::rho_b(-2.0), std::domain_error);
  REQUIRE_THROWS_AS(gallery::rho_theta(2.0, 0.0), std::domain_error);
  REQUIRE_THROWS_AS(gallery::rho_theta(2.0, 1.1), std::domain_error);
  REQUIRE_THROWS_AS(gallery::phi_s_params(1.0), std::domain_error);
  REQUIRE_THROWS_AS(gallery::choi_matrix_generalized(-1, 0, 0),
                    std::domain_error);
  REQUIRE_THROWS_AS(gallery::lambda_k_closed_form(2.0, 0), std::out_of_range);
  REQUIRE_THROWS_AS(gallery::lambda_k_closed_form(2.0, 11), std::out_of_range);
  REQUIRE_THROWS_AS(gallery::dimension_constants(1, 3), std::domain_error);
}

TEST_CASE("rho_b matches the normalized display") {
  const auto rb = gallery::rho_b(2.0);
  require_density_matrix(rb);
  const double norm = 1.0 / (3.0 * (1.0 + 2.0 + 0.5));
  REQUIRE(std::abs(rb.matrix(0, 0).real() - norm) < 1e-14);  // = 2/21
  REQUIRE(std::abs(rb.matrix(0, 0).real() - 2.0 / 21) < 1e-14);
  REQUIRE(std::abs(rb.matrix(1, 1).real() - 2.0 * norm) < 1e-14);
  REQUIRE(std::abs(rb.matrix(2, 2).real() - 0.5 * norm) < 1e-14);
  REQUIRE(std::abs(rb.matrix(0, 4).real() - norm) < 1e-14);
  REQUIRE(std::abs(rb.matrix(1, 3).real() - norm) < 1e-14);
  REQUIRE(state_type(rb) == std::pair<int, int>(4, 4));
}

TEST_CASE("six kernel products of rho_b") {
  for (double b : {2.0, 3.0}) {
    const auto rb = gallery::rho_b(b);
    const auto fam = gallery::six_products_b(b);
    REQUIRE(fam.size() == 6);
    for (const auto& p : fam) {
      REQUIRE((rb.matrix * p.composite()).norm() < 1e-10);
    }
  }
}

TEST_CASE("rho_theta display entries and kernel") {
  const double b = 2.0;
  const auto rt = gallery::rho_theta(b, kTheta);
  require_density_matrix(rt);
  const double trace_raw = 6 * std::cos(kTheta) + 3 * b + 3 / b;
  // normalized display entries
  REQUIRE(std::abs(rt.matrix(0, 0) - 2.0 * std::cos(kTheta) / trace_raw) <
          1e-14);
  REQUIRE(std::abs(rt.matrix(0, 4) + std::polar(1.0, kTheta) / trace_raw) <
          1e-14);
  REQUIRE(std::abs(rt.matrix(0, 8) + std::polar(1.0, -kTheta) / trace_raw) <
          1e-14);
  REQUIRE(std::abs(rt.matrix(1, 3) + std::polar(1.0, -kTheta) / trace_raw) <
          1e-14);
  // the (1,5) block-diagonal entry is invariant under partial transpose:
  // position (0,4) sits at block (0,1) entry (1,1), swapped with block (1,0)
  const auto gamma = partial_transpose(rt);
  REQUIRE(std::abs(gamma.matrix(0, 4) - rt.matrix(3, 1)) < 1e-15);
  REQUIRE(std::abs(gamma.matrix(0, 4) + std::polar(1.0, kTheta) / trace_raw) <
          1e-14);

  const auto w = gallery::kernel_w(b, kTheta);
  REQUIRE(w.size() == 4);
  for (const auto& wi : w) {
    REQUIRE((rt.matrix * wi).norm() < 1e-12);
  }
  const auto ker = kernel_of(rt);
  REQUIRE(ker.dim() == 4);
  REQUIRE((ker.projector() - Subspace::span(w, 3, 3).projector()).norm() <
          1e-8);
}

TEST_CASE("six range products of rho_theta and rho_sep") {
  const double b = 2.0;
  const auto rt = gallery::rho_theta(b, kTheta);
  const auto fam = gallery::six_products_theta(b, kTheta);
  const auto range = range_of(rt);
  for (const auto& p : fam) {
    REQUIRE(range.residual(p.composite()) < 1e-10);
  }
  // the partial conjugates span 6 dimensions: the asymmetric case
  std::vector<Vec> conj;
  for (const auto& p : fam) conj.push_back(tensor(p.x.conjugate(), p.y));
  REQUIRE(Subspace::span(conj, 3, 3).dim() == 6);

  const auto rs = gallery::rho_sep(b, kTheta);
  require_density_matrix(rs);
  REQUIRE(state_type(rs) == std::pair<int, int>(5, 6));
  // all six factors share the same norm, so rho_sep is exactly the uniform
  // mixture of the normalized pure states
  Mat acc = Mat::Zero(9, 9);
  for (const auto& p : fam) acc += pure_state(p).matrix;
  REQUIRE((rs.matrix - acc / acc.trace()).norm() < 1e-12);
  auto sol = separability_solve(rs, fam);
  REQUIRE(sol.feasible);
  REQUIRE(sol.unique);
  for (int i = 0; i < 6; ++i) {
    REQUIRE(std::abs(sol.coefficients(i) - 1.0 / 6) < 1e-10);
  }
}

TEST_CASE("witness matrix") {
  const double b = 2.0;
  const auto w = gallery::witness_W(b, kTheta);
  const auto ws = gallery::kernel_w(b, kTheta);
  Mat support = ws[0] * ws[0].adjoint();
  for (int i = 1; i < 4; ++i) support += ws[static_cast<size_t>(i)] *
                                         ws[static_cast<size_t>(i)].adjoint() / b;
  REQUIRE((w.matrix -
           partial_transpose(BipartiteOperator(support, 3, 3)).matrix)
              .norm() == 0.0);
  REQUIRE(std::abs(w.matrix(0, 4) - std::polar(1.0, kTheta)) < 1e-14);
  // the witness detects the (5,9) mixture: the pairing with PPT states of
  // the displayed support pattern is what the construction is for
  const auto rt = gallery::rho_theta(b, kTheta);
  const auto rs = gallery::rho_sep(b, kTheta);
  const BipartiteOperator mix((rt.matrix + rs.matrix) / 2.0, 3, 3);
  REQUIRE(state_type(mix) == std::pair<int, int>(5, 9));
  const auto kerm = kernel_of(mix);
  REQUIRE((kerm.projector() - Subspace::span(ws, 3, 3).projector()).norm() <
          1e-8);
  REQUIRE(find_product_vectors(kerm).vectors.empty());
}

TEST_CASE("delta9 family geometry") {
  const double b = 2.0;
  const auto fam = gallery::delta9_family(b);
  REQUIRE(fam.size() == 10);
  const std::vector<ProductVector> first6(fam.begin(), fam.begin() + 6);
  const Subspace span6 = Subspace::span_of_products(first6, 3, 3);
  REQUIRE(span6.dim() == 6);
  for (const auto& v : gallery::delta9_perp(b)) {
    REQUIRE((span6.basis.adjoint() * v).norm() < 1e-10);
  }
  REQUIRE(pure_states_independent(fam));
}

TEST_CASE("generalized Choi map parameters") {
  const auto pp = gallery::phi_s_params(0.5);
  REQUIRE(std::abs(pp.alpha - 1.0 / 3) < 1e-14);
  REQUIRE(std::abs(pp.beta - 1.0 / 3) < 1e-14);
  REQUIRE(std::abs(pp.gamma - 4.0 / 3) < 1e-14);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.01, 5.0);
  for (int it = 0; it < 20; ++it) {
    double s = u(rng);
    if (s == 1.0) continue;
    const auto q = gallery::phi_s_params(s);
    REQUIRE(std::abs(q.alpha + q.beta + q.gamma - 2.0) < 1e-12);
    REQUIRE(std::abs(q.beta * q.gamma - (1 - q.alpha) * (1 - q.alpha)) < 1e-12);
  }
  const auto c = gallery::choi_matrix_generalized(pp.alpha, pp.beta, pp.gamma);
  const double expect[9] = {pp.alpha, pp.gamma, pp.beta, pp.beta, pp.alpha,
                            pp.gamma, pp.gamma, pp.beta, pp.alpha};
  for (int i = 0; i < 9; ++i) {
    REQUIRE(std::abs(c.matrix(i, i).real() - expect[i]) < 1e-14);
  }
  REQUIRE(c.matrix(0, 4) == cplx(-1.0));
  REQUIRE(c.matrix(4, 8) == cplx(-1.0));
  REQUIRE(c.matrix(0, 8) == cplx(-1.0));
}

TEST_CASE("lambda closed forms") {
  REQUIRE(std::abs(gallery::lambda_k_closed_form(2.0, 1) - 5.0 / 63) < 1e-14);
  REQUIRE(std::abs(gallery::lambda_k_closed_form(2.0, 8) - 10.0 / 63) < 1e-14);
}

TEST_CASE("dimension constants") {
  REQUIRE(gallery::dimension_constants(3, 3) == std::pair<int, long long>(4, 6));
  REQUIRE(gallery::dimension_constants(3, 4) ==
          std::pair<int, long long>(6, 10));
  for (int n = 2; n <= 6; ++n) {
    REQUIRE(gallery::dimension_constants(2, n) ==
            std::pair<int, long long>(n - 1, n));
  }
}

TEST_CASE("qubit-qudit example family") {
  const auto fam = gallery::qubit_qudit_example();
  REQUIRE(fam.size() == 5);
  REQUIRE(fam[0].m() == 2);
  REQUIRE(fam[0].n() == 3);
  REQUIRE(is_general_position(fam).first);
}

TEST_CASE("random-parameter density matrices are states") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ub(0.1, 4.0);
  std::uniform_real_distribution<double> ut(-1.0, 1.0);
  for (int it = 0; it < 20; ++it) {
    double b = ub(rng);
    if (std::abs(b - 1.0) < 1e-3) b += 0.1;
    double th = ut(rng);
    if (std::abs(th) < 1e-3) th = 0.3;
    require_density_matrix(gallery::rho_b(b));
    require_density_matrix(gallery::rho_theta(b, th));
    require_density_matrix(gallery::rho_sep(b, th));
  }
}
