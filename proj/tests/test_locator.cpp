#include <catch2/catch_amalgamated.hpp>
#include <numbers>
#include <random>
#include <sepfaces/gallery.hpp>
#include <sepfaces/locator.hpp>
#include <sepfaces/tensor.hpp>

using namespace sepfaces;

namespace {

Vec unit(std::initializer_list<cplx> entries) {
  Vec v(static_cast<Eigen::Index>(entries.size()));
  int i = 0;
  for (cplx e : entries) v(i++) = e;
  return v.normalized();
}

Subspace singleton(const ProductVector& p) {
  return Subspace::span({p.composite()}, p.m(), p.n());
}

bool contains_match(const std::vector<ProductVector>& list,
                    const ProductVector& p, double tol = 1e-6) {
  for (const auto& q : list) {
    if (p.matches(q, tol)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("constraint matrix rows") {
  Vec w = Vec::Zero(9);
  w(0) = 1.0;  // e1 (x) f1
  Vec x1(3), x2(3);
  x1 << cplx(1), cplx(0), cplx(0);
  x2 << cplx(0), cplx(1), cplx(0);
  const Mat m1 = constraint_matrix({w}, x1, 3);
  REQUIRE(std::abs(m1(0, 0) - cplx(1)) < 1e-15);
  REQUIRE(std::abs(m1(0, 1)) + std::abs(m1(0, 2)) < 1e-15);
  const Mat m2 = constraint_matrix({w}, x2, 3);
  REQUIRE(m2.norm() < 1e-15);

  // a null direction of M(x) gives a member of the subspace
  const auto fam = gallery::six_products_b(2.0);
  const Subspace d = Subspace::span_of_products(fam, 3, 3);
  const Mat perp = d.orthocomplement();
  std::vector<Vec> ortho;
  for (int i = 0; i < perp.cols(); ++i) ortho.push_back(perp.col(i));
  const Mat m = constraint_matrix(ortho, fam[0].x, 3);
  REQUIRE((m * fam[0].y).norm() < 1e-10);
}

TEST_CASE("membership") {
  Vec e1 = Vec::Zero(3), e2 = Vec::Zero(3), f1 = Vec::Zero(3), f2 = Vec::Zero(3);
  e1(0) = 1;
  e2(1) = 1;
  f1(0) = 1;
  f2(1) = 1;
  const ProductVector p11(e1, f1), p12(e1, f2);
  const Subspace d = singleton(p11);
  REQUIRE(membership(p11, d));
  REQUIRE(!membership(p12, d));
  const auto rt = gallery::rho_theta(2.0, std::numbers::pi / 6);
  const auto w = gallery::kernel_w(2.0, std::numbers::pi / 6);
  REQUIRE(kernel_of(rt).residual(w[1].normalized()) < 1e-10);
}

TEST_CASE("exhaustive locator on the reference kernels") {
  const auto rb = gallery::rho_b(2.0);
  const auto fam = gallery::six_products_b(2.0);
  auto res = find_product_vectors(kernel_of(rb));
  REQUIRE(res.vectors.size() == 6);
  REQUIRE(res.complete);
  REQUIRE(res.max_residual() < 1e-8);
  for (const auto& q : fam) REQUIRE(contains_match(res.vectors, q));

  const auto rt = gallery::rho_theta(2.0, std::numbers::pi / 6);
  auto empty = find_product_vectors(kernel_of(rt));
  REQUIRE(empty.vectors.empty());
  REQUIRE(empty.complete);

  auto range6 = find_product_vectors(range_of(rt));
  REQUIRE(range6.vectors.size() == 6);
  const auto famt = gallery::six_products_theta(2.0, std::numbers::pi / 6);
  for (const auto& q : famt) REQUIRE(contains_match(range6.vectors, q));
}

TEST_CASE("degenerate pencils are detected") {
  const auto d9 = gallery::delta9_family(2.0);
  const std::vector<ProductVector> first6(d9.begin(), d9.begin() + 6);
  REQUIRE_THROWS_AS(
      find_product_vectors(Subspace::span_of_products(first6, 3, 3)),
      DegeneratePencilError);
  // any subspace of dimension >= 6 carries a positive-dimensional family
  REQUIRE_THROWS_AS(
      find_product_vectors(Subspace(Mat::Identity(9, 9).leftCols(7), 3, 3)),
      DegeneratePencilError);
}

TEST_CASE("axis-aligned small spans") {
  Vec e1 = Vec::Zero(3), e2 = Vec::Zero(3);
  e1(0) = 1;
  e2(1) = 1;
  const ProductVector p11(e1, e1), p22(e2, e2);
  auto one = find_product_vectors(singleton(p11));
  REQUIRE(one.vectors.size() == 1);
  REQUIRE(contains_match(one.vectors, p11));

  const Subspace pair =
      Subspace::span({p11.composite(), p22.composite()}, 3, 3);
  auto two = find_product_vectors(pair);
  REQUIRE(two.vectors.size() == 2);
  REQUIRE(contains_match(two.vectors, p11));
  REQUIRE(contains_match(two.vectors, p22));
  auto two_oracle = brute_force_products(pair);
  REQUIRE(two_oracle.vectors.size() == 2);
}

TEST_CASE("oracle agrees with the exhaustive solver on the kernel family") {
  LocatorConfig cfg;
  cfg.multistart_count = 500;
  cfg.rng_seed = 7;
  const Subspace ker = kernel_of(gallery::rho_b(2.0));
  auto oracle = brute_force_products(ker, cfg);
  auto exact = find_product_vectors(ker, cfg);
  REQUIRE(oracle.vectors.size() == 6);
  REQUIRE(!oracle.complete);
  for (const auto& p : oracle.vectors) {
    REQUIRE(contains_match(exact.vectors, p));
  }
  // every product vector belongs to the full space
  auto full = brute_force_products(Subspace(Mat::Identity(9, 9), 3, 3));
  REQUIRE(!full.vectors.empty());
  REQUIRE(full.residuals[0] < 1e-10);
}

TEST_CASE("determinism of the locator output") {
  const Subspace ker = kernel_of(gallery::rho_b(2.0));
  auto a = find_product_vectors(ker);
  auto b = find_product_vectors(ker);
  REQUIRE(a.vectors.size() == b.vectors.size());
  for (size_t i = 0; i < a.vectors.size(); ++i) {
    REQUIRE(a.vectors[i].distance(b.vectors[i]) == 0.0);
  }
}

TEST_CASE("random product spans recover their generators") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<ProductVector> gens;
    std::vector<Vec> z;
    for (int i = 0; i < 6; ++i) {
      Vec x(3), y(3);
      for (int a = 0; a < 3; ++a) {
        x(a) = cplx(g(rng), g(rng));
        y(a) = cplx(g(rng), g(rng));
      }
      gens.emplace_back(x, y);
      z.push_back(gens.back().composite());
    }
    const Subspace d = Subspace::span(z, 3, 3);
    if (d.dim() != 5) continue;  // degenerate draw
    auto res = find_product_vectors(d);
    REQUIRE(res.vectors.size() >= 6);
    for (const auto& q : gens) REQUIRE(contains_match(res.vectors, q));
  }
}

TEST_CASE("dimension preconditions") {
  REQUIRE_THROWS_AS(find_product_vectors(Subspace(Mat::Identity(6, 6), 2, 3)),
                    std::invalid_argument);
  Vec x = unit({cplx(1), cplx(2)});
  (void)x;
}
