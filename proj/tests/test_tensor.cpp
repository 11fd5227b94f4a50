#include <catch2/catch_amalgamated.hpp>
#include <numbers>
#include <random>
#include <sepfaces/gallery.hpp>
#include <sepfaces/tensor.hpp>

using namespace sepfaces;

namespace {

Mat random_hermitian(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat a(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a(i, j) = cplx(g(rng), g(rng));
  }
  return (a + a.adjoint()) / 2.0;
}

}  // namespace

TEST_CASE("tensor product layout and bilinearity") {
  Vec x(3), y(3);
  x << cplx(1), cplx(0, 1), cplx(2);
  y << cplx(0), cplx(1), cplx(-1);
  const Vec z = tensor(x, y);
  REQUIRE(z.size() == 9);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      REQUIRE(std::abs(z(i * 3 + j) - x(i) * y(j)) < 1e-15);
    }
  }
  Vec x2(3);
  x2 << cplx(1, 1), cplx(0), cplx(-3);
  const cplx a(0.7, -0.2);
  const Vec lhs = tensor(Vec(a * x + x2), y);
  const Vec rhs = a * tensor(x, y) + tensor(x2, y);
  REQUIRE((lhs - rhs).norm() < 1e-12);
}

TEST_CASE("partial transpose swaps blocks and is an involution") {
  std::mt19937_64 rng(11);
  const BipartiteOperator a(random_hermitian(rng, 9), 3, 3);
  const BipartiteOperator g = partial_transpose(a);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      REQUIRE((g.matrix.block(i * 3, j * 3, 3, 3) -
               a.matrix.block(j * 3, i * 3, 3, 3))
                  .norm() == 0.0);
    }
  }
  REQUIRE((partial_transpose(g).matrix - a.matrix).norm() == 0.0);
}

TEST_CASE("trace identity under simultaneous partial transpose") {
  std::mt19937_64 rng(12);
  for (int it = 0; it < 20; ++it) {
    const BipartiteOperator a(random_hermitian(rng, 9), 3, 3);
    const BipartiteOperator b(random_hermitian(rng, 9), 3, 3);
    const cplx t1 = (a.matrix * b.matrix).trace();
    const cplx t2 =
        (partial_transpose(a).matrix * partial_transpose(b).matrix).trace();
    REQUIRE(std::abs(t1 - t2) < 1e-10);
  }
}

TEST_CASE("partial conjugate") {
  Vec x(2), y(2);
  x << cplx(1.0 / std::sqrt(2)), cplx(0, 1.0 / std::sqrt(2));
  y << cplx(1), cplx(0);
  const ProductVector p(x, y);
  const ProductVector q = partial_conjugate(p);
  REQUIRE(std::abs(q.x(1) - cplx(0, -1.0 / std::sqrt(2))) < 1e-12);
  REQUIRE(q.matches(partial_conjugate(partial_conjugate(q)), 1e-12));
  // real families are fixed points
  for (const auto& r : gallery::six_products_b(2.0)) {
    REQUIRE(partial_conjugate(r).matches(r, 1e-12));
  }
}

TEST_CASE("hermitian rank on reference states") {
  REQUIRE(hermitian_rank(BipartiteOperator(Mat::Identity(9, 9), 3, 3)) == 9);
  REQUIRE(hermitian_rank(gallery::rho_b(2.0)) == 4);
  REQUIRE(hermitian_rank(gallery::rho_sep(2.0, std::numbers::pi / 6)) == 5);
  REQUIRE(hermitian_rank(BipartiteOperator(Mat::Zero(9, 9), 3, 3)) == 0);
  Mat bad = Mat::Zero(9, 9);
  bad(0, 1) = 1.0;  // not Hermitian
  REQUIRE_THROWS_AS(hermitian_rank(BipartiteOperator(bad, 3, 3)),
                    MalformedOperatorError);
}

TEST_CASE("kernel and range decompose the space") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 5; ++it) {
    Mat h = random_hermitian(rng, 9);
    if (it == 0) h = gallery::rho_b(2.0).matrix;
    const BipartiteOperator a(h, 3, 3);
    const auto ker = kernel_of(a);
    const auto rng_sub = range_of(a);
    REQUIRE(ker.dim() + rng_sub.dim() == 9);
    REQUIRE((ker.basis.adjoint() * rng_sub.basis).norm() < 1e-10);
  }
  const auto rb = gallery::rho_b(2.0);
  const auto ker = kernel_of(rb);
  REQUIRE(ker.dim() == 5);
  for (const auto& p : gallery::six_products_b(2.0)) {
    REQUIRE(ker.residual(p.composite()) < 1e-10);
  }
}

TEST_CASE("realify is a Frobenius isometry") {
  const RVec zid = realify(BipartiteOperator(Mat::Zero(9, 9), 3, 3));
  REQUIRE(zid.norm() == 0.0);
  const RVec id = realify(BipartiteOperator(Mat::Identity(9, 9), 3, 3));
  REQUIRE(id.head(9).isApprox(RVec::Ones(9)));
  REQUIRE(id.tail(id.size() - 9).norm() == 0.0);
  std::mt19937_64 rng(14);
  for (int it = 0; it < 20; ++it) {
    const BipartiteOperator a(random_hermitian(rng, 9), 3, 3);
    const BipartiteOperator b(random_hermitian(rng, 9), 3, 3);
    const double lhs = realify(a).dot(realify(b));
    const double rhs = (a.matrix * b.matrix).trace().real();
    REQUIRE(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("subspace utilities") {
  std::vector<Vec> gens;
  Vec v1 = Vec::Zero(9), v2 = Vec::Zero(9);
  v1(0) = 1;
  v2(0) = 2;  // dependent
  gens = {v1, v2};
  const Subspace d = Subspace::span(gens, 3, 3);
  REQUIRE(d.dim() == 1);
  REQUIRE(d.residual(v1) < 1e-12);
  const Mat comp = d.orthocomplement();
  REQUIRE(comp.cols() == 8);
  REQUIRE((comp.adjoint() * d.basis).norm() < 1e-12);
  REQUIRE((comp.adjoint() * comp - Mat::Identity(8, 8)).norm() < 1e-12);
}
