#ifndef SEPFACES_GALLERY_HPP
#define SEPFACES_GALLERY_HPP

#include <cmath>
#include <numbers>

#include "sepfaces/tensor.hpp"
#include "sepfaces/types.hpp"

namespace sepfaces {

struct GalleryParams {
  double b = 2.0;
  double theta = std::numbers::pi / 6.0;
  double s = 0.5;
};

namespace gallery {

inline void require_b(double b) {
  if (!(b > 0.0) || b == 1.0) {
    throw std::domain_error("parameter b must be positive and != 1");
  }
}

inline void require_theta(double theta) {
  const double lim = std::numbers::pi / 3.0;
  if (!(theta > -lim && theta < lim) || theta == 0.0) {
    throw std::domain_error("parameter theta must lie in (-pi/3, pi/3) \\ {0}");
  }
}

inline void require_s(double s) {
  if (!(s > 0.0) || s == 1.0) {
    throw std::domain_error("parameter s must be positive and != 1");
  }
}

inline void validate(const GalleryParams& p) {
  require_b(p.b);
  require_theta(p.theta);
  require_s(p.s);
}

/// Rank-(4,4) PPT entangled edge state; b = 2 recovers Choi's original
/// 3 (x) 3 example. Trace-normalized.
inline BipartiteOperator rho_b(double b) {
  require_b(b);
  Mat m = Mat::Zero(9, 9);
  const double diag[9] = {1, b, 1 / b, 1 / b, 1, b, b, 1 / b, 1};
  for (int i = 0; i < 9; ++i) m(i, i) = diag[i];
  const int pairs[6][2] = {{0, 4}, {0, 8}, {4, 8}, {1, 3}, {2, 6}, {5, 7}};
  for (const auto& p : pairs) {
    m(p[0], p[1]) = 1.0;
    m(p[1], p[0]) = 1.0;
  }
  return BipartiteOperator(m / (3.0 * (1.0 + b + 1.0 / b)), 3, 3);
}

/// The six product vectors spanning ker(rho_b); all entries real.
inline std::vector<ProductVector> six_products_b(double b) {
  require_b(b);
  const double r = std::sqrt(b);
  auto mk = [](std::initializer_list<double> xs,
               std::initializer_list<double> ys) {
    Vec x(3), y(3);
    int i = 0;
    for (double v : xs) x(i++) = v;
    i = 0;
    for (double v : ys) y(i++) = v;
    return ProductVector(std::move(x), std::move(y));
  };
  return {mk({1, r, 0}, {1, -1 / r, 0}), mk({1, -r, 0}, {1, 1 / r, 0}),
          mk({0, 1, r}, {0, 1, -1 / r}), mk({0, 1, -r}, {0, 1, 1 / r}),
          mk({r, 0, 1}, {-1 / r, 0, 1}), mk({-r, 0, 1}, {1 / r, 0, 1})};
}

/// Type-(5,5) PPT entangled edge state with phase parameter theta.
/// Trace-normalized (raw trace is 6 cos(theta) + 3b + 3/b).
inline BipartiteOperator rho_theta(double b, double theta) {
  require_b(b);
  require_theta(theta);
  const cplx e = std::polar(1.0, theta);
  const cplx eb = std::conj(e);
  Mat m = Mat::Zero(9, 9);
  const cplx c = e + eb;  // 2 cos(theta)
  const cplx diag[9] = {c, 1 / b, b, b, c, 1 / b, 1 / b, b, c};
  for (int i = 0; i < 9; ++i) m(i, i) = diag[i];
  m(0, 4) = -e;
  m(0, 8) = -eb;
  m(4, 8) = -e;
  m(1, 3) = -eb;
  m(2, 6) = -e;
  m(5, 7) = -eb;
  m += Mat(m.triangularView<Eigen::StrictlyUpper>()).adjoint();
  return BipartiteOperator(m / m.trace(), 3, 3);
}

/// The four (unnormalized) vectors spanning ker(rho_theta).
inline std::vector<Vec> kernel_w(double b, double theta) {
  require_b(b);
  require_theta(theta);
  const cplx e = std::polar(1.0, theta);
  Vec w1 = Vec::Zero(9), w2 = Vec::Zero(9), w3 = Vec::Zero(9), w4 = Vec::Zero(9);
  w1(0) = 1;
  w1(4) = 1;
  w1(8) = 1;
  w2(1) = b;
  w2(3) = e;
  w3(5) = b;
  w3(7) = e;
  w4(2) = e;
  w4(6) = b;
  return {w1, w2, w3, w4};
}

/// The six product vectors in range(rho_theta), written with the local
/// abbreviation omega = sqrt(b) e^{i theta/2}.
inline std::vector<ProductVector> six_products_theta(double b, double theta) {
  require_b(b);
  require_theta(theta);
  const cplx om = std::sqrt(b) * std::polar(1.0, theta / 2.0);
  auto mk = [](std::initializer_list<cplx> xs, std::initializer_list<cplx> ys) {
    Vec x(3), y(3);
    int i = 0;
    for (cplx v : xs) x(i++) = v;
    i = 0;
    for (cplx v : ys) y(i++) = v;
    return ProductVector(std::move(x), std::move(y));
  };
  return {mk({1, om, 0}, {om, -1, 0}),  mk({-1, om, 0}, {om, 1, 0}),
          mk({0, 1, om}, {0, om, -1}),  mk({0, -1, om}, {0, om, 1}),
          mk({om, 0, 1}, {-1, 0, om}),  mk({om, 0, -1}, {1, 0, om})};
}

/// Separable state (1/2b) sum |z_i><z_i| over the unnormalized factors of
/// six_products_theta; trace-normalized. Type (5,6).
inline BipartiteOperator rho_sep(double b, double theta) {
  require_b(b);
  require_theta(theta);
  const cplx om = std::sqrt(b) * std::polar(1.0, theta / 2.0);
  const std::vector<std::pair<std::array<cplx, 3>, std::array<cplx, 3>>> fam = {
      {{cplx(1), om, cplx(0)}, {om, cplx(-1), cplx(0)}},
      {{cplx(-1), om, cplx(0)}, {om, cplx(1), cplx(0)}},
      {{cplx(0), cplx(1), om}, {cplx(0), om, cplx(-1)}},
      {{cplx(0), cplx(-1), om}, {cplx(0), om, cplx(1)}},
      {{om, cplx(0), cplx(1)}, {cplx(-1), cplx(0), om}},
      {{om, cplx(0), cplx(-1)}, {cplx(1), cplx(0), om}}};
  Mat acc = Mat::Zero(9, 9);
  for (const auto& [xs, ys] : fam) {
    Vec x(3), y(3);
    for (int i = 0; i < 3; ++i) {
      x(i) = xs[static_cast<size_t>(i)];
      y(i) = ys[static_cast<size_t>(i)];
    }
    const Vec z = tensor(x, y);
    acc += z * z.adjoint();
  }
  acc /= 2.0 * b;
  return BipartiteOperator(acc / acc.trace(), 3, 3);
}

/// Entanglement witness: partial transpose of the positive matrix
/// |w1><w1| + (1/b) sum_{i>=2} |w_i><w_i| supported on ker(rho_theta).
/// Kept unnormalized so the defining formula holds exactly.
inline BipartiteOperator witness_W(double b, double theta) {
  const std::vector<Vec> w = kernel_w(b, theta);
  Mat acc = w[0] * w[0].adjoint();
  for (int i = 1; i < 4; ++i) {
    acc += w[static_cast<size_t>(i)] * w[static_cast<size_t>(i)].adjoint() / b;
  }
  return partial_transpose(BipartiteOperator(std::move(acc), 3, 3));
}

/// Ten real product vectors: six b-dependent ones whose span is
/// 6-dimensional, plus four sign-pattern vectors. Their pure states span a
/// 9-simplex face.
inline std::vector<ProductVector> delta9_family(double b) {
  require_b(b);
  const double r = std::sqrt(b);
  auto mk = [](std::initializer_list<double> xs,
               std::initializer_list<double> ys) {
    Vec x(3), y(3);
    int i = 0;
    for (double v : xs) x(i++) = v;
    i = 0;
    for (double v : ys) y(i++) = v;
    return ProductVector(std::move(x), std::move(y));
  };
  return {mk({1, r, 0}, {1, 1 / r, 0}),   mk({1, -r, 0}, {1, -1 / r, 0}),
          mk({0, 1, r}, {0, 1, 1 / r}),   mk({0, 1, -r}, {0, 1, -1 / r}),
          mk({r, 0, 1}, {1 / r, 0, 1}),   mk({-r, 0, 1}, {-1 / r, 0, 1}),
          mk({1, 1, 1}, {1, 1, 1}),       mk({1, 1, -1}, {1, 1, -1}),
          mk({1, -1, 1}, {1, -1, 1}),     mk({-1, 1, 1}, {-1, 1, 1})};
}

/// Orthocomplement of the span of the first six delta9 vectors.
inline std::vector<Vec> delta9_perp(double b) {
  require_b(b);
  const double r = std::sqrt(b);
  Vec v1 = Vec::Zero(9), v2 = Vec::Zero(9), v3 = Vec::Zero(9);
  v1(1) = r;   // |1> (x) |2>
  v1(3) = -1 / r;
  v2(5) = r;   // |2> (x) |3>
  v2(7) = -1 / r;
  v3(6) = r;   // |3> (x) |1>
  v3(2) = -1 / r;
  return {v1, v2, v3};
}

/// Choi matrix of the generalized Choi map Phi[alpha, beta, gamma]:
/// diagonal (a, g, b, b, a, g, g, b, a) with -1 at the maximally-entangled
/// off-diagonal corners.
inline BipartiteOperator choi_matrix_generalized(double alpha, double beta,
                                                 double gamma) {
  if (alpha < 0.0 || beta < 0.0 || gamma < 0.0) {
    throw std::domain_error("choi matrix parameters must be nonnegative");
  }
  Mat m = Mat::Zero(9, 9);
  const double diag[9] = {alpha, gamma, beta,  beta, alpha,
                          gamma, gamma, beta,  alpha};
  for (int i = 0; i < 9; ++i) m(i, i) = diag[i];
  const int corners[3][2] = {{0, 4}, {0, 8}, {4, 8}};
  for (const auto& p : corners) {
    m(p[0], p[1]) = -1.0;
    m(p[1], p[0]) = -1.0;
  }
  return BipartiteOperator(std::move(m), 3, 3);
}

struct PhiParams {
  double alpha;
  double beta;
  double gamma;
};

/// One-parameter family Phi(s); satisfies alpha + beta + gamma = 2 and
/// beta*gamma = (1 - alpha)^2.
inline PhiParams phi_s_params(double s) {
  require_s(s);
  const double den = 1.0 - s + s * s;
  return {(1.0 - s) * (1.0 - s) / den, s * s / den, 1.0 / den};
}

/// Five product vectors in 2 (x) 3: (0,1) (x) (0,0,1) together with
/// (1,z) (x) (1,z,z^2) for z = 0, 1, w, w^2 with w a primitive cube root of
/// unity.
inline std::vector<ProductVector> qubit_qudit_example() {
  const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  std::vector<ProductVector> out;
  {
    Vec x(2), y(3);
    x << cplx(0), cplx(1);
    y << cplx(0), cplx(0), cplx(1);
    out.emplace_back(std::move(x), std::move(y));
  }
  for (const cplx z : {cplx(0), cplx(1), w, w * w}) {
    Vec x(2), y(3);
    x << cplx(1), z;
    y << cplx(1), z, z * z;
    out.emplace_back(std::move(x), std::move(y));
  }
  return out;
}

/// Crossing parameter for dropping vertex k from the 10-vector family.
inline double lambda_k_closed_form(double b, int k) {
  require_b(b);
  if (k < 1 || k > 10) throw std::out_of_range("lambda_k: k must be in 1..10");
  const double den = 1.0 + 8.0 * b + b * b;
  if (k <= 6) return 5.0 * (1.0 + b) * (1.0 + b) / (27.0 * den);
  return 5.0 * b / (3.0 * den);
}

/// p = (m-1)(n-1) and the generic product-vector count binom(m+n-2, n-1).
inline std::pair<int, long long> dimension_constants(int m, int n) {
  if (m < 2 || n < 2) throw std::domain_error("dimensions must be >= 2");
  long long count = 1;
  for (int i = 1; i <= n - 1; ++i) {
    count = count * (m + n - 2 - (n - 1) + i) / i;  // binomial, exact steps
  }
  return {(m - 1) * (n - 1), count};
}

}  // namespace gallery
}  // namespace sepfaces

#endif  // SEPFACES_GALLERY_HPP
