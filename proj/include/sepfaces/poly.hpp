#ifndef SEPFACES_POLY_HPP
#define SEPFACES_POLY_HPP

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <vector>

#include "sepfaces/types.hpp"

namespace sepfaces {

/// Univariate polynomial with complex coefficients, low degree first.
struct Poly {
  std::vector<cplx> c;

  Poly() : c{cplx(0.0)} {}
  explicit Poly(std::vector<cplx> coeffs) : c(std::move(coeffs)) {
    if (c.empty()) c.push_back(cplx(0.0));
  }
  static Poly constant(cplx v) { return Poly({v}); }

  int degree() const { return static_cast<int>(c.size()) - 1; }

  double max_abs() const {
    double mx = 0.0;
    for (const auto& v : c) mx = std::max(mx, std::abs(v));
    return mx;
  }

  void trim(double tol) {
    const double cut = tol * std::max(1.0, max_abs());
    size_t last = 0;
    for (size_t i = 0; i < c.size(); ++i) {
      if (std::abs(c[i]) > cut) last = i;
    }
    c.resize(last + 1);
  }

  bool is_zero(double tol) const { return max_abs() <= tol; }

  cplx eval(cplx z) const {
    cplx acc(0.0);
    for (size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
  }

  Poly derivative() const {
    if (c.size() <= 1) return Poly();
    std::vector<cplx> d(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * double(i);
    return Poly(std::move(d));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<cplx> r(std::max(a.c.size(), b.c.size()), cplx(0.0));
    for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
    return Poly(std::move(r));
  }

  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<cplx> r(std::max(a.c.size(), b.c.size()), cplx(0.0));
    for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
    return Poly(std::move(r));
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    std::vector<cplx> r(a.c.size() + b.c.size() - 1, cplx(0.0));
    for (size_t i = 0; i < a.c.size(); ++i) {
      for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    }
    return Poly(std::move(r));
  }
};

/// Roots via eigenvalues of the companion matrix of the trimmed polynomial.
inline std::vector<cplx> companion_roots(Poly p, double coeff_tol = 1e-12) {
  p.trim(coeff_tol);
  const int n = p.degree();
  if (n < 1) return {};
  Mat comp = Mat::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -p.c[i] / p.c[n];
  Eigen::ComplexEigenSolver<Mat> es(comp, /*computeEigenvectors=*/false);
  std::vector<cplx> roots(es.eigenvalues().data(),
                          es.eigenvalues().data() + n);
  return roots;
}

/// Bivariate polynomial in (s, t), coefficient of s^i t^j at c[i][j].
/// Degree at most 3 in each variable (enough for 3x3 minors of matrices
/// whose entries are linear in (s, t)).
struct BiPoly {
  std::array<std::array<cplx, 4>, 4> c{};

  cplx eval(cplx s, cplx t) const {
    cplx acc(0.0);
    for (int i = 3; i >= 0; --i) {
      cplx row(0.0);
      for (int j = 3; j >= 0; --j) row = row * t + c[i][j];
      acc = acc * s + row;
    }
    return acc;
  }

  cplx eval_ds(cplx s, cplx t) const {
    cplx acc(0.0);
    for (int i = 1; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        acc += double(i) * c[i][j] * std::pow(s, i - 1) * std::pow(t, j);
      }
    }
    return acc;
  }

  cplx eval_dt(cplx s, cplx t) const {
    cplx acc(0.0);
    for (int i = 0; i < 4; ++i) {
      for (int j = 1; j < 4; ++j) {
        acc += double(j) * c[i][j] * std::pow(s, i) * std::pow(t, j - 1);
      }
    }
    return acc;
  }

  double max_abs() const {
    double mx = 0.0;
    for (const auto& row : c) {
      for (const auto& v : row) mx = std::max(mx, std::abs(v));
    }
    return mx;
  }

  /// Coefficient of t^j, as a polynomial in s.
  Poly coeff_of_t(int j) const {
    return Poly({c[0][j], c[1][j], c[2][j], c[3][j]});
  }

  /// Restriction t -> fixed value is implicit; restriction to s = 0 gives a
  /// univariate polynomial in t.
  Poly at_s_zero() const { return Poly({c[0][0], c[0][1], c[0][2], c[0][3]}); }
};

/// Determinant of the 3x3 matrix with entries E(r, c) = A0(r,c) + s*A1(r,c)
/// + t*A2(r,c), restricted to the given three rows of the k x 3 matrices.
inline BiPoly linear_matrix_minor(const Mat& a0, const Mat& a1, const Mat& a2,
                                  const std::array<int, 3>& rows) {
  static constexpr std::array<std::array<int, 3>, 6> perms = {
      {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}}};
  static constexpr std::array<double, 6> signs = {1, 1, 1, -1, -1, -1};
  BiPoly out;
  for (int p = 0; p < 6; ++p) {
    // product of three linear forms (m0 + s m1 + t m2) over the rows
    std::array<std::array<cplx, 3>, 3> lin;
    for (int r = 0; r < 3; ++r) {
      lin[r] = {a0(rows[r], perms[p][r]), a1(rows[r], perms[p][r]),
                a2(rows[r], perms[p][r])};
    }
    for (int u = 0; u < 3; ++u) {
      for (int v = 0; v < 3; ++v) {
        for (int w = 0; w < 3; ++w) {
          const cplx coef = signs[p] * lin[0][u] * lin[1][v] * lin[2][w];
          const int si = (u == 1) + (v == 1) + (w == 1);
          const int ti = (u == 2) + (v == 2) + (w == 2);
          out.c[si][ti] += coef;
        }
      }
    }
  }
  return out;
}

namespace detail {

inline Poly poly_matrix_det(const std::vector<std::vector<Poly>>& mat,
                            std::vector<int> rows, std::vector<int> cols) {
  if (rows.size() == 1) return mat[rows[0]][cols[0]];
  Poly acc;
  for (size_t k = 0; k < cols.size(); ++k) {
    const Poly& pivot = mat[rows[0]][cols[k]];
    if (pivot.max_abs() == 0.0) continue;
    std::vector<int> subRows(rows.begin() + 1, rows.end());
    std::vector<int> subCols;
    for (size_t j = 0; j < cols.size(); ++j) {
      if (j != k) subCols.push_back(cols[j]);
    }
    Poly term = pivot * poly_matrix_det(mat, subRows, subCols);
    acc = (k % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace detail

/// Resultant of p and q with respect to t, via the Sylvester determinant
/// expanded over univariate polynomials in s. Returns an empty optional when
/// either polynomial has degree < 1 in t (no elimination possible).
inline std::optional<Poly> sylvester_resultant_t(const BiPoly& p,
                                                 const BiPoly& q,
                                                 double coeff_tol = 1e-11) {
  const double sp = std::max(p.max_abs(), 1e-300);
  const double sq = std::max(q.max_abs(), 1e-300);
  auto deg_t = [&](const BiPoly& f, double scale) {
    int d = -1;
    for (int j = 0; j < 4; ++j) {
      if (f.coeff_of_t(j).max_abs() > coeff_tol * scale) d = j;
    }
    return d;
  };
  const int dp = deg_t(p, sp), dq = deg_t(q, sq);
  if (dp < 1 || dq < 1) return std::nullopt;
  const int N = dp + dq;
  std::vector<std::vector<Poly>> syl(
      static_cast<size_t>(N), std::vector<Poly>(static_cast<size_t>(N)));
  for (int i = 0; i < dq; ++i) {
    for (int j = 0; j <= dp; ++j) syl[i][i + j] = p.coeff_of_t(dp - j);
  }
  for (int i = 0; i < dp; ++i) {
    for (int j = 0; j <= dq; ++j) syl[dq + i][i + j] = q.coeff_of_t(dq - j);
  }
  std::vector<int> idx(static_cast<size_t>(N));
  for (int i = 0; i < N; ++i) idx[static_cast<size_t>(i)] = i;
  Poly res = detail::poly_matrix_det(syl, idx, idx);
  res.trim(1e-13);
  return res;
}

/// Merges roots closer than root_tol, keeping one representative per cluster.
inline std::vector<cplx> cluster_roots(std::vector<cplx> roots,
                                       double root_tol) {
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<cplx> out;
  for (const cplx& r : roots) {
    bool merged = false;
    for (const cplx& kept : out) {
      if (std::abs(r - kept) < root_tol) {
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(r);
  }
  return out;
}

}  // namespace sepfaces

#endif  // SEPFACES_POLY_HPP
