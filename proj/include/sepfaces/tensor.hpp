#ifndef SEPFACES_TENSOR_HPP
#define SEPFACES_TENSOR_HPP

#include <cmath>

#include "sepfaces/types.hpp"

namespace sepfaces {

inline Vec tensor(const Vec& x, const Vec& y) {
  Vec z(x.size() * y.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    z.segment(i * y.size(), y.size()) = x(i) * y;
  }
  return z;
}

/// Transpose on the first tensor factor: block (i,j) of the result is
/// block (j,i) of the input.
inline BipartiteOperator partial_transpose(const BipartiteOperator& rho) {
  const int m = rho.m, n = rho.n;
  Mat out(m * n, m * n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      out.block(i * n, j * n, n, n) = rho.matrix.block(j * n, i * n, n, n);
    }
  }
  return BipartiteOperator(std::move(out), m, n);
}

inline ProductVector partial_conjugate(const ProductVector& p,
                                       double match_tol = 1e-7) {
  return ProductVector(p.x.conjugate(), p.y, match_tol);
}

namespace detail {

inline Eigen::SelfAdjointEigenSolver<Mat> hermitian_eigs(
    const BipartiteOperator& a, const ToleranceConfig& tol) {
  a.require_hermitian(std::max(tol.residual_tol, 1e-8));
  Eigen::SelfAdjointEigenSolver<Mat> es(
      Mat((a.matrix + a.matrix.adjoint()) / 2.0));
  return es;
}

/// Absolute eigenvalue cutoff for the rank decision.
inline double rank_cutoff(const RVec& eigenvalues, double rank_rel_tol) {
  const double mx = eigenvalues.cwiseAbs().maxCoeff();
  return std::max(rank_rel_tol * mx, 1e-12);
}

}  // namespace detail

inline int hermitian_rank(const BipartiteOperator& a,
                          const ToleranceConfig& tol = {}) {
  auto es = detail::hermitian_eigs(a, tol);
  const double cutoff = detail::rank_cutoff(es.eigenvalues(), tol.rank_rel_tol);
  int rank = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()(i)) > cutoff) ++rank;
  }
  return rank;
}

inline Subspace kernel_of(const BipartiteOperator& a,
                          const ToleranceConfig& tol = {}) {
  auto es = detail::hermitian_eigs(a, tol);
  const double cutoff = detail::rank_cutoff(es.eigenvalues(), tol.rank_rel_tol);
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()(i)) <= cutoff) idx.push_back(i);
  }
  Mat basis(a.dim(), static_cast<Eigen::Index>(idx.size()));
  for (size_t k = 0; k < idx.size(); ++k) {
    basis.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(idx[k]);
  }
  return Subspace(std::move(basis), a.m, a.n);
}

inline Subspace range_of(const BipartiteOperator& a,
                         const ToleranceConfig& tol = {}) {
  auto es = detail::hermitian_eigs(a, tol);
  const double cutoff = detail::rank_cutoff(es.eigenvalues(), tol.rank_rel_tol);
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()(i)) > cutoff) idx.push_back(i);
  }
  Mat basis(a.dim(), static_cast<Eigen::Index>(idx.size()));
  for (size_t k = 0; k < idx.size(); ++k) {
    basis.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(idx[k]);
  }
  return Subspace(std::move(basis), a.m, a.n);
}

/// Real coordinates of a Hermitian matrix: diagonal entries first, then
/// sqrt(2)*Re and sqrt(2)*Im of the strictly upper triangle in row-major
/// order. Linear and Frobenius-isometric: <realify A, realify B> = Re Tr(AB).
inline RVec realify(const BipartiteOperator& a) {
  const int d = a.dim();
  RVec out(d * d);
  Eigen::Index k = 0;
  for (int i = 0; i < d; ++i) out(k++) = a.matrix(i, i).real();
  const double s2 = std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) out(k++) = s2 * a.matrix(i, j).real();
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) out(k++) = s2 * a.matrix(i, j).imag();
  }
  return out;
}

inline BipartiteOperator pure_state(const ProductVector& p) {
  const Vec z = p.composite();
  return BipartiteOperator(z * z.adjoint(), p.m(), p.n());
}

}  // namespace sepfaces

#endif  // SEPFACES_TENSOR_HPP
