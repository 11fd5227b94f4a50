#ifndef SEPFACES_TYPES_HPP
#define SEPFACES_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sepfaces {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

/// Thrown when a resultant vanishes identically, i.e. the subspace carries a
/// positive-dimensional family of product vectors.
class DegeneratePencilError : public std::runtime_error {
 public:
  explicit DegeneratePencilError(const std::string& what)
      : std::runtime_error(what) {}
};

class MalformedOperatorError : public std::invalid_argument {
 public:
  explicit MalformedOperatorError(const std::string& what)
      : std::invalid_argument(what) {}
};

class DegenerateExtensionError : public std::runtime_error {
 public:
  explicit DegenerateExtensionError(const std::string& what)
      : std::runtime_error(what) {}
};

class NoFeasibleDropError : public std::runtime_error {
 public:
  explicit NoFeasibleDropError(const std::string& what)
      : std::runtime_error(what) {}
};

struct ToleranceConfig {
  double rank_rel_tol = 1e-9;
  double residual_tol = 1e-8;
  double root_tol = 1e-7;
  double match_tol = 1e-7;
};

/// Multiplies v by a unit phase so that its first component of modulus
/// > match_tol becomes real and strictly positive.
inline Vec phase_canonicalize(const Vec& v, double match_tol = 1e-7) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > match_tol) {
      return v * (std::conj(v(i)) / std::abs(v(i)));
    }
  }
  return v;
}

/// A pure product vector x (x) y with both factors normalized and
/// phase-canonicalized.
struct ProductVector {
  Vec x;
  Vec y;

  ProductVector() = default;
  ProductVector(Vec x_, Vec y_, double match_tol = 1e-7)
      : x(std::move(x_)), y(std::move(y_)) {
    const double nx = x.norm();
    const double ny = y.norm();
    if (nx == 0.0 || ny == 0.0) {
      throw std::invalid_argument("product vector factor has zero norm");
    }
    x = phase_canonicalize(Vec(x / nx), match_tol);
    y = phase_canonicalize(Vec(y / ny), match_tol);
  }

  int m() const { return static_cast<int>(x.size()); }
  int n() const { return static_cast<int>(y.size()); }

  /// Full composite vector, component (i*n + j) = x_i * y_j.
  Vec composite() const {
    Vec z(x.size() * y.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      z.segment(i * y.size(), y.size()) = x(i) * y;
    }
    return z;
  }

  double distance(const ProductVector& other) const {
    if (x.size() != other.x.size() || y.size() != other.y.size()) {
      return std::numeric_limits<double>::infinity();
    }
    return std::max((x - other.x).norm(), (y - other.y).norm());
  }

  bool matches(const ProductVector& other, double match_tol = 1e-7) const {
    return distance(other) < match_tol;
  }
};

/// Hermitian operator on C^m (x) C^n, row-major over (first, second) index.
struct BipartiteOperator {
  Mat matrix;
  int m = 0;
  int n = 0;

  BipartiteOperator() = default;
  BipartiteOperator(Mat mat, int m_, int n_)
      : matrix(std::move(mat)), m(m_), n(n_) {
    if (matrix.rows() != m * n || matrix.cols() != m * n) {
      throw MalformedOperatorError("operator dimension does not match m*n");
    }
  }

  int dim() const { return m * n; }

  double hermiticity_defect() const {
    return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  }

  void require_hermitian(double tol = 1e-8) const {
    if (hermiticity_defect() > tol * std::max(1.0, matrix.cwiseAbs().maxCoeff())) {
      throw MalformedOperatorError("operator is not Hermitian within tolerance");
    }
  }
};

/// Orthonormal basis of a subspace of C^m (x) C^n (basis vectors as columns).
struct Subspace {
  Mat basis;
  int m = 0;
  int n = 0;

  Subspace() = default;
  Subspace(Mat basis_, int m_, int n_)
      : basis(std::move(basis_)), m(m_), n(n_) {
    if (basis.rows() != m * n) {
      throw std::invalid_argument("subspace basis length does not match m*n");
    }
  }

  int dim() const { return static_cast<int>(basis.cols()); }

  Mat projector() const { return basis * basis.adjoint(); }

  /// Orthonormal basis of the orthogonal complement.
  Mat orthocomplement() const {
    const Eigen::Index d = basis.cols();
    const Eigen::Index N = basis.rows();
    Mat padded(N, d + N);
    padded.leftCols(d) = basis;
    padded.rightCols(N) = Mat::Identity(N, N);
    Eigen::HouseholderQR<Mat> qr(padded);
    Mat q = qr.householderQ() * Mat::Identity(N, N);
    return q.rightCols(N - d);
  }

  /// Norm of the component of v outside the subspace.
  double residual(const Vec& v) const {
    return (v - basis * (basis.adjoint() * v)).norm();
  }

  /// Span of a list of (not necessarily independent) vectors.
  static Subspace span(const std::vector<Vec>& vectors, int m, int n,
                       double rank_rel_tol = 1e-9) {
    if (vectors.empty()) {
      throw std::invalid_argument("cannot span an empty vector list");
    }
    Mat stacked(m * n, static_cast<Eigen::Index>(vectors.size()));
    for (size_t i = 0; i < vectors.size(); ++i) {
      stacked.col(static_cast<Eigen::Index>(i)) = vectors[i].normalized();
    }
    Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > std::max(rank_rel_tol * sv(0), 1e-12)) ++rank;
    }
    return Subspace(svd.matrixU().leftCols(rank), m, n);
  }

  static Subspace span_of_products(const std::vector<ProductVector>& family,
                                   int m, int n,
                                   double rank_rel_tol = 1e-9) {
    std::vector<Vec> vs;
    vs.reserve(family.size());
    for (const auto& p : family) vs.push_back(p.composite());
    return span(vs, m, n, rank_rel_tol);
  }
};

}  // namespace sepfaces

#endif  // SEPFACES_TYPES_HPP
