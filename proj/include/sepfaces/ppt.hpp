#ifndef SEPFACES_PPT_HPP
#define SEPFACES_PPT_HPP

#include <optional>

#include "sepfaces/face.hpp"
#include "sepfaces/locator.hpp"
#include "sepfaces/tensor.hpp"
#include "sepfaces/types.hpp"

namespace sepfaces {

struct PositivityBound {
  double epsilon = 0.0;
  bool range_contained = true;
};

struct PptBound {
  double epsilon_star = 0.0;
  double eps_positive = 0.0;
  double eps_ppt_side = 0.0;
};

struct EdgeExtraction {
  double epsilon_star = 0.0;
  double eps_positive = 0.0;
  double eps_ppt_side = 0.0;
  BipartiteOperator boundary_state;          // normalized sigma - eps* rho0
  BipartiteOperator unnormalized_difference;  // sigma - eps* rho0 as-is
  std::pair<int, int> rank_type{0, 0};
  Verdict edge = Verdict::undecided;
};

struct DecompositionSolve {
  RVec coefficients;
  std::optional<double> mu;
  double residual = 0.0;
  bool feasible = false;
  bool unique = false;
  std::optional<int> dropped_index;
};

namespace detail {

inline void require_state(const BipartiteOperator& rho,
                          const ToleranceConfig& tol) {
  rho.require_hermitian(std::max(tol.residual_tol, 1e-8));
  Eigen::SelfAdjointEigenSolver<Mat> es(
      Mat((rho.matrix + rho.matrix.adjoint()) / 2.0),
      Eigen::EigenvaluesOnly);
  const double mx = es.eigenvalues().cwiseAbs().maxCoeff();
  if (es.eigenvalues().minCoeff() < -1e-8 * std::max(mx, 1.0)) {
    throw MalformedOperatorError("state is not positive semidefinite");
  }
  const double tr = rho.matrix.trace().real();
  if (std::abs(tr - 1.0) > 1e-6) {
    throw MalformedOperatorError("state trace is not 1");
  }
}

}  // namespace detail

inline bool is_ppt(const BipartiteOperator& rho,
                   const ToleranceConfig& tol = {}) {
  detail::require_state(rho, tol);
  const BipartiteOperator gamma = partial_transpose(rho);
  Eigen::SelfAdjointEigenSolver<Mat> es(
      Mat((gamma.matrix + gamma.matrix.adjoint()) / 2.0),
      Eigen::EigenvaluesOnly);
  const double mx = es.eigenvalues().maxCoeff();
  return es.eigenvalues().minCoeff() >= -tol.rank_rel_tol * std::max(mx, 1e-12);
}

/// Rank of the state and rank of its partial transpose.
inline std::pair<int, int> state_type(const BipartiteOperator& rho,
                                      const ToleranceConfig& tol = {}) {
  return {hermitian_rank(rho, tol),
          hermitian_rank(partial_transpose(rho), tol)};
}

/// Largest eps with sigma - eps*rho0 >= 0, computed as 1/lambda_max(S rho0 S)
/// where S is the pseudo-inverse square root of sigma on its range. When
/// range(rho0) is not contained in range(sigma), no eps > 0 works.
inline PositivityBound max_epsilon_positive(const BipartiteOperator& sigma,
                                            const BipartiteOperator& rho0,
                                            const ToleranceConfig& tol = {}) {
  if (sigma.m != rho0.m || sigma.n != rho0.n) {
    throw std::invalid_argument("max_epsilon_positive: dimension mismatch");
  }
  auto es = detail::hermitian_eigs(sigma, tol);
  const double cutoff = detail::rank_cutoff(es.eigenvalues(), tol.rank_rel_tol);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) > cutoff) keep.push_back(i);
  }
  const Eigen::Index d = sigma.matrix.rows();
  Mat v(d, static_cast<Eigen::Index>(keep.size()));
  Mat s = Mat::Zero(d, d);
  Mat proj = Mat::Zero(d, d);
  for (size_t i = 0; i < keep.size(); ++i) {
    v.col(static_cast<Eigen::Index>(i)) = es.eigenvectors().col(keep[i]);
  }
  proj = v * v.adjoint();
  for (size_t i = 0; i < keep.size(); ++i) {
    s += v.col(static_cast<Eigen::Index>(i)) *
         v.col(static_cast<Eigen::Index>(i)).adjoint() /
         std::sqrt(es.eigenvalues()(keep[i]));
  }
  const Mat comp = Mat::Identity(d, d) - proj;
  const double leak = (comp * rho0.matrix * comp).norm();
  if (leak > tol.residual_tol) return {0.0, false};
  Mat srs = s * rho0.matrix * s;
  Eigen::SelfAdjointEigenSolver<Mat> es2(Mat((srs + srs.adjoint()) / 2.0),
                                         Eigen::EigenvaluesOnly);
  const double top = es2.eigenvalues().maxCoeff();
  if (top <= 0.0) return {std::numeric_limits<double>::infinity(), true};
  return {1.0 / top, true};
}

inline PptBound max_epsilon_ppt(const BipartiteOperator& sigma,
                                const BipartiteOperator& rho0,
                                const ToleranceConfig& tol = {}) {
  PptBound out;
  out.eps_positive = max_epsilon_positive(sigma, rho0, tol).epsilon;
  out.eps_ppt_side =
      max_epsilon_positive(partial_transpose(sigma), partial_transpose(rho0),
                           tol)
          .epsilon;
  out.epsilon_star = std::min(out.eps_positive, out.eps_ppt_side);
  return out;
}

/// Edge verdict: a PPT entangled state is an edge state when its range
/// contains no product vector x (x) y with conj(x) (x) y in the range of the
/// partial transpose.
inline Verdict is_edge_state(const BipartiteOperator& rho,
                             const LocatorConfig& cfg = {}) {
  const Subspace range = range_of(rho, cfg.tol);
  const Subspace range_gamma = range_of(partial_transpose(rho), cfg.tol);
  if (rho.m == 3 && rho.n == 3 && range.dim() < 6) {
    try {
      LocatorResult res = find_product_vectors(range, cfg);
      for (const auto& p : res.vectors) {
        if (range_gamma.residual(tensor(p.x.conjugate(), p.y)) <
            cfg.tol.residual_tol) {
          return Verdict::fails;  // not an edge state
        }
      }
      if (res.complete) return Verdict::holds;
    } catch (const DegeneratePencilError&) {
      // fall through to the oracle
    }
  }
  LocatorResult oracle =
      find_conjugate_constrained_products(range, range_gamma, cfg);
  if (!oracle.vectors.empty()) return Verdict::fails;
  return Verdict::undecided;
}

inline EdgeExtraction extract_edge_state(const BipartiteOperator& sigma,
                                         const BipartiteOperator& rho0,
                                         const LocatorConfig& cfg = {}) {
  if (!is_ppt(sigma, cfg.tol) || !is_ppt(rho0, cfg.tol)) {
    throw MalformedOperatorError("extract_edge_state: inputs must be PPT states");
  }
  EdgeExtraction out;
  const PptBound bound = max_epsilon_ppt(sigma, rho0, cfg.tol);
  out.epsilon_star = bound.epsilon_star;
  out.eps_positive = bound.eps_positive;
  out.eps_ppt_side = bound.eps_ppt_side;
  if (out.epsilon_star <= cfg.tol.residual_tol) {
    throw DegenerateExtensionError("no positive extension: epsilon* = 0");
  }
  Mat diff = sigma.matrix - out.epsilon_star * rho0.matrix;
  const double tr = diff.trace().real();
  if (tr < 10.0 * cfg.tol.residual_tol) {
    throw DegenerateExtensionError("boundary state vanishes: sigma = eps* rho0");
  }
  out.unnormalized_difference = BipartiteOperator(diff, sigma.m, sigma.n);
  out.boundary_state = BipartiteOperator(diff / tr, sigma.m, sigma.n);
  out.rank_type = state_type(out.boundary_state, cfg.tol);
  out.edge = is_edge_state(out.boundary_state, cfg);
  return out;
}

/// Least-squares solve of sum_i lambda_i |z_i><z_i| = rho over the realified
/// Hermitian coordinates, with sum lambda_i = 1 appended.
inline DecompositionSolve separability_solve(
    const BipartiteOperator& rho, const std::vector<ProductVector>& family,
    const ToleranceConfig& tol = {}) {
  if (family.empty()) throw std::invalid_argument("empty family");
  const int k = static_cast<int>(family.size());
  const Eigen::Index rows = rho.dim() * rho.dim();
  RMat a(rows + 1, k);
  for (int i = 0; i < k; ++i) {
    a.col(i).head(rows) = realify(pure_state(family[static_cast<size_t>(i)]));
    a(rows, i) = 1.0;
  }
  RVec b(rows + 1);
  b.head(rows) = realify(rho);
  b(rows) = 1.0;
  Eigen::ColPivHouseholderQR<RMat> qr(a);
  DecompositionSolve out;
  out.coefficients = qr.solve(b);
  out.residual = (a * out.coefficients - b).norm();
  out.unique = qr.rank() == k;
  out.feasible = out.residual < tol.residual_tol &&
                 (out.coefficients.array() >= -tol.residual_tol).all();
  return out;
}

/// Finds the face crossed when moving from the interior point rho0 (the
/// uniform mixture over the family) toward rho: for each dropped vertex i,
/// solve sum_{j != i} lambda_j P_j = (1 - mu) rho0 + mu rho and keep the
/// feasible drop with lambda >= 0 and mu in [0, 1]. When every drop is
/// infeasible but rho itself decomposes over the family, rho is face-interior
/// and the degenerate mu = 0 answer is returned.
inline DecompositionSolve nearest_face_solve(
    const BipartiteOperator& rho, const BipartiteOperator& rho0,
    const std::vector<ProductVector>& family,
    const ToleranceConfig& tol = {}) {
  const int k = static_cast<int>(family.size());
  if (k < 2) throw std::invalid_argument("nearest_face_solve: need >= 2 vectors");
  const Eigen::Index rows = rho.dim() * rho.dim();
  const RVec r_rho = realify(rho);
  const RVec r_rho0 = realify(rho0);
  std::vector<RVec> r_states;
  for (const auto& p : family) r_states.push_back(realify(pure_state(p)));

  for (int drop = 0; drop < k; ++drop) {
    // unknowns: lambda_j (j != drop), mu
    RMat a(rows + 1, k);
    RVec b(rows + 1);
    int col = 0;
    for (int j = 0; j < k; ++j) {
      if (j == drop) continue;
      a.col(col).head(rows) = r_states[static_cast<size_t>(j)];
      a(rows, col) = 1.0;
      ++col;
    }
    a.col(k - 1).head(rows) = r_rho0 - r_rho;  // -mu(rho - rho0) moved left
    a(rows, k - 1) = 0.0;
    b.head(rows) = r_rho0;
    b(rows) = 1.0;
    Eigen::ColPivHouseholderQR<RMat> qr(a);
    RVec sol = qr.solve(b);
    const double res = (a * sol - b).norm();
    const double mu = sol(k - 1);
    const bool lambdas_ok =
        (sol.head(k - 1).array() >= -tol.residual_tol).all();
    if (res < tol.residual_tol && lambdas_ok && mu >= -tol.residual_tol &&
        mu <= 1.0 + tol.residual_tol) {
      DecompositionSolve out;
      out.coefficients = RVec::Zero(k);
      col = 0;
      for (int j = 0; j < k; ++j) {
        if (j == drop) continue;
        out.coefficients(j) = sol(col++);
      }
      out.mu = mu;
      out.residual = res;
      out.feasible = true;
      out.unique = qr.rank() == k;
      out.dropped_index = drop;
      return out;
    }
  }
  DecompositionSolve interior = separability_solve(rho, family, tol);
  if (interior.feasible) {
    interior.mu = 0.0;  // rho already lies on the face spanned by the family
    return interior;
  }
  throw NoFeasibleDropError("no single-vertex drop yields a feasible crossing");
}

/// Pairing between a state and the Choi matrix of a positive map.
inline double dual_pairing(const BipartiteOperator& rho,
                           const BipartiteOperator& choi) {
  if (rho.dim() != choi.dim()) {
    throw std::invalid_argument("dual_pairing: dimension mismatch");
  }
  return (rho.matrix * choi.matrix.transpose()).trace().real();
}

}  // namespace sepfaces

#endif  // SEPFACES_PPT_HPP
