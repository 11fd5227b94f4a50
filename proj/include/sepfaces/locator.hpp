#ifndef SEPFACES_LOCATOR_HPP
#define SEPFACES_LOCATOR_HPP

#include <algorithm>
#include <array>
#include <random>

#include "sepfaces/poly.hpp"
#include "sepfaces/tensor.hpp"
#include "sepfaces/types.hpp"

namespace sepfaces {

struct LocatorConfig {
  int max_degree_guard = 24;
  int newton_iters = 30;
  int multistart_count = 200;
  uint64_t rng_seed = 12345;
  ToleranceConfig tol{};
};

struct LocatorResult {
  std::vector<ProductVector> vectors;
  bool complete = false;
  std::vector<double> residuals;

  double max_residual() const {
    double mx = 0.0;
    for (double r : residuals) mx = std::max(mx, r);
    return mx;
  }
};

/// Row i is x^T * conj(W_i), with W_i the i-th orthocomplement vector
/// reshaped m x n. A unit y satisfies x (x) y in D iff M(x) y = 0.
inline Mat constraint_matrix(const std::vector<Vec>& orthocomplement_basis,
                             const Vec& x, int n) {
  const int m = static_cast<int>(x.size());
  const int k = static_cast<int>(orthocomplement_basis.size());
  Mat out(k, n);
  for (int i = 0; i < k; ++i) {
    const Vec& w = orthocomplement_basis[i];
    for (int b = 0; b < n; ++b) {
      cplx acc(0.0);
      for (int a = 0; a < m; ++a) acc += x(a) * std::conj(w(a * n + b));
      out(i, b) = acc;
    }
  }
  return out;
}

inline bool membership(const ProductVector& p, const Subspace& d,
                       const ToleranceConfig& tol = {}) {
  if (p.m() != d.m || p.n() != d.n) {
    throw std::invalid_argument("membership: dimension mismatch");
  }
  return d.residual(p.composite()) < tol.residual_tol;
}

namespace detail {

inline Mat haar_unitary(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = cplx(gauss(rng), gauss(rng));
  }
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const cplx d = r(j, j);
    q.col(j) *= (std::abs(d) > 0.0) ? std::conj(d) / std::abs(d) : cplx(1.0);
  }
  return q;
}

inline bool lex_less(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return false;
}

inline void sort_canonical(LocatorResult& result) {
  std::vector<size_t> order(result.vectors.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t i, size_t j) {
    const auto& a = result.vectors[i];
    const auto& b = result.vectors[j];
    if (lex_less(a.x, b.x)) return true;
    if (lex_less(b.x, a.x)) return false;
    return lex_less(a.y, b.y);
  });
  LocatorResult sorted;
  sorted.complete = result.complete;
  for (size_t i : order) {
    sorted.vectors.push_back(result.vectors[i]);
    sorted.residuals.push_back(result.residuals[i]);
  }
  result = std::move(sorted);
}

struct CandidateSink {
  const Subspace& subspace;
  const std::vector<Vec>& ortho;
  const LocatorConfig& cfg;
  LocatorResult& result;

  /// Verifies a candidate local x: null direction of M(x) gives y, then the
  /// full membership residual decides.
  bool try_accept(Vec x) {
    const double nx = x.norm();
    if (nx < 1e-12) return false;
    x /= nx;
    Mat m = constraint_matrix(ortho, x, subspace.n);
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) > 1e-5) return false;
    Vec y = svd.matrixV().col(svd.matrixV().cols() - 1);
    const double res = subspace.residual(tensor(x, y));
    if (res >= cfg.tol.residual_tol) return false;
    ProductVector p(std::move(x), std::move(y), cfg.tol.match_tol);
    for (const auto& q : result.vectors) {
      if (p.matches(q, std::max(cfg.tol.match_tol, 1e3 * res))) return false;
    }
    result.vectors.push_back(std::move(p));
    result.residuals.push_back(res);
    return true;
  }
};

inline void newton_2d(const BiPoly& p, const BiPoly& q, cplx& s, cplx& t,
                      int iters) {
  for (int it = 0; it < iters; ++it) {
    const cplx f0 = p.eval(s, t), f1 = q.eval(s, t);
    const cplx a = p.eval_ds(s, t), b = p.eval_dt(s, t);
    const cplx c = q.eval_ds(s, t), d = q.eval_dt(s, t);
    const cplx det = a * d - b * c;
    if (std::abs(det) < 1e-300) break;
    const cplx ds = (d * f0 - b * f1) / det;
    const cplx dt = (a * f1 - c * f0) / det;
    s -= ds;
    t -= dt;
    if (std::max(std::abs(ds), std::abs(dt)) < 1e-15) break;
  }
}

inline bool jacobian_nonsingular(const BiPoly& p, const BiPoly& q, cplx s,
                                 cplx t) {
  const cplx a = p.eval_ds(s, t), b = p.eval_dt(s, t);
  const cplx c = q.eval_ds(s, t), d = q.eval_dt(s, t);
  const double scale = (std::abs(a) + std::abs(b)) * (std::abs(c) + std::abs(d));
  return std::abs(a * d - b * c) > 1e-9 * std::max(scale, 1e-30);
}

}  // namespace detail

/// Enumerates all product vectors in a subspace of C^3 (x) C^3 via the
/// vanishing-minors polynomial system: resultant elimination in a generic
/// local frame, companion-matrix roots, Newton polish, full verification.
/// Throws DegeneratePencilError when the subspace carries infinitely many
/// product vectors.
inline LocatorResult find_product_vectors(const Subspace& d,
                                          const LocatorConfig& cfg = {}) {
  if (d.m != 3 || d.n != 3) {
    throw std::invalid_argument(
        "find_product_vectors: exhaustive path requires m = n = 3");
  }
  if (d.dim() < 1 || d.dim() > 8) {
    throw std::invalid_argument("find_product_vectors: dim must be in [1,8]");
  }
  const int k = 9 - d.dim();
  if (k <= 3) {
    // With at most one 3x3 minor the zero set of det M(x) is a curve in
    // projective x-space, so the product-vector family is positive
    // dimensional.
    throw DegeneratePencilError(
        "subspace of dimension >= 6 has infinitely many product vectors");
  }

  // Generic local frame: solving in rotated coordinates removes axis-aligned
  // degeneracies (shared components between the selected minors).
  std::mt19937_64 frame_rng(0x5eb5ace5u);
  const Mat u = detail::haar_unitary(frame_rng, 3);
  const Mat v = detail::haar_unitary(frame_rng, 3);
  Mat g(9, 9);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      g.block(i * 3, j * 3, 3, 3) = u(i, j) * v;
    }
  }
  Subspace local(g.adjoint() * d.basis, 3, 3);

  Mat orthoMat = local.orthocomplement();
  std::vector<Vec> ortho;
  for (int i = 0; i < k; ++i) ortho.push_back(orthoMat.col(i));

  // Linear pencil M(x) = A0 + s A1 + t A2 in the chart x = (1, s, t).
  Mat a0(k, 3), a1(k, 3), a2(k, 3);
  for (int i = 0; i < k; ++i) {
    for (int b = 0; b < 3; ++b) {
      a0(i, b) = std::conj(ortho[i](0 * 3 + b));
      a1(i, b) = std::conj(ortho[i](1 * 3 + b));
      a2(i, b) = std::conj(ortho[i](2 * 3 + b));
    }
  }

  std::vector<std::array<int, 3>> triples;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      for (int l = j + 1; l < k; ++l) triples.push_back({i, j, l});
    }
  }

  LocatorResult result;
  result.complete = true;
  detail::CandidateSink sink{local, ortho, cfg, result};

  // Pick the first minor pair with a non-vanishing resultant; in the generic
  // frame an identically-zero resultant for every pair means the solution
  // variety is positive dimensional.
  const size_t triple_cap = std::min<size_t>(triples.size(), 6);
  BiPoly p, q;
  Poly resultant;
  bool have_pair = false;
  for (size_t i = 0; i < triple_cap && !have_pair; ++i) {
    for (size_t j = i + 1; j < triple_cap && !have_pair; ++j) {
      BiPoly pi = linear_matrix_minor(a0, a1, a2, triples[i]);
      BiPoly qj = linear_matrix_minor(a0, a1, a2, triples[j]);
      auto res = sylvester_resultant_t(pi, qj);
      if (!res.has_value()) continue;
      const double scale =
          std::max(pi.max_abs(), 1e-300) * std::max(qj.max_abs(), 1e-300);
      if (res->max_abs() <= 1e-10 * scale) continue;
      p = pi;
      q = qj;
      resultant = std::move(*res);
      have_pair = true;
    }
  }
  if (!have_pair) {
    throw DegeneratePencilError(
        "every minor-pair resultant vanishes identically: infinitely many "
        "product vectors");
  }
  if (resultant.degree() > cfg.max_degree_guard) {
    throw std::runtime_error("resultant degree exceeds max_degree_guard");
  }

  // Chart 1: x = (1, s, t).
  for (cplx s :
       cluster_roots(companion_roots(resultant), cfg.tol.root_tol)) {
    Poly pt(std::vector<cplx>{p.coeff_of_t(0).eval(s), p.coeff_of_t(1).eval(s),
                              p.coeff_of_t(2).eval(s), p.coeff_of_t(3).eval(s)});
    for (cplx t : cluster_roots(companion_roots(pt), cfg.tol.root_tol)) {
      cplx s2 = s, t2 = t;
      detail::newton_2d(p, q, s2, t2, cfg.newton_iters);
      Vec x(3);
      x << cplx(1.0), s2, t2;
      if (sink.try_accept(x) &&
          !detail::jacobian_nonsingular(p, q, s2, t2)) {
        result.complete = false;
      }
    }
  }

  // Chart 2: x = (0, 1, t); the minors become univariate cubics in t.
  {
    Mat zero = Mat::Zero(k, 3);
    Poly chart2;
    bool got = false;
    size_t used = 0;
    for (size_t i = 0; i < triples.size(); ++i) {
      BiPoly c2 = linear_matrix_minor(a1, zero, a2, triples[i]);
      Poly uni = c2.at_s_zero();
      uni.trim(1e-12);
      if (uni.max_abs() > 1e-11 * std::max(c2.max_abs(), 1e-300) &&
          uni.degree() >= 1) {
        chart2 = std::move(uni);
        got = true;
        used = i;
        break;
      }
    }
    if (got) {
      Poly dchart2 = chart2.derivative();
      for (cplx t : cluster_roots(companion_roots(chart2), cfg.tol.root_tol)) {
        // 1-d Newton polish on the selected minor
        for (int it = 0; it < cfg.newton_iters; ++it) {
          const cplx df = dchart2.eval(t);
          if (std::abs(df) < 1e-300) break;
          const cplx step = chart2.eval(t) / df;
          t -= step;
          if (std::abs(step) < 1e-15) break;
        }
        Vec x(3);
        x << cplx(0.0), cplx(1.0), t;
        if (sink.try_accept(x) && std::abs(dchart2.eval(t)) <
                                      1e-9 * std::max(chart2.max_abs(), 1e-30)) {
          result.complete = false;
        }
      }
      (void)used;
    }
    // All chart-2 minors identically zero would mean a t-family of
    // solutions; in the generic frame that is caught by the resultant check
    // above, so nothing further to do here.
  }

  // Chart 3: x = (0, 0, 1).
  {
    Vec x(3);
    x << cplx(0.0), cplx(0.0), cplx(1.0);
    sink.try_accept(x);
  }

  // Rotate back to the original coordinates.
  LocatorResult out;
  out.complete = result.complete;
  for (size_t i = 0; i < result.vectors.size(); ++i) {
    const auto& pv = result.vectors[i];
    ProductVector back(u * pv.x, v * pv.y, cfg.tol.match_tol);
    out.vectors.push_back(std::move(back));
    out.residuals.push_back(result.residuals[i]);
  }
  detail::sort_canonical(out);
  return out;
}

namespace detail {

/// One alternating-maximization pass for |P_D(x (x) y)|^2 (+ optional
/// conjugate-side term |P_E(conj(x) (x) y)|^2).
struct AlternatingSearch {
  const Mat& dbasis;            // 9 x dimD (m*n x dimD in general)
  const Mat* ebasis = nullptr;  // optional conjugate-side basis
  int m, n;

  double objective(const Vec& x, const Vec& y) const {
    const Vec z = tensor(x, y);
    double g = (dbasis.adjoint() * z).squaredNorm();
    if (ebasis) {
      const Vec zc = tensor(x.conjugate(), y);
      g += (ebasis->adjoint() * zc).squaredNorm();
    }
    return g;
  }

  double target() const { return ebasis ? 2.0 : 1.0; }

  /// u_c(b) = sum_a conj(basis_c[(a,b)]) x_a for each basis column c.
  Mat y_forms(const Mat& basis, const Vec& x) const {
    Mat u(n, basis.cols());
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
      for (int b = 0; b < n; ++b) {
        cplx acc(0.0);
        for (int a = 0; a < m; ++a) {
          acc += std::conj(basis(a * n + b, c)) * x(a);
        }
        u(b, c) = acc;
      }
    }
    return u;
  }

  Vec best_y(const Vec& x) const {
    Mat u = y_forms(dbasis, x);
    Mat gy = u.conjugate() * u.transpose();
    if (ebasis) {
      Mat u2 = y_forms(*ebasis, x.conjugate());
      gy += u2.conjugate() * u2.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(gy);
    return es.eigenvectors().col(n - 1);
  }

  Vec best_x(const Vec& y) const {
    if (!ebasis) {
      Mat w(m, dbasis.cols());
      for (Eigen::Index c = 0; c < dbasis.cols(); ++c) {
        for (int a = 0; a < m; ++a) {
          cplx acc(0.0);
          for (int b = 0; b < n; ++b) {
            acc += std::conj(dbasis(a * n + b, c)) * y(b);
          }
          w(a, c) = acc;
        }
      }
      Mat gx = w.conjugate() * w.transpose();
      Eigen::SelfAdjointEigenSolver<Mat> es(gx);
      return es.eigenvectors().col(m - 1);
    }
    // Conjugate-side term makes the form quadratic over the realification of
    // x; build the real symmetric matrix by polarization.
    auto embed = [&](const RVec& r) {
      Vec x(m);
      for (int a = 0; a < m; ++a) x(a) = cplx(r(a), r(m + a));
      return x;
    };
    auto qform = [&](const RVec& r) { return objective(embed(r), y); };
    const int dim = 2 * m;
    RMat h(dim, dim);
    std::vector<double> diag(dim);
    for (int i = 0; i < dim; ++i) {
      RVec e = RVec::Zero(dim);
      e(i) = 1.0;
      diag[i] = qform(e);
      h(i, i) = diag[i];
    }
    for (int i = 0; i < dim; ++i) {
      for (int j = i + 1; j < dim; ++j) {
        RVec e = RVec::Zero(dim);
        e(i) = 1.0;
        e(j) = 1.0;
        const double val = 0.5 * (qform(e) - diag[i] - diag[j]);
        h(i, j) = val;
        h(j, i) = val;
      }
    }
    Eigen::SelfAdjointEigenSolver<RMat> es(h);
    RVec top = es.eigenvectors().col(dim - 1);
    Vec x = embed(top);
    return x.normalized();
  }

  /// Gauss-Newton polish on the stacked complex constraints
  /// D_perp^H (x (x) y) = 0 (and E_perp^H (conj(x) (x) y) = 0).
  void polish(Vec& x, Vec& y, const Mat& dperp, const Mat* eperp,
              int iters) const {
    const int kd = static_cast<int>(dperp.cols());
    const int ke = eperp ? static_cast<int>(eperp->cols()) : 0;
    const int rows = 2 * (kd + ke);
    const int cols = 2 * (m + n);
    for (int it = 0; it < iters; ++it) {
      Eigen::VectorXd f(rows);
      Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(rows, cols);
      int r = 0;
      auto add_block = [&](const Mat& basis, bool conj_x) {
        for (Eigen::Index c = 0; c < basis.cols(); ++c) {
          const Vec xx = conj_x ? Vec(x.conjugate()) : x;
          cplx h(0.0);
          Vec jx = Vec::Zero(m);  // dh/dx (or dh/d conj(x))
          Vec jy = Vec::Zero(n);
          for (int a = 0; a < m; ++a) {
            for (int b = 0; b < n; ++b) {
              const cplx w = std::conj(basis(a * n + b, c));
              h += w * xx(a) * y(b);
              jx(a) += w * y(b);
              jy(b) += w * xx(a);
            }
          }
          f(r) = h.real();
          f(r + 1) = h.imag();
          for (int a = 0; a < m; ++a) {
            const cplx ja = jx(a);
            if (!conj_x) {
              jac(r, a) = ja.real();
              jac(r, m + a) = -ja.imag();
              jac(r + 1, a) = ja.imag();
              jac(r + 1, m + a) = ja.real();
            } else {
              jac(r, a) = ja.real();
              jac(r, m + a) = ja.imag();
              jac(r + 1, a) = ja.imag();
              jac(r + 1, m + a) = -ja.real();
            }
          }
          for (int b = 0; b < n; ++b) {
            const cplx jb = jy(b);
            jac(r, 2 * m + b) = jb.real();
            jac(r, 2 * m + n + b) = -jb.imag();
            jac(r + 1, 2 * m + b) = jb.imag();
            jac(r + 1, 2 * m + n + b) = jb.real();
          }
          r += 2;
        }
      };
      add_block(dperp, false);
      if (eperp) add_block(*eperp, true);
      if (f.norm() < 1e-15) break;
      Eigen::VectorXd step =
          jac.completeOrthogonalDecomposition().solve(f);
      for (int a = 0; a < m; ++a) x(a) -= cplx(step(a), step(m + a));
      for (int b = 0; b < n; ++b) {
        y(b) -= cplx(step(2 * m + b), step(2 * m + n + b));
      }
      x.normalize();
      y.normalize();
      if (step.norm() < 1e-14) break;
    }
  }
};

inline uint64_t mix_seed(uint64_t seed, uint64_t i) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ull * (i + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline LocatorResult multistart_search(const Subspace& d, const Subspace* e,
                                       const LocatorConfig& cfg) {
  const int m = d.m, n = d.n;
  AlternatingSearch search{d.basis, e ? &e->basis : nullptr, m, n};
  Mat dperp = Subspace(d.basis, m, n).orthocomplement();
  Mat eperp;
  if (e) eperp = Subspace(e->basis, m, n).orthocomplement();

  LocatorResult result;
  result.complete = false;
  for (int start = 0; start < cfg.multistart_count; ++start) {
    std::mt19937_64 rng(mix_seed(cfg.rng_seed, static_cast<uint64_t>(start)));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec x(m), y(n);
    for (int a = 0; a < m; ++a) x(a) = cplx(gauss(rng), gauss(rng));
    for (int b = 0; b < n; ++b) y(b) = cplx(gauss(rng), gauss(rng));
    x.normalize();
    y.normalize();

    double prev = -1.0;
    for (int it = 0; it < 200; ++it) {
      y = search.best_y(x);
      x = search.best_x(y);
      const double g = search.objective(x, y);
      if (g - prev < 1e-14) break;
      prev = g;
    }
    if (search.target() - search.objective(x, y) >
        1e4 * cfg.tol.residual_tol * cfg.tol.residual_tol) {
      continue;  // stalled away from a zero of the constraint system
    }
    search.polish(x, y, dperp, e ? &eperp : nullptr, 8);
    double res = d.residual(tensor(x, y));
    if (e) res = std::max(res, e->residual(tensor(x.conjugate(), y)));
    if (res >= cfg.tol.residual_tol) continue;
    ProductVector p(x, y, cfg.tol.match_tol);
    bool dup = false;
    for (const auto& q : result.vectors) {
      if (p.matches(q, std::max(cfg.tol.match_tol, 1e-6))) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      result.vectors.push_back(std::move(p));
      result.residuals.push_back(res);
    }
  }
  sort_canonical(result);
  return result;
}

}  // namespace detail

/// Multi-start alternating-minimization oracle: finds product vectors in D
/// without any exhaustiveness claim (complete is always false).
inline LocatorResult brute_force_products(const Subspace& d,
                                          const LocatorConfig& cfg = {}) {
  if (d.m > 4 || d.n > 4) {
    throw std::invalid_argument("brute_force_products: requires m, n <= 4");
  }
  return detail::multistart_search(d, nullptr, cfg);
}

/// Searches for product vectors x (x) y with x (x) y in D and
/// conj(x) (x) y in E. Numerical multistart search only.
inline LocatorResult find_conjugate_constrained_products(
    const Subspace& d, const Subspace& e, const LocatorConfig& cfg = {}) {
  if (d.m != e.m || d.n != e.n) {
    throw std::invalid_argument("conjugate search: dimension mismatch");
  }
  return detail::multistart_search(d, &e, cfg);
}

}  // namespace sepfaces

#endif  // SEPFACES_LOCATOR_HPP
