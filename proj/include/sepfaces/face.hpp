#ifndef SEPFACES_FACE_HPP
#define SEPFACES_FACE_HPP

#include <optional>

#include "sepfaces/locator.hpp"
#include "sepfaces/tensor.hpp"
#include "sepfaces/types.hpp"

namespace sepfaces {

enum class Verdict { holds, fails, undecided };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::fails:
      return "fails";
    default:
      return "undecided";
  }
}

struct ConditionVerdict {
  Verdict verdict = Verdict::undecided;
  std::optional<ProductVector> witness;  // foreign product vector on failure
};

/// Aggregated certificate for a product-vector family P: condition (A)
/// (linear independence of the pure states), (B) (span contains no foreign
/// product vectors), (C) (no foreign product vector with partial conjugate in
/// the conjugate span), plus the combinatorial predicates.
struct FaceCertificate {
  int family_size = 0;
  bool condition_A = false;
  ConditionVerdict condition_B;
  ConditionVerdict condition_C;
  bool general_position = false;
  std::optional<std::vector<int>> gp_violating_subset;
  bool gupb = false;
  std::optional<std::pair<std::vector<int>, std::vector<int>>>
      gupb_violating_partition;
  std::vector<std::vector<int>> cohen_subsets;
  std::optional<int> simplex_dim;  // family_size - 1 when A holds
  bool induced = false;            // A and C both hold
};

namespace detail {

inline int complex_rank(const Mat& cols, double rank_rel_tol = 1e-9) {
  if (cols.cols() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(cols);
  const auto& sv = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > std::max(rank_rel_tol * sv(0), 1e-12)) ++r;
  }
  return r;
}

inline Mat stack_factors(const std::vector<ProductVector>& family,
                         const std::vector<int>& idx, bool x_side) {
  const Eigen::Index rows = x_side ? family[0].x.size() : family[0].y.size();
  Mat out(rows, static_cast<Eigen::Index>(idx.size()));
  for (size_t i = 0; i < idx.size(); ++i) {
    out.col(static_cast<Eigen::Index>(i)) =
        x_side ? family[static_cast<size_t>(idx[i])].x
               : family[static_cast<size_t>(idx[i])].y;
  }
  return out;
}

inline void require_common_dims(const std::vector<ProductVector>& family) {
  if (family.empty()) throw std::invalid_argument("empty product family");
  for (const auto& p : family) {
    if (p.m() != family[0].m() || p.n() != family[0].n()) {
      throw std::invalid_argument("family members have mismatched dimensions");
    }
  }
}

inline bool parallel_to_family(const ProductVector& p,
                               const std::vector<ProductVector>& family,
                               double match_tol) {
  for (const auto& q : family) {
    if (p.matches(q, match_tol)) return true;
  }
  return false;
}

constexpr int kMaxEnumerationSize = 20;

}  // namespace detail

/// General position: every subset of at most m of the x's (resp. n of the
/// y's) is linearly independent. On failure, returns the lexicographically
/// first violating subset.
inline std::pair<bool, std::optional<std::vector<int>>> is_general_position(
    const std::vector<ProductVector>& family) {
  detail::require_common_dims(family);
  const int k = static_cast<int>(family.size());
  const int m = family[0].m();
  const int n = family[0].n();
  if (k > detail::kMaxEnumerationSize) {
    throw std::invalid_argument("family too large for subset enumeration");
  }
  // Subsets in lexicographic order: increasing size, then increasing indices.
  std::vector<std::vector<int>> subsets;
  for (int size = 2; size <= std::max(m, n); ++size) {
    std::vector<int> idx(static_cast<size_t>(size));
    // iterative combinations in lexicographic order
    for (int i = 0; i < size; ++i) idx[static_cast<size_t>(i)] = i;
    if (size > k) break;
    while (true) {
      subsets.push_back(idx);
      int pos = size - 1;
      while (pos >= 0 && idx[static_cast<size_t>(pos)] == k - size + pos) --pos;
      if (pos < 0) break;
      ++idx[static_cast<size_t>(pos)];
      for (int j = pos + 1; j < size; ++j) {
        idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
      }
    }
  }
  for (const auto& sub : subsets) {
    const int size = static_cast<int>(sub.size());
    if (size <= m &&
        detail::complex_rank(detail::stack_factors(family, sub, true)) < size) {
      return {false, sub};
    }
    if (size <= n &&
        detail::complex_rank(detail::stack_factors(family, sub, false)) <
            size) {
      return {false, sub};
    }
  }
  return {true, std::nullopt};
}

/// Generalized unextendible product basis via the partition criterion: for
/// every split I | J of the index set, {x_i : i in I} spans C^m or
/// {y_j : j in J} spans C^n.
inline std::pair<bool,
                 std::optional<std::pair<std::vector<int>, std::vector<int>>>>
is_gupb(const std::vector<ProductVector>& family) {
  detail::require_common_dims(family);
  const int k = static_cast<int>(family.size());
  const int m = family[0].m();
  const int n = family[0].n();
  if (k < m + n - 1) {
    throw std::invalid_argument("gupb criterion requires at least m+n-1 vectors");
  }
  if (k > detail::kMaxEnumerationSize) {
    throw std::invalid_argument("family too large for partition enumeration");
  }
  for (uint32_t mask = 0; mask < (1u << k); ++mask) {
    std::vector<int> iset, jset;
    for (int i = 0; i < k; ++i) {
      if (mask & (1u << i)) {
        iset.push_back(i);
      } else {
        jset.push_back(i);
      }
    }
    const bool x_spans =
        detail::complex_rank(detail::stack_factors(family, iset, true)) == m;
    const bool y_spans =
        detail::complex_rank(detail::stack_factors(family, jset, false)) == n;
    if (!x_spans && !y_spans) {
      return {false, std::make_pair(std::move(iset), std::move(jset))};
    }
  }
  return {true, std::nullopt};
}

/// Condition (A): the pure product states |z_i><z_i| are linearly
/// independent over the reals.
inline bool pure_states_independent(const std::vector<ProductVector>& family,
                                    double rank_rel_tol = 1e-9) {
  detail::require_common_dims(family);
  const int k = static_cast<int>(family.size());
  RMat rows(k, family[0].m() * family[0].n() * family[0].m() * family[0].n());
  for (int i = 0; i < k; ++i) {
    rows.row(i) = realify(pure_state(family[static_cast<size_t>(i)]));
  }
  Eigen::JacobiSVD<RMat> svd(rows);
  const auto& sv = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > std::max(rank_rel_tol * sv(0), 1e-12)) ++r;
  }
  return r == k;
}

/// Condition (B): the span of the family contains no product vector beyond
/// the family itself (up to phase). Degenerate spans carry infinitely many
/// product vectors and therefore fail; a witness is sought with the oracle.
inline ConditionVerdict check_condition_B(
    const std::vector<ProductVector>& family, const LocatorConfig& cfg = {}) {
  detail::require_common_dims(family);
  Subspace d = Subspace::span_of_products(family, family[0].m(), family[0].n(),
                                          cfg.tol.rank_rel_tol);
  ConditionVerdict out;
  const double par_tol = std::max(cfg.tol.match_tol, 1e-6);
  bool degenerate = d.dim() >= 6;  // positive-dimensional family guaranteed
  if (!degenerate) {
    try {
      LocatorResult res = find_product_vectors(d, cfg);
      for (const auto& p : res.vectors) {
        if (!detail::parallel_to_family(p, family, par_tol)) {
          out.verdict = Verdict::fails;
          out.witness = p;
          return out;
        }
      }
      out.verdict = res.complete ? Verdict::holds : Verdict::undecided;
      return out;
    } catch (const DegeneratePencilError&) {
      degenerate = true;
    }
  }
  // Infinitely many product vectors in the span: the family cannot exhaust
  // them, so (B) fails; look for a concrete witness.
  out.verdict = Verdict::fails;
  LocatorResult oracle = brute_force_products(d, cfg);
  for (const auto& p : oracle.vectors) {
    if (!detail::parallel_to_family(p, family, par_tol)) {
      out.witness = p;
      break;
    }
  }
  return out;
}

/// Condition (C): every product vector in span(P) whose partial conjugate
/// lies in span of the partial conjugates of P is parallel to a member of P.
inline ConditionVerdict check_condition_C(
    const std::vector<ProductVector>& family, const LocatorConfig& cfg = {}) {
  detail::require_common_dims(family);
  const int m = family[0].m();
  const int n = family[0].n();
  Subspace d = Subspace::span_of_products(family, m, n, cfg.tol.rank_rel_tol);
  std::vector<ProductVector> conj_family;
  conj_family.reserve(family.size());
  for (const auto& p : family) {
    conj_family.push_back(partial_conjugate(p, cfg.tol.match_tol));
  }
  Subspace e =
      Subspace::span_of_products(conj_family, m, n, cfg.tol.rank_rel_tol);
  ConditionVerdict out;
  const double par_tol = std::max(cfg.tol.match_tol, 1e-6);
  bool exhaustive = false;
  std::vector<ProductVector> candidates;
  if (m == 3 && n == 3 && d.dim() < 6) {
    try {
      LocatorResult res = find_product_vectors(d, cfg);
      exhaustive = res.complete;
      candidates = res.vectors;
    } catch (const DegeneratePencilError&) {
      exhaustive = false;
    }
  }
  if (!exhaustive && candidates.empty()) {
    // Positive-dimensional family or non-3x3 case: search directly for a
    // product vector with the conjugate-side constraint imposed.
    LocatorResult oracle = find_conjugate_constrained_products(d, e, cfg);
    for (const auto& p : oracle.vectors) {
      if (!detail::parallel_to_family(p, family, par_tol)) {
        out.verdict = Verdict::fails;
        out.witness = p;
        return out;
      }
    }
    // Evidence-based verdict: the family members themselves belong to the
    // test set, so an empty search means the oracle failed to converge.
    out.verdict = oracle.vectors.empty() ? Verdict::undecided : Verdict::holds;
    return out;
  }
  for (const auto& p : candidates) {
    if (detail::parallel_to_family(p, family, par_tol)) continue;
    const Vec conj_comp = tensor(p.x.conjugate(), p.y);
    if (e.residual(conj_comp) < cfg.tol.residual_tol) {
      out.verdict = Verdict::fails;
      out.witness = p;
      return out;
    }
  }
  out.verdict = exhaustive ? Verdict::holds : Verdict::undecided;
  return out;
}

/// All index subsets I with |I| >= 2 and
/// dim span{x_i : i in I} + dim span{y_i : i in I} <= |I| + 1.
inline std::vector<std::vector<int>> cohen_subsets(
    const std::vector<ProductVector>& family) {
  detail::require_common_dims(family);
  const int k = static_cast<int>(family.size());
  if (k < 2) throw std::invalid_argument("cohen_subsets: need at least 2 vectors");
  if (k > detail::kMaxEnumerationSize) {
    throw std::invalid_argument("family too large for subset enumeration");
  }
  std::vector<std::vector<int>> out;
  for (uint32_t mask = 0; mask < (1u << k); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < k; ++i) {
      if (mask & (1u << i)) idx.push_back(i);
    }
    if (idx.size() < 2) continue;
    const int dx = detail::complex_rank(detail::stack_factors(family, idx, true));
    const int dy =
        detail::complex_rank(detail::stack_factors(family, idx, false));
    if (dx + dy <= static_cast<int>(idx.size()) + 1) out.push_back(idx);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

inline FaceCertificate certify_simplicial_face(
    const std::vector<ProductVector>& family, const LocatorConfig& cfg = {}) {
  detail::require_common_dims(family);
  FaceCertificate cert;
  cert.family_size = static_cast<int>(family.size());
  cert.condition_A = pure_states_independent(family, cfg.tol.rank_rel_tol);
  if (family[0].m() == 3 && family[0].n() == 3) {
    cert.condition_B = check_condition_B(family, cfg);
  } else {
    cert.condition_B.verdict = Verdict::undecided;
  }
  cert.condition_C = check_condition_C(family, cfg);
  auto gp = is_general_position(family);
  cert.general_position = gp.first;
  cert.gp_violating_subset = gp.second;
  const int need = family[0].m() + family[0].n() - 1;
  if (cert.family_size >= need) {
    auto gb = is_gupb(family);
    cert.gupb = gb.first;
    cert.gupb_violating_partition = gb.second;
  }
  if (cert.family_size >= 2) cert.cohen_subsets = cohen_subsets(family);
  if (cert.condition_A) cert.simplex_dim = cert.family_size - 1;
  cert.induced = cert.condition_A && cert.condition_C.verdict == Verdict::holds;
  return cert;
}

/// 2 (x) n test for a general-position family of n+1 vectors: writing each
/// x_k (k >= 3) in the basis (x_1, x_2) as (a_k1, a_k2), the products
/// a_{n+1,1} a_{k,2} conj(a_{n+1,2} a_{k,1}) must all be non-real.
inline bool check_2xn_condition(const std::vector<ProductVector>& family,
                                const ToleranceConfig& tol = {}) {
  detail::require_common_dims(family);
  const int m = family[0].m();
  const int n = family[0].n();
  const int k = static_cast<int>(family.size());
  (void)n;
  if (m != 2 || k < 3) {
    throw std::invalid_argument("check_2xn_condition: need >= 3 vectors in 2xn");
  }
  if (!is_general_position(family).first) {
    throw std::invalid_argument("check_2xn_condition: family not in general position");
  }
  Mat basis(2, 2);
  basis.col(0) = family[0].x;
  basis.col(1) = family[1].x;
  auto coords = [&](int i) {
    return Eigen::Vector2cd(
        basis.colPivHouseholderQr().solve(family[static_cast<size_t>(i)].x));
  };
  const Eigen::Vector2cd last = coords(k - 1);
  for (int i = 2; i < k - 1; ++i) {
    const Eigen::Vector2cd a = coords(i);
    const cplx prod = last(0) * a(1) * std::conj(last(1) * a(0));
    if (std::abs(prod.imag()) <= tol.residual_tol) return false;
  }
  return true;
}

}  // namespace sepfaces

#endif  // SEPFACES_FACE_HPP
