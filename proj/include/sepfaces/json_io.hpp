#ifndef SEPFACES_JSON_IO_HPP
#define SEPFACES_JSON_IO_HPP

#include <json.hpp>

#include "sepfaces/face.hpp"
#include "sepfaces/locator.hpp"
#include "sepfaces/ppt.hpp"
#include "sepfaces/types.hpp"

namespace sepfaces {

using json = nlohmann::json;

inline json to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

inline cplx cplx_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("complex entry must be a [re, im] pair");
  }
  return cplx(j[0].get<double>(), j[1].get<double>());
}

inline json to_json(const Vec& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(to_json(v(i)));
  return arr;
}

inline Vec vec_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("vector must be an array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = cplx_from_json(j[i]);
  }
  return v;
}

inline json to_json(const BipartiteOperator& a) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < a.matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.matrix.cols(); ++j) {
      entries.push_back(to_json(a.matrix(i, j)));
    }
  }
  return json{{"m", a.m}, {"n", a.n}, {"entries", std::move(entries)}};
}

inline BipartiteOperator operator_from_json(const json& j) {
  const int m = j.at("m").get<int>();
  const int n = j.at("n").get<int>();
  const json& entries = j.at("entries");
  const Eigen::Index d = static_cast<Eigen::Index>(m) * n;
  if (static_cast<Eigen::Index>(entries.size()) != d * d) {
    throw std::invalid_argument("entry count does not match (m*n)^2");
  }
  Mat mat(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index jj = 0; jj < d; ++jj) {
      mat(i, jj) = cplx_from_json(entries[static_cast<size_t>(i * d + jj)]);
    }
  }
  return BipartiteOperator(std::move(mat), m, n);
}

inline json to_json(const ProductVector& p) {
  return json{{"x", to_json(p.x)}, {"y", to_json(p.y)}};
}

inline ProductVector product_vector_from_json(const json& j) {
  return ProductVector(vec_from_json(j.at("x")), vec_from_json(j.at("y")));
}

inline json to_json(const Subspace& d) {
  json cols = json::array();
  for (Eigen::Index i = 0; i < d.basis.cols(); ++i) {
    cols.push_back(to_json(Vec(d.basis.col(i))));
  }
  return json{{"m", d.m}, {"n", d.n}, {"basis", std::move(cols)}};
}

inline Subspace subspace_from_json(const json& j) {
  const int m = j.at("m").get<int>();
  const int n = j.at("n").get<int>();
  const json& cols = j.at("basis");
  std::vector<Vec> vs;
  for (const auto& c : cols) vs.push_back(vec_from_json(c));
  return Subspace::span(vs, m, n);
}

inline json to_json(const LocatorResult& r) {
  json vecs = json::array();
  for (const auto& p : r.vectors) vecs.push_back(to_json(p));
  return json{{"vectors", std::move(vecs)},
              {"complete", r.complete},
              {"residuals", r.residuals}};
}

inline json to_json(const ConditionVerdict& v) {
  json out{{"verdict", to_string(v.verdict)}};
  if (v.witness) out["witness"] = to_json(*v.witness);
  return out;
}

inline json to_json(const FaceCertificate& c) {
  json out{{"family_size", c.family_size},
           {"condition_A", c.condition_A},
           {"condition_B", to_json(c.condition_B)},
           {"condition_C", to_json(c.condition_C)},
           {"general_position", c.general_position},
           {"gupb", c.gupb},
           {"cohen_subsets", c.cohen_subsets},
           {"induced", c.induced}};
  if (c.gp_violating_subset) out["gp_violating_subset"] = *c.gp_violating_subset;
  if (c.gupb_violating_partition) {
    out["gupb_violating_partition"] =
        json{{"I", c.gupb_violating_partition->first},
             {"J", c.gupb_violating_partition->second}};
  }
  if (c.simplex_dim) out["simplex_dim"] = *c.simplex_dim;
  return out;
}

inline const char* edge_verdict_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "edge";
    case Verdict::fails:
      return "not_edge";
    default:
      return "undecided";
  }
}

inline json to_json(const EdgeExtraction& e) {
  return json{{"epsilon_star", e.epsilon_star},
              {"eps_positive", e.eps_positive},
              {"eps_ppt_side", e.eps_ppt_side},
              {"boundary_state", to_json(e.boundary_state)},
              {"rank_type", json::array({e.rank_type.first, e.rank_type.second})},
              {"edge", edge_verdict_string(e.edge)}};
}

inline json to_json(const DecompositionSolve& s) {
  json out{{"coefficients",
            std::vector<double>(s.coefficients.data(),
                                s.coefficients.data() + s.coefficients.size())},
           {"residual", s.residual},
           {"feasible", s.feasible},
           {"unique", s.unique}};
  if (s.mu) out["mu"] = *s.mu;
  if (s.dropped_index) out["dropped_index"] = *s.dropped_index;
  return out;
}

}  // namespace sepfaces

#endif  // SEPFACES_JSON_IO_HPP
