#pragma once

// Built-in metric Lie algebras with labelled stationary points. Every algebra
// uses the standard inner product.

#include <cmath>
#include <string>
#include <vector>

#include "geovec/algebra.hpp"
#include "geovec/classify.hpp"
#include "geovec/linalg.hpp"

namespace geovec {

struct LabeledPoint {
  Vector point;
  Status expected = Status::Stable;
  std::string reason;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  MetricLieAlgebra algebra;
  std::vector<LabeledPoint> points;
};

namespace catalog {

using B = MetricLieAlgebra::Bracket;

/// 3-dimensional unimodular algebra in a Milnor frame: [e_i, e_j] = lambda_k e_k cyclically.
inline MetricLieAlgebra milnor(double l1, double l2, double l3) {
  const std::vector<B> bs{{0, 1, {0, 0, l3}}, {0, 2, {0, -l2, 0}}, {1, 2, {l1, 0, 0}}};
  return MetricLieAlgebra::from_brackets(3, bs);
}

/// e1 acting on the abelian ideal span(e2, ..., en) by A: [e1, e_{j+1}] = sum_k A(k, j) e_{k+1}.
inline MetricLieAlgebra semidirect(const Matrix& a) {
  const std::size_t d = a.rows(), n = d + 1;
  std::vector<B> bs;
  for (std::size_t j = 0; j < d; ++j) {
    Vector c(n);
    for (std::size_t k = 0; k < d; ++k) c[k + 1] = a(k, j);
    bs.push_back({0, j + 1, c});
  }
  return MetricLieAlgebra::from_brackets(n, bs);
}

/// 4-dimensional algebra with central e4: [x, y] = S(x cross y) + <l, x cross y> e4 on span(e1, e2, e3).
inline MetricLieAlgebra central_extension(const Matrix& s, const Vector& l) {
  std::vector<B> bs;
  for (const auto& [i, j, k] : detail::kCyclic) {
    Vector c(4);
    for (std::size_t r = 0; r < 3; ++r) c[r] = s(r, k);
    c[3] = l[k];
    if (i < j) {
      bs.push_back({i, j, c});
    } else {
      bs.push_back({j, i, -c});
    }
  }
  return MetricLieAlgebra::from_brackets(4, bs);
}

inline Matrix diag3(double a, double b, double c) {
  Matrix m(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

inline Vector e(std::size_t n, std::size_t i) { return Vector::unit(n, i); }

inline Matrix centreless_example_matrix() {
  Matrix a(3, 3);
  const double v[3][3] = {{1, 1, 2}, {-3, -1, 4}, {-2, 0, 0}};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) a(r, c) = v[r][c];
  return a;
}

}  // namespace catalog

inline std::vector<CatalogEntry> builtin_catalog() {
  using namespace catalog;
  const auto S = Status::Stable;
  const auto U = Status::Unstable;
  const double r2 = std::sqrt(0.5);
  std::vector<CatalogEntry> out;

  out.push_back({"abelian3", "abelian R^3", MetricLieAlgebra::abelian(3), {{e(3, 0), S, "the Euler field vanishes"}}});
  out.push_back({"abelian4", "abelian R^4", MetricLieAlgebra::abelian(4), {{e(4, 0), S, "the Euler field vanishes"}}});

  out.push_back({"so3",
                 "so(3) with bi-invariant metric, lambda = (1, 1, 1)",
                 milnor(1, 1, 1),
                 {{e(3, 0), S, "bi-invariant: every point is stable"},
                  {Vector{1, 2, 3} / std::sqrt(14.0), S, "bi-invariant: every point is stable"}}});

  {
    Matrix s = Matrix::identity(3);
    out.push_back({"so3_plus_r",
                   "so(3) + R with bi-invariant metric",
                   central_extension(s, Vector(3)),
                   {{e(4, 0), S, "bi-invariant: every point is stable"},
                    {e(4, 3), S, "central"},
                    {Vector{1, 1, 0, 1} / std::sqrt(3.0), S, "bi-invariant: every point is stable"}}});
  }

  out.push_back({"so3_stretched",
                 "so(3), lambda = (2, 1, 1)",
                 milnor(2, 1, 1),
                 {{e(3, 0), S, "axis of the simple eigenvalue"},
                  {e(3, 1), U, "plane of the double eigenvalue"},
                  {Vector{0, r2, r2}, U, "plane of the double eigenvalue"}}});

  out.push_back({"heisenberg3",
                 "Heisenberg algebra [e1, e2] = e3",
                 milnor(0, 0, 1),
                 {{e(3, 2), S, "central"}, {e(3, 0), U, "plane orthogonal to the derived algebra"}}});

  out.push_back({"milnor_1_0_-1",
                 "Milnor frame, lambda = (1, 0, -1)",
                 milnor(1, 0, -1),
                 {{e(3, 0), S, "axis of the largest eigenvalue"},
                  {e(3, 2), S, "axis of the smallest eigenvalue"},
                  {e(3, 1), U, "axis of the middle eigenvalue"}}});

  out.push_back({"milnor_1_1_-1",
                 "Milnor frame, lambda = (1, 1, -1)",
                 milnor(1, 1, -1),
                 {{e(3, 2), S, "axis of the simple eigenvalue"},
                  {e(3, 0), U, "plane of the double eigenvalue"},
                  {Vector{r2, r2, 0}, U, "plane of the double eigenvalue"}}});

  out.push_back({"hyperbolic3",
                 "[e1, e2] = e2, [e1, e3] = e3",
                 semidirect(Matrix::identity(2)),
                 {{-e(3, 0), S, "Tr ad_X < 0 with J_X negative definite"}, {e(3, 0), U, "Tr ad_X > 0"}}});

  {
    Matrix a(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = -0.5;
    const Vector cone = Vector{0, 1, std::sqrt(2.0)} / std::sqrt(3.0);
    out.push_back({"nonuni3_saddle",
                   "[e1, e2] = e2, [e1, e3] = -0.5 e3",
                   semidirect(a),
                   {{cone, S, "cone point with sigma2 > 0"}, {e(3, 0), U, "Tr ad_X = Tr A > 0"}}});
  }

  out.push_back({"affine2",
                 "2-dimensional affine algebra [e1, e2] = e2",
                 semidirect(Matrix::identity(1)),
                 {{-e(2, 0), S, "x1 <= 0"}, {e(2, 0), U, "x1 > 0"}, {Vector{-2.5, 0}, S, "x1 <= 0"}}});

  out.push_back({"heisenberg_r",
                 "Heisenberg + R, [e1, e2] = e3",
                 MetricLieAlgebra::from_brackets(4, std::vector<B>{{0, 1, {0, 0, 1, 0}}}),
                 {{e(4, 2), S, "central"}, {e(4, 3), S, "central"}, {e(4, 0), U, "outside the centre"}}});

  out.push_back({"caseB_diag_1_0_-1",
                 "one-dimensional centre, S = diag(1, 0, -1), l = 0",
                 central_extension(diag3(1, 0, -1), Vector(3)),
                 {{e(4, 3), S, "central"},
                  {e(4, 1), U, "mu equal to the middle eigenvalue, sigma2 < 0"},
                  {e(4, 0), S, "mu equal to the largest eigenvalue"},
                  {e(4, 2), S, "mu equal to the smallest eigenvalue"}}});

  out.push_back({"caseB_diag_1_0_-1_l3",
                 "one-dimensional centre, S = diag(1, 0, -1), l = (0, 0, 1)",
                 central_extension(diag3(1, 0, -1), Vector{0, 0, 1}),
                 {{e(4, 3), S, "central"},
                  {e(4, 1), U, "mu equal to the middle eigenvalue"},
                  {e(4, 0), S, "mu equal to the largest eigenvalue"},
                  {Vector{0, 0, 2.0 / 3.0, 1}, U, "mu = 1/2 between eigenvalues"}}});

  out.push_back({"caseB_diag_1_1_-2_l3",
                 "one-dimensional centre, S = diag(1, 1, -2), l = (0, 0, 1)",
                 central_extension(diag3(1, 1, -2), Vector{0, 0, 1}),
                 {{e(4, 3), S, "central"},
                  {e(4, 0), U, "double eigenvalue branch"},
                  {Vector{0, 0, 1, 3}, S, "J_X = 0"},
                  {e(4, 2), S, "simple eigenvalue branch"}}});

  out.push_back({"caseB_rank_one",
                 "one-dimensional centre, S = diag(0, 1, 2), l = (0, 0, 1)",
                 central_extension(diag3(0, 1, 2), Vector{0, 0, 1}),
                 {{e(4, 3), S, "central"}, {Vector{0, 0, 1, -2}, S, "rank J_X = 1 with <X, Z> Tr(J_X J_Z) < 0"}}});

  out.push_back({"caseC_tangent6",
                 "trivial centre, e1 acting on span(e2, e3, e4) by A = [[1,1,2],[-3,-1,4],[-2,0,0]]",
                 semidirect(centreless_example_matrix()),
                 {{e(4, 0), U, "X = x1 e1 with x1 != 0"},
                  {e(4, 3), S, "phi_x = |x|^2 + 8/5 s^6 + ..."}}});

  out.push_back({"nonunimodular4",
                 "hyperbolic3 + R (not unimodular)",
                 MetricLieAlgebra::from_brackets(4, std::vector<B>{{0, 1, {0, 1, 0, 0}}, {0, 2, {0, 0, 1, 0}}}),
                 {{e(4, 3), S, "central"}, {-e(4, 0), Status::Unsupported, "no theorem covers this case"}}});

  return out;
}

inline const CatalogEntry* find_entry(const std::vector<CatalogEntry>& cat, const std::string& name) {
  for (const auto& entry : cat)
    if (entry.name == name) return &entry;
  return nullptr;
}

}  // namespace geovec
