#pragma once

// Adapted frames for the classification branches. All functions here expect
// an algebra with identity gram (use orthonormalized() first); returned
// vectors are coordinate vectors of that algebra.

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "geovec/algebra.hpp"
#include "geovec/error.hpp"
#include "geovec/euler.hpp"
#include "geovec/linalg.hpp"

namespace geovec {

namespace detail {

inline void require_orthonormal(const MetricLieAlgebra& alg, const char* what) {
  if (!alg.has_identity_gram())
    throw StructureError(std::string(what) + ": algebra must be expressed in an orthonormal basis");
}

inline constexpr std::array<std::array<std::size_t, 3>, 3> kCyclic{{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}};

}  // namespace detail

/// Orthonormal basis with [b_i, b_j] = lambda_k b_k for cyclic (i, j, k).
struct MilnorFrame {
  std::array<Vector, 3> basis;
  std::array<double, 3> lambda{};  // lambda[0] >= lambda[1] >= lambda[2]
};

/// Left-multiplication operator L with [x, y] = L(x cross y) (columns L e_k = [e_i, e_j]).
inline Matrix cross_operator(const MetricLieAlgebra& alg) {
  Matrix l(3, 3);
  for (const auto& [i, j, k] : detail::kCyclic) l.set_col(k, bracket(alg, Vector::unit(3, i), Vector::unit(3, j)));
  return l;
}

inline MilnorFrame milnor_frame(const MetricLieAlgebra& alg) {
  if (alg.dim() != 3) throw DimensionError("milnor_frame: algebra must be 3-dimensional");
  detail::require_orthonormal(alg, "milnor_frame");
  const Matrix l = cross_operator(alg);
  if (max_abs(l - l.transpose()) > alg.tolerance())
    throw NotUnimodular("milnor_frame: cross operator is not symmetric (algebra is not unimodular)");
  const SymmetricEigen eig = symmetric_eigen(l);
  Matrix p = eig.vectors;
  if (determinant(p) < 0.0) p.set_col(0, -p.col(0));
  MilnorFrame f;
  for (std::size_t k = 0; k < 3; ++k) {
    f.basis[k] = p.col(k);
    f.lambda[k] = eig.values[k];
  }
  return f;
}

/// Codimension-one abelian ideal a with unit normal e1 and A = ad(e1) restricted to a.
struct IdealSplit {
  Vector e1;
  std::vector<Vector> ideal_basis;
  Matrix a;  // a(k, j) = <a_k, [e1, a_j]>

  Vector ideal_coordinates(const Vector& x) const {
    Vector c(ideal_basis.size());
    for (std::size_t k = 0; k < ideal_basis.size(); ++k) c[k] = dot(ideal_basis[k], x);
    return c;
  }
  Vector from_ideal(const Vector& coords) const {
    Vector v(e1.size());
    for (std::size_t k = 0; k < ideal_basis.size(); ++k) v += coords[k] * ideal_basis[k];
    return v;
  }
};

namespace detail {

inline IdealSplit finish_split(const MetricLieAlgebra& alg, const Subspace& ideal) {
  const double tol = alg.tolerance();
  for (std::size_t p = 0; p < ideal.dim(); ++p)
    for (std::size_t q = p + 1; q < ideal.dim(); ++q)
      if (max_abs(bracket(alg, ideal.basis[p], ideal.basis[q])) > tol)
        throw StructureError("candidate ideal is not abelian");
  const Subspace normal = orthogonal_complement(alg, ideal);
  if (normal.dim() != 1) throw StructureError("candidate ideal does not have codimension one");
  IdealSplit s{normal.basis[0], ideal.basis, Matrix(ideal.dim(), ideal.dim())};
  for (std::size_t j = 0; j < ideal.dim(); ++j) {
    const Vector image = bracket(alg, s.e1, ideal.basis[j]);
    if (distance(alg, ideal, image) > tol) throw StructureError("candidate subspace is not an ideal");
    for (std::size_t k = 0; k < ideal.dim(); ++k) s.a(k, j) = dot(ideal.basis[k], image);
  }
  return s;
}

}  // namespace detail

/// Non-unimodular dim 2/3: a = kernel of the trace form, e1 oriented so Tr A > 0.
/// Unimodular centreless dim 4: a = g' (dim 3) or g' + span(X) with [X, g'] = 0 (dim 2).
inline IdealSplit codim1_split(const MetricLieAlgebra& alg) {
  detail::require_orthonormal(alg, "codim1_split");
  const std::size_t n = alg.dim();
  const double tol = alg.tolerance();
  if ((n == 2 || n == 3) && !is_unimodular(alg)) {
    const Vector t = trace_form(alg);
    const Subspace normal{n, {t / norm(t)}};
    Subspace ideal = orthogonal_complement(alg, normal);
    IdealSplit s = detail::finish_split(alg, ideal);
    if (trace(s.a) < 0.0) {
      s.e1 = -s.e1;
      s.a = -s.a;
    }
    return s;
  }
  if (n != 4 || !is_unimodular(alg))
    throw StructureError("codim1_split: needs a non-unimodular algebra of dim 2 or 3, or a unimodular one of dim 4");
  if (center(alg).dim() != 0) throw StructureError("codim1_split: 4-dimensional case requires a trivial centre");

  const Subspace derived = derived_algebra(alg);
  Subspace ideal;
  if (derived.dim() == 3) {
    ideal = derived;
  } else if (derived.dim() == 2) {
    const Subspace comp = orthogonal_complement(alg, derived);
    // alpha [u, g_k] + beta [v, g_k] = 0 for both derived basis vectors g_k.
    Matrix m(2 * n, 2);
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t c = 0; c < 2; ++c) {
        const Vector b = bracket(alg, comp.basis[c], derived.basis[k]);
        for (std::size_t r = 0; r < n; ++r) m(k * n + r, c) = b[r];
      }
    const auto ker = kernel(m, base_tolerance());
    if (ker.empty()) throw StructureError("codim1_split: no complement vector commutes with g'");
    const Vector x = ker[0][0] * comp.basis[0] + ker[0][1] * comp.basis[1];
    std::vector<Vector> span{derived.basis[0], derived.basis[1], x};
    ideal = canonical_subspace(alg, span, 1e-8);
  } else {
    throw StructureError("codim1_split: derived algebra of dimension " + std::to_string(derived.dim()) +
                         " admits no 3-dimensional abelian ideal in a centreless algebra");
  }
  IdealSplit s = detail::finish_split(alg, ideal);
  if (std::abs(trace(s.a)) > tol) throw StructureError("codim1_split: Tr A != 0");
  if (std::abs(determinant(s.a)) <= tol) throw StructureError("codim1_split: det A == 0");
  return s;
}

/// For a 3x3 A with char poly l^3 + c2 l^2 + c1 l + c0: false iff a root lies
/// on the imaginary axis, i.e. c0 == 0, or c0 == c1 c2 with c1 > 0.
inline bool no_imaginary_eigenvalues(const Matrix& a, double tol = kDefaultTolerance) {
  if (a.rows() != 3 || a.cols() != 3) throw DimensionError("no_imaginary_eigenvalues: A must be 3x3");
  const auto s = sigma_k(a);
  const double c2 = -s[0], c1 = s[1], c0 = -s[2];
  const double scale = std::max(1.0, norm_inf(a));
  const double t3 = tol * scale * scale * scale;
  if (std::abs(c0) <= t3) return false;
  if (std::abs(c0 - c1 * c2) <= t3 && c1 > tol * scale * scale) return false;
  return true;
}

/// Unimodular 4D algebra with one-dimensional centre written as
/// [x, y] = S(x cross y) + <l, x cross y> e4 on m = z^perp.
struct CenterSplit4D {
  Vector e4;
  std::array<Vector, 3> m_basis;
  Matrix s;  // symmetric, in m_basis coordinates
  Vector l;  // in m_basis coordinates

  Vector m_coordinates(const Vector& x) const { return {dot(m_basis[0], x), dot(m_basis[1], x), dot(m_basis[2], x)}; }
  Vector from_m(const Vector& coords, double x4) const {
    return coords[0] * m_basis[0] + coords[1] * m_basis[1] + coords[2] * m_basis[2] + x4 * e4;
  }
};

inline CenterSplit4D center_split_4d(const MetricLieAlgebra& alg) {
  detail::require_orthonormal(alg, "center_split_4d");
  if (alg.dim() != 4) throw DimensionError("center_split_4d: algebra must be 4-dimensional");
  if (!is_unimodular(alg)) throw NotUnimodular("center_split_4d: algebra is not unimodular");
  const Subspace z = center(alg);
  if (z.dim() != 1) throw StructureError("center_split_4d: centre must be one-dimensional");
  const Subspace m = orthogonal_complement(alg, z);
  const double tol = alg.tolerance();

  CenterSplit4D cs{z.basis[0], {m.basis[0], m.basis[1], m.basis[2]}, Matrix(3, 3), Vector(3)};
  for (const auto& [i, j, k] : detail::kCyclic) {
    const Vector b = bracket(alg, cs.m_basis[i], cs.m_basis[j]);
    const Vector mc = cs.m_coordinates(b);
    for (std::size_t r = 0; r < 3; ++r) cs.s(r, k) = mc[r];
    cs.l[k] = dot(cs.e4, b);
  }
  if (max_abs(cs.s - cs.s.transpose()) > tol) throw StructureError("center_split_4d: S is not symmetric");
  if (max_abs(cs.s) <= tol) throw DegenerateForm("center_split_4d: S = 0 would enlarge the centre");
  if (numerical_rank(cs.s, base_tolerance()) == 1) {
    const SymmetricEigen eig = symmetric_eigen(cs.s);
    const std::size_t top = std::abs(eig.values[0]) >= std::abs(eig.values[2]) ? 0 : 2;
    const Vector u = eig.vectors.col(top);
    if (norm(cs.l - dot(u, cs.l) * u) <= tol)
      throw DegenerateForm("center_split_4d: rank S = 1 with l in image(S) would enlarge the centre");
  }
  return cs;
}

/// Least-squares mu with (S - mu) x = -x4 l for X = x + x4 e4, or nullopt when
/// x = 0 or the residual exceeds tol * |X|.
inline std::optional<double> recover_mu(const CenterSplit4D& cs, const Vector& point, double tol) {
  const Vector x = cs.m_coordinates(point);
  const double x4 = dot(cs.e4, point);
  const double xx = dot(x, x);
  if (xx <= tol * tol) return std::nullopt;
  const Vector w = cs.s * x + x4 * cs.l;
  const double mu = dot(x, w) / xx;
  if (norm(w - mu * x) > tol * std::max(1.0, norm(point))) return std::nullopt;
  return mu;
}

/// Taylor coefficients of phi_x(s) = |exp(s A^T) x|^2.
struct PhiCoefficients {
  std::vector<double> c;  // c[0..N]
};

/// c_N = sum_j <A^{N-j} (A^T)^j x, x> / (j! (N-j)!) = sum_j <u_j, u_{N-j}> / (j!(N-j)!), u_j = (A^T)^j x.
inline PhiCoefficients phi_taylor(const Matrix& a, const Vector& x, std::size_t order) {
  if (!a.square() || a.rows() != x.size()) throw DimensionError("phi_taylor: A must be square and match x");
  if (order > 12) throw DimensionError("phi_taylor: order must be <= 12");
  const Matrix at = a.transpose();
  std::vector<Vector> u{x};
  for (std::size_t j = 1; j <= order; ++j) u.push_back(at * u.back());
  std::vector<double> fact(order + 1, 1.0);
  for (std::size_t j = 1; j <= order; ++j) fact[j] = fact[j - 1] * static_cast<double>(j);
  PhiCoefficients out;
  for (std::size_t big = 0; big <= order; ++big) {
    double s = 0.0;
    for (std::size_t j = 0; j <= big; ++j) s += dot(u[j], u[big - j]) / (fact[j] * fact[big - j]);
    out.c.push_back(s);
  }
  return out;
}

/// exp(s A) by scaling and squaring around a Taylor series.
inline Matrix matrix_exp(const Matrix& a, double s) {
  if (!a.square()) throw DimensionError("matrix_exp: matrix must be square");
  const std::size_t n = a.rows();
  Matrix m = s * a;
  const double nrm = norm_inf(m);
  int squarings = 0;
  if (nrm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
    m *= std::ldexp(1.0, -squarings);
  }
  Matrix sum = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  for (int k = 1; k < 64; ++k) {
    term = term * m;
    term *= 1.0 / static_cast<double>(k);
    sum += term;
    if (norm_inf(term) < 1e-16 * norm_inf(sum)) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

/// phi_x(s) evaluated through the matrix exponential.
inline double phi_value(const Matrix& a, const Vector& x, double s) {
  const Vector y = matrix_exp(a.transpose(), s) * x;
  return dot(y, y);
}

}  // namespace geovec
