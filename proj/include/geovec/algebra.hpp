#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geovec/error.hpp"
#include "geovec/linalg.hpp"

namespace geovec {

/// Environment variable overriding the base tolerance (a positive real).
inline constexpr const char* kToleranceEnv = "GEOVEC_TOLERANCE";
inline constexpr double kDefaultTolerance = 1e-9;

/// Base relative tolerance: 1e-9 unless GEOVEC_TOLERANCE holds a positive number.
inline double base_tolerance() {
  static const double tol = [] {
    if (const char* s = std::getenv(kToleranceEnv)) {
      char* end = nullptr;
      const double v = std::strtod(s, &end);
      if (end != s && std::isfinite(v) && v > 0.0) return v;
    }
    return kDefaultTolerance;
  }();
  return tol;
}

/// A Lie algebra with an inner product, given by structure constants
/// [e_i, e_j] = sum_k c(i,j,k) e_k and Gram matrix gram(i,j) = <e_i, e_j>.
class MetricLieAlgebra {
 public:
  /// One defining bracket, 0-based, i < j.
  struct Bracket {
    std::size_t i = 0;
    std::size_t j = 0;
    Vector coeffs;
  };

  /// Dense constants indexed c[(i*n + j)*n + k]; not checked for antisymmetry
  /// (validate() reports it).
  MetricLieAlgebra(std::size_t n, std::vector<double> constants, Matrix gram)
      : n_(n), c_(std::move(constants)), gram_(std::move(gram)) {
    if (n == 0) throw DimensionError("algebra dimension must be positive");
    if (c_.size() != n * n * n) throw DimensionError("structure constant tensor must have n^3 entries");
    if (gram_.rows() != n || gram_.cols() != n) throw DimensionError("gram must be n x n");
    if (determinant(gram_) != 0.0) gram_inv_ = inverse(gram_);
    double scale = std::max(1.0, norm_inf(gram_));
    for (double x : c_) scale = std::max(scale, std::abs(x));
    tol_ = base_tolerance() * scale;
  }

  /// Brackets for i < j; antisymmetric partners are filled in, unspecified pairs are zero.
  static MetricLieAlgebra from_brackets(std::size_t n, std::span<const Bracket> brackets,
                                        std::optional<Matrix> gram = std::nullopt) {
    std::vector<double> c(n * n * n, 0.0);
    for (const Bracket& b : brackets) {
      if (b.i >= b.j) throw DimensionError("bracket indices must satisfy i < j");
      if (b.j >= n) throw DimensionError("bracket index out of range");
      if (b.coeffs.size() != n) throw DimensionError("bracket coefficient length must equal dim");
      for (std::size_t k = 0; k < n; ++k) {
        c[(b.i * n + b.j) * n + k] = b.coeffs[k];
        c[(b.j * n + b.i) * n + k] = -b.coeffs[k];
      }
    }
    return MetricLieAlgebra(n, std::move(c), gram.value_or(Matrix::identity(n)));
  }

  static MetricLieAlgebra abelian(std::size_t n) {
    return MetricLieAlgebra(n, std::vector<double>(n * n * n, 0.0), Matrix::identity(n));
  }

  std::size_t dim() const noexcept { return n_; }
  double constant(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * n_ + j) * n_ + k]; }
  const std::vector<double>& constants() const noexcept { return c_; }
  const Matrix& gram() const noexcept { return gram_; }
  const Matrix& gram_inverse() const {
    if (!gram_inv_) throw StructureError("gram matrix is singular");
    return *gram_inv_;
  }
  /// Scaled zero threshold: base tolerance * max(1, max|c|, ||gram||_inf).
  double tolerance() const noexcept { return tol_; }

  bool has_identity_gram() const {
    return max_abs(gram_ - Matrix::identity(n_)) <= tol_;
  }

  /// Nonzero brackets with i < j.
  std::vector<Bracket> brackets() const {
    std::vector<Bracket> out;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) {
        Vector v(n_);
        bool nonzero = false;
        for (std::size_t k = 0; k < n_; ++k) {
          v[k] = constant(i, j, k);
          nonzero = nonzero || v[k] != 0.0;
        }
        if (nonzero) out.push_back({i, j, std::move(v)});
      }
    return out;
  }

 private:
  std::size_t n_;
  std::vector<double> c_;
  Matrix gram_;
  std::optional<Matrix> gram_inv_;
  double tol_ = kDefaultTolerance;
};

namespace detail {
inline void check_dim(const MetricLieAlgebra& alg, const Vector& v, const char* what) {
  if (v.size() != alg.dim())
    throw DimensionError(std::string(what) + ": expected length " + std::to_string(alg.dim()) + ", got " +
                         std::to_string(v.size()));
}
}  // namespace detail

inline double inner(const MetricLieAlgebra& alg, const Vector& u, const Vector& v) {
  detail::check_dim(alg, u, "inner");
  detail::check_dim(alg, v, "inner");
  return dot(u, alg.gram() * v);
}

inline double norm(const MetricLieAlgebra& alg, const Vector& u) { return std::sqrt(std::max(0.0, inner(alg, u, u))); }

inline Vector bracket(const MetricLieAlgebra& alg, const Vector& x, const Vector& y) {
  detail::check_dim(alg, x, "bracket");
  detail::check_dim(alg, y, "bracket");
  const std::size_t n = alg.dim();
  Vector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const double w = x[i] * y[j];
      if (w == 0.0) continue;
      for (std::size_t k = 0; k < n; ++k) out[k] += w * alg.constant(i, j, k);
    }
  }
  return out;
}

/// Matrix of Y -> [X, Y].
inline Matrix ad(const MetricLieAlgebra& alg, const Vector& x) {
  detail::check_dim(alg, x, "ad");
  const std::size_t n = alg.dim();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) m(k, j) += x[i] * alg.constant(i, j, k);
  }
  return m;
}

/// Metric adjoint of ad(X): gram^{-1} ad(X)^T gram.
inline Matrix ad_t(const MetricLieAlgebra& alg, const Vector& x) {
  return alg.gram_inverse() * ad(alg, x).transpose() * alg.gram();
}

/// t_i = Tr ad(e_i); the trace form is X -> <t, X> (Euclidean pairing of coordinates).
inline Vector trace_form(const MetricLieAlgebra& alg) {
  const std::size_t n = alg.dim();
  Vector t(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i] += alg.constant(i, j, j);
  return t;
}

/// A subspace given by a basis orthonormal under the algebra's gram.
struct Subspace {
  std::size_t ambient = 0;
  std::vector<Vector> basis;
  std::size_t dim() const noexcept { return basis.size(); }
};

/// Orthonormalize `vectors` under the gram, dropping any whose residual falls
/// below `drop_below` (absolute). Two passes of modified Gram-Schmidt.
inline std::vector<Vector> orthonormalize(const MetricLieAlgebra& alg, std::span<const Vector> vectors,
                                          double drop_below) {
  std::vector<Vector> out;
  for (const Vector& v : vectors) {
    Vector r = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& q : out) r -= inner(alg, q, r) * q;
    const double len = norm(alg, r);
    if (len > drop_below && out.size() < alg.dim()) out.push_back(r / len);
  }
  return out;
}

inline Vector project(const MetricLieAlgebra& alg, const Subspace& s, const Vector& v) {
  Vector p(alg.dim());
  for (const Vector& q : s.basis) p += inner(alg, q, v) * q;
  return p;
}

inline double distance(const MetricLieAlgebra& alg, const Subspace& s, const Vector& v) {
  return norm(alg, v - project(alg, s, v));
}

/// Re-express the subspace spanned by `spanning` in a canonical orthonormal
/// basis: Gram-Schmidt over the projections of e_1, ..., e_n in order. This
/// returns coordinate vectors whenever the subspace is coordinate-aligned.
inline Subspace canonical_subspace(const MetricLieAlgebra& alg, std::span<const Vector> spanning,
                                   double drop_below) {
  const std::size_t n = alg.dim();
  Subspace raw{n, orthonormalize(alg, spanning, drop_below)};
  std::vector<Vector> projections;
  for (std::size_t i = 0; i < n; ++i) projections.push_back(project(alg, raw, Vector::unit(n, i)));
  std::vector<Vector> basis;
  for (const Vector& p : projections) {
    if (basis.size() == raw.dim()) break;
    Vector r = p;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& q : basis) r -= inner(alg, q, r) * q;
    const double len = norm(alg, r);
    if (len > 1e-8) basis.push_back(r / len);
  }
  return {n, std::move(basis)};
}

inline Subspace orthogonal_complement(const MetricLieAlgebra& alg, const Subspace& s) {
  const std::size_t n = alg.dim();
  std::vector<Vector> candidates;
  for (std::size_t i = 0; i < n; ++i) {
    const Vector e = Vector::unit(n, i);
    candidates.push_back(e - project(alg, s, e));
  }
  return canonical_subspace(alg, candidates, 1e-8);
}

struct ValidationReport {
  double max_antisymmetry_residual = 0.0;
  double max_jacobi_residual = 0.0;
  double max_gram_asymmetry = 0.0;
  double min_gram_eigenvalue = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::vector<std::string> failures;
};

inline ValidationReport validate(const MetricLieAlgebra& alg) {
  const std::size_t n = alg.dim();
  ValidationReport r;
  r.tolerance = alg.tolerance();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        r.max_antisymmetry_residual =
            std::max(r.max_antisymmetry_residual, std::abs(alg.constant(i, j, k) + alg.constant(j, i, k)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const Vector x = Vector::unit(n, a), y = Vector::unit(n, b), z = Vector::unit(n, c);
        const Vector jac = bracket(alg, bracket(alg, x, y), z) + bracket(alg, bracket(alg, y, z), x) +
                           bracket(alg, bracket(alg, z, x), y);
        r.max_jacobi_residual = std::max(r.max_jacobi_residual, max_abs(jac));
      }
  r.max_gram_asymmetry = max_abs(alg.gram() - alg.gram().transpose());
  const SymmetricEigen eig = symmetric_eigen(alg.gram());
  r.min_gram_eigenvalue = eig.values[n - 1];

  if (r.max_antisymmetry_residual > r.tolerance) r.failures.push_back("structure constants are not antisymmetric");
  if (r.max_jacobi_residual > r.tolerance) r.failures.push_back("Jacobi identity fails");
  if (r.max_gram_asymmetry > r.tolerance) r.failures.push_back("gram matrix is not symmetric");
  if (!(r.min_gram_eigenvalue > r.tolerance)) r.failures.push_back("gram matrix is not positive definite");
  r.passed = r.failures.empty();
  return r;
}

/// {X : ad(X) = 0}, as the kernel of the stacked map X -> vec(ad X).
inline Subspace center(const MetricLieAlgebra& alg) {
  const std::size_t n = alg.dim();
  Matrix stacked(n * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) stacked(j * n + k, i) = alg.constant(i, j, k);
  const auto ker = kernel(stacked, base_tolerance());
  return canonical_subspace(alg, ker, 1e-8);
}

/// span{[e_i, e_j]}.
inline Subspace derived_algebra(const MetricLieAlgebra& alg) {
  const std::size_t n = alg.dim();
  Matrix spanning(n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) spanning(k, i * n + j) = alg.constant(i, j, k);
  // Column space via the row-reduced transpose: rank-revealing with the same pivot rule.
  const Elimination e = eliminate(spanning.transpose(), base_tolerance());
  std::vector<Vector> rows;
  for (std::size_t r = 0; r < e.rank; ++r) {
    Vector v(n);
    for (std::size_t c = 0; c < n; ++c) v[e.column_order[c]] = e.reduced(r, c);
    rows.push_back(std::move(v));
  }
  return canonical_subspace(alg, rows, 1e-8);
}

inline bool is_abelian(const MetricLieAlgebra& alg) {
  return std::all_of(alg.constants().begin(), alg.constants().end(),
                     [&](double c) { return std::abs(c) <= alg.tolerance(); });
}

inline bool is_unimodular(const MetricLieAlgebra& alg) { return max_abs(trace_form(alg)) <= alg.tolerance(); }

/// Every ad(e_i) is skew-symmetric with respect to the gram.
inline bool is_biinvariant(const MetricLieAlgebra& alg) {
  const std::size_t n = alg.dim();
  for (std::size_t i = 0; i < n; ++i) {
    const Matrix a = ad(alg, Vector::unit(n, i));
    const Matrix m = alg.gram() * a;
    if (max_abs(m + m.transpose()) > alg.tolerance()) return false;
  }
  return true;
}

/// Express the algebra in the basis given by the columns of `basis`
/// (coordinates in the current basis). The new gram is basis^T gram basis.
inline MetricLieAlgebra change_basis(const MetricLieAlgebra& alg, const Matrix& basis) {
  const std::size_t n = alg.dim();
  if (basis.rows() != n || basis.cols() != n) throw DimensionError("change_basis: basis must be n x n");
  const Matrix inv = inverse(basis);
  std::vector<double> c(n * n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vector coords = inv * bracket(alg, basis.col(i), basis.col(j));
      for (std::size_t k = 0; k < n; ++k) c[(i * n + j) * n + k] = coords[k];
    }
  return MetricLieAlgebra(n, std::move(c), basis.transpose() * alg.gram() * basis);
}

/// An algebra re-expressed in a gram-orthonormal basis, plus the coordinate maps.
struct OrthonormalFrame {
  MetricLieAlgebra algebra;
  Matrix basis;  // columns: new basis vectors in original coordinates

  /// Original coordinates -> frame coordinates (basis is orthonormal, so B^{-1} = B^T G).
  Vector to_frame(const Vector& x, const MetricLieAlgebra& original) const {
    return basis.transpose() * (original.gram() * x);
  }
  Vector from_frame(const Vector& y) const { return basis * y; }
};

/// Gram-Schmidt of the coordinate basis under the gram. The identity-gram case
/// returns the algebra unchanged with basis = I.
inline OrthonormalFrame orthonormalized(const MetricLieAlgebra& alg) {
  const std::size_t n = alg.dim();
  if (alg.gram() == Matrix::identity(n)) return {alg, Matrix::identity(n)};
  std::vector<Vector> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back(Vector::unit(n, i));
  const auto q = orthonormalize(alg, e, 0.0);
  if (q.size() != n) throw StructureError("gram matrix is not positive definite");
  const Matrix b = Matrix::from_columns(q, n);
  MetricLieAlgebra out = change_basis(alg, b);
  // Snap the gram to exactly I: downstream code works in orthonormal coordinates.
  return {MetricLieAlgebra(n, out.constants(), Matrix::identity(n)), b};
}

}  // namespace geovec
