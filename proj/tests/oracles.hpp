#pragma once

// Slow reference implementations used only to cross-check the library.

#include <cmath>
#include <vector>

#include "geovec/algebra.hpp"
#include "geovec/linalg.hpp"

namespace oracle_ref {

using geovec::Matrix;
using geovec::MetricLieAlgebra;
using geovec::Vector;

// Laplace expansion along the first row.
inline double det_cofactor(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  double d = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    Matrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t k = 0, kk = 0; k < n; ++k)
        if (k != c) minor(r - 1, kk++) = m(r, k);
    d += ((c % 2) ? -1.0 : 1.0) * m(0, c) * det_cofactor(minor);
  }
  return d;
}

// Largest |[[e_i,e_j],e_k] + cyclic| straight from the constants.
inline double jacobi_residual(const MetricLieAlgebra& a) {
  const std::size_t n = a.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m) {
          double s = 0.0;
          for (std::size_t p = 0; p < n; ++p)
            s += a.constant(i, j, p) * a.constant(p, k, m) + a.constant(j, k, p) * a.constant(p, i, m) +
                 a.constant(k, i, p) * a.constant(p, j, m);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

// exp(sA) by an unscaled Taylor series in long double; fine for |sA| of order one.
inline Matrix exp_taylor(const Matrix& a, double s, int terms = 60) {
  const std::size_t n = a.rows();
  std::vector<long double> sum(n * n, 0.0L), term(n * n, 0.0L), next(n * n);
  for (std::size_t i = 0; i < n; ++i) sum[i * n + i] = term[i * n + i] = 1.0L;
  for (int k = 1; k < terms; ++k) {
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        long double acc = 0.0L;
        for (std::size_t p = 0; p < n; ++p) acc += term[r * n + p] * static_cast<long double>(a(p, c));
        next[r * n + c] = acc * s / k;
      }
    term = next;
    for (std::size_t i = 0; i < n * n; ++i) sum[i] += term[i];
  }
  Matrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = static_cast<double>(sum[r * n + c]);
  return out;
}

// Bracket computed from the defining formula sum x_i y_j c(i,j,k).
inline Vector bracket(const MetricLieAlgebra& a, const Vector& x, const Vector& y) {
  const std::size_t n = a.dim();
  Vector out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) out[k] += x[i] * y[j] * a.constant(i, j, k);
  return out;
}

// Euler field from <rhs, Z> = <Y, [Y, Z]> with an identity gram.
inline Vector euler_rhs_identity_gram(const MetricLieAlgebra& a, const Vector& y) {
  const std::size_t n = a.dim();
  Vector out(n);
  for (std::size_t z = 0; z < n; ++z) out[z] = geovec::dot(y, oracle_ref::bracket(a, y, Vector::unit(n, z)));
  return out;
}

}  // namespace oracle_ref
