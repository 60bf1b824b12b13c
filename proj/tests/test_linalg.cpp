#include <gtest/gtest.h>

#include <random>

#include "geovec/linalg.hpp"
#include "oracles.hpp"

using namespace geovec;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = u(rng);
  return m;
}

}  // namespace

TEST(Linalg, VectorArithmeticAndCross) {
  const Vector a{1, 2, 3}, b{4, 5, 6};
  EXPECT_EQ(a + b, (Vector{5, 7, 9}));
  EXPECT_EQ(2.0 * a - b, (Vector{-2, -1, 0}));
  EXPECT_DOUBLE_EQ(dot(a, b), 32.0);
  EXPECT_EQ(cross(Vector::unit(3, 0), Vector::unit(3, 1)), Vector::unit(3, 2));
  EXPECT_THROW(a + Vector(2), DimensionError);
}

TEST(Linalg, DeterminantMatchesCofactorExpansion) {
  std::mt19937_64 rng(11);
  for (std::size_t n = 1; n <= 5; ++n)
    for (int t = 0; t < 20; ++t) {
      const Matrix m = random_matrix(rng, n);
      EXPECT_NEAR(determinant(m), oracle_ref::det_cofactor(m), 1e-12);
    }
}

TEST(Linalg, InverseRoundTrip) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 20; ++t) {
    const Matrix m = random_matrix(rng, 4) + 3.0 * Matrix::identity(4);
    EXPECT_LE(max_abs(m * inverse(m) - Matrix::identity(4)), 1e-12);
  }
  EXPECT_THROW(inverse(Matrix(3, 3)), StructureError);
}

TEST(Linalg, RankAndKernel) {
  Matrix m(3, 4);
  const double rows[3][4] = {{1, 2, 3, 4}, {2, 4, 6, 8}, {0, 1, 0, 1}};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 4; ++c) m(r, c) = rows[r][c];
  EXPECT_EQ(numerical_rank(m, 1e-12), 2u);
  const auto ker = kernel(m, 1e-12);
  ASSERT_EQ(ker.size(), 2u);
  for (const auto& v : ker) EXPECT_LE(max_abs(m * v), 1e-12);
  // A perturbation below the relative threshold does not raise the rank.
  m(1, 3) += 1e-14;
  EXPECT_EQ(numerical_rank(m, 1e-9), 2u);
}

TEST(Linalg, SymmetricEigenDecomposition) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 20; ++t) {
    const Matrix s = symmetric_part(random_matrix(rng, 4));
    const SymmetricEigen e = symmetric_eigen(s);
    for (std::size_t k = 0; k + 1 < 4; ++k) EXPECT_GE(e.values[k], e.values[k + 1]);
    for (std::size_t k = 0; k < 4; ++k) {
      const Vector v = e.vectors.col(k);
      EXPECT_NEAR(norm(v), 1.0, 1e-12);
      EXPECT_LE(max_abs(s * v - e.values[k] * v), 1e-12);
    }
    EXPECT_LE(max_abs(e.vectors.transpose() * e.vectors - Matrix::identity(4)), 1e-12);
  }
}

TEST(Linalg, TracePowerAndParts) {
  std::mt19937_64 rng(14);
  const Matrix m = random_matrix(rng, 3);
  EXPECT_LE(max_abs(symmetric_part(m) + skew_part(m) - m), 1e-15);
  EXPECT_LE(max_abs(power(m, 3) - m * m * m), 1e-14);
  EXPECT_NEAR(trace(m), m(0, 0) + m(1, 1) + m(2, 2), 1e-15);
}
