#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "geovec/acceptance.hpp"
#include "geovec/algebra.hpp"
#include "geovec/catalog.hpp"
#include "oracles.hpp"

using namespace geovec;

TEST(Algebra, BracketMatchesDefinition) {
  std::mt19937_64 rng(21);
  for (const auto& e : builtin_catalog()) {
    const std::size_t n = e.algebra.dim();
    const Vector x = detail::random_unit(rng, n), y = detail::random_unit(rng, n);
    EXPECT_LE(max_abs(bracket(e.algebra, x, y) - oracle_ref::bracket(e.algebra, x, y)), 1e-14) << e.name;
    EXPECT_LE(max_abs(ad(e.algebra, x) * y - bracket(e.algebra, x, y)), 1e-14) << e.name;
  }
}

TEST(Algebra, AdjointTransposeIsMetricAdjoint) {
  // <ad_t(X) Y, Z> = <Y, [X, Z]> under a non-trivial gram.
  Matrix g = Matrix::identity(3);
  g(0, 0) = 2.0;
  g(0, 1) = g(1, 0) = 0.5;
  g(2, 2) = 3.0;
  const std::vector<MetricLieAlgebra::Bracket> bs{{0, 1, {0, 1, 0}}, {0, 2, {0, 0, 1}}};
  const auto alg = MetricLieAlgebra::from_brackets(3, bs, g);
  std::mt19937_64 rng(22);
  for (int t = 0; t < 10; ++t) {
    const Vector x = detail::random_unit(rng, 3), y = detail::random_unit(rng, 3), z = detail::random_unit(rng, 3);
    EXPECT_NEAR(inner(alg, ad_t(alg, x) * y, z), inner(alg, y, bracket(alg, x, z)), 1e-13);
  }
}

TEST(Algebra, ValidateAcceptsCatalogAndMatchesBruteForceJacobi) {
  for (const auto& e : builtin_catalog()) {
    const ValidationReport r = validate(e.algebra);
    EXPECT_TRUE(r.passed) << e.name;
    EXPECT_NEAR(r.max_jacobi_residual, oracle_ref::jacobi_residual(e.algebra), 1e-14) << e.name;
  }
}

TEST(Algebra, ValidateRejectsJacobiViolation) {
  // [e1,e2] = e3, [e2,e3] = e2, [e1,e3] = 0 fails the Jacobi identity.
  const std::vector<MetricLieAlgebra::Bracket> bs{{0, 1, {0, 0, 1}}, {1, 2, {0, 1, 0}}};
  const ValidationReport r = validate(MetricLieAlgebra::from_brackets(3, bs));
  EXPECT_FALSE(r.passed);
  EXPECT_GT(r.max_jacobi_residual, 0.5);
}

TEST(Algebra, ValidateRejectsIndefiniteGram) {
  Matrix g = Matrix::identity(2);
  g(1, 1) = -1.0;
  const std::vector<MetricLieAlgebra::Bracket> bs{{0, 1, {0, 1}}};
  EXPECT_FALSE(validate(MetricLieAlgebra::from_brackets(2, bs, g)).passed);
}

TEST(Algebra, StructureQueries) {
  const auto cat = builtin_catalog();
  const auto& heis = *find_entry(cat, "heisenberg_r");
  EXPECT_EQ(center(heis.algebra).dim(), 2u);
  EXPECT_EQ(derived_algebra(heis.algebra).dim(), 1u);
  EXPECT_TRUE(is_unimodular(heis.algebra));
  EXPECT_FALSE(is_biinvariant(heis.algebra));

  const auto& hyp = *find_entry(cat, "hyperbolic3");
  EXPECT_FALSE(is_unimodular(hyp.algebra));
  EXPECT_EQ(derived_algebra(hyp.algebra).dim(), 2u);
  EXPECT_EQ(center(hyp.algebra).dim(), 0u);

  EXPECT_TRUE(is_biinvariant(find_entry(cat, "so3")->algebra));
  EXPECT_TRUE(is_biinvariant(find_entry(cat, "so3_plus_r")->algebra));
  EXPECT_FALSE(is_biinvariant(find_entry(cat, "so3_stretched")->algebra));
  EXPECT_TRUE(is_abelian(find_entry(cat, "abelian4")->algebra));
}

TEST(Algebra, OrthonormalizedFramePreservesBrackets) {
  Matrix g(3, 3);
  const double v[3][3] = {{2, 0.3, 0}, {0.3, 1, 0.2}, {0, 0.2, 1.5}};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) g(r, c) = v[r][c];
  const auto base = catalog::milnor(1, 0, -1);
  const MetricLieAlgebra alg(3, base.constants(), g);
  const OrthonormalFrame f = orthonormalized(alg);
  EXPECT_TRUE(f.algebra.has_identity_gram());
  std::mt19937_64 rng(23);
  for (int t = 0; t < 10; ++t) {
    const Vector x = detail::random_unit(rng, 3), y = detail::random_unit(rng, 3);
    const Vector lhs = f.from_frame(bracket(f.algebra, f.to_frame(x, alg), f.to_frame(y, alg)));
    EXPECT_LE(max_abs(lhs - bracket(alg, x, y)), 1e-13);
    EXPECT_NEAR(dot(f.to_frame(x, alg), f.to_frame(y, alg)), inner(alg, x, y), 1e-13);
  }
}

TEST(Algebra, ToleranceScalesWithConstants) {
  const auto small = catalog::milnor(1, 0, -1);
  const auto big = catalog::milnor(100, 0, -100);
  EXPECT_DOUBLE_EQ(big.tolerance(), 100.0 * small.tolerance());
}
