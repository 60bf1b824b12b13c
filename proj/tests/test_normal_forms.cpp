#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "geovec/acceptance.hpp"
#include "geovec/catalog.hpp"
#include "geovec/normal_forms.hpp"
#include "oracles.hpp"

using namespace geovec;

namespace {

MetricLieAlgebra conjugate(const MetricLieAlgebra& a, std::mt19937_64& rng, Matrix* q_out = nullptr) {
  const Matrix q = oracle::random_orthogonal(rng, a.dim());
  if (q_out) *q_out = q;
  const MetricLieAlgebra c = change_basis(a, q);
  return MetricLieAlgebra(a.dim(), c.constants(), Matrix::identity(a.dim()));
}

}  // namespace

TEST(NormalForms, MilnorFrameRecoversLambda) {
  std::mt19937_64 rng(41);
  const std::array<std::array<double, 3>, 4> cases{{{1, 0, -1}, {2, 1, 1}, {1, 1, -1}, {3, -2, 0.5}}};
  for (const auto& l : cases) {
    Matrix q;
    const MetricLieAlgebra alg = conjugate(catalog::milnor(l[0], l[1], l[2]), rng, &q);
    const MilnorFrame f = milnor_frame(alg);
    // The frame is positively oriented, and an orientation-reversing q flips every lambda.
    const double orient = determinant(q) > 0 ? 1.0 : -1.0;
    std::array<double, 3> sorted{orient * l[0], orient * l[1], orient * l[2]};
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(f.lambda[k], sorted[k], 1e-12);
    for (const auto& [i, j, k] : detail::kCyclic)
      EXPECT_LE(max_abs(bracket(alg, f.basis[i], f.basis[j]) - f.lambda[k] * f.basis[k]), 1e-12);
  }
  EXPECT_THROW(milnor_frame(catalog::semidirect(Matrix::identity(2))), NotUnimodular);
}

TEST(NormalForms, CodimOneSplitNonUnimodular) {
  const auto cat = builtin_catalog();
  const IdealSplit h = codim1_split(find_entry(cat, "hyperbolic3")->algebra);
  EXPECT_LE(max_abs(h.a - Matrix::identity(2)), 1e-15);
  EXPECT_LE(max_abs(h.e1 - Vector{1, 0, 0}), 1e-15);

  std::mt19937_64 rng(42);
  const MetricLieAlgebra c = conjugate(find_entry(cat, "nonuni3_saddle")->algebra, rng);
  const IdealSplit s = codim1_split(c);
  EXPECT_NEAR(trace(s.a), 0.5, 1e-12);
  EXPECT_NEAR(determinant(s.a), -0.5, 1e-12);
  for (const auto& v : s.ideal_basis) EXPECT_NEAR(dot(v, s.e1), 0.0, 1e-12);
}

TEST(NormalForms, CodimOneSplitCenterless) {
  std::mt19937_64 rng(43);
  const Matrix a = catalog::centreless_example_matrix();
  const MetricLieAlgebra alg = conjugate(catalog::semidirect(a), rng);
  const IdealSplit s = codim1_split(alg);
  EXPECT_NEAR(trace(s.a), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(determinant(s.a)), 12.0, 1e-10);
  EXPECT_NEAR(sigma_k(s.a)[1], sigma_k(a)[1], 1e-10);
  EXPECT_THROW(codim1_split(find_entry(builtin_catalog(), "heisenberg_r")->algebra), StructureError);
}

TEST(NormalForms, SingularActionGivesCentreAndNoSplit) {
  // ker A commutes with everything, so the algebra is not centreless.
  Matrix a(3, 3);
  a(0, 0) = 1.0;
  a(1, 1) = -1.0;
  const auto alg = catalog::semidirect(a);
  ASSERT_EQ(center(alg).dim(), 1u);
  EXPECT_THROW(codim1_split(alg), StructureError);
}

TEST(NormalForms, CenterSplitRecoversSAndL) {
  const auto alg = catalog::central_extension(catalog::diag3(1, 0, -1), Vector{0, 0, 1});
  const CenterSplit4D cs = center_split_4d(alg);
  const double sign = cs.e4[3];
  EXPECT_NEAR(std::abs(sign), 1.0, 1e-15);
  EXPECT_LE(max_abs(cs.s - catalog::diag3(1, 0, -1)), 1e-15);
  EXPECT_LE(max_abs(cs.l - sign * Vector{0, 0, 1}), 1e-15);

  // Rebuilding from the recovered data reproduces every bracket.
  std::mt19937_64 rng(44);
  const MetricLieAlgebra c = conjugate(alg, rng);
  const CenterSplit4D r = center_split_4d(c);
  for (int t = 0; t < 5; ++t) {
    const Vector x = detail::random_unit(rng, 4), y = detail::random_unit(rng, 4);
    const Vector xm = r.m_coordinates(x), ym = r.m_coordinates(y);
    const Vector xy = cross(xm, ym);
    EXPECT_LE(max_abs(bracket(c, x, y) - r.from_m(r.s * xy, dot(r.l, xy))), 1e-12);
  }
}

TEST(NormalForms, CenterSplitPreconditions) {
  const auto cat = builtin_catalog();
  EXPECT_THROW(center_split_4d(find_entry(cat, "heisenberg_r")->algebra), StructureError);
  EXPECT_THROW(center_split_4d(find_entry(cat, "nonunimodular4")->algebra), NotUnimodular);
  EXPECT_THROW(center_split_4d(catalog::milnor(1, 0, -1)), DimensionError);
}

TEST(NormalForms, RecoverMu) {
  const auto alg = catalog::central_extension(catalog::diag3(1, 0, -1), Vector{0, 0, 1});
  const CenterSplit4D cs = center_split_4d(alg);
  const double s = cs.e4[3];
  const auto mu = recover_mu(cs, Vector{0, 0, 2.0 / 3.0, s}, 1e-9);
  ASSERT_TRUE(mu.has_value());
  EXPECT_NEAR(*mu, 0.5, 1e-12);
  EXPECT_FALSE(recover_mu(cs, Vector{0, 0, 0, 1}, 1e-9).has_value());
  EXPECT_FALSE(recover_mu(cs, Vector{1, 1, 0, 0}, 1e-9).has_value());
}

TEST(NormalForms, CentrelessExampleCoefficients) {
  const PhiCoefficients p = phi_taylor(catalog::centreless_example_matrix(), Vector{0, 0, 1}, 8);
  EXPECT_DOUBLE_EQ(p.c[0], 1.0);
  for (std::size_t k = 1; k <= 5; ++k) EXPECT_NEAR(p.c[k], 0.0, 1e-12) << k;
  EXPECT_NEAR(p.c[6], 1.6, 1e-12);
  EXPECT_NEAR(determinant(catalog::centreless_example_matrix()), -12.0, 1e-12);
}

TEST(NormalForms, PhiTaylorMatchesExponentialOracle) {
  std::mt19937_64 rng(45);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 50; ++t) {
    Matrix a(3, 3);
    Vector x(3);
    for (std::size_t r = 0; r < 3; ++r) {
      x[r] = u(rng);
      for (std::size_t c = 0; c < 3; ++c) a(r, c) = u(rng);
    }
    const double s = 0.05;
    const Vector ex = oracle_ref::exp_taylor(a.transpose(), s) * x;
    const double ref = dot(ex, ex);
    const PhiCoefficients p = phi_taylor(a, x, 12);
    double sum = 0.0, sp = 1.0;
    for (double c : p.c) {
      sum += c * sp;
      sp *= s;
    }
    EXPECT_NEAR(sum, ref, 1e-14);
    EXPECT_NEAR(phi_value(a, x, s), ref, 1e-14);
  }
}

TEST(NormalForms, MatrixExpLargeNorm) {
  Matrix a(2, 2);
  a(0, 1) = -30.0;
  a(1, 0) = 30.0;  // rotation by 30 rad
  const Matrix r = matrix_exp(a, 1.0);
  EXPECT_NEAR(r(0, 0), std::cos(30.0), 1e-11);
  EXPECT_NEAR(r(1, 0), std::sin(30.0), 1e-11);
  std::mt19937_64 rng(46);
  const Matrix b = oracle::random_matrix(rng, 4, 4, -3, 3);
  EXPECT_LE(max_abs(matrix_exp(b, 1.0) * matrix_exp(b, -1.0) - Matrix::identity(4)), 1e-9);
  EXPECT_LE(max_abs(matrix_exp(b, 0.3) - oracle_ref::exp_taylor(b, 0.3)), 1e-13);
}

TEST(NormalForms, SecondCoefficientIsSigmaTwoOnCone) {
  // In the 3D non-unimodular case, stationary x in a has c2 = sigma2(J_X).
  const auto cat = builtin_catalog();
  const auto& alg = find_entry(cat, "nonuni3_saddle")->algebra;
  const IdealSplit s = codim1_split(alg);
  for (const auto& f : enumerate_stationary(alg)) {
    if (f.kind != FamilyKind::Cone) continue;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Vector x = f.sample(seed);
      const PhiCoefficients p = phi_taylor(s.a, s.ideal_coordinates(x), 2);
      EXPECT_NEAR(p.c[1], 0.0, 1e-12);
      EXPECT_NEAR(p.c[2], sigma_k(linearization(alg, x))[1], 1e-12);
    }
  }
}

TEST(NormalForms, ImaginaryEigenvalueTest) {
  Matrix rot(3, 3);
  rot(0, 1) = -1.0;
  rot(1, 0) = 1.0;
  rot(2, 2) = 1.0;
  EXPECT_FALSE(no_imaginary_eigenvalues(rot));
  EXPECT_TRUE(no_imaginary_eigenvalues(catalog::diag3(1, 2, -3)));
  EXPECT_FALSE(no_imaginary_eigenvalues(catalog::diag3(1, 0, -1)));
  // Centreless example: c0 = 12, c1 = sigma2, c2 = 0, so c0 != c1 c2.
  EXPECT_TRUE(no_imaginary_eigenvalues(catalog::centreless_example_matrix()));
}

namespace {

// Traceless A from 8 free entries (a22 = -a00 - a11) and x from the last 3.
void unpack(const std::vector<double>& p, Matrix& a, Vector& x) {
  a = Matrix(3, 3);
  for (std::size_t k = 0; k < 8; ++k) a(k / 3, k % 3) = p[k];
  a(2, 2) = -p[0] - p[4];
  x = Vector{p[8], p[9], p[10]};
  x = (1.0 / norm(x)) * x;
}

std::vector<double> low_coefficients(const std::vector<double>& p) {
  Matrix a;
  Vector x;
  unpack(p, a, x);
  const PhiCoefficients c = phi_taylor(a, x, 5);
  return {c.c[1], c.c[2], c.c[3], c.c[4], c.c[5]};
}

}  // namespace

TEST(NormalForms, SixthCoefficientPositiveWhenLowerOnesVanish) {
  // Search for centreless instances with c1..c5 = 0 by minimum-norm Newton
  // steps from random starts, then check the sign of c6 on each one found.
  std::mt19937_64 rng(47);
  std::normal_distribution<double> g(0.0, 1.0);
  int found = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int start = 0; start < 200; ++start) {
    std::vector<double> p(11);
    for (double& v : p) v = g(rng);
    bool converged = false;
    for (int it = 0; it < 60 && !converged; ++it) {
      const auto r = low_coefficients(p);
      if (max_abs(Vector(r)) <= 1e-13) {
        converged = true;
        break;
      }
      Matrix jac(5, 11);
      for (std::size_t k = 0; k < 11; ++k) {
        const double h = 1e-7 * std::max(1.0, std::abs(p[k]));
        auto up = p, dn = p;
        up[k] += h;
        dn[k] -= h;
        const auto ru = low_coefficients(up), rd = low_coefficients(dn);
        for (std::size_t i = 0; i < 5; ++i) jac(i, k) = (ru[i] - rd[i]) / (2 * h);
      }
      const Matrix jjt = jac * jac.transpose();
      if (std::abs(determinant(jjt)) < 1e-30) break;
      const Vector y = inverse(jjt) * Vector(r);
      const Vector step = jac.transpose() * y;
      for (std::size_t k = 0; k < 11; ++k) p[k] -= step[k];
    }
    if (!converged) continue;
    Matrix a;
    Vector x;
    unpack(p, a, x);
    const double scale = frobenius(a);
    a = (1.0 / scale) * a;
    if (std::abs(determinant(a)) < 1e-3) continue;  // needs a trivial centre
    const PhiCoefficients c = phi_taylor(a, x, 6);
    for (std::size_t k = 1; k <= 5; ++k) ASSERT_LE(std::abs(c.c[k]), 1e-10);
    ++found;
    worst = std::min(worst, c.c[6]);
    EXPECT_GT(c.c[6], 1e-8) << "counterexample at start " << start;
  }
  EXPECT_GE(found, 10);
  std::cout << "[ info ] " << found << " instances with c1..c5 = 0, smallest normalised c6 = " << worst << "\n";
}
