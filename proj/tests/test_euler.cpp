#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "geovec/catalog.hpp"
#include "geovec/euler.hpp"
#include "oracles.hpp"

using namespace geovec;

TEST(Euler, RhsMatchesDefiningIdentity) {
  std::mt19937_64 rng(31);
  for (const auto& e : builtin_catalog()) {
    for (int t = 0; t < 5; ++t) {
      const Vector y = detail::random_unit(rng, e.algebra.dim());
      const Vector ref = oracle_ref::euler_rhs_identity_gram(e.algebra, y);
      EXPECT_LE(max_abs(euler_rhs(e.algebra, y) - ref), 1e-14) << e.name;
      EXPECT_LE(max_abs(EulerField(e.algebra)(y) - ref), 1e-14) << e.name;
    }
  }
}

TEST(Euler, FieldWithGeneralGram) {
  Matrix g(2, 2);
  g(0, 0) = 2.0;
  g(0, 1) = g(1, 0) = 0.5;
  g(1, 1) = 1.0;
  const std::vector<MetricLieAlgebra::Bracket> bs{{0, 1, {0, 1}}};
  const auto alg = MetricLieAlgebra::from_brackets(2, bs, g);
  const Vector y{0.3, -0.7};
  // <rhs, Z> = <Y, [Y, Z]> for every Z.
  const Vector f = euler_rhs(alg, y);
  for (std::size_t z = 0; z < 2; ++z)
    EXPECT_NEAR(inner(alg, f, Vector::unit(2, z)), inner(alg, y, bracket(alg, y, Vector::unit(2, z))), 1e-15);
  EXPECT_LE(max_abs(EulerField(alg)(y) - f), 1e-15);
}

TEST(Euler, StationarityExamples) {
  const auto cat = builtin_catalog();
  const auto& m = find_entry(cat, "milnor_1_0_-1")->algebra;
  EXPECT_TRUE(is_stationary(m, Vector{0, 2, 0}));
  EXPECT_FALSE(is_stationary(m, Vector{1, 1, 0}));
  const auto& so3 = find_entry(cat, "so3")->algebra;
  EXPECT_TRUE(is_stationary(so3, Vector{0.3, -1.2, 4.0}));
}

TEST(Euler, LinearizationIsTheJacobian) {
  std::mt19937_64 rng(32);
  for (const auto& e : builtin_catalog()) {
    const std::size_t n = e.algebra.dim();
    const Vector x = detail::random_unit(rng, n);
    const Matrix j = linearization(e.algebra, x);
    for (std::size_t c = 0; c < n; ++c) {
      const Vector d = Vector::unit(n, c);
      const Vector fd = (euler_rhs(e.algebra, x + 1e-4 * d) - euler_rhs(e.algebra, x - 1e-4 * d)) / 2e-4;
      EXPECT_LE(max_abs(fd - j.col(c)), 1e-9) << e.name;
    }
  }
}

TEST(Euler, SigmaKMatchesMinors) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int t = 0; t < 50; ++t) {
    Matrix m(3, 3);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) m(r, c) = u(rng);
    const auto s = sigma_k(m);
    const double minors = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) +
                          m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    EXPECT_NEAR(s[0], trace(m), 1e-13);
    EXPECT_NEAR(s[1], minors, 1e-12);
    EXPECT_NEAR(s[2], oracle_ref::det_cofactor(m), 1e-12);
  }
}

TEST(Euler, MilnorConservedCoordinate) {
  // lambda1 = lambda2 conserves y3; lambda2 = lambda3 conserves y1.
  const Trajectory a = integrate(catalog::milnor(1, 1, -1), Vector{0.6, 0.3, 0.7}, 50.0);
  const Trajectory b = integrate(catalog::milnor(2, 1, 1), Vector{0.6, 0.3, 0.7}, 50.0);
  double da = 0.0, db = 0.0, moved = 0.0;
  for (const auto& y : a.states) da = std::max(da, std::abs(y[2] - 0.7));
  for (const auto& y : b.states) {
    db = std::max(db, std::abs(y[0] - 0.6));
    moved = std::max(moved, std::abs(y[1] - 0.3));
  }
  EXPECT_LE(da, 1e-12);
  EXPECT_LE(db, 1e-12);
  EXPECT_GT(moved, 0.1);
}

TEST(Euler, HeisenbergRotationClosedForm) {
  // y3 = c is constant and (y1, y2) rotates at rate c.
  const auto alg = catalog::milnor(0, 0, 1);
  const double c = 0.5;
  const Trajectory tr = integrate(alg, Vector{1, 0, c}, 10.0, 1e-3);
  double worst = 0.0;
  for (std::size_t s = 0; s < tr.times.size(); ++s) {
    const double t = tr.times[s];
    worst = std::max(worst, std::abs(tr.states[s][0] - std::cos(c * t)));
    worst = std::max(worst, std::abs(tr.states[s][1] - std::sin(c * t)));
  }
  EXPECT_LE(worst, 1e-11);
}

TEST(Euler, Rk4IsFourthOrder) {
  const auto alg = catalog::milnor(1, 0, -1);
  const Vector y0{0.2, 0.9, 0.4};
  const Vector ref = integrate(alg, y0, 5.0, 1e-4).states.back();
  const double e1 = norm(integrate(alg, y0, 5.0, 0.04).states.back() - ref);
  const double e2 = norm(integrate(alg, y0, 5.0, 0.02).states.back() - ref);
  EXPECT_GT(e1 / e2, 12.0);
  EXPECT_LT(e1 / e2, 20.0);
}

TEST(Euler, EnergyDriftAtDefaults) {
  const auto cat = builtin_catalog();
  for (const char* name : {"milnor_1_1_-1", "nonuni3_saddle", "caseC_tangent6"}) {
    const auto& e = *find_entry(cat, name);
    Vector y0(e.algebra.dim(), 0.5);
    const Trajectory tr = integrate(e.algebra, y0);
    EXPECT_EQ(tr.times.size(), 200001u);
    EXPECT_LE(tr.drift.at("I0"), 1e-8) << name;
  }
}

TEST(Euler, StepCountAndObserverStop) {
  const auto alg = catalog::milnor(1, 0, -1);
  const EulerField f(alg);
  std::size_t calls = 0;
  const EvolveStatus st = evolve(f, Vector{1, 0, 0}, 1.0, 0.1, [&](double, const Vector&) { return ++calls < 4; });
  EXPECT_EQ(calls, 4u);
  EXPECT_EQ(st.steps, 3u);
  EXPECT_FALSE(st.aborted);
  EXPECT_THROW(evolve(f, Vector{1, 0, 0}, 1.0, 0.0, [](double, const Vector&) { return true; }), DimensionError);
}

TEST(Euler, BlowUpIsReported) {
  // A step far outside the stability region turns RK4 unstable.
  const auto alg = catalog::semidirect(Matrix::identity(2));
  const Trajectory tr = integrate(alg, Vector{1, 1, 1}, 1e4, 5.0);
  EXPECT_TRUE(tr.aborted);
  EXPECT_FALSE(tr.abort_reason.empty());
}

TEST(Euler, CsvLayout) {
  const auto alg = catalog::milnor(1, 0, -1);
  FirstIntegral extra{"I1", [](const Vector& y) { return y[0] * y[0] - y[2] * y[2]; }};
  const Trajectory tr = integrate(alg, Vector{1, 0.1, 0}, 0.05, 0.01, std::span<const FirstIntegral>(&extra, 1));
  std::ostringstream os;
  write_trajectory_csv(os, tr);
  std::istringstream is(os.str());
  std::string header, line;
  std::getline(is, header);
  EXPECT_EQ(header, "t,y1,y2,y3,I0,I1");
  std::size_t rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 6u);
}
