#include <gtest/gtest.h>

#include <set>

#include "geovec/catalog.hpp"

using namespace geovec;

TEST(Catalog, EntriesAreValidAndLabelsReproduce) {
  const auto cat = builtin_catalog();
  EXPECT_GE(cat.size(), 12u);
  std::set<std::string> names;
  for (const auto& e : cat) {
    EXPECT_TRUE(names.insert(e.name).second) << "duplicate " << e.name;
    EXPECT_TRUE(validate(e.algebra).passed) << e.name;
    EXPECT_FALSE(e.points.empty()) << e.name;
    for (const auto& p : e.points) {
      EXPECT_TRUE(is_stationary(e.algebra, p.point)) << e.name;
      EXPECT_EQ(classify_point(e.algebra, p.point).status, p.expected) << e.name;
    }
  }
}

TEST(Catalog, CentralExtensionMatchesFormula) {
  const auto alg = catalog::central_extension(catalog::diag3(1, 0, -1), Vector(3));
  // [e2, e3] = e1 and [e1, e2] = -e3.
  EXPECT_EQ(bracket(alg, Vector::unit(4, 1), Vector::unit(4, 2)), Vector::unit(4, 0));
  EXPECT_EQ(bracket(alg, Vector::unit(4, 0), Vector::unit(4, 1)), -Vector::unit(4, 2));
  EXPECT_EQ(center(alg).dim(), 1u);
}

TEST(Catalog, SemidirectUsesColumnsOfA) {
  const auto alg = catalog::semidirect(catalog::centreless_example_matrix());
  // [e1, e2] is the first column of A in (e2, e3, e4).
  EXPECT_EQ(bracket(alg, Vector::unit(4, 0), Vector::unit(4, 1)), (Vector{0, 1, -3, -2}));
  EXPECT_EQ(center(alg).dim(), 0u);
  EXPECT_TRUE(is_unimodular(alg));
}
