#include <gtest/gtest.h>

#include "test_support.hpp"
#include "voxql/error.hpp"
#include "voxql/spatial/relation.hpp"

namespace {

using voxql::spatial::PointSet;
using voxql::spatial::Relation;
using namespace voxql::testing;

// R(0)={0,1}, R(1)={0,1,2}, R(2)={1,2}
Relation path_graph() { return Relation({{0, 1}, {0, 1, 2}, {1, 2}}); }

TEST(Lift, SingletonGivesItsRow) { EXPECT_EQ(lift(path_graph(), PointSet::of(3, {0})), PointSet::of(3, {0, 1})); }

TEST(Lift, EmptyGivesEmpty) { EXPECT_TRUE(lift(path_graph(), PointSet(3)).empty()); }

TEST(Lift, UnionOfRows) { EXPECT_EQ(lift(path_graph(), PointSet::of(3, {0, 2})), PointSet::full(3)); }

TEST(Lift, UniverseMismatchThrows) { EXPECT_THROW(lift(path_graph(), PointSet(4)), voxql::UniverseMismatch); }

TEST(Relation, RejectsOutOfRangeTargets) { EXPECT_THROW(Relation({{0, 3}, {}, {}}), voxql::InvalidInput); }

TEST(Relation, RowsAreNormalized) {
  const Relation r({{2, 0, 2}, {}, {1}});
  EXPECT_EQ(r.rows(), (std::vector<std::vector<std::size_t>>{{0, 2}, {}, {1}}));
  EXPECT_EQ(r.edge_count(), 3u);
}

TEST(Relation, ReflexiveAndSymmetric) {
  EXPECT_TRUE(path_graph().is_reflexive());
  EXPECT_TRUE(path_graph().is_symmetric());
  const Relation swap({{1}, {0}});
  EXPECT_FALSE(swap.is_reflexive());
  EXPECT_TRUE(swap.is_symmetric());
  EXPECT_FALSE(Relation({{1}, {}}).is_symmetric());
}

TEST(Relation, ReversedIsTranspose) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto rows = random_rows(rng, 1 + rng() % 12, 0.3);
    EXPECT_EQ(to_relation(rows).reversed(), to_relation(transpose(rows)));
  }
}

TEST(Lift, MatchesSetOracle) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 16;
    const auto rows = random_rows(rng, n, 0.25);
    const auto xs = random_set(rng, n);
    EXPECT_EQ(to_set(lift(to_relation(rows), xs)), lift_oracle(rows, to_set(xs)));
  }
}

}  // namespace
