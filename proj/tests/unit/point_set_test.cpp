#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "voxql/error.hpp"
#include "voxql/spatial/point_set.hpp"

namespace {

using voxql::spatial::PointSet;
using namespace voxql::testing;

TEST(PointSet, EmptyAndFull) {
  PointSet e(70);
  EXPECT_TRUE(e.empty());
  EXPECT_EQ(e.count(), 0u);
  const auto f = PointSet::full(70);
  EXPECT_EQ(f.count(), 70u);
  EXPECT_EQ(f.complement(), e);
  EXPECT_EQ(e.complement(), f);
}

TEST(PointSet, ZeroUniverse) {
  PointSet e(0);
  EXPECT_TRUE(e.empty());
  EXPECT_EQ(e.complement(), e);
  EXPECT_EQ(PointSet::full(0), e);
}

TEST(PointSet, InsertOutOfRangeThrows) {
  PointSet s(5);
  EXPECT_THROW(s.insert(5), voxql::InvalidInput);
  EXPECT_THROW(PointSet::of(3, {0, 3}), voxql::InvalidInput);
  EXPECT_FALSE(s.contains(99));
}

TEST(PointSet, MixedUniversesThrow) {
  PointSet a(4), b(5);
  EXPECT_THROW(a |= b, voxql::UniverseMismatch);
  EXPECT_THROW(a &= b, voxql::UniverseMismatch);
  EXPECT_THROW(a -= b, voxql::UniverseMismatch);
  EXPECT_THROW((void)a.is_subset_of(b), voxql::UniverseMismatch);
}

TEST(PointSet, MembersAreSortedAndUnique) {
  const auto s = PointSet::of(130, {129, 0, 64, 64, 63});
  EXPECT_EQ(s.members(), (std::vector<std::size_t>{0, 63, 64, 129}));
  EXPECT_EQ(s.to_string(), "{0, 63, 64, 129}");
}

TEST(PointSet, AlgebraMatchesStdSet) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 200;
    const auto a = random_set(rng, n), b = random_set(rng, n);
    const auto sa = to_set(a), sb = to_set(b);
    std::set<std::size_t> u = sa, i, d, c;
    u.insert(sb.begin(), sb.end());
    for (auto x : sa) (sb.count(x) ? i : d).insert(x);
    for (std::size_t x = 0; x < n; ++x)
      if (!sa.count(x)) c.insert(x);
    EXPECT_EQ(to_set(a | b), u);
    EXPECT_EQ(to_set(a & b), i);
    EXPECT_EQ(to_set(a - b), d);
    EXPECT_EQ(to_set(a.complement()), c);
    EXPECT_EQ(a.count(), sa.size());
    EXPECT_EQ((a & b).is_subset_of(a), true);
    // Complement keeps bits beyond the universe clear, so equality stays exact.
    EXPECT_EQ(a.complement().complement(), a);
  }
}

}  // namespace
