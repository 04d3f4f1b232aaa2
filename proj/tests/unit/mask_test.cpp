#include <gtest/gtest.h>

#include <limits>
#include <numeric>
#include <random>

#include "test_support.hpp"
#include "voxql/error.hpp"
#include "voxql/volume/mask.hpp"

namespace {

using namespace voxql::volume;
using namespace voxql::testing;
using voxql::spatial::PointSet;

BinaryMask mask_of(Dims d, std::initializer_list<std::size_t> members) {
  return BinaryMask(d, PointSet::of(d.voxel_count(), members));
}

TEST(Threshold, GoldenGreaterThanThree) {
  EXPECT_EQ(threshold(golden_volume(), Comparison::Greater, 3).points.members(), (std::vector<std::size_t>{4, 5, 6, 7}));
}

TEST(Threshold, ExtremeConstants) {
  const auto v = golden_volume();
  EXPECT_EQ(threshold(v, Comparison::Greater, -1e300).count(), 8u);
  EXPECT_EQ(threshold(v, Comparison::LessEqual, -1).count(), 0u);
  EXPECT_EQ(threshold(v, Comparison::GreaterEqual, 7).points.members(), (std::vector<std::size_t>{7}));
  EXPECT_EQ(threshold(v, Comparison::Less, 1).points.members(), (std::vector<std::size_t>{0}));
}

TEST(Threshold, UsesScaledValues) {
  // raw 0..3, value = raw * 2 + 10
  const VoxelVolume v({4, 1, 1}, {1, 1, 1}, std::vector<std::int16_t>{0, 1, 2, 3}, 2.0f, 10.0f);
  EXPECT_EQ(threshold(v, Comparison::Greater, 13).points.members(), (std::vector<std::size_t>{2, 3}));
}

TEST(Threshold, PartitionProperty) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<float> value(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<float> data(60);
    for (auto& x : data) x = value(rng);
    const VoxelVolume v({5, 4, 3}, {1, 1, 1}, data);
    const double c = value(rng);
    const auto gt = threshold(v, Comparison::Greater, c), le = threshold(v, Comparison::LessEqual, c);
    EXPECT_EQ(gt.points | le.points, PointSet::full(60));
    EXPECT_TRUE((gt.points & le.points).empty());
  }
}

TEST(Dice, Examples) {
  const Dims d{2, 2, 2};
  EXPECT_DOUBLE_EQ(dice(mask_of(d, {1, 2}), mask_of(d, {1, 2})), 1.0);
  EXPECT_DOUBLE_EQ(dice(mask_of(d, {0, 1}), mask_of(d, {2, 3})), 0.0);
  EXPECT_DOUBLE_EQ(dice(mask_of(d, {0, 1, 2, 3}), mask_of(d, {2, 3, 4, 5})), 0.5);
  const auto empty = dice_detailed(BinaryMask(d), BinaryMask(d));
  EXPECT_TRUE(empty.both_empty);
  EXPECT_DOUBLE_EQ(empty.value, 1.0);
  EXPECT_FALSE(dice_detailed(BinaryMask(d), mask_of(d, {0})).both_empty);
  EXPECT_DOUBLE_EQ(dice(BinaryMask(d), mask_of(d, {0})), 0.0);
}

TEST(Dice, DimsMismatchThrows) {
  EXPECT_THROW(dice(BinaryMask({2, 2, 2}), BinaryMask({8, 1, 1})), voxql::InvalidInput);
}

TEST(Dice, SymmetricAndBounded) {
  std::mt19937_64 rng(4);
  const Dims d{4, 3, 2};
  for (int trial = 0; trial < 200; ++trial) {
    const BinaryMask x(d, random_set(rng, 24, 0.3)), y(d, random_set(rng, 24, 0.3));
    const double a = dice(x, y);
    EXPECT_EQ(a, dice(y, x));
    EXPECT_GE(a, 0.0);
    EXPECT_LE(a, 1.0);
    if (x.count() > 0) EXPECT_EQ(dice(x, x), 1.0);
  }
}

TEST(MaskStats, Examples) {
  const Dims d{2, 2, 2};
  const auto empty = mask_stats(BinaryMask(d), {1, 1, 1});
  EXPECT_EQ(empty.voxel_count, 0u);
  EXPECT_EQ(empty.volume_mm3, 0.0);
  const auto full = mask_stats(BinaryMask(d, PointSet::full(8)), {1, 1, 1});
  EXPECT_EQ(full.voxel_count, 8u);
  EXPECT_DOUBLE_EQ(full.volume_mm3, 8.0);
  const auto three = mask_stats(mask_of(d, {0, 3, 5}), {2, 2, 2});
  EXPECT_EQ(three.voxel_count, 3u);
  EXPECT_DOUBLE_EQ(three.volume_mm3, 24.0);
}

TEST(Conversions, CornerVoxelsLinearize) {
  const Dims d{2, 2, 2};
  BinaryMask m(d);
  m.points.insert(d.index(0, 0, 0));
  m.points.insert(d.index(1, 1, 1));
  EXPECT_EQ(mask_to_pointset(m), PointSet::of(8, {0, 7}));
}

TEST(Conversions, RoundTrips) {
  std::mt19937_64 rng(8);
  const Dims d{3, 3, 3};
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_set(rng, 27, 0.4);
    EXPECT_EQ(mask_to_pointset(pointset_to_mask(d, p)), p);
    const BinaryMask m(d, p);
    EXPECT_EQ(volume_to_mask(mask_to_volume(m, {1, 1, 1})), m);
  }
  EXPECT_TRUE(mask_to_pointset(BinaryMask(d)).empty());
  EXPECT_THROW(pointset_to_mask(d, PointSet(26)), voxql::UniverseMismatch);
}

TEST(Conversions, MaskVolumeEncoding) {
  const auto v = mask_to_volume(mask_of({2, 1, 1}, {1}), {1, 1, 1});
  EXPECT_EQ(v.dtype(), DataType::U8);
  EXPECT_EQ(v.values(), (std::vector<double>{0, 1}));
  const VoxelVolume scalar({3, 1, 1}, {1, 1, 1}, std::vector<float>{0.f, -2.5f, 0.f});
  EXPECT_EQ(volume_to_mask(scalar).points.members(), (std::vector<std::size_t>{1}));
}

}  // namespace
