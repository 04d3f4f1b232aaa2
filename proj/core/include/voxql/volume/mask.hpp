#pragma once

#include <cstddef>

#include "voxql/spatial/point_set.hpp"
#include "voxql/volume/volume.hpp"

namespace voxql::volume {

using spatial::PointSet;

// A voxel mask; membership is indexed like the volume it came from.
struct BinaryMask {
  Dims dims;
  PointSet points;

  // Throws UniverseMismatch unless points covers dims.voxel_count() voxels.
  BinaryMask(Dims d, PointSet p);
  explicit BinaryMask(Dims d) : dims(d), points(d.voxel_count()) {}

  std::size_t count() const noexcept { return points.count(); }
  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;
};

enum class Comparison { Greater, GreaterEqual, Less, LessEqual };

// Voxels whose scaled value compares true against c.
BinaryMask threshold(const VoxelVolume& v, Comparison op, double c);

struct DiceResult {
  double value = 0.0;
  // Both masks empty: the ratio is 0/0 and value is reported as 1.0.
  bool both_empty = false;
};

// 2|X n Y| / (|X| + |Y|). Throws InvalidInput when dims differ.
DiceResult dice_detailed(const BinaryMask& x, const BinaryMask& y);
double dice(const BinaryMask& x, const BinaryMask& y);

struct MaskStats {
  std::size_t voxel_count = 0;
  double volume_mm3 = 0.0;
};

MaskStats mask_stats(const BinaryMask& x, const Spacing& spacing);

PointSet mask_to_pointset(const BinaryMask& x);
BinaryMask pointset_to_mask(const Dims& dims, const PointSet& points);

// U8 volume holding 0/1.
VoxelVolume mask_to_volume(const BinaryMask& x, const Spacing& spacing, std::string description = {});
// Voxels with a nonzero scaled value are members.
BinaryMask volume_to_mask(const VoxelVolume& v);

}  // namespace voxql::volume
