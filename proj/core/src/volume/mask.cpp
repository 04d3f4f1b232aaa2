#include "voxql/volume/mask.hpp"

#include "voxql/error.hpp"

namespace voxql::volume {

BinaryMask::BinaryMask(Dims d, PointSet p) : dims(d), points(std::move(p)) {
  if (points.universe() != dims.voxel_count())
    throw UniverseMismatch("mask covers " + std::to_string(points.universe()) + " voxels, dims require " +
                           std::to_string(dims.voxel_count()));
}

namespace {

template <typename Pred>
BinaryMask select(const VoxelVolume& v, Pred pred) {
  BinaryMask out(v.dims());
  const bool scaled = v.has_scaling();
  const double slope = v.scl_slope(), inter = v.scl_inter();
  std::visit(
      [&](const auto& samples) {
        for (std::size_t i = 0; i < samples.size(); ++i) {
          const double r = static_cast<double>(samples[i]);
          if (pred(scaled ? r * slope + inter : r)) out.points.insert_unchecked(i);
        }
      },
      v.storage());
  return out;
}

}  // namespace

BinaryMask threshold(const VoxelVolume& v, Comparison op, double c) {
  switch (op) {
    case Comparison::Greater:
      return select(v, [c](double x) { return x > c; });
    case Comparison::GreaterEqual:
      return select(v, [c](double x) { return x >= c; });
    case Comparison::Less:
      return select(v, [c](double x) { return x < c; });
    case Comparison::LessEqual:
      return select(v, [c](double x) { return x <= c; });
  }
  throw InvalidInput("unknown comparison");
}

DiceResult dice_detailed(const BinaryMask& x, const BinaryMask& y) {
  if (x.dims != y.dims) throw InvalidInput("dice: masks have different dimensions");
  const std::size_t nx = x.count(), ny = y.count();
  if (nx + ny == 0) return {1.0, true};
  const std::size_t both = (x.points & y.points).count();
  return {2.0 * static_cast<double>(both) / static_cast<double>(nx + ny), false};
}

double dice(const BinaryMask& x, const BinaryMask& y) { return dice_detailed(x, y).value; }

MaskStats mask_stats(const BinaryMask& x, const Spacing& spacing) {
  const std::size_t n = x.count();
  return {n, static_cast<double>(n) * spacing.sx * spacing.sy * spacing.sz};
}

PointSet mask_to_pointset(const BinaryMask& x) { return x.points; }

BinaryMask pointset_to_mask(const Dims& dims, const PointSet& points) { return BinaryMask(dims, points); }

VoxelVolume mask_to_volume(const BinaryMask& x, const Spacing& spacing, std::string description) {
  std::vector<std::uint8_t> data(x.dims.voxel_count(), 0);
  x.points.for_each([&](std::size_t i) { data[i] = 1; });
  return VoxelVolume(x.dims, spacing, std::move(data), 0.0f, 0.0f, std::move(description));
}

BinaryMask volume_to_mask(const VoxelVolume& v) {
  return select(v, [](double x) { return x != 0.0; });
}

}  // namespace voxql::volume
