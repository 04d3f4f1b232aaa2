#include "voxql/spatial/grid.hpp"

#include <limits>
#include <string>
#include <vector>

#include "voxql/error.hpp"

namespace voxql::spatial {

void GridSpec::validate() const {
  if (dims.nx < 1 || dims.ny < 1 || dims.nz < 1) throw InvalidInput("grid extents must all be >= 1");
  if (!(spacing.sx > 0.0) || !(spacing.sy > 0.0) || !(spacing.sz > 0.0))
    throw InvalidInput("grid spacing must be positive on every axis");
  if (dims.voxel_count() > std::numeric_limits<std::uint32_t>::max())
    throw InvalidInput("grid has more than 2^32-1 voxels");
}

Relation grid_relation(const GridSpec& spec) {
  GridTopology topo(spec);
  std::vector<std::vector<std::size_t>> rows(topo.size());
  for (std::size_t v = 0; v < topo.size(); ++v) topo.for_each_successor(v, [&](std::size_t w) { rows[v].push_back(w); });
  return Relation(rows);
}

GridTopology::GridTopology(const GridSpec& spec) : spec_(spec) {
  spec_.validate();
  count_ = spec_.dims.voxel_count();
  plane_ = spec_.dims.nx * spec_.dims.ny;
}

PointSet GridTopology::dilate(const PointSet& xs) const {
  if (xs.universe() != count_)
    throw UniverseMismatch("dilate: set over " + std::to_string(xs.universe()) + " points, grid has " +
                           std::to_string(count_));
  PointSet out(count_);
  xs.for_each([&](std::size_t v) { for_each_successor(v, [&](std::size_t w) { out.insert_unchecked(w); }); });
  return out;
}

}  // namespace voxql::spatial
