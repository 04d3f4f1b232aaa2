#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "voxql/spatial/point_set.hpp"
#include "voxql/spatial/relation.hpp"

namespace voxql::spatial {

enum class Connectivity { Face6, Full26 };

struct Dims {
  std::size_t nx = 1;
  std::size_t ny = 1;
  std::size_t nz = 1;

  std::size_t voxel_count() const noexcept { return nx * ny * nz; }
  // x-fastest linearization, the NIfTI data order.
  std::size_t index(std::size_t x, std::size_t y, std::size_t z) const noexcept { return x + nx * (y + ny * z); }

  friend bool operator==(const Dims&, const Dims&) = default;
};

struct Coord {
  std::size_t x = 0;
  std::size_t y = 0;
  std::size_t z = 0;
  friend bool operator==(const Coord&, const Coord&) = default;
};

inline Coord coord_of(const Dims& d, std::size_t index) noexcept {
  return {index % d.nx, (index / d.nx) % d.ny, index / (d.nx * d.ny)};
}

struct Spacing {
  double sx = 1.0;
  double sy = 1.0;
  double sz = 1.0;
  friend bool operator==(const Spacing&, const Spacing&) = default;
};

struct GridSpec {
  Dims dims;
  Spacing spacing;
  Connectivity connectivity = Connectivity::Face6;

  // Throws InvalidInput unless every extent is >= 1 and every spacing > 0.
  void validate() const;
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// Materialized voxel adjacency: every voxel is related to itself and to its
// face (Face6) or face/edge/corner (Full26) neighbours. Symmetric and reflexive.
Relation grid_relation(const GridSpec& spec);

// Implicit form of grid_relation for volumes too large to materialize.
class GridTopology {
 public:
  explicit GridTopology(const GridSpec& spec);

  const GridSpec& spec() const noexcept { return spec_; }
  std::size_t size() const noexcept { return count_; }

  template <typename F>
  void for_each_successor(std::size_t v, F&& f) const {
    const std::size_t nx = spec_.dims.nx, ny = spec_.dims.ny, nz = spec_.dims.nz;
    const std::size_t x = v % nx;
    const std::size_t y = (v / nx) % ny;
    const std::size_t z = v / plane_;
    if (spec_.connectivity == Connectivity::Face6) {
      f(v);
      if (x > 0) f(v - 1);
      if (x + 1 < nx) f(v + 1);
      if (y > 0) f(v - nx);
      if (y + 1 < ny) f(v + nx);
      if (z > 0) f(v - plane_);
      if (z + 1 < nz) f(v + plane_);
      return;
    }
    const std::size_t z0 = z > 0 ? z - 1 : z, z1 = z + 1 < nz ? z + 1 : z;
    const std::size_t y0 = y > 0 ? y - 1 : y, y1 = y + 1 < ny ? y + 1 : y;
    const std::size_t x0 = x > 0 ? x - 1 : x, x1 = x + 1 < nx ? x + 1 : x;
    for (std::size_t zz = z0; zz <= z1; ++zz)
      for (std::size_t yy = y0; yy <= y1; ++yy)
        for (std::size_t xx = x0; xx <= x1; ++xx) f(xx + nx * (yy + ny * zz));
  }

  // The grid relation is symmetric.
  template <typename F>
  void for_each_predecessor(std::size_t v, F&& f) const {
    for_each_successor(v, std::forward<F>(f));
  }

  // Morphological dilation by the structuring element of the connectivity.
  PointSet dilate(const PointSet& xs) const;

 private:
  GridSpec spec_;
  std::size_t count_;
  std::size_t plane_;
};

}  // namespace voxql::spatial
