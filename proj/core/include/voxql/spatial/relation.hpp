#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "voxql/spatial/point_set.hpp"

namespace voxql::spatial {

// A relation R : S -> 2^S over S = {0, ..., n-1}, stored in compressed rows.
// Each row is sorted and free of duplicates.
class Relation {
 public:
  Relation() = default;
  // Throws InvalidInput if any target is >= neighbors.size().
  explicit Relation(const std::vector<std::vector<std::size_t>>& neighbors);

  static Relation identity(std::size_t n);

  std::size_t size() const noexcept { return offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return targets_.size(); }

  std::span<const std::uint32_t> neighbors(std::size_t x) const noexcept {
    return {targets_.data() + offsets_[x], targets_.data() + offsets_[x + 1]};
  }
  PointSet neighbor_set(std::size_t x) const;

  // R^-1: y in reversed()(x) iff x in R(y).
  Relation reversed() const;

  bool is_reflexive() const noexcept;
  bool is_symmetric() const;

  std::vector<std::vector<std::size_t>> rows() const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint32_t> targets_;
};

// 2^R(X): the union of R(x) over x in X.
PointSet lift(const Relation& rel, const PointSet& xs);

}  // namespace voxql::spatial
