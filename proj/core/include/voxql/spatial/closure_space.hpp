#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <type_traits>
#include <variant>

#include "voxql/spatial/grid.hpp"
#include "voxql/spatial/point_set.hpp"
#include "voxql/spatial/relation.hpp"

namespace voxql::spatial {

// Topology backed by an explicit relation and its precomputed inverse.
class ExplicitTopology {
 public:
  explicit ExplicitTopology(Relation forward);

  std::size_t size() const noexcept { return forward_.size(); }
  const Relation& forward() const noexcept { return forward_; }
  const Relation& backward() const noexcept { return backward_; }

  template <typename F>
  void for_each_successor(std::size_t v, F&& f) const {
    for (auto t : forward_.neighbors(v)) f(static_cast<std::size_t>(t));
  }
  template <typename F>
  void for_each_predecessor(std::size_t v, F&& f) const {
    for (auto t : backward_.neighbors(v)) f(static_cast<std::size_t>(t));
  }

 private:
  Relation forward_;
  Relation backward_;
};

// A finite (hence complete) closure space, represented by the relation whose
// lifting is its closure operator. Voxel grids keep the relation implicit.
class ClosureSpace {
 public:
  explicit ClosureSpace(Relation relation);
  explicit ClosureSpace(const GridSpec& grid);

  std::size_t size() const noexcept;
  bool is_grid() const noexcept { return std::holds_alternative<GridTopology>(topology_); }
  // nullptr unless the space was built from a GridSpec.
  const GridSpec* grid() const noexcept;

  // The relation realizing this space's closure. Materializes grids.
  Relation relation() const;

  template <typename F>
  decltype(auto) visit_topology(F&& f) const {
    return std::visit(
        [&](const auto& topo) -> decltype(auto) {
          if constexpr (std::is_same_v<std::decay_t<decltype(topo)>, GridTopology>)
            return f(topo);
          else
            return f(*topo);
        },
        topology_);
  }

 private:
  std::variant<std::shared_ptr<const ExplicitTopology>, GridTopology> topology_;
};

// C(X) = 2^R(X).
PointSet closure_of(const ClosureSpace& space, const PointSet& xs);

// I(X) = C(X^c)^c.
PointSet interior_of(const ClosureSpace& space, const PointSet& xs);

// R_C(x) = C({x}).
Relation induced_relation(const ClosureSpace& space);

// C_R = 2^R.
ClosureSpace induced_space(const Relation& rel);

struct SpaceClass {
  bool pretopological = false;
  bool topological = false;
};

// Tests extensivity and idempotence of the closure. Exhaustive over all 2^n
// subsets when n <= exhaustive_limit; otherwise over the empty set, the full
// set, every singleton and 64 subsets drawn from a fixed seed.
SpaceClass classify_space(const ClosureSpace& space, std::size_t exhaustive_limit = 16);

}  // namespace voxql::spatial
