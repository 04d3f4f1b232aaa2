#include "voxql/spatial/closure_space.hpp"

#include <random>
#include <string>

#include "voxql/error.hpp"

namespace voxql::spatial {

ExplicitTopology::ExplicitTopology(Relation forward)
    : forward_(std::move(forward)), backward_(forward_.reversed()) {}

ClosureSpace::ClosureSpace(Relation relation)
    : topology_(std::make_shared<const ExplicitTopology>(std::move(relation))) {}

ClosureSpace::ClosureSpace(const GridSpec& grid) : topology_(GridTopology(grid)) {}

std::size_t ClosureSpace::size() const noexcept {
  return visit_topology([](const auto& topo) { return topo.size(); });
}

const GridSpec* ClosureSpace::grid() const noexcept {
  if (auto* g = std::get_if<GridTopology>(&topology_)) return &g->spec();
  return nullptr;
}

Relation ClosureSpace::relation() const {
  if (auto* g = std::get_if<GridTopology>(&topology_)) return grid_relation(g->spec());
  return std::get<std::shared_ptr<const ExplicitTopology>>(topology_)->forward();
}

PointSet closure_of(const ClosureSpace& space, const PointSet& xs) {
  if (xs.universe() != space.size())
    throw UniverseMismatch("closure: set over " + std::to_string(xs.universe()) + " points, space has " +
                           std::to_string(space.size()));
  return space.visit_topology([&](const auto& topo) -> PointSet {
    if constexpr (std::is_same_v<std::decay_t<decltype(topo)>, GridTopology>)
      return topo.dilate(xs);
    else
      return lift(topo.forward(), xs);
  });
}

PointSet interior_of(const ClosureSpace& space, const PointSet& xs) {
  return closure_of(space, xs.complement()).complement();
}

Relation induced_relation(const ClosureSpace& space) {
  const std::size_t n = space.size();
  std::vector<std::vector<std::size_t>> rows(n);
  PointSet single(n);
  for (std::size_t x = 0; x < n; ++x) {
    single.clear();
    single.insert_unchecked(x);
    rows[x] = closure_of(space, single).members();
  }
  return Relation(rows);
}

ClosureSpace induced_space(const Relation& rel) { return ClosureSpace(rel); }

namespace {

struct Verdict {
  bool extensive = true;
  bool idempotent = true;

  void observe(const ClosureSpace& space, const PointSet& xs) {
    const PointSet c = closure_of(space, xs);
    if (!xs.is_subset_of(c)) extensive = false;
    if (idempotent && closure_of(space, c) != c) idempotent = false;
  }
};

}  // namespace

SpaceClass classify_space(const ClosureSpace& space, std::size_t exhaustive_limit) {
  const std::size_t n = space.size();
  Verdict verdict;
  if (n <= exhaustive_limit && n < 63) {
    const std::uint64_t subsets = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
      PointSet xs(n);
      if (n > 0) xs.words()[0] = mask;
      verdict.observe(space, xs);
    }
  } else {
    verdict.observe(space, PointSet(n));
    verdict.observe(space, PointSet::full(n));
    for (std::size_t x = 0; x < n; ++x) verdict.observe(space, PointSet::of(n, {x}));
    std::mt19937_64 rng(0x5eed5eedULL);
    for (int sample = 0; sample < 64; ++sample) {
      PointSet xs(n);
      for (auto& w : xs.words()) w = rng();
      xs.trim();
      verdict.observe(space, xs);
    }
  }
  return {verdict.extensive, verdict.extensive && verdict.idempotent};
}

}  // namespace voxql::spatial
