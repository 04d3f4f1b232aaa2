#include "voxql/spatial/relation.hpp"

#include <algorithm>
#include <string>

#include "voxql/error.hpp"

namespace voxql::spatial {

Relation::Relation(const std::vector<std::vector<std::size_t>>& neighbors) {
  const std::size_t n = neighbors.size();
  offsets_.reserve(n + 1);
  offsets_.assign(1, 0);
  std::vector<std::uint32_t> row;
  for (std::size_t x = 0; x < n; ++x) {
    row.clear();
    for (auto t : neighbors[x]) {
      if (t >= n)
        throw InvalidInput("relation target " + std::to_string(t) + " of point " + std::to_string(x) +
                           " outside universe of size " + std::to_string(n));
      row.push_back(static_cast<std::uint32_t>(t));
    }
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    targets_.insert(targets_.end(), row.begin(), row.end());
    offsets_.push_back(targets_.size());
  }
}

Relation Relation::identity(std::size_t n) {
  std::vector<std::vector<std::size_t>> rows(n);
  for (std::size_t x = 0; x < n; ++x) rows[x] = {x};
  return Relation(rows);
}

PointSet Relation::neighbor_set(std::size_t x) const {
  PointSet s(size());
  for (auto t : neighbors(x)) s.insert_unchecked(t);
  return s;
}

Relation Relation::reversed() const {
  const std::size_t n = size();
  Relation out;
  out.offsets_.assign(n + 1, 0);
  for (auto t : targets_) ++out.offsets_[t + 1];
  for (std::size_t i = 0; i < n; ++i) out.offsets_[i + 1] += out.offsets_[i];
  out.targets_.resize(targets_.size());
  std::vector<std::size_t> cursor(out.offsets_.begin(), out.offsets_.end() - 1);
  // Rows are emitted in increasing source order, so each output row stays sorted.
  for (std::size_t x = 0; x < n; ++x)
    for (auto t : neighbors(x)) out.targets_[cursor[t]++] = static_cast<std::uint32_t>(x);
  return out;
}

bool Relation::is_reflexive() const noexcept {
  for (std::size_t x = 0; x < size(); ++x) {
    auto row = neighbors(x);
    if (!std::binary_search(row.begin(), row.end(), static_cast<std::uint32_t>(x))) return false;
  }
  return true;
}

bool Relation::is_symmetric() const { return reversed() == *this; }

std::vector<std::vector<std::size_t>> Relation::rows() const {
  std::vector<std::vector<std::size_t>> out(size());
  for (std::size_t x = 0; x < size(); ++x)
    for (auto t : neighbors(x)) out[x].push_back(t);
  return out;
}

PointSet lift(const Relation& rel, const PointSet& xs) {
  if (xs.universe() != rel.size())
    throw UniverseMismatch("lift: set over " + std::to_string(xs.universe()) + " points, relation over " +
                           std::to_string(rel.size()));
  PointSet out(rel.size());
  xs.for_each([&](std::size_t x) {
    for (auto t : rel.neighbors(x)) out.insert_unchecked(t);
  });
  return out;
}

}  // namespace voxql::spatial
