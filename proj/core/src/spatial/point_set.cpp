#include "voxql/spatial/point_set.hpp"

#include <bit>
#include <sstream>

#include "voxql/error.hpp"

namespace voxql::spatial {

namespace {
std::size_t word_count(std::size_t universe) { return (universe + 63) / 64; }
}  // namespace

PointSet::PointSet(std::size_t universe) : universe_(universe), words_(word_count(universe), 0) {}

PointSet PointSet::full(std::size_t universe) {
  PointSet s(universe);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  s.trim();
  return s;
}

PointSet PointSet::of(std::size_t universe, std::initializer_list<std::size_t> members) {
  PointSet s(universe);
  for (auto m : members) s.insert(m);
  return s;
}

PointSet PointSet::from_members(std::size_t universe, std::span<const std::size_t> members) {
  PointSet s(universe);
  for (auto m : members) s.insert(m);
  return s;
}

std::size_t PointSet::count() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool PointSet::empty() const noexcept {
  for (auto w : words_)
    if (w != 0) return false;
  return true;
}

void PointSet::insert(std::size_t point) {
  if (point >= universe_)
    throw InvalidInput("point " + std::to_string(point) + " outside universe of size " + std::to_string(universe_));
  insert_unchecked(point);
}

void PointSet::erase(std::size_t point) {
  if (point >= universe_) return;
  words_[point >> 6] &= ~(std::uint64_t{1} << (point & 63));
}

void PointSet::clear() noexcept {
  for (auto& w : words_) w = 0;
}

PointSet PointSet::complement() const {
  PointSet out(*this);
  for (auto& w : out.words_) w = ~w;
  out.trim();
  return out;
}

bool PointSet::is_subset_of(const PointSet& other) const {
  require_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  return true;
}

PointSet& PointSet::operator|=(const PointSet& other) {
  require_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

PointSet& PointSet::operator&=(const PointSet& other) {
  require_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

PointSet& PointSet::operator-=(const PointSet& other) {
  require_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

std::vector<std::size_t> PointSet::members() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for_each([&](std::size_t p) { out.push_back(p); });
  return out;
}

void PointSet::trim() noexcept {
  const std::size_t tail = universe_ & 63;
  if (tail != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << tail) - 1;
}

std::string PointSet::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for_each([&](std::size_t p) {
    if (!first) os << ", ";
    os << p;
    first = false;
  });
  os << '}';
  return os.str();
}

void PointSet::require_same_universe(const PointSet& other) const {
  if (universe_ != other.universe_)
    throw UniverseMismatch("point sets over universes of size " + std::to_string(universe_) + " and " +
                           std::to_string(other.universe_));
}

}  // namespace voxql::spatial
