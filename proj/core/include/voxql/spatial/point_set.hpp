#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace voxql::spatial {

// Dense subset of the universe {0, ..., n-1}, stored as 64-bit words.
// Bits at positions >= n are always zero, so word-wise comparison is exact.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t universe);

  static PointSet full(std::size_t universe);
  static PointSet of(std::size_t universe, std::initializer_list<std::size_t> members);
  static PointSet from_members(std::size_t universe, std::span<const std::size_t> members);

  std::size_t universe() const noexcept { return universe_; }
  std::size_t count() const noexcept;
  bool empty() const noexcept;

  bool contains(std::size_t point) const noexcept {
    return point < universe_ && ((words_[point >> 6] >> (point & 63)) & 1u) != 0;
  }
  // Unchecked variants for hot loops; the caller guarantees point < universe().
  void insert_unchecked(std::size_t point) noexcept { words_[point >> 6] |= (std::uint64_t{1} << (point & 63)); }
  bool test_unchecked(std::size_t point) const noexcept { return ((words_[point >> 6] >> (point & 63)) & 1u) != 0; }

  void insert(std::size_t point);
  void erase(std::size_t point);
  void clear() noexcept;

  PointSet complement() const;
  bool is_subset_of(const PointSet& other) const;

  PointSet& operator|=(const PointSet& other);
  PointSet& operator&=(const PointSet& other);
  // Set difference.
  PointSet& operator-=(const PointSet& other);

  friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }
  friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
  friend PointSet operator-(PointSet a, const PointSet& b) { return a -= b; }
  friend bool operator==(const PointSet&, const PointSet&) = default;

  std::vector<std::size_t> members() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int bit = __builtin_ctzll(bits);
        f(w * 64 + static_cast<std::size_t>(bit));
        bits &= bits - 1;
      }
    }
  }

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }
  // Re-establishes the zero-tail invariant after raw word manipulation.
  void trim() noexcept;

  // "{0,1,4}" style rendering, mainly for test diagnostics.
  std::string to_string() const;

 private:
  void require_same_universe(const PointSet& other) const;

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace voxql::spatial
