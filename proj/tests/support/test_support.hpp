#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "voxql/spatial/point_set.hpp"
#include "voxql/spatial/relation.hpp"
#include "voxql/volume/volume.hpp"

namespace voxql::testing {

namespace fs = std::filesystem;

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const noexcept { return path_; }
  fs::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  fs::path path_;
};

void write_file(const fs::path& file, const std::string& content);
std::string read_file(const fs::path& file);
std::vector<std::uint8_t> read_bytes(const fs::path& file);

std::string sha256_hex(const std::string& bytes);
// Hash over every regular file below root: relative path and content, in path order.
std::string tree_hash(const fs::path& root);

fs::path data_dir();

// 2x2x2 U8 volume with values 0..7 in x-fastest order.
volume::VoxelVolume golden_volume();

// Fixture tree:
//   datasets/BraTS2019/patient_001/{t1.nii.gz (golden), seg.nii.gz, notes.txt}
//   datasets/BraTS2019/patient_002/{t1.nii.gz}
//   datasets/stray.txt
//   scripts/{threshold.imgql, dice_check.imgql}
//   workspaces/
struct Fixture {
  TempDir root;
  fs::path datasets, scripts, workspaces;
  Fixture();
};

// Percent-encoded path segments that try to step outside a root: dot
// segments in several encodings, encoded separators, NUL bytes, absolute and
// drive-prefixed paths. At least 100 entries.
std::vector<std::string> traversal_segments();

// ---- independent oracles ----

// Reference model over std::set, sharing nothing with PointSet/Relation internals.
using Rows = std::vector<std::set<std::size_t>>;

Rows random_rows(std::mt19937_64& rng, std::size_t n, double density);
spatial::Relation to_relation(const Rows& rows);
std::set<std::size_t> to_set(const spatial::PointSet& p);
spatial::PointSet to_pointset(std::size_t n, const std::set<std::size_t>& s);
spatial::PointSet random_set(std::mt19937_64& rng, std::size_t n, double density = 0.5);

// Union of rows[x] over x in xs.
std::set<std::size_t> lift_oracle(const Rows& rows, const std::set<std::size_t>& xs);

// Forward reachability by enumerating simple paths with DFS: s satisfies it
// iff s is in target or some path s, s1, ..., sn with s1..s(n-1) in corridor
// reaches target. Exponential; use on tiny models only.
std::set<std::size_t> reach_by_paths(const Rows& rows, const std::set<std::size_t>& target,
                                     const std::set<std::size_t>& corridor);
Rows transpose(const Rows& rows);

}  // namespace voxql::testing
