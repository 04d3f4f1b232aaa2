#include <gtest/gtest.h>

#include "test_support.hpp"
#include "voxql/path_rules.hpp"

namespace {

using namespace voxql;

TEST(PathRules, RelativePaths) {
  EXPECT_TRUE(is_safe_relative_path("a/b.nii"));
  for (const char* bad : {"", "/a", "a/../b", "..", ".", "a//b", "a/", "C:/x", "c:x", "a\\b"})
    EXPECT_FALSE(is_safe_relative_path(bad)) << bad;
  EXPECT_FALSE(is_safe_relative_path(std::string("a\0b", 3)));
  EXPECT_TRUE(is_safe_segment("abc"));
  EXPECT_FALSE(is_safe_segment("a/b"));
}

TEST(PathRules, PercentCoding) {
  EXPECT_EQ(percent_encode("BraTS2019/patient_001"), "BraTS2019%2Fpatient_001");
  EXPECT_EQ(percent_decode("BraTS2019%2fpatient_001"), "BraTS2019/patient_001");
  EXPECT_EQ(percent_decode("%2e%2E"), "..");
  EXPECT_FALSE(percent_decode("%").has_value());
  EXPECT_FALSE(percent_decode("%4").has_value());
  EXPECT_FALSE(percent_decode("%zz").has_value());
  const std::string odd = "a b/c%d?e#\xff";
  EXPECT_EQ(percent_decode(percent_encode(odd)), odd);
}

TEST(PathRules, ResolvesWithin) {
  voxql::testing::TempDir dir;
  std::filesystem::create_directories(dir / "root/sub");
  EXPECT_TRUE(resolves_within(dir / "root", "sub/x"));
  EXPECT_TRUE(resolves_within(dir / "root", "missing/deeper"));
  EXPECT_FALSE(resolves_within(dir / "root", "../x"));
  std::filesystem::create_directory_symlink(dir.path(), dir / "root/up");
  EXPECT_FALSE(resolves_within(dir / "root", "up/x"));
}

}  // namespace
