#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace voxql {

// Why `path` is not an acceptable relative path, or nullopt if it is.
// Rejected: empty, absolute, drive prefixes ("C:"), backslashes, NUL bytes,
// and any "." or ".." segment or empty segment.
std::optional<std::string> relative_path_violation(std::string_view path);

inline bool is_safe_relative_path(std::string_view path) { return !relative_path_violation(path).has_value(); }

// A single path component: a safe relative path without '/'.
bool is_safe_segment(std::string_view segment);

// True iff root / relative, after symlink resolution of the existing prefix
// and lexical normalization of the rest, stays inside root.
bool resolves_within(const std::filesystem::path& root, std::string_view relative);

// Percent-decodes one URL segment; nullopt on malformed escapes.
std::optional<std::string> percent_decode(std::string_view text);
// Encodes everything outside [A-Za-z0-9._~-]; used for case paths in URLs and directory names.
std::string percent_encode(std::string_view text);

}  // namespace voxql
