#pragma once

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "voxql/lang/ast.hpp"

namespace voxql::lang {

struct SandboxRoots {
  // When set, import paths must resolve inside this directory.
  std::optional<std::filesystem::path> scripts_dir;
  // When set, load paths must resolve inside this directory.
  std::optional<std::filesystem::path> case_dir;
};

bool is_valid_label(std::string_view label);

// Path rules for load/import (relative, no "..", no drive prefix, no
// backslash) plus the [A-Za-z0-9_-]{1,64} label rule for save/print. With
// roots, paths are also resolved (following symlinks) and must stay inside.
std::vector<Diagnostic> validate_sandbox(const Script& script, const SandboxRoots& roots = {});

}  // namespace voxql::lang
