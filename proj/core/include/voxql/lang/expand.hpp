#pragma once

#include <functional>
#include <optional>
#include <string>

#include "voxql/lang/ast.hpp"

namespace voxql::lang {

// Returns the text of an imported script, or nullopt if it does not exist.
using ImportResolver = std::function<std::optional<std::string>(const std::string& path)>;

inline constexpr int kMaxExpansionDepth = 64;

// Inlines imports (each file once) and substitutes every let, checking arity.
// The result holds only load, save and print statements. Errors: unknown
// identifier, arity mismatch, recursive let, import cycle, missing import,
// duplicate names or labels, expansion deeper than kMaxExpansionDepth.
Checked<Script> expand(const Script& script, const ImportResolver& resolver = {});

}  // namespace voxql::lang
