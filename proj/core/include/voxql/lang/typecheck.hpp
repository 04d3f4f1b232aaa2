#pragma once

#include <optional>
#include <vector>

#include "voxql/lang/ast.hpp"

namespace voxql::lang {

enum class Sort { ScalarImage, BoolImage, Number };
const char* to_string(Sort s);

// Sort rules: loads are scalar images; "scalar op NUMBER" is the only bridge
// to boolean images; &, |, !, through, reachedBy, near and interior work on
// boolean images; dice and volume yield numbers. save needs a boolean image,
// print a number. Expects an expanded script.
std::vector<Diagnostic> typecheck(const Script& script);

}  // namespace voxql::lang
