#pragma once

#include <cstddef>

#include "voxql/slcs/checker.hpp"
#include "voxql/slcs/formula.hpp"

namespace voxql::slcs {

// Direct transcription of the SLCS semantics over an explicit adjacency
// matrix: reachability is decided by a corridor-restricted transitive closure
// rather than by flood fill. Shares no evaluation code with Checker and is
// meant as a test oracle for small models. Throws InvalidInput when the model
// has more than max_points points.
PointSet brute_force_check(const ClosureModel& model, const Formula& f, std::size_t max_points = 24);

}  // namespace voxql::slcs
