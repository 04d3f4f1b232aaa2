#pragma once

#include <map>
#include <string>
#include <unordered_map>

#include "voxql/slcs/formula.hpp"
#include "voxql/spatial/closure_space.hpp"
#include "voxql/spatial/point_set.hpp"

namespace voxql::slcs {

using spatial::ClosureSpace;
using spatial::PointSet;

// A closure space together with a valuation of atomic propositions.
class ClosureModel {
 public:
  explicit ClosureModel(ClosureSpace space, std::map<std::string, PointSet> valuation = {});

  const ClosureSpace& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return space_.size(); }
  const std::map<std::string, PointSet>& valuation() const noexcept { return valuation_; }

  bool has_atom(const std::string& name) const { return valuation_.contains(name); }
  // Throws NotFound for unknown names.
  const PointSet& atom(const std::string& name) const;
  // Throws UniverseMismatch when the set does not cover this model's points.
  void set_atom(const std::string& name, PointSet points);

 private:
  ClosureSpace space_;
  std::map<std::string, PointSet> valuation_;
};

// Points from which target is reachable through corridor (see FormulaKind::ForwardReach).
PointSet sat_forward_reach(const ClosureModel& model, const PointSet& target, const PointSet& corridor);

// Points reachable from source through corridor (see FormulaKind::BackwardReach).
PointSet sat_backward_reach(const ClosureModel& model, const PointSet& source, const PointSet& corridor);

// Global model checker. Subformula denotations are memoized by structure, so
// repeated subtrees (within one formula or across calls) are evaluated once.
// The model must outlive the checker; atoms may be added between calls but
// not redefined.
class Checker {
 public:
  explicit Checker(const ClosureModel& model) : model_(&model) {}

  PointSet evaluate(const Formula& f);
  std::size_t memo_size() const noexcept { return memo_.size(); }

 private:
  const PointSet& eval(const Formula& f);

  const ClosureModel* model_;
  std::unordered_map<std::string, PointSet> memo_;
};

// {s : s |= f}. Throws NotFound when f mentions an atom missing from the model.
PointSet check(const ClosureModel& model, const Formula& f);

}  // namespace voxql::slcs
