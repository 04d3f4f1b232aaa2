#include "voxql/slcs/checker.hpp"

#include <cstdint>
#include <vector>

#include "voxql/error.hpp"

namespace voxql::slcs {

ClosureModel::ClosureModel(ClosureSpace space, std::map<std::string, PointSet> valuation)
    : space_(std::move(space)) {
  for (auto& [name, points] : valuation) set_atom(name, std::move(points));
}

const PointSet& ClosureModel::atom(const std::string& name) const {
  auto it = valuation_.find(name);
  if (it == valuation_.end()) throw NotFound("unknown atomic proposition '" + name + "'");
  return it->second;
}

void ClosureModel::set_atom(const std::string& name, PointSet points) {
  if (name.empty()) throw InvalidInput("atom names must be nonempty");
  if (points.universe() != space_.size())
    throw UniverseMismatch("atom '" + name + "' covers " + std::to_string(points.universe()) +
                           " points, model has " + std::to_string(space_.size()));
  valuation_.insert_or_assign(name, std::move(points));
}

namespace {

enum class Direction { Forward, Backward };

void require_universe(const ClosureModel& model, const PointSet& a, const PointSet& b) {
  if (a.universe() != model.size() || b.universe() != model.size())
    throw UniverseMismatch("reachability operands do not match the model's " + std::to_string(model.size()) +
                           " points");
}

// Worklist flood fill. `inner` is the least superset of seed closed under
// "a corridor point one step away from inner joins inner"; the answer is the
// seed plus every point one step away from inner (that last step needs no
// corridor membership).
template <Direction dir, typename Topology>
PointSet flood(const Topology& topo, const PointSet& seed, const PointSet& corridor) {
  const std::size_t n = topo.size();
  PointSet inner = seed;
  PointSet result = seed;
  std::vector<std::uint32_t> work;
  work.reserve(std::min<std::size_t>(n, seed.count() + 1024));
  seed.for_each([&](std::size_t p) { work.push_back(static_cast<std::uint32_t>(p)); });

  auto expand = [&](std::size_t q) {
    result.insert_unchecked(q);
    if (!inner.test_unchecked(q) && corridor.test_unchecked(q)) {
      inner.insert_unchecked(q);
      work.push_back(static_cast<std::uint32_t>(q));
    }
  };
  while (!work.empty()) {
    const std::size_t p = work.back();
    work.pop_back();
    // Forward reachability walks edges backwards from the target, and vice versa.
    if constexpr (dir == Direction::Forward)
      topo.for_each_predecessor(p, expand);
    else
      topo.for_each_successor(p, expand);
  }
  return result;
}

template <Direction dir>
PointSet reach(const ClosureModel& model, const PointSet& seed, const PointSet& corridor) {
  require_universe(model, seed, corridor);
  return model.space().visit_topology([&](const auto& topo) { return flood<dir>(topo, seed, corridor); });
}

}  // namespace

PointSet sat_forward_reach(const ClosureModel& model, const PointSet& target, const PointSet& corridor) {
  return reach<Direction::Forward>(model, target, corridor);
}

PointSet sat_backward_reach(const ClosureModel& model, const PointSet& source, const PointSet& corridor) {
  return reach<Direction::Backward>(model, source, corridor);
}

PointSet Checker::evaluate(const Formula& f) { return eval(f); }

const PointSet& Checker::eval(const Formula& f) {
  if (!f) throw InvalidInput("cannot evaluate an empty formula");
  const std::string key = f.to_string();
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  PointSet value;
  const std::size_t n = model_->size();
  switch (f.kind()) {
    case FormulaKind::True:
      value = PointSet::full(n);
      break;
    case FormulaKind::Atom:
      value = model_->atom(f.atom_name());
      break;
    case FormulaKind::Not:
      value = eval(f.operand(0)).complement();
      break;
    case FormulaKind::And: {
      value = eval(f.operand(0));
      value &= eval(f.operand(1));
      break;
    }
    case FormulaKind::ForwardReach: {
      const PointSet target = eval(f.operand(0));
      value = sat_forward_reach(*model_, target, eval(f.operand(1)));
      break;
    }
    case FormulaKind::BackwardReach: {
      const PointSet source = eval(f.operand(0));
      value = sat_backward_reach(*model_, source, eval(f.operand(1)));
      break;
    }
    case FormulaKind::Near:
      value = spatial::closure_of(model_->space(), eval(f.operand(0)));
      break;
  }
  return memo_.emplace(key, std::move(value)).first->second;
}

PointSet check(const ClosureModel& model, const Formula& f) { return Checker(model).evaluate(f); }

}  // namespace voxql::slcs
