#include "evaluator.hpp"

#include <chrono>
#include <cstdio>

#include "voxql/error.hpp"
#include "voxql/volume/mask.hpp"
#include "voxql/volume/nifti.hpp"

namespace voxql::engine {

using lang::Expr;

namespace {

volume::Comparison comparison_of(lang::CompareOp op) {
  switch (op) {
    case lang::CompareOp::Gt:
      return volume::Comparison::Greater;
    case lang::CompareOp::Ge:
      return volume::Comparison::GreaterEqual;
    case lang::CompareOp::Lt:
      return volume::Comparison::Less;
    case lang::CompareOp::Le:
      return volume::Comparison::LessEqual;
  }
  throw InvalidInput("unknown comparison");
}

std::string milliseconds_since(std::chrono::steady_clock::time_point start) {
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f ms", ms);
  return buf;
}

std::string describe(const spatial::Dims& d) {
  return std::to_string(d.nx) + "x" + std::to_string(d.ny) + "x" + std::to_string(d.nz);
}

}  // namespace

Evaluator::Evaluator(const std::filesystem::path& case_dir, std::map<std::string, std::string> load_paths,
                     spatial::Connectivity connectivity, std::vector<std::string>& log)
    : case_dir_(case_dir), load_paths_(std::move(load_paths)), connectivity_(connectivity), log_(log) {}

void Evaluator::collect_layers(const Expr& e, std::set<std::string>& out) const {
  if (e.kind == Expr::Kind::Ident) out.insert(e.text);
  for (const auto& a : e.args) collect_layers(*a, out);
}

std::vector<std::string> Evaluator::sources(const Expr& e) const {
  std::set<std::string> names;
  collect_layers(e, names);
  std::vector<std::string> out;
  for (const auto& n : names)
    if (auto it = load_paths_.find(n); it != load_paths_.end()) out.push_back(it->second);
  return out;
}

const volume::VoxelVolume& Evaluator::layer(const std::string& name) {
  if (auto it = volumes_.find(name); it != volumes_.end()) return it->second;
  auto path = load_paths_.find(name);
  if (path == load_paths_.end()) throw NotFound("no layer bound to '" + name + "'");
  const auto start = std::chrono::steady_clock::now();
  const std::filesystem::path file = case_dir_ / path->second;
  if (!std::filesystem::exists(file)) throw NotFound("missing layer file " + path->second);
  auto vol = volume::read_nifti_file(file);
  log_.push_back("[load] " + name + " <- " + path->second + " (" + describe(vol.dims()) + " " +
                 volume::to_string(vol.dtype()) + ") " + milliseconds_since(start));
  return volumes_.emplace(name, std::move(vol)).first->second;
}

void Evaluator::prepare(const std::vector<lang::ExprPtr>& exprs, const std::optional<std::string>& fallback_layer) {
  std::set<std::string> names;
  for (const auto& e : exprs) collect_layers(*e, names);
  if (names.empty() && fallback_layer) names.insert(*fallback_layer);
  if (names.empty()) throw InvalidInput("the case has no layers to define the voxel grid");

  std::optional<std::string> first;
  for (const auto& name : names) {
    const auto& vol = layer(name);
    if (!grid_) {
      grid_ = spatial::GridSpec{vol.dims(), vol.spacing(), connectivity_};
      first = name;
    } else if (vol.dims() != grid_->dims) {
      throw InvalidInput("dims mismatch: layer '" + name + "' is " + describe(vol.dims()) + " but '" + *first +
                         "' is " + describe(grid_->dims));
    }
  }
  model_ = std::make_unique<slcs::ClosureModel>(spatial::ClosureSpace(*grid_));
  checker_ = std::make_unique<slcs::Checker>(*model_);
}

const spatial::Dims& Evaluator::dims() const { return grid_->dims; }
const spatial::Spacing& Evaluator::spacing() const { return grid_->spacing; }

slcs::Formula Evaluator::formula(const Expr& e) {
  using slcs::Formula;
  switch (e.kind) {
    case Expr::Kind::Bool:
      return e.flag ? Formula::truth() : Formula::falsity();
    case Expr::Kind::Not:
      return Formula::negation(formula(*e.args[0]));
    case Expr::Kind::And:
      return Formula::conjunction(formula(*e.args[0]), formula(*e.args[1]));
    case Expr::Kind::Or:
      return Formula::disjunction(formula(*e.args[0]), formula(*e.args[1]));
    case Expr::Kind::Compare: {
      const Expr& operand = *e.args[0];
      if (operand.kind != Expr::Kind::Ident) throw InvalidInput("comparison operand must be a layer");
      const std::string atom = operand.text + " " + lang::spelling(e.op) + " " + e.text;
      if (!model_->has_atom(atom)) {
        const auto start = std::chrono::steady_clock::now();
        auto mask = volume::threshold(layer(operand.text), comparison_of(e.op), e.number);
        log_.push_back("[atom] " + atom + ": " + std::to_string(mask.count()) + " voxels " + milliseconds_since(start));
        model_->set_atom(atom, std::move(mask.points));
      }
      return Formula::atom(atom);
    }
    case Expr::Kind::Call:
      if (e.text == "through") return Formula::forward_reach(formula(*e.args[0]), formula(*e.args[1]));
      if (e.text == "reachedBy") return Formula::backward_reach(formula(*e.args[0]), formula(*e.args[1]));
      if (e.text == "near") return Formula::near(formula(*e.args[0]));
      if (e.text == "interior") return Formula::interior(formula(*e.args[0]));
      break;
    default:
      break;
  }
  throw InvalidInput("expression is not a boolean image");
}

spatial::PointSet Evaluator::mask(const Expr& e) { return checker_->evaluate(formula(e)); }

double Evaluator::number(const Expr& e) {
  if (e.kind == Expr::Kind::Number) return e.number;
  if (e.kind == Expr::Kind::Call && e.text == "dice") {
    const volume::BinaryMask a(dims(), mask(*e.args[0]));
    const volume::BinaryMask b(dims(), mask(*e.args[1]));
    const auto result = volume::dice_detailed(a, b);
    if (result.both_empty) log_.push_back("[note] dice of two empty masks is 0/0; reported as 1.0");
    return result.value;
  }
  if (e.kind == Expr::Kind::Call && e.text == "volume")
    return volume::mask_stats(volume::BinaryMask(dims(), mask(*e.args[0])), spacing()).volume_mm3;
  throw InvalidInput("expression is not a number");
}

}  // namespace voxql::engine
