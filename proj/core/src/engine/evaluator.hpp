#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "voxql/engine/run.hpp"
#include "voxql/lang/ast.hpp"
#include "voxql/slcs/checker.hpp"
#include "voxql/volume/volume.hpp"

namespace voxql::engine {

// Evaluates expanded, typechecked expressions over the voxel closure model of
// one case. Layers load on first use; thresholds become atoms on demand.
class Evaluator {
 public:
  Evaluator(const std::filesystem::path& case_dir, std::map<std::string, std::string> load_paths,
            spatial::Connectivity connectivity, std::vector<std::string>& log);

  // Loads every layer `exprs` mention (at least one, falling back to
  // `fallback_layer`) and builds the grid model. Throws on dims mismatch.
  void prepare(const std::vector<lang::ExprPtr>& exprs, const std::optional<std::string>& fallback_layer);

  spatial::PointSet mask(const lang::Expr& e);
  double number(const lang::Expr& e);

  const spatial::Dims& dims() const;
  const spatial::Spacing& spacing() const;

  // Layer files an expression reads.
  std::vector<std::string> sources(const lang::Expr& e) const;

 private:
  slcs::Formula formula(const lang::Expr& e);
  const volume::VoxelVolume& layer(const std::string& name);
  void collect_layers(const lang::Expr& e, std::set<std::string>& out) const;

  std::filesystem::path case_dir_;
  std::map<std::string, std::string> load_paths_;
  spatial::Connectivity connectivity_;
  std::vector<std::string>& log_;
  std::map<std::string, volume::VoxelVolume> volumes_;
  std::optional<spatial::GridSpec> grid_;
  std::unique_ptr<slcs::ClosureModel> model_;
  std::unique_ptr<slcs::Checker> checker_;
};

}  // namespace voxql::engine
