#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace voxql::store {

// Persisted UI/data state of a workspace (workspace.json):
//
//   data: {openedDatasetsNames[], openedCasesPaths[], openedRunsIds[]}
//   lastGlobalStylesByLayerName: {name: Style}
//   datasetLayersState: {openedLayersPathsByCasePath: {casePath: [layerPath]},
//                        stylesByLayerName: {name: Style}}
//   runsLayersStates: {runId: <same shape as datasetLayersState>}
//   ui: {isDarkMode, sidebars: {navigation, layers, scriptEditor},
//        fullscreenCasePath?: string|null, layerContext: "dataset"|"run",
//        scriptEditor: {content}}
//   Style = {colormap: string, opacity: 0..1, visible: bool}
//
// Fields not listed are kept verbatim so newer clients round-trip.
class WorkspaceState {
 public:
  static WorkspaceState defaults();
  // Throws InvalidInput listing every schema violation.
  static WorkspaceState from_json(nlohmann::json j);

  const nlohmann::json& to_json() const noexcept { return json_; }
  std::string script_content() const;

  friend bool operator==(const WorkspaceState&, const WorkspaceState&) = default;

 private:
  explicit WorkspaceState(nlohmann::json j) : json_(std::move(j)) {}
  nlohmann::json json_;
};

// Every schema violation in j, as "path: problem" strings.
std::vector<std::string> validate_state(const nlohmann::json& j);

}  // namespace voxql::store
