#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "voxql/engine/run.hpp"
#include "voxql/store/atomic_file.hpp"
#include "voxql/store/workspace_state.hpp"

namespace voxql::store {

struct StoreConfig {
  std::filesystem::path datasets;
  std::filesystem::path scripts;
  std::filesystem::path workspaces;

  // DATASET_PATH, SCRIPTS_PATH, WORKSPACES_PATH; each defaults to
  // ./static/{datasets,scripts,workspaces}.
  static StoreConfig from_environment();
};

struct DatasetRef {
  std::string name;
  friend bool operator==(const DatasetRef&, const DatasetRef&) = default;
};

struct CaseRef {
  std::string name;
  std::string path;  // "dataset/case"
  friend bool operator==(const CaseRef&, const CaseRef&) = default;
};

struct LayerRef {
  std::string name;  // file name without .nii / .nii.gz
  std::string path;  // relative to the dataset root: "case/file"
  friend bool operator==(const LayerRef&, const LayerRef&) = default;
};

struct ExampleScript {
  std::string id;    // file stem
  std::string name;  // stem with '_' shown as ' '
  friend bool operator==(const ExampleScript&, const ExampleScript&) = default;
};

struct WorkspaceInfo {
  std::string id;
  std::string name;
  std::string created_at;
  std::optional<std::string> source_id;
  friend bool operator==(const WorkspaceInfo&, const WorkspaceInfo&) = default;
};

struct Workspace {
  WorkspaceInfo info;
  WorkspaceState state;

  // {id, name, createdAt, sourceId?, state}
  nlohmann::json to_json() const;
};

inline constexpr std::string_view kMissingAncestor = "<missing>";

nlohmann::json to_json(const DatasetRef& d);
nlohmann::json to_json(const CaseRef& c);
nlohmann::json to_json(const LayerRef& l);
nlohmann::json to_json(const ExampleScript& s);

// .nii / .nii.gz files directly inside dir, name-sorted. Used for both stored
// cases and ad-hoc case directories.
std::vector<LayerRef> layers_in_directory(const std::filesystem::path& dir, const std::string& path_prefix = "");

// Layout below the workspaces root:
//   <id>/meta.json       {id, name, createdAt, sourceId?}
//   <id>/workspace.json  WorkspaceState
//   <id>/runs/...        see engine::execute_run
// Entries starting with '.' are in-flight temporaries and are ignored.
class Store {
 public:
  using Logger = std::function<void(const std::string&)>;

  // Creates the workspaces root if needed. Warnings go to stderr unless a
  // logger is supplied.
  explicit Store(StoreConfig config, Logger warn = {});

  const StoreConfig& config() const noexcept { return config_; }

  // Discovery. Unknown names and unsafe segments throw NotFound.
  std::vector<DatasetRef> list_datasets() const;
  DatasetRef get_dataset(const std::string& dataset) const;
  std::vector<CaseRef> list_cases(const std::string& dataset) const;
  std::vector<LayerRef> list_layers(const std::string& dataset, const std::string& case_name) const;
  std::filesystem::path layer_file(const std::string& dataset, const std::string& case_name,
                                   const std::string& layer) const;
  // Case path "dataset/case" -> every layer of that case.
  engine::CaseInput case_input(const std::string& case_path) const;

  std::vector<ExampleScript> list_scripts() const;
  std::string script_text(const std::string& id) const;

  // Without source_id: fresh workspace with `state` or the default state.
  // With source_id: copies the source's state and runs, records the source.
  Workspace create_workspace(const std::string& name, const std::optional<std::string>& source_id = std::nullopt,
                             const std::optional<WorkspaceState>& state = std::nullopt);
  Workspace get_workspace(const std::string& id) const;
  std::vector<WorkspaceInfo> list_workspaces() const;
  void update_workspace(const std::string& id, const std::optional<std::string>& name,
                        const std::optional<WorkspaceState>& state);
  void save_workspace_state(const std::string& id, const WorkspaceState& state, const FaultHook& hook = {});
  void delete_workspace(const std::string& id);
  std::filesystem::path workspace_dir(const std::string& id) const;

  // self -> root; ends with kMissingAncestor if an ancestor was deleted.
  std::vector<std::string> lineage(const std::string& id) const;

  engine::RunRecord execute_run(const std::string& workspace_id, const std::string& case_path,
                                std::string_view user_script);
  // Timestamp-sorted; unreadable run.json files are skipped with a warning.
  std::vector<engine::RunRecord> list_runs(const std::string& workspace_id) const;
  std::filesystem::path run_output_file(const std::string& workspace_id, const std::string& case_path,
                                        const std::string& run_id, const std::string& label) const;

 private:
  std::filesystem::path existing_workspace_dir(const std::string& id) const;
  WorkspaceInfo read_info(const std::filesystem::path& dir) const;
  std::shared_ptr<std::mutex> lock_for(const std::string& id) const;
  std::string fresh_workspace_id() const;

  StoreConfig config_;
  Logger warn_;
  mutable std::mutex locks_mutex_;
  mutable std::map<std::string, std::shared_ptr<std::mutex>> locks_;
};

}  // namespace voxql::store
