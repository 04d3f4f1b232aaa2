#include "voxql/store/store.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "voxql/error.hpp"
#include "voxql/path_rules.hpp"

namespace voxql::store {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kMetaFile = "meta.json";
constexpr const char* kStateFile = "workspace.json";

fs::path env_or(const char* name, const char* fallback) {
  const char* value = std::getenv(name);
  return (value && *value) ? fs::path(value) : fs::path(fallback);
}

bool hidden(const fs::path& p) {
  const std::string name = p.filename().string();
  return !name.empty() && name.front() == '.';
}

std::optional<std::string> layer_stem(const std::string& file) {
  for (std::string_view ext : {".nii.gz", ".nii"}) {
    if (file.size() > ext.size() && file.compare(file.size() - ext.size(), ext.size(), ext) == 0)
      return file.substr(0, file.size() - ext.size());
  }
  return std::nullopt;
}

std::vector<std::string> sorted_subdirectories(const fs::path& dir) {
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory() && !hidden(entry.path())) names.push_back(entry.path().filename().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

std::string read_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot read " + file.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

json read_json(const fs::path& file) {
  try {
    return json::parse(read_file(file));
  } catch (const json::exception& e) {
    throw IoError("corrupt " + file.string() + ": " + e.what());
  }
}

json info_json(const WorkspaceInfo& info) {
  json j = {{"id", info.id}, {"name", info.name}, {"createdAt", info.created_at}};
  if (info.source_id) j["sourceId"] = *info.source_id;
  return j;
}

// Recursive copy that skips in-flight temporaries (dot entries).
void copy_tree(const fs::path& from, const fs::path& to) {
  fs::create_directory(to);
  for (const auto& entry : fs::directory_iterator(from)) {
    if (hidden(entry.path())) continue;
    const fs::path target = to / entry.path().filename();
    if (entry.is_directory())
      copy_tree(entry.path(), target);
    else if (entry.is_regular_file())
      fs::copy_file(entry.path(), target);
  }
}

}  // namespace

StoreConfig StoreConfig::from_environment() {
  return {env_or("DATASET_PATH", "./static/datasets"), env_or("SCRIPTS_PATH", "./static/scripts"),
          env_or("WORKSPACES_PATH", "./static/workspaces")};
}

json Workspace::to_json() const {
  json j = info_json(info);
  j["state"] = state.to_json();
  return j;
}

json to_json(const DatasetRef& d) { return {{"name", d.name}}; }
json to_json(const CaseRef& c) { return {{"name", c.name}, {"path", c.path}}; }
json to_json(const LayerRef& l) { return {{"name", l.name}, {"path", l.path}}; }
json to_json(const ExampleScript& s) { return {{"id", s.id}, {"name", s.name}}; }

std::vector<LayerRef> layers_in_directory(const fs::path& dir, const std::string& path_prefix) {
  std::vector<LayerRef> layers;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || hidden(entry.path())) continue;
    const std::string file = entry.path().filename().string();
    if (auto stem = layer_stem(file)) layers.push_back({*stem, path_prefix + file});
  }
  std::sort(layers.begin(), layers.end(),
            [](const LayerRef& a, const LayerRef& b) { return std::tie(a.name, a.path) < std::tie(b.name, b.path); });
  return layers;
}

Store::Store(StoreConfig config, Logger warn) : config_(std::move(config)), warn_(std::move(warn)) {
  if (!warn_) warn_ = [](const std::string& message) { std::cerr << "warning: " << message << '\n'; };
  fs::create_directories(config_.workspaces);
}

// ---- discovery ----

std::vector<DatasetRef> Store::list_datasets() const {
  if (!fs::is_directory(config_.datasets)) throw IoError("dataset root unreadable: " + config_.datasets.string());
  std::vector<DatasetRef> out;
  for (auto& name : sorted_subdirectories(config_.datasets)) out.push_back({std::move(name)});
  return out;
}

DatasetRef Store::get_dataset(const std::string& dataset) const {
  if (!is_safe_segment(dataset) || !fs::is_directory(config_.datasets / dataset))
    throw NotFound("unknown dataset " + dataset);
  return {dataset};
}

std::vector<CaseRef> Store::list_cases(const std::string& dataset) const {
  get_dataset(dataset);
  std::vector<CaseRef> out;
  for (auto& name : sorted_subdirectories(config_.datasets / dataset)) out.push_back({name, dataset + "/" + name});
  return out;
}

std::vector<LayerRef> Store::list_layers(const std::string& dataset, const std::string& case_name) const {
  get_dataset(dataset);
  if (!is_safe_segment(case_name) || !fs::is_directory(config_.datasets / dataset / case_name))
    throw NotFound("unknown case " + dataset + "/" + case_name);
  return layers_in_directory(config_.datasets / dataset / case_name, case_name + "/");
}

fs::path Store::layer_file(const std::string& dataset, const std::string& case_name, const std::string& layer) const {
  for (const auto& ref : list_layers(dataset, case_name)) {
    if (ref.name != layer) continue;
    const std::string rel = dataset + "/" + ref.path;
    if (!resolves_within(config_.datasets, rel)) throw NotFound("unknown layer " + layer);
    return config_.datasets / rel;
  }
  throw NotFound("unknown layer " + layer);
}

engine::CaseInput Store::case_input(const std::string& case_path) const {
  const auto slash = case_path.find('/');
  if (slash == std::string::npos) throw NotFound("unknown case " + case_path);
  const std::string dataset = case_path.substr(0, slash);
  const std::string case_name = case_path.substr(slash + 1);
  engine::CaseInput input;
  input.case_path = case_path;
  input.directory = config_.datasets / dataset / case_name;
  for (const auto& ref : list_layers(dataset, case_name)) {
    if (!resolves_within(config_.datasets, dataset + "/" + ref.path)) continue;
    input.layers.push_back({ref.name, fs::path(ref.path).filename().string()});
  }
  return input;
}

std::vector<ExampleScript> Store::list_scripts() const {
  std::vector<ExampleScript> out;
  if (!fs::is_directory(config_.scripts)) return out;
  for (const auto& entry : fs::directory_iterator(config_.scripts)) {
    if (!entry.is_regular_file() || hidden(entry.path()) || entry.path().extension() != ".imgql") continue;
    std::string id = entry.path().stem().string();
    std::string name = id;
    std::replace(name.begin(), name.end(), '_', ' ');
    out.push_back({std::move(id), std::move(name)});
  }
  std::sort(out.begin(), out.end(), [](const ExampleScript& a, const ExampleScript& b) { return a.id < b.id; });
  return out;
}

std::string Store::script_text(const std::string& id) const {
  const std::string file = id + ".imgql";
  if (!is_safe_segment(id) || !fs::is_regular_file(config_.scripts / file) || !resolves_within(config_.scripts, file))
    throw NotFound("unknown script " + id);
  return read_file(config_.scripts / file);
}

// ---- workspaces ----

std::shared_ptr<std::mutex> Store::lock_for(const std::string& id) const {
  std::lock_guard guard(locks_mutex_);
  auto& slot = locks_[id];
  if (!slot) slot = std::make_shared<std::mutex>();
  return slot;
}

std::string Store::fresh_workspace_id() const {
  static std::mutex mutex;
  static std::mt19937_64 rng{std::random_device{}()};
  static constexpr char kHex[] = "0123456789abcdef";
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::uint64_t bits;
    {
      std::lock_guard guard(mutex);
      bits = rng();
    }
    std::string id = "ws-";
    for (int i = 0; i < 16; ++i, bits >>= 4) id += kHex[bits & 15];
    if (!fs::exists(config_.workspaces / id) && !fs::exists(config_.workspaces / ("." + id + ".tmp"))) return id;
  }
  throw IoError("could not allocate a unique workspace id");
}

fs::path Store::workspace_dir(const std::string& id) const { return existing_workspace_dir(id); }

fs::path Store::existing_workspace_dir(const std::string& id) const {
  if (!is_safe_segment(id) || id.front() == '.') throw NotFound("unknown workspace " + id);
  const fs::path dir = config_.workspaces / id;
  if (!fs::is_regular_file(dir / kMetaFile)) throw NotFound("unknown workspace " + id);
  return dir;
}

WorkspaceInfo Store::read_info(const fs::path& dir) const {
  const json j = read_json(dir / kMetaFile);
  try {
    WorkspaceInfo info;
    info.id = j.at("id").get<std::string>();
    info.name = j.at("name").get<std::string>();
    info.created_at = j.value("createdAt", "");
    if (auto it = j.find("sourceId"); it != j.end() && !it->is_null()) info.source_id = it->get<std::string>();
    return info;
  } catch (const json::exception& e) {
    throw IoError("corrupt " + (dir / kMetaFile).string() + ": " + e.what());
  }
}

Workspace Store::create_workspace(const std::string& name, const std::optional<std::string>& source_id,
                                  const std::optional<WorkspaceState>& state) {
  WorkspaceInfo info{fresh_workspace_id(), name, engine::utc_timestamp(), source_id};
  const fs::path staging = config_.workspaces / ("." + info.id + ".tmp");
  try {
    if (source_id) {
      const fs::path source = existing_workspace_dir(*source_id);
      auto source_lock = lock_for(*source_id);
      std::lock_guard guard(*source_lock);
      copy_tree(source, staging);
    } else {
      fs::create_directory(staging);
    }
    const WorkspaceState initial =
        state ? *state : (source_id ? WorkspaceState::from_json(read_json(staging / kStateFile)) : WorkspaceState::defaults());
    atomic_write_file(staging / kStateFile, initial.to_json().dump(2) + "\n");
    atomic_write_file(staging / kMetaFile, info_json(info).dump(2) + "\n");
    fs::create_directories(staging / "runs");
    fs::rename(staging, config_.workspaces / info.id);
    return {info, initial};
  } catch (...) {
    std::error_code ignored;
    fs::remove_all(staging, ignored);
    throw;
  }
}

Workspace Store::get_workspace(const std::string& id) const {
  const fs::path dir = existing_workspace_dir(id);
  auto lock = lock_for(id);
  std::lock_guard guard(*lock);
  return {read_info(dir), WorkspaceState::from_json(read_json(dir / kStateFile))};
}

std::vector<WorkspaceInfo> Store::list_workspaces() const {
  std::vector<WorkspaceInfo> out;
  for (const auto& name : sorted_subdirectories(config_.workspaces)) {
    const fs::path dir = config_.workspaces / name;
    if (!fs::is_regular_file(dir / kMetaFile)) continue;
    try {
      out.push_back(read_info(dir));
    } catch (const Error& e) {
      warn_(std::string("skipping workspace: ") + e.what());
    }
  }
  return out;
}

void Store::update_workspace(const std::string& id, const std::optional<std::string>& name,
                             const std::optional<WorkspaceState>& state) {
  const fs::path dir = existing_workspace_dir(id);
  auto lock = lock_for(id);
  std::lock_guard guard(*lock);
  if (state) atomic_write_file(dir / kStateFile, state->to_json().dump(2) + "\n");
  if (name) {
    WorkspaceInfo info = read_info(dir);
    info.name = *name;
    atomic_write_file(dir / kMetaFile, info_json(info).dump(2) + "\n");
  }
}

void Store::save_workspace_state(const std::string& id, const WorkspaceState& state, const FaultHook& hook) {
  const fs::path dir = existing_workspace_dir(id);
  auto lock = lock_for(id);
  std::lock_guard guard(*lock);
  atomic_write_file(dir / kStateFile, state.to_json().dump(2) + "\n", hook);
}

void Store::delete_workspace(const std::string& id) {
  const fs::path dir = existing_workspace_dir(id);
  auto lock = lock_for(id);
  std::lock_guard guard(*lock);
  // Rename first so a concurrent reader never sees a half-deleted workspace.
  const fs::path doomed = config_.workspaces / ("." + id + ".deleting");
  fs::rename(dir, doomed);
  fs::remove_all(doomed);
}

std::vector<std::string> Store::lineage(const std::string& id) const {
  std::vector<std::string> chain{id};
  WorkspaceInfo info = read_info(existing_workspace_dir(id));
  // Each step visits a distinct workspace, so the chain is bounded by their count.
  const std::size_t bound = list_workspaces().size() + 1;
  while (info.source_id) {
    const std::string parent = *info.source_id;
    if (std::find(chain.begin(), chain.end(), parent) != chain.end() || chain.size() > bound)
      throw IoError("workspace lineage cycle at " + parent);
    try {
      info = read_info(existing_workspace_dir(parent));
    } catch (const NotFound&) {
      chain.emplace_back(kMissingAncestor);
      break;
    }
    chain.push_back(parent);
  }
  return chain;
}

// ---- runs ----

engine::RunRecord Store::execute_run(const std::string& workspace_id, const std::string& case_path,
                                     std::string_view user_script) {
  const fs::path dir = existing_workspace_dir(workspace_id);
  const engine::CaseInput input = case_input(case_path);
  engine::RunOptions options;
  if (fs::is_directory(config_.scripts)) options.scripts_dir = config_.scripts;
  auto lock = lock_for(workspace_id);
  std::lock_guard guard(*lock);
  return engine::execute_run(dir, workspace_id, input, user_script, options);
}

std::vector<engine::RunRecord> Store::list_runs(const std::string& workspace_id) const {
  const fs::path runs = existing_workspace_dir(workspace_id) / "runs";
  std::vector<engine::RunRecord> out;
  if (!fs::is_directory(runs)) return out;
  for (const auto& case_dir : sorted_subdirectories(runs)) {
    for (const auto& run_id : sorted_subdirectories(runs / case_dir)) {
      const fs::path file = runs / case_dir / run_id / "run.json";
      try {
        out.push_back(engine::RunRecord::from_json(json::parse(read_file(file))));
      } catch (const std::exception& e) {
        warn_("skipping run " + file.string() + ": " + e.what());
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const engine::RunRecord& a, const engine::RunRecord& b) {
    return std::tie(a.timestamp, a.id) < std::tie(b.timestamp, b.id);
  });
  return out;
}

fs::path Store::run_output_file(const std::string& workspace_id, const std::string& case_path,
                                const std::string& run_id, const std::string& label) const {
  const fs::path dir = existing_workspace_dir(workspace_id);
  for (const auto& layer : engine::list_run_outputs(dir, case_path, run_id)) {
    if (layer.label != label) continue;
    if (!is_safe_relative_path(layer.path) || !resolves_within(dir, layer.path) || !fs::is_regular_file(dir / layer.path))
      break;
    return dir / layer.path;
  }
  throw NotFound("unknown output layer " + label);
}

}  // namespace voxql::store
