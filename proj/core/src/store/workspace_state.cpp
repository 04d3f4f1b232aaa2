#include "voxql/store/workspace_state.hpp"

#include "voxql/error.hpp"
#include "voxql/path_rules.hpp"

namespace voxql::store {

using nlohmann::json;

WorkspaceState WorkspaceState::defaults() {
  const json layers = {{"openedLayersPathsByCasePath", json::object()}, {"stylesByLayerName", json::object()}};
  return WorkspaceState(json{
      {"data", {{"openedDatasetsNames", json::array()}, {"openedCasesPaths", json::array()}, {"openedRunsIds", json::array()}}},
      {"lastGlobalStylesByLayerName", json::object()},
      {"datasetLayersState", layers},
      {"runsLayersStates", json::object()},
      {"ui",
       {{"isDarkMode", false},
        {"sidebars", {{"navigation", true}, {"layers", true}, {"scriptEditor", true}}},
        {"fullscreenCasePath", nullptr},
        {"layerContext", "dataset"},
        {"scriptEditor", {{"content", ""}}}}},
  });
}

WorkspaceState WorkspaceState::from_json(json j) {
  const auto problems = validate_state(j);
  if (!problems.empty()) {
    std::string message = "invalid workspace state:";
    for (const auto& p : problems) message += " " + p + ";";
    throw InvalidInput(message);
  }
  return WorkspaceState(std::move(j));
}

std::string WorkspaceState::script_content() const {
  return json_.at("ui").at("scriptEditor").at("content").get<std::string>();
}

namespace {

class Validator {
 public:
  std::vector<std::string> problems;

  const json* member(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object()) return nullptr;
    auto it = obj.find(key);
    if (it == obj.end()) {
      problems.push_back(where + "." + key + ": missing");
      return nullptr;
    }
    return &*it;
  }

  bool object(const json* j, const std::string& where) {
    if (!j) return false;
    if (!j->is_object()) problems.push_back(where + ": expected an object");
    return j->is_object();
  }

  void boolean(const json* j, const std::string& where) {
    if (j && !j->is_boolean()) problems.push_back(where + ": expected a boolean");
  }

  void strings(const json* j, const std::string& where, bool paths) {
    if (!j) return;
    if (!j->is_array()) {
      problems.push_back(where + ": expected an array");
      return;
    }
    for (std::size_t i = 0; i < j->size(); ++i) {
      const auto& v = (*j)[i];
      const std::string at = where + "[" + std::to_string(i) + "]";
      if (!v.is_string())
        problems.push_back(at + ": expected a string");
      else if (paths && !is_safe_relative_path(v.get<std::string>()))
        problems.push_back(at + ": " + *relative_path_violation(v.get<std::string>()));
    }
  }

  void style(const json& j, const std::string& where) {
    if (!object(&j, where)) return;
    if (auto* c = member(j, "colormap", where); c && !c->is_string()) problems.push_back(where + ".colormap: expected a string");
    if (auto* o = member(j, "opacity", where)) {
      if (!o->is_number())
        problems.push_back(where + ".opacity: expected a number");
      else if (const double v = o->get<double>(); !(v >= 0.0 && v <= 1.0))
        problems.push_back(where + ".opacity: must be within [0, 1]");
    }
    boolean(member(j, "visible", where), where + ".visible");
  }

  void styles(const json* j, const std::string& where) {
    if (!object(j, where)) return;
    for (auto it = j->begin(); it != j->end(); ++it) style(it.value(), where + "." + it.key());
  }

  void layer_state(const json* j, const std::string& where) {
    if (!object(j, where)) return;
    const std::string opened_at = where + ".openedLayersPathsByCasePath";
    if (auto* opened = member(*j, "openedLayersPathsByCasePath", where); object(opened, opened_at)) {
      for (auto it = opened->begin(); it != opened->end(); ++it) {
        if (!is_safe_relative_path(it.key())) problems.push_back(opened_at + ": case path \"" + it.key() + "\" is not a normalized relative path");
        strings(&it.value(), opened_at + "." + it.key(), true);
      }
    }
    styles(member(*j, "stylesByLayerName", where), where + ".stylesByLayerName");
  }
};

}  // namespace

std::vector<std::string> validate_state(const json& j) {
  Validator v;
  if (!v.object(&j, "state")) return v.problems;

  if (auto* data = v.member(j, "data", "state"); v.object(data, "state.data")) {
    v.strings(v.member(*data, "openedDatasetsNames", "state.data"), "state.data.openedDatasetsNames", false);
    v.strings(v.member(*data, "openedCasesPaths", "state.data"), "state.data.openedCasesPaths", true);
    v.strings(v.member(*data, "openedRunsIds", "state.data"), "state.data.openedRunsIds", false);
  }
  v.styles(v.member(j, "lastGlobalStylesByLayerName", "state"), "state.lastGlobalStylesByLayerName");
  v.layer_state(v.member(j, "datasetLayersState", "state"), "state.datasetLayersState");
  if (auto* runs = v.member(j, "runsLayersStates", "state"); v.object(runs, "state.runsLayersStates"))
    for (auto it = runs->begin(); it != runs->end(); ++it)
      v.layer_state(&it.value(), "state.runsLayersStates." + it.key());

  if (auto* ui = v.member(j, "ui", "state"); v.object(ui, "state.ui")) {
    v.boolean(v.member(*ui, "isDarkMode", "state.ui"), "state.ui.isDarkMode");
    if (auto* bars = v.member(*ui, "sidebars", "state.ui"); v.object(bars, "state.ui.sidebars"))
      for (const char* key : {"navigation", "layers", "scriptEditor"})
        v.boolean(v.member(*bars, key, "state.ui.sidebars"), std::string("state.ui.sidebars.") + key);
    if (auto it = ui->find("fullscreenCasePath"); it != ui->end() && !it->is_null()) {
      if (!it->is_string() || !is_safe_relative_path(it->get<std::string>()))
        v.problems.push_back("state.ui.fullscreenCasePath: expected null or a normalized relative path");
    }
    if (auto* ctx = v.member(*ui, "layerContext", "state.ui")) {
      if (!ctx->is_string() || (*ctx != "dataset" && *ctx != "run"))
        v.problems.push_back("state.ui.layerContext: expected \"dataset\" or \"run\"");
    }
    if (auto* editor = v.member(*ui, "scriptEditor", "state.ui"); v.object(editor, "state.ui.scriptEditor")) {
      if (auto* content = v.member(*editor, "content", "state.ui.scriptEditor"); content && !content->is_string())
        v.problems.push_back("state.ui.scriptEditor.content: expected a string");
    }
  }
  return v.problems;
}

}  // namespace voxql::store
