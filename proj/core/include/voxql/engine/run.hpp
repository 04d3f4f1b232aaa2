#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "voxql/lang/header.hpp"
#include "voxql/spatial/grid.hpp"

namespace voxql::engine {

enum class RunStatus { Succeeded, Failed };

struct PrintOutput {
  std::string label;
  double value = 0.0;
  friend bool operator==(const PrintOutput&, const PrintOutput&) = default;
};

struct OutputLayer {
  std::string label;
  // Relative to the workspace directory (or to the output directory for CLI runs).
  std::string path;
  // Case layer files the saved expression was computed from.
  std::vector<std::string> sources;
  friend bool operator==(const OutputLayer&, const OutputLayer&) = default;
};

struct RunRecord {
  std::string id;
  std::string workspace_id;
  std::string case_path;
  std::string timestamp;  // UTC, ISO-8601
  std::string script_text;
  RunStatus status = RunStatus::Failed;
  std::vector<PrintOutput> print_outputs;
  std::vector<OutputLayer> output_layers;
  std::string log;

  nlohmann::json to_json() const;
  // Throws InvalidInput when required fields are missing or mistyped.
  static RunRecord from_json(const nlohmann::json& j);
};

std::string to_string(RunStatus s);

// The layers of one case, as seen by a run.
struct CaseInput {
  std::string case_path;                    // "dataset/case"
  std::filesystem::path directory;          // holds the layer files
  std::vector<lang::LayerBinding> layers;   // layer name -> file name inside directory
};

struct RunOptions {
  // Root for `import`; imports fail when unset.
  std::optional<std::filesystem::path> scripts_dir;
  spatial::Connectivity connectivity = spatial::Connectivity::Face6;
};

// Runs header + user script against the case and writes script.imgql,
// log.txt, run.json and outputs/<label>.nii.gz into run_dir (created if
// needed). Outputs are staged and only published on success. Output paths are
// recorded as path_prefix + "outputs/<label>.nii.gz". Never throws for script
// or data problems: those produce a Failed record.
RunRecord run_in_directory(const CaseInput& input, std::string_view user_script, const std::filesystem::path& run_dir,
                           const std::string& path_prefix, RunRecord identity, const RunOptions& options = {});

// run-<YYYYMMDDThhmmssZ>-<6 hex>, hex drawn from a per-process generator.
std::string generate_run_id();
std::string utc_timestamp();

// <workspace>/runs/<percent-encoded case path>/<run id>
std::filesystem::path run_directory(const std::filesystem::path& workspace_dir, const std::string& case_path,
                                    const std::string& run_id);

// Allocates a fresh run id, evaluates inside a hidden staging directory under
// the workspace and renames it into place, so readers never see half-written
// runs. Only writes below <workspace>/runs/<case>/.
RunRecord execute_run(const std::filesystem::path& workspace_dir, const std::string& workspace_id,
                      const CaseInput& input, std::string_view user_script, const RunOptions& options = {});

// Reads run.json of a stored run. Throws NotFound for unknown runs.
RunRecord load_run(const std::filesystem::path& workspace_dir, const std::string& case_path,
                   const std::string& run_id);

// (label, path) pairs as recorded; empty for failed runs. Throws NotFound.
std::vector<OutputLayer> list_run_outputs(const std::filesystem::path& workspace_dir, const std::string& case_path,
                                          const std::string& run_id);

}  // namespace voxql::engine
