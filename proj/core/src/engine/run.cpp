#include "voxql/engine/run.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>

#include "evaluator.hpp"
#include "voxql/error.hpp"
#include "voxql/lang/expand.hpp"
#include "voxql/lang/parser.hpp"
#include "voxql/lang/sandbox.hpp"
#include "voxql/lang/typecheck.hpp"
#include "voxql/path_rules.hpp"
#include "voxql/volume/mask.hpp"
#include "voxql/volume/nifti.hpp"

namespace voxql::engine {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(RunStatus s) { return s == RunStatus::Succeeded ? "SUCCEEDED" : "FAILED"; }

json RunRecord::to_json() const {
  json prints = json::array();
  for (const auto& p : print_outputs) prints.push_back({{"label", p.label}, {"value", p.value}});
  json layers = json::array();
  for (const auto& o : output_layers) layers.push_back({{"label", o.label}, {"path", o.path}, {"sources", o.sources}});
  return {{"id", id},
          {"workspaceId", workspace_id},
          {"casePath", case_path},
          {"timestamp", timestamp},
          {"scriptText", script_text},
          {"status", to_string(status)},
          {"printOutputs", std::move(prints)},
          {"outputLayers", std::move(layers)},
          {"log", log}};
}

RunRecord RunRecord::from_json(const json& j) {
  try {
    RunRecord r;
    r.id = j.at("id").get<std::string>();
    r.workspace_id = j.at("workspaceId").get<std::string>();
    r.case_path = j.at("casePath").get<std::string>();
    r.timestamp = j.at("timestamp").get<std::string>();
    r.script_text = j.at("scriptText").get<std::string>();
    const auto status = j.at("status").get<std::string>();
    if (status != "SUCCEEDED" && status != "FAILED") throw InvalidInput("unknown run status " + status);
    r.status = status == "SUCCEEDED" ? RunStatus::Succeeded : RunStatus::Failed;
    for (const auto& p : j.at("printOutputs")) r.print_outputs.push_back({p.at("label"), p.at("value")});
    for (const auto& o : j.at("outputLayers"))
      r.output_layers.push_back({o.at("label"), o.at("path"), o.value("sources", std::vector<std::string>{})});
    r.log = j.at("log").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed run record: ") + e.what());
  }
}

namespace {

std::string ms_since(std::chrono::steady_clock::time_point start) {
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f ms", ms);
  return buf;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out << text;
  out.flush();
  if (!out) throw IoError("write error on " + path.string());
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

// Diagnostics point into header + user text; shift them back to user lines.
std::string render(const lang::Diagnostic& d, int header_lines) {
  lang::Diagnostic shifted = d;
  if (d.line > header_lines) {
    shifted.line -= header_lines;
    return shifted.to_string();
  }
  return "(generated header) " + d.to_string();
}

struct StageFailure {
  std::vector<std::string> lines;
};

}  // namespace

RunRecord run_in_directory(const CaseInput& input, std::string_view user_script, const fs::path& run_dir,
                           const std::string& path_prefix, RunRecord record, const RunOptions& options) {
  record.case_path = input.case_path;
  record.script_text = std::string(user_script);
  record.status = RunStatus::Failed;
  record.print_outputs.clear();
  record.output_layers.clear();

  std::vector<std::string> log;
  const fs::path staging = run_dir / "outputs.staging";
  const fs::path outputs = run_dir / "outputs";
  std::error_code ec;
  fs::create_directories(run_dir, ec);
  if (ec) throw IoError("cannot create run directory " + run_dir.string() + ": " + ec.message());

  const auto bindings = lang::header_bindings(input.layers);
  const std::string header = lang::generate_header(input.layers);
  const int header_lines = count_lines(header);
  const std::string full_script = header + std::string(user_script);

  try {
    write_text(run_dir / "script.imgql", full_script);

    std::vector<std::string> bound;
    for (const auto& b : bindings) bound.push_back(b.name + "=" + b.path);
    std::string summary = "[header] " + std::to_string(bindings.size()) + " layer(s)";
    for (std::size_t i = 0; i < bound.size(); ++i) summary += (i ? ", " : ": ") + bound[i];
    log.push_back(summary);

    auto fail_with = [&](const std::vector<lang::Diagnostic>& diags) {
      StageFailure f;
      for (const auto& d : diags) f.lines.push_back(render(d, header_lines));
      throw f;
    };

    auto parsed = lang::parse(full_script);
    if (!parsed.ok()) fail_with(parsed.diagnostics);

    std::vector<lang::Diagnostic> problems;
    for (const auto& st : parsed.value->statements)
      if (std::holds_alternative<lang::LoadStmt>(st.node) && st.pos.line > header_lines)
        problems.push_back(lang::error_at(st.pos, "load statements are generated from the case layers; remove '" +
                                                      std::get<lang::LoadStmt>(st.node).name + "'"));
    if (!problems.empty()) fail_with(problems);

    lang::SandboxRoots roots{options.scripts_dir, input.directory};
    if (auto v = lang::validate_sandbox(*parsed.value, roots); !v.empty()) fail_with(v);

    lang::ImportResolver resolver = [&](const std::string& path) -> std::optional<std::string> {
      if (!options.scripts_dir || !is_safe_relative_path(path) || !resolves_within(*options.scripts_dir, path))
        return std::nullopt;
      std::ifstream in(*options.scripts_dir / path, std::ios::binary);
      if (!in) return std::nullopt;
      std::stringstream ss;
      ss << in.rdbuf();
      // Imported files obey the same sandbox as the main script.
      auto nested = lang::parse(ss.str());
      if (nested.ok() && !lang::validate_sandbox(*nested.value, roots).empty()) return std::nullopt;
      return ss.str();
    };
    auto expanded = lang::expand(*parsed.value, resolver);
    if (!expanded.ok()) fail_with(expanded.diagnostics);
    if (auto t = lang::typecheck(*expanded.value); !t.empty()) fail_with(t);

    std::map<std::string, std::string> load_paths;
    std::vector<lang::ExprPtr> exprs;
    for (const auto& st : expanded.value->statements) {
      if (auto* load = std::get_if<lang::LoadStmt>(&st.node)) load_paths[load->name] = load->path;
      if (auto* save = std::get_if<lang::SaveStmt>(&st.node)) exprs.push_back(save->expr);
      if (auto* print = std::get_if<lang::PrintStmt>(&st.node)) exprs.push_back(print->expr);
    }

    Evaluator eval(input.directory, load_paths, options.connectivity, log);
    std::optional<std::string> fallback;
    if (!bindings.empty()) fallback = bindings.front().name;
    eval.prepare(exprs, fallback);

    fs::remove_all(staging, ec);
    fs::create_directories(staging);
    for (const auto& st : expanded.value->statements) {
      const auto start = std::chrono::steady_clock::now();
      if (auto* save = std::get_if<lang::SaveStmt>(&st.node)) {
        const volume::BinaryMask m(eval.dims(), eval.mask(*save->expr));
        const std::string file = save->label + ".nii.gz";
        volume::write_nifti_file(staging / file, volume::mask_to_volume(m, eval.spacing(), "voxql:" + save->label));
        record.output_layers.push_back({save->label, path_prefix + "outputs/" + file, eval.sources(*save->expr)});
        log.push_back("[save] " + save->label + ": " + std::to_string(m.count()) + " voxels " + ms_since(start));
      } else if (auto* print = std::get_if<lang::PrintStmt>(&st.node)) {
        const double v = eval.number(*print->expr);
        record.print_outputs.push_back({print->label, v});
        log.push_back("[print] " + print->label + " = " + format_number(v) + " " + ms_since(start));
      }
    }

    fs::remove_all(outputs, ec);
    fs::rename(staging, outputs);
    record.status = RunStatus::Succeeded;
  } catch (const StageFailure& f) {
    for (const auto& l : f.lines) log.push_back("error: " + l);
  } catch (const std::exception& e) {
    log.push_back(std::string("error: ") + e.what());
  }

  if (record.status == RunStatus::Failed) {
    record.print_outputs.clear();
    record.output_layers.clear();
    fs::remove_all(staging, ec);
    fs::remove_all(outputs, ec);
    log.push_back("[status] FAILED");
  } else {
    log.push_back("[status] SUCCEEDED");
  }
  record.log = join_lines(log);
  write_text(run_dir / "log.txt", record.log);
  write_text(run_dir / "run.json", record.to_json().dump(2) + "\n");
  return record;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string generate_run_id() {
  static std::mutex mutex;
  static std::mt19937_64 rng{std::random_device{}()};
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y%m%dT%H%M%SZ", &tm);
  std::uint64_t bits;
  {
    std::lock_guard lock(mutex);
    bits = rng();
  }
  char hex[8];
  std::snprintf(hex, sizeof hex, "%06llx", static_cast<unsigned long long>(bits & 0xffffff));
  return std::string("run-") + stamp + "-" + hex;
}

fs::path run_directory(const fs::path& workspace_dir, const std::string& case_path, const std::string& run_id) {
  return workspace_dir / "runs" / percent_encode(case_path) / run_id;
}

RunRecord execute_run(const fs::path& workspace_dir, const std::string& workspace_id, const CaseInput& input,
                      std::string_view user_script, const RunOptions& options) {
  if (!fs::is_directory(workspace_dir)) throw NotFound("workspace directory missing: " + workspace_dir.string());
  const fs::path case_runs = workspace_dir / "runs" / percent_encode(input.case_path);
  fs::create_directories(case_runs);

  std::string id;
  fs::path final_dir;
  for (int attempt = 0;; ++attempt) {
    id = generate_run_id();
    final_dir = case_runs / id;
    if (!fs::exists(final_dir) && !fs::exists(case_runs / ("." + id + ".partial"))) break;
    if (attempt > 100) throw IoError("could not allocate a unique run id");
  }
  const fs::path partial = case_runs / ("." + id + ".partial");

  RunRecord identity;
  identity.id = id;
  identity.workspace_id = workspace_id;
  identity.timestamp = utc_timestamp();
  const std::string prefix = "runs/" + percent_encode(input.case_path) + "/" + id + "/";
  RunRecord record = run_in_directory(input, user_script, partial, prefix, std::move(identity), options);
  fs::rename(partial, final_dir);
  return record;
}

RunRecord load_run(const fs::path& workspace_dir, const std::string& case_path, const std::string& run_id) {
  if (!is_safe_segment(run_id) || !is_safe_relative_path(case_path)) throw NotFound("unknown run " + run_id);
  const fs::path file = run_directory(workspace_dir, case_path, run_id) / "run.json";
  std::ifstream in(file, std::ios::binary);
  if (!in) throw NotFound("unknown run " + run_id);
  try {
    return RunRecord::from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw InvalidInput("corrupt run record " + file.string() + ": " + e.what());
  }
}

std::vector<OutputLayer> list_run_outputs(const fs::path& workspace_dir, const std::string& case_path,
                                          const std::string& run_id) {
  return load_run(workspace_dir, case_path, run_id).output_layers;
}

}  // namespace voxql::engine
