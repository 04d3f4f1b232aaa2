#include "cli.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "voxql/engine/run.hpp"
#include "voxql/error.hpp"
#include "voxql/http/server.hpp"
#include "voxql/lang/expand.hpp"
#include "voxql/lang/header.hpp"
#include "voxql/lang/parser.hpp"
#include "voxql/lang/sandbox.hpp"
#include "voxql/lang/typecheck.hpp"
#include "voxql/path_rules.hpp"
#include "voxql/store/store.hpp"
#include "voxql/volume/mask.hpp"
#include "voxql/volume/nifti.hpp"

namespace voxql::cli {

namespace fs = std::filesystem;

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string read_text(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot read " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<lang::LayerBinding> case_layers(const fs::path& dir) {
  std::vector<lang::LayerBinding> layers;
  for (const auto& ref : store::layers_in_directory(dir)) layers.push_back({ref.name, ref.path});
  return layers;
}

http::HttpServer* active_server = nullptr;

extern "C" void on_signal(int) {
  if (active_server) active_server->stop();
}

int serve(const std::string& host, int port, bool cors, std::ostream& out) {
  store::Store store(store::StoreConfig::from_environment());
  http::Api api(store, {cors});
  http::HttpServer server(api);
  const int bound = server.bind(host, port);
  out << "listening on http://" << host << ":" << bound << std::endl;
  active_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  server.listen();
  active_server = nullptr;
  return kOk;
}

int run(const fs::path& case_dir, const fs::path& script_file, const fs::path& out_dir, std::ostream& out,
        std::ostream& err) {
  if (!fs::is_directory(case_dir)) {
    err << "error: case directory not found: " << case_dir.string() << '\n';
    return kFailure;
  }
  engine::CaseInput input;
  input.case_path = case_dir.lexically_normal().filename().string();
  input.directory = case_dir;
  input.layers = case_layers(case_dir);
  engine::RunOptions options;
  options.scripts_dir = script_file.parent_path().empty() ? fs::path(".") : script_file.parent_path();

  engine::RunRecord identity;
  identity.id = engine::generate_run_id();
  identity.timestamp = engine::utc_timestamp();
  const auto record = engine::run_in_directory(input, read_text(script_file), out_dir, "", identity, options);
  if (record.status != engine::RunStatus::Succeeded) {
    err << record.log;
    return kFailure;
  }
  for (const auto& p : record.print_outputs) out << p.label << '\t' << fixed6(p.value) << '\n';
  return kOk;
}

int dice(const fs::path& a, const fs::path& b, std::ostream& out) {
  const auto x = volume::volume_to_mask(volume::read_nifti_file(a));
  const auto y = volume::volume_to_mask(volume::read_nifti_file(b));
  out << fixed6(volume::dice(x, y)) << '\n';
  return kOk;
}

int check(const fs::path& file, const std::optional<fs::path>& case_dir, std::ostream& err) {
  const std::string text = read_text(file);
  std::string header;
  if (case_dir) header = lang::generate_header(case_layers(*case_dir));
  const int header_lines = static_cast<int>(std::count(header.begin(), header.end(), '\n'));

  std::vector<lang::Diagnostic> diags;
  auto parsed = lang::parse(header + text);
  diags = parsed.diagnostics;
  if (parsed.ok()) {
    const fs::path dir = file.parent_path().empty() ? fs::path(".") : file.parent_path();
    diags = lang::validate_sandbox(*parsed.value, {dir, case_dir});
    if (diags.empty()) {
      lang::ImportResolver resolver = [&](const std::string& path) -> std::optional<std::string> {
        if (!is_safe_relative_path(path) || !resolves_within(dir, path) || !fs::is_regular_file(dir / path))
          return std::nullopt;
        return read_text(dir / path);
      };
      auto expanded = lang::expand(*parsed.value, resolver);
      diags = expanded.diagnostics;
      if (expanded.ok()) {
        auto types = lang::typecheck(*expanded.value);
        diags.insert(diags.end(), types.begin(), types.end());
      }
    }
  }
  for (auto d : diags) {
    if (d.line > header_lines) d.line -= header_lines;
    err << file.string() << ":" << d.to_string() << '\n';
  }
  return lang::has_errors(diags) ? kFailure : kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"spatial model checking for medical images", "voxql"};
  app.require_subcommand(1);

  std::string host = "127.0.0.1";
  int port = 8080;
  bool cors = false;
  auto* serve_cmd = app.add_subcommand("serve", "Start the HTTP API (paths from DATASET_PATH, SCRIPTS_PATH, WORKSPACES_PATH)");
  serve_cmd->add_option("--port", port, "Port to listen on")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", host, "Address to bind");
  serve_cmd->add_flag("--cors", cors, "Send permissive CORS headers");

  std::string case_dir, script_file, out_dir;
  auto* run_cmd = app.add_subcommand("run", "Run a script against a directory of layers");
  run_cmd->add_option("--case", case_dir, "Directory holding .nii/.nii.gz layers")->required();
  run_cmd->add_option("--script", script_file, "Script file (no load statements)")->required();
  run_cmd->add_option("--out", out_dir, "Output directory")->required();

  std::string mask_a, mask_b;
  auto* dice_cmd = app.add_subcommand("dice", "Dice coefficient of two masks");
  dice_cmd->add_option("A", mask_a)->required();
  dice_cmd->add_option("B", mask_b)->required();

  std::string check_file, check_case;
  auto* check_cmd = app.add_subcommand("check", "Parse and typecheck a script");
  check_cmd->add_option("FILE", check_file)->required();
  check_cmd->add_option("--case", check_case, "Prepend the load header generated for this case directory");

  // CLI11 wants argv order reversed when given a vector.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kUsage;
  }

  try {
    if (*serve_cmd) return serve(host, port, cors, out);
    if (*run_cmd) return run(case_dir, script_file, out_dir, out, err);
    if (*dice_cmd) return dice(mask_a, mask_b, out);
    if (*check_cmd) {
      std::optional<fs::path> cd;
      if (!check_case.empty()) cd = check_case;
      return check(check_file, cd, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace voxql::cli
