#include "voxql/lang/sandbox.hpp"

#include <string>

#include "voxql/path_rules.hpp"

namespace voxql::lang {

bool is_valid_label(std::string_view label) {
  if (label.empty() || label.size() > 64) return false;
  for (char c : label) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

namespace {

void check_path(std::vector<Diagnostic>& out, SourcePos pos, const std::string& kind, const std::string& path,
                const std::optional<std::filesystem::path>& root) {
  if (auto why = relative_path_violation(path)) {
    out.push_back(error_at(pos, "sandbox violation in " + kind + " \"" + path + "\": " + *why));
    return;
  }
  if (root && !resolves_within(*root, path))
    out.push_back(error_at(pos, "sandbox violation in " + kind + " \"" + path + "\": escapes its root directory"));
}

}  // namespace

std::vector<Diagnostic> validate_sandbox(const Script& script, const SandboxRoots& roots) {
  std::vector<Diagnostic> out;
  for (const auto& st : script.statements) {
    if (auto* imp = std::get_if<ImportStmt>(&st.node)) {
      check_path(out, st.pos, "import", imp->path, roots.scripts_dir);
    } else if (auto* load = std::get_if<LoadStmt>(&st.node)) {
      check_path(out, st.pos, "load", load->path, roots.case_dir);
    } else if (auto* save = std::get_if<SaveStmt>(&st.node)) {
      if (!is_valid_label(save->label))
        out.push_back(error_at(st.pos, "sandbox violation: label \"" + save->label +
                                           "\" must match [A-Za-z0-9_-]{1,64}"));
    } else if (auto* print = std::get_if<PrintStmt>(&st.node)) {
      if (!is_valid_label(print->label))
        out.push_back(error_at(st.pos, "sandbox violation: label \"" + print->label +
                                           "\" must match [A-Za-z0-9_-]{1,64}"));
    }
  }
  return out;
}

}  // namespace voxql::lang
