#include "voxql/lang/header.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "voxql/lang/ast.hpp"

namespace voxql::lang {

namespace {

std::string sanitize(const std::string& raw) {
  std::string out;
  for (unsigned char c : raw) out += (std::isalnum(c) || c == '_') ? static_cast<char>(c) : '_';
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out.front()))) out.insert(out.begin(), '_');
  if (is_keyword(out) || is_builtin(out)) out += '_';
  return out;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::vector<LayerBinding> header_bindings(std::vector<LayerBinding> layers) {
  std::stable_sort(layers.begin(), layers.end(),
                   [](const LayerBinding& a, const LayerBinding& b) { return a.name < b.name; });
  std::set<std::string> taken;
  for (auto& layer : layers) {
    const std::string base = sanitize(layer.name);
    std::string name = base;
    for (int k = 2; taken.contains(name); ++k) name = base + "_" + std::to_string(k);
    taken.insert(name);
    layer.name = std::move(name);
  }
  return layers;
}

std::string generate_header(const std::vector<LayerBinding>& layers) {
  if (layers.empty()) return {};
  std::string out;
  for (const auto& layer : header_bindings(layers)) out += "load " + layer.name + " = " + quote(layer.path) + "\n";
  return out + "\n";
}

}  // namespace voxql::lang
