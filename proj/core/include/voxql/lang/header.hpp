#pragma once

#include <string>
#include <vector>

namespace voxql::lang {

struct LayerBinding {
  std::string name;
  std::string path;
  friend bool operator==(const LayerBinding&, const LayerBinding&) = default;
};

// Turns arbitrary layer names into identifiers: invalid characters become
// '_', a leading digit gets a '_' prefix, reserved words and builtins get a
// '_' suffix; repeated names are suffixed _2, _3, ... in order.
std::vector<LayerBinding> header_bindings(std::vector<LayerBinding> layers);

// One `load name = "path"` line per layer in layer-name order, then a blank
// line. Empty for no layers.
std::string generate_header(const std::vector<LayerBinding>& layers);

}  // namespace voxql::lang
