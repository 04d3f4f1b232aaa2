#include "voxql/path_rules.hpp"

#include <cctype>
#include <system_error>

namespace voxql {

namespace fs = std::filesystem;

std::optional<std::string> relative_path_violation(std::string_view path) {
  if (path.empty()) return "path is empty";
  if (path.find('\0') != std::string_view::npos) return "path contains a NUL byte";
  if (path.find('\\') != std::string_view::npos) return "path contains a backslash";
  if (path.front() == '/') return "absolute paths are not allowed";
  if (path.size() >= 2 && std::isalpha(static_cast<unsigned char>(path[0])) && path[1] == ':')
    return "drive prefixes are not allowed";
  std::size_t start = 0;
  while (start <= path.size()) {
    const std::size_t end = std::min(path.find('/', start), path.size());
    const std::string_view segment = path.substr(start, end - start);
    if (segment.empty()) return "path contains an empty segment";
    if (segment == "..") return "'..' segments are not allowed";
    if (segment == ".") return "'.' segments are not allowed";
    start = end + 1;
  }
  return std::nullopt;
}

bool is_safe_segment(std::string_view segment) {
  return segment.find('/') == std::string_view::npos && is_safe_relative_path(segment);
}

bool resolves_within(const fs::path& root, std::string_view relative) {
  std::error_code ec;
  const fs::path base = fs::weakly_canonical(root, ec);
  if (ec) return false;
  const fs::path candidate = fs::weakly_canonical(base / fs::path(std::string(relative)), ec);
  if (ec) return false;
  const fs::path rel = candidate.lexically_relative(base);
  if (rel.empty()) return false;
  return *rel.begin() != "..";
}

std::optional<std::string> percent_decode(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '%') {
      out += text[i];
      continue;
    }
    if (i + 2 >= text.size()) return std::nullopt;
    auto hex = [](char c) -> int {
      if (c >= '0' && c <= '9') return c - '0';
      if (c >= 'a' && c <= 'f') return c - 'a' + 10;
      if (c >= 'A' && c <= 'F') return c - 'A' + 10;
      return -1;
    };
    const int hi = hex(text[i + 1]), lo = hex(text[i + 2]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out += static_cast<char>(hi * 16 + lo);
    i += 2;
  }
  return out;
}

std::string percent_encode(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c == '.' || c == '_' || c == '~' || c == '-') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 15];
    }
  }
  return out;
}

}  // namespace voxql
