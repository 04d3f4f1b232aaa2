#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace voxql::volume {

bool is_gzip(std::span<const std::uint8_t> bytes) noexcept;

// Deterministic gzip stream (zero mtime, fixed OS byte).
std::vector<std::uint8_t> gzip_compress(std::span<const std::uint8_t> bytes);

// Throws FormatError on corrupt or truncated streams.
std::vector<std::uint8_t> gzip_decompress(std::span<const std::uint8_t> bytes);

}  // namespace voxql::volume
