#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "voxql/volume/volume.hpp"

namespace voxql::volume {

// Byte offsets of the NIfTI-1 header fields this library reads or writes.
namespace nifti1 {
inline constexpr std::size_t kHeaderSize = 348;
inline constexpr std::size_t kVoxOffset = 352;
inline constexpr std::size_t kSizeofHdr = 0;
inline constexpr std::size_t kRegular = 38;
inline constexpr std::size_t kDim = 40;
inline constexpr std::size_t kDatatype = 70;
inline constexpr std::size_t kBitpix = 72;
inline constexpr std::size_t kPixdim = 76;
inline constexpr std::size_t kVoxOffsetField = 108;
inline constexpr std::size_t kSclSlope = 112;
inline constexpr std::size_t kSclInter = 116;
inline constexpr std::size_t kXyztUnits = 123;
inline constexpr std::size_t kDescrip = 148;
inline constexpr std::size_t kDescripSize = 80;
inline constexpr std::size_t kMagic = 344;
}  // namespace nifti1

// Decodes a single-file NIfTI-1 volume, gzip-wrapped or not, in either byte
// order. Throws FormatError on bad magic, unsupported datatype, truncation or
// a nontrivial fourth dimension.
VoxelVolume read_nifti(std::span<const std::uint8_t> bytes);

// Little-endian NIfTI-1 with vox_offset 352. Output depends only on the volume.
std::vector<std::uint8_t> write_nifti(const VoxelVolume& v, bool compress);

VoxelVolume read_nifti_file(const std::filesystem::path& path);
// Compresses iff the file name ends in ".gz".
void write_nifti_file(const std::filesystem::path& path, const VoxelVolume& v);

}  // namespace voxql::volume
