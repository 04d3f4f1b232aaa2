#include "voxql/volume/nifti.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "voxql/error.hpp"
#include "voxql/volume/gzip.hpp"

namespace voxql::volume {

namespace {

using namespace nifti1;

static_assert(std::endian::native == std::endian::little, "NIfTI writer assumes a little-endian host");

template <typename T>
T byteswap(T v) {
  auto bytes = std::bit_cast<std::array<std::uint8_t, sizeof(T)>>(v);
  std::reverse(bytes.begin(), bytes.end());
  return std::bit_cast<T>(bytes);
}

class HeaderReader {
 public:
  HeaderReader(std::span<const std::uint8_t> bytes, bool swap) : bytes_(bytes), swap_(swap) {}

  template <typename T>
  T get(std::size_t offset) const {
    T v;
    std::memcpy(&v, bytes_.data() + offset, sizeof(T));
    return swap_ ? byteswap(v) : v;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  bool swap_;
};

template <typename T>
void put(std::vector<std::uint8_t>& out, std::size_t offset, T v) {
  std::memcpy(out.data() + offset, &v, sizeof(T));
}

std::size_t bytes_per_voxel(DataType t) {
  switch (t) {
    case DataType::U8:
      return 1;
    case DataType::I16:
      return 2;
    case DataType::F32:
      return 4;
  }
  return 0;
}

template <typename T>
std::vector<T> decode_samples(const std::uint8_t* src, std::size_t count, bool swap) {
  std::vector<T> out(count);
  std::memcpy(out.data(), src, count * sizeof(T));
  if (swap && sizeof(T) > 1)
    for (auto& v : out) v = byteswap(v);
  return out;
}

float checked_spacing(float raw, int axis) {
  const float s = std::fabs(raw);
  if (!(s > 0.0f) || !std::isfinite(s))
    throw FormatError("pixdim[" + std::to_string(axis) + "] must be a positive finite spacing");
  return s;
}

}  // namespace

VoxelVolume read_nifti(std::span<const std::uint8_t> input) {
  std::vector<std::uint8_t> inflated;
  std::span<const std::uint8_t> bytes = input;
  if (is_gzip(input)) {
    inflated = gzip_decompress(input);
    bytes = inflated;
  }
  if (bytes.size() < kHeaderSize) throw FormatError("truncated NIfTI header");

  std::int32_t sizeof_hdr;
  std::memcpy(&sizeof_hdr, bytes.data() + kSizeofHdr, 4);
  bool swap = false;
  if (sizeof_hdr != static_cast<std::int32_t>(kHeaderSize)) {
    if (byteswap(sizeof_hdr) != static_cast<std::int32_t>(kHeaderSize))
      throw FormatError("sizeof_hdr is not 348 in either byte order");
    swap = true;
  }
  if (std::memcmp(bytes.data() + kMagic, "n+1\0", 4) != 0) throw FormatError("bad magic (expected \"n+1\")");

  const HeaderReader h(bytes, swap);
  const auto rank = h.get<std::int16_t>(kDim);
  if (rank < 1 || rank > 7) throw FormatError("dim[0] must be in 1..7");
  std::array<std::int64_t, 8> dim{};
  for (int i = 1; i <= 7; ++i) dim[i] = i <= rank ? h.get<std::int16_t>(kDim + 2 * i) : 1;
  for (int i = 4; i <= rank; ++i)
    if (dim[i] != 1) throw FormatError("4D not supported");
  for (int i = 1; i <= 3; ++i)
    if (dim[i] < 1) throw FormatError("dim[" + std::to_string(i) + "] must be >= 1");

  const auto code = h.get<std::int16_t>(kDatatype);
  DataType dtype;
  switch (code) {
    case 2:
      dtype = DataType::U8;
      break;
    case 4:
      dtype = DataType::I16;
      break;
    case 16:
      dtype = DataType::F32;
      break;
    default:
      throw FormatError("unsupported datatype " + std::to_string(code));
  }
  const auto bitpix = h.get<std::int16_t>(kBitpix);
  if (bitpix != static_cast<std::int16_t>(8 * bytes_per_voxel(dtype)))
    throw FormatError("bitpix " + std::to_string(bitpix) + " does not match datatype");

  const Spacing spacing{checked_spacing(h.get<float>(kPixdim + 4), 1), checked_spacing(h.get<float>(kPixdim + 8), 2),
                        checked_spacing(h.get<float>(kPixdim + 12), 3)};
  const float vox_offset = h.get<float>(kVoxOffsetField);
  if (!(vox_offset >= static_cast<float>(kHeaderSize)) || !std::isfinite(vox_offset))
    throw FormatError("vox_offset must be >= 348 for single-file NIfTI");
  const auto offset = static_cast<std::size_t>(vox_offset);

  const Dims dims{static_cast<std::size_t>(dim[1]), static_cast<std::size_t>(dim[2]),
                  static_cast<std::size_t>(dim[3])};
  const std::size_t count = dims.voxel_count();
  const std::size_t payload = count * bytes_per_voxel(dtype);
  if (offset > bytes.size() || bytes.size() - offset < payload) throw FormatError("truncated NIfTI payload");

  const std::uint8_t* src = bytes.data() + offset;
  VoxelVolume::Storage data;
  switch (dtype) {
    case DataType::U8:
      data = decode_samples<std::uint8_t>(src, count, swap);
      break;
    case DataType::I16:
      data = decode_samples<std::int16_t>(src, count, swap);
      break;
    case DataType::F32:
      data = decode_samples<float>(src, count, swap);
      break;
  }

  const char* descrip = reinterpret_cast<const char*>(bytes.data() + kDescrip);
  const std::string description(descrip, strnlen(descrip, kDescripSize));

  return VoxelVolume(dims, spacing, std::move(data), h.get<float>(kSclSlope), h.get<float>(kSclInter), description);
}

std::vector<std::uint8_t> write_nifti(const VoxelVolume& v, bool compress) {
  const std::size_t bpv = bytes_per_voxel(v.dtype());
  std::vector<std::uint8_t> out(kVoxOffset + v.voxel_count() * bpv, 0);

  const auto& d = v.dims();
  if (d.nx > 32767 || d.ny > 32767 || d.nz > 32767) throw InvalidInput("NIfTI-1 extents are limited to 32767");
  put<std::int32_t>(out, kSizeofHdr, static_cast<std::int32_t>(kHeaderSize));
  out[kRegular] = 'r';
  put<std::int16_t>(out, kDim, 3);
  put<std::int16_t>(out, kDim + 2, static_cast<std::int16_t>(d.nx));
  put<std::int16_t>(out, kDim + 4, static_cast<std::int16_t>(d.ny));
  put<std::int16_t>(out, kDim + 6, static_cast<std::int16_t>(d.nz));
  for (int i = 4; i <= 7; ++i) put<std::int16_t>(out, kDim + 2 * i, 1);
  put<std::int16_t>(out, kDatatype, static_cast<std::int16_t>(v.dtype()));
  put<std::int16_t>(out, kBitpix, static_cast<std::int16_t>(8 * bpv));
  put<float>(out, kPixdim, 1.0f);
  put<float>(out, kPixdim + 4, static_cast<float>(v.spacing().sx));
  put<float>(out, kPixdim + 8, static_cast<float>(v.spacing().sy));
  put<float>(out, kPixdim + 12, static_cast<float>(v.spacing().sz));
  put<float>(out, kVoxOffsetField, static_cast<float>(kVoxOffset));
  put<float>(out, kSclSlope, v.scl_slope());
  put<float>(out, kSclInter, v.scl_inter());
  out[kXyztUnits] = 2;  // NIFTI_UNITS_MM
  std::memcpy(out.data() + kDescrip, v.description().data(), v.description().size());
  std::memcpy(out.data() + kMagic, "n+1\0", 4);

  std::visit([&](const auto& samples) { std::memcpy(out.data() + kVoxOffset, samples.data(), samples.size() * bpv); },
             v.storage());
  return compress ? gzip_compress(out) : out;
}

VoxelVolume read_nifti_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read error on " + path.string());
  try {
    return read_nifti(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.filename().string() + ": " + e.what());
  }
}

void write_nifti_file(const std::filesystem::path& path, const VoxelVolume& v) {
  const bool compress = path.extension() == ".gz";
  const auto bytes = write_nifti(v, compress);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw IoError("write error on " + path.string());
}

}  // namespace voxql::volume
