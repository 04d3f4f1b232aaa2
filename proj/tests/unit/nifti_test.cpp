#include <gtest/gtest.h>

#include <cstring>
#include <random>

#include "test_support.hpp"
#include "voxql/error.hpp"
#include "voxql/volume/gzip.hpp"
#include "voxql/volume/nifti.hpp"

namespace {

using namespace voxql::volume;
using namespace voxql::testing;
using Bytes = std::vector<std::uint8_t>;

VoxelVolume golden_with_description() {
  return VoxelVolume({2, 2, 2}, {1, 1, 1}, std::vector<std::uint8_t>{0, 1, 2, 3, 4, 5, 6, 7}, 0, 0, "golden");
}

TEST(ReadNifti, GoldenFile) {
  const auto v = read_nifti(read_bytes(data_dir() / "golden_2x2x2_u8.nii"));
  EXPECT_EQ(v.dtype(), DataType::U8);
  EXPECT_EQ(v.dims(), (Dims{2, 2, 2}));
  EXPECT_EQ(v.values(), (std::vector<double>{0, 1, 2, 3, 4, 5, 6, 7}));
  EXPECT_EQ(v, golden_with_description());
}

TEST(ReadNifti, GzipWrappedGolden) {
  const auto bytes = read_bytes(data_dir() / "golden_2x2x2_u8.nii.gz");
  ASSERT_TRUE(is_gzip(bytes));
  EXPECT_EQ(read_nifti(bytes), golden_with_description());
}

TEST(ReadNifti, BigEndianGolden) {
  EXPECT_EQ(read_nifti(read_bytes(data_dir() / "golden_2x2x2_u8_be.nii")), golden_with_description());
}

TEST(ReadNifti, ScaledInt16) {
  const auto v = read_nifti(read_bytes(data_dir() / "golden_2x2x2_i16_scaled.nii"));
  EXPECT_EQ(v.dtype(), DataType::I16);
  EXPECT_DOUBLE_EQ(v.spacing().sx, 0.5);
  EXPECT_DOUBLE_EQ(v.spacing().sz, 2.0);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(v.raw(i), static_cast<double>(i) - 2.0);
    EXPECT_DOUBLE_EQ(v.value(i), (static_cast<double>(i) - 2.0) * 0.5 + 10.0);
  }
}

TEST(WriteNifti, GoldenBytesExactly) {
  EXPECT_EQ(write_nifti(golden_with_description(), false), read_bytes(data_dir() / "golden_2x2x2_u8.nii"));
  const auto scaled = read_bytes(data_dir() / "golden_2x2x2_i16_scaled.nii");
  EXPECT_EQ(write_nifti(read_nifti(scaled), false), scaled);
}

TEST(WriteNifti, HeaderFieldsAtStandardOffsets) {
  const auto bytes = write_nifti(golden_volume(), false);
  std::int32_t sizeof_hdr;
  std::int16_t datatype, bitpix;
  float vox_offset;
  std::memcpy(&sizeof_hdr, bytes.data() + 0, 4);
  std::memcpy(&datatype, bytes.data() + 70, 2);
  std::memcpy(&bitpix, bytes.data() + 72, 2);
  std::memcpy(&vox_offset, bytes.data() + 108, 4);
  EXPECT_EQ(sizeof_hdr, 348);
  EXPECT_EQ(datatype, 2);
  EXPECT_EQ(bitpix, 8);
  EXPECT_EQ(vox_offset, 352.0f);
  EXPECT_EQ(std::memcmp(bytes.data() + 344, "n+1\0", 4), 0);
  EXPECT_EQ(bytes.size(), 352u + 8u);
}

TEST(WriteNifti, DeterministicAndRoundTrips) {
  std::mt19937_64 rng(7);
  for (bool gz : {false, true}) {
    const VoxelVolume v({3, 2, 5}, {0.5, 1.25, 3}, std::vector<float>{1.5f, -2.f, 0.f, 1e6f, 3.25f, 7.f, 8.f, 9.f, 1.f, 2.f,
                                                                        3.f, 4.f, 5.f, 6.f, 7.f, 8.f, 9.f, 1.f, 2.f, 3.f,
                                                                        4.f, 5.f, 6.f, 7.f, 8.f, 9.f, 1.f, 2.f, 3.f, 4.f},
                        2.0f, -1.0f, "round trip");
    const auto a = write_nifti(v, gz), b = write_nifti(v, gz);
    EXPECT_EQ(a, b);
    EXPECT_EQ(is_gzip(a), gz);
    EXPECT_EQ(read_nifti(a), v);
  }
}

TEST(WriteNifti, MaskVolumeIsU8ZeroOne) {
  TempDir dir;
  const VoxelVolume mask({2, 1, 1}, {1, 1, 1}, std::vector<std::uint8_t>{0, 1});
  write_nifti_file(dir / "m.nii.gz", mask);
  write_nifti_file(dir / "m.nii", mask);
  EXPECT_TRUE(is_gzip(read_bytes(dir / "m.nii.gz")));
  EXPECT_FALSE(is_gzip(read_bytes(dir / "m.nii")));
  EXPECT_EQ(read_nifti_file(dir / "m.nii.gz"), mask);
}

Bytes golden_bytes() { return read_bytes(data_dir() / "golden_2x2x2_u8.nii"); }

template <typename T>
void poke(Bytes& b, std::size_t offset, T value) {
  std::memcpy(b.data() + offset, &value, sizeof(T));
}

TEST(ReadNifti, RejectsBadMagic) {
  auto b = golden_bytes();
  b[344] = 'x';
  EXPECT_THROW(read_nifti(b), voxql::FormatError);
}

TEST(ReadNifti, RejectsUnsupportedDatatype) {
  auto b = golden_bytes();
  poke<std::int16_t>(b, 70, 64);  // FLOAT64
  poke<std::int16_t>(b, 72, 64);
  EXPECT_THROW(read_nifti(b), voxql::FormatError);
}

TEST(ReadNifti, RejectsTruncation) {
  auto b = golden_bytes();
  b.resize(b.size() - 1);
  EXPECT_THROW(read_nifti(b), voxql::FormatError);
  EXPECT_THROW(read_nifti(Bytes(100, 0)), voxql::FormatError);
  EXPECT_THROW(read_nifti(Bytes{}), voxql::FormatError);
}

TEST(ReadNifti, FourDimensions) {
  auto b = golden_bytes();
  poke<std::int16_t>(b, 40, 4);
  EXPECT_EQ(read_nifti(b).values().size(), 8u);  // trailing dim[4] = 1
  poke<std::int16_t>(b, 48, 2);
  try {
    read_nifti(b);
    FAIL() << "expected a FormatError";
  } catch (const voxql::FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("4D not supported"), std::string::npos);
  }
}

TEST(ReadNifti, RejectsCorruptGzip) {
  auto gz = read_bytes(data_dir() / "golden_2x2x2_u8.nii.gz");
  gz.resize(gz.size() / 2);
  EXPECT_THROW(read_nifti(gz), voxql::FormatError);
}

TEST(Gzip, RoundTrip) {
  const Bytes data{1, 2, 3, 0, 0, 0, 255};
  EXPECT_EQ(gzip_decompress(gzip_compress(data)), data);
  EXPECT_EQ(gzip_decompress(gzip_compress(Bytes{})), Bytes{});
}

TEST(VoxelVolume, ValidatesConstruction) {
  EXPECT_THROW(VoxelVolume({2, 2, 2}, {1, 1, 1}, std::vector<std::uint8_t>(7)), voxql::InvalidInput);
  EXPECT_THROW(VoxelVolume({1, 1, 1}, {0, 1, 1}, std::vector<std::uint8_t>(1)), voxql::InvalidInput);
  EXPECT_THROW(VoxelVolume({1, 1, 1}, {1, 1, 1}, std::vector<std::uint8_t>(1), 0, 0, std::string(81, 'x')),
               voxql::InvalidInput);
}

}  // namespace
