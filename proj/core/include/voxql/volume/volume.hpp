#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "voxql/spatial/grid.hpp"

namespace voxql::volume {

using spatial::Dims;
using spatial::Spacing;

// NIfTI datatype codes for the supported subset.
enum class DataType : std::int16_t { U8 = 2, I16 = 4, F32 = 16 };

std::string to_string(DataType t);

// A scalar 3D image in x-fastest order. Spacing, slope and intercept are kept
// at float precision because that is how NIfTI stores them.
class VoxelVolume {
 public:
  using Storage = std::variant<std::vector<std::uint8_t>, std::vector<std::int16_t>, std::vector<float>>;

  // Throws InvalidInput on size/spacing/description violations.
  VoxelVolume(Dims dims, Spacing spacing, Storage data, float scl_slope = 0.0f, float scl_inter = 0.0f,
              std::string description = {});

  const Dims& dims() const noexcept { return dims_; }
  const Spacing& spacing() const noexcept { return spacing_; }
  DataType dtype() const noexcept;
  std::size_t voxel_count() const noexcept { return dims_.voxel_count(); }
  const Storage& storage() const noexcept { return data_; }
  float scl_slope() const noexcept { return scl_slope_; }
  float scl_inter() const noexcept { return scl_inter_; }
  const std::string& description() const noexcept { return description_; }

  // Stored sample as double.
  double raw(std::size_t index) const;
  // Sample after value * slope + inter; a zero (or non-finite) slope means no scaling.
  double value(std::size_t index) const;
  bool has_scaling() const noexcept;

  // Scaled samples, materialized.
  std::vector<double> values() const;

  friend bool operator==(const VoxelVolume&, const VoxelVolume&) = default;

 private:
  Dims dims_;
  Spacing spacing_;
  Storage data_;
  float scl_slope_ = 0.0f;
  float scl_inter_ = 0.0f;
  std::string description_;
};

}  // namespace voxql::volume
