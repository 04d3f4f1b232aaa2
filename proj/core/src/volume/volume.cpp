#include "voxql/volume/volume.hpp"

#include <cmath>

#include "voxql/error.hpp"

namespace voxql::volume {

std::string to_string(DataType t) {
  switch (t) {
    case DataType::U8:
      return "uint8";
    case DataType::I16:
      return "int16";
    case DataType::F32:
      return "float32";
  }
  return "unknown";
}

VoxelVolume::VoxelVolume(Dims dims, Spacing spacing, Storage data, float scl_slope, float scl_inter,
                         std::string description)
    : dims_(dims),
      spacing_(spacing),
      data_(std::move(data)),
      scl_slope_(scl_slope),
      scl_inter_(scl_inter),
      description_(std::move(description)) {
  spatial::GridSpec{dims_, spacing_, spatial::Connectivity::Face6}.validate();
  const std::size_t n = std::visit([](const auto& d) { return d.size(); }, data_);
  if (n != dims_.voxel_count())
    throw InvalidInput("volume data holds " + std::to_string(n) + " samples, dims require " +
                       std::to_string(dims_.voxel_count()));
  if (description_.size() > 80) throw InvalidInput("volume description longer than 80 bytes");
  if (description_.find('\0') != std::string::npos) throw InvalidInput("volume description contains NUL");
}

DataType VoxelVolume::dtype() const noexcept {
  switch (data_.index()) {
    case 0:
      return DataType::U8;
    case 1:
      return DataType::I16;
    default:
      return DataType::F32;
  }
}

double VoxelVolume::raw(std::size_t index) const {
  return std::visit([&](const auto& d) { return static_cast<double>(d.at(index)); }, data_);
}

bool VoxelVolume::has_scaling() const noexcept { return scl_slope_ != 0.0f && std::isfinite(scl_slope_); }

double VoxelVolume::value(std::size_t index) const {
  const double r = raw(index);
  return has_scaling() ? r * scl_slope_ + scl_inter_ : r;
}

std::vector<double> VoxelVolume::values() const {
  std::vector<double> out(voxel_count());
  const bool scaled = has_scaling();
  const double slope = scl_slope_, inter = scl_inter_;
  std::visit(
      [&](const auto& d) {
        for (std::size_t i = 0; i < d.size(); ++i) {
          const double r = static_cast<double>(d[i]);
          out[i] = scaled ? r * slope + inter : r;
        }
      },
      data_);
  return out;
}

}  // namespace voxql::volume
