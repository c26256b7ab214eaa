#pragma once

#include <filesystem>

#include "fomul/field.hpp"

namespace fomul {

/// Writes a 16-bit big-endian binary PGM scaled so the maximum maps to 65535, and a
/// sidecar of the unscaled samples as little-endian float64 next to it (`.f64`).
void write_intensity(const IntensityImage& img, const std::filesystem::path& pgm_path);

/// Path of the float64 sidecar written alongside `pgm_path`.
std::filesystem::path sidecar_path(const std::filesystem::path& pgm_path);

/// Reads back a float64 sidecar of an N x N image.
IntensityImage read_sidecar(const std::filesystem::path& path, std::size_t size, double pitch);

}  // namespace fomul
