#pragma once

#include <filesystem>

#include "mproj/matrix_core.hpp"

namespace mproj {

/// Binary (P5) or ASCII (P2) greymap with maxval <= 255; samples are
/// rescaled to [0, 255].
Image read_pgm(const std::filesystem::path& path);

/// Writes P5, rounding and clamping to [0, 255].
void write_pgm(const std::filesystem::path& path, const Image& img);

/// 8-bit grayscale PNG only.
Image read_png(const std::filesystem::path& path);

/// Dispatches on the file signature.
Image read_image(const std::filesystem::path& path);

/// Bilinear resampling with pixel-center alignment.
Image resize_bilinear(const Image& img, Eigen::Index rows, Eigen::Index cols);

}  // namespace mproj
