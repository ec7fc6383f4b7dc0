#pragma once

#include <filesystem>
#include <string>

#include "fpm/field.hpp"

namespace fpm {

/// Binary PGM (P5) support, 8-bit and 16-bit big-endian.

/// Reads a P5 file and scales sample values to [0, 1] (v / maxval).
RealImage load_grayscale(const std::filesystem::path& path);

/// Writes `img` quantized with a caller-chosen affine map: values are
/// mapped by (v - lo) / (hi - lo) to [0, maxval], clamped and rounded.
/// maxval <= 255 writes one byte per pixel, otherwise two (big-endian).
void save_pgm(const std::filesystem::path& path, const RealImage& img, int maxval, double lo,
              double hi);

/// Writes values already in [0, 1].
inline void save_pgm(const std::filesystem::path& path, const RealImage& img, int maxval) {
    save_pgm(path, img, maxval, 0.0, 1.0);
}

}  // namespace fpm
