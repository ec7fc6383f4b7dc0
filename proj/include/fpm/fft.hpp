#pragma once

#include "fpm/field.hpp"

namespace fpm {

/// Centered, unitary 2-D discrete Fourier transform. Zero frequency lands at
/// the grid center (pixels/2 per axis); the spatial origin is likewise the
/// grid center. Energy is preserved exactly (Parseval with factor 1).
ComplexField2D dft2(const ComplexField2D& field);

/// Inverse of dft2 under the same centered, unitary convention.
ComplexField2D idft2(const ComplexField2D& field);

namespace detail {
/// In-place 1-D FFT, any length >= 1. direction = -1 forward, +1 inverse.
/// No normalization is applied.
void fft1d(std::vector<cplx>& data, int direction);
}  // namespace detail

}  // namespace fpm
