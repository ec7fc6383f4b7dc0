#pragma once

#include <string>
#include <vector>

#include "fpm/field.hpp"

namespace fpm {

enum class ProfileAxis { row, column };

/// One row or column of an image on the 8-bit gray scale.
struct LineProfile {
    ProfileAxis axis = ProfileAxis::row;
    int index = 0;
    std::vector<double> values;
    std::vector<int> positions;
};

/// RMSE on a shared 8-bit gray scale: both images are mapped to [0, 255] by
/// one affine map built from the min/max of the concatenated pair, so
/// identical fields give 0 regardless of physical units.
double rmse_gray(const RealImage& a, const RealImage& b);

/// Extracts one row/column, mapped to [0, 255] by the image's own min/max.
LineProfile line_profile(const RealImage& img, ProfileAxis axis, int index);

/// Pearson correlation over all pixels after mean removal, in [-1, 1].
double normalized_cross_correlation(const RealImage& a, const RealImage& b);

/// (max - min) / (max + min) over values[begin, end); 0 for constant windows.
double michelson_contrast(const LineProfile& profile, int begin, int end);

}  // namespace fpm
