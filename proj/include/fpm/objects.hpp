#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpm/field.hpp"

namespace fpm {

/// Complex transmittance A(x,y) * exp(j phi(x,y)) sampled on the
/// high-resolution object grid.
struct ComplexObject {
    ComplexField2D field;
    RealImage amplitude;  // in [0, 1]
    RealImage phase;      // in [0, phase_range_rad]
    double phase_range_rad = 0.0;
    std::string amplitude_source;
    std::string phase_source;
};

/// Builds an object from grayscale sources. Null images mean uniform:
/// amplitude 1 and phase 0. Amplitude sources are rescaled to [0, 1] and
/// phase sources to [0, phase_range_rad]; constant sources map to
/// amplitude 1 / phase 0.
ComplexObject make_object(const RealImage* amp_image, const RealImage* phase_image,
                          double phase_range_rad, double pitch_um, int uniform_size_px = 0);

enum class ObjectKind { amplitude_only, phase_only, complex_object };

std::string to_string(ObjectKind kind);
ObjectKind object_kind_from_string(const std::string& s);

/// One three-bar group of the procedural resolution target: bright vertical
/// bars crossing the image's central row band.
struct BarGroup {
    int period_px = 0;
    int col_begin = 0, col_end = 0;  // columns spanned by the group
    int row_begin = 0, row_end = 0;  // the band the bars occupy
};

/// Layout of the vertical bar groups of the standard pattern, largest
/// period first. Depends only on the image size.
std::vector<BarGroup> standard_bar_groups(int size_px);

/// The second, 90-degree-rotated set of groups (bars modulating along rows,
/// crossing the central column band). row_begin/row_end span the bars,
/// col_begin/col_end the band. Largest period first.
std::vector<BarGroup> standard_cross_bar_groups(int size_px);

/// Deterministic procedural test object: three-bar resolution groups at
/// geometrically decreasing periods over a smooth seeded background. The
/// amplitude and phase patterns are structurally different images, as a
/// stand-in for a natural sample.
ComplexObject standard_test_object(ObjectKind kind, int size_px, double phase_range_rad,
                                   double pitch_um, uint64_t seed = 0);

}  // namespace fpm
