#pragma once

#include "fpm/field.hpp"

namespace fpm {

/// Ideal binary circular pupil sampled on a centered frequency grid.
/// mask(u,v) = 1 exactly where sqrt(u^2+v^2) <= cutoff (boundary inclusive).
struct Pupil {
    double cutoff_cpum = 0.0;  // coherent cutoff NA/lambda, cycles/um
    FreqGrid grid;
    std::vector<double> mask;  // row-major, values in {0,1}
    double pixel_radius = 0.0;  // cutoff / frequency step, for diagnostics
    bool clipped = false;       // cutoff beyond the grid's representable band

    double at(int row, int col) const {
        return mask[static_cast<size_t>(row) * grid.pixels + col];
    }
};

Pupil make_pupil(double cutoff_cpum, const FreqGrid& grid);

/// Spatial point-spread kernel of the binary pupil: the Airy pattern
/// r -> J1(2 pi cutoff r) * cutoff / r, with the analytic limit at r = 0.
/// Globally scaled so that its spectrum equals the binary pupil mask, i.e.
/// the kernel approximates idft2 of the matching pupil.
struct AiryKernel {
    ComplexField2D field;  // real-valued in practice
    double cutoff_cpum = 0.0;
    GridSpec grid;
};

AiryKernel airy_kernel(const GridSpec& grid, double cutoff_cpum);

}  // namespace fpm
