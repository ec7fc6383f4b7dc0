#include "fpm/pupil.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fpm/bessel.hpp"

namespace fpm {

Pupil make_pupil(double cutoff_cpum, const FreqGrid& grid) {
    if (!(cutoff_cpum > 0.0)) throw std::invalid_argument("make_pupil: cutoff must be > 0");
    if (!(grid.step_cpum > 0.0)) throw std::invalid_argument("make_pupil: frequency step must be > 0");

    Pupil p;
    p.cutoff_cpum = cutoff_cpum;
    p.grid = grid;
    p.pixel_radius = cutoff_cpum / grid.step_cpum;
    p.clipped = cutoff_cpum > grid.max_freq_cpum();
    p.mask.assign(static_cast<size_t>(grid.pixels) * grid.pixels, 0.0);

    const int c = grid.center();
    const double cutoff_sq = cutoff_cpum * cutoff_cpum;
    for (int r = 0; r < grid.pixels; ++r) {
        const double v = (r - c) * grid.step_cpum;
        for (int col = 0; col < grid.pixels; ++col) {
            const double u = (col - c) * grid.step_cpum;
            if (u * u + v * v <= cutoff_sq)
                p.mask[static_cast<size_t>(r) * grid.pixels + col] = 1.0;
        }
    }
    return p;
}

AiryKernel airy_kernel(const GridSpec& grid, double cutoff_cpum) {
    if (!(grid.pitch_um > 0.0)) throw std::invalid_argument("airy_kernel: grid pitch must be > 0");

    AiryKernel k;
    k.cutoff_cpum = cutoff_cpum;
    k.grid = grid;
    k.field = ComplexField2D(grid.pixels, grid.pixels, grid.pitch_um);

    // idft2(mask)(x) ~ (1/sqrt(N^2)) * (1/df^2) * integral over the disc,
    // so the continuous kernel carries a global scale of extent^2 / N. The
    // grid sees the periodized kernel (Poisson summation), so the nearest
    // spatial replicas are summed in; their tails decay as rho^-3/2.
    const int n = grid.pixels;
    const double scale = grid.extent_um() * grid.extent_um() / static_cast<double>(n);
    const double period = grid.extent_um();
    const int c = grid.center();
    const double a = cutoff_cpum;
    const double center_value = scale * std::numbers::pi * a * a;

    auto continuous = [&](double x, double y) {
        const double rho = std::hypot(x, y);
        if (rho == 0.0) return center_value;
        return scale * a * bessel_j1(2.0 * std::numbers::pi * a * rho) / rho;
    };

    for (int r = 0; r < n; ++r) {
        const double y = (r - c) * grid.pitch_um;
        for (int col = 0; col < n; ++col) {
            const double x = (col - c) * grid.pitch_um;
            double v = 0.0;
            for (int my = -1; my <= 1; ++my)
                for (int mx = -1; mx <= 1; ++mx) v += continuous(x + mx * period, y + my * period);
            k.field.at(r, col) = cplx{v, 0.0};
        }
    }
    return k;
}

}  // namespace fpm
