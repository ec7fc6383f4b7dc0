#pragma once

#include <string>
#include <vector>

#include "fpm/field.hpp"

namespace fpm {

/// Imaging-system description. focal_length_mm is informational; all pixel
/// computations use the normalized coherent cutoff NA/lambda instead.
struct SystemSpec {
    double objective_na = 0.1;
    double magnification = 4.0;
    double focal_length_mm = 45.0;
    double wavelength_um = 0.63;
    double camera_pitch_um = 6.5;
    int camera_pixels = 128;

    double object_pitch_um() const { return camera_pitch_um / magnification; }
    double cutoff_cpum() const { return objective_na / wavelength_um; }
    GridSpec camera_grid() const { return GridSpec{camera_pixels, object_pitch_um()}; }

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Planar square LED array centered on the optical axis.
struct LedArraySpec {
    int side_count = 15;  // odd, central LED on axis
    double led_pitch_mm = 4.0;
    double distance_mm = 110.0;

    int half_span() const { return (side_count - 1) / 2; }
    void validate() const;
};

/// Row/column offset from the central LED.
struct LedIndex {
    int i = 0;  // row offset
    int j = 0;  // column offset
    bool operator==(const LedIndex&) const = default;
};

struct Angle {
    double sin_tx = 0.0;
    double sin_ty = 0.0;
    double radial_sine() const;
};

/// Per-axis illumination direction sines for one LED.
/// sin_tx = x / sqrt(x^2 + d^2) with x the LED's column offset in mm and d
/// the array distance; likewise sin_ty from the row offset.
Angle led_angle(const LedArraySpec& array, LedIndex led);

/// Point reflection (i,j) -> (-i,-j); an involution.
LedIndex symmetric_partner(LedIndex led);

/// Spectral shift of one illumination angle on a frequency grid.
struct SpectralShift {
    double u_cpum = 0.0;  // continuous shift sin_tx / lambda
    double v_cpum = 0.0;
    double u_px_exact = 0.0;  // continuous shift over the frequency step
    double v_px_exact = 0.0;
    int u_px = 0;  // nearest-integer pixel shift
    int v_px = 0;
};

SpectralShift spectral_shift(const Angle& angle, double wavelength_um, const FreqGrid& grid);

/// Objective NA plus the largest illumination direction sine (corner LED).
double synthesized_na(const LedArraySpec& array, const SystemSpec& system);

enum class PlanMode { full, half_rows, minimal_cover };

std::string to_string(PlanMode mode);
PlanMode plan_mode_from_string(const std::string& s);

struct PlanEntry {
    LedIndex led;
    double sin_tx = 0.0;
    double sin_ty = 0.0;
    int shift_u_px = 0;
    int shift_v_px = 0;
    double shift_u_px_exact = 0.0;
    double shift_v_px_exact = 0.0;
    bool bright_field = true;
};

/// Ordered capture/update plan: spiral outward from the central LED
/// (low to high illumination frequency).
struct IlluminationPlan {
    LedArraySpec array;
    PlanMode mode = PlanMode::full;
    bool flip_half = false;
    std::vector<PlanEntry> entries;

    int find_entry(LedIndex led) const;  // -1 when absent
};

/// Builds the plan for `grid` (the high-resolution object grid). half_rows
/// keeps rows i >= 0 in full width (i <= 0 when flipped); minimal_cover
/// keeps the center plus the lexicographically-first member of each
/// symmetric pair.
IlluminationPlan make_plan(const LedArraySpec& array, PlanMode mode, const SystemSpec& system,
                           const GridSpec& grid, bool flip_half = false);

}  // namespace fpm
