#include "fpm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fpm {

void SystemSpec::validate() const {
    if (!(objective_na > 0.0 && objective_na < 1.0))
        throw std::invalid_argument("system.objective_na must be in (0, 1)");
    if (!(magnification > 0.0)) throw std::invalid_argument("system.magnification must be > 0");
    if (!(wavelength_um > 0.0)) throw std::invalid_argument("system.wavelength_um must be > 0");
    if (!(camera_pitch_um > 0.0)) throw std::invalid_argument("system.camera_pitch_um must be > 0");
    if (camera_pixels < 1) throw std::invalid_argument("system.camera_pixels must be >= 1");
}

void LedArraySpec::validate() const {
    if (side_count < 1 || side_count % 2 == 0)
        throw std::invalid_argument("led_array.side_count must be odd and >= 1");
    if (!(led_pitch_mm > 0.0)) throw std::invalid_argument("led_array.led_pitch_mm must be > 0");
    if (!(distance_mm > 0.0)) throw std::invalid_argument("led_array.distance_mm must be > 0");
}

double Angle::radial_sine() const { return std::hypot(sin_tx, sin_ty); }

Angle led_angle(const LedArraySpec& array, LedIndex led) {
    const int h = array.half_span();
    if (std::abs(led.i) > h || std::abs(led.j) > h)
        throw std::out_of_range("led_angle: LED index outside array");
    const double x = led.j * array.led_pitch_mm;
    const double y = led.i * array.led_pitch_mm;
    const double d = array.distance_mm;
    return Angle{x / std::hypot(x, d), y / std::hypot(y, d)};
}

LedIndex symmetric_partner(LedIndex led) { return LedIndex{-led.i, -led.j}; }

SpectralShift spectral_shift(const Angle& angle, double wavelength_um, const FreqGrid& grid) {
    if (!(grid.step_cpum > 0.0))
        throw std::invalid_argument("spectral_shift: frequency step must be > 0");

    SpectralShift s;
    s.u_cpum = angle.sin_tx / wavelength_um;
    s.v_cpum = angle.sin_ty / wavelength_um;
    s.u_px_exact = s.u_cpum / grid.step_cpum;
    s.v_px_exact = s.v_cpum / grid.step_cpum;
    s.u_px = static_cast<int>(std::llround(s.u_px_exact));
    s.v_px = static_cast<int>(std::llround(s.v_px_exact));

    const int bound = grid.pixels / 2;
    if (std::abs(s.u_px) > bound || std::abs(s.v_px) > bound)
        throw std::out_of_range("spectral_shift: shift beyond grid bounds");
    return s;
}

double synthesized_na(const LedArraySpec& array, const SystemSpec& system) {
    array.validate();
    system.validate();
    const int h = array.half_span();
    const Angle corner = led_angle(array, LedIndex{h, h});
    return system.objective_na + corner.radial_sine();
}

std::string to_string(PlanMode mode) {
    switch (mode) {
        case PlanMode::full: return "full";
        case PlanMode::half_rows: return "half-rows";
        case PlanMode::minimal_cover: return "minimal-cover";
    }
    throw std::invalid_argument("unknown plan mode");
}

PlanMode plan_mode_from_string(const std::string& s) {
    if (s == "full") return PlanMode::full;
    if (s == "half-rows") return PlanMode::half_rows;
    if (s == "minimal-cover") return PlanMode::minimal_cover;
    throw std::invalid_argument("plan.mode must be one of full, half-rows, minimal-cover (got \"" + s + "\")");
}

int IlluminationPlan::find_entry(LedIndex led) const {
    for (size_t k = 0; k < entries.size(); ++k)
        if (entries[k].led == led) return static_cast<int>(k);
    return -1;
}

namespace {

bool keep_in_mode(LedIndex led, PlanMode mode, bool flip) {
    switch (mode) {
        case PlanMode::full:
            return true;
        case PlanMode::half_rows:
            return flip ? led.i <= 0 : led.i >= 0;
        case PlanMode::minimal_cover: {
            if (led.i == 0 && led.j == 0) return true;
            const LedIndex p = symmetric_partner(led);
            return std::pair{led.i, led.j} < std::pair{p.i, p.j};
        }
    }
    return false;
}

struct SpiralKey {
    int ring;
    double angle;
    int i, j;
    bool operator<(const SpiralKey& o) const {
        if (ring != o.ring) return ring < o.ring;
        if (angle != o.angle) return angle < o.angle;
        if (i != o.i) return i < o.i;
        return j < o.j;
    }
};

SpiralKey spiral_key(LedIndex led) {
    const int ring = std::max(std::abs(led.i), std::abs(led.j));
    double a = std::atan2(static_cast<double>(led.i), static_cast<double>(led.j));
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    return SpiralKey{ring, a, led.i, led.j};
}

}  // namespace

IlluminationPlan make_plan(const LedArraySpec& array, PlanMode mode, const SystemSpec& system,
                           const GridSpec& grid, bool flip_half) {
    array.validate();
    system.validate();

    IlluminationPlan plan;
    plan.array = array;
    plan.mode = mode;
    plan.flip_half = flip_half;

    const int h = array.half_span();
    std::vector<LedIndex> kept;
    for (int i = -h; i <= h; ++i)
        for (int j = -h; j <= h; ++j)
            if (keep_in_mode(LedIndex{i, j}, mode, flip_half)) kept.push_back(LedIndex{i, j});

    std::sort(kept.begin(), kept.end(),
              [](LedIndex a, LedIndex b) { return spiral_key(a) < spiral_key(b); });

    const FreqGrid fgrid = freq_grid_of(grid);
    plan.entries.reserve(kept.size());
    for (LedIndex led : kept) {
        const Angle ang = led_angle(array, led);
        const SpectralShift s = spectral_shift(ang, system.wavelength_um, fgrid);
        PlanEntry e;
        e.led = led;
        e.sin_tx = ang.sin_tx;
        e.sin_ty = ang.sin_ty;
        e.shift_u_px = s.u_px;
        e.shift_v_px = s.v_px;
        e.shift_u_px_exact = s.u_px_exact;
        e.shift_v_px_exact = s.v_px_exact;
        e.bright_field = ang.radial_sine() <= system.objective_na;
        plan.entries.push_back(e);
    }
    return plan;
}

}  // namespace fpm
