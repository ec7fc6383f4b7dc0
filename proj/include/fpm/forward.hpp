#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpm/field.hpp"
#include "fpm/geometry.hpp"
#include "fpm/metrics.hpp"
#include "fpm/objects.hpp"
#include "fpm/pupil.hpp"

namespace fpm {

/// Per-LED intensity frames at camera resolution plus the plan that
/// produced them. frames[k] corresponds to plan.entries[k].
struct CaptureStack {
    IlluminationPlan plan;
    SystemSpec system;
    GridSpec object_grid;  // high-resolution grid the frames were formed from
    std::vector<RealImage> frames;
    std::string provenance = "simulated";

    int upsampling() const { return object_grid.pixels / system.camera_pixels; }
};

/// One captured frame from a precomputed centered object spectrum: extract
/// the camera-sized sub-spectrum centered at the pixel shift, apply the
/// pupil, inverse transform, squared modulus.
RealImage frame_from_spectrum(const ComplexField2D& spectrum, int camera_pixels, int shift_u_px,
                              int shift_v_px, const Pupil& pupil);

/// Full forward chain for a single illumination angle.
RealImage simulate_frame(const ComplexObject& object, const SystemSpec& system, int shift_u_px,
                         int shift_v_px, const Pupil& pupil);

/// One frame per plan entry. The object spectrum is computed once.
CaptureStack simulate_stack(const ComplexObject& object, const SystemSpec& system,
                            const IlluminationPlan& plan);

/// The pupil every stack in this model shares: binary circ of the objective
/// NA on the camera frequency grid.
Pupil system_pupil(const SystemSpec& system);

struct PairComparison {
    LedIndex led;
    LedIndex partner;
    double rmse = 0.0;       // 8-bit normalized
    LineProfile profile_a;   // central horizontal line of frame at led
    LineProfile profile_b;   // central horizontal line of partner frame
};

/// RMSE and center-line profiles of the frames captured at `led` and its
/// point-symmetric partner. Throws when either frame is absent.
PairComparison symmetric_pair_difference(const CaptureStack& stack, LedIndex led);

/// Additive Gaussian noise with sigma expressed as a fraction of the stack
/// maximum, clamped at zero. Deterministic for a fixed seed.
CaptureStack add_noise(const CaptureStack& stack, double sigma_fraction, uint64_t seed);

}  // namespace fpm
