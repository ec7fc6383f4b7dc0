#include "fpm/forward.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fpm/fft.hpp"

namespace fpm {

RealImage frame_from_spectrum(const ComplexField2D& spectrum, int camera_pixels, int shift_u_px,
                              int shift_v_px, const Pupil& pupil) {
    const int n_hi = spectrum.width();
    if (spectrum.height() != n_hi)
        throw std::invalid_argument("frame_from_spectrum: object grid must be square");
    if (camera_pixels < 1 || n_hi % camera_pixels != 0)
        throw std::invalid_argument(
            "frame_from_spectrum: object grid must be an integer multiple of the camera grid");
    if (pupil.grid.pixels != camera_pixels)
        throw std::invalid_argument("frame_from_spectrum: pupil grid does not match camera grid");

    const int factor = n_hi / camera_pixels;
    const int c_hi = n_hi / 2;
    const int c_cam = camera_pixels / 2;
    const int row0 = c_hi + shift_v_px - c_cam;
    const int col0 = c_hi + shift_u_px - c_cam;
    if (row0 < 0 || col0 < 0 || row0 + camera_pixels > n_hi || col0 + camera_pixels > n_hi)
        throw std::out_of_range("frame_from_spectrum: sub-spectrum window exceeds spectrum bounds");

    ComplexField2D sub(camera_pixels, camera_pixels, spectrum.pitch_um() * factor);
    for (int r = 0; r < camera_pixels; ++r)
        for (int c = 0; c < camera_pixels; ++c)
            sub.at(r, c) = spectrum.at(row0 + r, col0 + c) * pupil.at(r, c);

    return idft2(sub).intensity();
}

RealImage simulate_frame(const ComplexObject& object, const SystemSpec& system, int shift_u_px,
                         int shift_v_px, const Pupil& pupil) {
    return frame_from_spectrum(dft2(object.field), system.camera_pixels, shift_u_px, shift_v_px,
                               pupil);
}

Pupil system_pupil(const SystemSpec& system) {
    return make_pupil(system.cutoff_cpum(), freq_grid_of(system.camera_grid()));
}

CaptureStack simulate_stack(const ComplexObject& object, const SystemSpec& system,
                            const IlluminationPlan& plan) {
    system.validate();
    if (object.field.width() != object.field.height())
        throw std::invalid_argument("simulate_stack: object grid must be square");

    CaptureStack stack;
    stack.plan = plan;
    stack.system = system;
    stack.object_grid = object.field.grid();
    stack.provenance = "simulated";

    const Pupil pupil = system_pupil(system);
    const ComplexField2D spectrum = dft2(object.field);
    stack.frames.reserve(plan.entries.size());
    for (const PlanEntry& e : plan.entries)
        stack.frames.push_back(frame_from_spectrum(spectrum, system.camera_pixels, e.shift_u_px,
                                                   e.shift_v_px, pupil));
    return stack;
}

PairComparison symmetric_pair_difference(const CaptureStack& stack, LedIndex led) {
    const int ka = stack.plan.find_entry(led);
    const int kb = stack.plan.find_entry(symmetric_partner(led));
    if (ka < 0 || kb < 0)
        throw std::invalid_argument("symmetric_pair_difference: pair frame missing from stack");

    const RealImage& a = stack.frames[static_cast<size_t>(ka)];
    const RealImage& b = stack.frames[static_cast<size_t>(kb)];

    PairComparison cmp;
    cmp.led = led;
    cmp.partner = symmetric_partner(led);
    cmp.rmse = rmse_gray(a, b);
    cmp.profile_a = line_profile(a, ProfileAxis::row, a.height / 2);
    cmp.profile_b = line_profile(b, ProfileAxis::row, b.height / 2);
    return cmp;
}

namespace {

uint64_t splitmix64(uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

CaptureStack add_noise(const CaptureStack& stack, double sigma_fraction, uint64_t seed) {
    if (sigma_fraction < 0.0) throw std::invalid_argument("add_noise: sigma must be >= 0");
    if (sigma_fraction == 0.0) return stack;

    double stack_max = 0.0;
    for (const auto& f : stack.frames)
        for (double v : f.v) stack_max = std::max(stack_max, v);
    const double sigma = sigma_fraction * stack_max;

    CaptureStack out = stack;
    uint64_t state = seed;
    for (auto& f : out.frames) {
        for (double& v : f.v) {
            // Box-Muller on two splitmix64 uniforms; fixed algorithm so the
            // result is identical across platforms for one seed.
            const double u1 = 1.0 - static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
            const double u2 = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
            const double g =
                std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
            v = std::max(0.0, v + sigma * g);
        }
    }
    return out;
}

}  // namespace fpm
