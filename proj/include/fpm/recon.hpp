#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fpm/forward.hpp"

namespace fpm {

enum class InitMode { upsampled_central, ones };

std::string to_string(InitMode mode);
InitMode init_mode_from_string(const std::string& s);

struct ReconConfig {
    int iterations = 20;
    InitMode init = InitMode::upsampled_central;
    /// Relative residual-change threshold for early stop; 0 disables it and
    /// the full iteration budget runs.
    double convergence_tolerance = 0.0;
};

/// Mutable solver state: the high-resolution spectrum estimate plus the
/// shared camera-grid pupil. Single-owner; a sweep is sequential.
struct ReconState {
    ComplexField2D spectrum;
    Pupil pupil;
    int iteration = 0;
    std::vector<double> residual_trace;
};

struct ReconResult {
    RealImage amplitude;  // >= 0 everywhere
    RealImage phase;      // in (-pi, pi]
    double pitch_um = 0.0;
    std::vector<double> residual_trace;
    ReconConfig config;
    PlanMode plan_mode = PlanMode::full;
    int frame_count = 0;
};

/// Initial spectrum estimate. upsampled_central embeds the transform of the
/// square root of the zero-shift frame into the center of the high-res grid
/// (scaled by the upsampling factor so field amplitudes are preserved);
/// ones builds a flat spectrum of matched energy.
ReconState init_spectrum(const CaptureStack& stack, const ReconConfig& config);

/// One full sweep over the plan: for every frame, extract the pupil-masked
/// camera-sized sub-spectrum at that frame's shift, move to the spatial
/// domain, replace the modulus with the measured amplitude keeping the
/// phase, transform back and write the result into the pupil-support region
/// of the estimate. Appends the sweep's intensity residual to the trace.
void fpm_iterate(ReconState& state, const CaptureStack& stack);

/// init + iterate until the budget or the early-stop tolerance; returns the
/// spatial amplitude/phase and the residual trace. Deterministic.
ReconResult reconstruct(const CaptureStack& stack, const SystemSpec& system,
                        const ReconConfig& config);

/// Removes the arbitrary global phase: subtracts the constant offset that
/// minimizes the mean squared phase difference against `reference`.
ReconResult global_phase_align(const ReconResult& result, const ReconResult& reference);

/// amplitude.pgm + phase.pgm (16-bit with scale sidecar result.json) and
/// residual.csv with one row per iteration.
void export_result(const ReconResult& result, const std::filesystem::path& dir);

}  // namespace fpm
