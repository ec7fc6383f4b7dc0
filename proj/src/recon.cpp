#include "fpm/recon.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "fpm/fft.hpp"
#include "fpm/json_io.hpp"
#include "fpm/pgm.hpp"

namespace fpm {

std::string to_string(InitMode mode) {
    return mode == InitMode::upsampled_central ? "upsampled-central" : "ones";
}

InitMode init_mode_from_string(const std::string& s) {
    if (s == "upsampled-central") return InitMode::upsampled_central;
    if (s == "ones") return InitMode::ones;
    throw std::invalid_argument("recon.init must be upsampled-central or ones (got \"" + s + "\")");
}

namespace {

void check_stack(const CaptureStack& stack) {
    if (stack.frames.empty()) throw std::invalid_argument("reconstruction: empty stack");
    const int n_cam = stack.system.camera_pixels;
    const int n_hi = stack.object_grid.pixels;
    if (n_cam < 1 || n_hi % n_cam != 0)
        throw std::invalid_argument(
            "reconstruction: object grid must be an integer multiple of the camera grid");
    for (const auto& f : stack.frames)
        if (f.width != n_cam || f.height != n_cam)
            throw std::invalid_argument("reconstruction: frame dimensions do not match camera");
}

int central_frame_index(const CaptureStack& stack) {
    for (size_t k = 0; k < stack.plan.entries.size(); ++k) {
        const PlanEntry& e = stack.plan.entries[k];
        if (e.shift_u_px == 0 && e.shift_v_px == 0) return static_cast<int>(k);
    }
    return -1;
}

}  // namespace

ReconState init_spectrum(const CaptureStack& stack, const ReconConfig& config) {
    check_stack(stack);
    if (config.iterations < 1) throw std::invalid_argument("recon.iterations must be >= 1");
    if (config.convergence_tolerance < 0.0)
        throw std::invalid_argument("recon.convergence_tolerance must be >= 0");

    const int n_cam = stack.system.camera_pixels;
    const int n_hi = stack.object_grid.pixels;
    const int factor = n_hi / n_cam;

    ReconState state;
    state.pupil = system_pupil(stack.system);
    state.spectrum = ComplexField2D(n_hi, n_hi, stack.object_grid.pitch_um);

    if (config.init == InitMode::upsampled_central) {
        const int kc = central_frame_index(stack);
        if (kc < 0)
            throw std::invalid_argument(
                "init_spectrum: upsampled-central requires a zero-shift frame in the stack");
        const RealImage& frame = stack.frames[static_cast<size_t>(kc)];

        ComplexField2D amp(n_cam, n_cam, stack.system.object_pitch_um());
        for (size_t k = 0; k < frame.size(); ++k)
            amp.samples()[k] = cplx{std::sqrt(std::max(0.0, frame.v[k])), 0.0};
        const ComplexField2D spec = dft2(amp);

        // zero-padded embedding; the upsampling factor keeps spatial sample
        // values unchanged under the unitary transform pair
        const int off = n_hi / 2 - n_cam / 2;
        for (int r = 0; r < n_cam; ++r)
            for (int c = 0; c < n_cam; ++c)
                state.spectrum.at(off + r, off + c) = spec.at(r, c) * static_cast<double>(factor);
    } else {
        double mean_energy = 0.0;
        for (const auto& f : stack.frames)
            for (double v : f.v) mean_energy += std::max(0.0, v);
        mean_energy /= static_cast<double>(stack.frames.size());
        const double target = mean_energy * factor * factor;
        const double value = std::sqrt(target / (static_cast<double>(n_hi) * n_hi));
        for (auto& s : state.spectrum.samples()) s = cplx{value, 0.0};
    }
    return state;
}

void fpm_iterate(ReconState& state, const CaptureStack& stack) {
    check_stack(stack);
    const int n_cam = stack.system.camera_pixels;
    const int n_hi = state.spectrum.width();
    if (n_hi != stack.object_grid.pixels)
        throw std::invalid_argument("fpm_iterate: state and stack grids differ");
    const int c_hi = n_hi / 2;
    const int c_cam = n_cam / 2;
    const Pupil& pupil = state.pupil;

    ComplexField2D sub(n_cam, n_cam, stack.system.object_pitch_um());
    double sweep_residual = 0.0;

    for (size_t k = 0; k < stack.plan.entries.size(); ++k) {
        const PlanEntry& e = stack.plan.entries[k];
        const RealImage& measured = stack.frames[k];
        const int row0 = c_hi + e.shift_v_px - c_cam;
        const int col0 = c_hi + e.shift_u_px - c_cam;
        if (row0 < 0 || col0 < 0 || row0 + n_cam > n_hi || col0 + n_cam > n_hi)
            throw std::out_of_range("fpm_iterate: plan shift outside spectrum bounds");

        for (int r = 0; r < n_cam; ++r)
            for (int c = 0; c < n_cam; ++c)
                sub.at(r, c) = state.spectrum.at(row0 + r, col0 + c) * pupil.at(r, c);

        ComplexField2D low = idft2(sub);

        double frame_residual = 0.0;
        for (size_t p = 0; p < low.samples().size(); ++p) {
            cplx& s = low.samples()[p];
            const double est_intensity = std::norm(s);
            const double d = est_intensity - measured.v[p];
            frame_residual += d * d;
            const double target = std::sqrt(std::max(0.0, measured.v[p]));
            const double mod = std::abs(s);
            s = mod > 0.0 ? s * (target / mod) : cplx{target, 0.0};
        }
        sweep_residual += frame_residual / static_cast<double>(low.samples().size());

        const ComplexField2D updated = dft2(low);
        for (int r = 0; r < n_cam; ++r)
            for (int c = 0; c < n_cam; ++c)
                if (pupil.at(r, c) != 0.0)
                    state.spectrum.at(row0 + r, col0 + c) = updated.at(r, c);
    }

    state.iteration += 1;
    state.residual_trace.push_back(sweep_residual);
}

ReconResult reconstruct(const CaptureStack& stack, const SystemSpec& system,
                        const ReconConfig& config) {
    system.validate();
    if (system.camera_pixels != stack.system.camera_pixels)
        throw std::invalid_argument("reconstruct: system camera size does not match stack");

    ReconState state = init_spectrum(stack, config);
    for (int it = 0; it < config.iterations; ++it) {
        fpm_iterate(state, stack);
        if (config.convergence_tolerance > 0.0 && state.residual_trace.size() >= 2) {
            const double prev = state.residual_trace[state.residual_trace.size() - 2];
            const double cur = state.residual_trace.back();
            if (prev > 0.0 && std::abs(prev - cur) < config.convergence_tolerance * prev) break;
        }
    }

    const ComplexField2D field = idft2(state.spectrum);
    ReconResult res;
    res.pitch_um = stack.object_grid.pitch_um;
    res.amplitude = field.modulus();
    res.phase = RealImage(field.width(), field.height());
    for (size_t k = 0; k < field.samples().size(); ++k) {
        double p = std::arg(field.samples()[k]);
        if (p == -std::numbers::pi) p = std::numbers::pi;  // phase lives in (-pi, pi]
        res.phase.v[k] = p;
    }
    res.residual_trace = state.residual_trace;
    res.config = config;
    res.plan_mode = stack.plan.mode;
    res.frame_count = static_cast<int>(stack.frames.size());
    return res;
}

ReconResult global_phase_align(const ReconResult& result, const ReconResult& reference) {
    if (result.phase.width != reference.phase.width ||
        result.phase.height != reference.phase.height)
        throw std::invalid_argument("global_phase_align: grid mismatch");

    // circular mean of the phase difference; exact for a constant offset
    double re = 0.0, im = 0.0;
    for (size_t k = 0; k < result.phase.size(); ++k) {
        const double d = result.phase.v[k] - reference.phase.v[k];
        re += std::cos(d);
        im += std::sin(d);
    }
    const double offset = std::atan2(im, re);

    ReconResult aligned = result;
    for (double& p : aligned.phase.v) {
        p -= offset;
        while (p <= -std::numbers::pi) p += 2.0 * std::numbers::pi;
        while (p > std::numbers::pi) p -= 2.0 * std::numbers::pi;
    }
    return aligned;
}

void export_result(const ReconResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);

    double amp_max = 0.0;
    for (double v : result.amplitude.v) amp_max = std::max(amp_max, v);
    if (amp_max == 0.0) amp_max = 1.0;
    save_pgm(dir / "amplitude.pgm", result.amplitude, 65535, 0.0, amp_max);
    save_pgm(dir / "phase.pgm", result.phase, 65535, -std::numbers::pi, std::numbers::pi);

    ordered_json meta{
        {"amplitude", ordered_json{{"file", "amplitude.pgm"}, {"lo", 0.0}, {"hi", amp_max}, {"bits", 16}}},
        {"phase", ordered_json{{"file", "phase.pgm"},
                               {"lo", -std::numbers::pi},
                               {"hi", std::numbers::pi},
                               {"bits", 16}}},
        {"pitch_um", result.pitch_um},
        {"plan_mode", to_string(result.plan_mode)},
        {"frame_count", result.frame_count},
        {"iterations_run", static_cast<int>(result.residual_trace.size())},
        {"config", ordered_json{{"iterations", result.config.iterations},
                                {"init", to_string(result.config.init)},
                                {"convergence_tolerance", result.config.convergence_tolerance}}}};
    std::ofstream js(dir / "result.json", std::ios::binary);
    if (!js) throw std::runtime_error("export_result: cannot write result.json");
    js << meta.dump(2) << "\n";

    std::ofstream csv(dir / "residual.csv", std::ios::binary);
    if (!csv) throw std::runtime_error("export_result: cannot write residual.csv");
    csv << "iteration,residual\n";
    char buf[64];
    for (size_t k = 0; k < result.residual_trace.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", k + 1, result.residual_trace[k]);
        csv << buf;
    }
}

}  // namespace fpm
