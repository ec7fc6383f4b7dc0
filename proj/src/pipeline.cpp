#include "fpm/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>

#include "fpm/fft.hpp"
#include "fpm/json_io.hpp"
#include "fpm/pgm.hpp"
#include "fpm/stack_io.hpp"

namespace fpm {
namespace {

ObjectSpec object_from_json(const ordered_json& j) {
    ObjectSpec o;
    o.kind = j.value("kind", o.kind);
    o.amplitude_path = j.value("amplitude_path", std::string{});
    o.phase_path = j.value("phase_path", std::string{});
    o.phase_range_rad = j.value("phase_range_rad", o.phase_range_rad);
    o.size_px = j.value("size_px", o.size_px);
    o.seed = j.value("seed", o.seed);
    return o;
}

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

void ensure_finite(const RealImage& img, const std::string& what) {
    for (double v : img.v)
        if (!std::isfinite(v)) throw NumericError(what + " contains non-finite values");
}

double degrees(double sine) { return std::asin(sine) * 180.0 / std::numbers::pi; }

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Joint [0,255] mapping of two images (shared min/max), as the CSV reports
/// promise in their headers.
std::pair<std::vector<double>, std::vector<double>> joint_gray_rows(const RealImage& a,
                                                                    const RealImage& b, int row) {
    double lo = a.v[0], hi = a.v[0];
    for (double v : a.v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    for (double v : b.v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double s = hi > lo ? 255.0 / (hi - lo) : 0.0;
    std::vector<double> ra(static_cast<size_t>(a.width)), rb(static_cast<size_t>(b.width));
    for (int c = 0; c < a.width; ++c) {
        ra[static_cast<size_t>(c)] = (a.at(row, c) - lo) * s;
        rb[static_cast<size_t>(c)] = (b.at(row, c) - lo) * s;
    }
    return {std::move(ra), std::move(rb)};
}

}  // namespace

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path.string());

    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const std::exception& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }

    PipelineConfig c;
    try {
        if (j.contains("system")) c.system = system_from_json(j.at("system"));
        if (j.contains("led_array")) c.array = array_from_json(j.at("led_array"));
        if (j.contains("object")) c.object = object_from_json(j.at("object"));
        if (j.contains("plan")) {
            c.plan_mode = plan_mode_from_string(j.at("plan").value("mode", "full"));
            c.flip_half = j.at("plan").value("flip_half", false);
        }
        if (j.contains("recon")) {
            const auto& r = j.at("recon");
            c.recon.iterations = r.value("iterations", c.recon.iterations);
            c.recon.init = init_mode_from_string(r.value("init", std::string("upsampled-central")));
            c.recon.convergence_tolerance =
                r.value("convergence_tolerance", c.recon.convergence_tolerance);
        }
        if (j.contains("pairs"))
            for (const auto& p : j.at("pairs"))
                c.pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
        c.noise_sigma = j.value("noise_sigma", 0.0);
        c.seed = j.value("seed", uint64_t{0});
        c.output_dir = j.value("output_dir", std::string("out"));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    c.config_dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    return c;
}

void apply_overrides(PipelineConfig& config, const CliOverrides& ov) {
    if (ov.out_dir) config.output_dir = *ov.out_dir;
    if (ov.seed) config.seed = *ov.seed;
    if (ov.plan_mode) config.plan_mode = plan_mode_from_string(*ov.plan_mode);
    if (ov.iterations) config.recon.iterations = *ov.iterations;
}

GridSpec object_grid(const PipelineConfig& config) {
    const double pitch =
        config.system.object_pitch_um() * config.system.camera_pixels / config.object.size_px;
    return GridSpec{config.object.size_px, pitch};
}

void validate_config(const PipelineConfig& config) {
    try {
        config.system.validate();
        config.array.validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }

    const ObjectSpec& o = config.object;
    if (o.kind != "files") {
        object_kind_from_string(o.kind);  // throws with the field value on bad kinds
        if (o.size_px < 32) throw ConfigError("object.size_px must be >= 32");
    } else {
        if (o.amplitude_path.empty() && o.phase_path.empty())
            throw ConfigError("object.kind=files needs amplitude_path and/or phase_path");
        for (const std::string& p : {o.amplitude_path, o.phase_path}) {
            if (p.empty()) continue;
            if (!std::filesystem::exists(config.config_dir / p))
                throw ConfigError("object path does not exist: " + p);
        }
    }
    if (o.phase_range_rad < 0.0) throw ConfigError("object.phase_range_rad must be >= 0");
    if (o.size_px % config.system.camera_pixels != 0)
        throw ConfigError("object.size_px must be an integer multiple of system.camera_pixels");

    if (config.recon.iterations < 1) throw ConfigError("recon.iterations must be >= 1");
    if (config.recon.convergence_tolerance < 0.0)
        throw ConfigError("recon.convergence_tolerance must be >= 0");
    if (config.noise_sigma < 0.0) throw ConfigError("noise_sigma must be >= 0");

    const int h = config.array.half_span();
    for (auto [i, j] : config.pairs)
        if (std::abs(i) > h || std::abs(j) > h)
            throw ConfigError("pairs entry outside the LED array");

    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) throw ConfigError("output_dir is not writable: " + config.output_dir.string());
}

ComplexObject build_object(const PipelineConfig& config) {
    const GridSpec grid = object_grid(config);
    if (config.object.kind == "files") {
        RealImage amp, phase;
        const RealImage* amp_p = nullptr;
        const RealImage* phase_p = nullptr;
        if (!config.object.amplitude_path.empty()) {
            amp = load_grayscale(config.config_dir / config.object.amplitude_path);
            amp_p = &amp;
        }
        if (!config.object.phase_path.empty()) {
            phase = load_grayscale(config.config_dir / config.object.phase_path);
            phase_p = &phase;
        }
        ComplexObject obj = make_object(amp_p, phase_p, config.object.phase_range_rad,
                                        grid.pitch_um, config.object.size_px);
        if (obj.field.width() != config.object.size_px)
            throw DataError("object images do not match object.size_px");
        return obj;
    }
    return standard_test_object(object_kind_from_string(config.object.kind), config.object.size_px,
                                config.object.phase_range_rad, grid.pitch_um, config.object.seed);
}

int cmd_simulate(const std::filesystem::path& config_path, const CliOverrides& ov) {
    return guarded([&]() {
        PipelineConfig config = load_config(config_path);
        apply_overrides(config, ov);
        validate_config(config);

        const IlluminationPlan plan =
            make_plan(config.array, config.plan_mode, config.system, object_grid(config),
                      config.flip_half);
        const ComplexObject object = build_object(config);
        CaptureStack stack = simulate_stack(object, config.system, plan);
        if (config.noise_sigma > 0.0) stack = add_noise(stack, config.noise_sigma, config.seed);
        for (const auto& f : stack.frames) ensure_finite(f, "simulated frame");

        const auto dir = config.output_dir / "stack";
        export_stack(stack, dir);
        std::cout << "simulate: wrote " << stack.frames.size() << " frames to " << dir.string()
                  << "\n";
        return 0;
    });
}

int cmd_reconstruct(const std::filesystem::path& config_path,
                    const std::filesystem::path& stack_dir, const CliOverrides& ov) {
    return guarded([&]() {
        PipelineConfig config = load_config(config_path);
        apply_overrides(config, ov);
        validate_config(config);

        CaptureStack stack;
        try {
            stack = import_stack(stack_dir);
        } catch (const std::exception& e) {
            throw DataError(e.what());
        }

        const SystemSpec& cs = config.system;
        const SystemSpec& ss = stack.system;
        if (ss.camera_pixels != cs.camera_pixels || ss.camera_pitch_um != cs.camera_pitch_um ||
            ss.magnification != cs.magnification || ss.wavelength_um != cs.wavelength_um ||
            ss.objective_na != cs.objective_na)
            throw DataError("stack manifest system spec does not match config");
        const GridSpec want = object_grid(config);
        if (stack.object_grid.pixels != want.pixels ||
            std::abs(stack.object_grid.pitch_um - want.pitch_um) > 1e-12 * want.pitch_um)
            throw DataError("stack manifest object grid does not match config");

        const ReconResult result = reconstruct(stack, config.system, config.recon);
        ensure_finite(result.amplitude, "reconstructed amplitude");
        ensure_finite(result.phase, "reconstructed phase");

        const auto dir = config.output_dir / "recon";
        export_result(result, dir);
        std::cout << "reconstruct: " << result.frame_count << " frames, "
                  << result.residual_trace.size() << " iterations, results in " << dir.string()
                  << "\n";
        return 0;
    });
}

namespace {

/// Capture stack holding only the frames of the requested symmetric pairs.
CaptureStack pair_stack(const ComplexObject& object, const SystemSpec& system,
                        const LedArraySpec& array, const GridSpec& grid,
                        const std::vector<std::pair<int, int>>& pairs) {
    const IlluminationPlan all = make_plan(array, PlanMode::full, system, grid);
    CaptureStack stack;
    stack.system = system;
    stack.object_grid = grid;
    stack.provenance = "simulated";
    stack.plan.array = array;
    stack.plan.mode = PlanMode::full;

    const Pupil pupil = system_pupil(system);
    const ComplexField2D spectrum = dft2(object.field);
    for (auto [i, j] : pairs) {
        for (LedIndex led : {LedIndex{i, j}, LedIndex{-i, -j}}) {
            if (stack.plan.find_entry(led) >= 0) continue;
            const int k = all.find_entry(led);
            if (k < 0) throw ConfigError("pairs entry outside the LED array");
            const PlanEntry& e = all.entries[static_cast<size_t>(k)];
            stack.plan.entries.push_back(e);
            stack.frames.push_back(frame_from_spectrum(spectrum, system.camera_pixels,
                                                       e.shift_u_px, e.shift_v_px, pupil));
        }
    }
    return stack;
}

}  // namespace

int cmd_compare_symmetric(const std::filesystem::path& config_path, const CliOverrides& ov) {
    return guarded([&]() {
        PipelineConfig config = load_config(config_path);
        apply_overrides(config, ov);
        validate_config(config);

        if (config.pairs.empty())
            for (int k = 1; k <= std::min(4, config.array.half_span()); ++k)
                config.pairs.emplace_back(k, k);

        const GridSpec grid = object_grid(config);
        std::filesystem::create_directories(config.output_dir);
        auto summary = open_out(config.output_dir / "symmetric_pairs.csv");
        summary << "object_kind,pair_i,pair_j,theta_x_deg,theta_y_deg,rmse_gray_8bit\n";

        for (ObjectKind kind :
             {ObjectKind::amplitude_only, ObjectKind::phase_only, ObjectKind::complex_object}) {
            PipelineConfig oc = config;
            oc.object.kind = to_string(kind);
            const ComplexObject object = build_object(oc);
            const CaptureStack stack =
                pair_stack(object, config.system, config.array, grid, config.pairs);

            for (auto [i, j] : config.pairs) {
                const PairComparison cmp = symmetric_pair_difference(stack, LedIndex{i, j});
                const Angle ang = led_angle(config.array, LedIndex{i, j});
                summary << to_string(kind) << "," << i << "," << j << ","
                        << fmt(degrees(ang.sin_tx)) << "," << fmt(degrees(ang.sin_ty)) << ","
                        << fmt(cmp.rmse) << "\n";

                char name[80];
                std::snprintf(name, sizeof(name), "profile_%s_%+d_%+d.csv",
                              to_string(kind).c_str(), i, j);
                auto prof = open_out(config.output_dir / name);
                prof << "# center-row profiles, per-image [0,255] normalization\n";
                prof << "position_px,gray_plus,gray_minus\n";
                for (size_t k = 0; k < cmp.profile_a.values.size(); ++k)
                    prof << cmp.profile_a.positions[k] << "," << fmt(cmp.profile_a.values[k])
                         << "," << fmt(cmp.profile_b.values[k]) << "\n";
            }
        }
        std::cout << "compare-symmetric: report in "
                  << (config.output_dir / "symmetric_pairs.csv").string() << "\n";
        return 0;
    });
}

int cmd_full_vs_half(const std::filesystem::path& config_path, const CliOverrides& ov) {
    return guarded([&]() {
        PipelineConfig config = load_config(config_path);
        apply_overrides(config, ov);
        validate_config(config);

        const GridSpec grid = object_grid(config);
        const ComplexObject object = build_object(config);

        const IlluminationPlan plan_full =
            make_plan(config.array, PlanMode::full, config.system, grid);
        const IlluminationPlan plan_half =
            make_plan(config.array, PlanMode::half_rows, config.system, grid, config.flip_half);

        CaptureStack stack_full = simulate_stack(object, config.system, plan_full);
        CaptureStack stack_half = simulate_stack(object, config.system, plan_half);
        if (config.noise_sigma > 0.0) {
            stack_full = add_noise(stack_full, config.noise_sigma, config.seed);
            stack_half = add_noise(stack_half, config.noise_sigma, config.seed + 1);
        }

        using clock = std::chrono::steady_clock;
        const auto t0 = clock::now();
        const ReconResult full = reconstruct(stack_full, config.system, config.recon);
        const auto t1 = clock::now();
        ReconResult half = reconstruct(stack_half, config.system, config.recon);
        const auto t2 = clock::now();
        half = global_phase_align(half, full);

        ensure_finite(full.amplitude, "full reconstruction");
        ensure_finite(half.amplitude, "half reconstruction");
        ensure_finite(full.phase, "full reconstruction phase");
        ensure_finite(half.phase, "half reconstruction phase");

        export_result(full, config.output_dir / "full");
        export_result(half, config.output_dir / "half");

        const int row = full.amplitude.height / 2;
        {
            auto prof = open_out(config.output_dir / "profiles_amplitude.csv");
            prof << "# center-row amplitude profiles, joint [0,255] normalization over both "
                    "reconstructions\n";
            prof << "position_px,gray_full,gray_half\n";
            auto [ra, rb] = joint_gray_rows(full.amplitude, half.amplitude, row);
            for (size_t k = 0; k < ra.size(); ++k)
                prof << k << "," << fmt(ra[k]) << "," << fmt(rb[k]) << "\n";
        }
        {
            auto prof = open_out(config.output_dir / "profiles_phase.csv");
            prof << "# center-row phase profiles after global phase alignment, joint [0,255] "
                    "normalization\n";
            prof << "position_px,gray_full,gray_half\n";
            auto [ra, rb] = joint_gray_rows(full.phase, half.phase, row);
            for (size_t k = 0; k < ra.size(); ++k)
                prof << k << "," << fmt(ra[k]) << "," << fmt(rb[k]) << "\n";
        }

        const double recon_s_full = std::chrono::duration<double>(t1 - t0).count();
        const double recon_s_half = std::chrono::duration<double>(t2 - t1).count();
        {
            auto m = open_out(config.output_dir / "metrics.csv");
            m << "metric,value\n";
            m << "rmse_amplitude_8bit," << fmt(rmse_gray(full.amplitude, half.amplitude)) << "\n";
            m << "rmse_phase_8bit," << fmt(rmse_gray(full.phase, half.phase)) << "\n";
            m << "ncc_amplitude," << fmt(normalized_cross_correlation(full.amplitude, half.amplitude))
              << "\n";
            m << "ncc_phase," << fmt(normalized_cross_correlation(full.phase, half.phase)) << "\n";
            m << "frames_full," << stack_full.frames.size() << "\n";
            m << "frames_half," << stack_half.frames.size() << "\n";
            m << "recon_seconds_full," << fmt(recon_s_full) << "\n";
            m << "recon_seconds_half," << fmt(recon_s_half) << "\n";
        }

        if (config.object.kind != "files") {
            // bar groups run along both axes; the half-rows plan starves the
            // row direction, so the column profiles are where contrast drops
            auto c = open_out(config.output_dir / "contrast.csv");
            c << "# michelson contrast per bar group, jointly normalized center-line profiles\n";
            c << "image,axis,period_px,window_begin,window_end,contrast_full,contrast_half\n";

            auto emit = [&](const char* image, const RealImage& fi, const RealImage& hi,
                            ProfileAxis axis, int period, int w0, int w1) {
                double lo = fi.v[0], hilim = fi.v[0];
                for (double v : fi.v) { lo = std::min(lo, v); hilim = std::max(hilim, v); }
                for (double v : hi.v) { lo = std::min(lo, v); hilim = std::max(hilim, v); }
                const double s = hilim > lo ? 255.0 / (hilim - lo) : 0.0;
                auto contrast = [&](const RealImage& img) {
                    const int extent = axis == ProfileAxis::row ? img.width : img.height;
                    const int index = axis == ProfileAxis::row ? img.height / 2 : img.width / 2;
                    LineProfile p;
                    p.values.resize(static_cast<size_t>(extent));
                    for (int k = 0; k < extent; ++k) {
                        const double v =
                            axis == ProfileAxis::row ? img.at(index, k) : img.at(k, index);
                        p.values[static_cast<size_t>(k)] = (v - lo) * s;
                    }
                    return michelson_contrast(p, w0, w1);
                };
                c << image << "," << (axis == ProfileAxis::row ? "row" : "column") << "," << period
                  << "," << w0 << "," << w1 << "," << fmt(contrast(fi)) << "," << fmt(contrast(hi))
                  << "\n";
            };

            const int n = config.object.size_px;
            for (const BarGroup& g : standard_bar_groups(n)) {
                emit("amplitude", full.amplitude, half.amplitude, ProfileAxis::row, g.period_px,
                     g.col_begin, g.col_end);
                // the phase pattern is the transpose: its main groups modulate along rows
                emit("phase", full.phase, half.phase, ProfileAxis::column, g.period_px,
                     g.col_begin, g.col_end);
            }
            for (const BarGroup& g : standard_cross_bar_groups(n)) {
                emit("amplitude", full.amplitude, half.amplitude, ProfileAxis::column, g.period_px,
                     g.row_begin, g.row_end);
                emit("phase", full.phase, half.phase, ProfileAxis::row, g.period_px, g.row_begin,
                     g.row_end);
            }
        }

        std::cout << "full-vs-half: " << stack_full.frames.size() << " vs "
                  << stack_half.frames.size() << " frames, reports in " << config.output_dir.string()
                  << "\n";
        return 0;
    });
}

int cmd_metrics(const std::filesystem::path& image_a, const std::filesystem::path& image_b,
                const std::filesystem::path& out_dir, std::optional<int> profile_row) {
    return guarded([&]() {
        if (!std::filesystem::exists(image_a)) throw ConfigError("no such image: " + image_a.string());
        if (!std::filesystem::exists(image_b)) throw ConfigError("no such image: " + image_b.string());
        const RealImage a = load_grayscale(image_a);
        const RealImage b = load_grayscale(image_b);
        if (a.width != b.width || a.height != b.height)
            throw DataError("images have different dimensions");

        std::filesystem::create_directories(out_dir);
        auto m = open_out(out_dir / "metrics.csv");
        m << "metric,value\n";
        m << "rmse_gray_8bit," << fmt(rmse_gray(a, b)) << "\n";
        m << "ncc," << fmt(normalized_cross_correlation(a, b)) << "\n";

        const int row = profile_row.value_or(a.height / 2);
        const LineProfile pa = line_profile(a, ProfileAxis::row, row);
        const LineProfile pb = line_profile(b, ProfileAxis::row, row);
        auto prof = open_out(out_dir / "profiles.csv");
        prof << "# row " << row << " profiles, per-image [0,255] normalization\n";
        prof << "position_px,gray_a,gray_b\n";
        for (size_t k = 0; k < pa.values.size(); ++k)
            prof << pa.positions[k] << "," << fmt(pa.values[k]) << "," << fmt(pb.values[k]) << "\n";

        std::cout << "metrics: reports in " << out_dir.string() << "\n";
        return 0;
    });
}

}  // namespace fpm
