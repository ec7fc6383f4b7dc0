#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fpm/geometry.hpp"
#include "fpm/objects.hpp"
#include "fpm/recon.hpp"

namespace fpm {

/// Config validation failure; maps to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// Inconsistent data (manifest vs config grids); exit code 3.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// Non-finite values detected; exit code 4.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ObjectSpec {
    std::string kind = "amplitude-only";  // amplitude-only | phase-only | complex | files
    std::string amplitude_path;
    std::string phase_path;
    double phase_range_rad = 1.5707963267948966;
    int size_px = 512;
    uint64_t seed = 0;
};

/// One JSON document drives every command. Physical fields carry unit
/// suffixes in their names.
struct PipelineConfig {
    SystemSpec system;
    LedArraySpec array;
    ObjectSpec object;
    PlanMode plan_mode = PlanMode::full;
    bool flip_half = false;
    ReconConfig recon;
    /// Symmetric pairs for compare-symmetric; empty means the diagonal rings
    /// (1,1)..(4,4) clipped to the array.
    std::vector<std::pair<int, int>> pairs;
    double noise_sigma = 0.0;
    uint64_t seed = 0;
    std::filesystem::path output_dir = "out";
    std::filesystem::path config_dir;  // directory of the config file, for relative paths
};

/// Command-line overrides applied on top of the config document.
struct CliOverrides {
    std::optional<std::string> out_dir;
    std::optional<uint64_t> seed;
    std::optional<std::string> plan_mode;
    std::optional<int> iterations;
};

PipelineConfig load_config(const std::filesystem::path& path);
void apply_overrides(PipelineConfig& config, const CliOverrides& ov);

/// Full validation; throws ConfigError naming the offending field. Runs
/// before any output is written.
void validate_config(const PipelineConfig& config);

ComplexObject build_object(const PipelineConfig& config);
GridSpec object_grid(const PipelineConfig& config);

/// simulate: capture stack (frames + manifest) under <out>/stack.
int cmd_simulate(const std::filesystem::path& config_path, const CliOverrides& ov = {});

/// reconstruct: amplitude/phase PGMs, residual CSV, metadata JSON from an
/// existing stack directory.
int cmd_reconstruct(const std::filesystem::path& config_path,
                    const std::filesystem::path& stack_dir, const CliOverrides& ov = {});

/// compare-symmetric: per object kind and per configured pair, the RMSE and
/// both center-line profiles of the frames at +-theta.
int cmd_compare_symmetric(const std::filesystem::path& config_path, const CliOverrides& ov = {});

/// full-vs-half: both reconstructions, phase-aligned, with profile CSVs,
/// RMSE, cross-correlation and per-group contrast table.
int cmd_full_vs_half(const std::filesystem::path& config_path, const CliOverrides& ov = {});

/// metrics: compare two grayscale images (PGM) directly.
int cmd_metrics(const std::filesystem::path& image_a, const std::filesystem::path& image_b,
                const std::filesystem::path& out_dir, std::optional<int> profile_row = {});

}  // namespace fpm
