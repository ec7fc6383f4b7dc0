#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fpm/pipeline.hpp"
#include "fpm/pgm.hpp"
#include "fpm/stack_io.hpp"

using namespace fpm;
namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
    const auto dir = fs::temp_directory_path() / "fpm_pipeline_tests";
    fs::create_directories(dir);
    return dir;
}

/// Small but complete setup: 5x5 LEDs, 32-px camera, 128-px object.
std::string small_config_json(const std::string& out_dir, const std::string& kind = "amplitude-only",
                              const std::string& plan = "full") {
    return std::string(R"({
  "system": {"objective_na": 0.1, "magnification": 4.0, "focal_length_mm": 45.0,
             "wavelength_um": 0.63, "camera_pitch_um": 6.5, "camera_pixels": 32},
  "led_array": {"side_count": 5, "led_pitch_mm": 4.0, "distance_mm": 110.0},
  "object": {"kind": ")") +
           kind + R"(", "size_px": 128, "phase_range_rad": 1.5707963267948966, "seed": 7},
  "plan": {"mode": ")" +
           plan + R"("},
  "recon": {"iterations": 5, "init": "upsampled-central"},
  "pairs": [[1, 1], [2, 2]],
  "seed": 1,
  "output_dir": ")" +
           out_dir + R"("
})";
}

fs::path write_config(const std::string& name, const std::string& body) {
    const fs::path p = work_dir() / name;
    std::ofstream out(p, std::ios::binary);
    out << body;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

bool dirs_identical(const fs::path& a, const fs::path& b) {
    std::vector<std::string> names;
    for (const auto& e : fs::recursive_directory_iterator(a))
        if (e.is_regular_file()) names.push_back(fs::relative(e.path(), a).string());
    std::sort(names.begin(), names.end());
    for (const auto& n : names)
        if (!fs::exists(b / n) || slurp(a / n) != slurp(b / n)) return false;
    size_t count_b = 0;
    for (const auto& e : fs::recursive_directory_iterator(b))
        if (e.is_regular_file()) ++count_b;
    return count_b == names.size();
}

}  // namespace

TEST_CASE("cmd_simulate writes the expected stack and is deterministic") {
    const auto out1 = work_dir() / "sim1";
    const auto out2 = work_dir() / "sim2";
    fs::remove_all(out1);
    fs::remove_all(out2);

    const auto cfg = write_config("sim.json", small_config_json(out1.string()));
    CHECK(cmd_simulate(cfg) == 0);
    CHECK(fs::exists(out1 / "stack" / "manifest.json"));
    CHECK(fs::exists(out1 / "stack" / "frame_0024.pgm"));
    CHECK_FALSE(fs::exists(out1 / "stack" / "frame_0025.pgm"));

    const CaptureStack stack = import_stack(out1 / "stack");
    CHECK(stack.frames.size() == 25);
    CHECK(stack.object_grid.pixels == 128);

    CliOverrides ov;
    ov.out_dir = out2.string();
    CHECK(cmd_simulate(cfg, ov) == 0);
    CHECK(dirs_identical(out1 / "stack", out2 / "stack"));
}

TEST_CASE("half plan through the CLI yields the half count") {
    const auto out = work_dir() / "sim_half";
    fs::remove_all(out);
    const auto cfg =
        write_config("sim_half.json", small_config_json(out.string(), "phase-only", "half-rows"));
    CHECK(cmd_simulate(cfg) == 0);
    CHECK(import_stack(out / "stack").frames.size() == 15);  // 5x3 rows
}

TEST_CASE("validation failures exit with code 2 and write nothing") {
    const auto out = work_dir() / "sim_bad";
    fs::remove_all(out);

    const auto bad_mode =
        write_config("bad_mode.json", small_config_json(out.string(), "amplitude-only", "diagonal"));
    CHECK(cmd_simulate(bad_mode) == 2);
    CHECK_FALSE(fs::exists(out / "stack"));

    const auto bad_json = write_config("bad.json", "{ not json");
    CHECK(cmd_simulate(bad_json) == 2);

    CHECK(cmd_simulate(work_dir() / "missing.json") == 2);

    // size not a multiple of the camera grid
    std::string body = small_config_json(out.string());
    body.replace(body.find("\"size_px\": 128"), 14, "\"size_px\": 100");
    const auto bad_size = write_config("bad_size.json", body);
    CHECK(cmd_simulate(bad_size) == 2);
}

TEST_CASE("cmd_reconstruct consumes a stack, is deterministic, rejects mismatches") {
    const auto out = work_dir() / "rec";
    fs::remove_all(out);
    const auto cfg = write_config("rec.json", small_config_json(out.string()));
    REQUIRE(cmd_simulate(cfg) == 0);

    CHECK(cmd_reconstruct(cfg, out / "stack") == 0);
    for (const char* f : {"amplitude.pgm", "phase.pgm", "residual.csv", "result.json"})
        CHECK(fs::exists(out / "recon" / f));

    // residual CSV has the header plus one row per iteration
    const std::string csv = slurp(out / "recon" / "residual.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);

    // rerun into a second directory: byte-identical results
    const auto out2 = work_dir() / "rec2";
    fs::remove_all(out2);
    CliOverrides ov;
    ov.out_dir = out2.string();
    CHECK(cmd_reconstruct(cfg, out / "stack", ov) == 0);
    CHECK(dirs_identical(out / "recon", out2 / "recon"));

    // a config with a different camera no longer matches the manifest
    std::string other = small_config_json(out.string());
    other.replace(other.find("\"camera_pixels\": 32"), 19, "\"camera_pixels\": 64");
    other.replace(other.find("\"size_px\": 128"), 14, "\"size_px\": 256");
    const auto mismatched = write_config("mismatch.json", other);
    CHECK(cmd_reconstruct(mismatched, out / "stack") == 3);

    // missing stack directory is a data error
    CHECK(cmd_reconstruct(cfg, work_dir() / "nostack") == 3);
}

TEST_CASE("cmd_compare_symmetric emits the summary and per-pair profiles") {
    const auto out = work_dir() / "cmp";
    fs::remove_all(out);
    const auto cfg = write_config("cmp.json", small_config_json(out.string()));
    CHECK(cmd_compare_symmetric(cfg) == 0);

    const std::string csv = slurp(out / "symmetric_pairs.csv");
    CHECK(csv.find("object_kind,pair_i,pair_j") != std::string::npos);
    CHECK(csv.find("amplitude-only,1,1,") != std::string::npos);
    CHECK(csv.find("complex,2,2,") != std::string::npos);
    CHECK(fs::exists(out / "profile_amplitude-only_+1_+1.csv"));
    CHECK(fs::exists(out / "profile_complex_+2_+2.csv"));

    // amplitude-only rows report zero RMSE
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);  // header
    int amp_rows = 0;
    while (std::getline(lines, line)) {
        if (line.rfind("amplitude-only,", 0) != 0) continue;
        const double rmse = std::stod(line.substr(line.rfind(',') + 1));
        CHECK(rmse < 1e-9);
        ++amp_rows;
    }
    CHECK(amp_rows == 2);
}

TEST_CASE("cmd_full_vs_half emits reconstructions, profiles and metric tables") {
    const auto out = work_dir() / "fvh";
    fs::remove_all(out);
    const auto cfg = write_config("fvh.json", small_config_json(out.string()));
    CHECK(cmd_full_vs_half(cfg) == 0);

    for (const char* f : {"full/amplitude.pgm", "half/amplitude.pgm", "profiles_amplitude.csv",
                          "profiles_phase.csv", "metrics.csv", "contrast.csv"})
        CHECK(fs::exists(out / f));

    const std::string metrics = slurp(out / "metrics.csv");
    CHECK(metrics.find("ncc_amplitude,") != std::string::npos);
    CHECK(metrics.find("frames_full,25") != std::string::npos);
    CHECK(metrics.find("frames_half,15") != std::string::npos);

    const std::string profiles = slurp(out / "profiles_amplitude.csv");
    CHECK(profiles.find("joint [0,255] normalization") != std::string::npos);
}

TEST_CASE("file-based objects enter the pipeline through PGM images") {
    const auto out = work_dir() / "files_obj";
    fs::remove_all(out);

    // a 128-px amplitude image next to the config
    RealImage amp(128, 128);
    for (int r = 0; r < 128; ++r)
        for (int c = 0; c < 128; ++c) amp.at(r, c) = (c / 16) % 2 ? 1.0 : 0.3;
    save_pgm(work_dir() / "amp.pgm", amp, 255);

    std::string body = small_config_json(out.string());
    const std::string kind_field = "\"kind\": \"amplitude-only\"";
    body.replace(body.find(kind_field), kind_field.size(),
                 "\"kind\": \"files\", \"amplitude_path\": \"amp.pgm\"");
    const auto cfg = write_config("files.json", body);
    CHECK(cmd_simulate(cfg) == 0);
    CHECK(import_stack(out / "stack").frames.size() == 25);

    // a missing image path fails validation before any output
    fs::remove_all(out);
    body.replace(body.find("amp.pgm"), 7, "nope.pgm");
    CHECK(cmd_simulate(write_config("files_bad.json", body)) == 2);
    CHECK_FALSE(fs::exists(out / "stack"));
}

TEST_CASE("cmd_metrics compares two images") {
    const auto out = work_dir() / "met_src";
    fs::remove_all(out);
    const auto cfg = write_config("met.json", small_config_json(out.string()));
    REQUIRE(cmd_simulate(cfg) == 0);

    const auto report = work_dir() / "met_out";
    fs::remove_all(report);
    const auto img = out / "stack" / "frame_0000.pgm";
    CHECK(cmd_metrics(img, img, report) == 0);

    const std::string metrics = slurp(report / "metrics.csv");
    CHECK(metrics.find("rmse_gray_8bit,0\n") != std::string::npos);
    CHECK(metrics.find("ncc,1\n") != std::string::npos);

    CHECK(cmd_metrics(img, work_dir() / "missing.pgm", report) == 2);
}
