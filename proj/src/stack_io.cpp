#include "fpm/stack_io.hpp"

#include <cstdio>
#include <fstream>

#include "fpm/json_io.hpp"
#include "fpm/pgm.hpp"

namespace fpm {
namespace {

std::string frame_name(size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "frame_%04zu.pgm", index);
    return buf;
}

}  // namespace

void export_stack(const CaptureStack& stack, const std::filesystem::path& dir) {
    if (stack.frames.size() != stack.plan.entries.size())
        throw std::invalid_argument("export_stack: frame count does not match plan");
    std::filesystem::create_directories(dir);

    ordered_json frames = ordered_json::array();
    for (size_t k = 0; k < stack.frames.size(); ++k) {
        const RealImage& f = stack.frames[k];
        double mx = 0.0;
        for (double v : f.v) mx = std::max(mx, v);
        const std::string name = frame_name(k);
        save_pgm(dir / name, f, 65535, 0.0, mx > 0.0 ? mx : 1.0);
        frames.push_back(ordered_json{{"file", name},
                                      {"max_intensity", mx},
                                      {"bright_field", stack.plan.entries[k].bright_field}});
    }

    ordered_json manifest{{"format", "fpm-stack/1"},
                          {"provenance", stack.provenance},
                          {"system", system_to_json(stack.system)},
                          {"object_grid", grid_to_json(stack.object_grid)},
                          {"plan", plan_to_json(stack.plan)},
                          {"frames", std::move(frames)}};

    std::ofstream out(dir / "manifest.json", std::ios::binary);
    if (!out) throw std::runtime_error("export_stack: cannot write manifest.json");
    out << manifest.dump(2) << "\n";
}

CaptureStack import_stack(const std::filesystem::path& dir) {
    std::ifstream in(dir / "manifest.json", std::ios::binary);
    if (!in) throw std::runtime_error("import_stack: cannot open " + (dir / "manifest.json").string());
    ordered_json manifest = ordered_json::parse(in);

    if (manifest.value("format", "") != "fpm-stack/1")
        throw std::runtime_error("import_stack: unknown manifest format");

    CaptureStack stack;
    stack.system = system_from_json(manifest.at("system"));
    stack.object_grid = grid_from_json(manifest.at("object_grid"));
    stack.plan = plan_from_json(manifest.at("plan"));
    // keep the manifest's tag so export -> import -> export is byte-identical
    stack.provenance = manifest.value("provenance", "simulated");

    const auto& frames = manifest.at("frames");
    if (frames.size() != stack.plan.entries.size())
        throw std::runtime_error("import_stack: manifest frame count does not match plan");

    stack.frames.reserve(frames.size());
    for (const auto& jf : frames) {
        RealImage img = load_grayscale(dir / jf.at("file").get<std::string>());
        const double mx = jf.at("max_intensity").get<double>();
        for (double& v : img.v) v *= mx;
        stack.frames.push_back(std::move(img));
    }
    return stack;
}

}  // namespace fpm
