#include <CLI11.hpp>

#include "fpm/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Fourier ptychography simulation and reconstruction toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string stack_dir;
    std::string out_dir;
    std::string plan_mode;
    std::string image_a, image_b;
    uint64_t seed = 0;
    int iterations = 0;
    int profile_row = -1;

    auto add_common = [&](CLI::App* cmd, bool needs_config = true) {
        if (needs_config)
            cmd->add_option("--config", config_path, "pipeline config (JSON)")->required();
        cmd->add_option("--out", out_dir, "output directory (overrides config)");
        cmd->add_option("--seed", seed, "seed override");
        cmd->add_option("--plan", plan_mode, "plan mode override")
            ->check(CLI::IsMember({"full", "half-rows", "minimal-cover"}));
        cmd->add_option("--iterations", iterations, "reconstruction iteration override");
    };

    CLI::App* sim = app.add_subcommand("simulate", "simulate a capture stack");
    add_common(sim);

    CLI::App* rec = app.add_subcommand("reconstruct", "reconstruct from a stack directory");
    add_common(rec);
    rec->add_option("--stack", stack_dir, "capture stack directory")->required();

    CLI::App* cmp = app.add_subcommand("compare-symmetric",
                                       "compare frames captured at point-symmetric angles");
    add_common(cmp);

    CLI::App* fvh = app.add_subcommand("full-vs-half",
                                       "reconstruct with the full and the half plan and compare");
    add_common(fvh);

    CLI::App* met = app.add_subcommand("metrics", "compare two grayscale images");
    met->add_option("--a", image_a, "first image (PGM)")->required();
    met->add_option("--b", image_b, "second image (PGM)")->required();
    met->add_option("--out", out_dir, "output directory")->required();
    met->add_option("--row", profile_row, "profile row (default: center)");

    CLI11_PARSE(app, argc, argv);

    CLI::App* active = app.get_subcommands().at(0);
    auto given = [&](const char* name) {
        const CLI::Option* o = active->get_option_no_throw(name);
        return o != nullptr && o->count() > 0;
    };
    fpm::CliOverrides ov;
    if (given("--out")) ov.out_dir = out_dir;
    if (given("--seed")) ov.seed = seed;
    if (given("--plan")) ov.plan_mode = plan_mode;
    if (given("--iterations")) ov.iterations = iterations;

    if (sim->parsed()) return fpm::cmd_simulate(config_path, ov);
    if (rec->parsed()) return fpm::cmd_reconstruct(config_path, stack_dir, ov);
    if (cmp->parsed()) return fpm::cmd_compare_symmetric(config_path, ov);
    if (fvh->parsed()) return fpm::cmd_full_vs_half(config_path, ov);
    if (met->parsed())
        return fpm::cmd_metrics(image_a, image_b, out_dir,
                                profile_row >= 0 ? std::optional<int>(profile_row) : std::nullopt);
    return 1;
}
