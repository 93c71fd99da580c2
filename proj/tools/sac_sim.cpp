// Command-line front end for the coded matrix multiplication simulator.
//
//   sac_sim run <config> [--out DIR] [--trials N] [--seed S] [--full-scale]
//   sac_sim validate <config>
//   sac_sim thresholds <config>
//
// Environment overrides: SAC_OUT_DIR (output directory), SAC_THREADS.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "sac/config.hpp"

namespace {

int env_threads() {
    if (const char* s = std::getenv("SAC_THREADS")) {
        const int t = std::atoi(s);
        if (t >= 1) return t;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

void print_thresholds(const sac::CodingScheme& scheme) {
    std::printf("scheme: %s\n", sac::scheme_name(scheme).c_str());
    std::printf("k: %d\n", scheme.k_total);
    std::printf("workers: %d\n", scheme.eval_set.size());
    std::printf("recovery_threshold: %d\n", sac::recovery_threshold(scheme));
    const auto layers = sac::layer_structure(scheme);
    if (layers.empty()) {
        std::printf("approximate layers: none (exact recovery only)\n");
        return;
    }
    std::printf("approximate layers:\n");
    for (const auto& l : layers) {
        if (l.group)
            std::printf("  layer %d: threshold %d (first of group %d)\n", l.layer_index,
                        l.threshold, *l.group);
        else
            std::printf("  layer %d: threshold %d\n", l.layer_index, l.threshold);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coded distributed matrix multiplication simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "results";
    int trials_override = 0;
    long long seed_override = -1;
    bool full_scale = false;

    auto* run = app.add_subcommand("run", "Run the experiment sweep from a config file");
    run->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out_dir, "Output directory (default: results)");
    run->add_option("--trials", trials_override, "Override trial count")->check(CLI::PositiveNumber);
    run->add_option("--seed", seed_override, "Override base seed")->check(CLI::NonNegativeNumber);
    run->add_flag("--full-scale", full_scale,
                  "Scale matrix dimensions 10x for the paper-scale run");

    auto* validate = app.add_subcommand("validate", "Parse and validate a config file");
    validate->add_option("config", config_path, "Config file")
        ->required()
        ->check(CLI::ExistingFile);

    auto* thresholds =
        app.add_subcommand("thresholds", "Print the recovery and layer thresholds of a config");
    thresholds->add_option("config", config_path, "Config file")
        ->required()
        ->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        sac::SweepSpec spec = sac::parse_config_file(config_path);

        if (validate->parsed()) {
            std::printf("ok: %s\n", config_path.c_str());
            return 0;
        }
        if (thresholds->parsed()) {
            print_thresholds(spec.base.scheme);
            return 0;
        }

        if (trials_override > 0) spec.base.trials = trials_override;
        if (seed_override >= 0) spec.base.seed = static_cast<std::uint64_t>(seed_override);
        if (full_scale) {
            spec.base.nx *= 10;
            spec.base.nz *= 10;
            spec.base.ny *= 10;
        }
        spec.base.threads = env_threads();
        if (const char* d = std::getenv("SAC_OUT_DIR")) out_dir = d;
        std::filesystem::create_directories(out_dir);

        const int rc = sac::run_sweep(spec, out_dir);
        if (rc == 0)
            std::printf("wrote %s/%s.csv and %s/%s_mean.csv\n", out_dir.c_str(),
                        spec.out_prefix.c_str(), out_dir.c_str(), spec.out_prefix.c_str());
        return rc;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
