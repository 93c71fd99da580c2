#pragma once

#include <string>
#include <vector>

#include "sac/simulator.hpp"

namespace sac {

enum class SweepAxis { None, Epsilon, Lambda, Scheme };

// Parameters that feed scheme construction; filled by the parser with
// per-scheme defaults.
struct SchemeParams {
    std::string name;           // matdot, eps_amd, group_sac, orthomatdot,
                                // lagrange, layer_sac_chebyshev, layer_sac_lagrange
    int k = 0;
    int n = 0;
    std::string eval;           // equal, complex_circle, chebyshev, cluster
    double epsilon = 0.0;       // 0 = use the per-eval default
    std::vector<int> groups;
    std::vector<double> anchors;
    std::vector<int> cluster_sizes;
    bool shuffle = true;
};

struct SweepSpec {
    ExperimentConfig base;
    SchemeParams scheme_params;            // kept so sweeps can rebuild the scheme
    SweepAxis axis = SweepAxis::None;
    std::vector<double> values;            // epsilon or lambda sweep
    std::vector<std::string> scheme_names; // scheme sweep
    std::string out_prefix = "results";
};

// Build a validated scheme from the parameters; throws std::invalid_argument
// naming the violated invariant.
CodingScheme build_scheme(const SchemeParams& p);

// Parse the key = value config grammar (one pair per line, '#' comments,
// comma-separated lists). Throws std::runtime_error with a line diagnostic on
// parse errors and std::invalid_argument on validation errors.
SweepSpec parse_config(const std::string& text);

SweepSpec parse_config_file(const std::string& path);

// Execute the sweep and write <prefix>.csv plus <prefix>_mean.csv under
// out_dir. Numbers are serialized with 17 significant digits. Returns 0 on
// success.
int run_sweep(const SweepSpec& spec, const std::string& out_dir);

}  // namespace sac
