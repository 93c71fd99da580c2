#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sac/coding.hpp"
#include "sac/matrix.hpp"

namespace sac {

enum class InputModel { IidGaussian, Correlated };
enum class BetaPolicy { One, Unbiased, TheoremOracle, CaseCorrelated };

struct ExperimentConfig {
    CodingScheme scheme;
    std::size_t nx = 0, nz = 0, ny = 0;
    InputModel input_model = InputModel::IidGaussian;
    double lambda = 0.0;  // correlation degree for the correlated model
    BetaPolicy beta_policy = BetaPolicy::One;
    int trials = 1;
    std::uint64_t seed = 0;
    int threads = 1;

    void validate() const;
};

// One decoded estimate at m completed workers, paired with its analytical
// oracle and the scaling that was applied to both.
struct LayeredEstimate {
    int m = 0;
    Matrix c_tilde;     // computed estimate
    Matrix c_analytic;  // oracle C_m
    double beta_used = 1.0;
};

struct ErrorRecord {
    int trial = 0;
    int m = 0;
    double beta = 1.0;
    double rel_approx = 0.0;  // ||C - C_m||_F^2 / ||C||_F^2
    double rel_comp = 0.0;    // ||C_m - C~_m||_F^2 / ||C||_F^2
    double rel_total = 0.0;   // ||C - C~_m||_F^2 / ||C||_F^2
};

struct PerMStats {
    int m = 0;
    int count = 0;
    double mean_approx = 0.0, mean_comp = 0.0, mean_total = 0.0;
    double se_approx = 0.0, se_comp = 0.0, se_total = 0.0;  // standard errors
    double mean_beta = 0.0;
};

struct ErrorReport {
    std::vector<ErrorRecord> records;
    std::vector<PerMStats> per_m;
};

// Draw A and B from the configured input model. Iid: standard normal entries.
// Correlated: block i of A is lambda*A0 + Ai1 with A0 shared across blocks
// (and likewise for B), all latents standard normal.
std::pair<Matrix, Matrix> generate_inputs(const ExperimentConfig& cfg);

// One trial: shuffle the block pairing and the completion order from
// trial_seed, encode, compute all worker products, and decode at every
// decodable m. Deterministic given (cfg, a, b, trial_seed).
std::vector<LayeredEstimate> simulate_trial(const ExperimentConfig& cfg, const Matrix& a,
                                            const Matrix& b, std::uint64_t trial_seed);

// Run cfg.trials independent trials (trial t uses seed cfg.seed + t, t from 1)
// and aggregate per-m error statistics. Parallel and serial runs produce
// identical reports.
ErrorReport run_experiment(const ExperimentConfig& cfg);

// Scaling factor chosen by the configured policy for the given completion
// count; exposed for tests and the threshold report.
double select_beta(const ExperimentConfig& cfg, const PartitionedJob& job, int m);

}  // namespace sac
