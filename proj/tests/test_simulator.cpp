#include <cmath>
#include <vector>

#include "doctest.h"
#include "sac/simulator.hpp"

using namespace sac;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.scheme = CodingScheme{GroupSac{{2, 2}}, 4, make_complex_circle_set(9, 1.0)};
    cfg.nx = 6;
    cfg.nz = 32;
    cfg.ny = 6;
    cfg.trials = 8;
    cfg.seed = 42;
    return cfg;
}

}  // namespace

TEST_CASE("input generation is deterministic and correctly shaped") {
    ExperimentConfig cfg = small_config();
    const auto [a1, b1] = generate_inputs(cfg);
    const auto [a2, b2] = generate_inputs(cfg);
    CHECK(a1.rows() == 6);
    CHECK(a1.cols() == 32);
    CHECK(b1.rows() == 32);
    CHECK(b1.cols() == 6);
    CHECK(frobenius_norm_sq(a1 - a2) == 0.0);
    CHECK(frobenius_norm_sq(b1 - b2) == 0.0);

    cfg.seed = 43;
    const auto [a3, b3] = generate_inputs(cfg);
    CHECK(frobenius_norm_sq(a1 - a3) > 0.0);
}

TEST_CASE("correlated inputs converge to the shared latent as lambda grows") {
    ExperimentConfig cfg = small_config();
    cfg.input_model = InputModel::Correlated;
    cfg.lambda = 1e4;
    const auto [a, b] = generate_inputs(cfg);
    // with lambda huge, all K column blocks of A are nearly proportional
    const std::size_t band = 8;
    double max_rel = 0.0;
    for (std::size_t blk = 1; blk < 4; ++blk) {
        double diff = 0.0, ref = 0.0;
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < band; ++c) {
                diff += std::norm(a(r, blk * band + c) - a(r, c));
                ref += std::norm(a(r, c));
            }
        max_rel = std::max(max_rel, diff / ref);
    }
    CHECK(max_rel < 1e-6);
    (void)b;
}

TEST_CASE("trial decoding is exact at and beyond the recovery threshold") {
    ExperimentConfig cfg = small_config();
    cfg.validate();
    const auto [a, b] = generate_inputs(cfg);
    const Matrix c = (a * b).real_part();
    const auto estimates = simulate_trial(cfg, a, b, 7);
    // group scheme {2,2}: first decodable at m=2, exact from R=7
    CHECK(estimates.front().m == 2);
    for (const auto& est : estimates) {
        if (est.m >= 7) {
            CHECK(frobenius_norm_sq(est.c_tilde - c) / frobenius_norm_sq(c) < 1e-16);
            CHECK(est.beta_used == 1.0);
        }
    }
}

TEST_CASE("oracle and decoded estimates agree below threshold for tiny epsilon") {
    ExperimentConfig cfg = small_config();
    cfg.scheme.eval_set = make_complex_circle_set(9, 0.01);
    const auto [a, b] = generate_inputs(cfg);
    const double c_norm = frobenius_norm_sq((a * b).real_part());
    const auto estimates = simulate_trial(cfg, a, b, 11);
    for (const auto& est : estimates) {
        const double comp = frobenius_norm_sq(est.c_tilde - est.c_analytic) / c_norm;
        CHECK(comp < 0.05);  // truncation error only, attenuated by epsilon
    }
}

TEST_CASE("unbiased policy uses K over completed blocks for group schemes") {
    ExperimentConfig cfg = small_config();
    cfg.beta_policy = BetaPolicy::Unbiased;
    const auto [a, b] = generate_inputs(cfg);
    PartitionedJob job = partition(a, b, 4);
    CHECK(select_beta(cfg, job, 2) == doctest::Approx(2.0).epsilon(1e-15));  // 4/2
    CHECK(select_beta(cfg, job, 4) == doctest::Approx(2.0).epsilon(1e-15));  // still group 1
    CHECK(select_beta(cfg, job, 6) == doctest::Approx(1.0).epsilon(1e-15));  // 4/4
    CHECK(select_beta(cfg, job, 7) == 1.0);                                  // exact
}

TEST_CASE("experiment report is identical across thread counts") {
    ExperimentConfig cfg = small_config();
    cfg.threads = 1;
    const ErrorReport serial = run_experiment(cfg);
    cfg.threads = 4;
    const ErrorReport parallel = run_experiment(cfg);
    REQUIRE(serial.records.size() == parallel.records.size());
    for (std::size_t i = 0; i < serial.records.size(); ++i) {
        CHECK(serial.records[i].trial == parallel.records[i].trial);
        CHECK(serial.records[i].m == parallel.records[i].m);
        CHECK(serial.records[i].beta == parallel.records[i].beta);
        CHECK(serial.records[i].rel_approx == parallel.records[i].rel_approx);
        CHECK(serial.records[i].rel_comp == parallel.records[i].rel_comp);
        CHECK(serial.records[i].rel_total == parallel.records[i].rel_total);
    }
    REQUIRE(serial.per_m.size() == parallel.per_m.size());
    for (std::size_t i = 0; i < serial.per_m.size(); ++i)
        CHECK(serial.per_m[i].mean_total == parallel.per_m[i].mean_total);
}

TEST_CASE("error decomposition obeys the triangle inequality on every record") {
    ExperimentConfig cfg = small_config();
    const ErrorReport report = run_experiment(cfg);
    CHECK(!report.records.empty());
    for (const auto& rec : report.records) {
        const double lhs = std::sqrt(rec.rel_total);
        const double rhs = std::sqrt(rec.rel_approx) + std::sqrt(rec.rel_comp);
        CHECK(lhs <= rhs + 1e-12);
    }
    // per-m means cover m = 2..9 for this scheme
    CHECK(report.per_m.front().m == 2);
    CHECK(report.per_m.back().m == 9);
    for (const auto& st : report.per_m) CHECK(st.count == cfg.trials);
}

TEST_CASE("decoder error over evaluation scale has an interior minimum") {
    // tiny points amplify coefficient-extraction roundoff, large points stop
    // attenuating the neglected tail; the sweet spot is in between
    auto mean_comp_at_first_layer = [](double eps) {
        ExperimentConfig cfg;
        cfg.scheme = CodingScheme{EpsApproxMatDot{}, 8, make_complex_circle_set(24, eps)};
        cfg.nx = 8;
        cfg.nz = 64;
        cfg.ny = 8;
        cfg.trials = 3;
        cfg.seed = 5;
        const ErrorReport report = run_experiment(cfg);
        for (const auto& st : report.per_m)
            if (st.m == 8) return st.mean_comp;
        return -1.0;
    };
    const double tiny = mean_comp_at_first_layer(3e-4);
    const double mid = mean_comp_at_first_layer(3e-2);
    const double large = mean_comp_at_first_layer(1.0);
    CHECK(mid < tiny);
    CHECK(mid < large);
}

TEST_CASE("config validation rejects bad dimensions") {
    ExperimentConfig cfg = small_config();
    cfg.nz = 30;  // not divisible by K=4
    CHECK_THROWS(cfg.validate());
    cfg = small_config();
    cfg.trials = 0;
    CHECK_THROWS(cfg.validate());
}
