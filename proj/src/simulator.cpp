#include "sac/simulator.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

#include "sac/beta.hpp"
#include "sac/decoders.hpp"

namespace sac {

void ExperimentConfig::validate() const {
    scheme.validate();
    if (nx == 0 || nz == 0 || ny == 0)
        throw std::invalid_argument("ExperimentConfig: dimensions must be positive");
    if (nz % static_cast<std::size_t>(scheme.k_total) != 0)
        throw std::invalid_argument("ExperimentConfig: K must divide the inner dimension");
    if (trials < 1) throw std::invalid_argument("ExperimentConfig: trials must be >= 1");
    if (threads < 1) throw std::invalid_argument("ExperimentConfig: threads must be >= 1");
}

std::pair<Matrix, Matrix> generate_inputs(const ExperimentConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    const std::size_t band = cfg.nz / static_cast<std::size_t>(cfg.scheme.k_total);
    Matrix a(cfg.nx, cfg.nz, Field::Real);
    Matrix b(cfg.nz, cfg.ny, Field::Real);
    if (cfg.input_model == InputModel::IidGaussian) {
        for (std::size_t r = 0; r < cfg.nx; ++r)
            for (std::size_t c = 0; c < cfg.nz; ++c) a(r, c) = rng.normal();
        for (std::size_t r = 0; r < cfg.nz; ++r)
            for (std::size_t c = 0; c < cfg.ny; ++c) b(r, c) = rng.normal();
        return {a, b};
    }
    // Correlated model: shared latent block plus a per-block innovation.
    Matrix a0(cfg.nx, band, Field::Real);
    Matrix b0(band, cfg.ny, Field::Real);
    for (std::size_t r = 0; r < cfg.nx; ++r)
        for (std::size_t c = 0; c < band; ++c) a0(r, c) = rng.normal();
    for (std::size_t r = 0; r < band; ++r)
        for (std::size_t c = 0; c < cfg.ny; ++c) b0(r, c) = rng.normal();
    for (int blk = 0; blk < cfg.scheme.k_total; ++blk) {
        for (std::size_t r = 0; r < cfg.nx; ++r)
            for (std::size_t c = 0; c < band; ++c)
                a(r, blk * band + c) = cfg.lambda * a0(r, c) + rng.normal();
        for (std::size_t r = 0; r < band; ++r)
            for (std::size_t c = 0; c < cfg.ny; ++c)
                b(blk * band + r, c) = cfg.lambda * b0(r, c) + rng.normal();
    }
    return {a, b};
}

namespace {

bool is_group_wise(const CodingScheme& s) {
    return std::holds_alternative<GroupSac>(s.variant) ||
           std::holds_alternative<EpsApproxMatDot>(s.variant);
}

int first_decodable_m(const CodingScheme& s) {
    const auto layers = layer_structure(s);
    if (!layers.empty()) return layers.front().threshold;
    return recovery_threshold(s);
}

// Clusters with at least one completion among the m fastest workers.
int clusters_hit(const CodingScheme& s, const std::vector<WorkerResult>& ordered, int m) {
    const auto& cluster_of = *s.eval_set.cluster_of;
    std::vector<char> hit(s.k_total, 0);
    for (int i = 0; i < m; ++i) hit[cluster_of[ordered[i].worker_id - 1]] = 1;
    int h = 0;
    for (char c : hit) h += c;
    return h;
}

}  // namespace

double select_beta(const ExperimentConfig& cfg, const PartitionedJob& job, int m) {
    const CodingScheme& s = cfg.scheme;
    if (m >= recovery_threshold(s)) return 1.0;
    const int k = s.k_total;
    switch (cfg.beta_policy) {
        case BetaPolicy::One:
            return 1.0;
        case BetaPolicy::Unbiased: {
            if (is_group_wise(s))
                return static_cast<double>(k) / completed_blocks(s, m);
            return 1.0;  // layer-wise handled per trial (depends on clusters hit)
        }
        case BetaPolicy::TheoremOracle: {
            if (is_group_wise(s)) {
                GroupMoments g = moments_from_job(job, completed_blocks(s, m));
                return beta_group_optimal(g);
            }
            return beta_layer_optimal(layer_moments(s, job, m));
        }
        case BetaPolicy::CaseCorrelated: {
            if (is_group_wise(s)) {
                const int m_l = completed_blocks(s, m);
                return m_l > 1 ? static_cast<double>(k - 1) / (m_l - 1) : static_cast<double>(k);
            }
            return beta_case_correlated(s.eval_set.size(), k, m);
        }
    }
    return 1.0;
}

std::vector<LayeredEstimate> simulate_trial(const ExperimentConfig& cfg, const Matrix& a,
                                            const Matrix& b, std::uint64_t trial_seed) {
    const CodingScheme& s = cfg.scheme;
    const int n = s.eval_set.size();
    const int r_threshold = recovery_threshold(s);

    Rng rng(trial_seed);
    PartitionedJob job = partition(a, b, s.k_total);
    job.permutation = rng.permutation(s.k_total);

    const auto tasks = encode(s, job);
    std::vector<WorkerResult> all(n);
    for (int i = 0; i < n; ++i) all[i] = worker_compute(tasks[i]);

    // Uniform completion order, independent of the evaluation points.
    const std::vector<int> completion = rng.permutation(n);
    std::vector<WorkerResult> ordered(n);
    for (int i = 0; i < n; ++i) ordered[i] = all[completion[i]];

    // Oracle ingredients.
    const std::vector<int> order = encoded_order(s, job);
    std::vector<Matrix> block_products;
    if (is_group_wise(s)) {
        block_products.reserve(s.k_total);
        for (int i = 0; i < s.k_total; ++i)
            block_products.push_back(job.a_blocks[order[i]] * job.b_blocks[order[i]]);
    }
    std::vector<Matrix> anchor_prods;
    const auto* ls = std::get_if<LayerSac>(&s.variant);
    if (ls) anchor_prods = anchor_products(s, job);

    Matrix c_exact = (a * b).real_part();

    std::vector<LayeredEstimate> estimates;
    for (int m = first_decodable_m(s); m <= n; ++m) {
        LayeredEstimate est;
        est.m = m;
        const std::vector<WorkerResult> avail(ordered.begin(), ordered.begin() + m);
        if (m >= r_threshold) {
            est.beta_used = 1.0;
            est.c_tilde = exact_decode(s, avail).estimate;
            est.c_analytic = c_exact;
        } else if (is_group_wise(s)) {
            est.beta_used = select_beta(cfg, job, m);
            est.c_tilde = approx_decode_group(s, avail, est.beta_used).estimate;
            const int m_l = completed_blocks(s, m);
            Matrix cm = block_products[0];
            for (int i = 1; i < m_l; ++i) cm = cm + block_products[i];
            est.c_analytic = cm.scaled(est.beta_used).real_part();
        } else {
            // layer-wise
            est.beta_used = select_beta(cfg, job, m);
            if (cfg.beta_policy == BetaPolicy::Unbiased)
                est.beta_used = static_cast<double>(s.k_total) / clusters_hit(s, ordered, m);
            est.c_tilde = approx_decode_layer(s, avail, est.beta_used).estimate;
            const auto& cluster_of = *s.eval_set.cluster_of;
            std::vector<char> hit(s.k_total, 0);
            for (int i = 0; i < m; ++i) hit[cluster_of[avail[i].worker_id - 1]] = 1;
            Matrix cm(cfg.nx, cfg.ny, Field::Complex);
            for (int k = 0; k < s.k_total; ++k)
                if (hit[k]) cm = cm + anchor_prods[k].scaled(ls->weights[k]);
            est.c_analytic = cm.scaled(est.beta_used).real_part();
        }
        estimates.push_back(std::move(est));
    }
    return estimates;
}

ErrorReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto [a, b] = generate_inputs(cfg);
    const Matrix c = (a * b).real_part();
    const double c_norm = frobenius_norm_sq(c);

    std::vector<std::vector<LayeredEstimate>> per_trial(cfg.trials);
    auto run_range = [&](int lo, int hi) {
        for (int t = lo; t < hi; ++t)
            per_trial[t] = simulate_trial(cfg, a, b, cfg.seed + 1 + static_cast<std::uint64_t>(t));
    };
    if (cfg.threads <= 1 || cfg.trials == 1) {
        run_range(0, cfg.trials);
    } else {
        const int nthreads = std::min(cfg.threads, cfg.trials);
        std::vector<std::future<void>> futs;
        for (int w = 0; w < nthreads; ++w) {
            const int lo = cfg.trials * w / nthreads;
            const int hi = cfg.trials * (w + 1) / nthreads;
            futs.push_back(std::async(std::launch::async, run_range, lo, hi));
        }
        for (auto& f : futs) f.get();
    }

    ErrorReport report;
    for (int t = 0; t < cfg.trials; ++t) {
        for (const auto& est : per_trial[t]) {
            ErrorRecord rec;
            rec.trial = t + 1;
            rec.m = est.m;
            rec.beta = est.beta_used;
            rec.rel_approx = frobenius_norm_sq(c - est.c_analytic) / c_norm;
            rec.rel_comp = frobenius_norm_sq(est.c_analytic - est.c_tilde) / c_norm;
            rec.rel_total = frobenius_norm_sq(c - est.c_tilde) / c_norm;
            report.records.push_back(rec);
        }
    }

    // Per-m means and standard errors, pairwise-stable accumulation in fixed
    // trial order.
    const int n = cfg.scheme.eval_set.size();
    for (int m = 1; m <= n; ++m) {
        PerMStats st;
        st.m = m;
        double sa = 0, sc = 0, stt = 0, sb = 0;
        double qa = 0, qc = 0, qt = 0;
        for (const auto& rec : report.records) {
            if (rec.m != m) continue;
            ++st.count;
            sa += rec.rel_approx;
            sc += rec.rel_comp;
            stt += rec.rel_total;
            sb += rec.beta;
        }
        if (st.count == 0) continue;
        st.mean_approx = sa / st.count;
        st.mean_comp = sc / st.count;
        st.mean_total = stt / st.count;
        st.mean_beta = sb / st.count;
        for (const auto& rec : report.records) {
            if (rec.m != m) continue;
            qa += (rec.rel_approx - st.mean_approx) * (rec.rel_approx - st.mean_approx);
            qc += (rec.rel_comp - st.mean_comp) * (rec.rel_comp - st.mean_comp);
            qt += (rec.rel_total - st.mean_total) * (rec.rel_total - st.mean_total);
        }
        if (st.count > 1) {
            const double denom = static_cast<double>(st.count) * (st.count - 1);
            st.se_approx = std::sqrt(qa / denom);
            st.se_comp = std::sqrt(qc / denom);
            st.se_total = std::sqrt(qt / denom);
        }
        report.per_m.push_back(st);
    }
    return report;
}

}  // namespace sac
