#include "sac/beta.hpp"

#include <cmath>
#include <stdexcept>

namespace sac {

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (n > 64) throw std::invalid_argument("binomial: n > 64 unsupported");
    if (k > n - k) k = n - k;
    // Pascal column walk in exact integers; fits in 64 bits up to C(64,32).
    unsigned __int128 c = 1;
    for (int i = 1; i <= k; ++i)
        c = c * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);  // exact at each step
    return static_cast<std::uint64_t>(c);
}

double beta_group_optimal(const GroupMoments& g) {
    if (g.k < 2 || g.m_l < 1 || g.m_l > g.k)
        throw std::invalid_argument("beta_group_optimal: need K >= 2 and 1 <= m_l <= K");
    const double num = g.m1 + 2.0 * g.m2;
    const double den = g.m1 + 2.0 * (static_cast<double>(g.m_l - 1) / (g.k - 1)) * g.m2;
    if (den == 0.0) throw std::domain_error("beta_group_optimal: degenerate denominator");
    return num / den;
}

double gamma_single(int n_total, int m, int n_i) {
    if (m < 0 || m > n_total || n_i < 0 || n_i > n_total)
        throw std::invalid_argument("gamma_single: arguments out of range");
    const std::uint64_t total = binomial(n_total, m);
    const std::uint64_t miss = binomial(n_total - n_i, m);
    return static_cast<double>(total - miss) / static_cast<double>(total);
}

double gamma_pair(int n_total, int m, int n_i, int n_j) {
    if (m < 0 || m > n_total || n_i < 0 || n_j < 0 || n_i + n_j > n_total)
        throw std::invalid_argument("gamma_pair: arguments out of range");
    const std::uint64_t total = binomial(n_total, m);
    const std::int64_t hit = static_cast<std::int64_t>(total) -
                             static_cast<std::int64_t>(binomial(n_total - n_i, m)) -
                             static_cast<std::int64_t>(binomial(n_total - n_j, m)) +
                             static_cast<std::int64_t>(binomial(n_total - n_i - n_j, m));
    return static_cast<double>(hit) / static_cast<double>(total);
}

double beta_layer_optimal(const LayerMoments& lm) {
    const int k = static_cast<int>(lm.m_i.size());
    double num = 0.0, den = 0.0;
    for (int i = 0; i < k; ++i) {
        const double gi = gamma_single(lm.n_total, lm.m, lm.n_sizes[i]);
        num += lm.m_i[i] * gi;
        den += lm.m_i[i] * gi;
    }
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            const double gi = gamma_single(lm.n_total, lm.m, lm.n_sizes[i]);
            const double gj = gamma_single(lm.n_total, lm.m, lm.n_sizes[j]);
            const double gij = gamma_pair(lm.n_total, lm.m, lm.n_sizes[i], lm.n_sizes[j]);
            num += lm.m_ij[i][j] * (gi + gj);
            den += 2.0 * lm.m_ij[i][j] * gij;
        }
    }
    if (den == 0.0) throw std::domain_error("beta_layer_optimal: degenerate denominator");
    return num / den;
}

double beta_case_correlated(int n_total, int k, int m) {
    if (k < 1 || n_total % k != 0)
        throw std::invalid_argument("beta_case_correlated: K must divide N");
    if (m < 0 || m > n_total)
        throw std::invalid_argument("beta_case_correlated: m out of range");
    const int nk = n_total / k;
    // (gamma_i + gamma_j) / (2 gamma_ij) for equal clusters of size N/K.
    const double num = static_cast<double>(binomial(n_total, m)) -
                       static_cast<double>(binomial(n_total - nk, m));
    const double den = static_cast<double>(binomial(n_total, m)) -
                       2.0 * static_cast<double>(binomial(n_total - nk, m)) +
                       static_cast<double>(binomial(n_total - 2 * nk, m));
    if (den == 0.0) throw std::domain_error("beta_case_correlated: degenerate denominator");
    return num / den;
}

GroupMoments moments_from_job(const PartitionedJob& job, int m_l) {
    GroupMoments g;
    g.k = job.k_parts;
    g.m_l = m_l;
    std::vector<Matrix> products;
    products.reserve(job.k_parts);
    for (int i = 0; i < job.k_parts; ++i)
        products.push_back(job.a_blocks[i] * job.b_blocks[i]);
    for (int i = 0; i < job.k_parts; ++i) {
        g.m1 += frobenius_norm_sq(products[i]);
        for (int j = i + 1; j < job.k_parts; ++j)
            g.m2 += trace_product(products[i], products[j]);
    }
    return g;
}

LayerMoments layer_moments(const CodingScheme& scheme, const PartitionedJob& job, int m) {
    const auto* ls = std::get_if<LayerSac>(&scheme.variant);
    if (!ls) throw std::invalid_argument("layer_moments: not a layer-wise scheme");
    const int k = scheme.k_total;
    const std::vector<Matrix> products = anchor_products(scheme, job);
    LayerMoments lm;
    lm.n_sizes = ls->cluster_sizes;
    lm.n_total = scheme.eval_set.size();
    lm.m = m;
    lm.m_i.resize(k);
    lm.m_ij.assign(k, std::vector<double>(k, 0.0));
    for (int i = 0; i < k; ++i) {
        lm.m_i[i] = ls->weights[i] * ls->weights[i] * frobenius_norm_sq(products[i]);
        for (int j = i + 1; j < k; ++j)
            lm.m_ij[i][j] = ls->weights[i] * ls->weights[j] * trace_product(products[i], products[j]);
    }
    return lm;
}

}  // namespace sac
