#pragma once

#include <cstdint>
#include <vector>

#include "sac/coding.hpp"
#include "sac/matrix.hpp"

namespace sac {

// Exact integer binomial coefficient, with C(a,b) = 0 for b > a or b < 0.
// Supports n up to 64 without overflow.
std::uint64_t binomial(int n, int k);

// Moments of the block outer products for group-wise scaling:
// m1 = sum_i ||A_i B_i||_F^2, m2 = sum_{i<j} Tr((A_i B_i)^T (A_j B_j)).
struct GroupMoments {
    double m1 = 0.0;
    double m2 = 0.0;
    int k = 0;    // K
    int m_l = 0;  // completed-sum size
};

// Optimal scaling for a group-wise partial sum of m_l blocks:
// (M1 + 2 M2) / (M1 + 2 ((m_l-1)/(K-1)) M2).
double beta_group_optimal(const GroupMoments& g);

// Probability that cluster i has at least one completion among the m fastest
// of N workers.
double gamma_single(int n_total, int m, int n_i);
// Probability that clusters i and j (disjoint) both have a completion.
double gamma_pair(int n_total, int m, int n_i, int n_j);

// Moments of the anchor products for layer-wise scaling.
struct LayerMoments {
    std::vector<double> m_i;                 // alpha_i^2 ||S_A(y_i) S_B(y_i)||_F^2
    std::vector<std::vector<double>> m_ij;   // upper triangle, m_ij[i][j] for i < j
    std::vector<int> n_sizes;                // cluster sizes n_1..n_K
    int n_total = 0;                         // N
    int m = 0;                               // completed count
};

// Optimal scaling for the cluster-averaged layer-wise estimate:
// (sum M_i g_i + sum_{i<j} M_ij (g_i + g_j)) / (sum M_i g_i + 2 sum_{i<j} M_ij g_ij).
double beta_layer_optimal(const LayerMoments& lm);

// Closed-form scaling for equal clusters dominated by cross terms:
// (gamma_i + gamma_j) / (2 gamma_ij)
//   = (C(N,m) - C(N-N/K,m)) / (C(N,m) - 2 C(N-N/K,m) + C(N-2N/K,m)).
double beta_case_correlated(int n_total, int k, int m);

// Oracle moments computed from the true block products.
GroupMoments moments_from_job(const PartitionedJob& job, int m_l);
LayerMoments layer_moments(const CodingScheme& scheme, const PartitionedJob& job, int m);

}  // namespace sac
