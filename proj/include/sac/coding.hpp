#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sac/matrix.hpp"
#include "sac/poly_bases.hpp"

namespace sac {

// Scheme variants. SAC variants (and eps-approximate MatDot) encode the
// permuted blocks; the permutation use can be switched off per scheme.
struct MatDot {};
struct EpsApproxMatDot {
    bool use_permutation = true;
};
struct GroupSac {
    std::vector<int> group_sizes;  // K_1..K_D, sum = K, D >= 2
    bool use_permutation = true;
};
struct OrthoMatDot {};
struct LagrangeCode {
    std::vector<double> anchors;  // y_1..y_K
};
struct LayerSac {
    BasisKind basis;
    std::vector<double> anchors;   // y_1..y_K
    std::vector<double> weights;   // alpha_1..alpha_K
    std::vector<int> cluster_sizes;  // n_1..n_K, sum = N
};

using SchemeVariant =
    std::variant<MatDot, EpsApproxMatDot, GroupSac, OrthoMatDot, LagrangeCode, LayerSac>;

struct CodingScheme {
    SchemeVariant variant;
    int k_total = 0;
    EvaluationSet eval_set;

    void validate() const;  // throws on parameter inconsistency
};

// Convenience constructors for the two layer-wise flavors.
// Chebyshev flavor: basis O_0..O_{K-1}, anchors = roots of O_K, alpha = 2/K.
LayerSac make_layer_sac_chebyshev(int k, const std::vector<int>& cluster_sizes);
// Lagrange flavor: basis L_k on the given anchors, alpha = 1.
LayerSac make_layer_sac_lagrange(const std::vector<double>& anchors,
                                 const std::vector<int>& cluster_sizes);

struct WorkerTask {
    int worker_id = 0;  // 1..N
    cdouble point;
    Matrix a_encoded;
    Matrix b_encoded;
};

struct WorkerResult {
    int worker_id = 0;
    cdouble point;
    Matrix product;
};

// Evaluate both encoding polynomials at every evaluation point; one task per
// worker.
std::vector<WorkerTask> encode(const CodingScheme& scheme, const PartitionedJob& job);

WorkerResult worker_compute(const WorkerTask& task);

// Completed workers needed for exact recovery: 2K-1 for all schemes except
// multi-group, where it is (sum_d 2^{D-d} K_d) + K_D - 1.
int recovery_threshold(const CodingScheme& scheme);

// Monomial exponent whose coefficient carries the group-d partial sum:
// idx(d) = (sum_{i<=d} 2^{d-i} K_i) - 1.
int group_coefficient_exponent(const GroupSac& g, int d);

// Offsets g(d) of the grouped powers; g(1)=0, g(2)=K_1.
int group_power_offset(const GroupSac& g, int d);

struct ResolutionLayer {
    int layer_index = 0;       // l, 1-based
    int threshold = 0;         // R_l
    std::optional<int> group;  // 1-based d when this is the first layer of a group
};

// Approximate-threshold table. Empty for schemes with exact recovery only.
std::vector<ResolutionLayer> layer_structure(const CodingScheme& scheme);

std::string scheme_name(const CodingScheme& scheme);

bool is_point_based(const CodingScheme& scheme);

// Block order actually encoded: the job permutation for SAC variants that
// shuffle, identity otherwise.
std::vector<int> encoded_order(const CodingScheme& scheme, const PartitionedJob& job);

// Post-decoding anchors y_k and combination weights alpha_k of a point-based
// scheme. OrthoMatDot: roots of O_K with alpha = 2/K; Lagrange: its anchors
// with alpha = 1; LayerSac: as configured.
std::vector<double> scheme_anchors(const CodingScheme& scheme);
std::vector<double> scheme_weights(const CodingScheme& scheme);

// S_A(y_k) * S_B(y_k) at each anchor of a point-based scheme, using the same
// block order the encoder uses.
std::vector<Matrix> anchor_products(const CodingScheme& scheme, const PartitionedJob& job);

}  // namespace sac
