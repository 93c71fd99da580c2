#include "sac/coding.hpp"

#include <cmath>
#include <stdexcept>

namespace sac {

namespace {

int group_count(const GroupSac& g) { return static_cast<int>(g.group_sizes.size()); }

// First-layer approximate threshold of group d: sum_{i<=d} 2^{d-i} K_i.
int group_first_threshold(const GroupSac& g, int d) {
    int t = 0;
    for (int i = 1; i <= d; ++i) t += (1 << (d - i)) * g.group_sizes[i - 1];
    return t;
}

// Evaluate sum_k blocks[order[k]] * T_k(point) for the given exponent/basis map.
Matrix poly_eval_blocks(const std::vector<Matrix>& blocks, const std::vector<int>& order,
                        const std::vector<cdouble>& weights) {
    Matrix acc = blocks[order[0]].scaled(weights[0]);
    for (std::size_t k = 1; k < order.size(); ++k)
        acc = acc + blocks[order[k]].scaled(weights[k]);
    return acc;
}

cdouble ipow(cdouble x, int e) {
    cdouble v = 1.0;
    for (int i = 0; i < e; ++i) v *= x;
    return v;
}

}  // namespace

int group_power_offset(const GroupSac& g, int d) {
    if (d < 1 || d > group_count(g))
        throw std::invalid_argument("group_power_offset: group index out of range");
    if (d == 1) return 0;
    if (d == 2) return g.group_sizes[0];
    int off = g.group_sizes[0];
    for (int j = 3; j <= d; ++j) {
        int inner = 0;
        for (int i = 1; i <= j - 2; ++i) inner += (1 << (j - i - 2)) * g.group_sizes[i - 1];
        off += inner + g.group_sizes[j - 2];
    }
    return off;
}

int group_coefficient_exponent(const GroupSac& g, int d) {
    return group_first_threshold(g, d) - 1;
}

int recovery_threshold(const CodingScheme& scheme) {
    if (const auto* g = std::get_if<GroupSac>(&scheme.variant)) {
        const int d_last = group_count(*g);
        return group_first_threshold(*g, d_last) + g->group_sizes[d_last - 1] - 1;
    }
    return 2 * scheme.k_total - 1;
}

void CodingScheme::validate() const {
    if (k_total < 1) throw std::invalid_argument("CodingScheme: K must be positive");
    eval_set.validate();
    if (const auto* g = std::get_if<GroupSac>(&variant)) {
        if (g->group_sizes.size() < 2)
            throw std::invalid_argument("GroupSac: need at least two groups");
        int sum = 0;
        for (int kd : g->group_sizes) {
            if (kd < 1) throw std::invalid_argument("GroupSac: group sizes must be positive");
            sum += kd;
        }
        if (sum != k_total)
            throw std::invalid_argument("GroupSac: group sizes must sum to K");
    } else if (const auto* l = std::get_if<LagrangeCode>(&variant)) {
        if (static_cast<int>(l->anchors.size()) != k_total)
            throw std::invalid_argument("LagrangeCode: need K anchors");
    } else if (const auto* ls = std::get_if<LayerSac>(&variant)) {
        if (static_cast<int>(ls->anchors.size()) != k_total ||
            static_cast<int>(ls->weights.size()) != k_total ||
            static_cast<int>(ls->cluster_sizes.size()) != k_total)
            throw std::invalid_argument("LayerSac: anchors/weights/cluster sizes must have K entries");
        int n = 0;
        for (int nk : ls->cluster_sizes) n += nk;
        if (n != eval_set.size())
            throw std::invalid_argument("LayerSac: cluster sizes must sum to N");
        if (!eval_set.cluster_of)
            throw std::invalid_argument("LayerSac: evaluation set must carry a cluster map");
    }
    if (eval_set.size() < recovery_threshold(*this))
        throw std::invalid_argument("CodingScheme: N must be at least the recovery threshold");
}

LayerSac make_layer_sac_chebyshev(int k, const std::vector<int>& cluster_sizes) {
    LayerSac ls;
    ls.basis = ChebyshevOrthonormal{};
    ls.anchors = chebyshev_roots(k);
    ls.weights.assign(k, 2.0 / k);
    ls.cluster_sizes = cluster_sizes;
    return ls;
}

LayerSac make_layer_sac_lagrange(const std::vector<double>& anchors,
                                 const std::vector<int>& cluster_sizes) {
    LayerSac ls;
    ls.basis = LagrangeBasis{anchors};
    ls.anchors = anchors;
    ls.weights.assign(anchors.size(), 1.0);
    ls.cluster_sizes = cluster_sizes;
    return ls;
}

std::vector<WorkerTask> encode(const CodingScheme& scheme, const PartitionedJob& job) {
    scheme.validate();
    if (job.k_parts != scheme.k_total)
        throw std::invalid_argument("encode: job partition count does not match scheme K");
    const int k = scheme.k_total;
    const int n = scheme.eval_set.size();

    // Per-block A/B exponents (monomial schemes) or basis indices
    // (point-based), applied to the encoded block order.
    const std::vector<int> order = encoded_order(scheme, job);

    std::vector<int> a_exp(k), b_exp(k);
    const BasisKind* basis = nullptr;
    BasisKind basis_storage;

    if (std::holds_alternative<MatDot>(scheme.variant) ||
        std::holds_alternative<EpsApproxMatDot>(scheme.variant)) {
        for (int i = 0; i < k; ++i) {
            a_exp[i] = i;          // A_{i_k} x^{k-1}
            b_exp[i] = k - 1 - i;  // B_{i_k} x^{K-k}
        }
    } else if (const auto* g = std::get_if<GroupSac>(&scheme.variant)) {
        int start = 0;
        for (int d = 1; d <= group_count(*g); ++d) {
            const int kd = g->group_sizes[d - 1];
            const int off = group_power_offset(*g, d);
            for (int local = 1; local <= kd; ++local) {
                a_exp[start + local - 1] = off + local - 1;
                b_exp[start + local - 1] = off + kd - local;
            }
            start += kd;
        }
    } else if (std::holds_alternative<OrthoMatDot>(scheme.variant)) {
        basis_storage = ChebyshevOrthonormal{};
        basis = &basis_storage;
    } else if (const auto* l = std::get_if<LagrangeCode>(&scheme.variant)) {
        basis_storage = LagrangeBasis{l->anchors};
        basis = &basis_storage;
    } else {
        basis = &std::get<LayerSac>(scheme.variant).basis;
    }

    std::vector<WorkerTask> tasks;
    tasks.reserve(n);
    for (int w = 0; w < n; ++w) {
        const cdouble x = scheme.eval_set.points[w];
        std::vector<cdouble> wa(k), wb(k);
        for (int i = 0; i < k; ++i) {
            if (basis) {
                wa[i] = basis_eval(*basis, i, x);
                wb[i] = wa[i];
            } else {
                wa[i] = ipow(x, a_exp[i]);
                wb[i] = ipow(x, b_exp[i]);
            }
        }
        WorkerTask task;
        task.worker_id = w + 1;
        task.point = x;
        task.a_encoded = poly_eval_blocks(job.a_blocks, order, wa);
        task.b_encoded = poly_eval_blocks(job.b_blocks, order, wb);
        tasks.push_back(std::move(task));
    }
    return tasks;
}

WorkerResult worker_compute(const WorkerTask& task) {
    WorkerResult res;
    res.worker_id = task.worker_id;
    res.point = task.point;
    res.product = task.a_encoded * task.b_encoded;
    return res;
}

std::vector<ResolutionLayer> layer_structure(const CodingScheme& scheme) {
    std::vector<ResolutionLayer> layers;
    if (std::holds_alternative<EpsApproxMatDot>(scheme.variant)) {
        layers.push_back({1, scheme.k_total, std::nullopt});
    } else if (const auto* g = std::get_if<GroupSac>(&scheme.variant)) {
        const int r1 = g->group_sizes[0];
        const int r = recovery_threshold(scheme);
        std::vector<int> firsts;
        for (int d = 1; d <= group_count(*g); ++d)
            firsts.push_back(group_first_threshold(*g, d));
        for (int t = r1; t <= r - 1; ++t) {
            ResolutionLayer layer{t - r1 + 1, t, std::nullopt};
            for (int d = 1; d <= group_count(*g); ++d)
                if (firsts[d - 1] == t) layer.group = d;
            layers.push_back(layer);
        }
    } else if (std::holds_alternative<LayerSac>(scheme.variant)) {
        for (int l = 1; l <= 2 * scheme.k_total - 2; ++l)
            layers.push_back({l, l, std::nullopt});
    }
    return layers;
}

std::vector<int> encoded_order(const CodingScheme& scheme, const PartitionedJob& job) {
    std::vector<int> order(scheme.k_total);
    for (int i = 0; i < scheme.k_total; ++i) order[i] = i;
    if (const auto* e = std::get_if<EpsApproxMatDot>(&scheme.variant)) {
        if (e->use_permutation) order = job.permutation;
    } else if (const auto* g = std::get_if<GroupSac>(&scheme.variant)) {
        if (g->use_permutation) order = job.permutation;
    } else if (std::holds_alternative<LayerSac>(scheme.variant)) {
        order = job.permutation;
    }
    return order;
}

bool is_point_based(const CodingScheme& scheme) {
    return std::holds_alternative<OrthoMatDot>(scheme.variant) ||
           std::holds_alternative<LagrangeCode>(scheme.variant) ||
           std::holds_alternative<LayerSac>(scheme.variant);
}

std::vector<double> scheme_anchors(const CodingScheme& scheme) {
    if (std::holds_alternative<OrthoMatDot>(scheme.variant))
        return chebyshev_roots(scheme.k_total);
    if (const auto* l = std::get_if<LagrangeCode>(&scheme.variant)) return l->anchors;
    if (const auto* ls = std::get_if<LayerSac>(&scheme.variant)) return ls->anchors;
    throw std::invalid_argument("scheme_anchors: scheme is not point-based");
}

std::vector<double> scheme_weights(const CodingScheme& scheme) {
    if (std::holds_alternative<OrthoMatDot>(scheme.variant))
        return std::vector<double>(scheme.k_total, 2.0 / scheme.k_total);
    if (const auto* l = std::get_if<LagrangeCode>(&scheme.variant))
        return std::vector<double>(l->anchors.size(), 1.0);
    if (const auto* ls = std::get_if<LayerSac>(&scheme.variant)) return ls->weights;
    throw std::invalid_argument("scheme_weights: scheme is not point-based");
}

std::vector<Matrix> anchor_products(const CodingScheme& scheme, const PartitionedJob& job) {
    if (!is_point_based(scheme))
        throw std::invalid_argument("anchor_products: scheme is not point-based");
    const int k = scheme.k_total;
    const std::vector<int> order = encoded_order(scheme, job);
    BasisKind basis = ChebyshevOrthonormal{};
    if (const auto* l = std::get_if<LagrangeCode>(&scheme.variant)) {
        basis = LagrangeBasis{l->anchors};
    } else if (const auto* ls = std::get_if<LayerSac>(&scheme.variant)) {
        basis = ls->basis;
    }
    const std::vector<double> anchors = scheme_anchors(scheme);
    std::vector<Matrix> products;
    products.reserve(anchors.size());
    for (double y : anchors) {
        std::vector<cdouble> w(k);
        for (int i = 0; i < k; ++i) w[i] = basis_eval(basis, i, cdouble(y, 0.0));
        const Matrix sa = poly_eval_blocks(job.a_blocks, order, w);
        const Matrix sb = poly_eval_blocks(job.b_blocks, order, w);
        products.push_back(sa * sb);
    }
    return products;
}

std::string scheme_name(const CodingScheme& scheme) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, MatDot>) return "matdot";
            else if constexpr (std::is_same_v<T, EpsApproxMatDot>) return "eps_amd";
            else if constexpr (std::is_same_v<T, GroupSac>) return "group_sac";
            else if constexpr (std::is_same_v<T, OrthoMatDot>) return "orthomatdot";
            else if constexpr (std::is_same_v<T, LagrangeCode>) return "lagrange";
            else {
                if (std::holds_alternative<ChebyshevOrthonormal>(v.basis))
                    return "layer_sac_chebyshev";
                return "layer_sac_lagrange";
            }
        },
        scheme.variant);
}

}  // namespace sac
