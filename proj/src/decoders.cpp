#include "sac/decoders.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sac {

namespace {

// Dense complex LU with partial pivoting. Row-major, in place.
struct Lu {
    int n;
    std::vector<cdouble> a;
    std::vector<int> piv;

    explicit Lu(std::vector<cdouble> m, int dim) : n(dim), a(std::move(m)), piv(dim) {
        for (int i = 0; i < n; ++i) piv[i] = i;
        for (int col = 0; col < n; ++col) {
            int best = col;
            double best_mag = std::abs(a[col * n + col]);
            for (int r = col + 1; r < n; ++r) {
                const double mag = std::abs(a[r * n + col]);
                if (mag > best_mag) {
                    best = r;
                    best_mag = mag;
                }
            }
            if (best_mag < 1e-300)
                throw std::runtime_error("solve_interpolation: singular system");
            if (best != col) {
                for (int c = 0; c < n; ++c) std::swap(a[col * n + c], a[best * n + c]);
                std::swap(piv[col], piv[best]);
            }
            const cdouble pivot = a[col * n + col];
            for (int r = col + 1; r < n; ++r) {
                const cdouble factor = a[r * n + col] / pivot;
                a[r * n + col] = factor;
                for (int c = col + 1; c < n; ++c) a[r * n + c] -= factor * a[col * n + c];
            }
        }
    }

    void solve(const std::vector<cdouble>& rhs, std::vector<cdouble>& x) const {
        for (int i = 0; i < n; ++i) x[i] = rhs[piv[i]];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) x[i] -= a[i * n + j] * x[j];
        for (int i = n - 1; i >= 0; --i) {
            for (int j = i + 1; j < n; ++j) x[i] -= a[i * n + j] * x[j];
            x[i] /= a[i * n + i];
        }
    }
};

double one_norm(const std::vector<cdouble>& m, int n) {
    double best = 0.0;
    for (int c = 0; c < n; ++c) {
        double s = 0.0;
        for (int r = 0; r < n; ++r) s += std::abs(m[r * n + c]);
        best = std::max(best, s);
    }
    return best;
}

std::vector<WorkerResult> first_results(const std::vector<WorkerResult>& results, int m) {
    if (static_cast<int>(results.size()) < m)
        throw std::invalid_argument("decode: insufficient completed results");
    return {results.begin(), results.begin() + m};
}

DecodedPolynomial interpolate_results(const std::vector<WorkerResult>& results,
                                      const BasisKind& basis) {
    InterpolationProblem p;
    p.basis = basis;
    for (const auto& r : results) {
        p.points.push_back(r.point);
        p.values.push_back(r.product);
    }
    return solve_interpolation(p);
}

}  // namespace

Matrix DecodedPolynomial::evaluate(cdouble x) const {
    Matrix acc = coeffs[0].scaled(basis_eval(basis, 0, x));
    for (std::size_t k = 1; k < coeffs.size(); ++k)
        acc = acc + coeffs[k].scaled(basis_eval(basis, static_cast<int>(k), x));
    return acc;
}

DecodedPolynomial solve_interpolation(const InterpolationProblem& p) {
    const int m = static_cast<int>(p.points.size());
    if (m < 1 || p.values.size() != p.points.size())
        throw std::invalid_argument("solve_interpolation: need matching points and values");
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (p.points[i] == p.points[j])
                throw std::invalid_argument("solve_interpolation: points must be distinct");

    // System matrix: row j samples all basis functions at x_j.
    std::vector<cdouble> sys(static_cast<std::size_t>(m) * m);
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) sys[j * m + k] = basis_eval(p.basis, k, p.points[j]);

    const Lu lu(sys, m);

    // 1-norm condition estimate via the explicit inverse; systems here stay
    // small (m <= a few dozen).
    double inv_norm;
    {
        std::vector<cdouble> inv(static_cast<std::size_t>(m) * m);
        std::vector<cdouble> e(m), col(m);
        for (int c = 0; c < m; ++c) {
            std::fill(e.begin(), e.end(), cdouble(0.0));
            e[c] = 1.0;
            lu.solve(e, col);
            for (int r = 0; r < m; ++r) inv[r * m + c] = col[r];
        }
        inv_norm = one_norm(inv, m);
    }

    const std::size_t rows = p.values[0].rows();
    const std::size_t cols = p.values[0].cols();
    DecodedPolynomial out;
    out.basis = p.basis;
    out.condition = one_norm(sys, m) * inv_norm;
    out.coeffs.assign(m, Matrix(rows, cols, Field::Complex));
    std::vector<cdouble> rhs(m), sol(m);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            for (int j = 0; j < m; ++j) rhs[j] = p.values[j](r, c);
            lu.solve(rhs, sol);
            for (int k = 0; k < m; ++k) out.coeffs[k](r, c) = sol[k];
        }
    }
    return out;
}

BasisKind decode_basis(const CodingScheme& scheme) {
    if (std::holds_alternative<OrthoMatDot>(scheme.variant)) return ChebyshevOrthonormal{};
    if (const auto* ls = std::get_if<LayerSac>(&scheme.variant)) {
        if (std::holds_alternative<ChebyshevOrthonormal>(ls->basis)) return ChebyshevOrthonormal{};
        // Lagrange-flavored layer-wise SAC: interpolate in a Lagrange basis on
        // the anchors plus consecutive midpoints (2K-1 nodes spanning the same
        // range as the evaluation clusters), which keeps the system entries
        // O(1) where a monomial basis at anchor magnitudes would blow up.
        std::vector<double> nodes = ls->anchors;
        std::vector<double> sorted = ls->anchors;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
            nodes.push_back(0.5 * (sorted[i] + sorted[i + 1]));
        return LagrangeBasis{nodes};
    }
    return Monomial{};
}

int decodable_groups(const CodingScheme& scheme, int m) {
    if (std::holds_alternative<EpsApproxMatDot>(scheme.variant)) {
        if (m < scheme.k_total)
            throw std::invalid_argument("decodable_groups: below first-layer threshold");
        return 1;
    }
    const auto* g = std::get_if<GroupSac>(&scheme.variant);
    if (!g) throw std::invalid_argument("decodable_groups: not a group-wise scheme");
    int d_star = 0;
    for (int d = 1; d <= static_cast<int>(g->group_sizes.size()); ++d)
        if (group_coefficient_exponent(*g, d) + 1 <= m) d_star = d;
    if (d_star == 0)
        throw std::invalid_argument("decodable_groups: below first-layer threshold");
    return d_star;
}

int completed_blocks(const CodingScheme& scheme, int m) {
    if (std::holds_alternative<EpsApproxMatDot>(scheme.variant)) {
        decodable_groups(scheme, m);
        return scheme.k_total;
    }
    const auto& g = std::get<GroupSac>(scheme.variant);
    const int d_star = decodable_groups(scheme, m);
    int blocks = 0;
    for (int d = 1; d <= d_star; ++d) blocks += g.group_sizes[d - 1];
    return blocks;
}

DecodeResult exact_decode(const CodingScheme& scheme, const std::vector<WorkerResult>& results) {
    const int r_threshold = recovery_threshold(scheme);
    const auto used = first_results(results, r_threshold);
    const DecodedPolynomial poly = interpolate_results(used, decode_basis(scheme));

    Matrix decoded(1, 1);
    if (std::holds_alternative<MatDot>(scheme.variant) ||
        std::holds_alternative<EpsApproxMatDot>(scheme.variant)) {
        decoded = poly.coeffs[scheme.k_total - 1];
    } else if (const auto* g = std::get_if<GroupSac>(&scheme.variant)) {
        decoded = poly.coeffs[group_coefficient_exponent(*g, 1)];
        for (int d = 2; d <= static_cast<int>(g->group_sizes.size()); ++d)
            decoded = decoded + poly.coeffs[group_coefficient_exponent(*g, d)];
    } else {
        const auto anchors = scheme_anchors(scheme);
        const auto weights = scheme_weights(scheme);
        decoded = poly.evaluate(cdouble(anchors[0], 0.0)).scaled(weights[0]);
        for (std::size_t k = 1; k < anchors.size(); ++k)
            decoded = decoded + poly.evaluate(cdouble(anchors[k], 0.0)).scaled(weights[k]);
    }
    return {decoded.real_part(), decoded.imag_norm(), poly.condition};
}

DecodeResult approx_decode_group(const CodingScheme& scheme,
                                 const std::vector<WorkerResult>& results, double beta) {
    if (!std::holds_alternative<GroupSac>(scheme.variant) &&
        !std::holds_alternative<EpsApproxMatDot>(scheme.variant))
        throw std::invalid_argument("approx_decode_group: scheme has no group-wise layers");
    const int m = static_cast<int>(results.size());
    if (m >= recovery_threshold(scheme))
        throw std::invalid_argument("approx_decode_group: use exact_decode at the recovery threshold");
    const int d_star = decodable_groups(scheme, m);  // throws below first layer

    // Exact square interpolation through the m completed evaluations; the
    // neglected x^m tail is what the small-magnitude evaluation sets make
    // negligible.
    const DecodedPolynomial poly = interpolate_results(results, Monomial{});

    Matrix decoded(1, 1);
    if (std::holds_alternative<EpsApproxMatDot>(scheme.variant)) {
        decoded = poly.coeffs[scheme.k_total - 1];
    } else {
        const auto& g = std::get<GroupSac>(scheme.variant);
        decoded = poly.coeffs[group_coefficient_exponent(g, 1)];
        for (int d = 2; d <= d_star; ++d)
            decoded = decoded + poly.coeffs[group_coefficient_exponent(g, d)];
    }
    decoded = decoded.scaled(beta);
    return {decoded.real_part(), decoded.imag_norm(), poly.condition};
}

DecodeResult approx_decode_layer(const CodingScheme& scheme,
                                 const std::vector<WorkerResult>& results, double beta) {
    const auto* ls = std::get_if<LayerSac>(&scheme.variant);
    if (!ls) throw std::invalid_argument("approx_decode_layer: not a layer-wise scheme");
    if (results.empty()) throw std::invalid_argument("approx_decode_layer: no results");
    const auto& cluster_of = *scheme.eval_set.cluster_of;

    const int k = scheme.k_total;
    std::vector<int> counts(k, 0);
    std::vector<Matrix> sums(k);
    for (const auto& r : results) {
        const int cluster = cluster_of[r.worker_id - 1];
        if (counts[cluster] == 0)
            sums[cluster] = r.product;
        else
            sums[cluster] = sums[cluster] + r.product;
        ++counts[cluster];
    }
    Matrix acc(results[0].product.rows(), results[0].product.cols(), Field::Complex);
    for (int c = 0; c < k; ++c)
        if (counts[c] > 0) acc = acc + sums[c].scaled(ls->weights[c] / counts[c]);
    acc = acc.scaled(beta);
    return {acc.real_part(), acc.imag_norm(), 0.0};
}

double perturbation_bound(double lambda1, double lambda2, int n, double eps) {
    if (lambda1 < 0.0 || lambda2 < 0.0 || eps < 0.0 || n < 0)
        throw std::invalid_argument("perturbation_bound: arguments must be nonnegative");
    double sum = 0.0;
    double p_hi = 1.0, p_lo = 1.0;
    for (int i = 1; i <= n; ++i) {
        p_hi *= lambda1 + eps;
        p_lo *= lambda1;
        sum += p_hi - p_lo;
    }
    return lambda2 * sum;
}

}  // namespace sac
