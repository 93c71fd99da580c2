#include "sac/poly_bases.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sac {

namespace {

template <typename Scalar>
Scalar cheb_impl(int k, Scalar x) {
    if (k < 0) throw std::invalid_argument("chebyshev_orthonormal: k must be >= 0");
    if (k == 0) return Scalar(1.0 / std::numbers::sqrt2);
    Scalar prev = Scalar(1.0);  // p_0
    Scalar cur = x;             // p_1
    for (int i = 1; i < k; ++i) {
        Scalar next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

void check_anchors(const std::vector<double>& anchors) {
    for (std::size_t i = 0; i < anchors.size(); ++i)
        for (std::size_t j = i + 1; j < anchors.size(); ++j)
            if (anchors[i] == anchors[j])
                throw std::invalid_argument("lagrange: duplicate anchors");
}

template <typename Scalar>
Scalar lagrange_impl(int k, Scalar x, const std::vector<double>& anchors) {
    check_anchors(anchors);
    if (k < 0 || k >= static_cast<int>(anchors.size()))
        throw std::invalid_argument("lagrange_eval: anchor index out of range");
    Scalar prod = Scalar(1.0);
    for (std::size_t j = 0; j < anchors.size(); ++j) {
        if (static_cast<int>(j) == k) continue;
        prod *= (x - anchors[j]) / (anchors[k] - anchors[j]);
    }
    return prod;
}

}  // namespace

double chebyshev_orthonormal(int k, double x) { return cheb_impl(k, x); }
cdouble chebyshev_orthonormal(int k, cdouble x) { return cheb_impl(k, x); }

std::vector<double> chebyshev_roots(int n) {
    if (n < 1) throw std::invalid_argument("chebyshev_roots: n must be >= 1");
    std::vector<double> roots(n);
    for (int j = 1; j <= n; ++j)
        roots[n - j] = std::cos((2.0 * j - 1.0) * std::numbers::pi / (2.0 * n));
    if (n % 2 == 1) roots[n / 2] = 0.0;  // cos(pi/2) exactly
    // enforce exact symmetry about 0
    for (int j = 0; j < n / 2; ++j) roots[j] = -roots[n - 1 - j];
    return roots;
}

double lagrange_eval(int k, double x, const std::vector<double>& anchors) {
    return lagrange_impl(k, x, anchors);
}
cdouble lagrange_eval(int k, cdouble x, const std::vector<double>& anchors) {
    return lagrange_impl(k, x, anchors);
}

cdouble basis_eval(const BasisKind& basis, int k, cdouble x) {
    return std::visit(
        [&](const auto& b) -> cdouble {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Monomial>) {
                cdouble v = 1.0;
                for (int i = 0; i < k; ++i) v *= x;
                return v;
            } else if constexpr (std::is_same_v<T, ChebyshevOrthonormal>) {
                return chebyshev_orthonormal(k, x);
            } else {
                return lagrange_eval(k, x, b.anchors);
            }
        },
        basis);
}

void EvaluationSet::validate() const {
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j])
                throw std::invalid_argument("EvaluationSet: duplicate points");
    if (cluster_of) {
        if (cluster_of->size() != points.size())
            throw std::invalid_argument("EvaluationSet: cluster_map size mismatch");
        int total = 0;
        for (int s : cluster_sizes) total += s;
        if (total != size())
            throw std::invalid_argument("EvaluationSet: cluster sizes do not sum to N");
    }
}

EvaluationSet make_equal_real_set(int n, double epsilon) {
    if (n < 1 || epsilon <= 0.0)
        throw std::invalid_argument("make_equal_real_set: need n >= 1, epsilon > 0");
    EvaluationSet set;
    set.epsilon = epsilon;
    for (int j = 1; j <= n; ++j) set.points.emplace_back(epsilon * j / n, 0.0);
    set.validate();
    return set;
}

EvaluationSet make_complex_circle_set(int n, double epsilon) {
    if (n < 1 || epsilon <= 0.0)
        throw std::invalid_argument("make_complex_circle_set: need n >= 1, epsilon > 0");
    EvaluationSet set;
    set.epsilon = epsilon;
    for (int j = 1; j <= n; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / n;
        set.points.emplace_back(epsilon * std::cos(theta), epsilon * std::sin(theta));
    }
    set.validate();
    return set;
}

EvaluationSet make_cluster_set(const std::vector<double>& anchors,
                               const std::vector<int>& sizes, double epsilon) {
    if (anchors.empty() || anchors.size() != sizes.size())
        throw std::invalid_argument("make_cluster_set: anchors/sizes mismatch");
    if (epsilon <= 0.0) throw std::invalid_argument("make_cluster_set: epsilon > 0 required");
    check_anchors(anchors);
    for (std::size_t i = 0; i < anchors.size(); ++i)
        for (std::size_t j = i + 1; j < anchors.size(); ++j)
            if (std::abs(anchors[i] - anchors[j]) <= 2.0 * epsilon)
                throw std::invalid_argument("make_cluster_set: clusters would overlap");
    EvaluationSet set;
    set.epsilon = epsilon;
    set.cluster_of = std::vector<int>{};
    set.cluster_sizes = sizes;
    for (std::size_t k = 0; k < anchors.size(); ++k) {
        if (sizes[k] < 1)
            throw std::invalid_argument("make_cluster_set: cluster sizes must be positive");
        for (int i = 1; i <= sizes[k]; ++i) {
            set.points.emplace_back(anchors[k] + epsilon * i / sizes[k], 0.0);
            set.cluster_of->push_back(static_cast<int>(k));
        }
    }
    set.validate();
    return set;
}

}  // namespace sac
