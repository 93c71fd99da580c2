#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "sac/matrix.hpp"

namespace sac {

struct Monomial {};
struct ChebyshevOrthonormal {};
struct LagrangeBasis {
    std::vector<double> anchors;  // pairwise distinct
};

using BasisKind = std::variant<Monomial, ChebyshevOrthonormal, LagrangeBasis>;

// Value of the k-th basis polynomial (0-based) at x.
cdouble basis_eval(const BasisKind& basis, int k, cdouble x);

// Orthonormal Chebyshev polynomial O_k: O_0 = 1/sqrt(2), O_k = p_k via the
// three-term recursion p_{k+1}(x) = 2x p_k(x) - p_{k-1}(x).
double chebyshev_orthonormal(int k, double x);
cdouble chebyshev_orthonormal(int k, cdouble x);

// The n distinct real roots of O_n, i.e. cos((2j-1)pi/(2n)), sorted ascending.
std::vector<double> chebyshev_roots(int n);

// Lagrange basis polynomial for anchor k (0-based): prod_{j!=k} (x-y_j)/(y_k-y_j).
double lagrange_eval(int k, double x, const std::vector<double>& anchors);
cdouble lagrange_eval(int k, cdouble x, const std::vector<double>& anchors);

// N distinct evaluation points, optionally grouped into anchor clusters whose
// points all lie within epsilon of their anchor.
struct EvaluationSet {
    std::vector<cdouble> points;
    std::optional<std::vector<int>> cluster_of;  // point index -> anchor index
    std::vector<int> cluster_sizes;              // n_1..n_K when clustered
    double epsilon = 0.0;

    int size() const { return static_cast<int>(points.size()); }
    void validate() const;  // throws on duplicate points or cluster violations
};

// { eps*j/n : j = 1..n } on the real line.
EvaluationSet make_equal_real_set(int n, double epsilon);

// { eps * exp(i*2*pi*j/n) : j = 1..n } on the complex circle of radius eps.
EvaluationSet make_complex_circle_set(int n, double epsilon);

// Clustered points z_{k,i} = y_k + eps*i/n_k, i = 1..n_k, one cluster per
// anchor. Requires min pairwise anchor distance > 2*eps so clusters cannot
// collide.
EvaluationSet make_cluster_set(const std::vector<double>& anchors,
                               const std::vector<int>& sizes, double epsilon);

}  // namespace sac
