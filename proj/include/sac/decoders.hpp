#pragma once

#include <vector>

#include "sac/coding.hpp"
#include "sac/matrix.hpp"
#include "sac/poly_bases.hpp"

namespace sac {

// m distinct points with matrix samples of a degree-(m-1) polynomial,
// expressed in the given basis.
struct InterpolationProblem {
    std::vector<cdouble> points;
    std::vector<Matrix> values;
    BasisKind basis = Monomial{};
};

struct DecodedPolynomial {
    BasisKind basis;
    std::vector<Matrix> coeffs;  // c_0..c_{deg} in the stated basis
    double condition = 0.0;      // 1-norm condition estimate of the system

    Matrix evaluate(cdouble x) const;
};

// Solve the m x m generalized Vandermonde system M c = values with
// M[j][k] = basis_k(x_j), by one LU factorization with partial pivoting
// applied to all right-hand sides. Throws on duplicate points or a pivot
// below 1e-300.
DecodedPolynomial solve_interpolation(const InterpolationProblem& p);

struct DecodeResult {
    Matrix estimate;            // real part of the decoded matrix
    double imag_residual = 0.0; // Frobenius norm of the discarded imaginary part
    double condition = 0.0;
};

// Exact recovery from the first recovery_threshold completed results.
// Coefficient-based schemes read monomial coefficients; point-based schemes
// re-evaluate the decoded polynomial at the anchors and combine with the
// alpha weights.
DecodeResult exact_decode(const CodingScheme& scheme, const std::vector<WorkerResult>& results);

// Approximate decoding for GroupSac / EpsApproxMatDot from m completed
// results, first-layer threshold <= m < recovery threshold: fit the
// degree-(m-1) monomial polynomial through the m evaluations and sum the
// group partial-sum coefficients decodable so far, scaled by beta.
DecodeResult approx_decode_group(const CodingScheme& scheme,
                                 const std::vector<WorkerResult>& results, double beta);

// Cluster-averaged estimate for LayerSac, any m >= 1: average completed
// products per anchor cluster and combine with the alpha weights, scaled by
// beta. Empty clusters contribute nothing.
DecodeResult approx_decode_layer(const CodingScheme& scheme,
                                 const std::vector<WorkerResult>& results, double beta);

// Largest group d whose first-layer threshold is <= m (GroupSac), or 1 for
// EpsApproxMatDot with m >= K.
int decodable_groups(const CodingScheme& scheme, int m);
// Number of blocks whose partial sums are decoded at m completions:
// sum_{d <= d*} K_d (K for EpsApproxMatDot).
int completed_blocks(const CodingScheme& scheme, int m);

// Bound on |f(y)-f(x)| for a degree-n polynomial with |coeffs| <= lambda2,
// |x| <= lambda1, |y-x| <= eps: lambda2 * sum_{i=1..n} ((lambda1+eps)^i - lambda1^i).
// Evaluated as the power-sum difference, which is the limit form of the
// closed-form geometric expression and has no singularity at lambda1 = 1.
double perturbation_bound(double lambda1, double lambda2, int n, double eps);

// Interpolation basis used when decoding the given scheme.
BasisKind decode_basis(const CodingScheme& scheme);

}  // namespace sac
