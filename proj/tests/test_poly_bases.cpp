#include <cmath>
#include <vector>

#include "doctest.h"
#include "sac/poly_bases.hpp"

using namespace sac;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("orthonormal chebyshev values match the recursion by hand") {
    // O_0 = 1/sqrt(2); O_1(x) = x; O_2(x) = 2x^2 - 1; O_3(x) = 4x^3 - 3x;
    // O_4(x) = 8x^4 - 8x^2 + 1.
    CHECK(chebyshev_orthonormal(0, 0.3) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(chebyshev_orthonormal(1, 0.3) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(chebyshev_orthonormal(3, 0.5) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(chebyshev_orthonormal(4, 0.5) == doctest::Approx(-0.5).epsilon(1e-14));
    // complex overload agrees with the real one on the real axis
    const cdouble z = chebyshev_orthonormal(5, cdouble(0.7, 0.0));
    CHECK(z.real() == doctest::Approx(chebyshev_orthonormal(5, 0.7)).epsilon(1e-14));
    CHECK(z.imag() == 0.0);
}

TEST_CASE("chebyshev family is orthonormal under gauss-chebyshev quadrature") {
    // <f, g> = (2/M) sum_i f(x_i) g(x_i) over the M chebyshev nodes is exact
    // for polynomials of degree < 2M - maxdeg; M=64 covers degrees up to 8.
    const int m = 64;
    std::vector<double> nodes(m);
    for (int i = 0; i < m; ++i) nodes[i] = std::cos((2 * i + 1) * kPi / (2 * m));
    for (int j = 0; j <= 8; ++j) {
        for (int k = 0; k <= 8; ++k) {
            double acc = 0.0;
            for (double x : nodes) acc += chebyshev_orthonormal(j, x) * chebyshev_orthonormal(k, x);
            acc *= 2.0 / m;
            CHECK(std::abs(acc - (j == k ? 1.0 : 0.0)) < 1e-10);
        }
    }
}

TEST_CASE("chebyshev roots: sorted, symmetric, and actual zeros") {
    const auto r2 = chebyshev_roots(2);
    REQUIRE(r2.size() == 2);
    CHECK(r2[0] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(r2[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    for (int n : {3, 5, 8}) {
        const auto roots = chebyshev_roots(n);
        REQUIRE(static_cast<int>(roots.size()) == n);
        for (int i = 1; i < n; ++i) CHECK(roots[i] > roots[i - 1]);
        for (int i = 0; i < n; ++i) {
            CHECK(roots[i] == -roots[n - 1 - i]);  // exact symmetry
            CHECK(std::abs(chebyshev_orthonormal(n, roots[i])) < 1e-13);
        }
        if (n % 2 == 1) CHECK(roots[n / 2] == 0.0);
    }
}

TEST_CASE("lagrange basis: cardinality and partition of unity") {
    const std::vector<double> anchors = {1.0, 2.5, 4.0, 7.5};
    for (std::size_t k = 0; k < anchors.size(); ++k)
        for (std::size_t j = 0; j < anchors.size(); ++j)
            CHECK(lagrange_eval(static_cast<int>(k), anchors[j], anchors) ==
                  doctest::Approx(k == j ? 1.0 : 0.0).epsilon(1e-12));
    for (double x : {0.0, 1.3, 3.9, 10.0}) {
        double sum = 0.0;
        for (std::size_t k = 0; k < anchors.size(); ++k)
            sum += lagrange_eval(static_cast<int>(k), x, anchors);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS(lagrange_eval(0, 0.5, std::vector<double>{1.0, 1.0}));
}

TEST_CASE("basis_eval dispatches to the selected family") {
    CHECK(basis_eval(Monomial{}, 3, cdouble(2.0, 0.0)).real() ==
          doctest::Approx(8.0).epsilon(1e-15));
    CHECK(basis_eval(ChebyshevOrthonormal{}, 0, cdouble(0.9, 0.0)).real() ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    LagrangeBasis lb{{0.0, 1.0}};
    CHECK(basis_eval(lb, 1, cdouble(0.25, 0.0)).real() == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("equal-spaced real evaluation set") {
    EvaluationSet set = make_equal_real_set(4, 0.4);
    REQUIRE(set.size() == 4);
    CHECK(set.points[0].real() == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(set.points[3].real() == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(set.points[0].imag() == 0.0);
    CHECK(!set.cluster_of.has_value());
    set.validate();
}

TEST_CASE("complex circle evaluation set") {
    EvaluationSet set = make_complex_circle_set(8, 0.5);
    REQUIRE(set.size() == 8);
    for (const auto& p : set.points) CHECK(std::abs(p) == doctest::Approx(0.5).epsilon(1e-14));
    set.validate();
}

TEST_CASE("clustered evaluation set stays within epsilon of its anchor") {
    const std::vector<double> anchors = {0.0, 1.0, 2.0};
    EvaluationSet set = make_cluster_set(anchors, {2, 3, 1}, 0.1);
    REQUIRE(set.size() == 6);
    REQUIRE(set.cluster_of.has_value());
    CHECK(set.cluster_sizes == std::vector<int>{2, 3, 1});
    for (int i = 0; i < set.size(); ++i) {
        const int k = (*set.cluster_of)[i];
        CHECK(std::abs(set.points[i] - cdouble(anchors[k], 0.0)) <= 0.1 + 1e-15);
    }
    set.validate();
    // anchors closer than 2*eps could collide
    CHECK_THROWS(make_cluster_set({0.0, 0.15}, {2, 2}, 0.1));
}
