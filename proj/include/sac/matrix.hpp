#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace sac {

using cdouble = std::complex<double>;

enum class Field { Real, Complex };

// Dense row-major matrix over double or complex double. Storage is always
// complex; a Field tag records whether imaginary parts are meaningful.
// Entries must be finite on construction.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0), field_(Field::Real) {}
    Matrix(std::size_t rows, std::size_t cols, Field field = Field::Real);
    static Matrix from_real(std::size_t rows, std::size_t cols,
                            const std::vector<double>& entries);
    static Matrix from_complex(std::size_t rows, std::size_t cols,
                               const std::vector<cdouble>& entries);
    static Matrix identity(std::size_t n);
    static Matrix ones(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Field field() const { return field_; }

    cdouble& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cdouble& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Matrix operator+(const Matrix& other) const;
    Matrix operator-(const Matrix& other) const;
    Matrix operator*(const Matrix& other) const;  // row-major inner-product order
    Matrix scaled(cdouble factor) const;

    // Real part of each entry, tagged Real.
    Matrix real_part() const;
    // Frobenius norm of the imaginary component.
    double imag_norm() const;

    void check_finite() const;

private:
    std::size_t rows_, cols_;
    Field field_;
    std::vector<cdouble> data_;
};

// Sum of |entry|^2.
double frobenius_norm_sq(const Matrix& m);

// Re(sum conj(p) .* q); the Frobenius inner product Tr(P^H Q).
double trace_product(const Matrix& p, const Matrix& q);

// The K (A_k, B_k) submatrix pairs of a column/row-band partition, plus a
// completion-order permutation over block indices (0-based).
struct PartitionedJob {
    int k_parts = 0;
    std::vector<Matrix> a_blocks;
    std::vector<Matrix> b_blocks;
    std::vector<int> permutation;  // permutation[k] = index i_{k+1}
};

// Split a into k column blocks and b into the matching row bands.
// Throws std::invalid_argument on shape mismatch or non-divisibility.
PartitionedJob partition(const Matrix& a, const Matrix& b, int k);

// Replace the permutation with a seeded Fisher-Yates shuffle. Blocks are
// untouched. Deterministic: same seed gives the same permutation.
PartitionedJob uniform_shuffle(const PartitionedJob& job, std::uint64_t seed);

// Seeded PRNG used everywhere randomness is needed. Backed by mt19937_64
// (whose output stream is fixed by the standard) with rejection-sampled
// bounded draws and Box-Muller normals, so results are identical on every
// platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    std::uint64_t bounded(std::uint64_t n);  // uniform in [0, n)
    double uniform01();                      // in [0, 1)
    double normal();                         // standard normal
    std::vector<int> permutation(int n);     // Fisher-Yates

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace sac
