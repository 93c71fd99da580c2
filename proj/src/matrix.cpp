#include "sac/matrix.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sac {

Matrix::Matrix(std::size_t rows, std::size_t cols, Field field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols) {
    if (rows == 0 || cols == 0)
        throw std::invalid_argument("Matrix: dimensions must be positive");
}

Matrix Matrix::from_real(std::size_t rows, std::size_t cols,
                         const std::vector<double>& entries) {
    Matrix m(rows, cols, Field::Real);
    if (entries.size() != rows * cols)
        throw std::invalid_argument("Matrix::from_real: entry count mismatch");
    for (std::size_t i = 0; i < entries.size(); ++i) m.data_[i] = entries[i];
    m.check_finite();
    return m;
}

Matrix Matrix::from_complex(std::size_t rows, std::size_t cols,
                            const std::vector<cdouble>& entries) {
    Matrix m(rows, cols, Field::Complex);
    if (entries.size() != rows * cols)
        throw std::invalid_argument("Matrix::from_complex: entry count mismatch");
    m.data_ = entries;
    m.check_finite();
    return m;
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n, Field::Real);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::ones(std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols, Field::Real);
    for (auto& e : m.data_) e = 1.0;
    return m;
}

void Matrix::check_finite() const {
    for (const auto& e : data_)
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
            throw std::invalid_argument("Matrix: non-finite entry");
}

static Field combine(Field a, Field b) {
    return (a == Field::Complex || b == Field::Complex) ? Field::Complex : Field::Real;
}

Matrix Matrix::operator+(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("Matrix::operator+: shape mismatch");
    Matrix out(rows_, cols_, combine(field_, other.field_));
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + other.data_[i];
    return out;
}

Matrix Matrix::operator-(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("Matrix::operator-: shape mismatch");
    Matrix out(rows_, cols_, combine(field_, other.field_));
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - other.data_[i];
    return out;
}

Matrix Matrix::operator*(const Matrix& other) const {
    if (cols_ != other.rows_)
        throw std::invalid_argument("Matrix::operator*: inner dimension mismatch");
    Matrix out(rows_, other.cols_, combine(field_, other.field_));
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < other.cols_; ++c) {
            cdouble acc = 0.0;
            for (std::size_t k = 0; k < cols_; ++k)
                acc += data_[r * cols_ + k] * other.data_[k * other.cols_ + c];
            out(r, c) = acc;
        }
    }
    return out;
}

Matrix Matrix::scaled(cdouble factor) const {
    Matrix out(rows_, cols_, factor.imag() != 0.0 ? Field::Complex : field_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * factor;
    return out;
}

Matrix Matrix::real_part() const {
    Matrix out(rows_, cols_, Field::Real);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i].real();
    return out;
}

double Matrix::imag_norm() const {
    double s = 0.0;
    for (const auto& e : data_) s += e.imag() * e.imag();
    return std::sqrt(s);
}

double frobenius_norm_sq(const Matrix& m) {
    double s = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            s += std::norm(m(r, c));
    return s;
}

double trace_product(const Matrix& p, const Matrix& q) {
    if (p.rows() != q.rows() || p.cols() != q.cols())
        throw std::invalid_argument("trace_product: shape mismatch");
    double s = 0.0;
    for (std::size_t r = 0; r < p.rows(); ++r)
        for (std::size_t c = 0; c < p.cols(); ++c)
            s += (std::conj(p(r, c)) * q(r, c)).real();
    return s;
}

PartitionedJob partition(const Matrix& a, const Matrix& b, int k) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("partition: a.cols must equal b.rows");
    if (k <= 0 || a.cols() % static_cast<std::size_t>(k) != 0)
        throw std::invalid_argument("partition: k must divide the inner dimension");
    const std::size_t band = a.cols() / static_cast<std::size_t>(k);
    PartitionedJob job;
    job.k_parts = k;
    for (int j = 0; j < k; ++j) {
        Matrix ab(a.rows(), band, a.field());
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < band; ++c)
                ab(r, c) = a(r, j * band + c);
        Matrix bb(band, b.cols(), b.field());
        for (std::size_t r = 0; r < band; ++r)
            for (std::size_t c = 0; c < b.cols(); ++c)
                bb(r, c) = b(j * band + r, c);
        job.a_blocks.push_back(std::move(ab));
        job.b_blocks.push_back(std::move(bb));
        job.permutation.push_back(j);
    }
    return job;
}

PartitionedJob uniform_shuffle(const PartitionedJob& job, std::uint64_t seed) {
    PartitionedJob out = job;
    Rng rng(seed);
    out.permutation = rng.permutation(job.k_parts);
    return out;
}

std::uint64_t Rng::bounded(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::bounded: n must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return v % n;
}

double Rng::uniform01() {
    return (next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1, u2;
    do {
        u1 = uniform01();
    } while (u1 <= 0.0);
    u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

std::vector<int> Rng::permutation(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(bounded(static_cast<std::uint64_t>(i) + 1));
        std::swap(p[i], p[j]);
    }
    return p;
}

}  // namespace sac
