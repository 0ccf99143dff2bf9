#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fcg/errors.hpp"

namespace fcg {

using Complex = std::complex<double>;

// Dense storage is capped; larger operators stay in block form and are never
// flattened. 2^24 entries is a 256 MiB matrix of doubles, well past anything
// the verification paths need.
inline constexpr std::size_t kMaxDenseEntries = std::size_t{1} << 24;

// Dense row-major complex matrix. Entries are validated to be finite on
// construction from external data.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t dim);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const {
        return entries_[i * cols_ + j];
    }

    std::span<const Complex> entries() const noexcept { return entries_; }

    bool operator==(const ComplexMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

// Kronecker product with a's index as the high-order block index, i.e.
// kron(a, b)(i_a * b.rows + i_b, j_a * b.cols + j_b) = a(i_a, j_a) * b(i_b, j_b).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix adjoint(const ComplexMatrix& a);

// Largest entrywise |a - b|. Shapes must match.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

// Largest entrywise deviation of adjoint(u) * u from the identity.
double unitarity_deviation(const ComplexMatrix& u);
bool is_unitary(const ComplexMatrix& u, double tol);

std::vector<Complex> matvec(const ComplexMatrix& a, std::span<const Complex> v);

// Column vector of complex amplitudes whose dimension is a power of two.
class StateVector {
public:
    StateVector() = default;
    explicit StateVector(std::vector<Complex> amplitudes);

    static StateVector basis(std::size_t dim, std::size_t index);
    // Scales the amplitudes to unit norm.
    static StateVector normalized(std::vector<Complex> amplitudes);

    std::size_t dim() const noexcept { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    std::span<Complex> mutable_amplitudes() noexcept { return amplitudes_; }
    const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

    double norm() const;

    bool operator==(const StateVector&) const = default;

private:
    std::vector<Complex> amplitudes_;
};

bool is_power_of_two(std::uint64_t v);

}  // namespace fcg
