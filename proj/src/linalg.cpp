#include "fcg/linalg.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace fcg {

namespace {

std::string shape_string(const ComplexMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void check_capacity(std::size_t rows, std::size_t cols, const char* who) {
    if (rows == 0 || cols == 0) {
        throw ValidationError(std::string(who) + ": dimensions must be positive");
    }
    if (cols > kMaxDenseEntries / rows) {
        throw CapacityError(std::string(who) + ": " + std::to_string(rows) + "x" +
                            std::to_string(cols) + " exceeds the dense entry cap of 2^24");
    }
}

void check_finite(std::span<const Complex> entries, const char* who) {
    for (const Complex& c : entries) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw ValidationError(std::string(who) + ": entries must be finite");
        }
    }
}

}  // namespace

bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    check_capacity(rows, cols, "ComplexMatrix");
    entries_.resize(rows * cols);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    check_capacity(rows, cols, "ComplexMatrix");
    if (entries_.size() != rows * cols) {
        throw ShapeError("ComplexMatrix: " + std::to_string(entries_.size()) +
                         " entries for a " + shape_string(*this) + " matrix");
    }
    check_finite(entries_, "ComplexMatrix");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = Complex{1.0, 0.0};
    }
    return m;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("matmul: shape mismatch " + shape_string(a) + " * " + shape_string(b));
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_capacity(a.rows() * b.rows(), a.cols() * b.cols(), "kron");
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia) {
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const Complex f = a(ia, ja);
            for (std::size_t ib = 0; ib < b.rows(); ++ib) {
                for (std::size_t jb = 0; jb < b.cols(); ++jb) {
                    out(ia * b.rows() + ib, ja * b.cols() + jb) = f * b(ib, jb);
                }
            }
        }
    }
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError("max_abs_diff: shape mismatch " + shape_string(a) + " vs " +
                         shape_string(b));
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
        }
    }
    return worst;
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    return max_abs_diff(a, b) <= tol;
}

double unitarity_deviation(const ComplexMatrix& u) {
    if (!u.square()) {
        throw ShapeError("unitarity_deviation: matrix is " + shape_string(u) + ", not square");
    }
    const std::size_t d = u.rows();
    double worst = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            Complex acc{};
            for (std::size_t k = 0; k < d; ++k) {
                acc += std::conj(u(k, i)) * u(k, j);
            }
            if (i == j) {
                acc -= 1.0;
            }
            worst = std::max(worst, std::abs(acc));
        }
    }
    return worst;
}

bool is_unitary(const ComplexMatrix& u, double tol) { return unitarity_deviation(u) <= tol; }

std::vector<Complex> matvec(const ComplexMatrix& a, std::span<const Complex> v) {
    if (a.cols() != v.size()) {
        throw ShapeError("matvec: shape mismatch " + shape_string(a) + " * " +
                         std::to_string(v.size()) + "-vector");
    }
    std::vector<Complex> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex acc{};
        for (std::size_t j = 0; j < a.cols(); ++j) {
            acc += a(i, j) * v[j];
        }
        out[i] = acc;
    }
    return out;
}

StateVector::StateVector(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (!is_power_of_two(amplitudes_.size())) {
        throw ValidationError("StateVector: dimension " + std::to_string(amplitudes_.size()) +
                              " is not a power of two");
    }
    check_finite(amplitudes_, "StateVector");
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw DomainError("StateVector::basis: index " + std::to_string(index) +
                          " out of range for dimension " + std::to_string(dim));
    }
    std::vector<Complex> amps(dim);
    amps[index] = Complex{1.0, 0.0};
    return StateVector(std::move(amps));
}

StateVector StateVector::normalized(std::vector<Complex> amplitudes) {
    StateVector v(std::move(amplitudes));
    const double norm = v.norm();
    if (norm == 0.0) {
        throw ValidationError("StateVector::normalized: zero vector");
    }
    for (Complex& c : v.amplitudes_) {
        c /= norm;
    }
    return v;
}

double StateVector::norm() const {
    double sum = 0.0;
    for (const Complex& c : amplitudes_) {
        sum += std::norm(c);
    }
    return std::sqrt(sum);
}

}  // namespace fcg
