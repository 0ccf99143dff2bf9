#include "fcg/random.hpp"

#include <cmath>
#include <numbers>

namespace fcg {

std::uint64_t RandomSource::below(std::uint64_t bound) {
    if (bound == 0) {
        throw DomainError("RandomSource::below: bound must be positive");
    }
    // Rejection sampling to avoid modulo bias.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v = engine_();
    while (v >= limit) {
        v = engine_();
    }
    return v % bound;
}

double RandomSource::next_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomSource::next_gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = next_unit();
    while (u1 == 0.0) {
        u1 = next_unit();
    }
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

ComplexMatrix random_unitary(std::size_t dim, RandomSource& rng) {
    if (dim == 0) {
        throw DomainError("random_unitary: dimension must be positive");
    }
    ComplexMatrix q(dim, dim);
    for (std::size_t col = 0; col < dim;) {
        std::vector<Complex> v(dim);
        for (Complex& c : v) {
            c = Complex{rng.next_gaussian(), rng.next_gaussian()};
        }
        // Two rounds of modified Gram-Schmidt against the finished columns.
        for (int round = 0; round < 2; ++round) {
            for (std::size_t k = 0; k < col; ++k) {
                Complex proj{};
                for (std::size_t i = 0; i < dim; ++i) {
                    proj += std::conj(q(i, k)) * v[i];
                }
                for (std::size_t i = 0; i < dim; ++i) {
                    v[i] -= proj * q(i, k);
                }
            }
        }
        double norm2 = 0.0;
        for (const Complex& c : v) {
            norm2 += std::norm(c);
        }
        const double norm = std::sqrt(norm2);
        if (norm < 1e-8) {
            continue;  // degenerate draw, resample this column
        }
        for (std::size_t i = 0; i < dim; ++i) {
            q(i, col) = v[i] / norm;
        }
        ++col;
    }
    return q;
}

TruthTable random_truth_table(int n, RandomSource& rng) {
    std::vector<std::uint8_t> bits(std::uint64_t{1} << n);
    for (std::uint8_t& b : bits) {
        b = static_cast<std::uint8_t>(rng.next_u64() & 1);
    }
    return TruthTable(n, std::move(bits));
}

}  // namespace fcg
