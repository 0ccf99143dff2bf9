#pragma once

#include <cstdint>
#include <random>

#include "fcg/linalg.hpp"
#include "fcg/truth_table.hpp"

namespace fcg {

// Deterministic random source. Every randomized path (test suites, CLI
// verification batches) draws from this so a seed pins the exact stream;
// distributions are derived from the raw 64-bit output by hand instead of
// through <random>'s implementation-defined adapters.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound);

    // Uniform double in [0, 1) with 53 random bits.
    double next_unit();

    // Standard normal via Box-Muller.
    double next_gaussian();

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Haar-ish random unitary: Gram-Schmidt orthonormalization of a matrix of
// independent standard-normal complex entries.
ComplexMatrix random_unitary(std::size_t dim, RandomSource& rng);

TruthTable random_truth_table(int n, RandomSource& rng);

}  // namespace fcg
