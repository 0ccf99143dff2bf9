#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "fcg/gates.hpp"

namespace fcg {

// Outcome of one cross-check. On failure the witness names the entry (or
// basis pair) where the worst deviation occurs; recomputing the deviation
// there always exceeds the tolerance.
struct VerificationReport {
    std::string check;
    bool pass = false;
    double max_deviation = 0.0;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> witness;
};

// Largest entry of adjoint(g)*g - I, computed with its own loops.
VerificationReport check_unitary(const ComplexMatrix& g, double tol);

// Builder vs. the product of single-value controlled gates over the marked
// set. Capped at dimension 2^12.
VerificationReport check_fcg_equals_bcg_product(const FcgSpec& spec, double tol);

// Entrywise comparison; with the phase allowance the scale factor is taken
// from the largest-magnitude entry of a (robust against near-zero entries)
// before comparing.
VerificationReport check_equivalence(const ComplexMatrix& a, const ComplexMatrix& b, double tol,
                                     bool up_to_global_phase);

// Recomputes every entry of the function-controlled gate from the closed
// formula (delta plus the marked-block difference), with index arithmetic
// written here rather than shared with the builder, and compares against the
// dense builder output.
VerificationReport check_entry_formula(const FcgSpec& spec, double tol = 1e-15);

}  // namespace fcg
