#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "fcg/linalg.hpp"
#include "fcg/truth_table.hpp"

namespace fcg {

// Index convention used everywhere: the control register is the high-order
// block of the combined basis index and the target register the low-order
// part, so a system basis state |x>|s> has flattened index i = x * M + s with
// N = 2^n control values and M = 2^m target dimensions. Bitstrings read
// control bits first, most significant first. All gate construction,
// serialization and simulation in this library follow this layout.

// Unitarity tolerance applied when a gate spec is constructed.
inline constexpr double kSpecUnitaryTol = 1e-10;

// Dense products used as verification oracles are capped at this dimension.
inline constexpr std::uint64_t kMaxProductDim = std::uint64_t{1} << 12;

// Fixed gate library: I, X, H, CX, CCX.
const ComplexMatrix& gate_identity();
const ComplexMatrix& gate_x();
const ComplexMatrix& gate_h();
const ComplexMatrix& gate_cx();
const ComplexMatrix& gate_ccx();

// Lookup by name; nullptr when unknown.
const ComplexMatrix* standard_gate(std::string_view name);
std::vector<std::string_view> standard_gate_names();

// "H,H" -> H (x) H. Factors are library gate names, left factor high-order.
// Throws DomainError on an unknown name.
ComplexMatrix tensored_gate(std::string_view names);

// A controlled-U that fires on a single control value y.
class BcgSpec {
public:
    BcgSpec(int control_width, std::uint64_t control_value, ComplexMatrix unitary);

    int control_width() const noexcept { return control_width_; }
    int target_width() const noexcept { return target_width_; }
    std::uint64_t control_value() const noexcept { return control_value_; }
    const ComplexMatrix& unitary() const noexcept { return unitary_; }

private:
    int control_width_;
    int target_width_;
    std::uint64_t control_value_;
    ComplexMatrix unitary_;
};

// A controlled-U that fires on every control value marked in the table.
class FcgSpec {
public:
    FcgSpec(TruthTable table, ComplexMatrix unitary);

    int control_width() const noexcept { return table_.width(); }
    int target_width() const noexcept { return target_width_; }
    const TruthTable& table() const noexcept { return table_; }
    const ComplexMatrix& unitary() const noexcept { return unitary_; }

private:
    TruthTable table_;
    int target_width_;
    ComplexMatrix unitary_;
};

// If-then-else: marked control values get the then-branch, all others the
// else-branch (an FCG is the special case else = identity).
class ConditionalSpec {
public:
    ConditionalSpec(TruthTable table, ComplexMatrix then_branch, ComplexMatrix else_branch);

    int control_width() const noexcept { return table_.width(); }
    int target_width() const noexcept { return target_width_; }
    const TruthTable& table() const noexcept { return table_; }
    const ComplexMatrix& then_branch() const noexcept { return then_branch_; }
    const ComplexMatrix& else_branch() const noexcept { return else_branch_; }

private:
    TruthTable table_;
    int target_width_;
    ComplexMatrix then_branch_;
    ComplexMatrix else_branch_;
};

// Block-diagonal unitary over the (control, target) system: block y occupies
// global indices [y*M, (y+1)*M). Identity blocks are implicit; only
// non-identity blocks are stored.
class BlockDiagonalGate {
public:
    BlockDiagonalGate(int control_width, int target_width,
                      std::map<std::uint64_t, ComplexMatrix> blocks);

    int control_width() const noexcept { return control_width_; }
    int target_width() const noexcept { return target_width_; }
    std::uint64_t block_count() const noexcept { return std::uint64_t{1} << control_width_; }
    std::uint64_t block_dim() const noexcept { return std::uint64_t{1} << target_width_; }

    // nullptr means block y is the implicit identity.
    const ComplexMatrix* block(std::uint64_t y) const;
    const std::map<std::uint64_t, ComplexMatrix>& explicit_blocks() const noexcept {
        return blocks_;
    }

    // Flattens to a dense (N*M)x(N*M) matrix, subject to the dense entry cap.
    ComplexMatrix dense() const;

private:
    int control_width_;
    int target_width_;
    std::map<std::uint64_t, ComplexMatrix> blocks_;
};

// Single non-identity block at the spec's control value.
BlockDiagonalGate bcg_matrix(const BcgSpec& spec);

// Block y is U where the table marks y, identity elsewhere.
BlockDiagonalGate fcg_matrix(const FcgSpec& spec);

// Block y is the then-branch where marked, else-branch elsewhere.
BlockDiagonalGate conditional_matrix(const ConditionalSpec& spec);

// Tensor-sum form F (x) U + (I_N - F) (x) I_M with F = diag(table bits),
// materialized densely. Equal to fcg_matrix(...).dense() and kept as an
// independent formulation for cross-checking.
ComplexMatrix qit_matrix(const TruthTable& table, const ComplexMatrix& unitary);

// Diagonal N x N gate: marked control values pick up e^{i*phase}, others 1.
// The default phase pi gives the +/-1 search oracle with exact entries.
ComplexMatrix phase_oracle_matrix(const TruthTable& table);
ComplexMatrix phase_oracle_matrix(const TruthTable& table, double phase);

// The e^{i*phase} applied to marked values; exactly -1 when phase is pi.
Complex phase_oracle_factor(double phase);

// Dense product of single-value controlled gates in the given order. The
// factors' non-identity blocks are disjoint, so any order gives the same
// matrix; verification exploits that. Control values must be distinct.
ComplexMatrix bcg_product(int control_width, std::span<const std::uint64_t> control_values,
                          const ComplexMatrix& unitary);

}  // namespace fcg
