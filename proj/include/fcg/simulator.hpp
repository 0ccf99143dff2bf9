#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "fcg/gates.hpp"

namespace fcg {

// Caps keep everything at desk scale: blockwise states up to 2^24 amplitudes,
// Grover runs up to 2^12 basis values.
inline constexpr int kMaxSimQubits = 24;
inline constexpr int kMaxGroverWidth = 12;

// A statevector over the (control, target) system. target_width may be zero
// for control-only circuits (phase oracles, Grover).
struct SimState {
    int control_width = 0;
    int target_width = 0;
    StateVector state;

    std::uint64_t dim() const { return std::uint64_t{1} << (control_width + target_width); }
};

SimState make_basis_state(int control_width, int target_width, std::uint64_t basis_index);

// Dense reference path: state' = g * state. Validates unitarity; meant for
// cross-checking, not production-sized states.
SimState apply_full(const ComplexMatrix& g, const SimState& s);

// Fast path: only the M-amplitude slices whose control value is marked get a
// matvec by U; everything else is copied untouched. When multiply_adds is
// non-null it is incremented once per complex multiply-add performed, which
// totals (marked count) * M^2 per application.
SimState apply_fcg_blockwise(const FcgSpec& spec, const SimState& s,
                             std::uint64_t* multiply_adds = nullptr);

// Same slicing with a branch matrix on every slice: then-branch where marked,
// else-branch otherwise.
SimState apply_conditional_blockwise(const ConditionalSpec& spec, const SimState& s,
                                     std::uint64_t* multiply_adds = nullptr);

struct AncillaOracleResult {
    // The (control, target) marginal read off the ancilla |0> sector.
    SimState state;
    // Amplitude mass left on ancilla |0>; the uncomputation returns it to 1.
    double ancilla_zero_probability = 0.0;
};

// Simulates the FCG by the oracle route: a fresh ancilla qubit is allocated
// in |0> between the control and target registers, the f-oracle marks it,
// a single-qubit-controlled U fires on it, and the oracle uncomputes it.
AncillaOracleResult simulate_oracle_ancilla(const FcgSpec& spec, const SimState& s);

struct GroverResult {
    // |amplitude|^2 per control-register basis value.
    std::vector<double> probabilities;
    // Probability mass on the marked set, initial plus after each iteration.
    std::vector<double> marked_probability;
};

// Uniform start, then `iterations` rounds of phase oracle (angle pi) followed
// by the diffusion operator 2|s><s| - I. Neither operator is materialized.
GroverResult grover_run(const TruthTable& table, std::uint64_t iterations);

// floor(pi/4 * sqrt(N / marked)), the usual near-optimal round count.
std::uint64_t grover_suggested_iterations(const TruthTable& table);

// Circuit steps. Standard gates name qubits by wire index: qubit 0 is the top
// wire, i.e. the most significant bit of the flattened basis index; control
// wires come before target wires. Function-controlled steps always span the
// declared control/target split.
struct GateStep {
    std::string name;  // I, X, H (1 qubit), CX (2), CCX (3)
    std::vector<int> qubits;
};
struct FcgStep {
    FcgSpec spec;
};
struct ConditionalStep {
    ConditionalSpec spec;
};
struct PhaseOracleStep {
    TruthTable table;
    double phase;
};
using CircuitStep = std::variant<GateStep, FcgStep, ConditionalStep, PhaseOracleStep>;

struct Circuit {
    int control_width = 0;
    int target_width = 0;
    std::vector<CircuitStep> steps;
};

// Folds the steps left to right, using the blockwise paths for function-
// controlled steps. A step that does not fit the declared registers is
// reported with its index.
SimState run_circuit(const Circuit& circuit, const SimState& initial);

}  // namespace fcg
