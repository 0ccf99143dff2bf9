#include "fcg/simulator.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace fcg {

namespace {

constexpr double kApplyUnitaryTol = 1e-9;

void check_widths(int control_width, int target_width, const char* who) {
    if (control_width < 1 || target_width < 0) {
        throw ValidationError(std::string(who) + ": bad register widths n=" +
                              std::to_string(control_width) + ", m=" +
                              std::to_string(target_width));
    }
    if (control_width + target_width > kMaxSimQubits) {
        throw CapacityError(std::string(who) + ": " +
                            std::to_string(control_width + target_width) +
                            " qubits exceed the simulation cap of " +
                            std::to_string(kMaxSimQubits));
    }
}

void check_state_dims(const FcgSpec& spec, const SimState& s, const char* who) {
    if (spec.control_width() != s.control_width || spec.target_width() != s.target_width) {
        throw ShapeError(std::string(who) + ": spec is n=" +
                         std::to_string(spec.control_width()) + ", m=" +
                         std::to_string(spec.target_width()) + " but state is n=" +
                         std::to_string(s.control_width) + ", m=" +
                         std::to_string(s.target_width));
    }
}

// slice <- block * slice, counting one multiply-add per inner step.
void transform_slice(const ComplexMatrix& block, std::span<Complex> slice,
                     std::vector<Complex>& scratch, std::uint64_t& multiply_adds) {
    const std::size_t m = block.rows();
    for (std::size_t r = 0; r < m; ++r) {
        Complex acc{};
        for (std::size_t c = 0; c < m; ++c) {
            acc += block(r, c) * slice[c];
        }
        scratch[r] = acc;
    }
    multiply_adds += static_cast<std::uint64_t>(m) * m;
    for (std::size_t r = 0; r < m; ++r) {
        slice[r] = scratch[r];
    }
}

// In-place 2x2 gate on one qubit; bit counts from the least significant end.
void apply_single_qubit(std::span<Complex> amps, int bit, const ComplexMatrix& g) {
    const std::uint64_t stride = std::uint64_t{1} << bit;
    const Complex a = g(0, 0), b = g(0, 1), c = g(1, 0), d = g(1, 1);
    for (std::uint64_t base = 0; base < amps.size(); base += 2 * stride) {
        for (std::uint64_t k = 0; k < stride; ++k) {
            Complex& lo = amps[base + k];
            Complex& hi = amps[base + k + stride];
            const Complex v0 = lo, v1 = hi;
            lo = a * v0 + b * v1;
            hi = c * v0 + d * v1;
        }
    }
}

// In-place multi-controlled X; bits count from the least significant end.
void apply_controlled_x(std::span<Complex> amps, std::uint64_t control_mask, int target_bit) {
    const std::uint64_t target_mask = std::uint64_t{1} << target_bit;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & control_mask) == control_mask && !(i & target_mask)) {
            std::swap(amps[i], amps[i | target_mask]);
        }
    }
}

}  // namespace

SimState make_basis_state(int control_width, int target_width, std::uint64_t basis_index) {
    check_widths(control_width, target_width, "make_basis_state");
    const std::uint64_t dim = std::uint64_t{1} << (control_width + target_width);
    return SimState{control_width, target_width, StateVector::basis(dim, basis_index)};
}

SimState apply_full(const ComplexMatrix& g, const SimState& s) {
    if (g.rows() != s.state.dim() || g.cols() != s.state.dim()) {
        throw ShapeError("apply_full: gate is " + std::to_string(g.rows()) + "x" +
                         std::to_string(g.cols()) + " but state dimension is " +
                         std::to_string(s.state.dim()));
    }
    if (!is_unitary(g, kApplyUnitaryTol)) {
        throw ValidationError("apply_full: gate is not unitary within " +
                              std::to_string(kApplyUnitaryTol));
    }
    return SimState{s.control_width, s.target_width,
                    StateVector(matvec(g, s.state.amplitudes()))};
}

SimState apply_fcg_blockwise(const FcgSpec& spec, const SimState& s,
                             std::uint64_t* multiply_adds) {
    check_state_dims(spec, s, "apply_fcg_blockwise");
    SimState out = s;
    const std::uint64_t m = std::uint64_t{1} << spec.target_width();
    std::vector<Complex> scratch(m);
    std::uint64_t count = 0;
    auto amps = out.state.mutable_amplitudes();
    for (std::uint64_t y = 0; y < spec.table().size(); ++y) {
        if (spec.table().value(y)) {
            transform_slice(spec.unitary(), amps.subspan(y * m, m), scratch, count);
        }
    }
    if (multiply_adds) {
        *multiply_adds += count;
    }
    return out;
}

SimState apply_conditional_blockwise(const ConditionalSpec& spec, const SimState& s,
                                     std::uint64_t* multiply_adds) {
    if (spec.control_width() != s.control_width || spec.target_width() != s.target_width) {
        throw ShapeError("apply_conditional_blockwise: spec does not match state registers");
    }
    SimState out = s;
    const std::uint64_t m = std::uint64_t{1} << spec.target_width();
    std::vector<Complex> scratch(m);
    std::uint64_t count = 0;
    auto amps = out.state.mutable_amplitudes();
    for (std::uint64_t y = 0; y < spec.table().size(); ++y) {
        const ComplexMatrix& branch =
            spec.table().value(y) ? spec.then_branch() : spec.else_branch();
        transform_slice(branch, amps.subspan(y * m, m), scratch, count);
    }
    if (multiply_adds) {
        *multiply_adds += count;
    }
    return out;
}

AncillaOracleResult simulate_oracle_ancilla(const FcgSpec& spec, const SimState& s) {
    check_state_dims(spec, s, "simulate_oracle_ancilla");
    check_widths(s.control_width, s.target_width + 1, "simulate_oracle_ancilla");
    const std::uint64_t n = spec.table().size();
    const std::uint64_t m = std::uint64_t{1} << spec.target_width();
    const auto in = s.state.amplitudes();

    // Extended layout |x>|a>|phi>: index = x*2M + a*M + s, ancilla in |0>.
    std::vector<Complex> ext(n * 2 * m);
    for (std::uint64_t x = 0; x < n; ++x) {
        for (std::uint64_t t = 0; t < m; ++t) {
            ext[x * 2 * m + t] = in[x * m + t];
        }
    }

    const auto oracle_flip = [&] {
        // O_f (x) I_M: |x>|a> -> |x>|a xor f(x)>, i.e. swap the two ancilla
        // slices wherever f marks x.
        for (std::uint64_t x = 0; x < n; ++x) {
            if (spec.table().value(x)) {
                for (std::uint64_t t = 0; t < m; ++t) {
                    std::swap(ext[x * 2 * m + t], ext[x * 2 * m + m + t]);
                }
            }
        }
    };

    oracle_flip();
    // I_N (x) CU: U on the target wherever the ancilla is |1>.
    std::vector<Complex> scratch(m);
    std::uint64_t ignored = 0;
    for (std::uint64_t x = 0; x < n; ++x) {
        transform_slice(spec.unitary(), std::span<Complex>(ext).subspan(x * 2 * m + m, m),
                        scratch, ignored);
    }
    oracle_flip();

    std::vector<Complex> marginal(n * m);
    double zero_mass = 0.0;
    for (std::uint64_t x = 0; x < n; ++x) {
        for (std::uint64_t t = 0; t < m; ++t) {
            const Complex amp = ext[x * 2 * m + t];
            marginal[x * m + t] = amp;
            zero_mass += std::norm(amp);
        }
    }
    return AncillaOracleResult{
        SimState{s.control_width, s.target_width, StateVector(std::move(marginal))},
        zero_mass};
}

GroverResult grover_run(const TruthTable& table, std::uint64_t iterations) {
    if (table.width() > kMaxGroverWidth) {
        throw CapacityError("grover_run: width " + std::to_string(table.width()) +
                            " exceeds the cap of " + std::to_string(kMaxGroverWidth));
    }
    const std::uint64_t n = table.size();
    const std::uint64_t marked = table.marked_count();
    if (marked == 0) {
        throw DomainError("grover_run: the marked set is empty");
    }

    std::vector<Complex> amps(n, Complex{1.0 / std::sqrt(static_cast<double>(n)), 0.0});
    const auto marked_mass = [&] {
        double p = 0.0;
        for (std::uint64_t y = 0; y < n; ++y) {
            if (table.value(y)) {
                p += std::norm(amps[y]);
            }
        }
        return p;
    };

    GroverResult result;
    result.marked_probability.push_back(marked_mass());
    for (std::uint64_t round = 0; round < iterations; ++round) {
        for (std::uint64_t y = 0; y < n; ++y) {
            if (table.value(y)) {
                amps[y] = -amps[y];
            }
        }
        // Diffusion 2|s><s| - I without materializing it: reflect about the
        // mean amplitude.
        Complex sum{};
        for (const Complex& a : amps) {
            sum += a;
        }
        const Complex twice_mean = 2.0 * sum / static_cast<double>(n);
        for (Complex& a : amps) {
            a = twice_mean - a;
        }
        result.marked_probability.push_back(marked_mass());
    }

    result.probabilities.resize(n);
    for (std::uint64_t y = 0; y < n; ++y) {
        result.probabilities[y] = std::norm(amps[y]);
    }
    return result;
}

std::uint64_t grover_suggested_iterations(const TruthTable& table) {
    const std::uint64_t marked = table.marked_count();
    if (marked == 0) {
        throw DomainError("grover_suggested_iterations: the marked set is empty");
    }
    const double ratio = static_cast<double>(table.size()) / static_cast<double>(marked);
    return static_cast<std::uint64_t>(std::floor(std::numbers::pi / 4.0 * std::sqrt(ratio)));
}

SimState run_circuit(const Circuit& circuit, const SimState& initial) {
    check_widths(circuit.control_width, circuit.target_width, "run_circuit");
    if (initial.control_width != circuit.control_width ||
        initial.target_width != circuit.target_width) {
        throw ShapeError("run_circuit: initial state does not match the circuit registers");
    }
    const int total = circuit.control_width + circuit.target_width;

    SimState current = initial;
    for (std::size_t index = 0; index < circuit.steps.size(); ++index) {
        const auto fail = [index](const std::string& why) -> ShapeError {
            return ShapeError("run_circuit: step " + std::to_string(index) + ": " + why);
        };
        std::visit(
            [&](const auto& step) {
                using T = std::decay_t<decltype(step)>;
                if constexpr (std::is_same_v<T, GateStep>) {
                    const ComplexMatrix* g = standard_gate(step.name);
                    if (!g) {
                        throw fail("unknown gate '" + step.name + "'");
                    }
                    const std::size_t arity =
                        step.name == "CX" ? 2 : (step.name == "CCX" ? 3 : 1);
                    if (step.qubits.size() != arity) {
                        throw fail("gate " + step.name + " takes " + std::to_string(arity) +
                                   " qubits, got " + std::to_string(step.qubits.size()));
                    }
                    std::uint64_t seen = 0;
                    for (int q : step.qubits) {
                        if (q < 0 || q >= total) {
                            throw fail("qubit " + std::to_string(q) + " out of range for " +
                                       std::to_string(total) + " wires");
                        }
                        if (seen & (std::uint64_t{1} << q)) {
                            throw fail("repeated qubit " + std::to_string(q));
                        }
                        seen |= std::uint64_t{1} << q;
                    }
                    auto amps = current.state.mutable_amplitudes();
                    // Wire q is bit (total-1-q) of the flattened index.
                    const auto bit_of = [total](int q) { return total - 1 - q; };
                    if (step.name == "CX" || step.name == "CCX") {
                        std::uint64_t mask = 0;
                        for (std::size_t k = 0; k + 1 < step.qubits.size(); ++k) {
                            mask |= std::uint64_t{1} << bit_of(step.qubits[k]);
                        }
                        apply_controlled_x(amps, mask, bit_of(step.qubits.back()));
                    } else if (step.name != "I") {
                        apply_single_qubit(amps, bit_of(step.qubits[0]), *g);
                    }
                } else if constexpr (std::is_same_v<T, FcgStep>) {
                    if (step.spec.control_width() != circuit.control_width ||
                        step.spec.target_width() != circuit.target_width) {
                        throw fail("controlled-gate spec does not match the registers");
                    }
                    current = apply_fcg_blockwise(step.spec, current);
                } else if constexpr (std::is_same_v<T, ConditionalStep>) {
                    if (step.spec.control_width() != circuit.control_width ||
                        step.spec.target_width() != circuit.target_width) {
                        throw fail("conditional spec does not match the registers");
                    }
                    current = apply_conditional_blockwise(step.spec, current);
                } else {
                    static_assert(std::is_same_v<T, PhaseOracleStep>);
                    if (step.table.width() != circuit.control_width) {
                        throw fail("phase-oracle table width does not match the control register");
                    }
                    const Complex factor = phase_oracle_factor(step.phase);
                    auto amps = current.state.mutable_amplitudes();
                    const std::uint64_t m = std::uint64_t{1} << circuit.target_width;
                    for (std::uint64_t x = 0; x < step.table.size(); ++x) {
                        if (!step.table.value(x)) {
                            continue;
                        }
                        for (std::uint64_t t = 0; t < m; ++t) {
                            amps[x * m + t] *= factor;
                        }
                    }
                }
            },
            circuit.steps[index]);
    }
    return current;
}

}  // namespace fcg
