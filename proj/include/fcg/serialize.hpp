#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "fcg/gates.hpp"
#include "fcg/simulator.hpp"
#include "fcg/truth_table.hpp"
#include "fcg/verify.hpp"

// JSON formats. All emitters produce objects whose keys serialize in sorted
// order and whose doubles use shortest round-trip formatting, so identical
// inputs give byte-identical text. Readers throw SchemaError on structural
// problems; value-level validation is delegated to the constructors.

namespace fcg {

// {rows, cols, entries: [[re, im], ...]} in row-major order.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

// One row per line, cells "re+imj" (or "re-imj"), comma separated.
std::string matrix_to_csv(const ComplexMatrix& m);

// {n, bits: [...], hex}; the reader accepts bits, hex, or both (consistent).
nlohmann::json truth_table_to_json(const TruthTable& t);
TruthTable truth_table_from_json(const nlohmann::json& j);

// {n, m, blocks: {"y": matrix, ...}} with only non-identity blocks listed.
nlohmann::json block_gate_to_json(const BlockDiagonalGate& g);
BlockDiagonalGate block_gate_from_json(const nlohmann::json& j);

// {n, m, amplitudes: [[re, im], ...]}.
nlohmann::json state_to_json(const SimState& s);
SimState state_from_json(const nlohmann::json& j);

// [{index, bits, probability}, ...] for every basis state, bits rendered
// control register first, most significant bit first.
nlohmann::json probabilities_to_json(const SimState& s);

// {check, pass, max_deviation, witness} with witness null on pass.
nlohmann::json report_to_json(const VerificationReport& r);

// Circuit schema, version 1:
//   {version: 1, n, m, steps: [...]}
// where each step is one of
//   {type: "gate", name, qubits: [...]}
//   {type: "fcg", pred|table, u}
//   {type: "conditional", pred|table, then, else}
//   {type: "phase_oracle", pred|table, phase?}
// u/then/else are a gate name (possibly "A,B" tensored) or an inline matrix
// object; pred is predicate source compiled at width n; phase is radians or
// an angle literal like "pi", defaulting to pi.
Circuit circuit_from_json(const nlohmann::json& j);
nlohmann::json circuit_to_json(const Circuit& c);

// "pi", "-pi", "pi/2", "3pi/4", "2*pi", or plain decimal radians.
double parse_angle(const std::string& text);

// Basis index rendered as control bits then target bits, MSB first.
std::string basis_bitstring(std::uint64_t index, int control_width, int target_width);

// Whole-file helpers; path "-" means stdout for writes. Throw IoError.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Wraps nlohmann parsing, converting parse failures to SchemaError.
nlohmann::json parse_json_text(const std::string& text, const std::string& label);

}  // namespace fcg
