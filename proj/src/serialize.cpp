#include "fcg/serialize.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <system_error>

#include "fcg/errors.hpp"
#include "fcg/predicate.hpp"

namespace fcg {

namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* key, const char* ctx) {
    if (!j.is_object()) throw SchemaError(std::string(ctx) + ": expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(std::string(ctx) + ": missing field '" + key + "'");
    return *it;
}

std::int64_t int_field(const nlohmann::json& j, const char* key, const char* ctx) {
    const nlohmann::json& v = field(j, key, ctx);
    if (!v.is_number_integer()) {
        throw SchemaError(std::string(ctx) + ": field '" + key + "' must be an integer");
    }
    return v.get<std::int64_t>();
}

// [[re, im], ...] -> amplitudes; shared by matrices and states.
std::vector<Complex> complex_list(const nlohmann::json& arr, const char* ctx) {
    if (!arr.is_array()) throw SchemaError(std::string(ctx) + ": expected an array of [re, im]");
    std::vector<Complex> out;
    out.reserve(arr.size());
    for (const auto& cell : arr) {
        if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number()) {
            throw SchemaError(std::string(ctx) + ": entry " + std::to_string(out.size()) +
                              " is not a [re, im] number pair");
        }
        out.emplace_back(cell[0].get<double>(), cell[1].get<double>());
    }
    return out;
}

nlohmann::json complex_list_json(std::span<const Complex> values) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Complex& v : values) arr.push_back({v.real(), v.imag()});
    return arr;
}

std::string shortest_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["entries"] = complex_list_json(m.entries());
    return j;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    const std::int64_t rows = int_field(j, "rows", "matrix");
    const std::int64_t cols = int_field(j, "cols", "matrix");
    if (rows <= 0 || cols <= 0) throw SchemaError("matrix: rows and cols must be positive");
    std::vector<Complex> entries = complex_list(field(j, "entries", "matrix"), "matrix");
    if (entries.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
        throw SchemaError("matrix: " + std::to_string(rows) + "x" + std::to_string(cols) +
                          " needs " + std::to_string(rows * cols) + " entries, got " +
                          std::to_string(entries.size()));
    }
    return ComplexMatrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols),
                         std::move(entries));
}

std::string matrix_to_csv(const ComplexMatrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j != 0) out += ',';
            const Complex& v = m(i, j);
            out += shortest_double(v.real());
            out += std::signbit(v.imag()) ? '-' : '+';
            out += shortest_double(std::abs(v.imag()));
            out += 'j';
        }
        out += '\n';
    }
    return out;
}

nlohmann::json truth_table_to_json(const TruthTable& t) {
    nlohmann::json j;
    j["n"] = t.width();
    j["bits"] = t.bits();
    j["hex"] = t.to_hex();
    return j;
}

TruthTable truth_table_from_json(const nlohmann::json& j) {
    const std::int64_t n = int_field(j, "n", "truth table");
    if (n < 1 || n > kMaxControlWidth) {
        throw SchemaError("truth table: n must be in [1, " + std::to_string(kMaxControlWidth) +
                          "], got " + std::to_string(n));
    }
    const bool has_bits = j.contains("bits");
    const bool has_hex = j.contains("hex");
    if (!has_bits && !has_hex) throw SchemaError("truth table: need 'bits' or 'hex'");

    std::optional<TruthTable> from_bits;
    if (has_bits) {
        const nlohmann::json& arr = j["bits"];
        if (!arr.is_array()) throw SchemaError("truth table: 'bits' must be an array");
        std::vector<std::uint8_t> bits;
        bits.reserve(arr.size());
        for (const auto& b : arr) {
            if (!b.is_number_integer() || (b.get<std::int64_t>() != 0 && b.get<std::int64_t>() != 1)) {
                throw SchemaError("truth table: bit " + std::to_string(bits.size()) +
                                  " is not 0 or 1");
            }
            bits.push_back(static_cast<std::uint8_t>(b.get<std::int64_t>()));
        }
        from_bits = TruthTable(static_cast<int>(n), std::move(bits));
    }
    std::optional<TruthTable> from_hex;
    if (has_hex) {
        const nlohmann::json& h = j["hex"];
        if (!h.is_string()) throw SchemaError("truth table: 'hex' must be a string");
        from_hex = TruthTable::from_hex(static_cast<int>(n), h.get<std::string>());
    }
    if (from_bits && from_hex && !(*from_bits == *from_hex)) {
        throw SchemaError("truth table: 'bits' and 'hex' disagree");
    }
    return from_bits ? *from_bits : *from_hex;
}

nlohmann::json block_gate_to_json(const BlockDiagonalGate& g) {
    nlohmann::json blocks = nlohmann::json::object();
    for (const auto& [y, mat] : g.explicit_blocks()) {
        blocks[std::to_string(y)] = matrix_to_json(mat);
    }
    nlohmann::json j;
    j["n"] = g.control_width();
    j["m"] = g.target_width();
    j["blocks"] = blocks;
    return j;
}

BlockDiagonalGate block_gate_from_json(const nlohmann::json& j) {
    const std::int64_t n = int_field(j, "n", "block gate");
    const std::int64_t m = int_field(j, "m", "block gate");
    const nlohmann::json& blocks = field(j, "blocks", "block gate");
    if (!blocks.is_object()) throw SchemaError("block gate: 'blocks' must be an object");
    std::map<std::uint64_t, ComplexMatrix> parsed;
    for (const auto& [key, value] : blocks.items()) {
        std::uint64_t y = 0;
        const char* begin = key.data();
        const char* end = begin + key.size();
        auto [ptr, ec] = std::from_chars(begin, end, y);
        if (ec != std::errc{} || ptr != end) {
            throw SchemaError("block gate: block key '" + key + "' is not an unsigned integer");
        }
        parsed.emplace(y, matrix_from_json(value));
    }
    return BlockDiagonalGate(static_cast<int>(n), static_cast<int>(m), std::move(parsed));
}

nlohmann::json state_to_json(const SimState& s) {
    nlohmann::json j;
    j["n"] = s.control_width;
    j["m"] = s.target_width;
    j["amplitudes"] = complex_list_json(s.state.amplitudes());
    return j;
}

SimState state_from_json(const nlohmann::json& j) {
    const std::int64_t n = int_field(j, "n", "state");
    const std::int64_t m = int_field(j, "m", "state");
    if (n < 0 || m < 0 || n + m < 1 || n + m > kMaxSimQubits) {
        throw SchemaError("state: need 1 <= n + m <= " + std::to_string(kMaxSimQubits) +
                          " with n, m >= 0");
    }
    std::vector<Complex> amps = complex_list(field(j, "amplitudes", "state"), "state");
    if (amps.size() != (std::uint64_t{1} << (n + m))) {
        throw SchemaError("state: " + std::to_string(n + m) + " qubits need " +
                          std::to_string(std::uint64_t{1} << (n + m)) + " amplitudes, got " +
                          std::to_string(amps.size()));
    }
    SimState s;
    s.control_width = static_cast<int>(n);
    s.target_width = static_cast<int>(m);
    s.state = StateVector(std::move(amps));
    return s;
}

nlohmann::json probabilities_to_json(const SimState& s) {
    nlohmann::json arr = nlohmann::json::array();
    const auto amps = s.state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        nlohmann::json row;
        row["index"] = i;
        row["bits"] = basis_bitstring(i, s.control_width, s.target_width);
        row["probability"] = std::norm(amps[i]);
        arr.push_back(std::move(row));
    }
    return arr;
}

nlohmann::json report_to_json(const VerificationReport& r) {
    nlohmann::json j;
    j["check"] = r.check;
    j["pass"] = r.pass;
    j["max_deviation"] = r.max_deviation;
    if (r.witness) {
        j["witness"] = {r.witness->first, r.witness->second};
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

namespace {

TruthTable step_table(const nlohmann::json& step, int n, const char* ctx) {
    const bool has_pred = step.contains("pred");
    const bool has_table = step.contains("table");
    if (has_pred == has_table) {
        throw SchemaError(std::string(ctx) + ": provide exactly one of 'pred' and 'table'");
    }
    if (has_pred) {
        const nlohmann::json& p = step["pred"];
        if (!p.is_string()) throw SchemaError(std::string(ctx) + ": 'pred' must be a string");
        return compile_truth_table(p.get<std::string>(), n);
    }
    const nlohmann::json& t = step["table"];
    if (t.is_string()) return TruthTable::from_hex(n, t.get<std::string>());
    return truth_table_from_json(t);
}

ComplexMatrix step_unitary(const nlohmann::json& step, const char* key, const char* ctx) {
    const nlohmann::json& u = field(step, key, ctx);
    if (u.is_string()) return tensored_gate(u.get<std::string>());
    if (u.is_object()) return matrix_from_json(u);
    throw SchemaError(std::string(ctx) + ": '" + key +
                      "' must be a gate name string or a matrix object");
}

double step_phase(const nlohmann::json& step, const char* ctx) {
    if (!step.contains("phase")) return std::numbers::pi;
    const nlohmann::json& p = step["phase"];
    if (p.is_number()) return p.get<double>();
    if (p.is_string()) return parse_angle(p.get<std::string>());
    throw SchemaError(std::string(ctx) + ": 'phase' must be a number or an angle string");
}

}  // namespace

Circuit circuit_from_json(const nlohmann::json& j) {
    if (int_field(j, "version", "circuit") != 1) {
        throw SchemaError("circuit: unsupported version (expected 1)");
    }
    const std::int64_t n = int_field(j, "n", "circuit");
    const std::int64_t m = int_field(j, "m", "circuit");
    if (n < 0 || m < 0 || n + m < 1 || n + m > kMaxSimQubits) {
        throw SchemaError("circuit: need 1 <= n + m <= " + std::to_string(kMaxSimQubits) +
                          " with n, m >= 0");
    }
    Circuit c;
    c.control_width = static_cast<int>(n);
    c.target_width = static_cast<int>(m);

    const nlohmann::json& steps = field(j, "steps", "circuit");
    if (!steps.is_array()) throw SchemaError("circuit: 'steps' must be an array");
    for (std::size_t k = 0; k < steps.size(); ++k) {
        const nlohmann::json& step = steps[k];
        const std::string ctx = "circuit step " + std::to_string(k);
        const nlohmann::json& type = field(step, "type", ctx.c_str());
        if (!type.is_string()) throw SchemaError(ctx + ": 'type' must be a string");
        const std::string t = type.get<std::string>();

        if (t == "gate") {
            GateStep g;
            const nlohmann::json& name = field(step, "name", ctx.c_str());
            if (!name.is_string()) throw SchemaError(ctx + ": 'name' must be a string");
            g.name = name.get<std::string>();
            const nlohmann::json& qubits = field(step, "qubits", ctx.c_str());
            if (!qubits.is_array()) throw SchemaError(ctx + ": 'qubits' must be an array");
            for (const auto& q : qubits) {
                if (!q.is_number_integer()) {
                    throw SchemaError(ctx + ": qubit indices must be integers");
                }
                g.qubits.push_back(static_cast<int>(q.get<std::int64_t>()));
            }
            c.steps.emplace_back(std::move(g));
        } else if (t == "fcg") {
            c.steps.emplace_back(FcgStep{FcgSpec(step_table(step, c.control_width, ctx.c_str()),
                                                 step_unitary(step, "u", ctx.c_str()))});
        } else if (t == "conditional") {
            c.steps.emplace_back(ConditionalStep{
                ConditionalSpec(step_table(step, c.control_width, ctx.c_str()),
                                step_unitary(step, "then", ctx.c_str()),
                                step_unitary(step, "else", ctx.c_str()))});
        } else if (t == "phase_oracle") {
            c.steps.emplace_back(PhaseOracleStep{step_table(step, c.control_width, ctx.c_str()),
                                                 step_phase(step, ctx.c_str())});
        } else {
            throw SchemaError(ctx + ": unknown type '" + t +
                              "'; expected gate, fcg, conditional, or phase_oracle");
        }
    }
    return c;
}

nlohmann::json circuit_to_json(const Circuit& c) {
    nlohmann::json j;
    j["version"] = 1;
    j["n"] = c.control_width;
    j["m"] = c.target_width;
    nlohmann::json steps = nlohmann::json::array();
    for (const CircuitStep& step : c.steps) {
        nlohmann::json s;
        if (const auto* g = std::get_if<GateStep>(&step)) {
            s["type"] = "gate";
            s["name"] = g->name;
            s["qubits"] = g->qubits;
        } else if (const auto* f = std::get_if<FcgStep>(&step)) {
            s["type"] = "fcg";
            s["table"] = truth_table_to_json(f->spec.table());
            s["u"] = matrix_to_json(f->spec.unitary());
        } else if (const auto* cond = std::get_if<ConditionalStep>(&step)) {
            s["type"] = "conditional";
            s["table"] = truth_table_to_json(cond->spec.table());
            s["then"] = matrix_to_json(cond->spec.then_branch());
            s["else"] = matrix_to_json(cond->spec.else_branch());
        } else if (const auto* p = std::get_if<PhaseOracleStep>(&step)) {
            s["type"] = "phase_oracle";
            s["table"] = truth_table_to_json(p->table);
            s["phase"] = p->phase;
        }
        steps.push_back(std::move(s));
    }
    j["steps"] = std::move(steps);
    return j;
}

double parse_angle(const std::string& text) {
    std::size_t pos = 0;
    std::size_t end = text.size();
    while (pos < end && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    while (end > pos && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    if (pos == end) throw ParseError("angle: empty input", pos, {"number", "pi"});

    double sign = 1.0;
    if (text[pos] == '+' || text[pos] == '-') {
        if (text[pos] == '-') sign = -1.0;
        ++pos;
    }

    auto starts_with_pi = [&](std::size_t at) {
        return at + 2 <= end && text[at] == 'p' && text[at + 1] == 'i';
    };
    auto parse_number = [&](std::size_t& at) -> double {
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text.data() + at, text.data() + end, value);
        if (ec != std::errc{}) {
            throw ParseError("angle: expected a number at offset " + std::to_string(at), at,
                             {"number", "pi"});
        }
        at = static_cast<std::size_t>(ptr - text.data());
        return value;
    };

    double value = 0.0;
    if (starts_with_pi(pos)) {
        value = std::numbers::pi;
        pos += 2;
    } else {
        value = parse_number(pos);
        if (pos < end && text[pos] == '*') ++pos;
        if (starts_with_pi(pos)) {
            value *= std::numbers::pi;
            pos += 2;
        } else if (pos != end) {
            throw ParseError("angle: unexpected trailing input at offset " + std::to_string(pos),
                             pos, {"pi", "end of input"});
        }
    }
    if (pos < end && text[pos] == '/') {
        ++pos;
        const std::size_t at = pos;
        const double divisor = parse_number(pos);
        if (divisor == 0.0) throw DomainError("angle: division by zero at offset " +
                                              std::to_string(at));
        value /= divisor;
    }
    if (pos != end) {
        throw ParseError("angle: unexpected trailing input at offset " + std::to_string(pos), pos,
                         {"end of input"});
    }
    return sign * value;
}

std::string basis_bitstring(std::uint64_t index, int control_width, int target_width) {
    const int total = control_width + target_width;
    std::string out(static_cast<std::size_t>(total), '0');
    for (int b = 0; b < total; ++b) {
        if ((index >> (total - 1 - b)) & 1u) out[static_cast<std::size_t>(b)] = '1';
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("read failed on '" + path + "'");
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed on '" + path + "'");
}

nlohmann::json parse_json_text(const std::string& text, const std::string& label) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw SchemaError(label + ": not valid JSON");
    return j;
}

}  // namespace fcg
