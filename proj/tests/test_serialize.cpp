#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <string>

#include <json.hpp>

#include "fcg/errors.hpp"
#include "fcg/gates.hpp"
#include "fcg/predicate.hpp"
#include "fcg/random.hpp"
#include "fcg/serialize.hpp"
#include "fcg/simulator.hpp"

using namespace fcg;
using nlohmann::json;

namespace {

std::string fixture(const char* name) {
    return std::string(FCG_FIXTURE_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("matrix JSON round-trips bit-exactly") {
    RandomSource rng(61);
    ComplexMatrix m(3, 4);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            m(i, j) = Complex{rng.next_gaussian() * 1e3, rng.next_gaussian() * 1e-7};
    m(0, 0) = Complex{1.0 / 3.0, std::sqrt(2.0)};
    m(0, 1) = Complex{1e-300, -0.1};
    m(0, 2) = Complex{5e-324, -0.0};

    const std::string text = matrix_to_json(m).dump();
    const ComplexMatrix back = matrix_from_json(json::parse(text));
    CHECK(back == m);

    // Identical inputs give byte-identical text.
    CHECK(matrix_to_json(m).dump() == text);
}

TEST_CASE("matrix JSON rejects malformed documents") {
    CHECK_THROWS_AS(matrix_from_json(json::parse("{}")), SchemaError);
    CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"rows":2,"cols":2,"entries":[[1,0]]})")),
                    SchemaError);
    CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"rows":0,"cols":2,"entries":[]})")),
                    SchemaError);
    CHECK_THROWS_AS(
        matrix_from_json(json::parse(R"({"rows":1,"cols":1,"entries":[[1]]})")),
        SchemaError);
    CHECK_THROWS_AS(
        matrix_from_json(json::parse(R"({"rows":1,"cols":1,"entries":[["a",0]]})")),
        SchemaError);
    CHECK_THROWS_AS(matrix_from_json(json::parse("[1,2,3]")), SchemaError);
}

TEST_CASE("matrix CSV cells read re+imj") {
    ComplexMatrix m(2, 2);
    m(0, 0) = Complex{1.0, 0.0};
    m(0, 1) = Complex{0.0, -1.0};
    m(1, 0) = Complex{-0.5, 0.25};
    m(1, 1) = Complex{};
    CHECK(matrix_to_csv(m) == "1+0j,0-1j\n-0.5+0.25j,0+0j\n");
}

TEST_CASE("truth table JSON carries bits and hex consistently") {
    const TruthTable t = compile_truth_table("x != 0", 2);
    const json j = truth_table_to_json(t);
    CHECK(j["n"] == 2);
    CHECK(j["hex"] == "e");
    CHECK(truth_table_from_json(j) == t);

    CHECK(truth_table_from_json(json::parse(R"({"n":2,"bits":[0,1,1,1]})")) == t);
    CHECK(truth_table_from_json(json::parse(R"({"n":2,"hex":"e"})")) == t);
    CHECK_THROWS_AS(truth_table_from_json(json::parse(R"({"n":2,"bits":[0,1,1,1],"hex":"f"})")),
                    SchemaError);
    CHECK_THROWS_AS(truth_table_from_json(json::parse(R"({"n":2})")), SchemaError);
    CHECK_THROWS_AS(truth_table_from_json(json::parse(R"({"n":2,"bits":[0,1,1,2]})")),
                    SchemaError);
    CHECK_THROWS_AS(truth_table_from_json(json::parse(R"({"n":0,"bits":[]})")), SchemaError);
    CHECK_THROWS_AS(truth_table_from_json(json::parse(R"({"n":2,"bits":[0,1]})")),
                    ValidationError);
}

TEST_CASE("block gate JSON lists only the non-identity blocks") {
    const BlockDiagonalGate g = fcg_matrix(FcgSpec(compile_truth_table("x != 0", 2), gate_x()));
    const json j = block_gate_to_json(g);
    CHECK(j["n"] == 2);
    CHECK(j["m"] == 1);
    CHECK(j["blocks"].size() == 3);
    CHECK(j["blocks"].contains("1"));
    CHECK_FALSE(j["blocks"].contains("0"));

    const BlockDiagonalGate back = block_gate_from_json(j);
    CHECK(back.dense() == g.dense());

    json bad = j;
    bad["blocks"]["zap"] = matrix_to_json(gate_x());
    CHECK_THROWS_AS(block_gate_from_json(bad), SchemaError);
}

TEST_CASE("state JSON round-trips and validates") {
    RandomSource rng(62);
    std::vector<Complex> amps(8);
    for (Complex& a : amps) a = Complex{rng.next_gaussian(), rng.next_gaussian()};
    SimState s;
    s.control_width = 2;
    s.target_width = 1;
    s.state = StateVector::normalized(std::move(amps));

    const SimState back = state_from_json(state_to_json(s));
    CHECK(back.control_width == 2);
    CHECK(back.target_width == 1);
    CHECK(back.state == s.state);

    CHECK_THROWS_AS(state_from_json(json::parse(R"({"n":1,"m":1,"amplitudes":[[1,0]]})")),
                    SchemaError);
    CHECK_THROWS_AS(state_from_json(json::parse(R"({"n":0,"m":0,"amplitudes":[[1,0]]})")),
                    SchemaError);
    CHECK_THROWS_AS(state_from_json(json::parse(R"({"n":20,"m":10,"amplitudes":[]})")),
                    SchemaError);
}

TEST_CASE("probabilities view renders indices and bitstrings") {
    const SimState s = make_basis_state(2, 1, 5);
    const json p = probabilities_to_json(s);
    REQUIRE(p.size() == 8);
    CHECK(p[5]["index"] == 5);
    CHECK(p[5]["bits"] == "101");
    CHECK(p[5]["probability"] == 1.0);
    CHECK(p[0]["probability"] == 0.0);
    CHECK(p[3]["bits"] == "011");
}

TEST_CASE("verification reports serialize with an honest witness field") {
    VerificationReport pass;
    pass.check = "unitary";
    pass.pass = true;
    pass.max_deviation = 1e-16;
    const json jp = report_to_json(pass);
    CHECK(jp["witness"].is_null());
    CHECK(jp["pass"] == true);

    VerificationReport fail = pass;
    fail.pass = false;
    fail.witness = {std::uint64_t{2}, std::uint64_t{7}};
    const json jf = report_to_json(fail);
    CHECK(jf["witness"][0] == 2);
    CHECK(jf["witness"][1] == 7);
}

TEST_CASE("circuit files load, run, and round-trip") {
    const json j = parse_json_text(read_text_file(fixture("cnot_fcg.json")), "cnot_fcg");
    const Circuit c = circuit_from_json(j);
    CHECK(c.control_width == 1);
    CHECK(c.target_width == 1);
    REQUIRE(c.steps.size() == 1);

    const SimState in = state_from_json(
        parse_json_text(read_text_file(fixture("superposed_control.json")), "state"));
    const SimState out = run_circuit(c, in);
    CHECK(std::abs(std::abs(out.state[0]) * std::abs(out.state[0]) - 0.5) <= 1e-12);
    CHECK(std::abs(std::abs(out.state[3]) * std::abs(out.state[3]) - 0.5) <= 1e-12);
    CHECK(std::abs(out.state[1]) <= 1e-15);
    CHECK(std::abs(out.state[2]) <= 1e-15);

    // Round-trip through JSON preserves behaviour.
    const Circuit again = circuit_from_json(circuit_to_json(c));
    const SimState out2 = run_circuit(again, in);
    CHECK(out2.state == out.state);
}

TEST_CASE("the OR circuit fixture computes x or y into the third wire") {
    const Circuit c = circuit_from_json(
        parse_json_text(read_text_file(fixture("qor.json")), "qor"));
    for (std::uint64_t x = 0; x < 2; ++x) {
        for (std::uint64_t y = 0; y < 2; ++y) {
            const SimState in = make_basis_state(2, 1, (x << 2) | (y << 1));
            const SimState out = run_circuit(c, in);
            const std::uint64_t expect = (x << 2) | (y << 1) | (x | y);
            CHECK(std::abs(out.state[expect] - Complex{1.0, 0.0}) <= 1e-12);
        }
    }
}

TEST_CASE("the conditional circuit fixture splits on the marked block") {
    const Circuit c = circuit_from_json(
        parse_json_text(read_text_file(fixture("silq_conditional.json")), "silq"));
    const SimState hit = run_circuit(c, make_basis_state(3, 2, 0));
    for (int t = 0; t < 4; ++t) CHECK(std::abs(hit.state[t] - Complex{0.5, 0.0}) <= 1e-12);
    const SimState miss = run_circuit(c, make_basis_state(3, 2, 4));
    CHECK(std::abs(miss.state[7] - Complex{1.0, 0.0}) <= 1e-12);
}

TEST_CASE("circuit schema violations are rejected") {
    const char* base = R"({"version":1,"n":1,"m":1,"steps":[]})";
    CHECK_NOTHROW(circuit_from_json(json::parse(base)));

    json bad = json::parse(base);
    bad["version"] = 2;
    CHECK_THROWS_AS(circuit_from_json(bad), SchemaError);

    bad = json::parse(base);
    bad.erase("steps");
    CHECK_THROWS_AS(circuit_from_json(bad), SchemaError);

    bad = json::parse(base);
    bad["steps"] = json::array({json{{"type", "warp"}}});
    CHECK_THROWS_AS(circuit_from_json(bad), SchemaError);

    bad = json::parse(base);
    bad["steps"] = json::array(
        {json{{"type", "fcg"}, {"pred", "x == 0"}, {"table", "1"}, {"u", "X"}}});
    CHECK_THROWS_AS(circuit_from_json(bad), SchemaError);

    bad = json::parse(base);
    bad["steps"] = json::array({json{{"type", "fcg"}, {"u", "X"}}});
    CHECK_THROWS_AS(circuit_from_json(bad), SchemaError);

    bad = json::parse(base);
    bad["steps"] = json::array({json{{"type", "gate"}, {"name", "H"}, {"qubits", "0"}}});
    CHECK_THROWS_AS(circuit_from_json(bad), SchemaError);

    // A malformed predicate inside a circuit is a predicate parse error.
    bad = json::parse(base);
    bad["steps"] = json::array({json{{"type", "fcg"}, {"pred", "x =="}, {"u", "X"}}});
    CHECK_THROWS_AS(circuit_from_json(bad), ParseError);

    // Phase accepts both angle strings and radians.
    json ok = json::parse(base);
    ok["steps"] = json::array({json{{"type", "phase_oracle"}, {"pred", "x == 1"}}});
    CHECK_NOTHROW(circuit_from_json(ok));
    ok["steps"][0]["phase"] = "pi/2";
    CHECK_NOTHROW(circuit_from_json(ok));
    ok["steps"][0]["phase"] = 1.5707;
    CHECK_NOTHROW(circuit_from_json(ok));
}

TEST_CASE("angle literals parse exactly") {
    CHECK(parse_angle("pi") == std::numbers::pi);
    CHECK(parse_angle("-pi") == -std::numbers::pi);
    CHECK(parse_angle("pi/2") == std::numbers::pi / 2.0);
    CHECK(parse_angle("3pi/4") == 3.0 * std::numbers::pi / 4.0);
    CHECK(parse_angle("2*pi") == 2.0 * std::numbers::pi);
    CHECK(parse_angle("0.5") == 0.5);
    CHECK(parse_angle("1e-3") == 1e-3);
    CHECK(parse_angle(" pi ") == std::numbers::pi);

    CHECK_THROWS_AS(parse_angle("pie"), ParseError);
    CHECK_THROWS_AS(parse_angle(""), ParseError);
    CHECK_THROWS_AS(parse_angle("pi/"), ParseError);
    CHECK_THROWS_AS(parse_angle("pi/0"), DomainError);
    CHECK_THROWS_AS(parse_angle("/2"), ParseError);
    CHECK_THROWS_AS(parse_angle("two"), ParseError);
}

TEST_CASE("basis_bitstring renders control bits then target bits, MSB first") {
    CHECK(basis_bitstring(5, 2, 1) == "101");
    CHECK(basis_bitstring(0, 3, 0) == "000");
    CHECK(basis_bitstring(6, 1, 2) == "110");
    CHECK(basis_bitstring(1, 0, 1) == "1");
}

TEST_CASE("file helpers report I/O failures") {
    CHECK_THROWS_AS(read_text_file("/nonexistent/path/nothing.json"), IoError);
    CHECK_THROWS_AS(write_text_file("/nonexistent/dir/out.json", "x"), IoError);

    const auto tmp = std::filesystem::temp_directory_path() / "fcg_serialize_test.txt";
    write_text_file(tmp.string(), "round trip\n");
    CHECK(read_text_file(tmp.string()) == "round trip\n");
    std::filesystem::remove(tmp);

    CHECK_THROWS_AS(parse_json_text("{not json", "doc"), SchemaError);
}
