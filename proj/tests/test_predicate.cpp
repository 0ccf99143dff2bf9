#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "fcg/errors.hpp"
#include "fcg/predicate.hpp"
#include "fcg/random.hpp"
#include "fcg/truth_table.hpp"

using namespace fcg;

namespace {

std::vector<std::uint8_t> table_of(const std::string& src, int n) {
    return compile_truth_table(src, n).bits();
}

// Random well-typed predicate source, used for algebraic-law checks.
std::string random_int_expr(RandomSource& rng, int depth);

std::string random_bool_expr(RandomSource& rng, int depth) {
    if (depth <= 0) {
        switch (rng.below(3)) {
            case 0: return "true";
            case 1: return "false";
            default: break;
        }
    }
    switch (rng.below(6)) {
        case 0:
            return "(" + random_bool_expr(rng, depth - 1) + " && " +
                   random_bool_expr(rng, depth - 1) + ")";
        case 1:
            return "(" + random_bool_expr(rng, depth - 1) + " || " +
                   random_bool_expr(rng, depth - 1) + ")";
        case 2:
            return "!(" + random_bool_expr(rng, depth - 1) + ")";
        default: {
            static const char* ops[] = {"==", "!=", "<", "<=", ">", ">="};
            return random_int_expr(rng, depth - 1) + " " + ops[rng.below(6)] + " " +
                   random_int_expr(rng, depth - 1);
        }
    }
}

std::string random_int_expr(RandomSource& rng, int depth) {
    if (depth <= 0 || rng.below(2) == 0) {
        return rng.below(2) == 0 ? "x" : std::to_string(rng.below(16));
    }
    static const char* ops[] = {"&", "|", "^", "<<", ">>"};
    return "(" + random_int_expr(rng, depth - 1) + " " + ops[rng.below(5)] + " " +
           random_int_expr(rng, depth - 1) + ")";
}

}  // namespace

TEST_CASE("simple comparisons parse to the expected shape") {
    const PredicateAst ast = parse_predicate("x == 3");
    const auto* cmp = std::get_if<Compare>(&ast.root().value);
    REQUIRE(cmp != nullptr);
    CHECK(cmp->op == CompareOp::Eq);
    CHECK(std::holds_alternative<VarX>(cmp->lhs->value));
    const auto* lit = std::get_if<IntLiteral>(&cmp->rhs->value);
    REQUIRE(lit != nullptr);
    CHECK(lit->value == 3);

    const PredicateAst disj = parse_predicate("x == 0 || x == 2");
    const auto* orNode = std::get_if<Logical>(&disj.root().value);
    REQUIRE(orNode != nullptr);
    CHECK(orNode->op == LogicalOp::Or);
    CHECK(std::holds_alternative<Compare>(orNode->lhs->value));
    CHECK(std::holds_alternative<Compare>(orNode->rhs->value));
}

TEST_CASE("syntax errors carry the byte offset and the accepted-token set") {
    try {
        parse_predicate("x ==");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 4);
        CHECK_FALSE(e.expected().empty());
    }

    try {
        parse_predicate("y < 2");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 0);
        CHECK(std::string(e.what()).find("'x'") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_predicate(""), ParseError);
    CHECK_THROWS_AS(parse_predicate("(x == 1"), ParseError);
    CHECK_THROWS_AS(parse_predicate("x == 1)"), ParseError);
    CHECK_THROWS_AS(parse_predicate("x @ 1"), ParseError);
}

TEST_CASE("comparisons do not chain") {
    CHECK_THROWS_AS(parse_predicate("1 < x < 3"), ParseError);
}

TEST_CASE("bitwise operators bind tighter than comparisons") {
    // "x & 1 == 1" must read as "(x & 1) == 1": f(x) = x is odd.
    CHECK(table_of("x & 1 == 1", 2) == std::vector<std::uint8_t>{0, 1, 0, 1});
    CHECK(table_of("x & 1 == 1", 2) == table_of("(x & 1) == 1", 2));

    // Shift binds tighter than &: "x >> 1 & 1" is "(x >> 1) & 1".
    CHECK(table_of("x >> 1 & 1 == 1", 3) == table_of("((x >> 1) & 1) == 1", 3));

    // | over ^ over &.
    CHECK(table_of("(x | 2 ^ x & 1) == (x | (2 ^ (x & 1)))", 3) ==
          std::vector<std::uint8_t>(8, 1));

    // && binds tighter than ||.
    CHECK(table_of("x == 0 || x > 1 && x < 3", 2) ==
          table_of("x == 0 || (x > 1 && x < 3)", 2));
}

TEST_CASE("integer literals cover decimal and hex and reject overflow") {
    CHECK(table_of("x == 0x3", 2) == std::vector<std::uint8_t>{0, 0, 0, 1});
    CHECK_NOTHROW(parse_predicate("x == 0xFFFFFFFFFFFFFFFF"));
    CHECK_NOTHROW(parse_predicate("x == 18446744073709551615"));
    CHECK_THROWS_AS(parse_predicate("x == 18446744073709551616"), ParseError);
    CHECK_THROWS_AS(parse_predicate("x == 0x"), ParseError);
}

TEST_CASE("shift amounts of 64 or more evaluate to zero") {
    CHECK(table_of("x >> 64 == 0", 2) == std::vector<std::uint8_t>(4, 1));
    CHECK(table_of("x << 100 == 0", 2) == std::vector<std::uint8_t>(4, 1));
    CHECK(table_of("1 << 63 == 9223372036854775808", 1) == std::vector<std::uint8_t>(2, 1));
}

TEST_CASE("the type checker rejects operator/operand mismatches") {
    CHECK_THROWS_AS(check_types(parse_predicate("x && true")), TypeError);
    CHECK_THROWS_AS(check_types(parse_predicate("true & false")), TypeError);
    CHECK_THROWS_AS(check_types(parse_predicate("x == true")), TypeError);
    CHECK_THROWS_AS(check_types(parse_predicate("true == false")), TypeError);
    CHECK_THROWS_AS(check_types(parse_predicate("!x")), TypeError);
    CHECK(check_types(parse_predicate("x == 1")) == ValueType::Boolean);
    CHECK(check_types(parse_predicate("x & 1")) == ValueType::Integer);
}

TEST_CASE("compile requires a boolean root") {
    CHECK_THROWS_AS(compile_truth_table("x | 1", 2), TypeError);
}

TEST_CASE("compile_truth_table enumerates the predicate") {
    CHECK(table_of("x == 3", 2) == std::vector<std::uint8_t>{0, 0, 0, 1});
    CHECK(table_of("x != 0", 2) == std::vector<std::uint8_t>{0, 1, 1, 1});
    CHECK(table_of("true", 1) == std::vector<std::uint8_t>{1, 1});
    CHECK(table_of("false", 1) == std::vector<std::uint8_t>{0, 0});
    CHECK(table_of("x >= 2 && x <= 5", 3) == std::vector<std::uint8_t>{0, 0, 1, 1, 1, 1, 0, 0});
}

TEST_CASE("compile_truth_table enforces the width window") {
    const PredicateAst ast = parse_predicate("true");
    CHECK_THROWS_AS(compile_truth_table(ast, 0), ValidationError);
    CHECK_THROWS_AS(compile_truth_table(ast, 21), CapacityError);
    CHECK(compile_truth_table(ast, 1).size() == 2);
}

TEST_CASE("eval_predicate agrees with direct reading") {
    const PredicateAst ast = parse_predicate("x >= 5 && x <= 10");
    for (std::uint64_t x = 0; x < 16; ++x) {
        CHECK(eval_predicate(ast, x) == (x >= 5 && x <= 10));
    }
}

TEST_CASE("marked_set lists marked values in ascending order") {
    CHECK(compile_truth_table("x == 3", 2).marked_set() == std::vector<std::uint64_t>{3});
    CHECK(compile_truth_table("x != 0", 2).marked_set() ==
          std::vector<std::uint64_t>{1, 2, 3});
    CHECK(compile_truth_table("false", 3).marked_set().empty());
}

TEST_CASE("De Morgan holds on random sub-expressions") {
    RandomSource rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const std::string a = random_bool_expr(rng, 2);
        const std::string b = random_bool_expr(rng, 2);
        const int n = 1 + static_cast<int>(rng.below(5));
        CAPTURE(a);
        CAPTURE(b);
        CHECK(table_of("!((" + a + ") || (" + b + "))", n) ==
              table_of("!(" + a + ") && !(" + b + ")", n));
        CHECK(table_of("!((" + a + ") && (" + b + "))", n) ==
              table_of("!(" + a + ") || !(" + b + ")", n));
    }
}
