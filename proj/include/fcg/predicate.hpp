#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "fcg/truth_table.hpp"

namespace fcg {

// Boolean predicates over the control-register value x. Precedence, tightest
// first: ! > shifts > & > ^ > | > comparisons > && > ||. Note that bitwise
// operators bind tighter than comparisons, so "x & 1 == 1" is "(x & 1) == 1".
// The full grammar is in docs/predicates.md.

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };
enum class BitwiseOp { And, Or, Xor, ShiftLeft, ShiftRight };
enum class LogicalOp { And, Or };

struct PredicateNode;
using PredicatePtr = std::unique_ptr<PredicateNode>;

struct IntLiteral {
    std::uint64_t value;
};
struct BoolLiteral {
    bool value;
};
struct VarX {};
struct Compare {
    CompareOp op;
    PredicatePtr lhs, rhs;
};
struct Bitwise {
    BitwiseOp op;
    PredicatePtr lhs, rhs;
};
struct Logical {
    LogicalOp op;
    PredicatePtr lhs, rhs;
};
struct LogicalNot {
    PredicatePtr operand;
};

struct PredicateNode {
    std::variant<IntLiteral, BoolLiteral, VarX, Compare, Bitwise, Logical, LogicalNot> value;
};

class PredicateAst {
public:
    explicit PredicateAst(PredicatePtr root) : root_(std::move(root)) {}
    const PredicateNode& root() const { return *root_; }

private:
    PredicatePtr root_;
};

// Parses UTF-8 predicate source. Throws ParseError with a byte offset and the
// accepted-token set on malformed input, including unknown identifiers.
PredicateAst parse_predicate(std::string_view source);

enum class ValueType { Integer, Boolean };

// Infers the type of the expression; throws TypeError on operator/operand
// mismatches. A usable predicate must come out Boolean.
ValueType check_types(const PredicateAst& ast);

// Evaluates a well-typed boolean predicate at a concrete control value.
// x is unsigned 64-bit; shift amounts >= 64 evaluate to 0.
bool eval_predicate(const PredicateAst& ast, std::uint64_t x);

// bits[y] = predicate(y) for every y in [0, 2^n). Type-checks first.
TruthTable compile_truth_table(const PredicateAst& ast, int n);
TruthTable compile_truth_table(std::string_view source, int n);

}  // namespace fcg
