#include "fcg/predicate.hpp"

#include <cctype>
#include <optional>
#include <utility>
#include <vector>

namespace fcg {

namespace {

enum class Tok {
    Integer,
    Var,
    True,
    False,
    LParen,
    RParen,
    EqEq,
    NotEq,
    Less,
    LessEq,
    Greater,
    GreaterEq,
    Amp,
    Pipe,
    Caret,
    ShiftLeft,
    ShiftRight,
    AmpAmp,
    PipePipe,
    Bang,
    End,
};

const char* token_name(Tok t) {
    switch (t) {
        case Tok::Integer: return "integer";
        case Tok::Var: return "'x'";
        case Tok::True: return "'true'";
        case Tok::False: return "'false'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::EqEq: return "'=='";
        case Tok::NotEq: return "'!='";
        case Tok::Less: return "'<'";
        case Tok::LessEq: return "'<='";
        case Tok::Greater: return "'>'";
        case Tok::GreaterEq: return "'>='";
        case Tok::Amp: return "'&'";
        case Tok::Pipe: return "'|'";
        case Tok::Caret: return "'^'";
        case Tok::ShiftLeft: return "'<<'";
        case Tok::ShiftRight: return "'>>'";
        case Tok::AmpAmp: return "'&&'";
        case Tok::PipePipe: return "'||'";
        case Tok::Bang: return "'!'";
        case Tok::End: return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind;
    std::size_t offset;
    std::uint64_t int_value = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_spaces();
            const std::size_t at = pos_;
            if (pos_ >= src_.size()) {
                out.push_back({Tok::End, at});
                return out;
            }
            const char c = src_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                out.push_back(lex_integer());
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                out.push_back(lex_word());
            } else {
                out.push_back(lex_symbol());
            }
        }
    }

private:
    void skip_spaces() {
        while (pos_ < src_.size() &&
               std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
    }

    Token lex_integer() {
        const std::size_t at = pos_;
        int base = 10;
        if (src_[pos_] == '0' && pos_ + 1 < src_.size() &&
            (src_[pos_ + 1] == 'x' || src_[pos_ + 1] == 'X')) {
            base = 16;
            pos_ += 2;
            if (pos_ >= src_.size() || !std::isxdigit(static_cast<unsigned char>(src_[pos_]))) {
                throw ParseError("syntax error at offset " + std::to_string(pos_) +
                                     ": expected hex digits after '0x'",
                                 pos_, {"hex digit"});
            }
        }
        std::uint64_t value = 0;
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            int digit;
            if (c >= '0' && c <= '9') {
                digit = c - '0';
            } else if (base == 16 && c >= 'a' && c <= 'f') {
                digit = c - 'a' + 10;
            } else if (base == 16 && c >= 'A' && c <= 'F') {
                digit = c - 'A' + 10;
            } else {
                break;
            }
            if (value > (UINT64_MAX - digit) / base) {
                throw ParseError("integer literal at offset " + std::to_string(at) +
                                     " does not fit in 64 bits",
                                 at, {});
            }
            value = value * base + digit;
            ++pos_;
        }
        return {Tok::Integer, at, value};
    }

    Token lex_word() {
        const std::size_t at = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view word = src_.substr(at, pos_ - at);
        if (word == "x") {
            return {Tok::Var, at};
        }
        if (word == "true") {
            return {Tok::True, at};
        }
        if (word == "false") {
            return {Tok::False, at};
        }
        throw ParseError("unknown identifier '" + std::string(word) + "' at offset " +
                             std::to_string(at) + " (only 'x', 'true', 'false' are known)",
                         at, {"'x'", "'true'", "'false'"});
    }

    Token lex_symbol() {
        const std::size_t at = pos_;
        auto two = [&](char a, char b) {
            return src_[pos_] == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
        };
        if (two('=', '=')) { pos_ += 2; return {Tok::EqEq, at}; }
        if (two('!', '=')) { pos_ += 2; return {Tok::NotEq, at}; }
        if (two('<', '=')) { pos_ += 2; return {Tok::LessEq, at}; }
        if (two('>', '=')) { pos_ += 2; return {Tok::GreaterEq, at}; }
        if (two('<', '<')) { pos_ += 2; return {Tok::ShiftLeft, at}; }
        if (two('>', '>')) { pos_ += 2; return {Tok::ShiftRight, at}; }
        if (two('&', '&')) { pos_ += 2; return {Tok::AmpAmp, at}; }
        if (two('|', '|')) { pos_ += 2; return {Tok::PipePipe, at}; }
        switch (src_[pos_]) {
            case '(': ++pos_; return {Tok::LParen, at};
            case ')': ++pos_; return {Tok::RParen, at};
            case '<': ++pos_; return {Tok::Less, at};
            case '>': ++pos_; return {Tok::Greater, at};
            case '&': ++pos_; return {Tok::Amp, at};
            case '|': ++pos_; return {Tok::Pipe, at};
            case '^': ++pos_; return {Tok::Caret, at};
            case '!': ++pos_; return {Tok::Bang, at};
            default:
                throw ParseError("syntax error at offset " + std::to_string(at) +
                                     ": unexpected character '" + src_[pos_] + "'",
                                 at, {});
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    PredicatePtr run() {
        PredicatePtr expr = parse_or();
        expect(Tok::End);
        return expr;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }

    Token advance() { return tokens_[pos_++]; }

    bool match(Tok kind) {
        if (peek().kind == kind) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(std::vector<std::string> expected) {
        const Token& tok = peek();
        std::string msg = "syntax error at offset " + std::to_string(tok.offset) +
                          ": unexpected " + token_name(tok.kind) + "; expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            msg += (i == 0 ? "" : ", ") + expected[i];
        }
        throw ParseError(msg, tok.offset, std::move(expected));
    }

    void expect(Tok kind) {
        if (!match(kind)) {
            fail({token_name(kind)});
        }
    }

    static PredicatePtr make(PredicateNode&& node) {
        return std::make_unique<PredicateNode>(std::move(node));
    }

    PredicatePtr parse_or() {
        PredicatePtr lhs = parse_and();
        while (match(Tok::PipePipe)) {
            PredicatePtr rhs = parse_and();
            lhs = make({Logical{LogicalOp::Or, std::move(lhs), std::move(rhs)}});
        }
        return lhs;
    }

    PredicatePtr parse_and() {
        PredicatePtr lhs = parse_comparison();
        while (match(Tok::AmpAmp)) {
            PredicatePtr rhs = parse_comparison();
            lhs = make({Logical{LogicalOp::And, std::move(lhs), std::move(rhs)}});
        }
        return lhs;
    }

    // Comparisons do not chain; "a < b < c" is rejected at the second '<'.
    PredicatePtr parse_comparison() {
        PredicatePtr lhs = parse_bitor();
        std::optional<CompareOp> op;
        switch (peek().kind) {
            case Tok::EqEq: op = CompareOp::Eq; break;
            case Tok::NotEq: op = CompareOp::Ne; break;
            case Tok::Less: op = CompareOp::Lt; break;
            case Tok::LessEq: op = CompareOp::Le; break;
            case Tok::Greater: op = CompareOp::Gt; break;
            case Tok::GreaterEq: op = CompareOp::Ge; break;
            default: break;
        }
        if (!op) {
            return lhs;
        }
        advance();
        PredicatePtr rhs = parse_bitor();
        return make({Compare{*op, std::move(lhs), std::move(rhs)}});
    }

    PredicatePtr parse_bitor() {
        PredicatePtr lhs = parse_bitxor();
        while (match(Tok::Pipe)) {
            PredicatePtr rhs = parse_bitxor();
            lhs = make({Bitwise{BitwiseOp::Or, std::move(lhs), std::move(rhs)}});
        }
        return lhs;
    }

    PredicatePtr parse_bitxor() {
        PredicatePtr lhs = parse_bitand();
        while (match(Tok::Caret)) {
            PredicatePtr rhs = parse_bitand();
            lhs = make({Bitwise{BitwiseOp::Xor, std::move(lhs), std::move(rhs)}});
        }
        return lhs;
    }

    PredicatePtr parse_bitand() {
        PredicatePtr lhs = parse_shift();
        while (match(Tok::Amp)) {
            PredicatePtr rhs = parse_shift();
            lhs = make({Bitwise{BitwiseOp::And, std::move(lhs), std::move(rhs)}});
        }
        return lhs;
    }

    PredicatePtr parse_shift() {
        PredicatePtr lhs = parse_unary();
        while (true) {
            if (match(Tok::ShiftLeft)) {
                PredicatePtr rhs = parse_unary();
                lhs = make({Bitwise{BitwiseOp::ShiftLeft, std::move(lhs), std::move(rhs)}});
            } else if (match(Tok::ShiftRight)) {
                PredicatePtr rhs = parse_unary();
                lhs = make({Bitwise{BitwiseOp::ShiftRight, std::move(lhs), std::move(rhs)}});
            } else {
                return lhs;
            }
        }
    }

    PredicatePtr parse_unary() {
        if (match(Tok::Bang)) {
            return make({LogicalNot{parse_unary()}});
        }
        return parse_primary();
    }

    PredicatePtr parse_primary() {
        const Token& tok = peek();
        switch (tok.kind) {
            case Tok::Integer:
                advance();
                return make({IntLiteral{tok.int_value}});
            case Tok::Var:
                advance();
                return make({VarX{}});
            case Tok::True:
                advance();
                return make({BoolLiteral{true}});
            case Tok::False:
                advance();
                return make({BoolLiteral{false}});
            case Tok::LParen: {
                advance();
                PredicatePtr inner = parse_or();
                expect(Tok::RParen);
                return inner;
            }
            default:
                fail({"integer", "'x'", "'true'", "'false'", "'('", "'!'"});
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

ValueType node_type(const PredicateNode& node) {
    return std::visit(
        [](const auto& v) -> ValueType {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, IntLiteral> || std::is_same_v<T, VarX>) {
                return ValueType::Integer;
            } else if constexpr (std::is_same_v<T, BoolLiteral>) {
                return ValueType::Boolean;
            } else if constexpr (std::is_same_v<T, Compare>) {
                if (node_type(*v.lhs) != ValueType::Integer ||
                    node_type(*v.rhs) != ValueType::Integer) {
                    throw TypeError("comparison operands must be integers");
                }
                return ValueType::Boolean;
            } else if constexpr (std::is_same_v<T, Bitwise>) {
                if (node_type(*v.lhs) != ValueType::Integer ||
                    node_type(*v.rhs) != ValueType::Integer) {
                    throw TypeError("bitwise operands must be integers");
                }
                return ValueType::Integer;
            } else if constexpr (std::is_same_v<T, Logical>) {
                if (node_type(*v.lhs) != ValueType::Boolean ||
                    node_type(*v.rhs) != ValueType::Boolean) {
                    throw TypeError("logical operands must be booleans");
                }
                return ValueType::Boolean;
            } else {
                static_assert(std::is_same_v<T, LogicalNot>);
                if (node_type(*v.operand) != ValueType::Boolean) {
                    throw TypeError("'!' operand must be boolean");
                }
                return ValueType::Boolean;
            }
        },
        node.value);
}

std::uint64_t eval_int(const PredicateNode& node, std::uint64_t x);
bool eval_bool(const PredicateNode& node, std::uint64_t x);

std::uint64_t eval_int(const PredicateNode& node, std::uint64_t x) {
    return std::visit(
        [x](const auto& v) -> std::uint64_t {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, IntLiteral>) {
                return v.value;
            } else if constexpr (std::is_same_v<T, VarX>) {
                return x;
            } else if constexpr (std::is_same_v<T, Bitwise>) {
                const std::uint64_t l = eval_int(*v.lhs, x);
                const std::uint64_t r = eval_int(*v.rhs, x);
                switch (v.op) {
                    case BitwiseOp::And: return l & r;
                    case BitwiseOp::Or: return l | r;
                    case BitwiseOp::Xor: return l ^ r;
                    // Shifts by >= 64 are defined to give 0.
                    case BitwiseOp::ShiftLeft: return r >= 64 ? 0 : l << r;
                    case BitwiseOp::ShiftRight: return r >= 64 ? 0 : l >> r;
                }
                return 0;
            } else {
                throw TypeError("expected an integer expression");
            }
        },
        node.value);
}

bool eval_bool(const PredicateNode& node, std::uint64_t x) {
    return std::visit(
        [x](const auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BoolLiteral>) {
                return v.value;
            } else if constexpr (std::is_same_v<T, Compare>) {
                const std::uint64_t l = eval_int(*v.lhs, x);
                const std::uint64_t r = eval_int(*v.rhs, x);
                switch (v.op) {
                    case CompareOp::Eq: return l == r;
                    case CompareOp::Ne: return l != r;
                    case CompareOp::Lt: return l < r;
                    case CompareOp::Le: return l <= r;
                    case CompareOp::Gt: return l > r;
                    case CompareOp::Ge: return l >= r;
                }
                return false;
            } else if constexpr (std::is_same_v<T, Logical>) {
                if (v.op == LogicalOp::And) {
                    return eval_bool(*v.lhs, x) && eval_bool(*v.rhs, x);
                }
                return eval_bool(*v.lhs, x) || eval_bool(*v.rhs, x);
            } else if constexpr (std::is_same_v<T, LogicalNot>) {
                return !eval_bool(*v.operand, x);
            } else {
                throw TypeError("expected a boolean expression");
            }
        },
        node.value);
}

}  // namespace

PredicateAst parse_predicate(std::string_view source) {
    return PredicateAst(Parser(Lexer(source).run()).run());
}

ValueType check_types(const PredicateAst& ast) { return node_type(ast.root()); }

bool eval_predicate(const PredicateAst& ast, std::uint64_t x) {
    return eval_bool(ast.root(), x);
}

TruthTable compile_truth_table(const PredicateAst& ast, int n) {
    if (n < 1) {
        throw ValidationError("compile_truth_table: width must be positive");
    }
    if (n > kMaxControlWidth) {
        throw CapacityError("compile_truth_table: width " + std::to_string(n) +
                            " exceeds the cap of " + std::to_string(kMaxControlWidth));
    }
    if (check_types(ast) != ValueType::Boolean) {
        throw TypeError("predicate must be a boolean expression, not an integer one");
    }
    const std::uint64_t size = std::uint64_t{1} << n;
    std::vector<std::uint8_t> bits(size);
    for (std::uint64_t y = 0; y < size; ++y) {
        bits[y] = eval_bool(ast.root(), y) ? 1 : 0;
    }
    return TruthTable(n, std::move(bits));
}

TruthTable compile_truth_table(std::string_view source, int n) {
    return compile_truth_table(parse_predicate(source), n);
}

}  // namespace fcg
