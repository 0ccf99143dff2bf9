#include "fcg/gates.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <utility>

namespace fcg {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

int target_width_of(const ComplexMatrix& u, const char* who) {
    if (!u.square() || !is_power_of_two(u.rows())) {
        throw ValidationError(std::string(who) + ": operator must be square with power-of-two "
                                                 "dimension, got " +
                              std::to_string(u.rows()) + "x" + std::to_string(u.cols()));
    }
    int width = 0;
    for (std::size_t d = u.rows(); d > 1; d >>= 1) {
        ++width;
    }
    if (width < 1) {
        throw ValidationError(std::string(who) + ": operator must act on at least one qubit");
    }
    return width;
}

void require_unitary(const ComplexMatrix& u, const char* who) {
    if (!is_unitary(u, kSpecUnitaryTol)) {
        throw ValidationError(std::string(who) + ": operator is not unitary within " +
                              std::to_string(kSpecUnitaryTol));
    }
}

}  // namespace

const ComplexMatrix& gate_identity() {
    static const ComplexMatrix m = ComplexMatrix::identity(2);
    return m;
}

const ComplexMatrix& gate_x() {
    static const ComplexMatrix m(2, 2,
                                 {
                                     {0, 0}, {1, 0},  //
                                     {1, 0}, {0, 0},  //
                                 });
    return m;
}

const ComplexMatrix& gate_h() {
    static const ComplexMatrix m(2, 2,
                                 {
                                     {kInvSqrt2, 0}, {kInvSqrt2, 0},   //
                                     {kInvSqrt2, 0}, {-kInvSqrt2, 0},  //
                                 });
    return m;
}

const ComplexMatrix& gate_cx() {
    static const ComplexMatrix m(4, 4,
                                 {
                                     {1, 0}, {0, 0}, {0, 0}, {0, 0},  //
                                     {0, 0}, {1, 0}, {0, 0}, {0, 0},  //
                                     {0, 0}, {0, 0}, {0, 0}, {1, 0},  //
                                     {0, 0}, {0, 0}, {1, 0}, {0, 0},  //
                                 });
    return m;
}

const ComplexMatrix& gate_ccx() {
    static const ComplexMatrix fixed = [] {
        ComplexMatrix m = ComplexMatrix::identity(8);
        m(6, 6) = m(7, 7) = Complex{};
        m(6, 7) = m(7, 6) = Complex{1.0, 0.0};
        return m;
    }();
    return fixed;
}

const ComplexMatrix* standard_gate(std::string_view name) {
    if (name == "I") return &gate_identity();
    if (name == "X") return &gate_x();
    if (name == "H") return &gate_h();
    if (name == "CX") return &gate_cx();
    if (name == "CCX") return &gate_ccx();
    return nullptr;
}

std::vector<std::string_view> standard_gate_names() { return {"I", "X", "H", "CX", "CCX"}; }

ComplexMatrix tensored_gate(std::string_view names) {
    ComplexMatrix result = ComplexMatrix::identity(1);
    std::size_t pos = 0;
    bool any = false;
    while (pos <= names.size()) {
        const std::size_t comma = names.find(',', pos);
        const std::size_t end = comma == std::string_view::npos ? names.size() : comma;
        std::string_view part = names.substr(pos, end - pos);
        while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
        while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
        const ComplexMatrix* g = standard_gate(part);
        if (g == nullptr) {
            throw DomainError("tensored_gate: unknown gate name '" + std::string(part) +
                              "'; known names are I, X, H, CX, CCX");
        }
        result = any ? kron(result, *g) : *g;
        any = true;
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return result;
}

BcgSpec::BcgSpec(int control_width, std::uint64_t control_value, ComplexMatrix unitary)
    : control_width_(control_width),
      control_value_(control_value),
      unitary_(std::move(unitary)) {
    if (control_width < 1 || control_width > kMaxControlWidth) {
        throw ValidationError("BcgSpec: control width " + std::to_string(control_width) +
                              " outside [1, " + std::to_string(kMaxControlWidth) + "]");
    }
    if (control_value >= (std::uint64_t{1} << control_width)) {
        throw DomainError("BcgSpec: control value " + std::to_string(control_value) +
                          " out of range for width " + std::to_string(control_width));
    }
    target_width_ = target_width_of(unitary_, "BcgSpec");
    require_unitary(unitary_, "BcgSpec");
}

FcgSpec::FcgSpec(TruthTable table, ComplexMatrix unitary)
    : table_(std::move(table)), unitary_(std::move(unitary)) {
    target_width_ = target_width_of(unitary_, "FcgSpec");
    require_unitary(unitary_, "FcgSpec");
}

ConditionalSpec::ConditionalSpec(TruthTable table, ComplexMatrix then_branch,
                                 ComplexMatrix else_branch)
    : table_(std::move(table)),
      then_branch_(std::move(then_branch)),
      else_branch_(std::move(else_branch)) {
    target_width_ = target_width_of(then_branch_, "ConditionalSpec");
    if (else_branch_.rows() != then_branch_.rows() ||
        else_branch_.cols() != then_branch_.cols()) {
        throw ShapeError("ConditionalSpec: branch dimensions differ, " +
                         std::to_string(then_branch_.rows()) + " vs " +
                         std::to_string(else_branch_.rows()));
    }
    require_unitary(then_branch_, "ConditionalSpec then-branch");
    require_unitary(else_branch_, "ConditionalSpec else-branch");
}

BlockDiagonalGate::BlockDiagonalGate(int control_width, int target_width,
                                     std::map<std::uint64_t, ComplexMatrix> blocks)
    : control_width_(control_width), target_width_(target_width), blocks_(std::move(blocks)) {
    if (control_width < 1 || control_width > kMaxControlWidth) {
        throw ValidationError("BlockDiagonalGate: bad control width " +
                              std::to_string(control_width));
    }
    if (target_width < 1) {
        throw ValidationError("BlockDiagonalGate: target width must be positive");
    }
    const std::uint64_t m = block_dim();
    for (const auto& [y, block] : blocks_) {
        if (y >= block_count()) {
            throw DomainError("BlockDiagonalGate: block index " + std::to_string(y) +
                              " out of range");
        }
        if (block.rows() != m || block.cols() != m) {
            throw ShapeError("BlockDiagonalGate: block " + std::to_string(y) + " is " +
                             std::to_string(block.rows()) + "x" + std::to_string(block.cols()) +
                             ", expected " + std::to_string(m) + "x" + std::to_string(m));
        }
        require_unitary(block, "BlockDiagonalGate block");
    }
}

const ComplexMatrix* BlockDiagonalGate::block(std::uint64_t y) const {
    const auto it = blocks_.find(y);
    return it == blocks_.end() ? nullptr : &it->second;
}

ComplexMatrix BlockDiagonalGate::dense() const {
    const std::uint64_t n = block_count();
    const std::uint64_t m = block_dim();
    ComplexMatrix out(n * m, n * m);  // capacity-checked by the matrix constructor
    for (std::uint64_t y = 0; y < n; ++y) {
        const ComplexMatrix* b = block(y);
        for (std::uint64_t r = 0; r < m; ++r) {
            for (std::uint64_t c = 0; c < m; ++c) {
                out(y * m + r, y * m + c) =
                    b ? (*b)(r, c) : (r == c ? Complex{1.0, 0.0} : Complex{});
            }
        }
    }
    return out;
}

BlockDiagonalGate bcg_matrix(const BcgSpec& spec) {
    std::map<std::uint64_t, ComplexMatrix> blocks;
    blocks.emplace(spec.control_value(), spec.unitary());
    return BlockDiagonalGate(spec.control_width(), spec.target_width(), std::move(blocks));
}

BlockDiagonalGate fcg_matrix(const FcgSpec& spec) {
    std::map<std::uint64_t, ComplexMatrix> blocks;
    for (std::uint64_t y : spec.table().marked_set()) {
        blocks.emplace(y, spec.unitary());
    }
    return BlockDiagonalGate(spec.control_width(), spec.target_width(), std::move(blocks));
}

BlockDiagonalGate conditional_matrix(const ConditionalSpec& spec) {
    const ComplexMatrix identity = ComplexMatrix::identity(spec.then_branch().rows());
    std::map<std::uint64_t, ComplexMatrix> blocks;
    for (std::uint64_t y = 0; y < spec.table().size(); ++y) {
        const ComplexMatrix& branch = spec.table().value(y) ? spec.then_branch()
                                                            : spec.else_branch();
        if (branch == identity) {
            continue;  // keep identity blocks implicit
        }
        blocks.emplace(y, branch);
    }
    return BlockDiagonalGate(spec.control_width(), spec.target_width(), std::move(blocks));
}

ComplexMatrix qit_matrix(const TruthTable& table, const ComplexMatrix& unitary) {
    target_width_of(unitary, "qit_matrix");
    require_unitary(unitary, "qit_matrix");
    const std::uint64_t n = table.size();
    ComplexMatrix f(n, n);
    ComplexMatrix complement(n, n);
    for (std::uint64_t y = 0; y < n; ++y) {
        f(y, y) = table.value(y) ? Complex{1.0, 0.0} : Complex{};
        complement(y, y) = table.value(y) ? Complex{} : Complex{1.0, 0.0};
    }
    const ComplexMatrix left = kron(f, unitary);
    const ComplexMatrix right = kron(complement, ComplexMatrix::identity(unitary.rows()));
    ComplexMatrix out(left.rows(), left.cols());
    for (std::size_t i = 0; i < out.rows(); ++i) {
        for (std::size_t j = 0; j < out.cols(); ++j) {
            out(i, j) = left(i, j) + right(i, j);
        }
    }
    return out;
}

ComplexMatrix phase_oracle_matrix(const TruthTable& table) {
    return phase_oracle_matrix(table, std::numbers::pi);
}

Complex phase_oracle_factor(double phase) {
    // sin(pi) is not 0 in floating point; the +/-1 oracle needs exact entries.
    if (phase == std::numbers::pi || phase == -std::numbers::pi) {
        return Complex{-1.0, 0.0};
    }
    return std::polar(1.0, phase);
}

ComplexMatrix phase_oracle_matrix(const TruthTable& table, double phase) {
    const Complex factor = phase_oracle_factor(phase);
    const std::uint64_t n = table.size();
    ComplexMatrix out(n, n);
    for (std::uint64_t y = 0; y < n; ++y) {
        out(y, y) = table.value(y) ? factor : Complex{1.0, 0.0};
    }
    return out;
}

ComplexMatrix bcg_product(int control_width, std::span<const std::uint64_t> control_values,
                          const ComplexMatrix& unitary) {
    target_width_of(unitary, "bcg_product");
    if (control_width < 1 || control_width > kMaxControlWidth) {
        throw ValidationError("bcg_product: bad control width " + std::to_string(control_width));
    }
    const std::uint64_t dim = (std::uint64_t{1} << control_width) * unitary.rows();
    if (dim > kMaxProductDim) {
        throw CapacityError("bcg_product: dimension " + std::to_string(dim) +
                            " exceeds the product cap of " + std::to_string(kMaxProductDim));
    }
    std::set<std::uint64_t> seen;
    for (std::uint64_t y : control_values) {
        if (!seen.insert(y).second) {
            throw DomainError("bcg_product: duplicate control value " + std::to_string(y));
        }
    }
    ComplexMatrix product = ComplexMatrix::identity(dim);
    for (std::uint64_t y : control_values) {
        product = matmul(product, bcg_matrix(BcgSpec(control_width, y, unitary)).dense());
    }
    return product;
}

}  // namespace fcg
