#include "fcg/truth_table.hpp"

#include <utility>

namespace fcg {

namespace {

void check_width(int width) {
    if (width < 1) {
        throw ValidationError("TruthTable: width must be positive, got " + std::to_string(width));
    }
    if (width > kMaxControlWidth) {
        throw CapacityError("TruthTable: width " + std::to_string(width) +
                            " exceeds the cap of " + std::to_string(kMaxControlWidth));
    }
}

}  // namespace

TruthTable::TruthTable(int width, std::vector<std::uint8_t> bits)
    : width_(width), bits_(std::move(bits)) {
    check_width(width);
    if (bits_.size() != (std::uint64_t{1} << width)) {
        throw ValidationError("TruthTable: " + std::to_string(bits_.size()) +
                              " bits for width " + std::to_string(width));
    }
    for (std::uint8_t b : bits_) {
        if (b > 1) {
            throw ValidationError("TruthTable: entries must be 0 or 1");
        }
    }
}

TruthTable TruthTable::all_zero(int width) {
    check_width(width);
    return TruthTable(width, std::vector<std::uint8_t>(std::uint64_t{1} << width, 0));
}

TruthTable TruthTable::all_one(int width) {
    check_width(width);
    return TruthTable(width, std::vector<std::uint8_t>(std::uint64_t{1} << width, 1));
}

std::vector<std::uint64_t> TruthTable::marked_set() const {
    std::vector<std::uint64_t> marked;
    for (std::uint64_t y = 0; y < bits_.size(); ++y) {
        if (bits_[y]) {
            marked.push_back(y);
        }
    }
    return marked;
}

std::uint64_t TruthTable::marked_count() const {
    std::uint64_t count = 0;
    for (std::uint8_t b : bits_) {
        count += b;
    }
    return count;
}

std::string TruthTable::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string hex((bits_.size() + 3) / 4, '0');
    for (std::uint64_t y = 0; y < bits_.size(); ++y) {
        if (bits_[y]) {
            const std::size_t k = y / 4;
            const int nibble = (hex[k] <= '9' ? hex[k] - '0' : hex[k] - 'a' + 10);
            hex[k] = digits[nibble | (1 << (y % 4))];
        }
    }
    return hex;
}

TruthTable TruthTable::from_hex(int width, std::string_view hex) {
    check_width(width);
    const std::uint64_t n = std::uint64_t{1} << width;
    if (hex.size() != (n + 3) / 4) {
        throw ValidationError("TruthTable::from_hex: expected " + std::to_string((n + 3) / 4) +
                              " hex digits for width " + std::to_string(width) + ", got " +
                              std::to_string(hex.size()));
    }
    std::vector<std::uint8_t> bits(n, 0);
    for (std::size_t k = 0; k < hex.size(); ++k) {
        const char c = hex[k];
        int nibble = 0;
        if (c >= '0' && c <= '9') {
            nibble = c - '0';
        } else if (c >= 'a' && c <= 'f') {
            nibble = c - 'a' + 10;
        } else if (c >= 'A' && c <= 'F') {
            nibble = c - 'A' + 10;
        } else {
            throw ValidationError(std::string("TruthTable::from_hex: bad digit '") + c + "'");
        }
        for (int b = 0; b < 4; ++b) {
            const std::uint64_t y = 4 * k + b;
            if (y < n && (nibble & (1 << b))) {
                bits[y] = 1;
            } else if (y >= n && (nibble & (1 << b))) {
                throw ValidationError("TruthTable::from_hex: set bit past 2^width");
            }
        }
    }
    return TruthTable(width, std::move(bits));
}

}  // namespace fcg
