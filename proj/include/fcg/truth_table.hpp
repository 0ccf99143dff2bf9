#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fcg/errors.hpp"

namespace fcg {

// Control predicates are always materialized as dense tables. The width cap
// keeps the largest table at 2^20 entries (1 MiB).
inline constexpr int kMaxControlWidth = 20;

// The control function f over [0..2^n) in compiled form: bit y is f(y).
class TruthTable {
public:
    TruthTable(int width, std::vector<std::uint8_t> bits);

    static TruthTable all_zero(int width);
    static TruthTable all_one(int width);

    // Control register width n in qubits.
    int width() const noexcept { return width_; }
    // Number of entries N = 2^n.
    std::uint64_t size() const noexcept { return bits_.size(); }

    bool value(std::uint64_t x) const { return bits_[x] != 0; }
    const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

    // Ascending list of y with f(y) = 1.
    std::vector<std::uint64_t> marked_set() const;
    std::uint64_t marked_count() const;

    // Compact form: hex digit k packs bits [4k, 4k+4), bit y at weight
    // 2^(y mod 4). Length is ceil(N/4) digits.
    std::string to_hex() const;
    static TruthTable from_hex(int width, std::string_view hex);

    bool operator==(const TruthTable&) const = default;

private:
    int width_;
    std::vector<std::uint8_t> bits_;
};

}  // namespace fcg
