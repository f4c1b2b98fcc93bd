#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

#include "uf/errors.hpp"

namespace uf {

/// Extended natural number: an element of N ∪ {∞}. Used for length
/// multiplicities and ultralimits.
class ExtNat {
public:
    constexpr ExtNat() = default;
    constexpr ExtNat(std::uint64_t v) : value_(v) {} // NOLINT: implicit by design

    static constexpr ExtNat infinity() {
        ExtNat e;
        e.value_ = kInf;
        return e;
    }

    constexpr bool is_infinite() const { return value_ == kInf; }

    /// Finite value; throws on ∞.
    constexpr std::uint64_t finite() const {
        if (is_infinite())
            throw domain_error("ExtNat: infinite value where finite expected");
        return value_;
    }

    friend constexpr ExtNat operator+(ExtNat a, ExtNat b) {
        if (a.is_infinite() || b.is_infinite()) return infinity();
        return ExtNat(a.value_ + b.value_);
    }
    ExtNat& operator+=(ExtNat o) { return *this = *this + o; }

    friend constexpr bool operator==(ExtNat a, ExtNat b) { return a.value_ == b.value_; }
    friend constexpr auto operator<=>(ExtNat a, ExtNat b) { return a.value_ <=> b.value_; }

    std::string str() const { return is_infinite() ? "inf" : std::to_string(value_); }

    friend std::ostream& operator<<(std::ostream& os, ExtNat e) { return os << e.str(); }

private:
    static constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t value_ = 0;
};

} // namespace uf
