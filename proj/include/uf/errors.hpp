#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace uf {

/// Malformed input: element/instance mismatch, bad descriptor, parse failure.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// A bounded search ran out of its node budget. Distinct from "nothing found".
class budget_exhausted : public std::runtime_error {
public:
    explicit budget_exhausted(const std::string& what) : std::runtime_error(what) {}
};

/// Node counter shared by one logical search. Every enumerator ticks it and
/// throws budget_exhausted when the cap is hit.
class Budget {
public:
    static constexpr std::uint64_t kDefaultCap = 10'000'000;

    Budget() = default;
    explicit Budget(std::uint64_t cap) : cap_(cap) {}

    void tick(const char* where) {
        if (++used_ > cap_)
            throw budget_exhausted(std::string("node budget exhausted in ") + where);
    }

    std::uint64_t used() const { return used_; }
    std::uint64_t cap() const { return cap_; }

private:
    std::uint64_t cap_ = kDefaultCap;
    std::uint64_t used_ = 0;
};

} // namespace uf
