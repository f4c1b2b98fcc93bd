#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "uf/extnat.hpp"

namespace uf {

/// Finite multiset over an ordered element type. Backed by a sorted map
/// element -> multiplicity, so equality is multiset equality and iteration
/// order is deterministic.
template <typename T>
class Multiset {
public:
    using Map = std::map<T, std::uint64_t>;

    Multiset() = default;

    void add(const T& x, std::uint64_t count = 1) {
        if (count == 0) return;
        elems_[x] += count;
        size_ += count;
    }

    /// Removes one copy; returns false if x is absent.
    bool remove_one(const T& x) {
        auto it = elems_.find(x);
        if (it == elems_.end()) return false;
        if (--it->second == 0) elems_.erase(it);
        --size_;
        return true;
    }

    std::uint64_t count(const T& x) const {
        auto it = elems_.find(x);
        return it == elems_.end() ? 0 : it->second;
    }

    std::uint64_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    const Map& entries() const { return elems_; }

    friend bool operator==(const Multiset& a, const Multiset& b) {
        return a.elems_ == b.elems_;
    }
    friend bool operator<(const Multiset& a, const Multiset& b) {
        return a.elems_ < b.elems_;
    }

private:
    Map elems_;
    std::uint64_t size_ = 0;
};

/// Multiset of factorization lengths with multiplicities in N ∪ {∞}.
/// Keys are (standard, finite) lengths. Zero multiplicities are not stored.
struct LengthProfile {
    std::map<std::uint64_t, ExtNat> mult;

    void set(std::uint64_t len, ExtNat m) {
        if (m == ExtNat(0))
            mult.erase(len);
        else
            mult[len] = m;
    }

    ExtNat multiplicity(std::uint64_t len) const {
        auto it = mult.find(len);
        return it == mult.end() ? ExtNat(0) : it->second;
    }

    bool contains(std::uint64_t len) const { return mult.count(len) != 0; }
    bool empty() const { return mult.empty(); }

    /// Distinct lengths as a plain set of lengths (forgetting multiplicities).
    std::set<std::uint64_t> lengths() const {
        std::set<std::uint64_t> out;
        for (const auto& [len, m] : mult) out.insert(len);
        return out;
    }

    friend bool operator==(const LengthProfile& a, const LengthProfile& b) {
        return a.mult == b.mult;
    }

    std::string str() const {
        std::ostringstream os;
        os << '{';
        bool first = true;
        for (const auto& [len, m] : mult) {
            if (!first) os << ", ";
            first = false;
            os << len << "^" << m.str();
        }
        os << '}';
        return os.str();
    }
};

} // namespace uf
