#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "uf/errors.hpp"
#include "uf/monoid.hpp"
#include "uf/multiset.hpp"

namespace uf {

/// A factorization up to essential sameness: the multiset of associate-class
/// canonical representatives of its atoms. Two factorizations are equal iff
/// these multisets are equal.
struct Factorization {
    Multiset<Element> atoms;
    std::uint64_t length() const { return atoms.size(); }

    friend bool operator==(const Factorization& a, const Factorization& b) {
        return a.atoms == b.atoms;
    }
    friend bool operator<(const Factorization& a, const Factorization& b) {
        return a.atoms < b.atoms;
    }
};

/// Atoms of m dividing a, as sorted associate-canonical representatives.
std::vector<Element> atoms_dividing(const MonoidInstance& m, const Element& a, Budget& budget);

/// Exact division a / d for a known divisor d; domain_error if d does not
/// divide a (for NonzeroIntegers the quotient keeps the sign of a).
Element divide(const MonoidInstance& m, const Element& a, const Element& d);

/// All factorizations of a into atoms, of length <= max_len, one
/// representative per essential-sameness class, in deterministic order.
/// A unit yields exactly the empty factorization.
std::vector<Factorization> factorizations(const MonoidInstance& m, const Element& a,
                                          std::uint64_t max_len, Budget& budget);

/// lengths -> number of essential-sameness classes of that length (<= max_len).
LengthProfile length_profile(const MonoidInstance& m, const Element& a,
                             std::uint64_t max_len, Budget& budget);

/// Size measure used by bounded element enumeration: exponent sum for
/// FreeAbelian, |n| for NonzeroIntegers, 0 for group monoids, sequence
/// length for Block, coordinate sum for products.
std::uint64_t element_size(const MonoidInstance& m, const Element& a);

/// All elements of size <= size_bound, deterministic order (identity first).
std::vector<Element> enumerate_elements(const MonoidInstance& m, std::uint64_t size_bound,
                                        Budget& budget);

/// All atoms of size <= size_bound, sorted.
std::vector<Element> atoms_up_to(const MonoidInstance& m, std::uint64_t size_bound,
                                 Budget& budget);

struct HalfFactorialReport {
    bool half_factorial = true;
    std::optional<Element> counterexample; // first non-unit with |L| >= 2
    LengthProfile counterexample_profile;
    std::uint64_t elements_checked = 0;
};

/// Checks that every enumerated non-unit of size <= size_bound has a
/// singleton set of lengths.
HalfFactorialReport is_half_factorial_upto(const MonoidInstance& m, std::uint64_t size_bound,
                                           Budget& budget);

} // namespace uf
