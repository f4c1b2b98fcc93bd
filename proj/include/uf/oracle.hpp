#pragma once

#include <set>

#include "uf/factorize.hpp"

namespace uf {

/// Reference implementations for tests, deliberately independent of the
/// engine's factorization DFS: atom candidates come from exhaustive element
/// enumeration filtered through is_atom, and class sets are built by a
/// memoized top-down recursion f(v) = { M ⊎ {A} : A atom dividing v,
/// M ∈ f(v/A) } without the engine's ordering tricks.
std::set<Multiset<Element>> oracle_factorizations(const MonoidInstance& m, const Element& a,
                                                  std::uint64_t max_len, Budget& budget);

LengthProfile oracle_length_profile(const MonoidInstance& m, const Element& a,
                                    std::uint64_t max_len, Budget& budget);

} // namespace uf
