#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "uf/errors.hpp"
#include "uf/group.hpp"

namespace uf {

/// Sequence over a finite abelian group: a finite multiset of group elements,
/// stored as a lexicographically sorted vector of terms (canonical form).
using Sequence = std::vector<GroupElem>;

/// Sorts the terms; every public function expects/returns canonical sequences.
Sequence canonical_sequence(Sequence s);

/// Sum of all terms; sigma(empty) = 0.
GroupElem sigma(const FiniteAbelianGroup& G, const Sequence& S);

bool is_zero_sum(const FiniteAbelianGroup& G, const Sequence& S);

/// True iff no proper nonempty subsequence has sum 0. The sequence must be a
/// nonempty zero-sum sequence, otherwise domain_error. Minimal zero-sum
/// sequences are exactly the atoms of the block monoid B(G).
bool is_minimal_zero_sum(const FiniteAbelianGroup& G, const Sequence& S);

/// All minimal zero-sum sequences of length <= max_len, sorted by
/// (length, lexicographic on the sorted term list).
std::vector<Sequence> minimal_zero_sum_sequences(const FiniteAbelianGroup& G,
                                                 std::uint64_t max_len, Budget& budget);

/// All minimal zero-sum subsequences of U (the atoms of B(G) dividing U).
std::vector<Sequence> minimal_zero_sum_subsequences(const FiniteAbelianGroup& G,
                                                    const Sequence& U, Budget& budget);

/// All zero-sum sequences of length <= max_len, including the empty one,
/// sorted by (length, lex). These are the elements of B(G) of bounded size.
std::vector<Sequence> zero_sum_sequences_up_to(const FiniteAbelianGroup& G,
                                               std::uint64_t max_len, Budget& budget);

struct DavenportResult {
    std::uint64_t value = 0;
    Sequence witness; // a minimal zero-sum sequence of maximal length
};

/// Davenport constant D(G): maximal length of a minimal zero-sum sequence.
/// Enumerates minimal sequences up to the ceiling 1 + sum(n_i - 1).
DavenportResult davenport(const FiniteAbelianGroup& G, Budget& budget);

struct RealizeOutcome {
    std::optional<Sequence> witness; // nullopt = NotFound within bounds
    std::uint64_t candidates_examined = 0;
    std::uint64_t search_ceiling = 0;
};

/// Searches for U in B(G) whose set of lengths equals L exactly. Candidates
/// are scanned by increasing length, then lexicographically; the first match
/// is re-verified through the factorization engine before being returned.
/// max_seq_len = 0 selects the default ceiling max(L) * davenport(G).
RealizeOutcome realize_set_search(const FiniteAbelianGroup& G,
                                  const std::set<std::uint64_t>& L,
                                  std::uint64_t max_seq_len, Budget& budget);

struct ExceptionalReport {
    std::set<std::uint64_t> target;
    std::vector<FiniteAbelianGroup> exceptional;    // NotFound within bounds
    std::vector<std::pair<FiniteAbelianGroup, Sequence>> realized;
    std::vector<FiniteAbelianGroup> budget_exceeded; // reported, never counted
};

/// Runs realize_set_search over every abelian group of order <= order_bound
/// (up to isomorphism). Groups whose per-group budget runs out are listed
/// separately. parallelism > 1 evaluates groups concurrently; the merged
/// output is in group order either way.
ExceptionalReport exceptional_groups(const std::set<std::uint64_t>& L,
                                     std::uint64_t order_bound,
                                     std::uint64_t max_seq_len,
                                     std::uint64_t node_cap_per_group,
                                     unsigned parallelism = 1);

} // namespace uf
