#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "uf/factorize.hpp"
#include "uf/family.hpp"

namespace uf {

/// Membership verdict for the set {λ : S_λ} under the given ultrafilter
/// semantics. Frechet mode: ForAll(true) iff the set is cofinite, ForAll
/// (false) iff finite, otherwise DependsOnU.
Verdict<bool> filter_contains(const BoolFamily& S, const UltrafilterSpec& spec);

/// Ultralimit of an ExtNat family: ForAll(n) iff {λ: v_λ = n} is cofinite,
/// ForAll(∞) for certified unbounded families, otherwise the candidates are
/// the values attained on infinite index sets.
Verdict<ExtNat> ultralimit(const ExtNatFamily& v, const UltrafilterSpec& spec);

/// Certified derived families (closed form per element rule).
BoolFamily derived_is_unit(const ElementFamily& fam, Budget& budget);
BoolFamily derived_is_atom(const ElementFamily& fam, Budget& budget);
ExtNatFamily derived_length_multiplicity(const ElementFamily& fam, std::uint64_t ell,
                                         Budget& budget);

Verdict<bool> up_is_unit(const ElementFamily& fam, const UltrafilterSpec& spec, Budget& budget);
Verdict<bool> up_is_atom(const ElementFamily& fam, const UltrafilterSpec& spec, Budget& budget);
Verdict<ExtNat> up_length_multiplicity(const ElementFamily& fam, std::uint64_t ell,
                                       const UltrafilterSpec& spec, Budget& budget);
Verdict<bool> up_length_contains(const ElementFamily& fam, std::uint64_t ell,
                                 const UltrafilterSpec& spec, Budget& budget);

/// Bounded membership test for H*_A (elements admitting a factorization):
/// ForAll(true) when some N <= N_max certifies membership on a cofinite set,
/// ForAll(false) when the rule certifies monotone failure beyond N_max
/// (PrimePowerRamp does), Inconclusive otherwise. The note names the
/// witnessing N or the reason.
Verdict<bool> up_in_HA(const ElementFamily& fam, const UltrafilterSpec& spec,
                       std::uint64_t N_max, Budget& budget);

struct MultisetTransferRow {
    std::uint64_t ell = 0;
    ExtNat expected;
    Verdict<ExtNat> verdict;
    bool probe = false; // true for lengths outside the support (expected 0)
    bool ok = false;
};

struct RealizerRow {
    std::uint64_t lambda = 0;
    std::set<std::uint64_t> target_set;
    std::optional<Sequence> witness;
    bool verified = false;
};

struct MultisetTransferReport {
    LengthProfile target;
    std::vector<std::uint64_t> enumeration_prefix; // first values of f
    std::vector<MultisetTransferRow> rows;
    bool ok = false;
    bool realizer_attempted = false;
    bool realizer_ok = false;
    std::string realizer_note;
    std::vector<RealizerRow> realizer_rows;
};

/// Multiset transfer: builds the TruncationRamp family for L and checks
/// that every multiplicity transfers exactly (finite ones as ForAll(n), ∞ as
/// ForAll(∞), off-support probes as ForAll(0)). If realizer_group is given,
/// per-λ witnesses with the truncated sets of lengths are searched in
/// B(realizer_group) and re-verified; otherwise the report is explicitly
/// labeled transfer-level only.
MultisetTransferReport realize_multiset_transfer(
    const LengthProfile& L, const UltrafilterSpec& spec, Budget& budget,
    const std::optional<FiniteAbelianGroup>& realizer_group = std::nullopt,
    std::uint64_t realizer_window = 6);

struct FactorialCheckCase {
    std::uint64_t lambda = 0;
    bool unique_class = false;
    bool length_matches = false;
    bool class_matches_inputs = false;
};

struct FactorialCheckReport {
    bool ok = false;
    std::uint64_t n = 0;       // number of atom families = factorization length
    std::uint64_t window = 0;  // indices checked: pre + 2 * combined period
    std::vector<FactorialCheckCase> cases;
    // residue class (mod combined period) -> permutation matching the input
    // tuple against the canonical factorization, as in the S_n argument
    std::vector<std::pair<std::uint64_t, std::vector<std::size_t>>> sigma_per_residue;
    std::string certificate;
};

/// Factorial-submonoid property: for constant/periodic atom families over a
/// factorial component (FreeAbelian or NonzeroIntegers), the per-λ product
/// has exactly one essential-sameness class, of length n, equal to the input
/// atom multiset; a permutation certificate is produced per residue class.
FactorialCheckReport factorial_uniqueness_check(const std::vector<ElementFamily>& fams,
                                                const UltrafilterSpec& spec, Budget& budget);

/// Principal-ultrafilter ultraproduct over a finite index set: the length
/// profile of the class of (a_0,...,a_k) equals the profile of the selected
/// component. Verified through the explicit lift of every factorization.
LengthProfile finite_index_ultraproduct_lengths(
    const std::vector<std::pair<MonoidInstance, Element>>& components, std::size_t selected,
    std::uint64_t max_len, Budget& budget);

} // namespace uf
