#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uf/filter_engine.hpp"

namespace uf {

/// Degree functions on the catalog monoids. Both implemented kinds are
/// multiplicative (deg(ab) = deg(a) + deg(b)) and vanish exactly on units.
enum class DegreeKind {
    SequenceLength, // block monoids only: deg(U) = |U|
    Canonical,      // via the divisor theory: word length of the image
    PolynomialLikeStub, // reserved; not implemented
};

std::uint64_t deg(DegreeKind d, const MonoidInstance& m, const Element& a);

/// Ultralimit of the per-index degree sequence: deg(h*) = n when the n-level
/// set is in the ultrafilter, ∞ when no finite level set is.
Verdict<ExtNat> proto_degree(const ElementFamily& fam, const UltrafilterSpec& spec);

/// Membership in the protoproduct H♭ = deg⁻¹(ℕ0): proto_degree is finite.
Verdict<bool> in_protoproduct(const ElementFamily& fam, const UltrafilterSpec& spec);

struct DivisorClosedReport {
    bool ok = true;
    std::uint64_t elements_checked = 0;
    std::uint64_t pairs_checked = 0;
    std::optional<Element> counterexample;
    std::string detail;
};

/// Checks that deg⁻¹(ℕ0) is a divisor-closed submonoid over the enumerated
/// range: degrees add along every division d = a·b, and the set of lengths
/// of d computed with finite-degree atoms only agrees with the one computed
/// in the full monoid.
DivisorClosedReport divisor_closed_check(const MonoidInstance& m, DegreeKind dk,
                                         std::uint64_t size_bound, Budget& budget);

struct BgProtoIsoReport {
    std::uint64_t left_count = 0;  // zero-sum sequences of degree <= bound
    std::uint64_t right_count = 0; // distinct products of atom multisets (engine path)
    bool counts_match = false;
    bool injective = false;
    bool surjective = false;
    bool multiplicative = false;
    bool atoms_match = false; // minimal zero-sum <-> atom family (via up_is_atom)
    bool ok = false;
    std::string detail;
};

/// Verifies on the degree-<=-bound slice that U |-> (constant family of U)
/// is an isomorphism B(G) -> H♭: well-defined, injective, surjective,
/// multiplicative, and atom-preserving (cross-checked with up_is_atom).
BgProtoIsoReport bg_proto_iso_check(const FiniteAbelianGroup& G, std::uint64_t degree_bound,
                                    const UltrafilterSpec& spec, Budget& budget);

struct DivisorTheoryImage {
    FiniteAbelianGroup base;       // letter set P = G
    Sequence word;                 // image of U in F(P): the sequence itself
    std::uint64_t degree = 0;      // word length = canonical degree
    FiniteAbelianGroup class_group; // = G for constant-G families
    bool inclusion_is_divisor_theory = true; // false exactly for |G| = 2
    bool primes_in_every_class = true;       // every class carries a prime divisor
    std::string detail;
};

/// The divisor-theoretic image of a zero-sum sequence under the inclusion
/// B(G) -> F(G), with the class-group report for the protoproduct.
DivisorTheoryImage divisor_theory_BG(const FiniteAbelianGroup& G, const Sequence& U);

struct GcdCoverRow {
    Element letter; // the prime letter as a Block element
    Sequence a, b;  // zero-sum witnesses with gcd(word(a), word(b)) = letter
    bool ok = false;
};

struct GcdCoverReport {
    FiniteAbelianGroup G;
    bool inclusion_theory = true; // letters = G; for |G| = 2 letters = the atoms
    std::vector<GcdCoverRow> rows;
    bool ok = false;
};

/// Approximation property with n = 2 for B(G): every prime letter of the
/// divisor theory is the gcd of the images of two monoid elements. Searches
/// pairs of zero-sum sequences of length <= max_len; throws domain_error if
/// some letter has no witness within the bound.
GcdCoverReport gcd_cover_check(const FiniteAbelianGroup& G, std::uint64_t max_len,
                               Budget& budget);

/// The image word of U in the divisor theory used by gcd_cover_check,
/// as a multiset of prime letters (Block elements).
Multiset<Element> divisor_word(const FiniteAbelianGroup& G, const Sequence& U,
                               bool inclusion_theory, Budget& budget);

struct PrimePowerGap {
    std::uint64_t k = 0;
    std::uint64_t p = 0, q = 0;
    std::uint64_t x = 0, y = 0; // exponents with p^x = q^y = 1 mod N
    std::uint64_t N = 0;        // product of the k chosen primes
    std::vector<std::uint64_t> primes; // k primes dividing N and the difference
    std::string difference;     // exact decimal value of p^x - q^y
    std::uint64_t difference_digits = 0;
    bool verified = false;      // N and every listed prime divide the difference
};

/// A difference of two prime powers with at least k distinct prime divisors:
/// N = 3·5·…(first k odd primes), p = 2, q = the next prime, x = y = lcm of
/// the multiplicative orders of p and q mod N. Exact big-integer arithmetic.
PrimePowerGap prime_power_gap(std::uint64_t k, Budget& budget);

} // namespace uf
