#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "uf/errors.hpp"
#include "uf/group.hpp"
#include "uf/zerosum.hpp"

namespace uf {

/// Exponent vector of the free abelian monoid (N_0^k, +).
using ExpVec = std::vector<std::uint64_t>;

struct Element;

/// Element of a direct product: one coordinate element per component.
struct Tuple {
    std::vector<Element> coords;
};

/// Element payload, one alternative per monoid kind:
///   ExpVec        — FreeAbelian
///   std::int64_t  — NonzeroIntegers
///   GroupElem     — FiniteAbelianGroupAsMonoid
///   Sequence      — BlockMonoid (sorted terms = canonical form)
///   Tuple         — DirectProduct
struct Element {
    std::variant<ExpVec, std::int64_t, GroupElem, Sequence, Tuple> v;
};

bool operator==(const Tuple& a, const Tuple& b);
bool operator<(const Tuple& a, const Tuple& b);
inline bool operator==(const Element& a, const Element& b) { return a.v == b.v; }
inline bool operator!=(const Element& a, const Element& b) { return !(a == b); }
inline bool operator<(const Element& a, const Element& b) { return a.v < b.v; }
inline bool operator==(const Tuple& a, const Tuple& b) { return a.coords == b.coords; }
inline bool operator<(const Tuple& a, const Tuple& b) { return a.coords < b.coords; }

/// A concrete commutative cancellative monoid with decidable multiplication,
/// unit test, atom test and bounded factorization enumeration.
class MonoidInstance {
public:
    enum class Kind { FreeAbelian, NonzeroIntegers, GroupAsMonoid, Block, DirectProduct };

    static MonoidInstance free_abelian(std::size_t rank);
    static MonoidInstance nonzero_integers();
    static MonoidInstance group_as_monoid(FiniteAbelianGroup G);
    static MonoidInstance block(FiniteAbelianGroup G);
    static MonoidInstance direct_product(std::vector<MonoidInstance> components);

    /// Compact syntax: "free:2", "z", "bg:c3", "group:c2xc2",
    /// "prod:bg:c3+z" (components joined with '+').
    static MonoidInstance parse(const std::string& text);

    Kind kind() const { return kind_; }
    std::size_t rank() const { return rank_; }
    const FiniteAbelianGroup& group() const { return group_; }
    const std::vector<MonoidInstance>& components() const { return components_; }

    std::string name() const;
    bool operator==(const MonoidInstance& o) const;

    Element identity() const;
    bool valid(const Element& a) const;

    /// Canonical form (sorted sequence terms, componentwise for tuples).
    /// Distinct associates stay distinct: this is element normalization only.
    Element canonical(const Element& a) const;

    Element mul(const Element& a, const Element& b) const;

    bool is_unit(const Element& a) const;

    /// Canonical representative of the associate class of a:
    /// sign-normalized for NonzeroIntegers, the identity for units,
    /// componentwise for products, a itself elsewhere.
    Element associate_canonical(const Element& a) const;

    bool associated(const Element& a, const Element& b) const;

    bool is_atom(const Element& a, Budget& budget) const;

    /// Human-readable rendering of an element.
    std::string show(const Element& a) const;

    /// Parses kind-specific element syntax (see README / cli docs).
    Element parse_element(const std::string& text) const;

private:
    Kind kind_ = Kind::NonzeroIntegers;
    std::size_t rank_ = 0;              // FreeAbelian
    FiniteAbelianGroup group_;          // GroupAsMonoid / Block
    std::vector<MonoidInstance> components_; // DirectProduct

    void require_valid(const Element& a) const;
};

} // namespace uf
