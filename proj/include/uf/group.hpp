#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace uf {

/// Element of a finite abelian group in coordinates w.r.t. the invariant
/// factor decomposition; coordinate i lives in Z/d_i.
using GroupElem = std::vector<std::uint32_t>;

/// Finite abelian group C_{d_1} ⊕ ... ⊕ C_{d_k} with d_1 | d_2 | ... | d_k,
/// every d_i >= 2. The trivial group has an empty factor list.
class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() = default; // trivial group

    /// Factors must form a divisibility chain d_1 | d_2 | ... | d_k;
    /// use from_cyclic_orders() for arbitrary products.
    explicit FiniteAbelianGroup(std::vector<std::uint32_t> invariant_factors);

    /// Builds C_{n_1} ⊕ ... ⊕ C_{n_k} for arbitrary n_i >= 1 and normalizes
    /// to invariant factors (so c3xc5 and c15 compare equal).
    static FiniteAbelianGroup from_cyclic_orders(const std::vector<std::uint32_t>& orders);

    /// Parses "c1", "c6", "c2xc2x c4", "C2 x C4" (case/space-insensitive).
    static FiniteAbelianGroup parse(const std::string& text);

    const std::vector<std::uint32_t>& invariant_factors() const { return factors_; }
    std::uint64_t order() const { return order_; }
    std::size_t rank() const { return factors_.size(); }
    bool is_trivial() const { return factors_.empty(); }

    GroupElem zero() const { return GroupElem(factors_.size(), 0); }
    bool is_zero(const GroupElem& a) const;
    GroupElem add(const GroupElem& a, const GroupElem& b) const;
    GroupElem neg(const GroupElem& a) const;
    GroupElem mul_int(const GroupElem& a, std::uint64_t n) const;

    /// Order of the element in the group.
    std::uint64_t elem_order(const GroupElem& a) const;

    /// Mixed-radix bijection {0,...,order-1} <-> elements.
    GroupElem element_at(std::uint64_t index) const;
    std::uint64_t index_of(const GroupElem& a) const;

    /// All elements, in index order (zero first).
    std::vector<GroupElem> elements() const;
    /// All elements except zero, in index order.
    std::vector<GroupElem> nonzero_elements() const;

    /// True if a has valid rank and each coordinate is reduced mod d_i.
    bool contains(const GroupElem& a) const;

    /// 1 + sum (d_i - 1); upper bound used by the Davenport search.
    std::uint64_t davenport_ceiling() const;

    /// "C_1", "C_6", "C_2 x C_4".
    std::string name() const;

    friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
        return a.factors_ == b.factors_;
    }
    friend bool operator<(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
        if (a.order_ != b.order_) return a.order_ < b.order_;
        return a.factors_ < b.factors_;
    }

private:
    std::vector<std::uint32_t> factors_; // divisibility chain, smallest first
    std::uint64_t order_ = 1;
};

/// All isomorphism classes of finite abelian groups of order <= max_order,
/// sorted by (order, invariant factors).
std::vector<FiniteAbelianGroup> groups_up_to_order(std::uint64_t max_order);

} // namespace uf
