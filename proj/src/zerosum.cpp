#include "uf/zerosum.hpp"

#include <algorithm>

namespace uf {

Sequence canonical_sequence(Sequence s) {
    std::sort(s.begin(), s.end());
    return s;
}

GroupElem sigma(const FiniteAbelianGroup& G, const Sequence& S) {
    GroupElem sum = G.zero();
    for (const GroupElem& t : S) {
        if (!G.contains(t)) throw domain_error("sequence term out of range for the group");
        sum = G.add(sum, t);
    }
    return sum;
}

bool is_zero_sum(const FiniteAbelianGroup& G, const Sequence& S) {
    return G.is_zero(sigma(G, S));
}

bool is_minimal_zero_sum(const FiniteAbelianGroup& G, const Sequence& S) {
    if (S.empty()) throw domain_error("is_minimal_zero_sum: empty sequence");
    if (!is_zero_sum(G, S)) throw domain_error("is_minimal_zero_sum: input is not zero-sum");
    // Incrementally maintain the set of sums of proper nonempty subsequences
    // of the prefix processed so far (see enumeration below for the recurrence).
    std::vector<char> proper(G.order(), 0);
    GroupElem full = G.zero();
    bool first = true;
    for (const GroupElem& t : S) {
        std::vector<char> next = proper;
        if (!first) {
            next[G.index_of(full)] = 1;
            next[G.index_of(t)] = 1;
            for (std::uint64_t i = 0; i < G.order(); ++i)
                if (proper[i]) next[G.index_of(G.add(G.element_at(i), t))] = 1;
        }
        proper = std::move(next);
        full = G.add(full, t);
        first = false;
    }
    return !proper[0];
}

namespace {

// Addition table over element indices, built once per enumeration.
struct GroupTable {
    explicit GroupTable(const FiniteAbelianGroup& G) : n(G.order()) {
        add.resize(n * n);
        for (std::uint64_t i = 0; i < n; ++i)
            for (std::uint64_t j = 0; j < n; ++j)
                add[i * n + j] =
                    static_cast<std::uint32_t>(G.index_of(G.add(G.element_at(i), G.element_at(j))));
    }
    std::uint64_t n;
    std::vector<std::uint32_t> add;
    std::uint32_t plus(std::uint32_t a, std::uint32_t b) const {
        return add[static_cast<std::uint64_t>(a) * n + b];
    }
};

// Backtracking over nondecreasing (by lex order of terms) sequences of
// nonzero elements. State per node: indices of chosen terms, the full sum f,
// and the set P of sums of proper nonempty subsequences. Appending a term g:
//   P' = P ∪ {f} ∪ {g} ∪ (P + g)     (for a nonempty current sequence)
// A node with 0 ∈ P' can never extend to a minimal sequence; a node with
// f' = 0 and 0 ∉ P' is minimal and cannot be extended either.
class MinimalEnumerator {
public:
    MinimalEnumerator(const FiniteAbelianGroup& G, std::uint64_t max_len, Budget& budget)
        : G_(G), table_(G), max_len_(max_len), budget_(budget) {
        // Nonzero elements sorted lexicographically; terms are appended in
        // nondecreasing order of this list so every multiset appears once.
        for (const GroupElem& g : G.nonzero_elements()) nonzero_.push_back(g);
        std::sort(nonzero_.begin(), nonzero_.end());
        used_.assign(nonzero_.size(), 0);
    }

    // restrict: optional multiset of available term counts, indexed like nonzero_.
    std::vector<Sequence> run(const std::vector<std::uint64_t>* restrict_counts,
                              std::uint64_t zero_terms_available) {
        out_.clear();
        restrict_ = restrict_counts;
        if (max_len_ >= 1 && zero_terms_available >= 1)
            out_.push_back(Sequence{G_.zero()}); // the atom "0"
        if (max_len_ >= 1 && !nonzero_.empty()) {
            std::vector<char> proper(G_.order(), 0);
            std::vector<GroupElem> terms;
            rec(0, 0, proper, terms);
        }
        std::sort(out_.begin(), out_.end(), [](const Sequence& a, const Sequence& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return a < b;
        });
        return std::move(out_);
    }

private:
    void rec(std::size_t start, std::uint32_t full, const std::vector<char>& proper,
             std::vector<GroupElem>& terms) {
        for (std::size_t i = start; i < nonzero_.size(); ++i) {
            if (restrict_ && used_[i] >= (*restrict_)[i]) continue;
            budget_.tick("minimal_zero_sum_sequences");
            std::uint32_t gi =
                static_cast<std::uint32_t>(G_.index_of(nonzero_[i]));
            std::vector<char> next = proper;
            if (!terms.empty()) {
                next[full] = 1;
                next[gi] = 1;
                for (std::uint64_t s = 0; s < G_.order(); ++s)
                    if (proper[s]) next[table_.plus(static_cast<std::uint32_t>(s), gi)] = 1;
            }
            if (next[0]) continue; // a proper nonempty subsequence sums to 0
            std::uint32_t full2 = table_.plus(full, gi);
            terms.push_back(nonzero_[i]);
            if (restrict_) ++used_[i];
            if (full2 == 0)
                out_.push_back(terms); // minimal; extensions cannot be
            else if (terms.size() < max_len_)
                rec(i, full2, next, terms);
            if (restrict_) --used_[i];
            terms.pop_back();
        }
    }

    const FiniteAbelianGroup& G_;
    GroupTable table_;
    std::uint64_t max_len_;
    Budget& budget_;
    std::vector<GroupElem> nonzero_;
    const std::vector<std::uint64_t>* restrict_ = nullptr;
    std::vector<std::uint64_t> used_;
    std::vector<Sequence> out_;
};

} // namespace

std::vector<Sequence> minimal_zero_sum_sequences(const FiniteAbelianGroup& G,
                                                 std::uint64_t max_len, Budget& budget) {
    if (max_len < 1) throw domain_error("minimal_zero_sum_sequences: max_len must be >= 1");
    MinimalEnumerator e(G, max_len, budget);
    return e.run(nullptr, 1);
}

std::vector<Sequence> minimal_zero_sum_subsequences(const FiniteAbelianGroup& G,
                                                    const Sequence& U, Budget& budget) {
    std::uint64_t zeros = 0;
    std::vector<GroupElem> nonzero = G.nonzero_elements();
    std::sort(nonzero.begin(), nonzero.end());
    std::vector<std::uint64_t> counts(nonzero.size(), 0);
    for (const GroupElem& t : U) {
        if (!G.contains(t)) throw domain_error("sequence term out of range for the group");
        if (G.is_zero(t)) {
            ++zeros;
        } else {
            auto it = std::lower_bound(nonzero.begin(), nonzero.end(), t);
            ++counts[static_cast<std::size_t>(it - nonzero.begin())];
        }
    }
    if (U.empty()) return {};
    MinimalEnumerator e(G, U.size(), budget);
    return e.run(&counts, zeros);
}

std::vector<Sequence> zero_sum_sequences_up_to(const FiniteAbelianGroup& G,
                                               std::uint64_t max_len, Budget& budget) {
    std::vector<GroupElem> elems = G.elements();
    std::sort(elems.begin(), elems.end());
    std::vector<Sequence> out;
    out.push_back({}); // the empty sequence (identity of B(G))
    std::vector<GroupElem> terms;
    // DFS over nondecreasing term sequences, tracking the running sum.
    auto rec = [&](auto&& self, std::size_t start, GroupElem sum) -> void {
        if (terms.size() >= max_len) return;
        for (std::size_t i = start; i < elems.size(); ++i) {
            budget.tick("zero_sum_sequences_up_to");
            GroupElem sum2 = G.add(sum, elems[i]);
            terms.push_back(elems[i]);
            if (G.is_zero(sum2)) out.push_back(terms);
            self(self, i, sum2);
            terms.pop_back();
        }
    };
    rec(rec, 0, G.zero());
    std::sort(out.begin(), out.end(), [](const Sequence& a, const Sequence& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

DavenportResult davenport(const FiniteAbelianGroup& G, Budget& budget) {
    std::uint64_t ceiling = G.davenport_ceiling();
    auto atoms = minimal_zero_sum_sequences(G, ceiling, budget);
    DavenportResult r;
    for (const Sequence& a : atoms) {
        if (a.size() > r.value) {
            r.value = a.size();
            r.witness = a;
        }
    }
    return r;
}

} // namespace uf
