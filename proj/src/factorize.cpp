#include "uf/factorize.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace uf {

namespace {

std::vector<std::int64_t> prime_factors(std::int64_t n, Budget& budget) {
    std::vector<std::int64_t> out;
    n = std::abs(n);
    for (std::int64_t d = 2; d * d <= n; ++d) {
        budget.tick("prime_factors");
        while (n % d == 0) {
            out.push_back(d);
            n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Multiset difference U \ A for sorted sequences; nullopt if A is not a
// subsequence of U.
std::optional<Sequence> sequence_minus(const Sequence& U, const Sequence& A) {
    Sequence out;
    std::size_t i = 0, j = 0;
    while (i < U.size()) {
        if (j < A.size() && U[i] == A[j]) {
            ++i;
            ++j;
        } else if (j < A.size() && A[j] < U[i]) {
            return std::nullopt;
        } else {
            out.push_back(U[i]);
            ++i;
        }
    }
    if (j < A.size()) return std::nullopt;
    return out;
}

} // namespace

std::vector<Element> atoms_dividing(const MonoidInstance& m, const Element& a, Budget& budget) {
    if (!m.valid(a)) throw domain_error("element does not belong to " + m.name());
    std::vector<Element> out;
    switch (m.kind()) {
        case MonoidInstance::Kind::FreeAbelian: {
            const ExpVec& e = std::get<ExpVec>(a.v);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] >= 1) {
                    ExpVec atom(e.size(), 0);
                    atom[i] = 1;
                    out.push_back(Element{std::move(atom)});
                }
            break;
        }
        case MonoidInstance::Kind::NonzeroIntegers: {
            auto primes = prime_factors(std::get<std::int64_t>(a.v), budget);
            std::sort(primes.begin(), primes.end());
            primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
            for (std::int64_t p : primes) out.push_back(Element{p});
            break;
        }
        case MonoidInstance::Kind::GroupAsMonoid:
            break; // no atoms: every element is a unit
        case MonoidInstance::Kind::Block: {
            const Sequence& U = std::get<Sequence>(a.v);
            for (Sequence& s :
                 minimal_zero_sum_subsequences(m.group(), canonical_sequence(U), budget))
                out.push_back(Element{std::move(s)});
            break;
        }
        case MonoidInstance::Kind::DirectProduct: {
            const Tuple& t = std::get<Tuple>(a.v);
            for (std::size_t i = 0; i < m.components().size(); ++i) {
                for (Element& atom : atoms_dividing(m.components()[i], t.coords[i], budget)) {
                    Tuple lifted;
                    for (std::size_t j = 0; j < m.components().size(); ++j)
                        lifted.coords.push_back(j == i ? std::move(atom)
                                                       : m.components()[j].identity());
                    out.push_back(Element{std::move(lifted)});
                }
            }
            break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Element divide(const MonoidInstance& m, const Element& a, const Element& d) {
    if (!m.valid(a) || !m.valid(d)) throw domain_error("element does not belong to " + m.name());
    switch (m.kind()) {
        case MonoidInstance::Kind::FreeAbelian: {
            ExpVec out = std::get<ExpVec>(a.v);
            const ExpVec& e = std::get<ExpVec>(d.v);
            for (std::size_t i = 0; i < out.size(); ++i) {
                if (out[i] < e[i]) throw domain_error("divide: not a divisor");
                out[i] -= e[i];
            }
            return Element{std::move(out)};
        }
        case MonoidInstance::Kind::NonzeroIntegers: {
            std::int64_t x = std::get<std::int64_t>(a.v), y = std::get<std::int64_t>(d.v);
            if (x % y != 0) throw domain_error("divide: not a divisor");
            return Element{x / y};
        }
        case MonoidInstance::Kind::GroupAsMonoid:
            return Element{m.group().add(std::get<GroupElem>(a.v),
                                         m.group().neg(std::get<GroupElem>(d.v)))};
        case MonoidInstance::Kind::Block: {
            auto rest = sequence_minus(canonical_sequence(std::get<Sequence>(a.v)),
                                       canonical_sequence(std::get<Sequence>(d.v)));
            if (!rest) throw domain_error("divide: not a subsequence");
            if (!is_zero_sum(m.group(), *rest)) throw domain_error("divide: quotient not zero-sum");
            return Element{std::move(*rest)};
        }
        case MonoidInstance::Kind::DirectProduct: {
            const Tuple& ta = std::get<Tuple>(a.v);
            const Tuple& td = std::get<Tuple>(d.v);
            Tuple out;
            for (std::size_t i = 0; i < m.components().size(); ++i)
                out.coords.push_back(divide(m.components()[i], ta.coords[i], td.coords[i]));
            return Element{std::move(out)};
        }
    }
    throw domain_error("divide: unsupported kind");
}

namespace {

// Atoms are chosen in nondecreasing canonical order (each candidate must be
// >= the largest atom already in acc), so every multiset appears exactly once.
void factor_rec(const MonoidInstance& m, const Element& rest, Multiset<Element>& acc,
                std::uint64_t max_len, Budget& budget, std::set<Multiset<Element>>& out) {
    budget.tick("factorizations");
    if (m.is_unit(rest)) {
        out.insert(acc);
        return;
    }
    if (acc.size() >= max_len) return;
    for (const Element& atom : atoms_dividing(m, rest, budget)) {
        if (!acc.empty() && atom < acc.entries().rbegin()->first) continue;
        Element next = m.canonical(divide(m, rest, atom));
        acc.add(atom);
        factor_rec(m, next, acc, max_len, budget, out);
        acc.remove_one(atom);
    }
}

} // namespace

std::vector<Factorization> factorizations(const MonoidInstance& m, const Element& a,
                                          std::uint64_t max_len, Budget& budget) {
    if (!m.valid(a)) throw domain_error("element does not belong to " + m.name());
    std::set<Multiset<Element>> found;
    if (m.is_unit(a)) {
        found.insert(Multiset<Element>{}); // the empty factorization
    } else {
        // Work with the associate-canonical form: for NonzeroIntegers this
        // turns -12 into 12, whose factorizations are the same up to units.
        Element start = m.canonical(m.associate_canonical(a));
        Multiset<Element> acc;
        factor_rec(m, start, acc, max_len, budget, found);
    }
    std::vector<Factorization> out;
    for (const auto& ms : found) out.push_back(Factorization{ms});
    return out;
}

LengthProfile length_profile(const MonoidInstance& m, const Element& a, std::uint64_t max_len,
                             Budget& budget) {
    LengthProfile profile;
    for (const Factorization& f : factorizations(m, a, max_len, budget))
        profile.set(f.length(), profile.multiplicity(f.length()) + ExtNat(1));
    return profile;
}

std::uint64_t element_size(const MonoidInstance& m, const Element& a) {
    if (!m.valid(a)) throw domain_error("element does not belong to " + m.name());
    switch (m.kind()) {
        case MonoidInstance::Kind::FreeAbelian: {
            std::uint64_t s = 0;
            for (std::uint64_t e : std::get<ExpVec>(a.v)) s += e;
            return s;
        }
        case MonoidInstance::Kind::NonzeroIntegers:
            return static_cast<std::uint64_t>(std::abs(std::get<std::int64_t>(a.v)));
        case MonoidInstance::Kind::GroupAsMonoid: return 0;
        case MonoidInstance::Kind::Block: return std::get<Sequence>(a.v).size();
        case MonoidInstance::Kind::DirectProduct: {
            std::uint64_t s = 0;
            const Tuple& t = std::get<Tuple>(a.v);
            for (std::size_t i = 0; i < m.components().size(); ++i)
                s += element_size(m.components()[i], t.coords[i]);
            return s;
        }
    }
    return 0;
}

namespace {

void enumerate_free(std::size_t rank, std::uint64_t bound, std::vector<Element>& out) {
    // graded enumeration: by total exponent sum, then lexicographic
    for (std::uint64_t total = 0; total <= bound; ++total) {
        // enumerate all vectors with sum == total in lex order
        std::vector<std::uint64_t> cur(rank, 0);
        auto rec = [&](auto&& self, std::size_t pos, std::uint64_t remaining) -> void {
            if (pos + 1 == rank) {
                cur[pos] = remaining;
                out.push_back(Element{ExpVec(cur)});
                return;
            }
            for (std::uint64_t e = 0; e <= remaining; ++e) {
                cur[pos] = e;
                self(self, pos + 1, remaining - e);
            }
        };
        if (rank == 0) {
            if (total == 0) out.push_back(Element{ExpVec{}});
        } else {
            rec(rec, 0, total);
        }
    }
}

} // namespace

std::vector<Element> enumerate_elements(const MonoidInstance& m, std::uint64_t size_bound,
                                        Budget& budget) {
    std::vector<Element> out;
    switch (m.kind()) {
        case MonoidInstance::Kind::FreeAbelian:
            enumerate_free(m.rank(), size_bound, out);
            break;
        case MonoidInstance::Kind::NonzeroIntegers:
            for (std::int64_t n = 1; n <= static_cast<std::int64_t>(size_bound); ++n) {
                budget.tick("enumerate_elements");
                out.push_back(Element{n});
                out.push_back(Element{-n});
            }
            break;
        case MonoidInstance::Kind::GroupAsMonoid:
            for (const GroupElem& g : m.group().elements()) out.push_back(Element{g});
            break;
        case MonoidInstance::Kind::Block:
            for (Sequence& s : zero_sum_sequences_up_to(m.group(), size_bound, budget))
                out.push_back(Element{std::move(s)});
            break;
        case MonoidInstance::Kind::DirectProduct: {
            // tuples with total coordinate size <= bound, coordinate 0 varying slowest
            std::vector<std::vector<Element>> per_comp;
            for (const auto& c : m.components())
                per_comp.push_back(enumerate_elements(c, size_bound, budget));
            Tuple cur;
            cur.coords.resize(m.components().size(), Element{std::int64_t{1}});
            auto rec = [&](auto&& self, std::size_t pos, std::uint64_t used) -> void {
                if (pos == m.components().size()) {
                    out.push_back(Element{cur});
                    return;
                }
                for (const Element& e : per_comp[pos]) {
                    budget.tick("enumerate_elements");
                    std::uint64_t s = element_size(m.components()[pos], e);
                    if (used + s > size_bound) continue;
                    cur.coords[pos] = e;
                    self(self, pos + 1, used + s);
                }
            };
            rec(rec, 0, 0);
            break;
        }
    }
    return out;
}

std::vector<Element> atoms_up_to(const MonoidInstance& m, std::uint64_t size_bound,
                                 Budget& budget) {
    std::vector<Element> out;
    if (size_bound == 0) return out;
    if (m.kind() == MonoidInstance::Kind::Block) {
        // already in (length, lex) order, the canonical order for sequences
        for (Sequence& s : minimal_zero_sum_sequences(m.group(), size_bound, budget))
            out.push_back(Element{std::move(s)});
    } else {
        for (const Element& e : enumerate_elements(m, size_bound, budget)) {
            if (m.is_atom(e, budget)) {
                Element c = m.associate_canonical(e);
                if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
            }
        }
        std::sort(out.begin(), out.end());
    }
    return out;
}

HalfFactorialReport is_half_factorial_upto(const MonoidInstance& m, std::uint64_t size_bound,
                                           Budget& budget) {
    HalfFactorialReport report;
    for (const Element& e : enumerate_elements(m, size_bound, budget)) {
        if (m.is_unit(e)) continue;
        ++report.elements_checked;
        LengthProfile p = length_profile(m, e, size_bound, budget);
        if (p.lengths().size() >= 2) {
            report.half_factorial = false;
            report.counterexample = e;
            report.counterexample_profile = p;
            return report;
        }
    }
    return report;
}

} // namespace uf
