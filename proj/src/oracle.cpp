#include "uf/oracle.hpp"

#include <map>

namespace uf {

namespace {

struct OracleCtx {
    const MonoidInstance& m;
    const std::vector<Element>& atoms;
    Budget& budget;
    std::map<Element, std::set<Multiset<Element>>> memo;
};

const std::set<Multiset<Element>>& oracle_rec(OracleCtx& ctx, const Element& v) {
    const Element key = ctx.m.canonical(ctx.m.associate_canonical(v));
    auto it = ctx.memo.find(key);
    if (it != ctx.memo.end()) return it->second;
    ctx.budget.tick("oracle");
    std::set<Multiset<Element>> out;
    if (ctx.m.is_unit(key)) {
        out.insert(Multiset<Element>{});
    } else {
        for (const Element& at : ctx.atoms) {
            Element rest;
            try {
                rest = divide(ctx.m, key, at);
            } catch (const domain_error&) {
                continue; // at does not divide key
            }
            for (const Multiset<Element>& sub : oracle_rec(ctx, rest)) {
                Multiset<Element> ms = sub;
                ms.add(at);
                out.insert(std::move(ms));
            }
        }
    }
    return ctx.memo.emplace(key, std::move(out)).first->second;
}

} // namespace

std::set<Multiset<Element>> oracle_factorizations(const MonoidInstance& m, const Element& a,
                                                  std::uint64_t max_len, Budget& budget) {
    if (!m.valid(a)) throw domain_error("element does not belong to " + m.name());
    // candidate atoms: every enumerated element that passes is_atom and
    // whose size can contribute to a factorization of a
    const std::uint64_t bound = element_size(m, a);
    std::vector<Element> atoms;
    for (const Element& e : enumerate_elements(m, bound, budget))
        if (m.is_atom(e, budget)) atoms.push_back(m.canonical(m.associate_canonical(e)));

    OracleCtx ctx{m, atoms, budget, {}};
    const std::set<Multiset<Element>>& all = oracle_rec(ctx, a);
    std::set<Multiset<Element>> out;
    for (const auto& ms : all)
        if (ms.size() <= max_len) out.insert(ms);
    return out;
}

LengthProfile oracle_length_profile(const MonoidInstance& m, const Element& a,
                                    std::uint64_t max_len, Budget& budget) {
    LengthProfile p;
    for (const auto& ms : oracle_factorizations(m, a, max_len, budget))
        p.set(ms.size(), p.multiplicity(ms.size()) + ExtNat(1));
    return p;
}

} // namespace uf
