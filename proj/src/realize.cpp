#include <algorithm>
#include <future>

#include "uf/factorize.hpp"
#include "uf/zerosum.hpp"

namespace uf {

RealizeOutcome realize_set_search(const FiniteAbelianGroup& G,
                                  const std::set<std::uint64_t>& L,
                                  std::uint64_t max_seq_len, Budget& budget) {
    if (L.empty()) throw domain_error("realize_set_search: target set is empty");
    if (*L.begin() < 2)
        throw domain_error("realize_set_search: target lengths must be >= 2");
    RealizeOutcome outcome;
    if (max_seq_len == 0) {
        // any factorization of length max(L) uses atoms of length <= D(G)
        max_seq_len = *L.rbegin() * davenport(G, budget).value;
    }
    outcome.search_ceiling = max_seq_len;
    MonoidInstance m = MonoidInstance::block(G);
    // Candidates by increasing length, then lexicographic (the enumeration
    // order of zero_sum_sequences_up_to), first verified match wins.
    for (const Sequence& U : zero_sum_sequences_up_to(G, max_seq_len, budget)) {
        if (U.empty()) continue;
        ++outcome.candidates_examined;
        // A profile computed up to |U| is complete: no factorization has
        // more atoms than terms.
        LengthProfile p = length_profile(m, Element{U}, U.size(), budget);
        if (p.lengths() == L) {
            outcome.witness = U;
            return outcome;
        }
    }
    return outcome;
}

ExceptionalReport exceptional_groups(const std::set<std::uint64_t>& L,
                                     std::uint64_t order_bound,
                                     std::uint64_t max_seq_len,
                                     std::uint64_t node_cap_per_group,
                                     unsigned parallelism) {
    ExceptionalReport report;
    report.target = L;
    std::vector<FiniteAbelianGroup> groups = groups_up_to_order(order_bound);

    struct PerGroup {
        bool budget_hit = false;
        RealizeOutcome outcome;
    };
    auto run_one = [&](const FiniteAbelianGroup& G) {
        PerGroup r;
        Budget budget(node_cap_per_group);
        try {
            r.outcome = realize_set_search(G, L, max_seq_len, budget);
        } catch (const budget_exhausted&) {
            r.budget_hit = true;
        }
        return r;
    };

    std::vector<PerGroup> results(groups.size());
    if (parallelism <= 1) {
        for (std::size_t i = 0; i < groups.size(); ++i) results[i] = run_one(groups[i]);
    } else {
        std::vector<std::future<PerGroup>> futs;
        futs.reserve(groups.size());
        for (std::size_t i = 0; i < groups.size(); ++i)
            futs.push_back(std::async(std::launch::async, run_one, groups[i]));
        for (std::size_t i = 0; i < groups.size(); ++i) results[i] = futs[i].get();
    }
    // merge in group order, so output is deterministic regardless of parallelism
    for (std::size_t i = 0; i < groups.size(); ++i) {
        if (results[i].budget_hit)
            report.budget_exceeded.push_back(groups[i]);
        else if (results[i].outcome.witness)
            report.realized.emplace_back(groups[i], *results[i].outcome.witness);
        else
            report.exceptional.push_back(groups[i]);
    }
    return report;
}

} // namespace uf
