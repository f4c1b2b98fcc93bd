#include "uf/filter_engine.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace uf {

namespace {

using Mode = UltrafilterSpec::Mode;
using Rule = ElementFamily::Rule;

bool pointwise_rule(const ElementFamily& fam) {
    return fam.rule == Rule::Constant || fam.rule == Rule::Periodic;
}

/// Evaluates fn over one combined pre+period window of a constant/periodic
/// family; the result is exact for every index by joint periodicity.
template <typename Fn>
BoolFamily pointwise_bool(const ElementFamily& fam, Fn&& fn) {
    const std::uint64_t pl = fam.pre_length();
    const std::uint64_t per = fam.period_length();
    std::vector<char> pre, period;
    for (std::uint64_t l = 0; l < pl; ++l) pre.push_back(fn(l) ? 1 : 0);
    for (std::uint64_t l = pl; l < pl + per; ++l) period.push_back(fn(l) ? 1 : 0);
    return BoolFamily::eventually_periodic(std::move(pre), std::move(period));
}

template <typename Fn>
ExtNatFamily pointwise_extnat(const ElementFamily& fam, Fn&& fn) {
    const std::uint64_t pl = fam.pre_length();
    const std::uint64_t per = fam.period_length();
    std::vector<ExtNat> pre, period;
    for (std::uint64_t l = 0; l < pl; ++l) pre.push_back(fn(l));
    for (std::uint64_t l = pl; l < pl + per; ++l) period.push_back(fn(l));
    return ExtNatFamily::eventually_periodic(std::move(pre), std::move(period));
}

/// B_N(λ) = "r_λ has a factorization of length <= N".
BoolFamily derived_in_band(const ElementFamily& fam, std::uint64_t N, Budget& budget) {
    switch (fam.rule) {
        case Rule::Constant:
        case Rule::Periodic:
            return pointwise_bool(fam, [&](std::uint64_t l) {
                return !factorizations(fam.component_at(l), fam.element_at(l), N, budget)
                            .empty();
            });
        case Rule::PrimePowerRamp: {
            // L(p^λ) = {λ}: inside the band exactly for λ <= N
            std::vector<char> pre(N + 1, 1);
            return BoolFamily::eventually_periodic(std::move(pre), {0});
        }
        case Rule::TruncationRamp: {
            // the least length at every index is min(support) (0 for the unit family)
            const std::uint64_t minlen =
                fam.target.empty() ? 0 : fam.target.mult.begin()->first;
            return BoolFamily::constant(N >= minlen);
        }
    }
    throw domain_error("bad element rule");
}

std::uint64_t truncation_min_length(const LengthProfile& target) {
    return target.empty() ? 0 : target.mult.begin()->first;
}

} // namespace

Verdict<bool> filter_contains(const BoolFamily& S, const UltrafilterSpec& spec) {
    S.validate();
    if (spec.mode == Mode::PrincipalOnFinite) {
        if (S.desc == BoolFamily::Desc::ExplicitFinite &&
            S.values.size() != spec.index_set_size)
            throw domain_error(
                "principal ultrafilter: explicit family length must equal the index set size");
        return Verdict<bool>::point(S.value_at(spec.selected_index));
    }
    if (S.desc == BoolFamily::Desc::ExplicitFinite)
        throw domain_error(
            "Frechet mode needs an eventually periodic family: a finite list fixes no "
            "cofinite behaviour");
    bool any_true = false, any_false = false;
    for (char c : S.period) (c ? any_true : any_false) = true;
    if (any_true && any_false) return Verdict<bool>::depends({false, true});
    return Verdict<bool>::forall(any_true);
}

Verdict<ExtNat> ultralimit(const ExtNatFamily& v, const UltrafilterSpec& spec) {
    v.validate();
    if (spec.mode == Mode::PrincipalOnFinite) {
        if (v.desc == ExtNatFamily::Desc::ExplicitFinite &&
            v.values.size() != spec.index_set_size)
            throw domain_error(
                "principal ultrafilter: explicit family length must equal the index set size");
        return Verdict<ExtNat>::point(v.value_at(spec.selected_index));
    }
    switch (v.desc) {
        case ExtNatFamily::Desc::ExplicitFinite:
            throw domain_error(
                "Frechet mode needs an eventually periodic or certified unbounded family");
        case ExtNatFamily::Desc::NondecreasingUnbounded:
            return Verdict<ExtNat>::forall(ExtNat::infinity());
        case ExtNatFamily::Desc::EventuallyPeriodic: {
            std::set<ExtNat> vals(v.period.begin(), v.period.end());
            if (vals.size() == 1) return Verdict<ExtNat>::forall(*vals.begin());
            return Verdict<ExtNat>::depends(std::move(vals));
        }
    }
    throw domain_error("bad descriptor");
}

BoolFamily derived_is_unit(const ElementFamily& fam, Budget& budget) {
    fam.validate();
    switch (fam.rule) {
        case Rule::Constant:
        case Rule::Periodic:
            return pointwise_bool(fam, [&](std::uint64_t l) {
                budget.tick("derived_is_unit");
                return fam.component_at(l).is_unit(fam.element_at(l));
            });
        case Rule::PrimePowerRamp:
            // p^0 = 1 is the only unit along the ramp
            return BoolFamily::eventually_periodic({1}, {0});
        case Rule::TruncationRamp:
            return BoolFamily::constant(fam.target.empty());
    }
    throw domain_error("bad element rule");
}

BoolFamily derived_is_atom(const ElementFamily& fam, Budget& budget) {
    fam.validate();
    switch (fam.rule) {
        case Rule::Constant:
        case Rule::Periodic:
            return pointwise_bool(fam, [&](std::uint64_t l) {
                return fam.component_at(l).is_atom(fam.element_at(l), budget);
            });
        case Rule::PrimePowerRamp:
            // 1 is a unit, p is prime, p^λ splits for λ >= 2
            return BoolFamily::eventually_periodic({0, 1}, {0});
        case Rule::TruncationRamp:
            // the profile at λ contains a length >= 2 (or is the unit profile)
            return BoolFamily::constant(false);
    }
    throw domain_error("bad element rule");
}

ExtNatFamily derived_length_multiplicity(const ElementFamily& fam, std::uint64_t ell,
                                         Budget& budget) {
    fam.validate();
    switch (fam.rule) {
        case Rule::Constant:
        case Rule::Periodic:
            return pointwise_extnat(fam, [&](std::uint64_t l) {
                return length_profile(fam.component_at(l), fam.element_at(l), ell, budget)
                    .multiplicity(ell);
            });
        case Rule::PrimePowerRamp: {
            // the unique factorization of p^λ has length λ
            std::vector<ExtNat> pre(ell + 1, ExtNat(0));
            pre[ell] = ExtNat(1);
            return ExtNatFamily::eventually_periodic(std::move(pre), {ExtNat(0)});
        }
        case Rule::TruncationRamp: {
            if (fam.target.empty()) // constant unit family: profile {0 -> 1}
                return ExtNatFamily::constant(ell == 0 ? ExtNat(1) : ExtNat(0));
            const ExtNat m = fam.target.multiplicity(ell);
            if (m == ExtNat(0)) return ExtNatFamily::constant(ExtNat(0));
            if (m.is_infinite()) {
                // counts of ell along the enumeration f: nondecreasing, unbounded
                auto f = truncation_enumeration(fam.target, 12);
                std::vector<ExtNat> prefix;
                std::uint64_t c = 0;
                for (std::uint64_t val : f) {
                    if (val == ell) ++c;
                    prefix.push_back(ExtNat(c));
                }
                return ExtNatFamily::nondecreasing_unbounded(std::move(prefix));
            }
            // finite target multiplicity: the count stabilizes at the index
            // of the n-th occurrence of ell in f
            const std::uint64_t need = m.finite();
            const std::uint64_t bound = need * fam.target.mult.size() + 1;
            auto f = truncation_enumeration(fam.target, bound);
            std::vector<ExtNat> pre;
            std::uint64_t c = 0;
            for (std::uint64_t val : f) {
                if (val == ell) {
                    ++c;
                    if (c == need) break;
                }
                pre.push_back(ExtNat(c));
            }
            return ExtNatFamily::eventually_periodic(std::move(pre), {m});
        }
    }
    throw domain_error("bad element rule");
}

Verdict<bool> up_is_unit(const ElementFamily& fam, const UltrafilterSpec& spec,
                         Budget& budget) {
    return filter_contains(derived_is_unit(fam, budget), spec);
}

Verdict<bool> up_is_atom(const ElementFamily& fam, const UltrafilterSpec& spec,
                         Budget& budget) {
    return filter_contains(derived_is_atom(fam, budget), spec);
}

Verdict<ExtNat> up_length_multiplicity(const ElementFamily& fam, std::uint64_t ell,
                                       const UltrafilterSpec& spec, Budget& budget) {
    return ultralimit(derived_length_multiplicity(fam, ell, budget), spec);
}

Verdict<bool> up_length_contains(const ElementFamily& fam, std::uint64_t ell,
                                 const UltrafilterSpec& spec, Budget& budget) {
    // boolean projection (>= 1) of the multiplicity verdict; sound because
    // {λ : c_λ >= 1} contains the union of the infinitely-attained value sets
    Verdict<ExtNat> v = up_length_multiplicity(fam, ell, spec, budget);
    const auto ge1 = [](const ExtNat& n) { return n >= ExtNat(1); };
    switch (v.kind) {
        case Verdict<ExtNat>::Kind::Point:
            return Verdict<bool>::point(ge1(*v.value));
        case Verdict<ExtNat>::Kind::ForAll:
            return Verdict<bool>::forall(ge1(*v.value));
        case Verdict<ExtNat>::Kind::Depends: {
            std::set<bool> bs;
            for (const ExtNat& c : v.candidates) bs.insert(ge1(c));
            if (bs.size() == 1) return Verdict<bool>::forall(*bs.begin());
            return Verdict<bool>::depends(std::move(bs));
        }
        case Verdict<ExtNat>::Kind::Inconclusive:
            return Verdict<bool>::inconclusive(v.note);
    }
    throw domain_error("bad verdict");
}

Verdict<bool> up_in_HA(const ElementFamily& fam, const UltrafilterSpec& spec,
                       std::uint64_t N_max, Budget& budget) {
    fam.validate();
    if (spec.mode == Mode::PrincipalOnFinite) {
        const std::uint64_t l = spec.selected_index;
        if (pointwise_rule(fam)) {
            auto prof =
                length_profile(fam.component_at(l), fam.element_at(l), N_max, budget);
            if (!prof.empty()) {
                auto v = Verdict<bool>::point(true);
                v.note = "least length " + std::to_string(*prof.lengths().begin());
                return v;
            }
        } else if (fam.rule == Rule::PrimePowerRamp) {
            if (l <= N_max) {
                auto v = Verdict<bool>::point(true);
                v.note = "least length " + std::to_string(l);
                return v;
            }
        } else { // TruncationRamp
            const std::uint64_t minlen = truncation_min_length(fam.target);
            if (minlen <= N_max) {
                auto v = Verdict<bool>::point(true);
                v.note = "least length " + std::to_string(minlen);
                return v;
            }
        }
        return Verdict<bool>::inconclusive(
            "no factorization of length <= " + std::to_string(N_max) +
            " at the selected index; the bounded test certifies no failure");
    }
    for (std::uint64_t N = 0; N <= N_max; ++N) {
        Verdict<bool> v = filter_contains(derived_in_band(fam, N, budget), spec);
        if (v.forall_equals(true)) {
            v.note = "witness bound N = " + std::to_string(N);
            return v;
        }
    }
    if (fam.rule == Rule::PrimePowerRamp) {
        auto v = Verdict<bool>::forall(false);
        v.note =
            "certified: the least factorization length at index λ is λ itself, which "
            "eventually exceeds every fixed N";
        return v;
    }
    if (fam.rule == Rule::TruncationRamp) {
        const std::uint64_t minlen = truncation_min_length(fam.target);
        if (minlen > N_max) {
            auto v = Verdict<bool>::forall(false);
            v.note = "certified within the bound: every index has least length " +
                     std::to_string(minlen) + " > N_max (membership would need a larger N)";
            return v;
        }
    }
    return Verdict<bool>::inconclusive(
        "no N <= " + std::to_string(N_max) +
        " certifies membership and the descriptor carries no failure certificate");
}

MultisetTransferReport realize_multiset_transfer(
    const LengthProfile& L, const UltrafilterSpec& spec, Budget& budget,
    const std::optional<FiniteAbelianGroup>& realizer_group,
    std::uint64_t realizer_window) {
    if (spec.mode != Mode::Frechet)
        throw domain_error(
            "multiset realization transfer quantifies over nonprincipal ultrafilters; "
            "use Frechet mode");
    MultisetTransferReport rep;
    rep.target = L;
    ElementFamily fam = ElementFamily::truncation_ramp(L);
    rep.enumeration_prefix = truncation_enumeration(L, 16);

    bool all_ok = true;
    for (const auto& [ell, m] : L.mult) {
        MultisetTransferRow row;
        row.ell = ell;
        row.expected = m;
        row.verdict = up_length_multiplicity(fam, ell, spec, budget);
        row.ok = row.verdict.forall_equals(m);
        all_ok = all_ok && row.ok;
        rep.rows.push_back(std::move(row));
    }
    const std::uint64_t hi = L.empty() ? 3 : L.mult.rbegin()->first + 2;
    for (std::uint64_t ell = 1; ell <= hi; ++ell) {
        if (L.contains(ell)) continue;
        MultisetTransferRow row;
        row.ell = ell;
        row.expected = ExtNat(0);
        row.probe = true;
        row.verdict = up_length_multiplicity(fam, ell, spec, budget);
        row.ok = row.verdict.forall_equals(ExtNat(0));
        all_ok = all_ok && row.ok;
        rep.rows.push_back(std::move(row));
    }
    rep.ok = all_ok;

    if (!realizer_group) {
        rep.realizer_note = "transfer-level only: no realizer group requested";
        return rep;
    }
    rep.realizer_attempted = true;
    rep.realizer_ok = true;
    const MonoidInstance bm = MonoidInstance::block(*realizer_group);
    for (std::uint64_t lam = 0; lam < realizer_window; ++lam) {
        RealizerRow rr;
        rr.lambda = lam;
        rr.target_set = truncation_profile_at(L, lam).lengths();
        if (rr.target_set.empty()) {
            rr.witness = Sequence{};
            rr.verified = true; // the empty sequence is the unit, L = {0}
        } else {
            auto out = realize_set_search(*realizer_group, rr.target_set, 0, budget);
            if (out.witness) {
                rr.witness = out.witness;
                auto prof = length_profile(bm, Element{*out.witness},
                                           out.witness->size(), budget);
                rr.verified = prof.lengths() == rr.target_set;
            }
        }
        rep.realizer_ok = rep.realizer_ok && rr.verified;
        rep.realizer_rows.push_back(std::move(rr));
    }
    rep.realizer_note =
        rep.realizer_ok
            ? "component witnesses realized in B(" + realizer_group->name() + ")"
            : "transfer-level only: some truncated set has no witness in B(" +
                  realizer_group->name() + ") within the search bounds";
    return rep;
}

FactorialCheckReport factorial_uniqueness_check(const std::vector<ElementFamily>& fams,
                                                const UltrafilterSpec& spec,
                                                Budget& budget) {
    if (fams.empty()) throw domain_error("factorial check needs at least one atom family");
    for (const auto& f : fams) {
        f.validate();
        if (!pointwise_rule(f))
            throw domain_error("factorial check: atom families must be constant or periodic");
        if (!f.constant_component())
            throw domain_error("factorial check: families must share one fixed component");
    }
    const MonoidInstance& m = fams.front().component_at(0);
    for (const auto& f : fams)
        if (!(f.component_at(0) == m))
            throw domain_error("factorial check: families must share one fixed component");
    if (m.kind() != MonoidInstance::Kind::FreeAbelian &&
        m.kind() != MonoidInstance::Kind::NonzeroIntegers)
        throw domain_error(
            "factorial check: the component must be a certified factorial monoid "
            "(free abelian or nonzero integers)");

    std::uint64_t maxpre = 0, P = 1;
    for (const auto& f : fams) {
        maxpre = std::max(maxpre, f.pre_length());
        P = std::lcm(P, f.period_length());
    }
    for (const auto& f : fams)
        for (std::uint64_t l = 0; l < f.pre_length() + f.period_length(); ++l)
            if (!m.is_atom(f.element_at(l), budget))
                throw domain_error("factorial check: family value at index " +
                                   std::to_string(l) + " is not an atom");

    FactorialCheckReport rep;
    rep.n = fams.size();

    const auto check_at = [&](std::uint64_t lambda) {
        FactorialCheckCase c;
        c.lambda = lambda;
        Element prod = m.identity();
        Multiset<Element> inputs;
        for (const auto& f : fams) {
            Element e = f.element_at(lambda);
            prod = m.mul(prod, e);
            inputs.add(m.canonical(m.associate_canonical(e)));
        }
        auto facs = factorizations(m, prod, fams.size(), budget);
        c.unique_class = facs.size() == 1;
        if (c.unique_class) {
            c.length_matches = facs.front().length() == fams.size();
            c.class_matches_inputs = facs.front().atoms == inputs;
        }
        return c;
    };

    // permutation matching input slots against the sorted canonical class
    const auto sigma_at = [&](std::uint64_t lambda) {
        std::vector<Element> canon;
        for (const auto& f : fams)
            canon.push_back(m.canonical(m.associate_canonical(f.element_at(lambda))));
        std::vector<Element> sorted_class;
        {
            Multiset<Element> ms;
            for (const auto& e : canon) ms.add(e);
            for (const auto& [e, k] : ms.entries())
                for (std::uint64_t i = 0; i < k; ++i) sorted_class.push_back(e);
        }
        std::vector<char> used(sorted_class.size(), 0);
        std::vector<std::size_t> sigma(canon.size(), 0);
        for (std::size_t i = 0; i < canon.size(); ++i)
            for (std::size_t j = 0; j < sorted_class.size(); ++j)
                if (!used[j] && sorted_class[j] == canon[i]) {
                    used[j] = 1;
                    sigma[i] = j;
                    break;
                }
        return sigma;
    };

    if (spec.mode == Mode::PrincipalOnFinite) {
        rep.window = 1;
        FactorialCheckCase c = check_at(spec.selected_index);
        rep.ok = c.unique_class && c.length_matches && c.class_matches_inputs;
        rep.cases.push_back(c);
        rep.sigma_per_residue.emplace_back(spec.selected_index,
                                           sigma_at(spec.selected_index));
        rep.certificate =
            "principal ultrafilter: the permutation at the selected index itself";
        return rep;
    }

    rep.window = maxpre + 2 * P;
    rep.ok = true;
    for (std::uint64_t lambda = 0; lambda < rep.window; ++lambda) {
        FactorialCheckCase c = check_at(lambda);
        rep.ok = rep.ok && c.unique_class && c.length_matches && c.class_matches_inputs;
        rep.cases.push_back(c);
    }
    for (std::uint64_t r = 0; r < P; ++r)
        rep.sigma_per_residue.emplace_back(r, sigma_at(maxpre + r));
    std::ostringstream cert;
    cert << "indices >= " << maxpre << " split by residue mod " << P << " into " << P
         << " infinite classes, each carrying one matching permutation; every "
            "ultrafilter contains one of the classes";
    rep.certificate = cert.str();
    return rep;
}

LengthProfile finite_index_ultraproduct_lengths(
    const std::vector<std::pair<MonoidInstance, Element>>& components, std::size_t selected,
    std::uint64_t max_len, Budget& budget) {
    if (components.empty())
        throw domain_error("finite ultraproduct needs at least one component");
    if (selected >= components.size())
        throw domain_error("finite ultraproduct: selected index out of range");
    for (const auto& [m, a] : components)
        if (!m.valid(a)) throw domain_error("finite ultraproduct: invalid component element");

    const MonoidInstance& ms = components[selected].first;
    const Element& as = components[selected].second;
    LengthProfile prof = length_profile(ms, as, max_len, budget);

    // isomorphism check: every factorization of the selected component lifts
    // to tuple atoms (identity off the selected coordinate) whose product
    // agrees with the input there up to associates
    std::vector<MonoidInstance> comps;
    comps.reserve(components.size());
    for (const auto& [m, a] : components) comps.push_back(m);
    const MonoidInstance prodm = MonoidInstance::direct_product(std::move(comps));

    for (const auto& F : factorizations(ms, as, max_len, budget)) {
        Element acc = ms.identity();
        for (const auto& [atom, k] : F.atoms.entries()) {
            Tuple t;
            for (std::size_t i = 0; i < components.size(); ++i)
                t.coords.push_back(i == selected ? atom : components[i].first.identity());
            Element lifted{t};
            if (!prodm.is_atom(lifted, budget))
                throw domain_error("lift verification failed: lifted tuple is not an atom");
            for (std::uint64_t j = 0; j < k; ++j) acc = ms.mul(acc, atom);
        }
        if (!ms.associated(acc, as))
            throw domain_error(
                "lift verification failed: the lifted product does not match the "
                "selected coordinate");
    }
    return prof;
}

} // namespace uf
