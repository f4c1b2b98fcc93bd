#include "uf/acceptance.hpp"

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "uf/factorize.hpp"
#include "uf/filter_engine.hpp"
#include "uf/fol.hpp"
#include "uf/krull.hpp"
#include "uf/oracle.hpp"
#include "uf/zerosum.hpp"

namespace uf {

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
    bool pass = true;
    std::ostringstream detail;

    void fail(const std::string& why) {
        if (pass) {
            pass = false;
            detail.str({});
            detail << why;
        }
    }
};

// ------------------------------------------------------------ criterion 1

Check criterion_davenport() {
    Check c;
    std::vector<std::pair<std::string, std::uint64_t>> expected = {
        {"c2", 2}, {"c3", 3}, {"c4", 4}, {"c5", 5}, {"c6", 6}, {"c7", 7}, {"c8", 8},
        {"c2xc2", 3}, {"c3xc3", 5}, {"c2xc2xc2", 4}};
    std::size_t exact = 0;
    for (const auto& [name, want] : expected) {
        Budget budget;
        auto G = FiniteAbelianGroup::parse(name);
        auto r = davenport(G, budget);
        bool witness_ok = r.witness.size() == r.value && is_minimal_zero_sum(G, r.witness);
        if (r.value != want || !witness_ok) {
            c.fail("D(" + G.name() + ") = " + std::to_string(r.value) + ", expected " +
                   std::to_string(want));
            return c;
        }
        ++exact;
    }
    c.detail << exact << "/" << expected.size() << " Davenport values exact, witnesses minimal";
    return c;
}

// ------------------------------------------------------------ criterion 2

Check criterion_lengths_oracle() {
    Check c;
    // the worked example: g^3 (2g)^3 over C_3
    {
        Budget budget;
        auto G = FiniteAbelianGroup::parse("c3");
        auto bm = MonoidInstance::block(G);
        Element u{Sequence{{1}, {1}, {1}, {2}, {2}, {2}}};
        LengthProfile want;
        want.set(2, ExtNat(1));
        want.set(3, ExtNat(1));
        auto engine = length_profile(bm, u, 6, budget);
        auto oracle = oracle_length_profile(bm, u, 6, budget);
        if (!(engine == want) || !(oracle == want)) {
            c.fail("g^3(2g)^3 profile mismatch: engine " + engine.str() + ", oracle " +
                   oracle.str());
            return c;
        }
    }
    // 500 random bounded elements of B(G), |G| <= 9, |U| <= 8
    auto catalog = groups_up_to_order(9);
    std::mt19937_64 rng(1202);
    std::size_t agreed = 0;
    for (int it = 0; it < 500; ++it) {
        const auto& G = catalog[rng() % catalog.size()];
        Sequence u;
        const std::uint64_t len = rng() % 8; // up to 7 free terms + 1 balancing term
        for (std::uint64_t i = 0; i < len; ++i) u.push_back(G.element_at(rng() % G.order()));
        GroupElem s = sigma(G, u);
        if (!G.is_zero(s)) u.push_back(G.neg(s));
        u = canonical_sequence(u);

        auto bm = MonoidInstance::block(G);
        Element e{u};
        const std::uint64_t max_len = u.size();
        Budget b_engine, b_oracle;
        auto engine_classes = factorizations(bm, e, max_len, b_engine);
        auto oracle_classes = oracle_factorizations(bm, e, max_len, b_oracle);
        std::set<Multiset<Element>> engine_set;
        for (const auto& f : engine_classes) engine_set.insert(f.atoms);
        if (engine_set != oracle_classes) {
            c.fail("factorization class sets differ over " + G.name() + " for " + bm.show(e));
            return c;
        }
        auto engine_profile = length_profile(bm, e, max_len, b_engine);
        auto oracle_profile = oracle_length_profile(bm, e, max_len, b_oracle);
        if (!(engine_profile == oracle_profile)) {
            c.fail("length profiles differ over " + G.name() + " for " + bm.show(e));
            return c;
        }
        ++agreed;
    }
    c.detail << "worked example exact; " << agreed
             << "/500 random elements agree (classes and profiles)";
    return c;
}

// ------------------------------------------------------------ criterion 3

Check criterion_los() {
    Check c;
    std::vector<fol::FormulaPtr> sentences;
    for (std::uint64_t s = 1; s <= 200; ++s)
        sentences.push_back(fol::random_sentence(1 + s % 3, 3, s));

    auto catalog = groups_up_to_order(6);
    std::mt19937_64 rng(31337);
    std::size_t checks = 0, agreements = 0;
    for (int t = 0; t < 20; ++t) {
        std::vector<FiniteAbelianGroup> tuple;
        const std::size_t k = 1 + rng() % 4;
        for (std::size_t i = 0; i < k; ++i) tuple.push_back(catalog[rng() % catalog.size()]);
        for (std::size_t sel = 0; sel < tuple.size(); ++sel) {
            auto Q = fol::finite_ultraproduct(tuple, sel);
            if (!Q.check_well_defined()) {
                c.fail("quotient multiplication not well-defined at tuple " + std::to_string(t));
                return c;
            }
            auto quotient_model = Q.model();
            auto component_model = fol::model_of_group(tuple[sel]);
            for (const auto& phi : sentences) {
                ++checks;
                const bool in_quotient = fol::eval(phi, quotient_model);
                const bool in_component = fol::eval(phi, component_model);
                if (in_quotient != in_component) {
                    c.fail("Los disagreement: sentence " + fol::print(phi) + " at tuple " +
                           std::to_string(t) + ", index " + std::to_string(sel));
                    return c;
                }
                ++agreements;
            }
        }
    }
    c.detail << agreements << "/" << checks
             << " sentence evaluations agree between quotient and component";
    return c;
}

// ------------------------------------------------------------ criterion 4

/// Definitional second evaluator: samples the family on the window
/// pre + 2 * period and classifies level sets as cofinite / infinite by hand.
Verdict<ExtNat> definitional_ultralimit(const ExtNatFamily& v) {
    if (v.desc == ExtNatFamily::Desc::NondecreasingUnbounded)
        return Verdict<ExtNat>::forall(ExtNat::infinity());
    std::set<ExtNat> tail_values;
    const std::uint64_t pre = v.pre.size();
    for (std::uint64_t i = pre; i < pre + 2 * v.period.size(); ++i)
        tail_values.insert(v.value_at(i));
    if (tail_values.size() == 1) return Verdict<ExtNat>::forall(*tail_values.begin());
    return Verdict<ExtNat>::depends(tail_values);
}

Check criterion_transfer_families() {
    Check c;
    std::mt19937_64 rng(42);
    auto random_value = [&]() {
        return rng() % 7 == 0 ? ExtNat::infinity() : ExtNat(rng() % 6);
    };
    std::size_t agreed = 0;
    for (int it = 0; it < 1000; ++it) {
        ExtNatFamily fam;
        if (rng() % 10 < 3) {
            std::vector<ExtNat> prefix;
            std::uint64_t v = rng() % 3;
            const std::size_t len = 1 + rng() % 6;
            for (std::size_t i = 0; i < len; ++i) {
                prefix.push_back(ExtNat(v));
                v += rng() % 4;
            }
            fam = ExtNatFamily::nondecreasing_unbounded(std::move(prefix));
        } else {
            std::vector<ExtNat> pre, period;
            const std::size_t np = rng() % 5, nq = 1 + rng() % 4;
            for (std::size_t i = 0; i < np; ++i) pre.push_back(random_value());
            for (std::size_t i = 0; i < nq; ++i) period.push_back(random_value());
            fam = ExtNatFamily::eventually_periodic(std::move(pre), std::move(period));
        }
        auto engine = ultralimit(fam, UltrafilterSpec::frechet());
        auto reference = definitional_ultralimit(fam);
        if (!(engine == reference)) {
            c.fail("ultralimit mismatch at seeded family " + std::to_string(it));
            return c;
        }
        ++agreed;
    }
    c.detail << agreed << "/1000 seeded families: ultralimit matches the definitional evaluator";
    return c;
}

// ------------------------------------------------------------ criterion 5

Check criterion_prime_power_ramp() {
    Check c;
    auto fam = ElementFamily::prime_power_ramp(2);
    auto spec = UltrafilterSpec::frechet();
    Budget budget;
    auto atom = up_is_atom(fam, spec, budget);
    if (!atom.forall_equals(false)) {
        c.fail("up_is_atom(2^lambda) is not ForAll(false)");
        return c;
    }
    for (std::uint64_t ell = 0; ell <= 20; ++ell) {
        auto contains = up_length_contains(fam, ell, spec, budget);
        if (!contains.forall_equals(false)) {
            c.fail("up_length_contains(2^lambda, " + std::to_string(ell) +
                   ") is not ForAll(false)");
            return c;
        }
    }
    auto in_ha = up_in_HA(fam, spec, 20, budget);
    if (!in_ha.forall_equals(false)) {
        c.fail("up_in_HA(2^lambda, N_max=20) is not ForAll(false)");
        return c;
    }
    c.detail << "is_atom, length_contains(0..20) and in_HA(20) all certified ForAll(false); "
             << in_ha.note;
    return c;
}

// ------------------------------------------------------------ criterion 6

Check criterion_half_factorial_transfer() {
    Check c;
    auto G = FiniteAbelianGroup::parse("c2");
    auto bm = MonoidInstance::block(G);
    Budget budget;
    auto elements = zero_sum_sequences_up_to(G, 10, budget);
    auto spec = UltrafilterSpec::frechet();
    std::size_t families = 0;
    for (const auto& u : elements) {
        auto fam = ElementFamily::make_constant(bm, Element{u});
        std::size_t true_count = 0;
        for (std::uint64_t ell = 0; ell <= 12; ++ell) {
            auto v = up_length_contains(fam, ell, spec, budget);
            if (v.forall_equals(true)) ++true_count;
        }
        if (true_count != 1) {
            c.fail("family at " + bm.show(Element{u}) + " has " + std::to_string(true_count) +
                   " true length verdicts, expected exactly 1");
            return c;
        }
        ++families;
    }
    c.detail << families << " constant B(C_2) families of degree <= 10, each with exactly one "
             << "attained length";
    return c;
}

// ------------------------------------------------------------ criterion 7

Check criterion_multiset_transfer() {
    Check c;
    std::vector<LengthProfile> targets(4);
    targets[0].set(2, ExtNat(1));
    targets[1].set(2, ExtNat(2));
    targets[1].set(3, ExtNat(1));
    targets[2].set(2, ExtNat::infinity());
    targets[3].set(3, ExtNat(1));
    targets[3].set(5, ExtNat(4));
    std::size_t rows = 0;
    for (const auto& L : targets) {
        Budget budget;
        auto rep = realize_multiset_transfer(L, UltrafilterSpec::frechet(), budget);
        if (!rep.ok) {
            c.fail("transfer failed for target " + L.str());
            return c;
        }
        for (const auto& row : rep.rows) {
            if (!row.ok || !row.verdict.forall_equals(row.expected)) {
                c.fail("row ell=" + std::to_string(row.ell) + " of target " + L.str() +
                       " did not transfer exactly");
                return c;
            }
            ++rows;
        }
    }
    c.detail << "4 targets, " << rows
             << " support+probe rows, all multiplicities ForAll-exact (inf included)";
    return c;
}

// ------------------------------------------------------------ criterion 8

Check criterion_set_realization() {
    Check c;
    const std::set<std::uint64_t> L = {2, 3};
    auto G3 = FiniteAbelianGroup::parse("c3");
    auto bm3 = MonoidInstance::block(G3);
    Budget budget;
    auto out = realize_set_search(G3, L, 0, budget);
    if (!out.witness) {
        c.fail("no witness for L = {2,3} in B(C_3)");
        return c;
    }
    Budget b2;
    auto oracle = oracle_length_profile(bm3, Element{*out.witness}, out.witness->size(), b2);
    if (oracle.lengths() != L) {
        c.fail("witness oracle profile " + oracle.str() + " != {2,3}");
        return c;
    }

    auto rep = exceptional_groups(L, 3, 0, Budget::kDefaultCap, 1);
    std::vector<FiniteAbelianGroup> want = {FiniteAbelianGroup::parse("c1"),
                                            FiniteAbelianGroup::parse("c2")};
    if (rep.exceptional != want) {
        std::string got;
        for (const auto& g : rep.exceptional) got += g.name() + " ";
        c.fail("exceptional set {" + got + "} != {C_1, C_2}");
        return c;
    }
    if (!rep.budget_exceeded.empty()) {
        c.fail("some group exhausted its budget during the scan");
        return c;
    }
    for (const auto& [G, witness] : rep.realized) {
        auto bm = MonoidInstance::block(G);
        Budget b3;
        auto prof = oracle_length_profile(bm, Element{witness}, witness.size(), b3);
        if (prof.lengths() != L) {
            c.fail("realized witness over " + G.name() + " fails oracle re-verification");
            return c;
        }
    }
    c.detail << "B(C_3) witness " << bm3.show(Element{*out.witness})
             << " oracle-verified; exceptional(order<=3) = {C_1, C_2}; " << rep.realized.size()
             << " witnesses re-verified";
    return c;
}

// ------------------------------------------------------------ criterion 9

Check criterion_protoproduct_iso() {
    Check c;
    std::size_t pairs = 0;
    for (const char* name : {"c2", "c3", "c2xc2"}) {
        auto G = FiniteAbelianGroup::parse(name);
        Budget budget;
        auto rep = bg_proto_iso_check(G, 6, UltrafilterSpec::frechet(), budget);
        if (!rep.ok) {
            c.fail("bg_proto_iso_check failed for " + G.name() + ": " + rep.detail);
            return c;
        }
        Budget b2;
        auto closed = divisor_closed_check(MonoidInstance::block(G), DegreeKind::Canonical, 6, b2);
        if (!closed.ok) {
            c.fail("divisor_closed_check failed for B(" + G.name() + "): " + closed.detail);
            return c;
        }
        pairs += closed.pairs_checked;
    }
    c.detail << "3 groups at degree bound 6: iso verified (counts, injectivity, surjectivity, "
             << "homomorphism, atoms); divisor-closedness on " << std::to_string(pairs)
             << " division pairs";
    return c;
}

// ------------------------------------------------------------ criterion 10

bool trial_division_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Check criterion_gcd_cover_and_gap() {
    Check c;
    std::size_t letters = 0;
    for (const auto& G : groups_up_to_order(8)) {
        Budget budget;
        auto rep = gcd_cover_check(G, 3, budget);
        if (!rep.ok) {
            c.fail("gcd_cover_check failed for " + G.name());
            return c;
        }
        for (const auto& row : rep.rows)
            if (!row.ok) {
                c.fail("uncovered letter in " + G.name());
                return c;
            }
        letters += rep.rows.size();
    }
    Budget budget;
    auto gap = prime_power_gap(4, budget);
    if (!gap.verified || gap.primes.size() != 4) {
        c.fail("prime_power_gap(4) did not verify four prime divisors");
        return c;
    }
    std::set<std::uint64_t> distinct(gap.primes.begin(), gap.primes.end());
    if (distinct.size() != 4) {
        c.fail("prime_power_gap(4) primes are not distinct");
        return c;
    }
    for (auto p : gap.primes)
        if (!trial_division_prime(p)) {
            c.fail(std::to_string(p) + " is not prime");
            return c;
        }
    c.detail << "gcd cover over all groups of order <= 8 (" << letters << " letters); |"
             << gap.p << "^" << gap.x << " - " << gap.q << "^" << gap.y << "| ("
             << gap.difference_digits << " digits) divisible by 4 verified primes";
    return c;
}

// ------------------------------------------------------------ criterion 11

Check criterion_factorial_uniqueness() {
    Check c;
    std::mt19937_64 rng(7707);
    auto z = MonoidInstance::nonzero_integers();
    auto f3 = MonoidInstance::free_abelian(3);
    const std::int64_t primes[] = {2, 3, 5, 7, 11, 13};
    std::size_t cases_ok = 0, lambdas = 0;
    for (int it = 0; it < 200; ++it) {
        const bool over_z = it % 2 == 0;
        const MonoidInstance& m = over_z ? z : f3;
        auto random_atom = [&]() {
            if (over_z) {
                std::int64_t p = primes[rng() % 6];
                if (rng() % 4 == 0) p = -p;
                return Element{p};
            }
            ExpVec e(3, 0);
            e[rng() % 3] = 1;
            return Element{e};
        };
        std::vector<ElementFamily> fams;
        const std::size_t n = 1 + rng() % 4;
        for (std::size_t i = 0; i < n; ++i) {
            if (rng() % 2 == 0) {
                fams.push_back(ElementFamily::make_constant(m, random_atom()));
            } else {
                std::vector<Element> pre, period;
                const std::size_t np = rng() % 3, nq = 1 + rng() % 3;
                for (std::size_t j = 0; j < np; ++j) pre.push_back(random_atom());
                for (std::size_t j = 0; j < nq; ++j) period.push_back(random_atom());
                fams.push_back(ElementFamily::make_periodic(m, std::move(pre), std::move(period)));
            }
        }
        Budget budget;
        auto rep = factorial_uniqueness_check(fams, UltrafilterSpec::frechet(), budget);
        if (!rep.ok) {
            c.fail("case " + std::to_string(it) + " over " + m.name() +
                   " found a second factorization class");
            return c;
        }
        for (const auto& one : rep.cases)
            if (!one.unique_class || !one.length_matches || !one.class_matches_inputs) {
                c.fail("case " + std::to_string(it) + ": index " + std::to_string(one.lambda) +
                       " violates uniqueness");
                return c;
            }
        ++cases_ok;
        lambdas += rep.cases.size();
    }
    c.detail << cases_ok << "/200 seeded cases over NonzeroIntegers and FreeAbelian(3), "
             << lambdas << " indices: factorizations unique up to essential sameness";
    return c;
}

struct Criterion {
    int id;
    std::string title;
    double time_limit; // seconds; 0 = no stated limit
    Check (*run)();
};

const Criterion kCriteria[] = {
    {1, "Davenport constants", 10.0, criterion_davenport},
    {2, "lengths vs oracle", 60.0, criterion_lengths_oracle},
    {3, "Los conformance", 30.0, criterion_los},
    {4, "ultralimit transfer", 0.0, criterion_transfer_families},
    {5, "prime-power ramp", 0.0, criterion_prime_power_ramp},
    {6, "half-factorial transfer", 0.0, criterion_half_factorial_transfer},
    {7, "multiset-of-lengths transfer", 0.0, criterion_multiset_transfer},
    {8, "set realization + exceptional groups", 0.0, criterion_set_realization},
    {9, "protoproduct isomorphism", 0.0, criterion_protoproduct_iso},
    {10, "gcd cover + prime-power gap", 10.0, criterion_gcd_cover_and_gap},
    {11, "factorial submonoid uniqueness", 0.0, criterion_factorial_uniqueness},
};

} // namespace

std::vector<CriterionResult> run_acceptance(std::ostream& out, const std::set<int>& only) {
    std::vector<CriterionResult> results;
    for (const auto& crit : kCriteria) {
        if (!only.empty() && !only.count(crit.id)) continue;
        CriterionResult r;
        r.id = crit.id;
        r.title = crit.title;
        const auto t0 = Clock::now();
        try {
            Check c = crit.run();
            r.pass = c.pass;
            r.detail = c.detail.str();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        if (crit.time_limit > 0 && r.seconds >= crit.time_limit) {
            r.pass = false;
            r.detail += " [exceeded " + std::to_string(crit.time_limit) + "s limit]";
        }
        results.push_back(r);
        out << "criterion " << std::setw(2) << r.id << ": " << (r.pass ? "PASS" : "FAIL")
            << "  (" << std::fixed << std::setprecision(2) << r.seconds << "s)  " << r.title
            << " — " << r.detail << "\n";
        out.flush();
    }
    return results;
}

} // namespace uf
