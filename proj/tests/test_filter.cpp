#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "uf/filter_engine.hpp"
#include "uf/oracle.hpp"
#include "uf/zerosum.hpp"

using namespace uf;

namespace {

const UltrafilterSpec kFrechet = UltrafilterSpec::frechet();

ElementFamily const_bg3(const std::string& text) {
    auto bm = MonoidInstance::block(FiniteAbelianGroup::parse("c3"));
    return ElementFamily::make_constant(bm, bm.parse_element(text));
}

} // namespace

TEST_CASE("filter membership: cofinite, finite and parity sets") {
    auto cofinite = BoolFamily::eventually_periodic({0, 0, 0}, {1});
    CHECK(filter_contains(cofinite, kFrechet).forall_equals(true));

    auto finite = BoolFamily::eventually_periodic({1, 1}, {0});
    CHECK(filter_contains(finite, kFrechet).forall_equals(false));

    auto parity = BoolFamily::eventually_periodic({}, {1, 0});
    auto v = filter_contains(parity, kFrechet);
    CHECK(v.is(Verdict<bool>::Kind::Depends));
    CHECK(v.candidates == std::set<bool>{false, true});

    auto principal = UltrafilterSpec::principal(3, 1);
    auto point = filter_contains(BoolFamily::explicit_finite({1, 0, 1}), principal);
    CHECK(point.is(Verdict<bool>::Kind::Point));
    CHECK(*point.value == false);
}

TEST_CASE("explicit finite families are rejected under Frechet semantics") {
    CHECK_THROWS_AS(filter_contains(BoolFamily::explicit_finite({1, 0}), kFrechet), domain_error);
    CHECK_THROWS_AS(ultralimit(ExtNatFamily::explicit_finite({ExtNat(1)}), kFrechet),
                    domain_error);
    // principal mode requires the explicit size to match the index set
    auto spec = UltrafilterSpec::principal(3, 1);
    CHECK_THROWS_AS(filter_contains(BoolFamily::explicit_finite({1, 0}), spec), domain_error);
    CHECK_THROWS_AS(UltrafilterSpec::principal(3, 3), domain_error);
}

TEST_CASE("ultralimits of extended-natural families") {
    CHECK(ultralimit(ExtNatFamily::constant(ExtNat(2)), kFrechet).forall_equals(ExtNat(2)));

    auto ndu = ExtNatFamily::nondecreasing_unbounded({ExtNat(0), ExtNat(1), ExtNat(2), ExtNat(3)});
    CHECK(ultralimit(ndu, kFrechet).forall_equals(ExtNat::infinity()));

    auto alternating = ExtNatFamily::eventually_periodic({}, {ExtNat(1), ExtNat(2)});
    auto v = ultralimit(alternating, kFrechet);
    CHECK(v.is(Verdict<ExtNat>::Kind::Depends));
    CHECK(v.candidates == std::set<ExtNat>{ExtNat(1), ExtNat(2)});

    auto principal = ultralimit(alternating, UltrafilterSpec::principal(5, 2));
    CHECK(principal.is(Verdict<ExtNat>::Kind::Point));
    CHECK(*principal.value == ExtNat(1));
}

TEST_CASE("ultralimit agrees with a definitional window evaluator on random families") {
    std::mt19937_64 rng(2024);
    auto random_value = [&]() {
        return rng() % 6 == 0 ? ExtNat::infinity() : ExtNat(rng() % 5);
    };
    for (int it = 0; it < 300; ++it) {
        std::vector<ExtNat> pre, period;
        const std::size_t np = rng() % 4, nq = 1 + rng() % 4;
        for (std::size_t i = 0; i < np; ++i) pre.push_back(random_value());
        for (std::size_t i = 0; i < nq; ++i) period.push_back(random_value());
        auto fam = ExtNatFamily::eventually_periodic(pre, period);

        std::set<ExtNat> tail;
        for (std::uint64_t i = pre.size(); i < pre.size() + 2 * period.size(); ++i)
            tail.insert(fam.value_at(i));
        auto expected = tail.size() == 1 ? Verdict<ExtNat>::forall(*tail.begin())
                                         : Verdict<ExtNat>::depends(tail);
        CHECK(ultralimit(fam, kFrechet) == expected);
    }
}

TEST_CASE("derived unit families") {
    Budget budget;
    auto bm = MonoidInstance::block(FiniteAbelianGroup::parse("c3"));

    auto unit = ElementFamily::make_constant(bm, bm.identity());
    CHECK(up_is_unit(unit, kFrechet, budget).forall_equals(true));

    CHECK(up_is_unit(const_bg3("[1],[1],[1]"), kFrechet, budget).forall_equals(false));

    auto alternating = ElementFamily::make_periodic(
        bm, {}, {bm.identity(), bm.parse_element("[1],[1],[1]")});
    auto v = up_is_unit(alternating, kFrechet, budget);
    CHECK(v.is(Verdict<bool>::Kind::Depends));
}

TEST_CASE("atom verdicts across the rules") {
    Budget budget;
    CHECK(up_is_atom(const_bg3("[1],[1],[1]"), kFrechet, budget).forall_equals(true));

    auto ramp = ElementFamily::prime_power_ramp(2);
    CHECK(up_is_atom(ramp, kFrechet, budget).forall_equals(false));
    // the single atom index lambda = 1 is visible in principal mode
    auto pt = up_is_atom(ramp, UltrafilterSpec::principal(4, 1), budget);
    CHECK(pt.is(Verdict<bool>::Kind::Point));
    CHECK(*pt.value == true);

    auto z = MonoidInstance::nonzero_integers();
    auto four = ElementFamily::make_constant(z, Element{std::int64_t(4)});
    CHECK(up_is_atom(four, kFrechet, budget).forall_equals(false));
}

TEST_CASE("transferred length multiplicities") {
    Budget budget;
    auto six = const_bg3("[1],[1],[1],[2],[2],[2]");
    CHECK(up_length_multiplicity(six, 2, kFrechet, budget).forall_equals(ExtNat(1)));
    CHECK(up_length_multiplicity(six, 3, kFrechet, budget).forall_equals(ExtNat(1)));
    CHECK(up_length_multiplicity(six, 4, kFrechet, budget).forall_equals(ExtNat(0)));

    auto ramp = ElementFamily::prime_power_ramp(2);
    CHECK(up_length_multiplicity(ramp, 5, kFrechet, budget).forall_equals(ExtNat(0)));

    LengthProfile inf2;
    inf2.set(2, ExtNat::infinity());
    auto trunc = ElementFamily::truncation_ramp(inf2);
    CHECK(up_length_multiplicity(trunc, 2, kFrechet, budget).forall_equals(ExtNat::infinity()));
}

TEST_CASE("set-of-lengths membership verdicts") {
    Budget budget;
    auto six = const_bg3("[1],[1],[1],[2],[2],[2]");
    CHECK(up_length_contains(six, 3, kFrechet, budget).forall_equals(true));
    CHECK(up_length_contains(six, 4, kFrechet, budget).forall_equals(false));

    auto ramp = ElementFamily::prime_power_ramp(2);
    for (std::uint64_t ell : {0, 1, 2, 7, 20})
        CHECK(up_length_contains(ramp, ell, kFrechet, budget).forall_equals(false));
}

TEST_CASE("bounded membership in the factorizable part") {
    Budget budget;
    auto six = const_bg3("[1],[1],[1],[2],[2],[2]");
    auto yes = up_in_HA(six, kFrechet, 20, budget);
    CHECK(yes.forall_equals(true));
    CHECK(yes.note.find("N = 2") != std::string::npos);

    auto ramp = ElementFamily::prime_power_ramp(2);
    auto no = up_in_HA(ramp, kFrechet, 20, budget);
    CHECK(no.forall_equals(false));
    CHECK_FALSE(no.note.empty());

    // periodic mixture with units: the unit indices also lie in the band
    auto bm2 = MonoidInstance::block(FiniteAbelianGroup::parse("c2"));
    auto mix = ElementFamily::make_periodic(
        bm2, {}, {bm2.parse_element("[1],[1]"), bm2.identity()});
    CHECK(up_in_HA(mix, kFrechet, 8, budget).forall_equals(true));

    // bounded query stays inconclusive rather than guessing in principal mode
    auto far = ElementFamily::truncation_ramp([] {
        LengthProfile L;
        L.set(5, ExtNat(1));
        return L;
    }());
    CHECK(up_in_HA(far, kFrechet, 3, budget).forall_equals(false)); // min length 5 > 3 certified
    auto principal_ramp = up_in_HA(ramp, UltrafilterSpec::principal(40, 30), 10, budget);
    CHECK(principal_ramp.is(Verdict<bool>::Kind::Inconclusive));
}

TEST_CASE("multiset-of-lengths transfer: finite, infinite and empty targets") {
    Budget budget;
    LengthProfile L;
    L.set(2, ExtNat(2));
    L.set(3, ExtNat(1));
    auto rep = realize_multiset_transfer(L, kFrechet, budget);
    CHECK(rep.ok);
    bool saw2 = false, saw3 = false;
    for (const auto& row : rep.rows) {
        if (row.ell == 2 && !row.probe) {
            saw2 = true;
            CHECK(row.verdict.forall_equals(ExtNat(2)));
        }
        if (row.ell == 3 && !row.probe) {
            saw3 = true;
            CHECK(row.verdict.forall_equals(ExtNat(1)));
        }
        if (row.probe) CHECK(row.verdict.forall_equals(ExtNat(0)));
    }
    CHECK(saw2);
    CHECK(saw3);

    LengthProfile inf2;
    inf2.set(2, ExtNat::infinity());
    auto rep2 = realize_multiset_transfer(inf2, kFrechet, budget);
    CHECK(rep2.ok);

    LengthProfile empty;
    auto rep3 = realize_multiset_transfer(empty, kFrechet, budget);
    CHECK(rep3.ok);
    for (const auto& row : rep3.rows) {
        CHECK(row.probe);
        CHECK(row.verdict.forall_equals(ExtNat(0)));
    }
    // the empty multiset is carried by the unit family: its only length is 0
    auto unit_fam = ElementFamily::truncation_ramp(empty);
    CHECK(up_length_multiplicity(unit_fam, 0, kFrechet, budget).forall_equals(ExtNat(1)));
}

TEST_CASE("multiset transfer with a per-index realizer") {
    Budget budget;
    LengthProfile L;
    L.set(2, ExtNat(1));
    L.set(3, ExtNat(1));
    auto rep = realize_multiset_transfer(L, kFrechet, budget,
                                         FiniteAbelianGroup::parse("c3"), 4);
    CHECK(rep.ok);
    CHECK(rep.realizer_attempted);
    CHECK(rep.realizer_ok);
    REQUIRE(!rep.realizer_rows.empty());
    for (const auto& row : rep.realizer_rows) CHECK(row.verified);
}

TEST_CASE("transfer requires Frechet semantics") {
    Budget budget;
    LengthProfile L;
    L.set(2, ExtNat(1));
    CHECK_THROWS_AS(realize_multiset_transfer(L, UltrafilterSpec::principal(3, 0), budget),
                    domain_error);
}

TEST_CASE("factorial-component products have a unique class") {
    Budget budget;
    auto z = MonoidInstance::nonzero_integers();

    std::vector<ElementFamily> fams = {
        ElementFamily::make_constant(z, Element{std::int64_t(2)}),
        ElementFamily::make_constant(z, Element{std::int64_t(3)})};
    auto rep = factorial_uniqueness_check(fams, kFrechet, budget);
    CHECK(rep.ok);
    CHECK(rep.n == 2);

    std::vector<ElementFamily> three = {
        ElementFamily::make_constant(z, Element{std::int64_t(2)}),
        ElementFamily::make_constant(z, Element{std::int64_t(2)}),
        ElementFamily::make_constant(z, Element{std::int64_t(5)})};
    auto rep3 = factorial_uniqueness_check(three, kFrechet, budget);
    CHECK(rep3.ok);
    CHECK(rep3.n == 3);
    for (const auto& one : rep3.cases) {
        CHECK(one.unique_class);
        CHECK(one.length_matches);
        CHECK(one.class_matches_inputs);
    }

    // alternating 2,3 against 3,2: the product is constantly 6, and sigma
    // realigns the tuple with the canonical class at every index
    std::vector<ElementFamily> alt = {
        ElementFamily::make_periodic(z, {}, {Element{std::int64_t(2)}, Element{std::int64_t(3)}}),
        ElementFamily::make_periodic(z, {}, {Element{std::int64_t(3)}, Element{std::int64_t(2)}})};
    auto repa = factorial_uniqueness_check(alt, kFrechet, budget);
    CHECK(repa.ok);
    CHECK(repa.n == 2);
    CHECK(repa.sigma_per_residue.size() == 2);
    for (const auto& [residue, perm] : repa.sigma_per_residue) CHECK(perm.size() == 2);
    CHECK_FALSE(repa.certificate.empty());

    // non-atom input is rejected
    std::vector<ElementFamily> bad = {
        ElementFamily::make_constant(z, Element{std::int64_t(4)})};
    CHECK_THROWS_AS(factorial_uniqueness_check(bad, kFrechet, budget), domain_error);

    // non-factorial components are rejected
    auto bm = MonoidInstance::block(FiniteAbelianGroup::parse("c3"));
    std::vector<ElementFamily> wrong = {
        ElementFamily::make_constant(bm, bm.parse_element("[1],[1],[1]"))};
    CHECK_THROWS_AS(factorial_uniqueness_check(wrong, kFrechet, budget), domain_error);
}

TEST_CASE("finite-index principal ultraproduct projects the selected profile") {
    Budget budget;
    auto bm3 = MonoidInstance::block(FiniteAbelianGroup::parse("c3"));
    auto bm2 = MonoidInstance::block(FiniteAbelianGroup::parse("c2"));
    std::vector<std::pair<MonoidInstance, Element>> comps = {
        {bm3, bm3.parse_element("[1],[1],[1],[2],[2],[2]")},
        {bm2, bm2.parse_element("[1],[1],[1],[1]")}};

    auto L0 = finite_index_ultraproduct_lengths(comps, 0, 8, budget);
    LengthProfile want0;
    want0.set(2, ExtNat(1));
    want0.set(3, ExtNat(1));
    CHECK(L0 == want0);

    auto L1 = finite_index_ultraproduct_lengths(comps, 1, 8, budget);
    LengthProfile want1;
    want1.set(2, ExtNat(1));
    CHECK(L1 == want1);

    std::vector<std::pair<MonoidInstance, Element>> single = {comps[0]};
    CHECK(finite_index_ultraproduct_lengths(single, 0, 8, budget) == want0);

    CHECK_THROWS_AS(finite_index_ultraproduct_lengths(comps, 2, 8, budget), domain_error);
}

TEST_CASE("length profiles transfer for randomized constant block families") {
    std::mt19937_64 rng(555);
    auto catalog = groups_up_to_order(6);
    for (int it = 0; it < 40; ++it) {
        const auto& G = catalog[rng() % catalog.size()];
        Sequence u;
        const std::uint64_t len = rng() % 5;
        for (std::uint64_t i = 0; i < len; ++i) u.push_back(G.element_at(rng() % G.order()));
        GroupElem s = sigma(G, u);
        if (!G.is_zero(s)) u.push_back(G.neg(s));
        u = canonical_sequence(u);

        auto bm = MonoidInstance::block(G);
        auto fam = ElementFamily::make_constant(bm, Element{u});
        Budget budget;
        auto reference = oracle_length_profile(bm, Element{u}, u.size(), budget);
        for (std::uint64_t ell = 0; ell <= u.size() + 1; ++ell) {
            auto v = up_length_multiplicity(fam, ell, kFrechet, budget);
            CHECK(v.forall_equals(reference.multiplicity(ell)));
        }
    }
}
