#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "uf/factorize.hpp"
#include "uf/oracle.hpp"
#include "uf/zerosum.hpp"

using namespace uf;

TEST_CASE("sigma and zero-sum recognition") {
    auto c3 = FiniteAbelianGroup::parse("c3");
    CHECK(sigma(c3, Sequence{{1}, {1}, {1}}) == GroupElem{0});
    CHECK(is_zero_sum(c3, Sequence{{1}, {1}, {1}}));
    CHECK_FALSE(is_zero_sum(c3, Sequence{{1}, {1}}));

    auto c22 = FiniteAbelianGroup::parse("c2xc2");
    CHECK(sigma(c22, Sequence{{1, 0}, {0, 1}}) == GroupElem{1, 1});

    CHECK(sigma(c3, Sequence{}) == GroupElem{0});
    CHECK(is_zero_sum(c3, Sequence{}));
}

TEST_CASE("minimal zero-sum sequences") {
    auto c3 = FiniteAbelianGroup::parse("c3");
    CHECK(is_minimal_zero_sum(c3, Sequence{{1}, {1}, {1}}));
    CHECK_FALSE(is_minimal_zero_sum(c3, Sequence{{1}, {1}, {1}, {2}, {2}, {2}}));
    CHECK(is_minimal_zero_sum(c3, Sequence{{0}}));

    // non-zero-sum input is a domain error, as is the empty sequence
    CHECK_THROWS_AS(is_minimal_zero_sum(c3, Sequence{{1}}), domain_error);
    CHECK_THROWS_AS(is_minimal_zero_sum(c3, Sequence{}), domain_error);
}

TEST_CASE("exhaustive minimal zero-sum catalogs") {
    Budget budget;
    auto c2 = FiniteAbelianGroup::parse("c2");
    auto mins2 = minimal_zero_sum_sequences(c2, 3, budget);
    std::set<Sequence> set2(mins2.begin(), mins2.end());
    CHECK(set2 == std::set<Sequence>{Sequence{{0}}, Sequence{{1}, {1}}});

    auto c3 = FiniteAbelianGroup::parse("c3");
    auto mins3 = minimal_zero_sum_sequences(c3, 3, budget);
    std::set<Sequence> set3(mins3.begin(), mins3.end());
    CHECK(set3 == std::set<Sequence>{Sequence{{0}}, Sequence{{1}, {2}}, Sequence{{1}, {1}, {1}},
                                     Sequence{{2}, {2}, {2}}});

    auto c22 = FiniteAbelianGroup::parse("c2xc2");
    auto mins22 = minimal_zero_sum_sequences(c22, 3, budget);
    std::set<Sequence> set22(mins22.begin(), mins22.end());
    std::set<Sequence> want22 = {Sequence{{0, 0}},
                                 Sequence{{0, 1}, {0, 1}},
                                 Sequence{{1, 0}, {1, 0}},
                                 Sequence{{1, 1}, {1, 1}},
                                 Sequence{{0, 1}, {1, 0}, {1, 1}}};
    CHECK(set22 == want22);

    // ordering: by length first, then lexicographic
    CHECK(std::is_sorted(mins3.begin(), mins3.end(), [](const Sequence& a, const Sequence& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    }));
}

TEST_CASE("minimal zero-sum subsequences pick out the dividing atoms") {
    Budget budget;
    auto c3 = FiniteAbelianGroup::parse("c3");
    Sequence U = {{1}, {1}, {1}, {2}, {2}, {2}};
    auto subs = minimal_zero_sum_subsequences(c3, U, budget);
    std::set<Sequence> got(subs.begin(), subs.end());
    CHECK(got == std::set<Sequence>{Sequence{{1}, {2}}, Sequence{{1}, {1}, {1}},
                                    Sequence{{2}, {2}, {2}}});
}

TEST_CASE("Davenport constants with minimal witnesses") {
    for (std::uint32_t n = 2; n <= 8; ++n) {
        Budget budget;
        auto G = FiniteAbelianGroup::from_cyclic_orders({n});
        auto r = davenport(G, budget);
        CHECK(r.value == n);
        CHECK(r.witness.size() == n);
        CHECK(is_minimal_zero_sum(G, r.witness));
    }
    Budget budget;
    auto c22 = FiniteAbelianGroup::parse("c2xc2");
    auto r22 = davenport(c22, budget);
    CHECK(r22.value == 3);
    CHECK(r22.witness == Sequence{{0, 1}, {1, 0}, {1, 1}});

    auto c33 = FiniteAbelianGroup::parse("c3xc3");
    CHECK(davenport(c33, budget).value == 5);

    auto c222 = FiniteAbelianGroup::parse("c2xc2xc2");
    CHECK(davenport(c222, budget).value == 4);

    auto c1 = FiniteAbelianGroup::parse("c1");
    auto r1 = davenport(c1, budget);
    CHECK(r1.value == 1);
    CHECK(r1.witness == Sequence{GroupElem{}});
}

TEST_CASE("set-of-lengths realization search") {
    Budget budget;
    auto c3 = FiniteAbelianGroup::parse("c3");
    auto hit = realize_set_search(c3, {2, 3}, 0, budget);
    REQUIRE(hit.witness.has_value());
    CHECK(*hit.witness == Sequence{{1}, {1}, {1}, {2}, {2}, {2}});

    auto c2 = FiniteAbelianGroup::parse("c2");
    auto miss = realize_set_search(c2, {2, 3}, 0, budget);
    CHECK_FALSE(miss.witness.has_value());
    CHECK(miss.candidates_examined > 0);

    auto c1 = FiniteAbelianGroup::parse("c1");
    auto trivial = realize_set_search(c1, {2}, 0, budget);
    REQUIRE(trivial.witness.has_value());
    CHECK(*trivial.witness == Sequence{GroupElem{}, GroupElem{}});
}

TEST_CASE("witnesses are re-verified by an independent enumerator") {
    Budget budget;
    auto c3 = FiniteAbelianGroup::parse("c3");
    auto hit = realize_set_search(c3, {2, 3}, 0, budget);
    REQUIRE(hit.witness.has_value());
    auto bm = MonoidInstance::block(c3);
    auto L = oracle_length_profile(bm, Element{*hit.witness}, hit.witness->size(), budget);
    CHECK(L.lengths() == std::set<std::uint64_t>{2, 3});
}

TEST_CASE("exceptional group scans") {
    auto rep = exceptional_groups({2, 3}, 3, 0, Budget::kDefaultCap, 1);
    REQUIRE(rep.exceptional.size() == 2);
    CHECK(rep.exceptional[0] == FiniteAbelianGroup::parse("c1"));
    CHECK(rep.exceptional[1] == FiniteAbelianGroup::parse("c2"));
    REQUIRE(rep.realized.size() == 1);
    CHECK(rep.realized[0].first == FiniteAbelianGroup::parse("c3"));
    CHECK(rep.budget_exceeded.empty());

    auto rep2 = exceptional_groups({2}, 4, 0, Budget::kDefaultCap, 1);
    CHECK(rep2.exceptional.empty());
    CHECK(rep2.realized.size() == groups_up_to_order(4).size());

    auto rep3 = exceptional_groups({3}, 2, 0, Budget::kDefaultCap, 1);
    CHECK(rep3.exceptional.empty());
    for (const auto& [G, U] : rep3.realized) {
        Budget b;
        auto L = length_profile(MonoidInstance::block(G), Element{U}, U.size(), b);
        CHECK(L.lengths() == std::set<std::uint64_t>{3});
    }
}

TEST_CASE("parallel exceptional scan merges deterministically") {
    auto seq = exceptional_groups({2, 3}, 4, 0, Budget::kDefaultCap, 1);
    auto par = exceptional_groups({2, 3}, 4, 0, Budget::kDefaultCap, 4);
    CHECK(seq.exceptional == par.exceptional);
    REQUIRE(seq.realized.size() == par.realized.size());
    for (std::size_t i = 0; i < seq.realized.size(); ++i) {
        CHECK(seq.realized[i].first == par.realized[i].first);
        CHECK(seq.realized[i].second == par.realized[i].second);
    }
}

TEST_CASE("bounded zero-sum element enumeration includes the empty sequence") {
    Budget budget;
    auto c2 = FiniteAbelianGroup::parse("c2");
    auto all = zero_sum_sequences_up_to(c2, 4, budget);
    CHECK(std::find(all.begin(), all.end(), Sequence{}) != all.end());
    for (const auto& s : all) {
        CHECK(is_zero_sum(c2, s));
        CHECK(s.size() <= 4);
    }
    // 0^a (gg)^b with a + 2b <= 4: (a,b) in {0..4}x{0}, {0..2}x{1}, {0}x{2}
    CHECK(all.size() == 9);
}
