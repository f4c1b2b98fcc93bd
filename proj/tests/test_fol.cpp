#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>

#include "uf/fol.hpp"

using namespace uf;
using namespace uf::fol;

namespace {

std::size_t quantifier_count(const FormulaPtr& f) {
    if (!f) return 0;
    std::size_t here = (f->k == Formula::K::Forall || f->k == Formula::K::Exists) ? 1 : 0;
    return here + quantifier_count(f->l) + quantifier_count(f->r);
}

FormulaPtr involution_sentence() {
    auto x = Term::var("x");
    return Formula::exists(
        "x", Formula::conj(Formula::eq(Term::mul(x, x), Term::one()),
                           Formula::negate(Formula::eq(x, Term::one()))));
}

FormulaPtr commutativity() {
    auto a = Term::var("a");
    auto b = Term::var("b");
    return Formula::forall(
        "a", Formula::forall("b", Formula::eq(Term::mul(a, b), Term::mul(b, a))));
}

} // namespace

TEST_CASE("parsing builds the expected trees") {
    auto phi = parse_sentence("exists x. x*x = 1 & !(x = 1)");
    CHECK(formula_equal(phi, involution_sentence()));

    auto comm = parse_sentence("forall a. forall b. a*b = b*a");
    CHECK(formula_equal(comm, commutativity()));

    CHECK_THROWS_WITH_AS(parse_sentence("forall x. y = x"), "unbound variable: y",
                         domain_error);
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_sentence(""), domain_error);
    CHECK_THROWS_AS(parse_sentence("forall x."), domain_error);
    CHECK_THROWS_AS(parse_sentence("x = "), domain_error);
    CHECK_THROWS_AS(parse_sentence("forall = 1"), domain_error);
    CHECK_THROWS_AS(parse_sentence("exists x. x * = x"), domain_error);
    try {
        parse_sentence("exists x. x ** x = 1");
        FAIL("expected a syntax error");
    } catch (const domain_error& e) {
        CHECK(std::string(e.what()).find("position") != std::string::npos);
    }
}

TEST_CASE("precedence and associativity") {
    // ! binds tighter than &, & tighter than |, | tighter than ->
    auto phi = parse_sentence("forall x. !x = 1 & x = x | x = x -> x = x");
    REQUIRE(phi->k == Formula::K::Forall);
    CHECK(phi->l->k == Formula::K::Implies);
    CHECK(phi->l->l->k == Formula::K::Or);
    CHECK(phi->l->l->l->k == Formula::K::And);
    CHECK(phi->l->l->l->l->k == Formula::K::Not);

    // -> is right-associative
    auto chain = parse_sentence("forall x. x = 1 -> x = 1 -> x = 1");
    CHECK(chain->l->k == Formula::K::Implies);
    CHECK(chain->l->r->k == Formula::K::Implies);

    // quantifiers may appear on the right-hand side of -> without parentheses
    auto nested = parse_sentence("forall x. x = 1 -> exists y. y = x");
    CHECK(nested->l->r->k == Formula::K::Exists);

    // term grouping: a*(b*c) stays distinct from (a*b)*c structurally
    auto left = parse_sentence("forall a. forall b. forall c. a*b*c = a*(b*c)");
    auto eq = left->l->l->l;
    REQUIRE(eq->k == Formula::K::Eq);
    CHECK(eq->tl->k == Term::K::Mul);
    CHECK(eq->tl->l->k == Term::K::Mul); // left-associated
    CHECK(eq->tr->r->k == Term::K::Mul); // explicit right grouping preserved
}

TEST_CASE("evaluation in concrete groups") {
    auto phi = involution_sentence();
    CHECK(eval(phi, model_of_group(FiniteAbelianGroup::parse("c4"))));
    CHECK_FALSE(eval(phi, model_of_group(FiniteAbelianGroup::parse("c3"))));

    for (const auto& G : groups_up_to_order(6))
        CHECK(eval(commutativity(), model_of_group(G)));

    // free variables are rejected at evaluation time as well
    auto x = Term::var("x");
    auto open_formula = Formula::eq(x, Term::one());
    CHECK_THROWS_AS(eval(open_formula, model_of_group(FiniteAbelianGroup::parse("c2"))),
                    domain_error);
}

TEST_CASE("finite ultraproducts collapse to the selected component") {
    auto c2 = FiniteAbelianGroup::parse("c2");
    auto c3 = FiniteAbelianGroup::parse("c3");
    auto c4 = FiniteAbelianGroup::parse("c4");

    auto Q = finite_ultraproduct({c2, c3, c4}, 1);
    CHECK(Q.size() == 3);
    CHECK(Q.check_well_defined());
    CHECK(Q.model().table == model_of_group(c3).table);
    CHECK(Q.model().identity == model_of_group(c3).identity);

    auto single = finite_ultraproduct({c2}, 0);
    CHECK(single.size() == 2);
    CHECK(single.model().table == model_of_group(c2).table);

    // class map = first projection for the principal filter at index 0
    auto twice = finite_ultraproduct({c2, c2}, 0);
    CHECK(twice.size() == 2);
    CHECK(twice.class_of({GroupElem{1}, GroupElem{0}}) == 1);
    CHECK(twice.class_of({GroupElem{1}, GroupElem{1}}) == 1);
    CHECK(twice.class_of({GroupElem{0}, GroupElem{1}}) == 0);
}

TEST_CASE("Los conformance on pinned sentences") {
    auto phi = involution_sentence();
    std::vector<FiniteAbelianGroup> tuple = {FiniteAbelianGroup::parse("c2"),
                                             FiniteAbelianGroup::parse("c3"),
                                             FiniteAbelianGroup::parse("c4")};
    auto at1 = los_check(phi, tuple, 1);
    CHECK_FALSE(at1.quotient_value);
    CHECK_FALSE(at1.component_value);
    CHECK(at1.agree);

    auto at2 = los_check(phi, tuple, 2);
    CHECK(at2.quotient_value);
    CHECK(at2.component_value);
    CHECK(at2.agree);

    auto comm = los_check(commutativity(), tuple, 0);
    CHECK(comm.quotient_value);
    CHECK(comm.component_value);
    CHECK(comm.agree);
}

TEST_CASE("random sentences are closed, quantifier-bounded and round-trip") {
    auto one = random_sentence(1, 2, 0);
    CHECK((one->k == Formula::K::Forall || one->k == Formula::K::Exists));
    CHECK(quantifier_count(one) == 1);
    CHECK(free_vars(one).empty());

    auto deep = random_sentence(3, 3, 7);
    CHECK(quantifier_count(deep) <= 3);
    CHECK(free_vars(deep).empty());

    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        auto phi = random_sentence(3, 3, seed);
        CHECK(free_vars(phi).empty());
        CHECK(quantifier_count(phi) <= 3);
        auto printed = print(phi);
        auto reparsed = parse_sentence(printed);
        CHECK(formula_equal(phi, reparsed));
        CHECK(print(reparsed) == printed);
    }

    // determinism per seed
    CHECK(formula_equal(random_sentence(3, 3, 11), random_sentence(3, 3, 11)));
    CHECK(print(random_sentence(2, 2, 5)) == print(random_sentence(2, 2, 5)));
}

TEST_CASE("printer emits minimal parentheses that still re-parse") {
    auto phi = parse_sentence("forall x. (x = 1 | x*x = 1) & !(x = 1) -> exists y. y*y = x");
    auto printed = print(phi);
    CHECK(formula_equal(parse_sentence(printed), phi));
}
