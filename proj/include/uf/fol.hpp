#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "uf/errors.hpp"
#include "uf/group.hpp"

namespace uf::fol {

/// Terms of the monoid language: 1, variables, binary product.
struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    enum class K { One, Var, Mul };
    K k = K::One;
    std::string name; // Var
    TermPtr l, r;     // Mul

    static TermPtr one();
    static TermPtr var(std::string name);
    static TermPtr mul(TermPtr a, TermPtr b);
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class K { Eq, Not, And, Or, Implies, Forall, Exists };
    K k = K::Eq;
    TermPtr tl, tr;  // Eq
    FormulaPtr l, r; // connectives (Not uses l)
    std::string var; // quantifiers (body in l)

    static FormulaPtr eq(TermPtr a, TermPtr b);
    static FormulaPtr negate(FormulaPtr a);
    static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
    static FormulaPtr disj(FormulaPtr a, FormulaPtr b);
    static FormulaPtr implies(FormulaPtr a, FormulaPtr b);
    static FormulaPtr forall(std::string v, FormulaPtr body);
    static FormulaPtr exists(std::string v, FormulaPtr body);
};

bool term_equal(const TermPtr& a, const TermPtr& b);
bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);

std::string print_term(const TermPtr& t);
/// Minimal-parentheses rendering; parse_sentence(print(phi)) == phi.
std::string print(const FormulaPtr& f);

/// Free variables of a formula (empty for sentences).
std::set<std::string> free_vars(const FormulaPtr& f);

/// Grammar (precedence ! > & > | > ->, quantifiers lowest, -> right
/// associative, quantifier bodies and implication right-hand sides may be
/// quantified without parentheses):
///   formula := ("forall" | "exists") IDENT "." formula | implies
///   implies := or ("->" formula)?
///   or      := and ("|" and)*
///   and     := unary ("&" unary)*
///   unary   := "!" unary | "(" formula ")" | term "=" term
///   term    := factor ("*" factor)*
///   factor  := "1" | IDENT | "(" term ")"
/// Throws domain_error with a character position on syntax errors and an
/// unbound-variable error naming the variable on non-sentences.
FormulaPtr parse_sentence(const std::string& text);

/// A finite monoid presented by its multiplication table.
struct FiniteModel {
    std::string name;
    std::size_t identity = 0;
    std::vector<std::vector<std::size_t>> table; // size x size
    std::vector<std::string> elem_names;

    std::size_t size() const { return table.size(); }
};

FiniteModel model_of_group(const FiniteAbelianGroup& G);

/// Tarskian evaluation by exhaustive quantification; domain_error when the
/// formula has free variables.
bool eval(const FormulaPtr& sentence, const FiniteModel& M);

/// Literal ultraproduct over a finite index set with the principal
/// ultrafilter at `selected`: all tuples, partitioned by the equivalence
/// r ≡ s iff {λ : r_λ = s_λ} belongs to the filter (= equality at selected).
struct QuotientStructure {
    std::vector<FiniteAbelianGroup> groups;
    std::size_t selected = 0;
    std::vector<std::vector<GroupElem>> tuples; // all tuples, lex order
    std::vector<std::size_t> class_of_tuple;    // tuple index -> class index
    std::vector<std::vector<GroupElem>> reps;   // class index -> first tuple

    std::size_t size() const { return reps.size(); }
    std::vector<GroupElem> mul_tuples(const std::vector<GroupElem>& a,
                                      const std::vector<GroupElem>& b) const;
    std::size_t class_of(const std::vector<GroupElem>& tuple) const;
    /// Multiplication on classes is representative-independent: checked
    /// exhaustively over all tuple pairs (small products only).
    bool check_well_defined() const;
    FiniteModel model() const;
};

QuotientStructure finite_ultraproduct(const std::vector<FiniteAbelianGroup>& groups,
                                      std::size_t selected);

struct LosReport {
    bool quotient_value = false;
    bool component_value = false;
    bool agree = false;
};

/// Łoś conformance at finite scale: the sentence holds in the quotient iff
/// it holds in the selected component.
LosReport los_check(const FormulaPtr& sentence, const std::vector<FiniteAbelianGroup>& groups,
                    std::size_t selected);

/// Deterministic-per-seed random closed sentence with at most `depth`
/// quantifiers (at least one, at the root) drawing from var_budget names.
FormulaPtr random_sentence(std::uint64_t depth, std::uint64_t var_budget, std::uint64_t seed);

} // namespace uf::fol
