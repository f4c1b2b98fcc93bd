#include "uf/fol.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

namespace uf::fol {

TermPtr Term::one() { return std::make_shared<Term>(Term{K::One, {}, nullptr, nullptr}); }

TermPtr Term::var(std::string name) {
    return std::make_shared<Term>(Term{K::Var, std::move(name), nullptr, nullptr});
}

TermPtr Term::mul(TermPtr a, TermPtr b) {
    return std::make_shared<Term>(Term{K::Mul, {}, std::move(a), std::move(b)});
}

FormulaPtr Formula::eq(TermPtr a, TermPtr b) {
    Formula f;
    f.k = K::Eq;
    f.tl = std::move(a);
    f.tr = std::move(b);
    return std::make_shared<Formula>(std::move(f));
}

static FormulaPtr binary(Formula::K k, FormulaPtr a, FormulaPtr b) {
    Formula f;
    f.k = k;
    f.l = std::move(a);
    f.r = std::move(b);
    return std::make_shared<Formula>(std::move(f));
}

FormulaPtr Formula::negate(FormulaPtr a) { return binary(K::Not, std::move(a), nullptr); }
FormulaPtr Formula::conj(FormulaPtr a, FormulaPtr b) {
    return binary(K::And, std::move(a), std::move(b));
}
FormulaPtr Formula::disj(FormulaPtr a, FormulaPtr b) {
    return binary(K::Or, std::move(a), std::move(b));
}
FormulaPtr Formula::implies(FormulaPtr a, FormulaPtr b) {
    return binary(K::Implies, std::move(a), std::move(b));
}

static FormulaPtr quantified(Formula::K k, std::string v, FormulaPtr body) {
    Formula f;
    f.k = k;
    f.var = std::move(v);
    f.l = std::move(body);
    return std::make_shared<Formula>(std::move(f));
}

FormulaPtr Formula::forall(std::string v, FormulaPtr body) {
    return quantified(K::Forall, std::move(v), std::move(body));
}
FormulaPtr Formula::exists(std::string v, FormulaPtr body) {
    return quantified(K::Exists, std::move(v), std::move(body));
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->k != b->k) return false;
    switch (a->k) {
        case Term::K::One: return true;
        case Term::K::Var: return a->name == b->name;
        case Term::K::Mul: return term_equal(a->l, b->l) && term_equal(a->r, b->r);
    }
    return false;
}

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->k != b->k) return false;
    switch (a->k) {
        case Formula::K::Eq:
            return term_equal(a->tl, b->tl) && term_equal(a->tr, b->tr);
        case Formula::K::Not: return formula_equal(a->l, b->l);
        case Formula::K::And:
        case Formula::K::Or:
        case Formula::K::Implies:
            return formula_equal(a->l, b->l) && formula_equal(a->r, b->r);
        case Formula::K::Forall:
        case Formula::K::Exists:
            return a->var == b->var && formula_equal(a->l, b->l);
    }
    return false;
}

// ---------------------------------------------------------------- printing

namespace {

// term levels: Mul = 1, atoms = 2
std::string render_term(const TermPtr& t, int min_level) {
    std::string s;
    int lvl = 2;
    switch (t->k) {
        case Term::K::One: s = "1"; break;
        case Term::K::Var: s = t->name; break;
        case Term::K::Mul:
            s = render_term(t->l, 1) + "*" + render_term(t->r, 2);
            lvl = 1;
            break;
    }
    return lvl < min_level ? "(" + s + ")" : s;
}

// formula levels: quantifier = 0, -> = 1, | = 2, & = 3, ! = 4, atom = 5
std::string render(const FormulaPtr& f, int min_level) {
    std::string s;
    int lvl = 5;
    switch (f->k) {
        case Formula::K::Eq:
            s = render_term(f->tl, 0) + " = " + render_term(f->tr, 0);
            break;
        case Formula::K::Not:
            s = "!(" + render(f->l, 0) + ")";
            lvl = 4;
            break;
        case Formula::K::And:
            s = render(f->l, 3) + " & " + render(f->r, 4);
            lvl = 3;
            break;
        case Formula::K::Or:
            s = render(f->l, 2) + " | " + render(f->r, 3);
            lvl = 2;
            break;
        case Formula::K::Implies:
            s = render(f->l, 2) + " -> " + render(f->r, 0);
            lvl = 1;
            break;
        case Formula::K::Forall:
        case Formula::K::Exists:
            s = (f->k == Formula::K::Forall ? "forall " : "exists ") + f->var + ". " +
                render(f->l, 0);
            lvl = 0;
            break;
    }
    return lvl < min_level ? "(" + s + ")" : s;
}

} // namespace

std::string print_term(const TermPtr& t) { return render_term(t, 0); }
std::string print(const FormulaPtr& f) { return render(f, 0); }

static void free_vars_rec(const FormulaPtr& f, std::vector<std::string>& bound,
                          std::set<std::string>& out) {
    const auto term_vars = [&](const TermPtr& t, auto&& self) -> void {
        if (!t) return;
        if (t->k == Term::K::Var) {
            if (std::find(bound.rbegin(), bound.rend(), t->name) == bound.rend())
                out.insert(t->name);
        } else if (t->k == Term::K::Mul) {
            self(t->l, self);
            self(t->r, self);
        }
    };
    switch (f->k) {
        case Formula::K::Eq:
            term_vars(f->tl, term_vars);
            term_vars(f->tr, term_vars);
            break;
        case Formula::K::Not: free_vars_rec(f->l, bound, out); break;
        case Formula::K::And:
        case Formula::K::Or:
        case Formula::K::Implies:
            free_vars_rec(f->l, bound, out);
            free_vars_rec(f->r, bound, out);
            break;
        case Formula::K::Forall:
        case Formula::K::Exists:
            bound.push_back(f->var);
            free_vars_rec(f->l, bound, out);
            bound.pop_back();
            break;
    }
}

std::set<std::string> free_vars(const FormulaPtr& f) {
    std::set<std::string> out;
    std::vector<std::string> bound;
    free_vars_rec(f, bound, out);
    return out;
}

// ---------------------------------------------------------------- parsing

namespace {

struct Token {
    enum class K { Ident, One, LParen, RParen, Star, Eq, Amp, Pipe, Bang, Arrow, Dot, End };
    K k;
    std::string text;
    std::size_t pos;
};

class Parser {
public:
    explicit Parser(const std::string& text) { tokenize(text); }

    FormulaPtr parse() {
        FormulaPtr f = parse_formula();
        expect(Token::K::End, "end of input");
        return f;
    }

private:
    std::vector<Token> toks_;
    std::size_t i_ = 0;

    [[noreturn]] void fail(std::size_t pos, const std::string& what) const {
        throw domain_error("syntax error at position " + std::to_string(pos) + ": " + what);
    }

    void tokenize(const std::string& s) {
        std::size_t p = 0;
        while (p < s.size()) {
            char c = s[p];
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                ++p;
                continue;
            }
            if (c == '1') {
                toks_.push_back({Token::K::One, "1", p});
                ++p;
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t q = p;
                while (q < s.size() && (std::isalnum(static_cast<unsigned char>(s[q])) ||
                                        s[q] == '_'))
                    ++q;
                toks_.push_back({Token::K::Ident, s.substr(p, q - p), p});
                p = q;
            } else if (c == '-' && p + 1 < s.size() && s[p + 1] == '>') {
                toks_.push_back({Token::K::Arrow, "->", p});
                p += 2;
            } else {
                Token::K k;
                switch (c) {
                    case '(': k = Token::K::LParen; break;
                    case ')': k = Token::K::RParen; break;
                    case '*': k = Token::K::Star; break;
                    case '=': k = Token::K::Eq; break;
                    case '&': k = Token::K::Amp; break;
                    case '|': k = Token::K::Pipe; break;
                    case '!': k = Token::K::Bang; break;
                    case '.': k = Token::K::Dot; break;
                    default: fail(p, std::string("unexpected character '") + c + "'");
                }
                toks_.push_back({k, std::string(1, c), p});
                ++p;
            }
        }
        toks_.push_back({Token::K::End, "", s.size()});
    }

    const Token& peek() const { return toks_[i_]; }
    const Token& advance() { return toks_[i_++]; }
    bool accept(Token::K k) {
        if (peek().k == k) {
            ++i_;
            return true;
        }
        return false;
    }
    void expect(Token::K k, const std::string& what) {
        if (!accept(k)) fail(peek().pos, "expected " + what);
    }
    bool at_keyword(const char* kw) const {
        return peek().k == Token::K::Ident && peek().text == kw;
    }

    FormulaPtr parse_formula() {
        if (at_keyword("forall") || at_keyword("exists")) {
            const bool uni = peek().text == "forall";
            advance();
            if (peek().k != Token::K::Ident) fail(peek().pos, "expected a variable name");
            std::string v = advance().text;
            if (v == "forall" || v == "exists")
                fail(toks_[i_ - 1].pos, "'" + v + "' is a reserved word");
            expect(Token::K::Dot, "'.' after the quantified variable");
            FormulaPtr body = parse_formula();
            return uni ? Formula::forall(std::move(v), std::move(body))
                       : Formula::exists(std::move(v), std::move(body));
        }
        return parse_implies();
    }

    FormulaPtr parse_implies() {
        FormulaPtr l = parse_or();
        if (accept(Token::K::Arrow)) return Formula::implies(std::move(l), parse_formula());
        return l;
    }

    FormulaPtr parse_or() {
        FormulaPtr l = parse_and();
        while (accept(Token::K::Pipe)) l = Formula::disj(std::move(l), parse_and());
        return l;
    }

    FormulaPtr parse_and() {
        FormulaPtr l = parse_unary();
        while (accept(Token::K::Amp)) l = Formula::conj(std::move(l), parse_unary());
        return l;
    }

    FormulaPtr parse_unary() {
        if (accept(Token::K::Bang)) return Formula::negate(parse_unary());
        // an atom "term = term" and a parenthesized formula can both start
        // with '(': try the equation first, backtrack to the formula
        const std::size_t save = i_;
        std::string term_error;
        try {
            TermPtr a = parse_term();
            expect(Token::K::Eq, "'=' in an atomic formula");
            TermPtr b = parse_term();
            return Formula::eq(std::move(a), std::move(b));
        } catch (const domain_error& e) {
            term_error = e.what();
            i_ = save;
        }
        if (peek().k != Token::K::LParen) throw domain_error(term_error);
        advance();
        FormulaPtr f = parse_formula();
        expect(Token::K::RParen, "')'");
        return f;
    }

    TermPtr parse_term() {
        TermPtr l = parse_factor();
        while (accept(Token::K::Star)) l = Term::mul(std::move(l), parse_factor());
        return l;
    }

    TermPtr parse_factor() {
        if (accept(Token::K::One)) return Term::one();
        if (peek().k == Token::K::Ident) {
            if (at_keyword("forall") || at_keyword("exists"))
                fail(peek().pos, "'" + peek().text + "' is a reserved word");
            return Term::var(advance().text);
        }
        if (accept(Token::K::LParen)) {
            TermPtr t = parse_term();
            expect(Token::K::RParen, "')'");
            return t;
        }
        fail(peek().pos, "expected a term");
    }
};

} // namespace

FormulaPtr parse_sentence(const std::string& text) {
    Parser p(text);
    FormulaPtr f = p.parse();
    std::set<std::string> fv = free_vars(f);
    if (!fv.empty()) throw domain_error("unbound variable: " + *fv.begin());
    return f;
}

// -------------------------------------------------------------- evaluation

FiniteModel model_of_group(const FiniteAbelianGroup& G) {
    FiniteModel M;
    M.name = G.name();
    const std::uint64_t n = G.order();
    M.table.assign(n, std::vector<std::size_t>(n, 0));
    M.elem_names.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        const GroupElem a = G.element_at(i);
        std::ostringstream os;
        os << "(";
        for (std::size_t c = 0; c < a.size(); ++c) os << (c ? "," : "") << a[c];
        os << ")";
        M.elem_names.push_back(os.str());
        for (std::uint64_t j = 0; j < n; ++j)
            M.table[i][j] = G.index_of(G.add(a, G.element_at(j)));
    }
    M.identity = G.index_of(GroupElem(G.invariant_factors().size(), 0));
    return M;
}

namespace {

using Env = std::vector<std::pair<std::string, std::size_t>>;

std::size_t term_value(const TermPtr& t, const FiniteModel& M, const Env& env) {
    switch (t->k) {
        case Term::K::One: return M.identity;
        case Term::K::Var: {
            for (auto it = env.rbegin(); it != env.rend(); ++it)
                if (it->first == t->name) return it->second;
            throw domain_error("unbound variable: " + t->name);
        }
        case Term::K::Mul:
            return M.table[term_value(t->l, M, env)][term_value(t->r, M, env)];
    }
    throw domain_error("bad term");
}

bool eval_rec(const FormulaPtr& f, const FiniteModel& M, Env& env) {
    switch (f->k) {
        case Formula::K::Eq:
            return term_value(f->tl, M, env) == term_value(f->tr, M, env);
        case Formula::K::Not: return !eval_rec(f->l, M, env);
        case Formula::K::And: return eval_rec(f->l, M, env) && eval_rec(f->r, M, env);
        case Formula::K::Or: return eval_rec(f->l, M, env) || eval_rec(f->r, M, env);
        case Formula::K::Implies: return !eval_rec(f->l, M, env) || eval_rec(f->r, M, env);
        case Formula::K::Forall:
        case Formula::K::Exists: {
            const bool uni = f->k == Formula::K::Forall;
            env.emplace_back(f->var, 0);
            for (std::size_t v = 0; v < M.size(); ++v) {
                env.back().second = v;
                const bool b = eval_rec(f->l, M, env);
                if (uni && !b) {
                    env.pop_back();
                    return false;
                }
                if (!uni && b) {
                    env.pop_back();
                    return true;
                }
            }
            env.pop_back();
            return uni;
        }
    }
    throw domain_error("bad formula");
}

} // namespace

bool eval(const FormulaPtr& sentence, const FiniteModel& M) {
    std::set<std::string> fv = free_vars(sentence);
    if (!fv.empty())
        throw domain_error("not a sentence: unbound variable: " + *fv.begin());
    if (M.size() == 0) throw domain_error("evaluation needs a nonempty model");
    Env env;
    return eval_rec(sentence, M, env);
}

// ----------------------------------------------------------- ultraproduct

QuotientStructure finite_ultraproduct(const std::vector<FiniteAbelianGroup>& groups,
                                      std::size_t selected) {
    if (groups.empty()) throw domain_error("ultraproduct needs at least one component");
    if (selected >= groups.size())
        throw domain_error("ultraproduct: selected index out of range");
    std::uint64_t total = 1;
    for (const auto& G : groups) {
        total *= G.order();
        if (total > 200000)
            throw domain_error("ultraproduct: too many tuples to materialize");
    }

    QuotientStructure Q;
    Q.groups = groups;
    Q.selected = selected;
    const FiniteAbelianGroup& S = groups[selected];
    Q.reps.assign(S.order(), {});
    std::vector<char> have(S.order(), 0);

    std::vector<std::uint64_t> idx(groups.size(), 0);
    for (std::uint64_t t = 0; t < total; ++t) {
        std::vector<GroupElem> tup;
        tup.reserve(groups.size());
        for (std::size_t c = 0; c < groups.size(); ++c)
            tup.push_back(groups[c].element_at(idx[c]));
        const std::size_t cls = static_cast<std::size_t>(idx[selected]);
        Q.tuples.push_back(tup);
        Q.class_of_tuple.push_back(cls);
        if (!have[cls]) {
            have[cls] = 1;
            Q.reps[cls] = std::move(tup);
        }
        // increment the mixed-radix counter, last coordinate fastest
        for (std::size_t c = groups.size(); c-- > 0;) {
            if (++idx[c] < groups[c].order()) break;
            idx[c] = 0;
        }
    }
    return Q;
}

std::vector<GroupElem> QuotientStructure::mul_tuples(const std::vector<GroupElem>& a,
                                                     const std::vector<GroupElem>& b) const {
    std::vector<GroupElem> out;
    out.reserve(groups.size());
    for (std::size_t c = 0; c < groups.size(); ++c)
        out.push_back(groups[c].add(a[c], b[c]));
    return out;
}

std::size_t QuotientStructure::class_of(const std::vector<GroupElem>& tuple) const {
    if (tuple.size() != groups.size())
        throw domain_error("tuple arity does not match the index set");
    return static_cast<std::size_t>(groups[selected].index_of(tuple[selected]));
}

bool QuotientStructure::check_well_defined() const {
    const std::size_t n = tuples.size();
    // every pair when feasible, a deterministic stride otherwise
    const std::size_t step = n * n <= 4000000 ? 1 : (n * n / 4000000 + 1);
    std::size_t pair = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j, ++pair) {
            if (pair % step != 0) continue;
            const std::size_t via_tuples = class_of(mul_tuples(tuples[i], tuples[j]));
            const std::size_t via_reps = class_of(mul_tuples(reps[class_of_tuple[i]],
                                                             reps[class_of_tuple[j]]));
            if (via_tuples != via_reps) return false;
        }
    return true;
}

FiniteModel QuotientStructure::model() const {
    FiniteModel M;
    std::ostringstream os;
    os << "(";
    for (std::size_t c = 0; c < groups.size(); ++c)
        os << (c ? " x " : "") << groups[c].name();
    os << ") / principal(" << selected << ")";
    M.name = os.str();
    const std::size_t n = reps.size();
    M.table.assign(n, std::vector<std::size_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            M.table[i][j] = class_of(mul_tuples(reps[i], reps[j]));
    const FiniteAbelianGroup& S = groups[selected];
    M.identity = static_cast<std::size_t>(
        S.index_of(GroupElem(S.invariant_factors().size(), 0)));
    M.elem_names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::ostringstream es;
        es << "[";
        for (std::size_t c = 0; c < groups.size(); ++c) {
            if (c) es << ";";
            const GroupElem& e = reps[i][c];
            for (std::size_t d = 0; d < e.size(); ++d) es << (d ? "," : "") << e[d];
        }
        es << "]*";
        M.elem_names.push_back(es.str());
    }
    return M;
}

LosReport los_check(const FormulaPtr& sentence, const std::vector<FiniteAbelianGroup>& groups,
                    std::size_t selected) {
    QuotientStructure Q = finite_ultraproduct(groups, selected);
    LosReport rep;
    rep.quotient_value = eval(sentence, Q.model());
    rep.component_value = eval(sentence, model_of_group(groups[selected]));
    rep.agree = rep.quotient_value == rep.component_value;
    return rep;
}

// --------------------------------------------------------------- fuzzing

namespace {

TermPtr gen_term(std::mt19937_64& rng, int fuel, const std::vector<std::string>& bound) {
    // 0 -> "1", 1..2 -> a bound variable, 3 -> a product
    const std::uint64_t pick = rng() % 4;
    if (pick == 3 && fuel > 0)
        return Term::mul(gen_term(rng, fuel - 1, bound), gen_term(rng, fuel - 1, bound));
    if (pick >= 1 && !bound.empty()) return Term::var(bound[rng() % bound.size()]);
    return Term::one();
}

FormulaPtr gen_formula(std::mt19937_64& rng, int depth, std::vector<std::string>& bound,
                       int& quants_left, std::uint64_t var_budget, std::uint64_t& name_ctr) {
    if (depth <= 0)
        return Formula::eq(gen_term(rng, 1, bound), gen_term(rng, 1, bound));
    const std::uint64_t pick = rng() % 8;
    if (pick < 2 && quants_left > 0) {
        --quants_left;
        std::string v = "x" + std::to_string(name_ctr++ % std::max<std::uint64_t>(1, var_budget));
        bound.push_back(v);
        FormulaPtr body = gen_formula(rng, depth - 1, bound, quants_left, var_budget, name_ctr);
        bound.pop_back();
        return (rng() & 1) ? Formula::forall(v, std::move(body))
                           : Formula::exists(v, std::move(body));
    }
    switch (pick % 6) {
        case 0:
        case 1:
            return Formula::eq(gen_term(rng, 2, bound), gen_term(rng, 2, bound));
        case 2:
            return Formula::negate(
                gen_formula(rng, depth - 1, bound, quants_left, var_budget, name_ctr));
        case 3:
            return Formula::conj(
                gen_formula(rng, depth - 1, bound, quants_left, var_budget, name_ctr),
                gen_formula(rng, depth - 1, bound, quants_left, var_budget, name_ctr));
        case 4:
            return Formula::disj(
                gen_formula(rng, depth - 1, bound, quants_left, var_budget, name_ctr),
                gen_formula(rng, depth - 1, bound, quants_left, var_budget, name_ctr));
        default:
            return Formula::implies(
                gen_formula(rng, depth - 1, bound, quants_left, var_budget, name_ctr),
                gen_formula(rng, depth - 1, bound, quants_left, var_budget, name_ctr));
    }
}

} // namespace

FormulaPtr random_sentence(std::uint64_t depth, std::uint64_t var_budget, std::uint64_t seed) {
    if (depth < 1) throw domain_error("random_sentence needs depth >= 1");
    std::mt19937_64 rng(seed);
    int quants_left = static_cast<int>(depth) - 1;
    std::uint64_t name_ctr = 1;
    std::vector<std::string> bound{"x0"};
    FormulaPtr body = gen_formula(rng, static_cast<int>(depth) - 1, bound, quants_left,
                                  std::max<std::uint64_t>(1, var_budget), name_ctr);
    bound.clear();
    return (rng() & 1) ? Formula::forall("x0", std::move(body))
                       : Formula::exists("x0", std::move(body));
}

} // namespace uf::fol
