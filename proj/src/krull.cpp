#include "uf/krull.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace uf {

namespace {

std::uint64_t omega(std::uint64_t n) {
    std::uint64_t count = 0;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            n /= d;
            ++count;
        }
    if (n > 1) ++count;
    return count;
}

} // namespace

std::uint64_t deg(DegreeKind d, const MonoidInstance& m, const Element& a) {
    if (!m.valid(a)) throw domain_error("element does not belong to " + m.name());
    switch (d) {
        case DegreeKind::SequenceLength:
            if (m.kind() != MonoidInstance::Kind::Block)
                throw domain_error("SequenceLength degree applies to block monoids only");
            return std::get<Sequence>(a.v).size();
        case DegreeKind::Canonical:
            switch (m.kind()) {
                case MonoidInstance::Kind::FreeAbelian: {
                    const ExpVec& e = std::get<ExpVec>(a.v);
                    return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
                }
                case MonoidInstance::Kind::NonzeroIntegers: {
                    const auto n = std::get<std::int64_t>(a.v);
                    return omega(static_cast<std::uint64_t>(n < 0 ? -n : n));
                }
                case MonoidInstance::Kind::GroupAsMonoid:
                    return 0; // groups of units: empty letter set
                case MonoidInstance::Kind::Block:
                    return std::get<Sequence>(a.v).size();
                case MonoidInstance::Kind::DirectProduct: {
                    const Tuple& t = std::get<Tuple>(a.v);
                    std::uint64_t s = 0;
                    for (std::size_t i = 0; i < t.coords.size(); ++i)
                        s += deg(DegreeKind::Canonical, m.components()[i], t.coords[i]);
                    return s;
                }
            }
            throw domain_error("bad monoid kind");
        case DegreeKind::PolynomialLikeStub:
            throw domain_error("the PolynomialLikeStub degree kind is reserved");
    }
    throw domain_error("bad degree kind");
}

Verdict<ExtNat> proto_degree(const ElementFamily& fam, const UltrafilterSpec& spec) {
    fam.validate();
    switch (fam.rule) {
        case ElementFamily::Rule::Constant:
        case ElementFamily::Rule::Periodic: {
            const std::uint64_t pl = fam.pre_length(), per = fam.period_length();
            std::vector<ExtNat> pre, period;
            for (std::uint64_t l = 0; l < pl; ++l)
                pre.push_back(deg(DegreeKind::Canonical, fam.component_at(l),
                                  fam.element_at(l)));
            for (std::uint64_t l = pl; l < pl + per; ++l)
                period.push_back(deg(DegreeKind::Canonical, fam.component_at(l),
                                     fam.element_at(l)));
            return ultralimit(
                ExtNatFamily::eventually_periodic(std::move(pre), std::move(period)), spec);
        }
        case ElementFamily::Rule::PrimePowerRamp: {
            // deg(p^λ) = λ
            if (spec.mode == UltrafilterSpec::Mode::PrincipalOnFinite)
                return Verdict<ExtNat>::point(ExtNat(spec.selected_index));
            std::vector<ExtNat> prefix;
            for (std::uint64_t l = 0; l < 8; ++l) prefix.push_back(ExtNat(l));
            return ultralimit(ExtNatFamily::nondecreasing_unbounded(std::move(prefix)), spec);
        }
        case ElementFamily::Rule::TruncationRamp:
            throw domain_error(
                "degree family is not derivable for truncation ramp descriptors");
    }
    throw domain_error("bad element rule");
}

Verdict<bool> in_protoproduct(const ElementFamily& fam, const UltrafilterSpec& spec) {
    Verdict<ExtNat> v = proto_degree(fam, spec);
    const auto fin = [](const ExtNat& n) { return !n.is_infinite(); };
    switch (v.kind) {
        case Verdict<ExtNat>::Kind::Point: return Verdict<bool>::point(fin(*v.value));
        case Verdict<ExtNat>::Kind::ForAll: return Verdict<bool>::forall(fin(*v.value));
        case Verdict<ExtNat>::Kind::Depends: {
            std::set<bool> bs;
            for (const ExtNat& c : v.candidates) bs.insert(fin(c));
            if (bs.size() == 1) return Verdict<bool>::forall(*bs.begin());
            return Verdict<bool>::depends(std::move(bs));
        }
        case Verdict<ExtNat>::Kind::Inconclusive: return Verdict<bool>::inconclusive(v.note);
    }
    throw domain_error("bad verdict");
}

namespace {

/// Length profile of `a` using only atoms inside deg⁻¹(ℕ0): an independent
/// recursion over atoms_dividing, deduplicating essential-sameness classes.
void submonoid_rec(const MonoidInstance& m, DegreeKind dk, const Element& rest,
                   Multiset<Element>& acc, std::uint64_t max_len, Budget& budget,
                   std::set<Multiset<Element>>& out) {
    budget.tick("divisor_closed_profile");
    if (m.is_unit(rest)) {
        out.insert(acc);
        return;
    }
    if (acc.size() >= max_len) return;
    for (const Element& at : atoms_dividing(m, rest, budget)) {
        (void)deg(dk, m, at); // total and finite: the atom lies in the submonoid
        if (!acc.empty() && at < acc.entries().rbegin()->first) continue;
        Multiset<Element> acc2 = acc;
        acc2.add(at);
        submonoid_rec(m, dk, divide(m, rest, at), acc2, max_len, budget, out);
    }
}

LengthProfile submonoid_profile(const MonoidInstance& m, DegreeKind dk, const Element& a,
                                std::uint64_t max_len, Budget& budget) {
    std::set<Multiset<Element>> out;
    Multiset<Element> acc;
    const Element start =
        m.is_unit(a) ? a : m.canonical(m.associate_canonical(a));
    submonoid_rec(m, dk, start, acc, max_len, budget, out);
    LengthProfile p;
    for (const auto& ms : out) p.set(ms.size(), p.multiplicity(ms.size()) + ExtNat(1));
    return p;
}

} // namespace

DivisorClosedReport divisor_closed_check(const MonoidInstance& m, DegreeKind dk,
                                         std::uint64_t size_bound, Budget& budget) {
    if (dk == DegreeKind::PolynomialLikeStub)
        throw domain_error("the PolynomialLikeStub degree kind is reserved");
    DivisorClosedReport rep;
    const std::vector<Element> elems = enumerate_elements(m, size_bound, budget);
    for (const Element& d : elems) {
        ++rep.elements_checked;
        const std::uint64_t dd = deg(dk, m, d);
        for (const Element& a : elems) {
            if (element_size(m, a) > element_size(m, d)) continue;
            Element b;
            try {
                b = divide(m, d, a);
            } catch (const domain_error&) {
                continue; // a does not divide d
            }
            budget.tick("divisor_closed_check");
            ++rep.pairs_checked;
            if (deg(dk, m, a) + deg(dk, m, b) != dd) {
                rep.ok = false;
                rep.counterexample = d;
                rep.detail = "degree is not additive along a division of " + m.show(d);
                return rep;
            }
        }
        const LengthProfile full = length_profile(m, d, dd, budget);
        const LengthProfile sub = submonoid_profile(m, dk, d, dd, budget);
        if (!(full == sub)) {
            rep.ok = false;
            rep.counterexample = d;
            rep.detail = "sets of lengths differ between the monoid and deg^-1(N0) at " +
                         m.show(d);
            return rep;
        }
    }
    rep.detail = "degrees additive along all enumerated divisions; lengths agree";
    return rep;
}

BgProtoIsoReport bg_proto_iso_check(const FiniteAbelianGroup& G, std::uint64_t degree_bound,
                                    const UltrafilterSpec& spec, Budget& budget) {
    const MonoidInstance bm = MonoidInstance::block(G);
    BgProtoIsoReport rep;

    const std::vector<Sequence> seqs = zero_sum_sequences_up_to(G, degree_bound, budget);
    rep.left_count = seqs.size();
    std::set<Element> leftset;
    for (const Sequence& U : seqs) leftset.insert(bm.canonical(Element{U}));
    rep.injective = leftset.size() == seqs.size();

    // protoproduct side through the factorization engine: all distinct
    // products of atom multisets of total degree <= bound, plus the unit
    const std::vector<Element> atoms = atoms_up_to(bm, degree_bound, budget);
    std::set<Element> rightset;
    const auto rec = [&](auto&& self, const Element& cur, std::uint64_t used,
                         std::size_t start) -> void {
        budget.tick("bg_proto_iso");
        rightset.insert(cur);
        for (std::size_t i = start; i < atoms.size(); ++i) {
            const std::uint64_t sz = element_size(bm, atoms[i]);
            if (used + sz > degree_bound) continue;
            self(self, bm.mul(cur, atoms[i]), used + sz, i);
        }
    };
    rec(rec, bm.identity(), 0, 0);
    rep.right_count = rightset.size();
    rep.counts_match = rep.left_count == rep.right_count;
    rep.surjective = leftset == rightset;

    rep.multiplicative = true;
    for (const Sequence& U : seqs) {
        for (const Sequence& V : seqs) {
            if (U.size() + V.size() > degree_bound) continue;
            Sequence w = U;
            w.insert(w.end(), V.begin(), V.end());
            const Element direct{canonical_sequence(std::move(w))};
            if (!(bm.mul(Element{U}, Element{V}) == direct)) {
                rep.multiplicative = false;
                break;
            }
        }
        if (!rep.multiplicative) break;
    }

    rep.atoms_match = true;
    for (const Sequence& U : seqs) {
        if (U.empty()) continue;
        const bool minimal = is_minimal_zero_sum(G, U);
        const Verdict<bool> v =
            up_is_atom(ElementFamily::make_constant(bm, Element{U}), spec, budget);
        const bool fam_atom = (v.kind == Verdict<bool>::Kind::ForAll ||
                               v.kind == Verdict<bool>::Kind::Point) &&
                              v.value && *v.value;
        if (minimal != fam_atom) {
            rep.atoms_match = false;
            break;
        }
    }

    rep.ok = rep.counts_match && rep.injective && rep.surjective && rep.multiplicative &&
             rep.atoms_match;
    std::ostringstream os;
    os << "degree <= " << degree_bound << ": " << rep.left_count
       << " zero-sum sequences vs " << rep.right_count << " atom products";
    rep.detail = os.str();
    return rep;
}

DivisorTheoryImage divisor_theory_BG(const FiniteAbelianGroup& G, const Sequence& U) {
    if (!is_zero_sum(G, U))
        throw domain_error("divisor theory image needs a zero-sum sequence");
    DivisorTheoryImage img;
    img.base = G;
    img.word = canonical_sequence(U);
    img.degree = U.size();
    img.class_group = G;
    img.inclusion_is_divisor_theory = G.order() != 2;
    img.primes_in_every_class = true;
    img.detail =
        img.inclusion_is_divisor_theory
            ? "inclusion B(G) -> F(G); class group G, a prime divisor in every class"
            : "for |G| = 2 the inclusion is only a divisor homomorphism (gcd's of "
              "images have even letter counts); its class group is still G";
    return img;
}

Multiset<Element> divisor_word(const FiniteAbelianGroup& G, const Sequence& U,
                               bool inclusion_theory, Budget& budget) {
    const MonoidInstance bm = MonoidInstance::block(G);
    Multiset<Element> w;
    if (inclusion_theory) {
        for (const GroupElem& g : U) w.add(Element{Sequence{g}});
        return w;
    }
    if (U.empty()) return w;
    // genuine divisor theory for the factorial case: letters are the atoms
    const auto facs = factorizations(bm, Element{canonical_sequence(U)}, U.size(), budget);
    if (facs.size() != 1)
        throw domain_error("internal: the genuine-letter path expects a factorial block monoid");
    return facs.front().atoms;
}

GcdCoverReport gcd_cover_check(const FiniteAbelianGroup& G, std::uint64_t max_len,
                               Budget& budget) {
    GcdCoverReport rep;
    rep.G = G;
    rep.inclusion_theory = G.order() != 2;
    const MonoidInstance bm = MonoidInstance::block(G);

    std::vector<Element> letters;
    if (rep.inclusion_theory) {
        for (const GroupElem& g : G.elements()) letters.push_back(Element{Sequence{g}});
    } else {
        for (const Element& a : atoms_up_to(bm, 2, budget)) letters.push_back(a);
    }

    std::vector<Sequence> cands;
    for (Sequence& s : zero_sum_sequences_up_to(G, max_len, budget))
        if (!s.empty()) cands.push_back(std::move(s));
    std::vector<Multiset<Element>> words;
    words.reserve(cands.size());
    for (const Sequence& s : cands)
        words.push_back(divisor_word(G, s, rep.inclusion_theory, budget));

    const auto meet = [](const Multiset<Element>& a, const Multiset<Element>& b) {
        Multiset<Element> out;
        for (const auto& [e, k] : a.entries()) {
            const std::uint64_t kb = b.count(e);
            if (kb) out.add(e, std::min(k, kb));
        }
        return out;
    };

    rep.ok = true;
    for (const Element& letter : letters) {
        Multiset<Element> target;
        target.add(letter);
        bool found = false;
        for (std::size_t i = 0; i < cands.size() && !found; ++i) {
            if (words[i].count(letter) == 0) continue;
            for (std::size_t j = 0; j < cands.size() && !found; ++j) {
                budget.tick("gcd_cover_check");
                if (!(meet(words[i], words[j]) == target)) continue;
                GcdCoverRow row;
                row.letter = letter;
                row.a = cands[i];
                row.b = cands[j];
                row.ok = true;
                rep.rows.push_back(std::move(row));
                found = true;
            }
        }
        if (!found) {
            std::ostringstream os;
            const Sequence& ls = std::get<Sequence>(letter.v);
            os << "no gcd witness pair within length " << max_len
               << " for a prime letter of " << G.name() << " (letter word length "
               << ls.size() << ")";
            throw domain_error(os.str());
        }
    }
    return rep;
}

namespace {

std::uint64_t mul_order(std::uint64_t a, std::uint64_t r) {
    const std::uint64_t base = a % r;
    std::uint64_t acc = base % r, ord = 1;
    while (acc != 1) {
        acc = acc * base % r;
        if (++ord > r) throw domain_error("multiplicative order: arguments not coprime");
    }
    return ord;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

PrimePowerGap prime_power_gap(std::uint64_t k, Budget& budget) {
    if (k < 1) throw domain_error("prime_power_gap needs k >= 1");
    if (k > 12)
        throw budget_exhausted("prime_power_gap: k beyond the big-integer budget");

    PrimePowerGap out;
    out.k = k;
    out.p = 2;
    std::uint64_t cand = 3;
    while (out.primes.size() < k) {
        if (is_prime_u64(cand)) out.primes.push_back(cand);
        cand += 2;
    }
    std::uint64_t q = out.primes.back() + 2;
    while (!is_prime_u64(q)) q += 2;
    out.q = q;

    out.N = 1;
    for (std::uint64_t r : out.primes) out.N *= r;

    std::uint64_t x = 1;
    for (std::uint64_t r : out.primes) {
        budget.tick("prime_power_gap");
        x = std::lcm(x, mul_order(out.p, r));
        x = std::lcm(x, mul_order(out.q, r));
    }
    if (x > 100000)
        throw budget_exhausted("prime_power_gap: certified exponent too large");
    out.x = out.y = x;

    mpz_class px, qy;
    mpz_ui_pow_ui(px.get_mpz_t(), static_cast<unsigned long>(out.p),
                  static_cast<unsigned long>(x));
    mpz_ui_pow_ui(qy.get_mpz_t(), static_cast<unsigned long>(out.q),
                  static_cast<unsigned long>(x));
    const mpz_class diff = px - qy;

    out.verified = mpz_divisible_ui_p(diff.get_mpz_t(), static_cast<unsigned long>(out.N));
    for (std::uint64_t r : out.primes)
        out.verified =
            out.verified && mpz_divisible_ui_p(diff.get_mpz_t(), static_cast<unsigned long>(r));
    out.difference = diff.get_str();
    out.difference_digits = mpz_sizeinbase(diff.get_mpz_t(), 10);
    return out;
}

} // namespace uf
