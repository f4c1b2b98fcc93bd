#include "uf/json_io.hpp"

#include <sstream>

namespace uf {

namespace {

std::string group_elem_repr(const GroupElem& g) {
    std::string out = "[";
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(g[i]);
    }
    return out + "]";
}

std::string sequence_repr(const Sequence& s) {
    if (s.empty()) return "()";
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += group_elem_repr(s[i]);
    }
    return out;
}

/// Snake-case monoid identifier for machine output ("nonzero_integers",
/// "bg:c3", "free:2", "group:c2xc2", products joined with '+').
std::string component_id(const MonoidInstance& m) {
    auto group_id = [](const FiniteAbelianGroup& G) {
        if (G.is_trivial()) return std::string("c1");
        std::string out;
        for (std::size_t i = 0; i < G.invariant_factors().size(); ++i) {
            if (i) out += "x";
            out += "c" + std::to_string(G.invariant_factors()[i]);
        }
        return out;
    };
    switch (m.kind()) {
        case MonoidInstance::Kind::FreeAbelian:
            return "free:" + std::to_string(m.rank());
        case MonoidInstance::Kind::NonzeroIntegers:
            return "nonzero_integers";
        case MonoidInstance::Kind::GroupAsMonoid:
            return "group:" + group_id(m.group());
        case MonoidInstance::Kind::Block:
            return "bg:" + group_id(m.group());
        case MonoidInstance::Kind::DirectProduct: {
            std::string out = "prod:";
            for (std::size_t i = 0; i < m.components().size(); ++i) {
                if (i) out += "+";
                out += component_id(m.components()[i]);
            }
            return out;
        }
    }
    return {};
}

template <typename T>
json j_verdict_impl(const Verdict<T>& v, json (*value_json)(const T&)) {
    json out;
    switch (v.kind) {
        case Verdict<T>::Kind::Point:
            out["verdict"] = "point";
            out["value"] = value_json(*v.value);
            break;
        case Verdict<T>::Kind::ForAll:
            out["verdict"] = "forall";
            out["value"] = value_json(*v.value);
            break;
        case Verdict<T>::Kind::Depends: {
            out["verdict"] = "depends";
            json cands = json::array();
            for (const auto& c : v.candidates) cands.push_back(value_json(c));
            out["candidates"] = std::move(cands);
            break;
        }
        case Verdict<T>::Kind::Inconclusive:
            out["verdict"] = "inconclusive";
            break;
    }
    if (!v.note.empty() || v.kind == Verdict<T>::Kind::Inconclusive) out["note"] = v.note;
    return out;
}

json bool_json(const bool& b) { return json(b); }
json extnat_json(const ExtNat& n) { return j_extnat(n); }

} // namespace

std::string element_repr(const MonoidInstance& m, const Element& a) {
    switch (m.kind()) {
        case MonoidInstance::Kind::FreeAbelian: {
            const auto& e = std::get<ExpVec>(a.v);
            std::string out = "(";
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (i) out += ",";
                out += std::to_string(e[i]);
            }
            return out + ")";
        }
        case MonoidInstance::Kind::NonzeroIntegers:
            return std::to_string(std::get<std::int64_t>(a.v));
        case MonoidInstance::Kind::GroupAsMonoid:
            return group_elem_repr(std::get<GroupElem>(a.v));
        case MonoidInstance::Kind::Block:
            return sequence_repr(std::get<Sequence>(a.v));
        case MonoidInstance::Kind::DirectProduct: {
            const auto& t = std::get<Tuple>(a.v);
            std::string out = "<";
            for (std::size_t i = 0; i < t.coords.size(); ++i) {
                if (i) out += "; ";
                out += element_repr(m.components()[i], t.coords[i]);
            }
            return out + ">";
        }
    }
    return {};
}

json j_group(const FiniteAbelianGroup& G) {
    return json{{"name", G.name()},
                {"invariant_factors", G.invariant_factors()},
                {"order", G.order()}};
}

json j_sequence(const Sequence& S) {
    json terms = json::array();
    for (const auto& g : S) terms.push_back(g);
    return json{{"terms", std::move(terms)}, {"length", S.size()}};
}

json j_extnat(const ExtNat& n) {
    if (n.is_infinite()) return json("inf");
    return json(n.finite());
}

json j_profile(const LengthProfile& L) {
    json out = json::object();
    for (const auto& [len, m] : L.mult) out[std::to_string(len)] = j_extnat(m);
    return out;
}

json j_spec(const UltrafilterSpec& spec) {
    if (spec.mode == UltrafilterSpec::Mode::Frechet) return json{{"mode", "frechet"}};
    return json{{"mode", "principal"},
                {"size", spec.index_set_size},
                {"selected", spec.selected_index}};
}

json j_element(const MonoidInstance& m, const Element& a) {
    json out;
    out["repr"] = element_repr(m, a);
    switch (m.kind()) {
        case MonoidInstance::Kind::FreeAbelian:
            out["exponents"] = std::get<ExpVec>(a.v);
            break;
        case MonoidInstance::Kind::NonzeroIntegers:
            out["integer"] = std::get<std::int64_t>(a.v);
            break;
        case MonoidInstance::Kind::GroupAsMonoid:
            out["group_elem"] = std::get<GroupElem>(a.v);
            break;
        case MonoidInstance::Kind::Block:
            out["terms"] = j_sequence(std::get<Sequence>(a.v))["terms"];
            break;
        case MonoidInstance::Kind::DirectProduct: {
            json coords = json::array();
            const auto& t = std::get<Tuple>(a.v);
            for (std::size_t i = 0; i < t.coords.size(); ++i)
                coords.push_back(j_element(m.components()[i], t.coords[i]));
            out["tuple"] = std::move(coords);
            break;
        }
    }
    return out;
}

json j_verdict(const Verdict<bool>& v) { return j_verdict_impl<bool>(v, bool_json); }
json j_verdict(const Verdict<ExtNat>& v) { return j_verdict_impl<ExtNat>(v, extnat_json); }

json j_bool_family(const BoolFamily& f) {
    auto arr = [](const std::vector<char>& v) {
        json a = json::array();
        for (char c : v) a.push_back(static_cast<bool>(c));
        return a;
    };
    json out;
    if (f.desc == BoolFamily::Desc::ExplicitFinite) {
        out["desc"] = "explicit_finite";
        out["values"] = arr(f.values);
    } else {
        out["desc"] = "eventually_periodic";
        out["pre"] = arr(f.pre);
        out["period"] = arr(f.period);
    }
    return out;
}

json j_extnat_family(const ExtNatFamily& f) {
    auto arr = [](const std::vector<ExtNat>& v) {
        json a = json::array();
        for (const auto& n : v) a.push_back(j_extnat(n));
        return a;
    };
    json out;
    switch (f.desc) {
        case ExtNatFamily::Desc::ExplicitFinite:
            out["desc"] = "explicit_finite";
            out["values"] = arr(f.values);
            break;
        case ExtNatFamily::Desc::EventuallyPeriodic:
            out["desc"] = "eventually_periodic";
            out["pre"] = arr(f.pre);
            out["period"] = arr(f.period);
            break;
        case ExtNatFamily::Desc::NondecreasingUnbounded:
            out["desc"] = "nondecreasing_unbounded";
            out["prefix"] = arr(f.values);
            break;
    }
    return out;
}

json j_family(const ElementFamily& f) {
    json out;
    json comps = json::array();
    for (const auto& m : f.comp_pre) comps.push_back(component_id(m));
    json comps_period = json::array();
    for (const auto& m : f.comp_period) comps_period.push_back(component_id(m));
    if (f.constant_component())
        out["component"] = comps_period[0];
    else {
        out["component_pre"] = std::move(comps);
        out["component_period"] = std::move(comps_period);
    }
    switch (f.rule) {
        case ElementFamily::Rule::Constant:
            out["rule"] = "constant";
            out["element"] = element_repr(f.comp_period[0], f.constant);
            break;
        case ElementFamily::Rule::Periodic: {
            out["rule"] = "periodic";
            json pre = json::array(), per = json::array();
            for (std::uint64_t i = 0; i < f.pre.size(); ++i)
                pre.push_back(element_repr(f.component_at(i), f.pre[i]));
            for (std::uint64_t i = 0; i < f.period.size(); ++i)
                per.push_back(element_repr(f.component_at(f.pre.size() + i), f.period[i]));
            out["pre"] = std::move(pre);
            out["period"] = std::move(per);
            break;
        }
        case ElementFamily::Rule::PrimePowerRamp:
            out["rule"] = "prime_power_ramp";
            out["p"] = f.ramp_p;
            break;
        case ElementFamily::Rule::TruncationRamp:
            out["rule"] = "truncation_ramp";
            out["target"] = j_profile(f.target);
            break;
    }
    return out;
}

json j_davenport(const FiniteAbelianGroup& G, const DavenportResult& r) {
    return json{{"group", j_group(G)},
                {"value", r.value},
                {"witness", j_sequence(r.witness)}};
}

json j_realize(const FiniteAbelianGroup& G, const std::set<std::uint64_t>& L,
               const RealizeOutcome& r) {
    json out{{"group", j_group(G)},
             {"target", L},
             {"found", r.witness.has_value()},
             {"candidates_examined", r.candidates_examined},
             {"search_ceiling", r.search_ceiling}};
    if (r.witness) out["witness"] = j_sequence(*r.witness);
    return out;
}

json j_exceptional(const ExceptionalReport& r) {
    json exc = json::array();
    for (const auto& G : r.exceptional) exc.push_back(j_group(G));
    json realized = json::array();
    for (const auto& [G, U] : r.realized)
        realized.push_back(json{{"group", j_group(G)}, {"witness", j_sequence(U)}});
    json over = json::array();
    for (const auto& G : r.budget_exceeded) over.push_back(j_group(G));
    return json{{"target", r.target},
                {"exceptional", std::move(exc)},
                {"realized", std::move(realized)},
                {"budget_exceeded", std::move(over)}};
}

json j_half_factorial(const MonoidInstance& m, const HalfFactorialReport& r) {
    json out{{"monoid", m.name()},
             {"half_factorial", r.half_factorial},
             {"elements_checked", r.elements_checked}};
    if (r.counterexample) {
        out["counterexample"] = element_repr(m, *r.counterexample);
        out["counterexample_lengths"] = j_profile(r.counterexample_profile);
    }
    return out;
}

json j_transfer(const MultisetTransferReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back(json{{"ell", row.ell},
                            {"expected", j_extnat(row.expected)},
                            {"verdict", j_verdict(row.verdict)},
                            {"probe", row.probe},
                            {"ok", row.ok}});
    json out{{"target", j_profile(r.target)},
             {"enumeration_prefix", r.enumeration_prefix},
             {"rows", std::move(rows)},
             {"ok", r.ok},
             {"realizer_attempted", r.realizer_attempted}};
    if (r.realizer_attempted) {
        out["realizer_ok"] = r.realizer_ok;
        out["realizer_note"] = r.realizer_note;
        json rr = json::array();
        for (const auto& row : r.realizer_rows) {
            json one{{"lambda", row.lambda},
                     {"target_set", row.target_set},
                     {"verified", row.verified}};
            if (row.witness) one["witness"] = j_sequence(*row.witness);
            rr.push_back(std::move(one));
        }
        out["realizer_rows"] = std::move(rr);
    } else {
        out["realizer_note"] = r.realizer_note;
    }
    return out;
}

json j_factorial_check(const FactorialCheckReport& r) {
    json cases = json::array();
    for (const auto& c : r.cases)
        cases.push_back(json{{"lambda", c.lambda},
                             {"unique_class", c.unique_class},
                             {"length_matches", c.length_matches},
                             {"class_matches_inputs", c.class_matches_inputs}});
    json sigmas = json::array();
    for (const auto& [residue, perm] : r.sigma_per_residue)
        sigmas.push_back(json{{"residue", residue}, {"sigma", perm}});
    return json{{"ok", r.ok},
                {"n", r.n},
                {"window", r.window},
                {"cases", std::move(cases)},
                {"sigma_per_residue", std::move(sigmas)},
                {"certificate", r.certificate}};
}

json j_iso(const FiniteAbelianGroup& G, const BgProtoIsoReport& r) {
    return json{{"group", j_group(G)},
                {"left_count", r.left_count},
                {"right_count", r.right_count},
                {"counts_match", r.counts_match},
                {"injective", r.injective},
                {"surjective", r.surjective},
                {"multiplicative", r.multiplicative},
                {"atoms_match", r.atoms_match},
                {"ok", r.ok},
                {"detail", r.detail}};
}

json j_closed(const MonoidInstance& m, const DivisorClosedReport& r) {
    json out{{"monoid", m.name()},
             {"ok", r.ok},
             {"elements_checked", r.elements_checked},
             {"pairs_checked", r.pairs_checked},
             {"detail", r.detail}};
    if (r.counterexample) out["counterexample"] = element_repr(m, *r.counterexample);
    return out;
}

json j_divisor_image(const DivisorTheoryImage& r) {
    return json{{"base", j_group(r.base)},
                {"word", j_sequence(r.word)},
                {"degree", r.degree},
                {"class_group", j_group(r.class_group)},
                {"inclusion_is_divisor_theory", r.inclusion_is_divisor_theory},
                {"primes_in_every_class", r.primes_in_every_class},
                {"detail", r.detail}};
}

json j_gcd_cover(const GcdCoverReport& r) {
    MonoidInstance bm = MonoidInstance::block(r.G);
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back(json{{"letter", element_repr(bm, row.letter)},
                            {"a", j_sequence(row.a)},
                            {"b", j_sequence(row.b)},
                            {"ok", row.ok}});
    return json{{"group", j_group(r.G)},
                {"inclusion_theory", r.inclusion_theory},
                {"rows", std::move(rows)},
                {"ok", r.ok}};
}

json j_gap(const PrimePowerGap& r) {
    return json{{"k", r.k},
                {"p", r.p},
                {"q", r.q},
                {"x", r.x},
                {"y", r.y},
                {"N", r.N},
                {"primes", r.primes},
                {"difference", r.difference},
                {"difference_digits", r.difference_digits},
                {"verified", r.verified}};
}

json j_los(const fol::LosReport& r) {
    return json{{"quotient_value", r.quotient_value},
                {"component_value", r.component_value},
                {"agree", r.agree}};
}

json envelope(const std::string& op, json payload) {
    payload["schema"] = "v1";
    payload["op"] = op;
    return payload;
}

std::string dump_doc(const json& j) { return j.dump(2) + "\n"; }

} // namespace uf
