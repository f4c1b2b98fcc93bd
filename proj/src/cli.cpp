#include "uf/cli.hpp"

#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "uf/acceptance.hpp"
#include "uf/json_io.hpp"
#include "uf/oracle.hpp"

namespace uf {

namespace {

// ------------------------------------------------------------- small parsers

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        std::uint64_t v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw domain_error(std::string("bad ") + what + ": '" + s + "'");
    }
}

ExtNat parse_extnat(const std::string& s) {
    if (s == "inf" || s == "oo" || s == "infinity") return ExtNat::infinity();
    return ExtNat(parse_u64(s, "extended natural"));
}

std::set<std::uint64_t> parse_length_set(const std::string& s) {
    std::set<std::uint64_t> out;
    for (const auto& part : split_on(s, ','))
        if (!part.empty()) out.insert(parse_u64(part, "length"));
    if (out.empty()) throw domain_error("empty set of lengths");
    return out;
}

/// "2=1,3=inf" -> LengthProfile; the empty string is the empty multiset.
LengthProfile parse_profile(const std::string& s) {
    LengthProfile L;
    if (s.empty()) return L;
    for (const auto& part : split_on(s, ',')) {
        auto eq = part.find('=');
        if (eq == std::string::npos)
            throw domain_error("bad profile entry (expect len=mult): '" + part + "'");
        L.set(parse_u64(part.substr(0, eq), "length"), parse_extnat(part.substr(eq + 1)));
    }
    return L;
}

bool parse_bool_token(const std::string& s) {
    if (s == "T" || s == "t" || s == "1" || s == "true") return true;
    if (s == "F" || s == "f" || s == "0" || s == "false") return false;
    throw domain_error("bad boolean token: '" + s + "'");
}

/// Bool families: "explicit:T,F,T" or "<pre>|<period>" / "<period>" with
/// comma-separated T/F tokens (empty pre allowed).
BoolFamily parse_bool_family(const std::string& s) {
    if (s.rfind("explicit:", 0) == 0) {
        std::vector<char> vals;
        for (const auto& t : split_on(s.substr(9), ','))
            vals.push_back(static_cast<char>(parse_bool_token(t)));
        return BoolFamily::explicit_finite(std::move(vals));
    }
    auto bar = s.find('|');
    std::string pre_text = bar == std::string::npos ? "" : s.substr(0, bar);
    std::string per_text = bar == std::string::npos ? s : s.substr(bar + 1);
    std::vector<char> pre, period;
    if (!pre_text.empty())
        for (const auto& t : split_on(pre_text, ','))
            pre.push_back(static_cast<char>(parse_bool_token(t)));
    for (const auto& t : split_on(per_text, ','))
        period.push_back(static_cast<char>(parse_bool_token(t)));
    return BoolFamily::eventually_periodic(std::move(pre), std::move(period));
}

/// ExtNat families: "ndu:0,1,3", "explicit:1,2,inf" or "<pre>|<period>".
ExtNatFamily parse_extnat_family(const std::string& s) {
    auto values = [](const std::string& text) {
        std::vector<ExtNat> out;
        if (!text.empty())
            for (const auto& t : split_on(text, ',')) out.push_back(parse_extnat(t));
        return out;
    };
    if (s.rfind("ndu:", 0) == 0) return ExtNatFamily::nondecreasing_unbounded(values(s.substr(4)));
    if (s.rfind("explicit:", 0) == 0) return ExtNatFamily::explicit_finite(values(s.substr(9)));
    auto bar = s.find('|');
    std::string pre_text = bar == std::string::npos ? "" : s.substr(0, bar);
    std::string per_text = bar == std::string::npos ? s : s.substr(bar + 1);
    return ExtNatFamily::eventually_periodic(values(pre_text), values(per_text));
}

/// Element families:
///   "prime_power_ramp:2"
///   "constant:<monoid>@<element>"
///   "periodic:<monoid>@<e>;...|<e>;..."   (pre may be empty)
///   "truncation_ramp:<profile>"           (profile as in parse_profile)
ElementFamily parse_family(const std::string& s) {
    if (s.rfind("prime_power_ramp:", 0) == 0)
        return ElementFamily::prime_power_ramp(parse_u64(s.substr(17), "prime"));
    if (s.rfind("truncation_ramp:", 0) == 0)
        return ElementFamily::truncation_ramp(parse_profile(s.substr(16)));
    if (s.rfind("constant:", 0) == 0) {
        std::string rest = s.substr(9);
        auto at = rest.find('@');
        if (at == std::string::npos)
            throw domain_error("constant family needs <monoid>@<element>");
        auto m = MonoidInstance::parse(rest.substr(0, at));
        auto e = m.parse_element(rest.substr(at + 1));
        return ElementFamily::make_constant(std::move(m), std::move(e));
    }
    if (s.rfind("periodic:", 0) == 0) {
        std::string rest = s.substr(9);
        auto at = rest.find('@');
        if (at == std::string::npos)
            throw domain_error("periodic family needs <monoid>@<pre>|<period>");
        auto m = MonoidInstance::parse(rest.substr(0, at));
        std::string lists = rest.substr(at + 1);
        auto bar = lists.find('|');
        std::string pre_text = bar == std::string::npos ? "" : lists.substr(0, bar);
        std::string per_text = bar == std::string::npos ? lists : lists.substr(bar + 1);
        auto elems = [&m](const std::string& text) {
            std::vector<Element> out;
            if (!text.empty())
                for (const auto& t : split_on(text, ';')) out.push_back(m.parse_element(t));
            return out;
        };
        return ElementFamily::make_periodic(std::move(m), elems(pre_text), elems(per_text));
    }
    throw domain_error("unknown family rule in '" + s +
                       "' (expect prime_power_ramp:/constant:/periodic:/truncation_ramp:)");
}

Sequence parse_sequence_text(const FiniteAbelianGroup& G, const std::string& s) {
    auto bm = MonoidInstance::block(G);
    return std::get<Sequence>(bm.parse_element(s).v);
}

// ------------------------------------------------------------- text helpers

std::string verdict_text(const Verdict<bool>& v) {
    switch (v.kind) {
        case Verdict<bool>::Kind::Point:
            return std::string("Point(") + (*v.value ? "true" : "false") + ")";
        case Verdict<bool>::Kind::ForAll:
            return std::string("ForAllU(") + (*v.value ? "true" : "false") + ")";
        case Verdict<bool>::Kind::Depends:
            return "DependsOnU{false,true}";
        case Verdict<bool>::Kind::Inconclusive:
            return "Inconclusive: " + v.note;
    }
    return {};
}

std::string verdict_text(const Verdict<ExtNat>& v) {
    switch (v.kind) {
        case Verdict<ExtNat>::Kind::Point:
            return "Point(" + v.value->str() + ")";
        case Verdict<ExtNat>::Kind::ForAll:
            return "ForAllU(" + v.value->str() + ")";
        case Verdict<ExtNat>::Kind::Depends: {
            std::string out = "DependsOnU{";
            bool first = true;
            for (const auto& c : v.candidates) {
                if (!first) out += ",";
                out += c.str();
                first = false;
            }
            return out + "}";
        }
        case Verdict<ExtNat>::Kind::Inconclusive:
            return "Inconclusive: " + v.note;
    }
    return {};
}

std::string note_suffix(const std::string& note) {
    return note.empty() ? "" : "  [" + note + "]";
}

// ------------------------------------------------------------- run context

struct Ctx {
    std::string output = "text"; // text | json
    std::uint64_t node_budget = Budget::kDefaultCap;
    std::function<void()> action;
    std::ostream& out = std::cout;

    Budget budget() const { return Budget(node_budget); }

    void emit(const std::string& op, const json& payload,
              const std::function<void(std::ostream&)>& text) const {
        if (output == "json")
            out << dump_doc(envelope(op, payload));
        else
            text(out);
    }
};

template <typename T>
json verdict_payload(const UltrafilterSpec& spec, const ElementFamily& fam,
                     const Verdict<T>& v) {
    return json{{"ultrafilter", j_spec(spec)}, {"family", j_family(fam)},
                {"result", j_verdict(v)}};
}

} // namespace

int cli_main(int argc, char** argv) {
    Ctx ctx;
    if (const char* env = std::getenv("UF_NODE_BUDGET")) {
        try {
            ctx.node_budget = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "error: bad UF_NODE_BUDGET value '" << env << "'\n";
            return 3;
        }
    }

    CLI::App app{"ultrafilter factorization workbench"};
    app.require_subcommand(1);
    app.add_option("--output", ctx.output, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--node-budget", ctx.node_budget,
                   "search node budget (env UF_NODE_BUDGET overrides the default)")
        ->capture_default_str();

    // ------------------------------------------------------------- atoms
    {
        auto* cmd = app.add_subcommand("atoms", "atoms of a monoid up to a size bound");
        auto monoid = std::make_shared<std::string>();
        auto bound = std::make_shared<std::uint64_t>(4);
        cmd->add_option("--monoid", *monoid, "monoid (free:<r>, z, bg:<group>, group:<g>, prod:..+..)")
            ->required();
        cmd->add_option("--bound", *bound, "size bound")->capture_default_str();
        cmd->callback([&ctx, monoid, bound] {
            auto m = MonoidInstance::parse(*monoid);
            Budget budget = ctx.budget();
            auto atoms = atoms_up_to(m, *bound, budget);
            json arr = json::array();
            for (const auto& a : atoms) arr.push_back(element_repr(m, a));
            ctx.emit("atoms",
                     {{"monoid", m.name()}, {"bound", *bound}, {"count", atoms.size()},
                      {"atoms", arr}},
                     [&](std::ostream& os) {
                         os << atoms.size() << " atoms of " << m.name() << " up to size "
                            << *bound << "\n";
                         for (const auto& a : atoms) os << "  " << m.show(a) << "\n";
                     });
        });
    }

    // ------------------------------------------------------------- factorize
    {
        auto* cmd = app.add_subcommand("factorize", "factorizations into atoms, one per class");
        auto monoid = std::make_shared<std::string>();
        auto element = std::make_shared<std::string>();
        auto max_len = std::make_shared<std::uint64_t>(16);
        cmd->add_option("--monoid", *monoid)->required();
        cmd->add_option("--element", *element)->required();
        cmd->add_option("--max-len", *max_len, "maximal factorization length")
            ->capture_default_str();
        cmd->callback([&ctx, monoid, element, max_len] {
            auto m = MonoidInstance::parse(*monoid);
            auto a = m.parse_element(*element);
            Budget budget = ctx.budget();
            auto fzs = factorizations(m, a, *max_len, budget);
            json arr = json::array();
            for (const auto& f : fzs) {
                json one{{"length", f.length()}};
                json atoms = json::array();
                for (const auto& [atom, mult] : f.atoms.entries())
                    atoms.push_back(json{{"atom", element_repr(m, atom)}, {"multiplicity", mult}});
                one["atoms"] = std::move(atoms);
                arr.push_back(std::move(one));
            }
            ctx.emit("factorize",
                     {{"monoid", m.name()}, {"element", element_repr(m, a)},
                      {"max_len", *max_len}, {"count", fzs.size()}, {"factorizations", arr}},
                     [&](std::ostream& os) {
                         os << fzs.size() << " factorization classes of " << m.show(a) << " in "
                            << m.name() << " (length <= " << *max_len << ")\n";
                         for (const auto& f : fzs) {
                             os << "  length " << f.length() << ":";
                             for (const auto& [atom, mult] : f.atoms.entries()) {
                                 os << " " << m.show(atom);
                                 if (mult > 1) os << "^" << mult;
                             }
                             os << "\n";
                         }
                     });
        });
    }

    // ------------------------------------------------------------- lengths
    {
        auto* cmd = app.add_subcommand("lengths", "multiset of factorization lengths");
        auto monoid = std::make_shared<std::string>();
        auto element = std::make_shared<std::string>();
        auto max_len = std::make_shared<std::uint64_t>(16);
        auto use_oracle = std::make_shared<bool>(false);
        cmd->add_option("--monoid", *monoid)->required();
        cmd->add_option("--element", *element)->required();
        cmd->add_option("--max-len", *max_len)->capture_default_str();
        cmd->add_flag("--oracle", *use_oracle, "use the naive reference enumerator instead");
        cmd->callback([&ctx, monoid, element, max_len, use_oracle] {
            auto m = MonoidInstance::parse(*monoid);
            auto a = m.parse_element(*element);
            Budget budget = ctx.budget();
            LengthProfile L = *use_oracle ? oracle_length_profile(m, a, *max_len, budget)
                                          : length_profile(m, a, *max_len, budget);
            ctx.emit("lengths",
                     {{"monoid", m.name()}, {"element", element_repr(m, a)},
                      {"max_len", *max_len}, {"lengths", j_profile(L)}},
                     [&](std::ostream& os) {
                         os << "L(" << m.show(a) << ") = " << L.str() << "\n";
                     });
        });
    }

    // ------------------------------------------------------------- davenport
    {
        auto* cmd = app.add_subcommand("davenport", "Davenport constant of a finite abelian group");
        auto group = std::make_shared<std::string>();
        cmd->add_option("--group", *group, "group, e.g. c6 or c2xc2")->required();
        cmd->callback([&ctx, group] {
            auto G = FiniteAbelianGroup::parse(*group);
            Budget budget = ctx.budget();
            auto r = davenport(G, budget);
            auto bm = MonoidInstance::block(G);
            ctx.emit("davenport", j_davenport(G, r), [&](std::ostream& os) {
                os << "D(" << G.name() << ") = " << r.value << "\n";
                os << "witness: " << bm.show(Element{r.witness}) << "\n";
            });
        });
    }

    // ------------------------------------------------------------- realize
    {
        auto* cmd = app.add_subcommand("realize", "search B(G) for a set of lengths");
        auto group = std::make_shared<std::string>();
        auto lengths = std::make_shared<std::string>();
        auto max_seq = std::make_shared<std::uint64_t>(0);
        cmd->add_option("--group", *group)->required();
        cmd->add_option("--lengths", *lengths, "target set, e.g. 2,3")->required();
        cmd->add_option("--max-seq-len", *max_seq, "0 = automatic ceiling")->capture_default_str();
        cmd->callback([&ctx, group, lengths, max_seq] {
            auto G = FiniteAbelianGroup::parse(*group);
            auto L = parse_length_set(*lengths);
            Budget budget = ctx.budget();
            auto r = realize_set_search(G, L, *max_seq, budget);
            auto bm = MonoidInstance::block(G);
            ctx.emit("realize", j_realize(G, L, r), [&](std::ostream& os) {
                if (r.witness)
                    os << "witness: " << bm.show(Element{*r.witness}) << "\n";
                else
                    os << "not found within ceiling " << r.search_ceiling << "\n";
                os << "candidates examined: " << r.candidates_examined << "\n";
            });
        });
    }

    // ------------------------------------------------------------- exceptional
    {
        auto* cmd = app.add_subcommand("exceptional",
                                       "groups of bounded order that cannot realize a set");
        auto lengths = std::make_shared<std::string>();
        auto order_bound = std::make_shared<std::uint64_t>(8);
        auto max_seq = std::make_shared<std::uint64_t>(0);
        auto node_cap = std::make_shared<std::uint64_t>(0);
        auto par = std::make_shared<unsigned>(1);
        cmd->add_option("--lengths", *lengths)->required();
        cmd->add_option("--order-bound", *order_bound)->capture_default_str();
        cmd->add_option("--max-seq-len", *max_seq, "0 = automatic per group")->capture_default_str();
        cmd->add_option("--node-cap", *node_cap, "per-group budget (0 = global default)")
            ->capture_default_str();
        cmd->add_option("--parallelism", *par)->capture_default_str();
        cmd->callback([&ctx, lengths, order_bound, max_seq, node_cap, par] {
            auto L = parse_length_set(*lengths);
            const std::uint64_t cap = *node_cap ? *node_cap : ctx.node_budget;
            auto rep = exceptional_groups(L, *order_bound, *max_seq, cap, *par);
            ctx.emit("exceptional", j_exceptional(rep), [&](std::ostream& os) {
                os << "exceptional groups (order <= " << *order_bound << "):";
                if (rep.exceptional.empty()) os << " none";
                for (const auto& G : rep.exceptional) os << " " << G.name();
                os << "\n";
                for (const auto& [G, U] : rep.realized)
                    os << "realized by " << G.name() << ": "
                       << MonoidInstance::block(G).show(Element{U}) << "\n";
                for (const auto& G : rep.budget_exceeded)
                    os << "budget exceeded: " << G.name() << "\n";
            });
        });
    }

    // ------------------------------------------------------------- ultra
    {
        auto* ultra = app.add_subcommand("ultra", "ultrafilter semantics of element families");
        ultra->require_subcommand(1);
        auto family = std::make_shared<std::string>();
        auto uf_spec = std::make_shared<std::string>("frechet");
        auto ell = std::make_shared<std::uint64_t>(0);
        auto nmax = std::make_shared<std::uint64_t>(20);

        auto add_family_cmd = [&](const char* name, const char* help, auto runner,
                                  bool needs_ell = false) {
            auto* cmd = ultra->add_subcommand(name, help);
            cmd->add_option("--family", *family, "element family descriptor")->required();
            cmd->add_option("--uf", *uf_spec, "frechet or principal:<size>:<selected>")
                ->capture_default_str();
            if (needs_ell) cmd->add_option("--ell", *ell, "length")->required();
            if (std::string(name) == "in-ha")
                cmd->add_option("--nmax", *nmax, "band bound N_max")->capture_default_str();
            cmd->callback([runner] { runner(); });
            return cmd;
        };

        add_family_cmd("is-unit", "is the ultraproduct class a unit", [&ctx, family, uf_spec] {
            auto fam = parse_family(*family);
            auto spec = UltrafilterSpec::parse(*uf_spec);
            Budget budget = ctx.budget();
            auto v = up_is_unit(fam, spec, budget);
            ctx.emit("ultra.is-unit", verdict_payload(spec, fam, v), [&](std::ostream& os) {
                os << verdict_text(v) << note_suffix(v.note) << "\n";
            });
        });
        add_family_cmd("is-atom", "is the ultraproduct class an atom", [&ctx, family, uf_spec] {
            auto fam = parse_family(*family);
            auto spec = UltrafilterSpec::parse(*uf_spec);
            Budget budget = ctx.budget();
            auto v = up_is_atom(fam, spec, budget);
            ctx.emit("ultra.is-atom", verdict_payload(spec, fam, v), [&](std::ostream& os) {
                os << verdict_text(v) << note_suffix(v.note) << "\n";
            });
        });
        add_family_cmd(
            "length-mult", "multiplicity of one length in the transferred multiset",
            [&ctx, family, uf_spec, ell] {
                auto fam = parse_family(*family);
                auto spec = UltrafilterSpec::parse(*uf_spec);
                Budget budget = ctx.budget();
                auto v = up_length_multiplicity(fam, *ell, spec, budget);
                json payload = verdict_payload(spec, fam, v);
                payload["ell"] = *ell;
                ctx.emit("ultra.length-mult", payload, [&](std::ostream& os) {
                    os << "c(" << *ell << ") = " << verdict_text(v) << note_suffix(v.note) << "\n";
                });
            },
            true);
        add_family_cmd(
            "length-contains", "does the set of lengths contain ell",
            [&ctx, family, uf_spec, ell] {
                auto fam = parse_family(*family);
                auto spec = UltrafilterSpec::parse(*uf_spec);
                Budget budget = ctx.budget();
                auto v = up_length_contains(fam, *ell, spec, budget);
                json payload = verdict_payload(spec, fam, v);
                payload["ell"] = *ell;
                ctx.emit("ultra.length-contains", payload, [&](std::ostream& os) {
                    os << *ell << " in L: " << verdict_text(v) << note_suffix(v.note) << "\n";
                });
            },
            true);
        add_family_cmd("in-ha", "bounded membership in the factorizable part H*_A",
                       [&ctx, family, uf_spec, nmax] {
                           auto fam = parse_family(*family);
                           auto spec = UltrafilterSpec::parse(*uf_spec);
                           Budget budget = ctx.budget();
                           auto v = up_in_HA(fam, spec, *nmax, budget);
                           json payload = verdict_payload(spec, fam, v);
                           payload["n_max"] = *nmax;
                           ctx.emit("ultra.in-ha", payload, [&](std::ostream& os) {
                               os << verdict_text(v) << note_suffix(v.note) << "\n";
                           });
                       });

        {
            auto* cmd = ultra->add_subcommand("limit", "ultralimit of an extended-natural family");
            auto vfam = std::make_shared<std::string>();
            cmd->add_option("--extnat-family", *vfam, "e.g. '0,1|2', 'ndu:0,1,2', 'explicit:1,2'")
                ->required();
            cmd->add_option("--uf", *uf_spec)->capture_default_str();
            cmd->callback([&ctx, vfam, uf_spec] {
                auto fam = parse_extnat_family(*vfam);
                auto spec = UltrafilterSpec::parse(*uf_spec);
                auto v = ultralimit(fam, spec);
                ctx.emit("ultra.limit",
                         {{"ultrafilter", j_spec(spec)}, {"family", j_extnat_family(fam)},
                          {"result", j_verdict(v)}},
                         [&](std::ostream& os) {
                             os << verdict_text(v) << note_suffix(v.note) << "\n";
                         });
            });
        }
        {
            auto* cmd = ultra->add_subcommand("contains",
                                              "ultrafilter membership of a boolean family");
            auto bfam = std::make_shared<std::string>();
            cmd->add_option("--bool-family", *bfam, "e.g. 'T,F|T' or 'explicit:T,F'")->required();
            cmd->add_option("--uf", *uf_spec)->capture_default_str();
            cmd->callback([&ctx, bfam, uf_spec] {
                auto fam = parse_bool_family(*bfam);
                auto spec = UltrafilterSpec::parse(*uf_spec);
                auto v = filter_contains(fam, spec);
                ctx.emit("ultra.contains",
                         {{"ultrafilter", j_spec(spec)}, {"family", j_bool_family(fam)},
                          {"result", j_verdict(v)}},
                         [&](std::ostream& os) {
                             os << verdict_text(v) << note_suffix(v.note) << "\n";
                         });
            });
        }
        {
            auto* cmd = ultra->add_subcommand(
                "realize-multiset", "transfer a multiset of lengths along the truncation family");
            auto profile = std::make_shared<std::string>();
            auto realizer = std::make_shared<std::string>();
            auto window = std::make_shared<std::uint64_t>(6);
            cmd->add_option("--profile", *profile, "target multiset, e.g. 2=1,3=inf")->required();
            cmd->add_option("--uf", *uf_spec)->capture_default_str();
            cmd->add_option("--realizer-group", *realizer,
                            "also search per-index witnesses in B(<group>)");
            cmd->add_option("--window", *window, "indices covered by the realizer")
                ->capture_default_str();
            cmd->callback([&ctx, profile, uf_spec, realizer, window] {
                auto L = parse_profile(*profile);
                auto spec = UltrafilterSpec::parse(*uf_spec);
                Budget budget = ctx.budget();
                std::optional<FiniteAbelianGroup> G;
                if (!realizer->empty()) G = FiniteAbelianGroup::parse(*realizer);
                auto rep = realize_multiset_transfer(L, spec, budget, G, *window);
                json payload = j_transfer(rep);
                payload["ultrafilter"] = j_spec(spec);
                ctx.emit("ultra.realize-multiset", payload, [&](std::ostream& os) {
                    os << "target " << rep.target.str() << ": "
                       << (rep.ok ? "transferred exactly" : "transfer FAILED") << "\n";
                    for (const auto& row : rep.rows)
                        os << "  c(" << row.ell << ") expected " << row.expected.str() << " got "
                           << verdict_text(row.verdict) << (row.probe ? "  (probe)" : "") << "\n";
                    if (rep.realizer_attempted) {
                        os << "realizer: " << (rep.realizer_ok ? "verified" : "FAILED") << " — "
                           << rep.realizer_note << "\n";
                        for (const auto& row : rep.realizer_rows) {
                            os << "  lambda " << row.lambda << ": L = {";
                            bool first = true;
                            for (auto v : row.target_set) {
                                if (!first) os << ",";
                                os << v;
                                first = false;
                            }
                            os << "} " << (row.verified ? "ok" : "FAILED") << "\n";
                        }
                    } else if (!rep.realizer_note.empty()) {
                        os << rep.realizer_note << "\n";
                    }
                });
            });
        }
        {
            auto* cmd = ultra->add_subcommand(
                "factorial-check", "uniqueness of factorizations for factorial-component families");
            auto fams_text = std::make_shared<std::vector<std::string>>();
            cmd->add_option("--family", *fams_text, "atom family (repeatable)")
                ->required()
                ->take_all();
            cmd->add_option("--uf", *uf_spec)->capture_default_str();
            cmd->callback([&ctx, fams_text, uf_spec] {
                std::vector<ElementFamily> fams;
                for (const auto& t : *fams_text) fams.push_back(parse_family(t));
                auto spec = UltrafilterSpec::parse(*uf_spec);
                Budget budget = ctx.budget();
                auto rep = factorial_uniqueness_check(fams, spec, budget);
                json payload = j_factorial_check(rep);
                payload["ultrafilter"] = j_spec(spec);
                ctx.emit("ultra.factorial-check", payload, [&](std::ostream& os) {
                    os << (rep.ok ? "unique" : "NOT unique") << " over window " << rep.window
                       << " (n = " << rep.n << ")\n"
                       << rep.certificate << "\n";
                });
            });
        }
        {
            auto* cmd = ultra->add_subcommand(
                "finite-lengths", "length profile of a principal finite-index ultraproduct");
            auto comps = std::make_shared<std::vector<std::string>>();
            auto selected = std::make_shared<std::size_t>(0);
            auto max_len = std::make_shared<std::uint64_t>(16);
            cmd->add_option("--component", *comps, "<monoid>@<element> (repeatable)")
                ->required()
                ->take_all();
            cmd->add_option("--selected", *selected, "principal index")->required();
            cmd->add_option("--max-len", *max_len)->capture_default_str();
            cmd->callback([&ctx, comps, selected, max_len] {
                std::vector<std::pair<MonoidInstance, Element>> components;
                for (const auto& t : *comps) {
                    auto at = t.find('@');
                    if (at == std::string::npos)
                        throw domain_error("component needs <monoid>@<element>: '" + t + "'");
                    auto m = MonoidInstance::parse(t.substr(0, at));
                    auto e = m.parse_element(t.substr(at + 1));
                    components.emplace_back(std::move(m), std::move(e));
                }
                Budget budget = ctx.budget();
                auto L = finite_index_ultraproduct_lengths(components, *selected, *max_len, budget);
                ctx.emit("ultra.finite-lengths",
                         {{"selected", *selected}, {"max_len", *max_len},
                          {"lengths", j_profile(L)}},
                         [&](std::ostream& os) {
                             os << "L(class) = " << L.str() << "\n";
                         });
            });
        }
    }

    // ------------------------------------------------------------- fol / los
    auto run_los = [&ctx](const std::string& sentence_text, const std::string& groups_text,
                          std::size_t selected) {
        auto phi = fol::parse_sentence(sentence_text);
        std::vector<FiniteAbelianGroup> groups;
        for (const auto& g : split_on(groups_text, ','))
            if (!g.empty()) groups.push_back(FiniteAbelianGroup::parse(g));
        if (groups.empty()) throw domain_error("empty group tuple");
        if (selected >= groups.size())
            throw domain_error("selected index out of range");
        auto rep = fol::los_check(phi, groups, selected);
        json payload = j_los(rep);
        payload["sentence"] = fol::print(phi);
        json names = json::array();
        for (const auto& g : groups) names.push_back(g.name());
        payload["groups"] = names;
        payload["selected"] = selected;
        ctx.emit("fol.los", payload, [&](std::ostream& os) {
            os << "quotient: " << (rep.quotient_value ? "true" : "false")
               << "   component: " << (rep.component_value ? "true" : "false")
               << "   agree: " << (rep.agree ? "yes" : "NO") << "\n";
        });
    };

    {
        auto* folcmd = app.add_subcommand("fol", "first-order sentences over monoid language");
        folcmd->require_subcommand(1);
        {
            auto* cmd = folcmd->add_subcommand("eval", "evaluate a sentence in one group");
            auto sentence = std::make_shared<std::string>();
            auto group = std::make_shared<std::string>();
            cmd->add_option("--sentence", *sentence)->required();
            cmd->add_option("--group", *group)->required();
            cmd->callback([&ctx, sentence, group] {
                auto phi = fol::parse_sentence(*sentence);
                auto G = FiniteAbelianGroup::parse(*group);
                bool value = fol::eval(phi, fol::model_of_group(G));
                ctx.emit("fol.eval",
                         {{"sentence", fol::print(phi)}, {"group", G.name()}, {"value", value}},
                         [&](std::ostream& os) {
                             os << fol::print(phi) << " is " << (value ? "true" : "false")
                                << " in " << G.name() << "\n";
                         });
            });
        }
        {
            auto* cmd = folcmd->add_subcommand("los", "Los conformance over a finite tuple");
            auto sentence = std::make_shared<std::string>();
            auto groups = std::make_shared<std::string>();
            auto selected = std::make_shared<std::size_t>(0);
            cmd->add_option("--sentence", *sentence)->required();
            cmd->add_option("--groups", *groups, "comma-separated, e.g. c2,c3,c4")->required();
            cmd->add_option("--selected", *selected, "principal index")->capture_default_str();
            cmd->callback(
                [run_los, sentence, groups, selected] { run_los(*sentence, *groups, *selected); });
        }
        {
            auto* cmd = folcmd->add_subcommand("random", "seeded random closed sentence");
            auto depth = std::make_shared<std::uint64_t>(3);
            auto vars = std::make_shared<std::uint64_t>(3);
            auto seed = std::make_shared<std::uint64_t>(1);
            auto group = std::make_shared<std::string>();
            cmd->add_option("--depth", *depth, "max quantifier count")->capture_default_str();
            cmd->add_option("--var-budget", *vars)->capture_default_str();
            cmd->add_option("--seed", *seed)->capture_default_str();
            cmd->add_option("--group", *group, "also evaluate in this group");
            cmd->callback([&ctx, depth, vars, seed, group] {
                auto phi = fol::random_sentence(*depth, *vars, *seed);
                json payload{{"sentence", fol::print(phi)}, {"depth", *depth},
                             {"var_budget", *vars}, {"seed", *seed}};
                std::optional<bool> value;
                if (!group->empty()) {
                    auto G = FiniteAbelianGroup::parse(*group);
                    value = fol::eval(phi, fol::model_of_group(G));
                    payload["group"] = G.name();
                    payload["value"] = *value;
                }
                ctx.emit("fol.random", payload, [&](std::ostream& os) {
                    os << fol::print(phi) << "\n";
                    if (value) os << (*value ? "true" : "false") << "\n";
                });
            });
        }
    }
    {
        auto* cmd = app.add_subcommand("los", "shorthand for 'fol los'");
        auto sentence = std::make_shared<std::string>();
        auto groups = std::make_shared<std::string>();
        auto selected = std::make_shared<std::size_t>(0);
        cmd->add_option("--sentence", *sentence)->required();
        cmd->add_option("--groups", *groups)->required();
        cmd->add_option("--selected", *selected)->capture_default_str();
        cmd->callback(
            [run_los, sentence, groups, selected] { run_los(*sentence, *groups, *selected); });
    }

    // ------------------------------------------------------------- proto
    std::function<void(std::uint64_t)> run_gap = [&ctx](std::uint64_t k) {
        Budget budget = ctx.budget();
        auto r = prime_power_gap(k, budget);
        ctx.emit("proto.gap", j_gap(r), [&](std::ostream& os) {
            os << r.p << "^" << r.x << " - " << r.q << "^" << r.y << " has "
               << r.difference_digits << " digits and is divisible by N = " << r.N << " =";
            for (std::size_t i = 0; i < r.primes.size(); ++i)
                os << (i ? " * " : " ") << r.primes[i];
            os << "\n"
               << (r.verified ? "verified" : "NOT verified") << ": difference = " << r.difference
               << "\n";
        });
    };

    {
        auto* proto = app.add_subcommand("proto", "degree functions, protoproduct, divisor theory");
        proto->require_subcommand(1);
        {
            auto* cmd = proto->add_subcommand("degree", "degree of a concrete element");
            auto monoid = std::make_shared<std::string>();
            auto element = std::make_shared<std::string>();
            auto kind = std::make_shared<std::string>("canonical");
            cmd->add_option("--monoid", *monoid)->required();
            cmd->add_option("--element", *element)->required();
            cmd->add_option("--kind", *kind, "canonical or length")
                ->check(CLI::IsMember({"canonical", "length"}))
                ->capture_default_str();
            cmd->callback([&ctx, monoid, element, kind] {
                auto m = MonoidInstance::parse(*monoid);
                auto a = m.parse_element(*element);
                auto dk = *kind == "length" ? DegreeKind::SequenceLength : DegreeKind::Canonical;
                auto d = deg(dk, m, a);
                ctx.emit("proto.degree",
                         {{"monoid", m.name()}, {"element", element_repr(m, a)},
                          {"kind", *kind}, {"degree", d}},
                         [&](std::ostream& os) {
                             os << "deg(" << m.show(a) << ") = " << d << "\n";
                         });
            });
        }
        {
            auto* cmd = proto->add_subcommand("proto-degree", "ultralimit degree of a family");
            auto family = std::make_shared<std::string>();
            auto uf_spec = std::make_shared<std::string>("frechet");
            cmd->add_option("--family", *family)->required();
            cmd->add_option("--uf", *uf_spec)->capture_default_str();
            cmd->callback([&ctx, family, uf_spec] {
                auto fam = parse_family(*family);
                auto spec = UltrafilterSpec::parse(*uf_spec);
                auto v = proto_degree(fam, spec);
                ctx.emit("proto.proto-degree", verdict_payload(spec, fam, v),
                         [&](std::ostream& os) {
                             os << "deg = " << verdict_text(v) << note_suffix(v.note) << "\n";
                         });
            });
        }
        {
            auto* cmd = proto->add_subcommand("in", "membership in the protoproduct deg^-1(N0)");
            auto family = std::make_shared<std::string>();
            auto uf_spec = std::make_shared<std::string>("frechet");
            cmd->add_option("--family", *family)->required();
            cmd->add_option("--uf", *uf_spec)->capture_default_str();
            cmd->callback([&ctx, family, uf_spec] {
                auto fam = parse_family(*family);
                auto spec = UltrafilterSpec::parse(*uf_spec);
                auto v = in_protoproduct(fam, spec);
                ctx.emit("proto.in", verdict_payload(spec, fam, v), [&](std::ostream& os) {
                    os << verdict_text(v) << note_suffix(v.note) << "\n";
                });
            });
        }
        {
            auto* cmd = proto->add_subcommand("closed", "divisor-closedness of the finite-degree part");
            auto monoid = std::make_shared<std::string>();
            auto bound = std::make_shared<std::uint64_t>(5);
            auto kind = std::make_shared<std::string>("canonical");
            cmd->add_option("--monoid", *monoid)->required();
            cmd->add_option("--bound", *bound)->capture_default_str();
            cmd->add_option("--kind", *kind)->check(CLI::IsMember({"canonical", "length"}))
                ->capture_default_str();
            cmd->callback([&ctx, monoid, bound, kind] {
                auto m = MonoidInstance::parse(*monoid);
                auto dk = *kind == "length" ? DegreeKind::SequenceLength : DegreeKind::Canonical;
                Budget budget = ctx.budget();
                auto rep = divisor_closed_check(m, dk, *bound, budget);
                ctx.emit("proto.closed", j_closed(m, rep), [&](std::ostream& os) {
                    os << (rep.ok ? "divisor-closed" : "FAILED") << " on "
                       << rep.elements_checked << " elements / " << rep.pairs_checked
                       << " division pairs\n";
                    if (!rep.ok && rep.counterexample)
                        os << "counterexample: " << m.show(*rep.counterexample) << "\n";
                    if (!rep.detail.empty()) os << rep.detail << "\n";
                });
            });
        }
        {
            auto* cmd = proto->add_subcommand("iso", "B(G) vs protoproduct slice comparison");
            auto group = std::make_shared<std::string>();
            auto bound = std::make_shared<std::uint64_t>(4);
            auto uf_spec = std::make_shared<std::string>("frechet");
            cmd->add_option("--group", *group)->required();
            cmd->add_option("--bound", *bound)->capture_default_str();
            cmd->add_option("--uf", *uf_spec)->capture_default_str();
            cmd->callback([&ctx, group, bound, uf_spec] {
                auto G = FiniteAbelianGroup::parse(*group);
                auto spec = UltrafilterSpec::parse(*uf_spec);
                Budget budget = ctx.budget();
                auto rep = bg_proto_iso_check(G, *bound, spec, budget);
                ctx.emit("proto.iso", j_iso(G, rep), [&](std::ostream& os) {
                    os << "B(" << G.name() << ") degree <= " << *bound << ": left "
                       << rep.left_count << ", right " << rep.right_count << "\n"
                       << "counts " << (rep.counts_match ? "match" : "DIFFER") << ", injective "
                       << (rep.injective ? "yes" : "NO") << ", surjective "
                       << (rep.surjective ? "yes" : "NO") << ", multiplicative "
                       << (rep.multiplicative ? "yes" : "NO") << ", atoms "
                       << (rep.atoms_match ? "match" : "DIFFER") << "\n"
                       << (rep.ok ? "isomorphism verified on the slice" : "FAILED") << "\n";
                });
            });
        }
        {
            auto* cmd = proto->add_subcommand("divisor", "divisor-theoretic image of a sequence");
            auto group = std::make_shared<std::string>();
            auto sequence = std::make_shared<std::string>();
            cmd->add_option("--group", *group)->required();
            cmd->add_option("--sequence", *sequence, "e.g. \"[1],[1],[1]\"")->required();
            cmd->callback([&ctx, group, sequence] {
                auto G = FiniteAbelianGroup::parse(*group);
                auto U = parse_sequence_text(G, *sequence);
                auto rep = divisor_theory_BG(G, U);
                ctx.emit("proto.divisor", j_divisor_image(rep), [&](std::ostream& os) {
                    auto bm = MonoidInstance::block(G);
                    os << "word of " << bm.show(Element{U}) << " in F(" << G.name()
                       << "): length " << rep.degree << "\n"
                       << "class group " << rep.class_group.name() << "; inclusion "
                       << (rep.inclusion_is_divisor_theory ? "is" : "is NOT")
                       << " a divisor theory\n";
                    if (!rep.detail.empty()) os << rep.detail << "\n";
                });
            });
        }
        {
            auto* cmd = proto->add_subcommand("gcd-cover", "letters as gcds of image pairs");
            auto group = std::make_shared<std::string>();
            auto max_len = std::make_shared<std::uint64_t>(4);
            cmd->add_option("--group", *group)->required();
            cmd->add_option("--max-len", *max_len)->capture_default_str();
            cmd->callback([&ctx, group, max_len] {
                auto G = FiniteAbelianGroup::parse(*group);
                Budget budget = ctx.budget();
                auto rep = gcd_cover_check(G, *max_len, budget);
                ctx.emit("proto.gcd-cover", j_gcd_cover(rep), [&](std::ostream& os) {
                    auto bm = MonoidInstance::block(G);
                    os << (rep.ok ? "covered" : "FAILED") << ": " << rep.rows.size()
                       << " letters over " << G.name()
                       << (rep.inclusion_theory ? " (letters = group elements)"
                                                : " (letters = atoms)")
                       << "\n";
                    for (const auto& row : rep.rows)
                        os << "  " << element_repr(bm, row.letter) << " = gcd("
                           << bm.show(Element{row.a}) << ", " << bm.show(Element{row.b}) << ")"
                           << (row.ok ? "" : "  FAILED") << "\n";
                });
            });
        }
        {
            auto* cmd = proto->add_subcommand("gap", "prime-power difference with many prime divisors");
            auto k = std::make_shared<std::uint64_t>(4);
            cmd->add_option("--k", *k, "required number of distinct prime divisors")
                ->capture_default_str();
            cmd->callback([run_gap, k] { run_gap(*k); });
        }
    }
    {
        auto* cmd = app.add_subcommand("gap", "shorthand for 'proto gap'");
        auto k = std::make_shared<std::uint64_t>(4);
        cmd->add_option("--k", *k)->capture_default_str();
        cmd->callback([run_gap, k] { run_gap(*k); });
    }

    // ------------------------------------------------------------- selftest
    {
        auto* cmd = app.add_subcommand("selftest", "run the acceptance suite");
        auto only_text = std::make_shared<std::string>();
        cmd->add_option("--only", *only_text, "comma-separated criterion ids");
        cmd->callback([&ctx, only_text] {
            std::set<int> only;
            if (!only_text->empty())
                for (const auto& part : split_on(*only_text, ','))
                    if (!part.empty()) only.insert(static_cast<int>(parse_u64(part, "criterion id")));
            auto results = run_acceptance(std::cout, only);
            bool all = !results.empty();
            for (const auto& r : results) all = all && r.pass;
            if (!all) throw domain_error("selftest failed");
        });
    }

    // Let global flags such as --output appear after any subcommand.
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* node) {
        for (CLI::App* sub : node->get_subcommands([](CLI::App*) { return true; })) {
            sub->fallthrough();
            enable_fallthrough(sub);
        }
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    } catch (const budget_exhausted& e) {
        std::cerr << "error (budget): " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace uf
