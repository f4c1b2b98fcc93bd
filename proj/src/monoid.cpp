#include "uf/monoid.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

namespace uf {

MonoidInstance MonoidInstance::free_abelian(std::size_t rank) {
    MonoidInstance m;
    m.kind_ = Kind::FreeAbelian;
    m.rank_ = rank;
    return m;
}

MonoidInstance MonoidInstance::nonzero_integers() {
    MonoidInstance m;
    m.kind_ = Kind::NonzeroIntegers;
    return m;
}

MonoidInstance MonoidInstance::group_as_monoid(FiniteAbelianGroup G) {
    MonoidInstance m;
    m.kind_ = Kind::GroupAsMonoid;
    m.group_ = std::move(G);
    return m;
}

MonoidInstance MonoidInstance::block(FiniteAbelianGroup G) {
    MonoidInstance m;
    m.kind_ = Kind::Block;
    m.group_ = std::move(G);
    return m;
}

MonoidInstance MonoidInstance::direct_product(std::vector<MonoidInstance> components) {
    if (components.empty()) throw domain_error("direct product needs at least one component");
    MonoidInstance m;
    m.kind_ = Kind::DirectProduct;
    m.components_ = std::move(components);
    return m;
}

MonoidInstance MonoidInstance::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s == "z" || s == "Z" || s == "nonzero_integers") return nonzero_integers();
    if (s.rfind("free:", 0) == 0) {
        unsigned long r = std::stoul(s.substr(5));
        if (r == 0 || r > 64) throw domain_error("free rank out of range: " + text);
        return free_abelian(r);
    }
    if (s.rfind("bg:", 0) == 0) return block(FiniteAbelianGroup::parse(s.substr(3)));
    if (s.rfind("group:", 0) == 0) return group_as_monoid(FiniteAbelianGroup::parse(s.substr(6)));
    if (s.rfind("prod:", 0) == 0) {
        std::vector<MonoidInstance> comps;
        std::string rest = s.substr(5);
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            std::size_t plus = rest.find('+', pos);
            std::string piece =
                rest.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
            comps.push_back(parse(piece));
            if (plus == std::string::npos) break;
            pos = plus + 1;
        }
        return direct_product(std::move(comps));
    }
    throw domain_error("unknown monoid descriptor: " + text);
}

std::string MonoidInstance::name() const {
    switch (kind_) {
        case Kind::FreeAbelian: return "FreeAbelian(" + std::to_string(rank_) + ")";
        case Kind::NonzeroIntegers: return "NonzeroIntegers";
        case Kind::GroupAsMonoid: return group_.name() + " (as monoid)";
        case Kind::Block: return "B(" + group_.name() + ")";
        case Kind::DirectProduct: {
            std::string out;
            for (std::size_t i = 0; i < components_.size(); ++i) {
                if (i) out += " x ";
                out += components_[i].name();
            }
            return out;
        }
    }
    return {};
}

bool MonoidInstance::operator==(const MonoidInstance& o) const {
    if (kind_ != o.kind_) return false;
    switch (kind_) {
        case Kind::FreeAbelian: return rank_ == o.rank_;
        case Kind::NonzeroIntegers: return true;
        case Kind::GroupAsMonoid:
        case Kind::Block: return group_ == o.group_;
        case Kind::DirectProduct: return components_ == o.components_;
    }
    return false;
}

Element MonoidInstance::identity() const {
    switch (kind_) {
        case Kind::FreeAbelian: return Element{ExpVec(rank_, 0)};
        case Kind::NonzeroIntegers: return Element{std::int64_t{1}};
        case Kind::GroupAsMonoid: return Element{group_.zero()};
        case Kind::Block: return Element{Sequence{}};
        case Kind::DirectProduct: {
            Tuple t;
            for (const auto& c : components_) t.coords.push_back(c.identity());
            return Element{std::move(t)};
        }
    }
    return Element{std::int64_t{1}};
}

bool MonoidInstance::valid(const Element& a) const {
    switch (kind_) {
        case Kind::FreeAbelian: {
            auto* e = std::get_if<ExpVec>(&a.v);
            return e && e->size() == rank_;
        }
        case Kind::NonzeroIntegers: {
            auto* n = std::get_if<std::int64_t>(&a.v);
            return n && *n != 0;
        }
        case Kind::GroupAsMonoid: {
            auto* g = std::get_if<GroupElem>(&a.v);
            return g && group_.contains(*g);
        }
        case Kind::Block: {
            auto* s = std::get_if<Sequence>(&a.v);
            if (!s) return false;
            for (const GroupElem& t : *s)
                if (!group_.contains(t)) return false;
            return is_zero_sum(group_, *s);
        }
        case Kind::DirectProduct: {
            auto* t = std::get_if<Tuple>(&a.v);
            if (!t || t->coords.size() != components_.size()) return false;
            for (std::size_t i = 0; i < components_.size(); ++i)
                if (!components_[i].valid(t->coords[i])) return false;
            return true;
        }
    }
    return false;
}

void MonoidInstance::require_valid(const Element& a) const {
    if (!valid(a)) throw domain_error("element does not belong to " + name());
}

Element MonoidInstance::canonical(const Element& a) const {
    require_valid(a);
    switch (kind_) {
        case Kind::Block: return Element{canonical_sequence(std::get<Sequence>(a.v))};
        case Kind::DirectProduct: {
            Tuple t = std::get<Tuple>(a.v);
            for (std::size_t i = 0; i < components_.size(); ++i)
                t.coords[i] = components_[i].canonical(t.coords[i]);
            return Element{std::move(t)};
        }
        default: return a;
    }
}

Element MonoidInstance::mul(const Element& a, const Element& b) const {
    require_valid(a);
    require_valid(b);
    switch (kind_) {
        case Kind::FreeAbelian: {
            ExpVec out = std::get<ExpVec>(a.v);
            const ExpVec& e2 = std::get<ExpVec>(b.v);
            for (std::size_t i = 0; i < out.size(); ++i) out[i] += e2[i];
            return Element{std::move(out)};
        }
        case Kind::NonzeroIntegers: {
            std::int64_t x = std::get<std::int64_t>(a.v), y = std::get<std::int64_t>(b.v);
            if (x != 0 && (std::abs(y) > (std::int64_t{1} << 62) / std::abs(x)))
                throw domain_error("integer product overflow");
            return Element{x * y};
        }
        case Kind::GroupAsMonoid:
            return Element{group_.add(std::get<GroupElem>(a.v), std::get<GroupElem>(b.v))};
        case Kind::Block: {
            Sequence out = std::get<Sequence>(a.v);
            const Sequence& s2 = std::get<Sequence>(b.v);
            out.insert(out.end(), s2.begin(), s2.end());
            return Element{canonical_sequence(std::move(out))};
        }
        case Kind::DirectProduct: {
            Tuple out;
            const Tuple& ta = std::get<Tuple>(a.v);
            const Tuple& tb = std::get<Tuple>(b.v);
            for (std::size_t i = 0; i < components_.size(); ++i)
                out.coords.push_back(components_[i].mul(ta.coords[i], tb.coords[i]));
            return Element{std::move(out)};
        }
    }
    return a;
}

bool MonoidInstance::is_unit(const Element& a) const {
    require_valid(a);
    switch (kind_) {
        case Kind::FreeAbelian: {
            for (std::uint64_t e : std::get<ExpVec>(a.v))
                if (e != 0) return false;
            return true;
        }
        case Kind::NonzeroIntegers: {
            std::int64_t n = std::get<std::int64_t>(a.v);
            return n == 1 || n == -1;
        }
        case Kind::GroupAsMonoid: return true; // a group: everything invertible
        case Kind::Block: return std::get<Sequence>(a.v).empty();
        case Kind::DirectProduct: {
            const Tuple& t = std::get<Tuple>(a.v);
            for (std::size_t i = 0; i < components_.size(); ++i)
                if (!components_[i].is_unit(t.coords[i])) return false;
            return true;
        }
    }
    return false;
}

Element MonoidInstance::associate_canonical(const Element& a) const {
    require_valid(a);
    switch (kind_) {
        case Kind::NonzeroIntegers: {
            std::int64_t n = std::get<std::int64_t>(a.v);
            return Element{n < 0 ? -n : n};
        }
        case Kind::GroupAsMonoid: return identity(); // all elements are associated
        case Kind::DirectProduct: {
            Tuple t = std::get<Tuple>(a.v);
            for (std::size_t i = 0; i < components_.size(); ++i)
                t.coords[i] = components_[i].associate_canonical(t.coords[i]);
            return Element{std::move(t)};
        }
        default: return canonical(a); // trivial unit group
    }
}

bool MonoidInstance::associated(const Element& a, const Element& b) const {
    return associate_canonical(a) == associate_canonical(b);
}

bool MonoidInstance::is_atom(const Element& a, Budget& budget) const {
    require_valid(a);
    if (is_unit(a)) return false;
    switch (kind_) {
        case Kind::FreeAbelian: {
            // atoms are the standard basis vectors
            std::uint64_t sum = 0;
            for (std::uint64_t e : std::get<ExpVec>(a.v)) sum += e;
            return sum == 1;
        }
        case Kind::NonzeroIntegers: {
            std::int64_t n = std::abs(std::get<std::int64_t>(a.v));
            if (n < 2) return false;
            for (std::int64_t d = 2; d * d <= n; ++d) {
                budget.tick("is_atom(NonzeroIntegers)");
                if (n % d == 0) return false;
            }
            return true;
        }
        case Kind::GroupAsMonoid: return false; // no non-units at all
        case Kind::Block:
            return is_minimal_zero_sum(group_, std::get<Sequence>(a.v));
        case Kind::DirectProduct: {
            // Exactly one coordinate a non-unit, and that coordinate an atom.
            const Tuple& t = std::get<Tuple>(a.v);
            std::size_t nonunit = components_.size();
            for (std::size_t i = 0; i < components_.size(); ++i) {
                if (!components_[i].is_unit(t.coords[i])) {
                    if (nonunit != components_.size()) return false;
                    nonunit = i;
                }
            }
            return nonunit != components_.size() &&
                   components_[nonunit].is_atom(t.coords[nonunit], budget);
        }
    }
    return false;
}

std::string MonoidInstance::show(const Element& a) const {
    require_valid(a);
    std::ostringstream os;
    switch (kind_) {
        case Kind::FreeAbelian: {
            const ExpVec& e = std::get<ExpVec>(a.v);
            os << '(';
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (i) os << ',';
                os << e[i];
            }
            os << ')';
            break;
        }
        case Kind::NonzeroIntegers: os << std::get<std::int64_t>(a.v); break;
        case Kind::GroupAsMonoid: {
            const GroupElem& g = std::get<GroupElem>(a.v);
            os << '(';
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (i) os << ',';
                os << g[i];
            }
            os << ')';
            break;
        }
        case Kind::Block: {
            const Sequence& s = std::get<Sequence>(a.v);
            if (s.empty()) {
                os << "1";
                break;
            }
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (i) os << "·";
                os << '[';
                for (std::size_t j = 0; j < s[i].size(); ++j) {
                    if (j) os << ',';
                    os << s[i][j];
                }
                os << ']';
            }
            break;
        }
        case Kind::DirectProduct: {
            const Tuple& t = std::get<Tuple>(a.v);
            os << '<';
            for (std::size_t i = 0; i < t.coords.size(); ++i) {
                if (i) os << "; ";
                os << components_[i].show(t.coords[i]);
            }
            os << '>';
            break;
        }
    }
    return os.str();
}

namespace {

std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '[' || c == '(') ++depth;
        if (c == ']' || c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::string strip(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

std::vector<std::uint32_t> parse_coords_u32(const std::string& body, const std::string& full) {
    std::vector<std::uint32_t> coords;
    if (body.empty()) return coords;
    for (const std::string& p : split_top(body, ',')) {
        if (p.empty()) throw domain_error("bad element literal: " + full);
        char* end = nullptr;
        unsigned long v = std::strtoul(p.c_str(), &end, 10);
        if (end == p.c_str() || *end != '\0')
            throw domain_error("bad element literal: " + full);
        coords.push_back(static_cast<std::uint32_t>(v));
    }
    return coords;
}

} // namespace

Element MonoidInstance::parse_element(const std::string& text) const {
    std::string s = strip(text);
    switch (kind_) {
        case Kind::FreeAbelian: {
            if (s == "1") return identity();
            if (!s.empty() && s.front() == '(' && s.back() == ')')
                s = s.substr(1, s.size() - 2);
            ExpVec e;
            for (const std::string& p : split_top(s, ',')) {
                char* end = nullptr;
                unsigned long long v = std::strtoull(p.c_str(), &end, 10);
                if (p.empty() || end == p.c_str() || *end != '\0')
                    throw domain_error("bad element literal: " + text);
                e.push_back(v);
            }
            Element out{std::move(e)};
            require_valid(out);
            return out;
        }
        case Kind::NonzeroIntegers: {
            char* end = nullptr;
            long long v = std::strtoll(s.c_str(), &end, 10);
            if (s.empty() || end == s.c_str() || *end != '\0')
                throw domain_error("bad element literal: " + text);
            Element out{static_cast<std::int64_t>(v)};
            require_valid(out);
            return out;
        }
        case Kind::GroupAsMonoid: {
            std::string body = s;
            if (!body.empty() && body.front() == '[' && body.back() == ']')
                body = body.substr(1, body.size() - 2);
            Element out{parse_coords_u32(body, text)};
            require_valid(out);
            return out;
        }
        case Kind::Block: {
            if (s.empty() || s == "1") return identity();
            Sequence seq;
            for (const std::string& term : split_top(s, ',')) {
                std::string body = term;
                if (body.size() < 2 || body.front() != '[' || body.back() != ']')
                    throw domain_error("bad sequence literal (expect [..],[..]): " + text);
                body = body.substr(1, body.size() - 2);
                seq.push_back(parse_coords_u32(body, text));
            }
            Element out{canonical_sequence(std::move(seq))};
            require_valid(out);
            return out;
        }
        case Kind::DirectProduct: {
            auto pieces = split_top(s, ';');
            if (pieces.size() != components_.size())
                throw domain_error("tuple arity mismatch: " + text);
            Tuple t;
            for (std::size_t i = 0; i < pieces.size(); ++i)
                t.coords.push_back(components_[i].parse_element(pieces[i]));
            return Element{std::move(t)};
        }
    }
    throw domain_error("bad element literal: " + text);
}

} // namespace uf
