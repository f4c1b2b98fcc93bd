#include "uf/family.hpp"

#include <algorithm>
#include <numeric>

namespace uf {

UltrafilterSpec UltrafilterSpec::parse(const std::string& text) {
    if (text.empty() || text == "frechet") return frechet();
    if (text.rfind("principal:", 0) == 0) {
        std::string rest = text.substr(10);
        auto colon = rest.find(':');
        if (colon == std::string::npos)
            throw domain_error("expected principal:<size>:<selected>");
        return principal(std::stoull(rest.substr(0, colon)), std::stoull(rest.substr(colon + 1)));
    }
    throw domain_error("unknown ultrafilter spec: " + text);
}

BoolFamily BoolFamily::explicit_finite(std::vector<char> vals) {
    BoolFamily f;
    f.desc = Desc::ExplicitFinite;
    f.values = std::move(vals);
    f.validate();
    return f;
}

BoolFamily BoolFamily::eventually_periodic(std::vector<char> pre, std::vector<char> period) {
    BoolFamily f;
    f.desc = Desc::EventuallyPeriodic;
    f.pre = std::move(pre);
    f.period = std::move(period);
    f.validate();
    return f;
}

void BoolFamily::validate() const {
    if (desc == Desc::ExplicitFinite) {
        if (values.empty()) throw domain_error("ExplicitFinite family needs at least one value");
    } else {
        if (period.empty()) throw domain_error("EventuallyPeriodic family needs a nonempty period");
    }
}

bool BoolFamily::value_at(std::uint64_t lambda) const {
    if (desc == Desc::ExplicitFinite) {
        if (lambda >= values.size())
            throw domain_error("ExplicitFinite family: index beyond the finite index set");
        return values[lambda] != 0;
    }
    if (lambda < pre.size()) return pre[lambda] != 0;
    return period[(lambda - pre.size()) % period.size()] != 0;
}

ExtNatFamily ExtNatFamily::explicit_finite(std::vector<ExtNat> vals) {
    ExtNatFamily f;
    f.desc = Desc::ExplicitFinite;
    f.values = std::move(vals);
    f.validate();
    return f;
}

ExtNatFamily ExtNatFamily::eventually_periodic(std::vector<ExtNat> pre,
                                               std::vector<ExtNat> period) {
    ExtNatFamily f;
    f.desc = Desc::EventuallyPeriodic;
    f.pre = std::move(pre);
    f.period = std::move(period);
    f.validate();
    return f;
}

ExtNatFamily ExtNatFamily::nondecreasing_unbounded(std::vector<ExtNat> prefix) {
    ExtNatFamily f;
    f.desc = Desc::NondecreasingUnbounded;
    f.values = std::move(prefix);
    f.validate();
    return f;
}

void ExtNatFamily::validate() const {
    switch (desc) {
        case Desc::ExplicitFinite:
            if (values.empty())
                throw domain_error("ExplicitFinite family needs at least one value");
            break;
        case Desc::EventuallyPeriodic:
            if (period.empty())
                throw domain_error("EventuallyPeriodic family needs a nonempty period");
            break;
        case Desc::NondecreasingUnbounded:
            for (std::size_t i = 0; i + 1 < values.size(); ++i)
                if (values[i + 1] < values[i])
                    throw domain_error("NondecreasingUnbounded prefix must be nondecreasing");
            for (const ExtNat& v : values)
                if (v.is_infinite())
                    throw domain_error("NondecreasingUnbounded prefix must be finite");
            break;
    }
}

ExtNat ExtNatFamily::value_at(std::uint64_t lambda) const {
    switch (desc) {
        case Desc::ExplicitFinite:
        case Desc::NondecreasingUnbounded:
            if (lambda >= values.size())
                throw domain_error("family value at this index is not determined by the descriptor");
            return values[lambda];
        case Desc::EventuallyPeriodic:
            if (lambda < pre.size()) return pre[lambda];
            return period[(lambda - pre.size()) % period.size()];
    }
    throw domain_error("bad descriptor");
}

ElementFamily ElementFamily::make_constant(MonoidInstance m, Element e) {
    ElementFamily f;
    f.rule = Rule::Constant;
    f.comp_period = {std::move(m)};
    f.constant = f.comp_period[0].canonical(e);
    f.validate();
    return f;
}

ElementFamily ElementFamily::make_periodic(MonoidInstance m, std::vector<Element> pre,
                                           std::vector<Element> period) {
    ElementFamily f;
    f.rule = Rule::Periodic;
    f.comp_period = {std::move(m)};
    f.pre = std::move(pre);
    f.period = std::move(period);
    for (Element& e : f.pre) e = f.comp_period[0].canonical(e);
    for (Element& e : f.period) e = f.comp_period[0].canonical(e);
    f.validate();
    return f;
}

ElementFamily ElementFamily::prime_power_ramp(std::uint64_t p) {
    ElementFamily f;
    f.rule = Rule::PrimePowerRamp;
    f.comp_period = {MonoidInstance::nonzero_integers()};
    f.ramp_p = p;
    f.validate();
    return f;
}

ElementFamily ElementFamily::truncation_ramp(LengthProfile target) {
    ElementFamily f;
    f.rule = Rule::TruncationRamp;
    // nominal component; the family is certified at length-profile level
    f.comp_period = {MonoidInstance::block(FiniteAbelianGroup())};
    f.target = std::move(target);
    f.validate();
    return f;
}

const MonoidInstance& ElementFamily::component_at(std::uint64_t lambda) const {
    if (lambda < comp_pre.size()) return comp_pre[lambda];
    return comp_period[(lambda - comp_pre.size()) % comp_period.size()];
}

Element ElementFamily::element_at(std::uint64_t lambda) const {
    switch (rule) {
        case Rule::Constant: return constant;
        case Rule::Periodic:
            if (lambda < pre.size()) return pre[lambda];
            return period[(lambda - pre.size()) % period.size()];
        case Rule::PrimePowerRamp: {
            std::int64_t v = 1;
            for (std::uint64_t i = 0; i < lambda; ++i) {
                if (v > (std::int64_t{1} << 62) / static_cast<std::int64_t>(ramp_p))
                    throw domain_error("prime power ramp: element too large to materialize");
                v *= static_cast<std::int64_t>(ramp_p);
            }
            return Element{v};
        }
        case Rule::TruncationRamp:
            throw domain_error("truncation ramp families are profile-level; no concrete element");
    }
    throw domain_error("bad element rule");
}

std::uint64_t ElementFamily::pre_length() const {
    std::uint64_t n = comp_pre.size();
    if (rule == Rule::Periodic) n = std::max<std::uint64_t>(n, pre.size());
    return n;
}

std::uint64_t ElementFamily::period_length() const {
    std::uint64_t n = comp_period.size();
    if (rule == Rule::Periodic) n = std::lcm<std::uint64_t>(n, period.size());
    return n;
}

void ElementFamily::validate() const {
    if (comp_period.empty())
        throw domain_error("element family needs a nonempty component period");
    switch (rule) {
        case Rule::Constant: {
            // element must be valid in every component of the catalog
            for (const auto& m : comp_pre)
                if (!m.valid(constant))
                    throw domain_error("constant element invalid in a component instance");
            for (const auto& m : comp_period)
                if (!m.valid(constant))
                    throw domain_error("constant element invalid in a component instance");
            break;
        }
        case Rule::Periodic: {
            if (period.empty()) throw domain_error("periodic element rule needs a nonempty period");
            std::uint64_t window = pre_length() + period_length();
            for (std::uint64_t lambda = 0; lambda < window; ++lambda)
                if (!component_at(lambda).valid(element_at(lambda)))
                    throw domain_error("periodic element invalid in its component instance");
            break;
        }
        case Rule::PrimePowerRamp: {
            if (ramp_p < 2) throw domain_error("prime power ramp needs p >= 2");
            for (std::uint64_t d = 2; d * d <= ramp_p; ++d)
                if (ramp_p % d == 0) throw domain_error("prime power ramp needs a prime p");
            if (!constant_component() ||
                comp_period[0].kind() != MonoidInstance::Kind::NonzeroIntegers)
                throw domain_error("prime power ramp lives in NonzeroIntegers");
            break;
        }
        case Rule::TruncationRamp: {
            for (const auto& [len, mult] : target.mult) {
                if (len < 2)
                    throw domain_error("truncation ramp target must be a multiset over N>=2");
                (void)mult;
            }
            break;
        }
    }
}

std::vector<std::uint64_t> truncation_enumeration(const LengthProfile& target,
                                                  std::uint64_t count) {
    std::vector<std::uint64_t> f;
    std::uint64_t round = 0;
    while (f.size() < count) {
        bool emitted = false;
        for (const auto& [len, mult] : target.mult) {
            if (mult.is_infinite() || mult.finite() > round) {
                f.push_back(len);
                emitted = true;
                if (f.size() == count) break;
            }
        }
        if (!emitted) break; // finite multiset exhausted
        ++round;
    }
    return f;
}

LengthProfile truncation_profile_at(const LengthProfile& target, std::uint64_t lambda) {
    // {f(0),...,f(λ)} with clamping for finite targets
    if (lambda > 1'000'000)
        throw domain_error("truncation profile requested at an unreasonably large index");
    std::vector<std::uint64_t> f = truncation_enumeration(target, lambda + 1);
    LengthProfile p;
    for (std::uint64_t len : f) p.set(len, p.multiplicity(len) + ExtNat(1));
    return p;
}

} // namespace uf
