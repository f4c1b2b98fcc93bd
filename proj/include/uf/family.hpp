#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "uf/errors.hpp"
#include "uf/extnat.hpp"
#include "uf/monoid.hpp"
#include "uf/multiset.hpp"

namespace uf {

/// Which ultrafilters a query quantifies over.
///   PrincipalOnFinite — the principal ultrafilter at selected_index on a
///     finite index set (every ultrafilter on a finite set is principal).
///   Frechet — index set N; verdicts are sound for every non-principal
///     ultrafilter simultaneously (cofinite/finite dichotomy).
struct UltrafilterSpec {
    enum class Mode { PrincipalOnFinite, Frechet };
    Mode mode = Mode::Frechet;
    std::uint64_t index_set_size = 0;
    std::uint64_t selected_index = 0;

    static UltrafilterSpec frechet() { return {}; }
    static UltrafilterSpec principal(std::uint64_t size, std::uint64_t selected) {
        UltrafilterSpec s;
        s.mode = Mode::PrincipalOnFinite;
        s.index_set_size = size;
        s.selected_index = selected;
        if (selected >= size)
            throw domain_error("principal ultrafilter: selected index out of range");
        return s;
    }
    /// Parses "frechet" or "principal:<size>:<selected>".
    static UltrafilterSpec parse(const std::string& text);
};

/// Verdict of an ultrafilter-semantics query.
///   Point       — principal mode: the value at the selected index.
///   ForAll      — Frechet mode: same value under every non-principal U.
///   Depends     — Frechet mode: candidates, each attained by some U.
///   Inconclusive — bounded query (up_in_HA) could not certify either way.
template <typename T>
struct Verdict {
    enum class Kind { Point, ForAll, Depends, Inconclusive };
    Kind kind = Kind::ForAll;
    std::optional<T> value;  // Point / ForAll
    std::set<T> candidates;  // Depends
    std::string note;        // Inconclusive reason, optional extra detail

    static Verdict point(T v) { return {Kind::Point, std::move(v), {}, {}}; }
    static Verdict forall(T v) { return {Kind::ForAll, std::move(v), {}, {}}; }
    static Verdict depends(std::set<T> cands) {
        return {Kind::Depends, std::nullopt, std::move(cands), {}};
    }
    static Verdict inconclusive(std::string why) {
        return {Kind::Inconclusive, std::nullopt, {}, std::move(why)};
    }

    bool is(Kind k) const { return kind == k; }
    bool forall_equals(const T& v) const { return kind == Kind::ForAll && value && *value == v; }

    friend bool operator==(const Verdict& a, const Verdict& b) {
        return a.kind == b.kind && a.value == b.value && a.candidates == b.candidates;
    }
};

/// Certified family of booleans over N.
///   ExplicitFinite      — values on a finite index set (principal mode only).
///   EventuallyPeriodic  — value(λ) = pre[λ] for λ < |pre|, else
///                         period[(λ - |pre|) mod |period|].
struct BoolFamily {
    enum class Desc { ExplicitFinite, EventuallyPeriodic };
    Desc desc = Desc::EventuallyPeriodic;
    std::vector<char> values; // ExplicitFinite
    std::vector<char> pre;
    std::vector<char> period; // nonempty for EventuallyPeriodic

    static BoolFamily explicit_finite(std::vector<char> vals);
    static BoolFamily eventually_periodic(std::vector<char> pre, std::vector<char> period);
    static BoolFamily constant(bool v) { return eventually_periodic({}, {static_cast<char>(v)}); }

    bool value_at(std::uint64_t lambda) const;
    void validate() const;
};

/// Certified family of extended naturals over N. Descriptors as BoolFamily,
/// plus NondecreasingUnbounded: a nondecreasing finite prefix with the tail
/// certified (by the descriptor itself) to exceed every bound.
struct ExtNatFamily {
    enum class Desc { ExplicitFinite, EventuallyPeriodic, NondecreasingUnbounded };
    Desc desc = Desc::EventuallyPeriodic;
    std::vector<ExtNat> values; // ExplicitFinite / NondecreasingUnbounded prefix
    std::vector<ExtNat> pre;
    std::vector<ExtNat> period;

    static ExtNatFamily explicit_finite(std::vector<ExtNat> vals);
    static ExtNatFamily eventually_periodic(std::vector<ExtNat> pre, std::vector<ExtNat> period);
    static ExtNatFamily constant(ExtNat v) { return eventually_periodic({}, {v}); }
    static ExtNatFamily nondecreasing_unbounded(std::vector<ExtNat> prefix);

    /// Defined for all λ for EventuallyPeriodic; for the other descriptors
    /// only within the stored values (domain_error beyond).
    ExtNat value_at(std::uint64_t lambda) const;
    void validate() const;
};

/// Finitely-described family (a_λ) of monoid elements over N.
/// The component monoid catalog is eventually periodic; the element rule is
/// one of:
///   Constant{e}
///   Periodic{pre, period}
///   PrimePowerRamp{p}   — a_λ = p^λ in NonzeroIntegers
///   TruncationRamp{L}   — profile-level family with L(a_λ) = {f(0..λ)} for
///                         the canonical enumeration f of the multiset L
///                         (clamped once a finite L is exhausted)
struct ElementFamily {
    enum class Rule { Constant, Periodic, PrimePowerRamp, TruncationRamp };
    Rule rule = Rule::Constant;

    std::vector<MonoidInstance> comp_pre;
    std::vector<MonoidInstance> comp_period; // nonempty

    Element constant;              // Constant
    std::vector<Element> pre;      // Periodic
    std::vector<Element> period;   // Periodic, nonempty
    std::uint64_t ramp_p = 0;      // PrimePowerRamp
    LengthProfile target;          // TruncationRamp

    static ElementFamily make_constant(MonoidInstance m, Element e);
    static ElementFamily make_periodic(MonoidInstance m, std::vector<Element> pre,
                                       std::vector<Element> period);
    static ElementFamily prime_power_ramp(std::uint64_t p);
    static ElementFamily truncation_ramp(LengthProfile target);

    const MonoidInstance& component_at(std::uint64_t lambda) const;
    bool constant_component() const { return comp_pre.empty() && comp_period.size() == 1; }

    /// Concrete element at λ; domain_error for TruncationRamp (profile-level).
    Element element_at(std::uint64_t lambda) const;

    /// Window after which (component, element) evolution is exactly periodic.
    std::uint64_t pre_length() const;
    std::uint64_t period_length() const;

    void validate() const;
};

/// Canonical enumeration f of a multiset over N>=2: round k lists (in
/// increasing order) every value whose multiplicity exceeds k. Returns the
/// first `count` values; for a finite multiset the enumeration is the full
/// list (shorter than `count` if exhausted).
std::vector<std::uint64_t> truncation_enumeration(const LengthProfile& target,
                                                  std::uint64_t count);

/// Profile {f(0),...,f(min(λ, m))} of the TruncationRamp family at index λ
/// (m = total multiplicity - 1 when finite).
LengthProfile truncation_profile_at(const LengthProfile& target, std::uint64_t lambda);

} // namespace uf
