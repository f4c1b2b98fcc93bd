#pragma once

#include <string>

#include "json.hpp"

#include "uf/factorize.hpp"
#include "uf/family.hpp"
#include "uf/filter_engine.hpp"
#include "uf/fol.hpp"
#include "uf/krull.hpp"
#include "uf/zerosum.hpp"

namespace uf {

using nlohmann::json;

/// Structural rendering that never validates: usable for raw divisor-theory
/// letters (e.g. single-term sequences) that are not elements of the monoid.
std::string element_repr(const MonoidInstance& m, const Element& a);

json j_group(const FiniteAbelianGroup& G);
json j_sequence(const Sequence& S);
json j_extnat(const ExtNat& n);
json j_profile(const LengthProfile& L);
json j_spec(const UltrafilterSpec& spec);
json j_element(const MonoidInstance& m, const Element& a);

json j_verdict(const Verdict<bool>& v);
json j_verdict(const Verdict<ExtNat>& v);

json j_bool_family(const BoolFamily& f);
json j_extnat_family(const ExtNatFamily& f);
json j_family(const ElementFamily& f);

json j_davenport(const FiniteAbelianGroup& G, const DavenportResult& r);
json j_realize(const FiniteAbelianGroup& G, const std::set<std::uint64_t>& L,
               const RealizeOutcome& r);
json j_exceptional(const ExceptionalReport& r);
json j_half_factorial(const MonoidInstance& m, const HalfFactorialReport& r);
json j_transfer(const MultisetTransferReport& r);
json j_factorial_check(const FactorialCheckReport& r);
json j_iso(const FiniteAbelianGroup& G, const BgProtoIsoReport& r);
json j_closed(const MonoidInstance& m, const DivisorClosedReport& r);
json j_divisor_image(const DivisorTheoryImage& r);
json j_gcd_cover(const GcdCoverReport& r);
json j_gap(const PrimePowerGap& r);
json j_los(const fol::LosReport& r);

/// Wraps a payload as a top-level CLI document: adds "schema": "v1" and the
/// operation name. Key order in the dump is alphabetical (deterministic).
json envelope(const std::string& op, json payload);

/// Two-space indented dump with sorted keys; byte-identical for equal data.
std::string dump_doc(const json& j);

} // namespace uf
