#pragma once

// JSON encoding of scenarios, reports and e-values.
//
// Per-outcome values are written as objects keyed by outcome id.
// Rational numbers are written as "p/q" strings; doubles as JSON numbers.
// Readers accept either, and parse JSON numbers through their shortest decimal
// spelling, so 0.1 reads as exactly 1/10 under the rational backend.
// Readers throw ConfigError with a JSON-pointer-like path on malformed input.

#include "json.hpp"
#include <string>

#include "posthoc/axioms.hpp"
#include "posthoc/evalue.hpp"
#include "posthoc/scenario.hpp"

namespace posthoc {

using Json = nlohmann::ordered_json;

inline constexpr const char* kScenarioSchema = "posthoc-lab/scenario/v1";
inline constexpr const char* kReportSchema = "posthoc-lab/report/v1";
inline constexpr const char* kEValueSchema = "posthoc-lab/evalue/v1";

template <class T>
Json encode_number(const T& v);
template <class T>
Json encode_number(const Extended<T>& v);
template <class T>
T decode_number(const Json& j, const std::string& path);
template <class T>
Extended<T> decode_extended(const Json& j, const std::string& path);

template <class T>
Json space_to_json(const FiniteSpace<T>& space);
template <class T>
SpacePtr<T> space_from_json(const Json& j);

/// {"kind": "nonreject"} or {"kind": "reject", "level": ...}.
template <class T>
Json decision_to_json(const Decision<T>& d);
template <class T>
Decision<T> decision_from_json(const Json& j);

template <class T>
Json family_to_json(const TestFamily<T>& phi);
template <class T>
TestFamily<T> family_from_json(const Json& j, const SpacePtr<T>& space);

template <class T>
Json level_to_json(const DataDependentLevel<T>& at);
/// An object keyed by outcome, an array aligned with the outcomes, or one number
/// for a constant level. Masses, kappa and r accept the same two layouts.
template <class T>
DataDependentLevel<T> level_from_json(const Json& j, const SpacePtr<T>& space, const std::string& path);

template <class T>
Json rho_to_json(const CertaintyEquivalent<T>& rho);
template <class T>
CertaintyEquivalent<T> rho_from_json(const Json& j);
/// "expectation", "esssup", "power_mean(q)" or "quantile(tau)".
template <class T>
CertaintyEquivalent<T> parse_rho(const std::string& text);

template <class T>
Json loss_to_json(const LossFunction<T>& loss);
template <class T>
LossFunction<T> loss_from_json(const Json& j);

template <class T>
Json scenario_to_json(const Scenario<T>& s);
template <class T>
Scenario<T> scenario_from_json(const Json& j);

template <class T>
Json counterexample_to_json(const Counterexample<T>& cx);
template <class T>
Counterexample<T> counterexample_from_json(const Json& j);

template <class T>
Json report_to_json(const AuditReport<T>& r);

/// {"evidence": {outcome: number or "inf"}}.
template <class T>
Json evalue_to_json(const EValue<T>& e);
template <class T>
RandomVariable<T> evidence_from_json(const Json& j, const SpacePtr<T>& space);

template <class T>
Json evalue_report_to_json(const EValueReport<T>& r);

}  // namespace posthoc
