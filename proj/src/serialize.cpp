#include "posthoc/serialize.hpp"

#include <algorithm>
#include <type_traits>

#include "posthoc/errors.hpp"

namespace posthoc {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing \"") + key + "\"");
  return *it;
}

void only_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) fail(path, "unknown key \"" + key + "\"");
  }
}

std::string text(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

template <class T>
std::vector<T> number_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  std::vector<T> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(decode_number<T>(j[i], path + "/" + std::to_string(i)));
  return out;
}

// An array aligned with the outcomes, or an object keyed by every outcome.
template <class T>
std::vector<T> outcome_values(const Json& j, const std::vector<std::string>& outcomes, const std::string& path) {
  if (j.is_array()) {
    if (j.size() != outcomes.size()) {
      fail(path, "expected " + std::to_string(outcomes.size()) + " values, one per outcome");
    }
    return number_array<T>(j, path);
  }
  if (!j.is_object()) fail(path, "expected an array or an object keyed by outcome");
  std::vector<T> out;
  out.reserve(outcomes.size());
  for (const auto& id : outcomes) {
    auto it = j.find(id);
    if (it == j.end()) fail(path, "missing outcome \"" + id + "\"");
    out.push_back(decode_number<T>(*it, path + "/" + id));
  }
  if (j.size() != outcomes.size()) {
    for (const auto& [key, _] : j.items()) {
      if (std::find(outcomes.begin(), outcomes.end(), key) == outcomes.end()) fail(path + "/" + key, "unknown outcome");
    }
  }
  return out;
}

template <class T>
Json outcome_map(const std::vector<std::string>& outcomes, const std::vector<T>& values) {
  Json out = Json::object();
  for (std::size_t i = 0; i < outcomes.size(); ++i) out[outcomes[i]] = encode_number(values[i]);
  return out;
}

template <class T>
Json number_list(const std::vector<T>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(encode_number(v));
  return out;
}

// Library errors raised while building objects from JSON become config errors.
template <class Fn>
auto guarded(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  } catch (const std::domain_error& e) {
    fail(path, e.what());
  }
}

}  // namespace

template <class T>
Json encode_number(const T& v) {
  if constexpr (std::is_same_v<T, double>) {
    return v;
  } else {
    return num::format(v);
  }
}

template <class T>
Json encode_number(const Extended<T>& v) {
  if (v.is_infinite()) return "inf";
  return encode_number(v.value());
}

template <class T>
T decode_number(const Json& j, const std::string& path) {
  try {
    if (j.is_string()) return NumTraits<T>::parse(j.get<std::string>());
    if (j.is_number_integer()) return NumTraits<T>::parse(j.dump());
    if (j.is_number_float()) return NumTraits<T>::parse(j.dump());
  } catch (const ConfigError& e) {
    fail(path, e.what());
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  fail(path, "expected a number or a \"p/q\" string");
}

template <class T>
Extended<T> decode_extended(const Json& j, const std::string& path) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "infinity") return Extended<T>::infinity();
  }
  return Extended<T>(decode_number<T>(j, path));
}

template <class T>
Json space_to_json(const FiniteSpace<T>& space) {
  Json out;
  out["outcomes"] = space.outcomes();
  out["mass"] = outcome_map(space.outcomes(), space.mass());
  return out;
}

template <class T>
SpacePtr<T> space_from_json(const Json& j) {
  const std::string path = "/space";
  only_keys(j, {"outcomes", "mass"}, path);
  const auto& outcomes = field(j, "outcomes", path);
  if (!outcomes.is_array()) fail(path + "/outcomes", "expected an array of strings");
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < outcomes.size(); ++i) ids.push_back(text(outcomes[i], path + "/outcomes/" + std::to_string(i)));
  const auto& mass_json = field(j, "mass", path);
  auto mass = mass_json.is_object() ? outcome_values<T>(mass_json, ids, path + "/mass")
                                    : number_array<T>(mass_json, path + "/mass");
  return guarded(path, [&] { return make_space<T>(std::move(ids), std::move(mass)); });
}

template <class T>
Json decision_to_json(const Decision<T>& d) {
  Json out;
  if (!d.rejects()) {
    out["kind"] = "nonreject";
    return out;
  }
  out["kind"] = "reject";
  out["level"] = encode_number(d.level());
  return out;
}

template <class T>
Decision<T> decision_from_json(const Json& j) {
  const std::string path = "/decision";
  const auto kind = text(field(j, "kind", path), path + "/kind");
  if (kind == "nonreject") {
    only_keys(j, {"kind"}, path);
    return Decision<T>::non_reject();
  }
  if (kind != "reject") fail(path + "/kind", "expected \"nonreject\" or \"reject\"");
  only_keys(j, {"kind", "level"}, path);
  const T level = decode_number<T>(field(j, "level", path), path + "/level");
  return guarded(path, [&] { return Decision<T>::reject_at(level); });
}

template <class T>
Json family_to_json(const TestFamily<T>& phi) {
  Json out;
  if (phi.form() == FamilyForm::Threshold) {
    out["form"] = "threshold";
    out["kappa"] = outcome_map(phi.space()->outcomes(), phi.values());
  } else {
    out["form"] = "coupled";
    out["r"] = outcome_map(phi.space()->outcomes(), phi.values());
  }
  return out;
}

template <class T>
TestFamily<T> family_from_json(const Json& j, const SpacePtr<T>& space) {
  const std::string path = "/family";
  const auto form = text(field(j, "form", path), path + "/form");
  if (form == "threshold") {
    only_keys(j, {"form", "kappa"}, path);
    auto kappa = outcome_values<T>(field(j, "kappa", path), space->outcomes(), path + "/kappa");
    return guarded(path, [&] { return TestFamily<T>::threshold(space, std::move(kappa)); });
  }
  if (form == "coupled") {
    only_keys(j, {"form", "r"}, path);
    auto r = outcome_values<T>(field(j, "r", path), space->outcomes(), path + "/r");
    return guarded(path, [&] { return TestFamily<T>::coupled(space, std::move(r)); });
  }
  fail(path + "/form", "expected \"threshold\" or \"coupled\"");
}

template <class T>
Json level_to_json(const DataDependentLevel<T>& at) {
  return outcome_map(at.space()->outcomes(), at.levels());
}

template <class T>
DataDependentLevel<T> level_from_json(const Json& j, const SpacePtr<T>& space, const std::string& path) {
  if (j.is_array() || j.is_object()) {
    auto levels = outcome_values<T>(j, space->outcomes(), path);
    return guarded(path, [&] { return DataDependentLevel<T>(space, std::move(levels)); });
  }
  const T c = decode_number<T>(j, path);
  return guarded(path, [&] { return DataDependentLevel<T>::constant(space, c); });
}

template <class T>
Json rho_to_json(const CertaintyEquivalent<T>& rho) {
  Json out;
  switch (rho.kind()) {
    case RhoKind::Expectation:
      return "expectation";
    case RhoKind::EssSup:
      return "esssup";
    case RhoKind::PowerMean:
      out["power_mean"] = encode_number(rho.parameter());
      return out;
    case RhoKind::Quantile:
      out["quantile"] = encode_number(rho.parameter());
      return out;
  }
  return out;
}

template <class T>
CertaintyEquivalent<T> rho_from_json(const Json& j) {
  const std::string path = "/rho";
  if (j.is_string()) return parse_rho<T>(j.get<std::string>());
  if (j.is_object() && j.size() == 1) {
    if (j.contains("power_mean")) {
      const T q = decode_number<T>(j["power_mean"], path + "/power_mean");
      return guarded(path, [&] { return CertaintyEquivalent<T>::power_mean(q); });
    }
    if (j.contains("quantile")) {
      const T tau = decode_number<T>(j["quantile"], path + "/quantile");
      return guarded(path, [&] { return CertaintyEquivalent<T>::quantile(tau); });
    }
  }
  fail(path, "expected \"expectation\", \"esssup\", {\"power_mean\": q} or {\"quantile\": tau}");
}

template <class T>
CertaintyEquivalent<T> parse_rho(const std::string& s) {
  if (s == "expectation") return CertaintyEquivalent<T>::expectation();
  if (s == "esssup") return CertaintyEquivalent<T>::esssup();
  const auto open = s.find('(');
  if (open != std::string::npos && s.back() == ')') {
    const auto name = s.substr(0, open);
    const auto arg = s.substr(open + 1, s.size() - open - 2);
    const auto path = "rho " + s;
    if (name == "power_mean") {
      return guarded(path, [&] { return CertaintyEquivalent<T>::power_mean(NumTraits<T>::parse(arg)); });
    }
    if (name == "quantile") {
      return guarded(path, [&] { return CertaintyEquivalent<T>::quantile(NumTraits<T>::parse(arg)); });
    }
  }
  throw ConfigError("unknown rho '" + s + "'; expected expectation, esssup, power_mean(q) or quantile(tau)");
}

template <class T>
Json loss_to_json(const LossFunction<T>& loss) {
  Json out;
  if (loss.kind() == LossKind::Scaled) {
    if (loss.scale() == 1 && loss.at_nonreject() == 0 && loss.threshold() == 1) {
      out["canonical"] = true;
      return out;
    }
    out["scale"] = encode_number(loss.scale());
    out["L0"] = encode_number(loss.at_nonreject());
    out["C"] = encode_number(loss.threshold());
    return out;
  }
  out["L0"] = encode_number(loss.at_nonreject());
  out["C"] = encode_number(loss.threshold());
  Json entries = Json::array();
  for (const auto& [alpha, value] : loss.entries()) entries.push_back(Json::array({encode_number(alpha), encode_number(value)}));
  out["Lreject"] = std::move(entries);
  return out;
}

template <class T>
LossFunction<T> loss_from_json(const Json& j) {
  const std::string path = "/loss";
  if (!j.is_object()) fail(path, "expected an object");
  if (j.contains("canonical")) {
    only_keys(j, {"canonical"}, path);
    if (j["canonical"] != true) fail(path + "/canonical", "must be true");
    return LossFunction<T>::canonical();
  }
  const T l0 = j.contains("L0") ? decode_number<T>(j["L0"], path + "/L0") : T(0);
  const T c = j.contains("C") ? decode_number<T>(j["C"], path + "/C") : T(1);
  if (j.contains("scale")) {
    only_keys(j, {"scale", "L0", "C"}, path);
    const T scale = decode_number<T>(j["scale"], path + "/scale");
    return guarded(path, [&] { return LossFunction<T>::scaled(scale, l0, c); });
  }
  only_keys(j, {"L0", "C", "Lreject"}, path);
  const auto& table = field(j, "Lreject", path);
  if (!table.is_array()) fail(path + "/Lreject", "expected an array of [alpha, value] pairs");
  std::vector<std::pair<T, T>> entries;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto p = path + "/Lreject/" + std::to_string(i);
    if (!table[i].is_array() || table[i].size() != 2) fail(p, "expected [alpha, value]");
    entries.emplace_back(decode_number<T>(table[i][0], p + "/0"), decode_number<T>(table[i][1], p + "/1"));
  }
  return guarded(path, [&] { return LossFunction<T>::table(l0, c, std::move(entries)); });
}

template <class T>
Json scenario_to_json(const Scenario<T>& s) {
  Json out;
  out["schema"] = kScenarioSchema;
  if (!s.description.empty()) out["description"] = s.description;
  out["seed"] = s.seed;
  out["space"] = space_to_json(*s.space);
  if (s.family) out["family"] = family_to_json(*s.family);
  if (!s.levels.empty()) {
    Json levels = Json::object();
    for (const auto& [name, at] : s.levels) levels[name] = level_to_json(at);
    out["levels"] = std::move(levels);
  }
  out["notion"] = s.notion == NotionKind::MeanLevel ? "mean_level" : "general";
  if (s.rho) out["rho"] = rho_to_json(*s.rho);
  if (s.loss) out["loss"] = loss_to_json(*s.loss);
  if (!s.a_grid.empty()) out["a_grid"] = number_list(s.a_grid);
  if (s.monotonicity) out["monotonicity"] = Json{{"valid", s.monotonicity->valid}, {"weaker", s.monotonicity->weaker}};
  return out;
}

template <class T>
Scenario<T> scenario_from_json(const Json& j) {
  only_keys(j,
            {"schema", "description", "backend", "seed", "space", "family", "levels", "notion", "rho", "loss",
             "a_grid", "monotonicity"},
            "");
  const auto schema = text(field(j, "schema", ""), "/schema");
  if (schema != kScenarioSchema) fail("/schema", "unsupported schema \"" + schema + "\"");
  if (j.contains("backend")) guarded("/backend", [&] { return parse_backend(text(j["backend"], "/backend")); });

  Scenario<T> s;
  if (j.contains("description")) s.description = text(j["description"], "/description");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) fail("/seed", "expected a nonnegative integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  s.space = space_from_json<T>(field(j, "space", ""));
  if (j.contains("family")) s.family = family_from_json<T>(j["family"], s.space);
  if (j.contains("levels")) {
    const auto& levels = j["levels"];
    if (!levels.is_object()) fail("/levels", "expected an object of named levels");
    for (const auto& [name, value] : levels.items()) {
      s.levels.emplace(name, level_from_json<T>(value, s.space, "/levels/" + name));
    }
    if (!s.levels.empty() && !s.family) fail("/levels", "levels need a family");
  }
  if (j.contains("notion")) {
    const auto notion = text(j["notion"], "/notion");
    if (notion == "mean_level") {
      s.notion = NotionKind::MeanLevel;
    } else if (notion != "general") {
      fail("/notion", "expected \"general\" or \"mean_level\"");
    }
  }
  if (j.contains("rho")) s.rho = rho_from_json<T>(j["rho"]);
  if (j.contains("loss")) s.loss = loss_from_json<T>(j["loss"]);
  if (j.contains("a_grid")) s.a_grid = number_array<T>(j["a_grid"], "/a_grid");
  if (j.contains("monotonicity")) {
    const auto& m = j["monotonicity"];
    only_keys(m, {"valid", "weaker"}, "/monotonicity");
    MonotonicityPair pair{text(field(m, "valid", "/monotonicity"), "/monotonicity/valid"),
                          text(field(m, "weaker", "/monotonicity"), "/monotonicity/weaker")};
    for (const auto* name : {&pair.valid, &pair.weaker}) {
      if (!s.levels.contains(*name)) fail("/monotonicity", "no level named \"" + *name + "\"");
    }
    s.monotonicity = std::move(pair);
  }
  return s;
}

template <class T>
Json counterexample_to_json(const Counterexample<T>& cx) {
  Json out;
  out["property"] = std::string(property_name(cx.property));
  out["level"] = encode_number(cx.level);
  out["summary"] = cx.summary;
  Json values = Json::object();
  for (const auto& [k, v] : cx.values) values[k] = v;
  out["values"] = std::move(values);
  out["scenario"] = scenario_to_json(cx.scenario);
  return out;
}

template <class T>
Counterexample<T> counterexample_from_json(const Json& j) {
  only_keys(j, {"property", "level", "summary", "values", "scenario"}, "/counterexample");
  Counterexample<T> cx;
  cx.property = parse_property(text(field(j, "property", "/counterexample"), "/counterexample/property"));
  cx.level = decode_number<T>(field(j, "level", "/counterexample"), "/counterexample/level");
  if (j.contains("summary")) cx.summary = text(j["summary"], "/counterexample/summary");
  if (j.contains("values")) {
    for (const auto& [k, v] : j["values"].items()) cx.values.emplace_back(k, text(v, "/counterexample/values/" + k));
  }
  cx.scenario = scenario_from_json<T>(field(j, "scenario", "/counterexample"));
  return cx;
}

template <class T>
Json report_to_json(const AuditReport<T>& r) {
  Json out;
  out["audit"] = std::string(audit_name(r.kind));
  out["notion"] = r.notion;
  out["passed"] = r.passed;
  out["seed"] = r.seed;
  out["cases_checked"] = r.cases_checked;
  out["violations"] = r.violations;
  out["grids"] = r.grids;
  out["notes"] = r.notes;
  Json cxs = Json::array();
  for (const auto& cx : r.counterexamples) cxs.push_back(counterexample_to_json(cx));
  out["counterexamples"] = std::move(cxs);
  return out;
}

template <class T>
Json evalue_to_json(const EValue<T>& e) {
  Json evidence = Json::object();
  const auto numeric = e.numeric();
  for (std::size_t x = 0; x < e.size(); ++x) evidence[e.space()->outcomes()[x]] = encode_number(numeric[x]);
  return Json{{"evidence", std::move(evidence)}};
}

template <class T>
RandomVariable<T> evidence_from_json(const Json& j, const SpacePtr<T>& space) {
  const auto& evidence = field(j, "evidence", "");
  if (!evidence.is_object()) fail("/evidence", "expected an object keyed by outcome");
  std::vector<Extended<T>> values(space->size());
  std::vector<bool> seen(space->size(), false);
  for (const auto& [id, v] : evidence.items()) {
    if (!space->contains(id)) fail("/evidence/" + id, "unknown outcome");
    const auto x = space->index_of(id);
    values[x] = decode_extended<T>(v, "/evidence/" + id);
    if (values[x] < Extended<T>(T(0))) fail("/evidence/" + id, "evidence must be nonnegative");
    seen[x] = true;
  }
  for (std::size_t x = 0; x < seen.size(); ++x) {
    if (!seen[x]) fail("/evidence", "missing outcome \"" + space->outcomes()[x] + "\"");
  }
  return RandomVariable<T>(space, std::move(values));
}

namespace {

template <class T>
Json posthoc_to_json(const PosthocValidity<T>& v) {
  Json out;
  out["valid"] = v.valid;
  out["certifying"] = v.certifying;
  out["expected_evalue"] = encode_number(v.expected_evalue);
  out["witness"] = Json{{"n", v.witness_n},
                        {"alpha_tilde", level_to_json(v.witness)},
                        {"score", encode_number(v.witness_verdict.score)},
                        {"valid", v.witness_verdict.valid}};
  return out;
}

}  // namespace

template <class T>
Json evalue_report_to_json(const EValueReport<T>& r) {
  Json out = evalue_to_json(r.e);
  out["expected_evalue"] = encode_number(r.expected_evalue);
  out["posthoc"] = posthoc_to_json(r.family);
  out["closure_posthoc"] = posthoc_to_json(r.closure);
  Json implications = Json::array();
  for (const auto& i : r.implications) {
    implications.push_back(Json{{"name", i.name},
                                {"premise", i.premise},
                                {"conclusion", i.conclusion},
                                {"premise_holds", i.premise_holds},
                                {"conclusion_holds", i.conclusion_holds},
                                {"holds", i.holds},
                                {"witness", i.witness}});
  }
  out["implications"] = std::move(implications);
  return out;
}

#define POSTHOC_INSTANTIATE(T)                                                                          \
  template Json encode_number<T>(const T&);                                                             \
  template Json encode_number<T>(const Extended<T>&);                                                   \
  template T decode_number<T>(const Json&, const std::string&);                                         \
  template Extended<T> decode_extended<T>(const Json&, const std::string&);                             \
  template Json space_to_json<T>(const FiniteSpace<T>&);                                                \
  template SpacePtr<T> space_from_json<T>(const Json&);                                                 \
  template Json decision_to_json<T>(const Decision<T>&);                                                \
  template Decision<T> decision_from_json<T>(const Json&);                                              \
  template Json family_to_json<T>(const TestFamily<T>&);                                                \
  template TestFamily<T> family_from_json<T>(const Json&, const SpacePtr<T>&);                          \
  template Json level_to_json<T>(const DataDependentLevel<T>&);                                         \
  template DataDependentLevel<T> level_from_json<T>(const Json&, const SpacePtr<T>&, const std::string&); \
  template Json rho_to_json<T>(const CertaintyEquivalent<T>&);                                          \
  template CertaintyEquivalent<T> rho_from_json<T>(const Json&);                                        \
  template CertaintyEquivalent<T> parse_rho<T>(const std::string&);                                     \
  template Json loss_to_json<T>(const LossFunction<T>&);                                                \
  template LossFunction<T> loss_from_json<T>(const Json&);                                              \
  template Json scenario_to_json<T>(const Scenario<T>&);                                                \
  template Scenario<T> scenario_from_json<T>(const Json&);                                              \
  template Json counterexample_to_json<T>(const Counterexample<T>&);                                    \
  template Counterexample<T> counterexample_from_json<T>(const Json&);                                  \
  template Json report_to_json<T>(const AuditReport<T>&);                                               \
  template Json evalue_to_json<T>(const EValue<T>&);                                                    \
  template RandomVariable<T> evidence_from_json<T>(const Json&, const SpacePtr<T>&);                    \
  template Json evalue_report_to_json<T>(const EValueReport<T>&);

POSTHOC_INSTANTIATE(Rational)
POSTHOC_INSTANTIATE(double)

}  // namespace posthoc
