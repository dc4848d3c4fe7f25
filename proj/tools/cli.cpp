#include "cli.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "posthoc/axioms.hpp"
#include "posthoc/errors.hpp"
#include "posthoc/evalue.hpp"
#include "posthoc/generators.hpp"
#include "posthoc/serialize.hpp"

namespace posthoc::cli {

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

struct Common {
  std::optional<std::string> backend;
  std::optional<std::string> seed;
  std::string format = "json";
  std::string out;
  bool timings = false;
  bool serial = false;
  std::vector<std::string> argv;
};

struct AuditArgs {
  std::optional<std::string> rho;
  bool canonical_loss = false;
  std::optional<std::string> loss_scale;
  std::string config;
  std::size_t suite_size = 500;
  bool skip_builtin = false;
};

struct CounterexampleArgs {
  std::string kind;
  std::size_t atoms = 10000;
  std::string ybar;
  std::string mass;
  std::optional<std::string> a;
  std::optional<std::string> delta;
  std::optional<std::string> rho;
  std::string scenario_out;
};

struct EValueArgs {
  std::string config;
  std::string builtin;
  std::string evidence;
  std::size_t atoms = 100;
};

struct RecheckArgs {
  std::string report;
};

// Unsorted input is re-encoded with sorted keys before hashing.
std::string config_hash(const Json& effective) {
  const auto canonical = nlohmann::json::parse(effective.dump()).dump();
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << fnv1a(canonical);
  return s.str();
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << text;
}

void emit(const Common& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
  } else {
    write_file(c.out, text);
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Backend resolve_backend(const Common& c, const Json* config) {
  if (c.backend) return parse_backend(*c.backend);
  if (const char* env = std::getenv(kBackendEnv); env != nullptr && *env != '\0') {
    try {
      return parse_backend(env);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(kBackendEnv) + ": " + e.what());
    }
  }
  if (config != nullptr && config->is_object() && config->contains("backend")) {
    const auto& b = (*config)["backend"];
    if (!b.is_string()) throw ConfigError("/backend: expected a string");
    return parse_backend(b.get<std::string>());
  }
  return Backend::Rational;
}

std::optional<std::uint64_t> parse_seed(const Common& c) {
  if (!c.seed) return std::nullopt;
  std::uint64_t v = 0;
  const auto& s = *c.seed;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ConfigError("--seed must be a nonnegative integer");
  return v;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw ConfigError("empty entry in list '" + s + "'");
    out.push_back(item);
  }
  return out;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Json envelope(const char* schema, const char* command, const Common& c, Backend backend) {
  Json out;
  out["schema"] = schema;
  out["command"] = command;
  out["args"] = c.argv;
  out["backend"] = std::string(backend_name(backend));
  return out;
}

template <class T>
int run_audit(const Common& c, const AuditArgs& a, const std::optional<Json>& config, Backend backend,
              std::ostream& out) {
  std::optional<Scenario<T>> scenario;
  if (config) scenario = scenario_from_json<T>(*config);
  const auto rho = a.rho                       ? parse_rho<T>(*a.rho)
                   : scenario && scenario->rho ? *scenario->rho
                                               : CertaintyEquivalent<T>::expectation();
  auto loss = LossFunction<T>::canonical();
  if (a.loss_scale) {
    loss = LossFunction<T>::scaled(NumTraits<T>::parse(*a.loss_scale));
  } else if (!a.canonical_loss && scenario && scenario->loss) {
    loss = *scenario->loss;
  }
  const std::uint64_t seed = parse_seed(c).value_or(scenario ? scenario->seed : 0);
  const auto exec = c.serial ? Execution::Serial : Execution::Parallel;
  const auto notion = ValidityNotion<T>::general(rho, loss);
  const auto alphas = level_grid<T>(1, 99, 1, 100);
  const auto ps = level_grid<T>(0, 100, 1, 100);

  Json effective{{"command", "audit"},
                 {"rho", rho_to_json(rho)},
                 {"loss", loss_to_json(loss)},
                 {"seed", seed},
                 {"backend", std::string(backend_name(backend))},
                 {"suite_size", a.suite_size},
                 {"builtin", !a.skip_builtin},
                 {"scenario", scenario ? scenario_to_json(*scenario) : Json()}};

  if (c.format == "csv") {
    std::ostringstream csv;
    csv << "alpha,p,score,general_valid,classically_valid\n";
    for (const auto& row : nesting_grid(rho, loss, alphas, ps, exec)) {
      csv << num::format(row.alpha) << ',' << num::format(row.p) << ',' << row.score.format() << ','
          << (row.valid ? "true" : "false") << ',' << (row.classically_valid ? "true" : "false") << '\n';
    }
    emit(c, csv.str(), out);
    return kExitPass;
  }

  std::vector<AuditReport<T>> reports;
  Json timings = Json::object();
  auto timed = [&](const std::string& name, auto&& fn) {
    Stopwatch w;
    reports.push_back(fn());
    timings[name] = w.seconds();
  };

  timed("nesting", [&] { return check_nesting(rho, loss, alphas, ps, exec); });
  if (!a.skip_builtin) {
    timed("builtin_example_monotonicity", [&] {
      const auto ex = pvalue_grid_scenario<T>(10000);
      auto r = check_monotonicity(ex.phi, ex.fixed, ex.conservative, notion);
      r.notes.insert(r.notes.begin(), "builtin: " + ex.scenario(rho).description);
      return r;
    });
  }
  if (scenario && scenario->family) {
    const auto& phi = *scenario->family;
    const auto scenario_notion =
        scenario->notion == NotionKind::MeanLevel ? ValidityNotion<T>::mean_level() : notion;
    const std::string origin = "config: " + (scenario->description.empty() ? a.config : scenario->description);
    if (scenario->levels.contains("alpha_tilde")) {
      timed("config_preservation", [&] {
        const auto& at = scenario->level("alpha_tilde");
        auto r = scenario->notion == NotionKind::MeanLevel ? mean_level_comparator(phi, at, scenario->a_grid)
                                                           : check_preservation(phi, at, scenario_notion,
                                                                                scenario->a_grid);
        r.notes.insert(r.notes.begin(), origin);
        return r;
      });
    }
    if (scenario->monotonicity) {
      timed("config_monotonicity", [&] {
        auto r = check_monotonicity(phi, scenario->level(scenario->monotonicity->valid),
                                    scenario->level(scenario->monotonicity->weaker), scenario_notion);
        r.notes.insert(r.notes.begin(), origin);
        return r;
      });
    }
  }
  if (a.suite_size > 0) {
    timed("replication_suite", [&] {
      return check_replication(rho, generate_profile_suite<T>(seed, a.suite_size), seed, exec);
    });
  }

  bool passed = true;
  Json audits = Json::array();
  for (const auto& r : reports) {
    passed = passed && r.passed;
    audits.push_back(report_to_json(r));
  }
  Json report = envelope(kReportSchema, "audit", c, backend);
  report["seed"] = seed;
  report["config_hash"] = config_hash(effective);
  report["rho"] = rho.name();
  report["loss"] = loss.label();
  report["passed"] = passed;
  report["audits"] = std::move(audits);
  if (c.timings) report["timings"] = std::move(timings);
  emit(c, dump(report), out);
  return passed ? kExitPass : kExitFail;
}

template <class T>
RandomVariable<T> profile_from_args(const CounterexampleArgs& a) {
  if (a.ybar.empty()) throw ConfigError("--ybar is required for " + a.kind);
  const auto items = split_list(a.ybar);
  std::vector<T> y;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < items.size(); ++i) {
    y.push_back(NumTraits<T>::parse(items[i]));
    ids.push_back("y" + std::to_string(i + 1));
  }
  std::vector<T> mass;
  if (a.mass.empty()) {
    for (std::size_t i = 0; i < y.size(); ++i) mass.push_back(num::make<T>(1, static_cast<long>(y.size())));
  } else {
    for (const auto& m : split_list(a.mass)) mass.push_back(NumTraits<T>::parse(m));
    if (mass.size() != y.size()) throw ConfigError("--mass needs one entry per --ybar entry");
  }
  return RandomVariable<T>(make_space<T>(std::move(ids), std::move(mass)), y);
}

template <class T>
int run_counterexample(const Common& c, const CounterexampleArgs& a, Backend backend, std::ostream& out) {
  Json details;
  Scenario<T> scenario;
  AuditReport<T> report;
  if (a.kind == "esssup") {
    const auto rho = a.rho ? parse_rho<T>(*a.rho) : CertaintyEquivalent<T>::esssup();
    const auto ex = pvalue_grid_scenario<T>(a.atoms);
    scenario = ex.scenario(rho);
    const auto notion = scenario.validity_notion();
    report = check_monotonicity(ex.phi, ex.fixed, ex.conservative, notion);
    const auto canonical = LossFunction<T>::canonical();
    details["atoms"] = a.atoms;
    details["fixed_ratio"] = encode_number(expected_distortion_ratio(ex.phi, ex.fixed));
    details["conservative_ratio"] = encode_number(expected_distortion_ratio(ex.phi, ex.conservative));
    details["score_fixed"] = encode_number(general_validity(ex.phi, ex.fixed, rho, canonical).score);
    details["score_conservative"] = encode_number(general_validity(ex.phi, ex.conservative, rho, canonical).score);
    details["conservative_dominates_fixed"] = dominates(ex.phi, ex.conservative, ex.fixed);
  } else if (a.kind == "subcritical" || a.kind == "supercritical") {
    const bool sub = a.kind == "subcritical";
    const auto rho = a.rho ? parse_rho<T>(*a.rho)
                           : sub ? CertaintyEquivalent<T>::esssup()
                                 : CertaintyEquivalent<T>::quantile(num::make<T>(1, 2));
    const auto y = profile_from_args<T>(a);
    ReplicationOptions<T> opts;
    if (a.a) opts.a = NumTraits<T>::parse(*a.a);
    if (a.delta) opts.delta = NumTraits<T>::parse(*a.delta);
    const auto loss = LossFunction<T>::canonical();
    const auto b = sub ? replicate_subcritical(y, loss, opts) : replicate_supercritical(y, loss, opts);
    const auto space = b.phi.space();
    const auto fixed = DataDependentLevel<T>::constant(space, b.a);
    scenario.space = space;
    scenario.family = b.phi;
    scenario.levels.emplace("alpha_tilde", b.alpha_tilde);
    scenario.levels.emplace("fixed_a", fixed);
    scenario.rho = rho;
    scenario.loss = loss;
    scenario.description = a.kind + " replication of Ybar = {" + a.ybar + "}";
    const auto notion = scenario.validity_notion();
    if (sub) {
      scenario.monotonicity = MonotonicityPair{"fixed_a", "alpha_tilde"};
      report = check_monotonicity(b.phi, fixed, b.alpha_tilde, notion);
    } else {
      scenario.a_grid = {b.a};
      report = check_preservation(b.phi, b.alpha_tilde, notion, {b.a});
    }
    const auto profile = conditional_loss_profile(b.phi, b.alpha_tilde, loss).values;
    bool identity = true;
    for (std::size_t x = 0; x < y.size(); ++x) identity = identity && num::eq(profile[x], y[x]);
    details["regime"] = a.kind;
    details["a"] = encode_number(b.a);
    details["delta"] = encode_number(b.delta);
    details["M"] = encode_number(b.bound);
    details["mean_ybar"] = encode_number(expectation(RandomVariable<T>(space, b.ybar.values())));
    details["alpha_tilde"] = level_to_json(b.alpha_tilde);
    details["reject_probability"] = family_to_json(b.phi)["r"];
    details["event_probability"] = encode_number(b.event_probability());
    details["profile_identity"] = identity;
    details["rho_of_profile"] = encode_number(rho(RandomVariable<T>(space, b.ybar.values())));
    if (sub) {
      details["prob_reject_at_a"] = encode_number(classical_validity(b.phi, b.a).reject_probability);
    } else {
      details["prob_at_least_a"] = encode_number(probability_at_least(b.phi, b.alpha_tilde, b.a));
    }
  } else {
    throw ConfigError("unknown counterexample kind '" + a.kind + "'; expected esssup, subcritical or supercritical");
  }

  const bool found = !report.passed && !report.counterexamples.empty() && recheck(report.counterexamples.front());
  const auto scenario_json = scenario_to_json(scenario);
  Json doc = envelope(kReportSchema, "counterexample", c, backend);
  doc["kind"] = a.kind;
  doc["seed"] = scenario.seed;
  doc["config_hash"] = config_hash(Json{{"command", "counterexample"},
                                        {"backend", std::string(backend_name(backend))},
                                        {"scenario", scenario_json}});
  doc["passed"] = report.passed;
  doc["counterexample_found"] = found;
  doc["details"] = std::move(details);
  doc["audits"] = Json::array({report_to_json(report)});
  doc["scenario"] = scenario_json;
  if (!a.scenario_out.empty()) write_file(a.scenario_out, dump(scenario_json));
  emit(c, dump(doc), out);
  return found ? kExitPass : kExitFail;
}

template <class T>
int run_evalue(const Common& c, const EValueArgs& a, const std::optional<Json>& config, Backend backend,
               std::ostream& out) {
  std::optional<Scenario<T>> scenario;
  std::optional<TestFamily<T>> phi;
  std::string source;
  if (config) {
    scenario = scenario_from_json<T>(*config);
    if (!scenario->family) throw ConfigError("evalue needs a config with a family");
    phi = *scenario->family;
    source = "config:" + a.config;
  } else if (a.builtin == "likelihood-ratio") {
    auto p = make_space<T>({"x1", "x2", "x3", "x4"},
                           {num::make<T>(1, 4), num::make<T>(1, 4), num::make<T>(1, 8), num::make<T>(3, 8)});
    phi = likelihood_ratio_family<T>(p, {num::make<T>(1, 2), num::make<T>(1, 3), num::make<T>(1, 6), T(0)});
  } else if (a.builtin == "pvalue") {
    phi = pvalue_family<T>(a.atoms);
  } else if (a.builtin == "never-reject") {
    phi = TestFamily<T>::never_reject(uniform_space<T>(a.atoms));
  } else if (a.builtin == "reject-on-event") {
    auto space = uniform_space<T>(a.atoms);
    std::vector<T> r(a.atoms, T(0));
    r.front() = 1;
    phi = TestFamily<T>::coupled(space, std::move(r));
  } else {
    throw ConfigError("evalue needs --config or --builtin likelihood-ratio|pvalue|never-reject|reject-on-event");
  }
  if (source.empty()) source = "builtin:" + a.builtin;

  const auto harness = evalue_harness(*phi);
  const auto threshold = as_threshold(*phi);
  if (c.format == "csv") {
    std::ostringstream csv;
    csv << "outcome,mass,kappa,evidence\n";
    const auto numeric = harness.e.numeric();
    const auto& space = *phi->space();
    for (std::size_t x = 0; x < space.size(); ++x) {
      csv << space.outcomes()[x] << ',' << num::format(space.mass(x)) << ',' << num::format(threshold.values()[x])
          << ',' << numeric[x].format() << '\n';
    }
    emit(c, csv.str(), out);
    return kExitPass;
  }

  Json doc = envelope(kEValueSchema, "evalue", c, backend);
  doc["source"] = source;
  doc["seed"] = scenario ? scenario->seed : 0;
  doc["config_hash"] = config_hash(Json{{"command", "evalue"},
                                        {"backend", std::string(backend_name(backend))},
                                        {"source", scenario ? scenario_to_json(*scenario) : Json(source)},
                                        {"atoms", a.atoms}});
  doc["family"] = family_to_json(*phi);
  const auto body = evalue_report_to_json(harness);
  for (const auto& [k, v] : body.items()) doc[k] = v;
  if (scenario) {
    Json levels = Json::object();
    for (const auto& [name, at] : scenario->levels) {
      const auto profile = evidence_profile(*phi, at);
      Json evidence = Json::object();
      for (std::size_t x = 0; x < profile.size(); ++x) evidence[phi->space()->outcomes()[x]] = encode_number(profile[x]);
      levels[name] = Json{{"evidence", std::move(evidence)}, {"bounded_by_evalue", bounded_by_evalue(*phi, at)}};
    }
    doc["levels"] = std::move(levels);
  }
  bool passed = harness.family.valid && harness.all_hold();
  if (!a.evidence.empty()) {
    const auto supplied = evidence_from_json<T>(load_json(a.evidence), phi->space());
    const auto mean = expectation(supplied);
    const bool valid = num::le(mean, Extended<T>(T(1)));
    doc["supplied_evidence"] = Json{{"source", a.evidence}, {"expected", encode_number(mean)}, {"valid", valid}};
    passed = passed && valid;
  }
  doc["passed"] = passed;
  emit(c, dump(doc), out);
  return passed ? kExitPass : kExitFail;
}

template <class T>
int run_recheck(const Common& c, const RecheckArgs& a, const Json& report, Backend backend, std::ostream& out) {
  if (!report.is_object() || !report.contains("audits") || !report["audits"].is_array()) {
    throw ConfigError("'" + a.report + "' is not an audit or counterexample report");
  }
  Json rows = Json::array();
  bool all = true;
  for (const auto& audit : report["audits"]) {
    if (!audit.contains("counterexamples")) continue;
    for (const auto& cxj : audit["counterexamples"]) {
      const auto cx = counterexample_from_json<T>(cxj);
      const bool reproduced = recheck(cx);
      all = all && reproduced;
      rows.push_back(Json{{"audit", audit.value("audit", "")},
                          {"property", std::string(property_name(cx.property))},
                          {"summary", cx.summary},
                          {"reproduced", reproduced}});
    }
  }
  Json doc = envelope(kReportSchema, "recheck", c, backend);
  doc["source"] = a.report;
  doc["seed"] = report.value("seed", std::uint64_t{0});
  doc["config_hash"] = report.value("config_hash", std::string());
  doc["passed"] = all;
  doc["rechecked"] = std::move(rows);
  emit(c, dump(doc), out);
  return all ? kExitPass : kExitFail;
}

template <class Fn>
int dispatch(Backend backend, Fn&& fn) {
  if (backend == Backend::Double) return fn(double{});
  return fn(Rational{});
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--backend", c.backend, "Arithmetic backend: rational or double");
  sub->add_option("--seed", c.seed, "Seed for every random draw (default 0)");
  sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", c.out, "Write the report to this file instead of standard output");
  sub->add_flag("--timings", c.timings, "Include wall-clock timings");
  sub->add_flag("--serial", c.serial, "Run sweeps on the serial reference path");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"posthoc-lab: audits for validity notions under data-dependent significance levels"};
  app.name("posthoc-lab");
  app.require_subcommand(1);

  Common common;
  common.argv = args;
  AuditArgs audit;
  CounterexampleArgs cx;
  EValueArgs ev;
  RecheckArgs rc;

  auto* audit_cmd = app.add_subcommand("audit", "Run nesting, preservation, monotonicity and replication audits");
  add_common(audit_cmd, common);
  audit_cmd->add_option("--rho", audit.rho, "expectation, esssup, power_mean(q) or quantile(tau)");
  audit_cmd->add_flag("--canonical-loss", audit.canonical_loss, "Use the canonical loss 1/alpha");
  audit_cmd->add_option("--loss-scale", audit.loss_scale, "Use the loss scale/alpha");
  audit_cmd->add_option("--config", audit.config, "Scenario JSON file");
  audit_cmd->add_option("--suite-size", audit.suite_size, "Replication profiles per regime (0 skips the suite)");
  audit_cmd->add_flag("--skip-builtin", audit.skip_builtin, "Skip the built-in p-value grid monotonicity check");

  auto* cx_cmd = app.add_subcommand("counterexample", "Emit a self-contained counterexample scenario");
  add_common(cx_cmd, common);
  cx_cmd->add_option("kind", cx.kind, "esssup, subcritical or supercritical")->required();
  cx_cmd->add_option("--atoms", cx.atoms, "Grid size for esssup (multiple of 100)");
  cx_cmd->add_option("--ybar", cx.ybar, "Comma-separated normalized loss profile");
  cx_cmd->add_option("--mass", cx.mass, "Comma-separated masses (default uniform)");
  cx_cmd->add_option("--a", cx.a, "Fixed level a");
  cx_cmd->add_option("--delta", cx.delta, "Perturbation size delta");
  cx_cmd->add_option("--rho", cx.rho, "Certainty equivalent to expose");
  cx_cmd->add_option("--scenario-out", cx.scenario_out, "Also write the scenario JSON to this file");

  auto* ev_cmd = app.add_subcommand("evalue", "E-value of a family, post-hoc validity and closure checks");
  add_common(ev_cmd, common);
  ev_cmd->add_option("--config", ev.config, "Scenario JSON file with a family");
  ev_cmd->add_option("--builtin", ev.builtin, "likelihood-ratio, pvalue, never-reject or reject-on-event");
  ev_cmd->add_option("--atoms", ev.atoms, "Outcomes for the pvalue, never-reject and reject-on-event builtins");
  ev_cmd->add_option("--evidence", ev.evidence, "E-value JSON {\"evidence\": {...}} to check against the null");

  auto* rc_cmd = app.add_subcommand("recheck", "Re-verify every counterexample in a report");
  add_common(rc_cmd, common);
  rc_cmd->add_option("--report", rc.report, "Report JSON file")->required();

  std::vector<const char*> argv{"posthoc-lab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (audit_cmd->parsed()) {
      std::optional<Json> config;
      if (!audit.config.empty()) config = load_json(audit.config);
      const auto backend = resolve_backend(common, config ? &*config : nullptr);
      return dispatch(backend, [&](auto tag) {
        return run_audit<decltype(tag)>(common, audit, config, backend, out);
      });
    }
    if (cx_cmd->parsed()) {
      const auto backend = resolve_backend(common, nullptr);
      return dispatch(backend, [&](auto tag) { return run_counterexample<decltype(tag)>(common, cx, backend, out); });
    }
    if (ev_cmd->parsed()) {
      std::optional<Json> config;
      if (!ev.config.empty()) config = load_json(ev.config);
      const auto backend = resolve_backend(common, config ? &*config : nullptr);
      return dispatch(backend, [&](auto tag) {
        return run_evalue<decltype(tag)>(common, ev, config, backend, out);
      });
    }
    if (rc_cmd->parsed()) {
      const auto report = load_json(rc.report);
      const auto backend = resolve_backend(common, &report);
      return dispatch(backend, [&](auto tag) { return run_recheck<decltype(tag)>(common, rc, report, backend, out); });
    }
  } catch (const RandomizedEValue& e) {
    err << "refused: " << e.what() << '\n';
    return kExitUsage;
  } catch (const WrongRegime& e) {
    err << "wrong regime: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace posthoc::cli
