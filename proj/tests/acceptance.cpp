// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Every tolerance and runtime limit is pinned below.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "posthoc/axioms.hpp"
#include "posthoc/evalue.hpp"
#include "posthoc/generators.hpp"
#include "posthoc/serialize.hpp"

using namespace posthoc;

namespace {

using CE = CertaintyEquivalent<Rational>;
using Loss = LossFunction<Rational>;

constexpr double kLimitNesting = 5.0;
constexpr double kLimitPValueGrid = 1.0;
constexpr double kLimitReplication = 30.0;
constexpr double kLimitCompositeAudit = 60.0;
constexpr double kLimitEValue = 30.0;

constexpr std::size_t kPValueGridAtoms = 10000;
constexpr std::size_t kProfilesPerRegime = 1000;
constexpr std::size_t kSuitePerRegime = 500;
constexpr std::size_t kThresholdFamilies = 200;
constexpr std::size_t kLevelsPerFamily = 50;
constexpr std::size_t kTowerInstances = 1000;
constexpr std::size_t kAffineInstances = 1000;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(const char* id, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && elapsed >= limit_seconds && o.ok) {
    o.ok = false;
    o.detail = "runtime over limit";
  }
  if (!o.ok) ++failures;
  std::printf("%s %s  %s  [%.3f s", id, o.ok ? "PASS" : "FAIL", title, elapsed);
  if (limit_seconds > 0) std::printf(" < %.0f s", limit_seconds);
  std::printf("]%s%s\n", o.detail.empty() ? "" : "  ", o.detail.c_str());
  std::fflush(stdout);
}

std::string value_of(const Counterexample<Rational>& cx, const std::string& key) {
  for (const auto& [k, v] : cx.values) {
    if (k == key) return v;
  }
  return {};
}

Rational parse(const std::string& s) { return NumTraits<Rational>::parse(s); }

std::vector<CE> nesting_menu() { return {CE::expectation(), CE::esssup(), CE::power_mean(Rational(2)), CE::quantile(Rational(1, 2))}; }

std::filesystem::path source_dir() {
  const char* dir = std::getenv("POSTHOC_SOURCE_DIR");
  return dir != nullptr && *dir != '\0' ? std::filesystem::path(dir) : std::filesystem::path(POSTHOC_SOURCE_DIR);
}

Outcome nesting() {
  Outcome o;
  const auto alphas = level_grid<Rational>(1, 99, 1, 100);
  const auto ps = level_grid<Rational>(0, 100, 1, 100);
  const Rational step(1, 100);
  for (const auto& rho : nesting_menu()) {
    o.require(check_nesting(rho, Loss::canonical(), alphas, ps, Execution::Parallel).passed,
              rho.name() + " fails nesting with the canonical loss");
    for (const Rational& scale : {Rational(11, 10), Rational(9, 10)}) {
      const auto r = check_nesting(rho, Loss::scaled(scale), alphas, ps, Execution::Parallel);
      o.require(!r.passed && !r.counterexamples.empty(), rho.name() + " passes a scaled loss");
      if (r.counterexamples.empty()) continue;
      const auto& cx = r.counterexamples.front();
      const Rational alpha = parse(value_of(cx, "alpha"));
      const Rational p = parse(value_of(cx, "p"));
      if (scale > 1) {
        o.require(p == alpha, rho.name() + " inflated counterexample off the diagonal");
      } else {
        o.require(p > alpha && p <= alpha / scale && p - alpha <= step,
                  rho.name() + " deflated counterexample not adjacent to alpha/scale");
      }
      o.require(recheck(cx), rho.name() + " counterexample does not recheck");
    }
  }
  if (o.ok) o.detail = "4 rho x 99 x 101 grid; scale 1.1 hits p = alpha, scale 0.9 hits (0.09, 0.1)";
  return o;
}

Outcome pvalue_grid() {
  Outcome o;
  const auto ex = pvalue_grid_scenario<Rational>(kPValueGridAtoms);
  const auto fixed = strong_conditional_validity(ex.phi, ex.fixed);
  o.require(fixed.worst_ratio == 1, "fixed-level conditional ratio is not exactly 1");
  const auto weak = general_validity(ex.phi, ex.conservative, CE::esssup(), Loss::canonical());
  o.require(weak.score.is_finite() && weak.score.value() == 50, "esssup score at the conservative level is not 50");
  o.require(dominates(ex.phi, ex.conservative, ex.fixed), "conservative level does not dominate");
  const auto r = check_monotonicity(ex.phi, ex.fixed, ex.conservative,
                                    ValidityNotion<Rational>::general(CE::esssup(), Loss::canonical()));
  o.require(!r.passed && !r.counterexamples.empty(), "monotonicity audit does not flag esssup");
  if (o.ok) o.detail = "ratio 1, esssup score 50, dominance holds, monotonicity flagged";
  return o;
}

Outcome replication() {
  Outcome o;
  const auto suite = generate_profile_suite<Rational>(kSeed, kProfilesPerRegime);
  std::vector<char> good(suite.size(), 0);
  for_each_index(suite.size(), Execution::Parallel, [&](std::size_t i) {
    const auto& y = suite[i];
    const bool sub = i % 2 == 0;
    const auto b = sub ? replicate_subcritical(y, Loss::canonical()) : replicate_supercritical(y, Loss::canonical());
    const auto back = conditional_loss_profile(b.phi, b.alpha_tilde, Loss::canonical()).values;
    bool ok = back.values() == y.values();
    if (sub) {
      ok = ok && classical_validity(b.phi, b.a).reject_probability <= b.a;
      ok = ok && std::all_of(b.alpha_tilde.levels().begin(), b.alpha_tilde.levels().end(),
                             [&](const Rational& l) { return l >= b.a; });
    } else {
      ok = ok && probability_at_least(b.phi, b.alpha_tilde, b.a) > b.a;
    }
    good[i] = ok ? 1 : 0;
  });
  const auto bad = std::find(good.begin(), good.end(), 0);
  o.require(bad == good.end(), "suite profile #" + std::to_string(bad - good.begin()) + " breaks the construction");
  if (o.ok) o.detail = std::to_string(kProfilesPerRegime) + " profiles per regime, exact";
  return o;
}

Outcome composite_audit() {
  Outcome o;
  const auto suite = generate_profile_suite<Rational>(kSeed, kSuitePerRegime);
  const auto pass = check_replication(CE::expectation(), suite, kSeed, Execution::Parallel);
  o.require(pass.passed, "expectation fails the composite audit");
  for (const auto& rho : {CE::esssup(), CE::power_mean(Rational(2)), CE::quantile(Rational(1, 2)),
                          CE::quantile(Rational(9, 10))}) {
    const auto r = check_replication(rho, suite, kSeed, Execution::Parallel);
    o.require(!r.passed && !r.counterexamples.empty(), rho.name() + " survives the composite audit");
    for (const auto& cx : r.counterexamples) o.require(recheck(cx), rho.name() + " counterexample does not recheck");
  }
  const auto again = check_replication(CE::quantile(Rational(1, 2)), suite, kSeed, Execution::Serial);
  const auto first = check_replication(CE::quantile(Rational(1, 2)), suite, kSeed, Execution::Parallel);
  o.require(report_to_json(again).dump() == report_to_json(first).dump(), "audit is not deterministic per seed");
  if (o.ok) o.detail = std::to_string(suite.size()) + " profiles; expectation passes, 4 others refuted";
  return o;
}

void cross_check(Outcome& o, const TestFamily<Rational>& phi, const DataDependentLevel<Rational>& at,
                 const std::string& where) {
  const auto expectation = general_validity(phi, at, CE::expectation(), Loss::canonical());
  const auto esssup = general_validity(phi, at, CE::esssup(), Loss::canonical());
  o.require(expectation.valid == (expected_distortion_ratio(phi, at) <= 1), where + ": expectation verdict differs");
  o.require(strong_conditional_validity(phi, at).valid == esssup.valid, where + ": strong conditional differs");
}

Outcome cross_notion() {
  Outcome o;
  std::size_t scenarios = 0;
  for (const auto& entry : std::filesystem::directory_iterator(source_dir() / "configs")) {
    if (entry.path().extension() != ".json") continue;
    const auto s = scenario_from_json<Rational>(Json::parse(std::ifstream(entry.path())));
    if (!s.family) continue;
    for (const auto& [name, at] : s.levels) {
      cross_check(o, *s.family, at, entry.path().filename().string() + ":" + name);
      ++scenarios;
    }
  }
  o.require(scenarios > 0, "no config scenarios found under " + (source_dir() / "configs").string());
  const auto ex = pvalue_grid_scenario<Rational>(kPValueGridAtoms);
  cross_check(o, ex.phi, ex.fixed, "pvalue_grid:fixed");
  cross_check(o, ex.phi, ex.conservative, "pvalue_grid:conservative");
  const auto ml = mean_level_counterexample_scenario<Rational>();
  cross_check(o, *ml.family, ml.level("alpha_tilde"), "mean_level");
  scenarios += 3;
  const auto suite = generate_profile_suite<Rational>(kSeed, 100);
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const auto b = i % 2 == 0 ? replicate_subcritical(suite[i], Loss::canonical())
                              : replicate_supercritical(suite[i], Loss::canonical());
    cross_check(o, b.phi, b.alpha_tilde, "replication #" + std::to_string(i));
    ++scenarios;
  }
  Rng rng(kSeed);
  for (int i = 0; i < 1000; ++i) {
    const auto s = random_space<Rational>(rng, static_cast<std::size_t>(rng.between(1, 6)), true);
    const auto phi = rng.chance(1, 2) ? random_threshold_family<Rational>(rng, s) : random_coupled_family<Rational>(rng, s);
    cross_check(o, phi, random_level<Rational>(rng, s), "random #" + std::to_string(i));
    ++scenarios;
  }
  if (o.ok) o.detail = std::to_string(scenarios) + " scenarios";
  return o;
}

Outcome evalues() {
  Outcome o;
  Rng rng(kSeed);
  for (std::size_t f = 0; f < kThresholdFamilies; ++f) {
    const auto s = random_space<Rational>(rng, static_cast<std::size_t>(rng.between(1, 8)), true);
    const auto phi = random_threshold_family<Rational>(rng, s);
    for (std::size_t k = 0; k < kLevelsPerFamily; ++k) {
      o.require(bounded_by_evalue(phi, random_level<Rational>(rng, s)), "phi(alpha~) exceeds e_phi");
    }
    const auto c = closure(phi);
    o.require(evalue_of_family(c.closure) == evalue_of_family(phi), "closure changed the e-value");
    // Independent E[e]: sum of mass / kappa, infinite on positive mass at kappa = 0.
    bool infinite = false;
    Rational mean = 0;
    for (std::size_t x = 0; x < s->size(); ++x) {
      const Rational& kappa = phi.values()[x];
      if (s->mass(x) == 0 || kappa == 1) continue;
      if (kappa == 0) {
        infinite = true;
      } else {
        mean += s->mass(x) / kappa;
      }
    }
    o.require(posthoc_validity(phi).valid == (!infinite && mean <= 1), "post-hoc validity disagrees with E[e] <= 1");
  }
  const auto lr = scenario_from_json<Rational>(
      Json::parse(std::ifstream(source_dir() / "configs" / "likelihood_ratio.json")));
  const auto lr_verdict = posthoc_validity(*lr.family);
  o.require(lr_verdict.valid && lr_verdict.expected_evalue.is_finite() && lr_verdict.expected_evalue.value() == 1,
            "likelihood-ratio scenario does not have E[e] = 1");
  const auto pv = posthoc_validity(pvalue_family<Rational>(100));
  o.require(!pv.valid && !pv.witness_verdict.valid, "p-value scenario is not refuted by its witness");
  o.require(!level_to_json(pv.witness).empty(), "p-value witness not emitted");
  if (o.ok) o.detail = std::to_string(kThresholdFamilies) + " families x " + std::to_string(kLevelsPerFamily) +
                       " levels; LR E[e] = 1; p-value witness n = " + std::to_string(pv.witness_n);
  return o;
}

Outcome comparator() {
  Outcome o;
  const auto s = mean_level_counterexample_scenario<Rational>();
  const auto& at = s.level("alpha_tilde");
  o.require(mean_level_validity(*s.family, at).valid, "mean-level validity does not pass");
  const auto r = mean_level_comparator(*s.family, at, s.a_grid);
  o.require(!r.passed && !r.counterexamples.empty(), "preservation does not fail");
  const auto linked = [&](const std::string& fragment) {
    return std::any_of(r.notes.begin(), r.notes.end(),
                       [&](const std::string& n) { return n.find(fragment) != std::string::npos; });
  };
  o.require(linked("mean_level_validity: pass") && linked("check_preservation under mean_level"),
            "report does not link the two verdicts");
  if (!r.counterexamples.empty()) o.require(recheck(r.counterexamples.front()), "counterexample does not recheck");
  if (o.ok) o.detail = "mean-level pass, preservation fail at a = " + num::format(r.counterexamples.front().level);
  return o;
}

Outcome tower_and_affine() {
  Outcome o;
  Rng rng(kSeed);
  for (std::size_t i = 0; i < kTowerInstances; ++i) {
    const auto s = random_space<Rational>(rng, static_cast<std::size_t>(rng.between(1, 8)), true);
    const auto x = random_variable<Rational>(rng, s);
    const auto pi = random_partition<Rational>(rng, s, 4);
    o.require(expectation(conditional_expectation(x, pi).values) == expectation(x), "tower property fails");
  }
  const auto grid = level_grid<Rational>(1, 99, 1, 100);
  for (std::size_t i = 0; i < kAffineInstances; ++i) {
    const Rational scale = num::make<Rational>(rng.between(1, 30), 10);
    const Rational a = num::make<Rational>(rng.between(1, 50), rng.between(1, 9));
    const Rational b = num::make<Rational>(rng.between(-30, 30), 11);
    const auto loss = Loss::scaled(scale);
    const auto moved = loss.affine(a, b);
    const auto s = random_space<Rational>(rng, static_cast<std::size_t>(rng.between(1, 5)), true);
    const auto phi = random_coupled_family<Rational>(rng, s);
    const auto at = random_level<Rational>(rng, s);
    for (const auto& alpha : {grid[static_cast<std::size_t>(rng.between(0, 98))], at[0]}) {
      o.require(normalize(moved).at_reject(alpha) == normalize(loss).at_reject(alpha), "normalization moved");
    }
    const auto rho = rng.chance(1, 2) ? CE::expectation() : CE::esssup();
    o.require(general_validity(phi, at, rho, moved).valid == general_validity(phi, at, rho, loss).valid,
              "validity verdict changed under an affine transformation");
  }
  if (o.ok) o.detail = std::to_string(kTowerInstances) + " tower, " + std::to_string(kAffineInstances) + " affine";
  return o;
}

}  // namespace

int main() {
  criterion("AC1", "nesting audit over the full grid", kLimitNesting, nesting);
  criterion("AC2", "p-value grid monotonicity counterexample", kLimitPValueGrid, pvalue_grid);
  criterion("AC3", "replication constructions on random profiles", kLimitReplication, replication);
  criterion("AC4", "composite audit certifies expectation only", kLimitCompositeAudit, composite_audit);
  criterion("AC5", "cross-notion identities", 0, cross_notion);
  criterion("AC6", "e-value invariants and post-hoc validity", kLimitEValue, evalues);
  criterion("AC7", "mean-level comparator fails preservation", 0, comparator);
  criterion("AC8", "tower property and affine invariance", 0, tower_and_affine);
  std::printf("%s: %d failing criteria\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
