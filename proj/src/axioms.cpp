#include "posthoc/axioms.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "posthoc/errors.hpp"

namespace posthoc {

std::string_view property_name(Property p) {
  switch (p) {
    case Property::Nesting:
      return "nesting";
    case Property::Preservation:
      return "preservation";
    case Property::Monotonicity:
      return "monotonicity";
  }
  return "?";
}

std::string_view audit_name(AuditKind k) {
  switch (k) {
    case AuditKind::Nesting:
      return "nesting";
    case AuditKind::Preservation:
      return "preservation";
    case AuditKind::Monotonicity:
      return "monotonicity";
    case AuditKind::Replication:
      return "replication";
    case AuditKind::MeanLevelComparator:
      return "mean_level_comparator";
  }
  return "?";
}

Property parse_property(std::string_view text) {
  if (text == "nesting") return Property::Nesting;
  if (text == "preservation") return Property::Preservation;
  if (text == "monotonicity") return Property::Monotonicity;
  throw ConfigError("unknown property '" + std::string(text) + "'");
}

namespace {

template <class T>
std::string fmt(const T& v) {
  return num::format(v);
}

template <class T>
std::string grid_summary(std::string_view name, const std::vector<T>& grid) {
  if (grid.empty()) return std::string(name) + ": empty";
  return std::string(name) + ": " + std::to_string(grid.size()) + " points in [" + fmt(grid.front()) + ", " +
         fmt(grid.back()) + "]";
}

template <class T>
Scenario<T> base_scenario(const TestFamily<T>& phi, const ValidityNotion<T>& notion) {
  Scenario<T> s;
  s.space = phi.space();
  s.family = phi;
  s.notion = notion.kind();
  if (notion.kind() == NotionKind::General) {
    s.rho = notion.rho();
    s.loss = notion.loss();
  }
  return s;
}

template <class T>
AuditReport<T> new_report(AuditKind kind, std::string notion) {
  AuditReport<T> r;
  r.kind = kind;
  r.notion = std::move(notion);
  return r;
}

template <class T>
Counterexample<T> new_counterexample(Property property, Scenario<T> scenario, T level) {
  Counterexample<T> cx;
  cx.property = property;
  cx.scenario = std::move(scenario);
  cx.level = std::move(level);
  return cx;
}

template <class T>
std::vector<T> sorted_unique(std::vector<T> values) {
  std::sort(values.begin(), values.end());
  std::vector<T> out;
  for (auto& v : values) {
    if (out.empty() || !num::eq(out.back(), v)) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

template <class T>
std::vector<T> level_grid(long start, long stop, long step, long den) {
  if (step <= 0 || den <= 0) throw ContractViolation("grid step and denominator must be positive");
  std::vector<T> out;
  for (long k = start; k <= stop; k += step) out.push_back(num::make<T>(k, den));
  return out;
}

template <class T>
std::vector<NestingCase<T>> nesting_grid(const CertaintyEquivalent<T>& rho, const LossFunction<T>& loss,
                                         const std::vector<T>& alpha_grid, const std::vector<T>& p_grid,
                                         Execution exec) {
  normalize(loss);
  for (const auto& p : p_grid) {
    if (p < 0 || p > 1) throw ContractViolation("nesting p grid must lie in [0,1]");
  }
  const auto space = uniform_space<T>(1, "omega");
  std::vector<NestingCase<T>> cases(alpha_grid.size() * p_grid.size());
  for_each_index(cases.size(), exec, [&](std::size_t k) {
    const T& alpha = alpha_grid[k / p_grid.size()];
    const T& p = p_grid[k % p_grid.size()];
    // Reject on an externally randomized event B with P(B) = p.
    const auto phi = TestFamily<T>::coupled(space, {p});
    const auto at = DataDependentLevel<T>::constant(space, alpha);
    const auto v = general_validity(phi, at, rho, loss);
    cases[k] = NestingCase<T>{alpha, p, v.score, v.valid, classical_validity(phi, alpha).valid};
  });
  return cases;
}

template <class T>
AuditReport<T> check_nesting(const CertaintyEquivalent<T>& rho, const LossFunction<T>& loss,
                             const std::vector<T>& alpha_grid, const std::vector<T>& p_grid, Execution exec) {
  const auto cases = nesting_grid(rho, loss, alpha_grid, p_grid, exec);
  const auto notion = ValidityNotion<T>::general(rho, loss);
  auto report = new_report<T>(AuditKind::Nesting, notion.name());
  report.grids = {grid_summary("alpha", alpha_grid), grid_summary("p", p_grid)};
  report.cases_checked = cases.size();
  for (const auto& c : cases) {
    if (c.valid == c.classically_valid) continue;
    ++report.violations;
    if (!report.counterexamples.empty()) continue;
    const auto space = uniform_space<T>(1, "omega");
    auto cx = new_counterexample<T>(Property::Nesting, base_scenario(TestFamily<T>::coupled(space, {c.p}), notion), c.alpha);
    cx.scenario.levels.emplace("alpha_tilde", DataDependentLevel<T>::constant(space, c.alpha));
    cx.scenario.description = "nesting: reject with probability p at constant level alpha";
    cx.values = {{"alpha", fmt(c.alpha)},
                 {"p", fmt(c.p)},
                 {"score", c.score.format()},
                 {"threshold", fmt(loss.threshold())},
                 {"general_valid", c.valid ? "true" : "false"},
                 {"classically_valid", c.classically_valid ? "true" : "false"}};
    cx.summary = "at alpha=" + fmt(c.alpha) + ", p=" + fmt(c.p) + ": " + notion.name() + " says " +
                 (c.valid ? "valid" : "invalid") + " but classical validity says " +
                 (c.classically_valid ? "valid" : "invalid");
    report.counterexamples.push_back(std::move(cx));
  }
  report.passed = report.violations == 0;
  if (!rho.continuous_from_below()) report.notes.push_back(rho.name() + " is not continuous from below");
  return report;
}

template <class T>
T probability_at_least(const TestFamily<T>& phi, const DataDependentLevel<T>& alpha_tilde, const T& a) {
  require_same_space(phi.space(), alpha_tilde.space(), "probability_at_least");
  const auto& space = *phi.space();
  T total = 0;
  for (std::size_t x = 0; x < space.size(); ++x) {
    if (!num::le(alpha_tilde[x], a)) continue;
    total += space.mass(x) * phi.rejection_probability(x, alpha_tilde[x]);
  }
  return total;
}

template <class T>
AuditReport<T> check_preservation(const TestFamily<T>& phi, const DataDependentLevel<T>& alpha_tilde,
                                  const ValidityNotion<T>& notion, std::vector<T> a_grid) {
  std::erase_if(a_grid, [](const T& a) { return !(a > 0 && a < 1); });
  a_grid.insert(a_grid.end(), alpha_tilde.levels().begin(), alpha_tilde.levels().end());
  a_grid = sorted_unique(std::move(a_grid));

  auto report = new_report<T>(AuditKind::Preservation, notion.name());
  report.grids = {grid_summary("a", a_grid)};
  const auto verdict = notion.evaluate(phi, alpha_tilde);
  report.notes.push_back(notion.name() + " declares phi " + (verdict.valid ? "valid" : "invalid") +
                         " for alpha~ (score " + verdict.score.format() + ", threshold " + fmt(verdict.threshold) +
                         ")");
  if (!verdict.valid) {
    report.notes.push_back("premise false: preservation holds vacuously");
    return report;
  }
  for (const auto& a : a_grid) {
    ++report.cases_checked;
    const T p = probability_at_least(phi, alpha_tilde, a);
    if (num::le(p, a)) continue;
    ++report.violations;
    if (!report.counterexamples.empty()) continue;
    auto cx = new_counterexample<T>(Property::Preservation, base_scenario(phi, notion), a);
    cx.scenario.levels.emplace("alpha_tilde", alpha_tilde);
    cx.scenario.a_grid = {a};
    cx.scenario.description = "preservation: valid for alpha~ yet P(phi(alpha~) >= d_a) > a";
    cx.values = {{"a", fmt(a)},
                 {"prob_at_least", fmt(p)},
                 {"score", verdict.score.format()},
                 {"threshold", fmt(verdict.threshold)}};
    cx.summary = notion.name() + " declares phi valid, but P(phi(alpha~) >= d_a) = " + fmt(p) + " > a = " + fmt(a);
    report.counterexamples.push_back(std::move(cx));
  }
  report.passed = report.violations == 0;
  return report;
}

template <class T>
AuditReport<T> check_monotonicity(const TestFamily<T>& phi, const DataDependentLevel<T>& at_valid,
                                  const DataDependentLevel<T>& at_weaker, const ValidityNotion<T>& notion) {
  if (!dominates(phi, at_weaker, at_valid)) {
    throw ContractViolation("check_monotonicity: phi(at_weaker) <= phi(at_valid) does not hold pointwise");
  }
  auto report = new_report<T>(AuditKind::Monotonicity, notion.name());
  report.cases_checked = 1;
  const auto strong = notion.evaluate(phi, at_valid);
  const auto weak = notion.evaluate(phi, at_weaker);
  report.notes.push_back("score at valid level " + strong.score.format() + ", at weaker level " + weak.score.format() +
                         ", threshold " + fmt(strong.threshold));
  if (strong.valid && !weak.valid) {
    report.violations = 1;
    auto cx = new_counterexample<T>(Property::Monotonicity, base_scenario(phi, notion), T(0));
    cx.scenario.levels.emplace("valid", at_valid);
    cx.scenario.levels.emplace("weaker", at_weaker);
    cx.scenario.monotonicity = MonotonicityPair{"valid", "weaker"};
    cx.scenario.description = "monotonicity: a pointwise weaker decision is declared invalid";
    cx.values = {{"score_valid", strong.score.format()},
                 {"score_weaker", weak.score.format()},
                 {"threshold", fmt(strong.threshold)}};
    cx.summary = notion.name() + " accepts alpha~ (score " + strong.score.format() +
                 ") but rejects a pointwise weaker alpha~' (score " + weak.score.format() + ")";
    report.counterexamples.push_back(std::move(cx));
  }
  report.passed = report.violations == 0;
  return report;
}

template <class T>
bool recheck(const Counterexample<T>& cx) {
  const auto& s = cx.scenario;
  if (!s.family) throw ConfigError("counterexample has no test family");
  const auto notion = s.validity_notion();
  const auto& phi = *s.family;
  switch (cx.property) {
    case Property::Nesting: {
      const auto& at = s.level("alpha_tilde");
      return notion.evaluate(phi, at).valid != classical_validity(phi, cx.level).valid;
    }
    case Property::Preservation: {
      const auto& at = s.level("alpha_tilde");
      return notion.evaluate(phi, at).valid && !num::le(probability_at_least(phi, at, cx.level), cx.level);
    }
    case Property::Monotonicity: {
      if (!s.monotonicity) throw ConfigError("monotonicity counterexample without a level pair");
      const auto& valid = s.level(s.monotonicity->valid);
      const auto& weaker = s.level(s.monotonicity->weaker);
      if (!dominates(phi, weaker, valid)) return false;
      return notion.evaluate(phi, valid).valid && !notion.evaluate(phi, weaker).valid;
    }
  }
  return false;
}

template <class T>
T ReplicationBundle<T>::event_probability() const {
  return expectation(RandomVariable<T>(phi.space(), phi.values())).value();
}

namespace {

template <class T>
struct Normalized {
  RandomVariable<T> ybar;
  T mean;
  T bound;
};

template <class T>
Normalized<T> normalized_profile(const RandomVariable<T>& y, const LossFunction<T>& loss) {
  normalize(loss);
  const T& l0 = loss.at_nonreject();
  const T span = loss.threshold() - l0;
  std::vector<T> ybar;
  ybar.reserve(y.size());
  T bound = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i].is_infinite()) throw ContractViolation("replication needs Y bounded from above");
    if (y[i].value() < l0) throw ContractViolation("replication needs Y >= L(0)");
    ybar.push_back((y[i].value() - l0) / span);
    if (ybar.back() > bound) bound = ybar.back();
  }
  if (bound == 0) bound = 1;
  RandomVariable<T> rv(y.space(), ybar);
  const T mean = expectation(rv).value();
  return {std::move(rv), mean, bound};
}

template <class T>
ReplicationBundle<T> assemble(Regime regime, const RandomVariable<T>& y, const LossFunction<T>& loss,
                              Normalized<T> n, const T& a, const T& delta) {
  const T sign = regime == Regime::Subcritical ? T(1) : T(-1);
  std::vector<T> levels;
  std::vector<T> r;
  levels.reserve(y.size());
  r.reserve(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const T& yb = n.ybar[i].value();
    levels.push_back(a * (1 + sign * delta * yb / n.bound));
    // P(A | x) = alpha~ * ybar for A = {ybar >= U / alpha~}.
    r.push_back(levels.back() * yb);
  }
  const auto normalized = normalize(loss);
  if (!normalized.canonical_on(sorted_unique(levels))) {
    throw ContractViolation("replication requires the canonical normalized loss 1/alpha at the constructed levels");
  }
  auto space = y.space();
  return ReplicationBundle<T>{regime,
                              y,
                              std::move(n.ybar),
                              TestFamily<T>::coupled(space, std::move(r)),
                              DataDependentLevel<T>(space, std::move(levels)),
                              a,
                              delta,
                              std::move(n.bound)};
}

}  // namespace

template <class T>
ReplicationBundle<T> replicate_subcritical(const RandomVariable<T>& y, const LossFunction<T>& loss,
                                           const ReplicationOptions<T>& options) {
  auto n = normalized_profile(y, loss);
  if (!num::lt(n.mean, T(1))) {
    throw WrongRegime("subcritical replication needs E[Y] < C; normalized mean is " + fmt(n.mean));
  }
  const T half = num::make<T>(1, 2);
  T delta = options.delta.value_or(n.mean > 0 ? std::min(half, T(T(1) / n.mean - 1)) : half);
  const T cap = n.bound > 1 ? T(T(1) / n.bound) : T(1);
  T a = options.a.value_or(T(num::make<T>(9, 10) * cap / (1 + delta)));
  if (!(delta > 0)) throw ContractViolation("subcritical replication needs delta > 0");
  if (!num::le(T((1 + delta) * n.mean), T(1))) throw ContractViolation("subcritical replication needs (1+delta) E[Ybar] <= 1");
  if (!(a > 0 && a < 1)) throw ContractViolation("subcritical replication needs a in (0,1)");
  if (!(a * (1 + delta) < 1)) throw ContractViolation("subcritical replication needs a (1+delta) < 1");
  if (!num::le(T(a * (1 + delta) * n.bound), T(1))) throw ContractViolation("subcritical replication needs a (1+delta) M <= 1");
  return assemble(Regime::Subcritical, y, loss, std::move(n), a, delta);
}

template <class T>
ReplicationBundle<T> replicate_supercritical(const RandomVariable<T>& y, const LossFunction<T>& loss,
                                             const ReplicationOptions<T>& options) {
  auto n = normalized_profile(y, loss);
  if (!num::lt(T(1), n.mean)) {
    throw WrongRegime("supercritical replication needs E[Y] > C; normalized mean is " + fmt(n.mean));
  }
  const T half = num::make<T>(1, 2);
  T delta = options.delta.value_or(T(half * (1 - T(1) / n.mean)));
  T a = options.a.value_or(std::min(half, T(T(1) / n.bound)));
  if (!(delta > 0 && delta < 1)) throw ContractViolation("supercritical replication needs delta in (0,1)");
  if (!((1 - delta) * n.mean > 1)) throw ContractViolation("supercritical replication needs (1-delta) E[Ybar] > 1");
  if (!(a > 0 && a < 1)) throw ContractViolation("supercritical replication needs a in (0,1)");
  if (!num::le(T(a * n.bound), T(1))) throw ContractViolation("supercritical replication needs a M <= 1");
  return assemble(Regime::Supercritical, y, loss, std::move(n), a, delta);
}

namespace {

enum class Outcome { Clean, Monotonicity, Preservation, Boundary };

template <class T>
struct SuiteResult {
  Outcome outcome = Outcome::Clean;
  std::optional<Counterexample<T>> counterexample;
  std::string note;
};

template <class T>
Counterexample<T> bundle_counterexample(const ReplicationBundle<T>& b, const ValidityNotion<T>& notion,
                                        const Validity<T>& verdict, std::size_t index) {
  const bool sub = b.regime == Regime::Subcritical;
  auto cx = new_counterexample<T>(sub ? Property::Monotonicity : Property::Preservation, base_scenario(b.phi, notion), b.a);
  cx.scenario.levels.emplace("alpha_tilde", b.alpha_tilde);
  cx.scenario.levels.emplace("fixed_a", DataDependentLevel<T>::constant(b.phi.space(), b.a));
  if (sub) {
    cx.scenario.monotonicity = MonotonicityPair{"fixed_a", "alpha_tilde"};
  } else {
    cx.scenario.a_grid = {b.a};
  }
  cx.scenario.description = std::string(sub ? "subcritical" : "supercritical") + " replication of suite profile #" +
                            std::to_string(index);
  const T p = b.event_probability();
  cx.values = {{"suite_index", std::to_string(index)},
               {"mean_y", fmt(expectation(b.y).value())},
               {"rho_y", verdict.score.format()},
               {"a", fmt(b.a)},
               {"delta", fmt(b.delta)},
               {"M", fmt(b.bound)},
               {sub ? "prob_reject_at_a" : "prob_at_least", fmt(p)}};
  if (sub) {
    cx.summary = notion.rho().name() + " rejects a profile with E[Y] = " + fmt(expectation(b.y).value()) +
                 " < 1 that is pointwise dominated by the classically valid level " + fmt(b.a);
  } else {
    cx.summary = notion.rho().name() + " accepts a profile with E[Y] = " + fmt(expectation(b.y).value()) +
                 " > 1 whose rejections at level <= " + fmt(b.a) + " have probability " + fmt(p);
  }
  return cx;
}

}  // namespace

template <class T>
AuditReport<T> check_replication(const CertaintyEquivalent<T>& rho, const std::vector<RandomVariable<T>>& suite,
                              std::uint64_t seed, Execution exec) {
  const auto loss = LossFunction<T>::canonical();
  const auto notion = ValidityNotion<T>::general(rho, loss);
  auto report = new_report<T>(AuditKind::Replication, notion.name());
  report.seed = seed;

  const auto precondition =
      check_nesting(rho, loss, level_grid<T>(1, 9, 1, 10), level_grid<T>(0, 10, 1, 10), Execution::Serial);
  if (!precondition.passed) throw std::logic_error("canonical loss failed the nesting precondition");
  report.notes.push_back("nesting precondition with the canonical loss: pass");
  if (!rho.continuous_from_below()) {
    report.notes.push_back(rho.name() + " is not continuous from below; the pinning argument does not cover it");
  }

  std::vector<SuiteResult<T>> results(suite.size());
  for_each_index(suite.size(), exec, [&](std::size_t i) {
    const auto& y = suite[i];
    const T mean = expectation(y).value();
    auto& out = results[i];
    if (mean == 1) {
      out.outcome = Outcome::Boundary;
      out.note = "suite profile #" + std::to_string(i) + " has E[Y] = 1 (boundary); " + rho.name() + "(Y) = " +
                 rho(y).format() + ", informative only";
      return;
    }
    const bool sub = num::lt(mean, T(1));
    const auto bundle = sub ? replicate_subcritical(y, loss) : replicate_supercritical(y, loss);
    const auto verdict = general_validity(bundle.phi, bundle.alpha_tilde, rho, loss);
    if (sub && !verdict.valid) {
      out.outcome = Outcome::Monotonicity;
    } else if (!sub && verdict.valid) {
      out.outcome = Outcome::Preservation;
    } else {
      return;
    }
    out.counterexample = bundle_counterexample(bundle, notion, verdict, i);
  });

  std::size_t sub = 0, super = 0, boundary = 0;
  bool have_mono = false, have_pres = false;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    auto& r = results[i];
    if (r.outcome == Outcome::Boundary) {
      ++boundary;
      report.notes.push_back(std::move(r.note));
      continue;
    }
    (num::lt(expectation(suite[i]).value(), T(1)) ? sub : super) += 1;
    if (r.outcome == Outcome::Clean) continue;
    ++report.violations;
    bool& have = r.outcome == Outcome::Monotonicity ? have_mono : have_pres;
    if (!have) {
      report.counterexamples.push_back(std::move(*r.counterexample));
      have = true;
    }
  }
  report.cases_checked = suite.size();
  report.grids = {"suite: " + std::to_string(suite.size()) + " profiles (" + std::to_string(sub) + " subcritical, " +
                  std::to_string(super) + " supercritical, " + std::to_string(boundary) + " boundary)"};
  report.passed = report.violations == 0;
  return report;
}

template <class T>
Scenario<T> PValueGrid<T>::scenario(const CertaintyEquivalent<T>& rho) const {
  Scenario<T> s;
  s.space = space;
  s.family = phi;
  s.levels.emplace("fixed", fixed);
  s.levels.emplace("conservative", conservative);
  s.rho = rho;
  s.loss = LossFunction<T>::canonical();
  s.monotonicity = MonotonicityPair{"fixed", "conservative"};
  s.a_grid = {num::make<T>(1, 100), num::make<T>(2, 100)};
  s.description = "uniform p-value grid with " + std::to_string(space->size()) +
                  " atoms; fixed level 0.01 versus the conservative level 0.02 on {p <= 0.01}";
  return s;
}

template <class T>
PValueGrid<T> pvalue_grid_scenario(std::size_t n_atoms) {
  if (n_atoms == 0 || n_atoms % 100 != 0) {
    throw ContractViolation("p-value grid size must be a positive multiple of 100");
  }
  auto space = uniform_space<T>(n_atoms, "u");
  const T one_percent = num::make<T>(1, 100);
  const T two_percent = num::make<T>(2, 100);
  std::vector<T> p;
  std::vector<T> conservative;
  p.reserve(n_atoms);
  conservative.reserve(n_atoms);
  for (std::size_t i = 1; i <= n_atoms; ++i) {
    p.push_back(num::make<T>(static_cast<long>(i), static_cast<long>(n_atoms)));
    conservative.push_back(num::le(p.back(), one_percent) ? two_percent : one_percent);
  }
  return PValueGrid<T>{space, TestFamily<T>::threshold(space, std::move(p)),
                     DataDependentLevel<T>::constant(space, one_percent),
                     DataDependentLevel<T>(space, std::move(conservative))};
}

template <class T>
Scenario<T> mean_level_counterexample_scenario() {
  auto space = make_space<T>({"s", "t"}, {num::make<T>(1, 2), num::make<T>(1, 2)});
  Scenario<T> s;
  s.space = space;
  // kappa = 0 on s: rejects at every level there; never rejects on t.
  s.family = TestFamily<T>::threshold(space, {T(0), T(1)});
  s.levels.emplace("alpha_tilde", DataDependentLevel<T>(space, {num::make<T>(1, 10), num::make<T>(19, 20)}));
  s.notion = NotionKind::MeanLevel;
  s.a_grid = level_grid<T>(1, 99, 1, 100);
  s.description = "mean-level comparator: reject on half the mass at level 0.1, never at level 0.95";
  return s;
}

template <class T>
AuditReport<T> mean_level_comparator(const TestFamily<T>& phi, const DataDependentLevel<T>& alpha_tilde,
                                     std::vector<T> a_grid) {
  const auto mean = mean_level_validity(phi, alpha_tilde);
  auto report = check_preservation(phi, alpha_tilde, ValidityNotion<T>::mean_level(), std::move(a_grid));
  report.kind = AuditKind::MeanLevelComparator;
  report.notes.insert(report.notes.begin(),
                      std::string("mean_level_validity: ") + (mean.valid ? "pass" : "fail") + " (P(reject) = " +
                          fmt(mean.reject_probability) + ", E[alpha~] = " + fmt(mean.mean_level) + ")");
  report.notes.push_back(std::string("check_preservation under mean_level on the same (phi, alpha~): ") +
                         (report.passed ? "pass" : "fail"));
  return report;
}

#define POSTHOC_INSTANTIATE(T)                                                                                     \
  template bool recheck<T>(const Counterexample<T>&);                                                              \
  template std::vector<T> level_grid<T>(long, long, long, long);                                                   \
  template std::vector<NestingCase<T>> nesting_grid<T>(const CertaintyEquivalent<T>&, const LossFunction<T>&,      \
                                                       const std::vector<T>&, const std::vector<T>&, Execution);   \
  template AuditReport<T> check_nesting<T>(const CertaintyEquivalent<T>&, const LossFunction<T>&,                 \
                                           const std::vector<T>&, const std::vector<T>&, Execution);               \
  template T probability_at_least<T>(const TestFamily<T>&, const DataDependentLevel<T>&, const T&);                \
  template AuditReport<T> check_preservation<T>(const TestFamily<T>&, const DataDependentLevel<T>&,               \
                                                const ValidityNotion<T>&, std::vector<T>);                         \
  template AuditReport<T> check_monotonicity<T>(const TestFamily<T>&, const DataDependentLevel<T>&,               \
                                                const DataDependentLevel<T>&, const ValidityNotion<T>&);           \
  template struct ReplicationBundle<T>;                                                                            \
  template ReplicationBundle<T> replicate_subcritical<T>(const RandomVariable<T>&, const LossFunction<T>&,        \
                                                         const ReplicationOptions<T>&);                            \
  template ReplicationBundle<T> replicate_supercritical<T>(const RandomVariable<T>&, const LossFunction<T>&,      \
                                                           const ReplicationOptions<T>&);                          \
  template AuditReport<T> check_replication<T>(const CertaintyEquivalent<T>&, const std::vector<RandomVariable<T>>&, \
                                            std::uint64_t, Execution);                                             \
  template struct PValueGrid<T>;                                                                                     \
  template PValueGrid<T> pvalue_grid_scenario<T>(std::size_t);                                                          \
  template Scenario<T> mean_level_counterexample_scenario<T>();                                                    \
  template AuditReport<T> mean_level_comparator<T>(const TestFamily<T>&, const DataDependentLevel<T>&,            \
                                                   std::vector<T>);

POSTHOC_INSTANTIATE(Rational)
POSTHOC_INSTANTIATE(double)

}  // namespace posthoc
