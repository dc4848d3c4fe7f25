#pragma once

// Executable versions of the three axioms (nesting, preservation, monotonicity),
// the replication constructions that turn any bounded loss profile into a
// (family, data-dependent level) pair, and the composite audit that uses them
// to refute every certainty equivalent other than the expectation.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "posthoc/execution.hpp"
#include "posthoc/scenario.hpp"
#include "posthoc/validity.hpp"

namespace posthoc {

enum class Property { Nesting, Preservation, Monotonicity };
enum class AuditKind { Nesting, Preservation, Monotonicity, Replication, MeanLevelComparator };

std::string_view property_name(Property p);
std::string_view audit_name(AuditKind k);
Property parse_property(std::string_view text);

/// A failing case, packaged so that `recheck` can reproduce it from scratch.
///
/// Levels used per property:
///   Nesting       levels["alpha_tilde"] is constant at `level`.
///   Preservation  levels["alpha_tilde"] and threshold `level` (= a).
///   Monotonicity  scenario.monotonicity names the valid and weaker levels.
template <class T>
struct Counterexample {
  Property property;
  Scenario<T> scenario;
  T level = T(0);
  /// Human-readable scores at the time of discovery, e.g. {"score", "50"}.
  std::vector<std::pair<std::string, std::string>> values;
  std::string summary;
};

template <class T>
struct AuditReport {
  AuditKind kind;
  std::string notion;
  bool passed = true;
  /// Nonempty whenever !passed.
  std::vector<Counterexample<T>> counterexamples;
  std::vector<std::string> grids;
  std::uint64_t seed = 0;
  std::size_t cases_checked = 0;
  std::size_t violations = 0;
  /// Informative remarks (boundary scenarios, continuity flags, linked checks).
  std::vector<std::string> notes;
};

/// Re-runs the validity operations behind a counterexample; true when the
/// violation reproduces.
template <class T>
bool recheck(const Counterexample<T>& cx);

/// {start, start+step, ..., stop} as exact k/den values.
template <class T>
std::vector<T> level_grid(long start, long stop, long step, long den);

template <class T>
struct NestingCase {
  T alpha;
  T p;
  Extended<T> score;
  bool valid;
  bool classically_valid;
};

/// Every (alpha, p) cell of the nesting sweep, alpha-major.
template <class T>
std::vector<NestingCase<T>> nesting_grid(const CertaintyEquivalent<T>& rho, const LossFunction<T>& loss,
                                         const std::vector<T>& alpha_grid, const std::vector<T>& p_grid,
                                         Execution exec = Execution::Serial);

/// For every (alpha, p): the reject-with-probability-p family at constant level alpha
/// must be valid under (rho, loss) exactly when p <= alpha.
template <class T>
AuditReport<T> check_nesting(const CertaintyEquivalent<T>& rho, const LossFunction<T>& loss,
                             const std::vector<T>& alpha_grid, const std::vector<T>& p_grid,
                             Execution exec = Execution::Serial);

/// P(phi(alpha~) >= d_a) = E[reject probability * 1{alpha~ <= a}].
template <class T>
T probability_at_least(const TestFamily<T>& phi, const DataDependentLevel<T>& alpha_tilde, const T& a);

/// If the notion declares phi valid for alpha~, P(phi(alpha~) >= d_a) <= a for each a.
template <class T>
AuditReport<T> check_preservation(const TestFamily<T>& phi, const DataDependentLevel<T>& alpha_tilde,
                                  const ValidityNotion<T>& notion, std::vector<T> a_grid);

/// Requires dominates(phi, at_weaker, at_valid); throws ContractViolation otherwise.
template <class T>
AuditReport<T> check_monotonicity(const TestFamily<T>& phi, const DataDependentLevel<T>& at_valid,
                                  const DataDependentLevel<T>& at_weaker, const ValidityNotion<T>& notion);

enum class Regime { Subcritical, Supercritical };

template <class T>
struct ReplicationBundle {
  Regime regime;
  RandomVariable<T> y;
  /// (Y - L0) / (C - L0).
  RandomVariable<T> ybar;
  /// Coupled family with r = alpha~ * ybar.
  TestFamily<T> phi;
  DataDependentLevel<T> alpha_tilde;
  T a;
  T delta;
  T bound;

  /// P(A) = E[alpha~ * ybar].
  T event_probability() const;
};

/// Optional explicit (delta, a); validated against the construction's constraints.
template <class T>
struct ReplicationOptions {
  std::optional<T> delta;
  std::optional<T> a;
};

/// E[Y] < C: a pair whose conditional loss profile is Y, with alpha~ >= a and
/// P(phi(a) = d_a) <= a. Default delta = min(1/2, 1/E[Ybar] - 1), a = (9/10) min(1, 1/M) / (1 + delta).
template <class T>
ReplicationBundle<T> replicate_subcritical(const RandomVariable<T>& y, const LossFunction<T>& loss,
                                           const ReplicationOptions<T>& options = {});

/// E[Y] > C: a pair whose conditional loss profile is Y, with alpha~ <= a and
/// P(phi(alpha~) >= d_a) > a. Default delta = (1 - 1/E[Ybar]) / 2, a = min(1/2, 1/M).
template <class T>
ReplicationBundle<T> replicate_supercritical(const RandomVariable<T>& y, const LossFunction<T>& loss,
                                             const ReplicationOptions<T>& options = {});

/// Subcritical profiles rho declares invalid refute monotonicity; supercritical
/// ones it declares valid refute preservation. Profiles with E[Y] = 1 are noted
/// but never counted as violations. Uses the canonical loss.
template <class T>
AuditReport<T> check_replication(const CertaintyEquivalent<T>& rho, const std::vector<RandomVariable<T>>& suite,
                              std::uint64_t seed, Execution exec = Execution::Serial);

template <class T>
struct PValueGrid {
  SpacePtr<T> space;
  /// kappa = p, p_i = i/n.
  TestFamily<T> phi;
  /// Constant 0.01.
  DataDependentLevel<T> fixed;
  /// 0.02 where p <= 0.01, else 0.01.
  DataDependentLevel<T> conservative;

  Scenario<T> scenario(const CertaintyEquivalent<T>& rho) const;
};

/// Uniform p-value grid with n atoms; n must be a positive multiple of 100.
template <class T>
PValueGrid<T> pvalue_grid_scenario(std::size_t n_atoms);

/// Scenario on which mean-level validity holds yet preservation fails:
/// reject deterministically on half the mass at level 1/10, never reject at 19/20 elsewhere.
template <class T>
Scenario<T> mean_level_counterexample_scenario();

/// Runs mean_level_validity and then check_preservation under the mean-level
/// notion on the same (phi, alpha~), linking the two verdicts in one report.
template <class T>
AuditReport<T> mean_level_comparator(const TestFamily<T>& phi, const DataDependentLevel<T>& alpha_tilde,
                                     std::vector<T> a_grid);

}  // namespace posthoc
