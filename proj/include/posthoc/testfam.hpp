#pragma once

// Families of level-alpha tests, data-dependent levels, and plugging one into the other.
//
// Two forms are supported:
//   threshold  phi(alpha)(x) = d_alpha iff kappa(x) <= alpha (closed). kappa == 1 is the
//              never-reject sentinel; kappa == 0 rejects at every level.
//   coupled    phi(alpha)(x) = d_alpha on one shared randomized event A with
//              P(A | x) = r(x), the same event for every alpha.
// Randomization is never simulated: the per-outcome rejection probability carries it.

#include <cstddef>
#include <vector>

#include "posthoc/evidence.hpp"
#include "posthoc/finprob.hpp"

namespace posthoc {

enum class FamilyForm { Threshold, Coupled };

template <class T>
class TestFamily {
 public:
  static TestFamily threshold(SpacePtr<T> space, std::vector<T> kappa);
  static TestFamily coupled(SpacePtr<T> space, std::vector<T> r);
  /// Threshold family with kappa == 1 everywhere.
  static TestFamily never_reject(SpacePtr<T> space);

  FamilyForm form() const noexcept { return form_; }
  const SpacePtr<T>& space() const noexcept { return space_; }
  /// kappa for threshold families, r for coupled ones.
  const std::vector<T>& values() const noexcept { return values_; }

  /// P(phi(alpha)(x) = d_alpha) with the external randomization integrated out.
  T rejection_probability(std::size_t x, const T& alpha) const;
  /// True when every rejection probability is 0 or 1 at every level.
  bool deterministic() const;

 private:
  TestFamily(FamilyForm form, SpacePtr<T> space, std::vector<T> values);

  FamilyForm form_;
  SpacePtr<T> space_;
  std::vector<T> values_;
};

/// alpha~ : outcomes -> (0,1).
template <class T>
class DataDependentLevel {
 public:
  DataDependentLevel(SpacePtr<T> space, std::vector<T> levels);
  static DataDependentLevel constant(SpacePtr<T> space, const T& alpha);

  const SpacePtr<T>& space() const noexcept { return space_; }
  const std::vector<T>& levels() const noexcept { return levels_; }
  const T& operator[](std::size_t x) const { return levels_[x]; }
  std::size_t size() const noexcept { return levels_.size(); }

 private:
  SpacePtr<T> space_;
  std::vector<T> levels_;
};

/// Law of phi(alpha~) given x: the level used and the rejection probability at it.
template <class T>
struct RandomizedDecisionProfile {
  SpacePtr<T> space;
  FamilyForm form;
  std::vector<T> level;
  std::vector<T> reject_prob;

  bool deterministic() const;
  /// Realized decision at x; throws RandomizedEValue for interior probabilities.
  Decision<T> decision(std::size_t x) const;
};

template <class T>
RandomizedDecisionProfile<T> evaluate(const TestFamily<T>& phi, const DataDependentLevel<T>& alpha_tilde);

template <class T>
struct ClassicalValidity {
  bool valid;
  T reject_probability;
  /// alpha - P(reject); negative on failure.
  T margin;
};

template <class T>
ClassicalValidity<T> classical_validity(const TestFamily<T>& phi, const T& alpha);

/// Preimages of the distinct values of alpha~, in order of first occurrence.
template <class T>
Partition<T> conditioning_partition(const DataDependentLevel<T>& alpha_tilde);

/// phi(at1) <= phi(at2) at every outcome, under the family's shared rejection event.
template <class T>
bool dominates(const TestFamily<T>& phi, const DataDependentLevel<T>& at1, const DataDependentLevel<T>& at2);

/// Pointwise lhs <= rhs for realized decisions. Profiles with interior rejection
/// probabilities carry no shared event and are refused with UncoupledComparison.
template <class T>
bool pointwise_le(const RandomizedDecisionProfile<T>& lhs, const RandomizedDecisionProfile<T>& rhs);

}  // namespace posthoc
