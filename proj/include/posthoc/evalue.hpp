#pragma once

// E-values as decisions in the evidence space, the e-value of a test family,
// its closure, and post-hoc validity.
//
// Everything here is pointwise: coupled families are accepted only when their
// rejection probabilities are 0 or 1, and then read as kappa = 0 on the
// rejection event and kappa = 1 elsewhere.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "posthoc/evidence.hpp"
#include "posthoc/finprob.hpp"
#include "posthoc/testfam.hpp"
#include "posthoc/validity.hpp"

namespace posthoc {

template <class T>
class EValue {
 public:
  EValue(SpacePtr<T> space, std::vector<Decision<T>> decisions);

  const SpacePtr<T>& space() const noexcept { return space_; }
  const std::vector<Decision<T>>& decisions() const noexcept { return decisions_; }
  const Decision<T>& operator[](std::size_t x) const { return decisions_[x]; }
  std::size_t size() const noexcept { return decisions_.size(); }

  /// [0, inf]-valued representation.
  RandomVariable<T> numeric() const;
  Extended<T> expected() const;

 private:
  SpacePtr<T> space_;
  std::vector<Decision<T>> decisions_;
};

template <class T>
bool operator==(const EValue<T>& a, const EValue<T>& b) {
  return same_space(a.space(), b.space()) && a.decisions() == b.decisions();
}

/// Threshold form of phi. Coupled families with interior probabilities throw RandomizedEValue.
template <class T>
TestFamily<T> as_threshold(const TestFamily<T>& phi);

/// sup over alpha of phi(alpha): d_kappa, non-rejection at kappa = 1, d_0 at kappa = 0.
template <class T>
EValue<T> evalue_of_family(const TestFamily<T>& phi);

template <class T>
struct ClosureFamily {
  TestFamily<T> source;
  EValue<T> e;
  /// Threshold family generated by e: d_alpha exactly when e >= d_alpha.
  TestFamily<T> closure;
};

/// Construction asserts phi(alpha) <= closure(alpha) on every critical level and
/// midpoint, and that the closure has the same e-value.
template <class T>
ClosureFamily<T> closure(const TestFamily<T>& phi);

/// kappa where kappa is in (0,1); 1/(n+1) where kappa = 0; 1 - 1/(n+1) on the sentinel.
template <class T>
DataDependentLevel<T> posthoc_approximation(const TestFamily<T>& phi, std::size_t n);

/// numeric_rep(phi(alpha~)(x)) per outcome. Requires a deterministic profile.
template <class T>
RandomVariable<T> evidence_profile(const TestFamily<T>& phi, const DataDependentLevel<T>& alpha_tilde);

/// numeric_rep(phi(alpha~)) <= numeric_rep(e_phi) at every outcome.
template <class T>
bool bounded_by_evalue(const TestFamily<T>& phi, const DataDependentLevel<T>& alpha_tilde);

template <class T>
struct PosthocValidity {
  bool valid;
  /// False unless the notion is the pinned expectation of the canonical loss.
  bool certifying;
  Extended<T> expected_evalue;
  /// Adversarial level and the notion's verdict on it.
  DataDependentLevel<T> witness;
  std::size_t witness_n;
  Validity<T> witness_verdict;
};

/// Valid for every data-dependent level. Under the pinned notion the verdict is
/// E[e_phi] <= 1, cross-checked against the adversarial witness.
template <class T>
PosthocValidity<T> posthoc_validity(const TestFamily<T>& phi,
                                    const ValidityNotion<T>& notion = ValidityNotion<T>::pinned());

struct Implication {
  std::string name;
  std::string premise;
  std::string conclusion;
  bool premise_holds;
  bool conclusion_holds;
  bool holds;
  std::string witness;
};

template <class T>
struct EValueReport {
  EValue<T> e;
  Extended<T> expected_evalue;
  PosthocValidity<T> family;
  PosthocValidity<T> closure;
  std::vector<Implication> implications;

  bool all_hold() const;
};

/// Post-hoc validity of phi and of its closure, and the e-value identities linking them.
template <class T>
EValueReport<T> evalue_harness(const TestFamily<T>& phi);

/// kappa = 1/LR where LR = q/p exceeds 1, the sentinel elsewhere; e = LR 1{LR > 1}.
template <class T>
TestFamily<T> likelihood_ratio_family(SpacePtr<T> p, const std::vector<T>& q);

/// Threshold family kappa_i = i/n on n equally likely outcomes.
template <class T>
TestFamily<T> pvalue_family(std::size_t n);

}  // namespace posthoc
