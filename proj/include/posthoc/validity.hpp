#pragma once

// Losses, certainty equivalents, and the candidate notions of validity for a
// test family plugged with a data-dependent level.

#include <string>
#include <utility>
#include <vector>

#include "posthoc/finprob.hpp"
#include "posthoc/testfam.hpp"

namespace posthoc {

enum class LossKind {
  /// L(d_alpha) = L0 + (C - L0) * scale / alpha.
  Scaled,
  /// L(d_alpha) looked up from explicit (alpha, value) pairs.
  Table,
};

/// Increasing loss on decisions together with its validity threshold C.
template <class T>
class LossFunction {
 public:
  /// L(0) = 0, C = 1, L(d_alpha) = 1/alpha.
  static LossFunction canonical();
  static LossFunction scaled(const T& scale, const T& at_nonreject = T(0), const T& threshold = T(1));
  static LossFunction table(const T& at_nonreject, const T& threshold, std::vector<std::pair<T, T>> entries);

  LossKind kind() const noexcept { return kind_; }
  /// "canonical", "scaled(s)" or "table".
  std::string label() const;
  const T& at_nonreject() const noexcept { return at_nonreject_; }
  const T& threshold() const noexcept { return threshold_; }
  const T& scale() const noexcept { return scale_; }
  const std::vector<std::pair<T, T>>& entries() const noexcept { return entries_; }

  /// Throws ContractViolation for table losses without an entry at alpha.
  T at_reject(const T& alpha) const;
  T operator()(const Decision<T>& d) const;

  /// (a L + b, a C + b) for a > 0.
  LossFunction affine(const T& a, const T& b) const;

  /// L(d_alpha) >= L(0) and non-increasing in alpha across the grid.
  bool increasing_on(const std::vector<T>& alpha_grid) const;

 private:
  LossFunction(LossKind kind, T at_nonreject, T threshold, T scale, std::vector<std::pair<T, T>> entries);

  LossKind kind_;
  T at_nonreject_;
  T threshold_;
  T scale_;
  std::vector<std::pair<T, T>> entries_;
};

/// Loss rescaled so that L(0) = 0 and the threshold is 1.
template <class T>
class NormalizedLoss {
 public:
  explicit NormalizedLoss(LossFunction<T> source) : source_(std::move(source)) {}

  T at_reject(const T& alpha) const;
  Extended<T> operator()(const Decision<T>& d) const;
  /// The same normalized loss, as a LossFunction with L0 = 0 and C = 1.
  LossFunction<T> as_loss() const;
  /// L(d_alpha) == 1/alpha at every grid level.
  bool canonical_on(const std::vector<T>& alpha_grid) const;

 private:
  LossFunction<T> source_;
};

/// Throws InvalidThreshold when C <= L(0).
template <class T>
NormalizedLoss<T> normalize(const LossFunction<T>& loss);

enum class RhoKind { Expectation, EssSup, PowerMean, Quantile };

/// Functional on random variables that maps constants to themselves.
template <class T>
class CertaintyEquivalent {
 public:
  static CertaintyEquivalent expectation() { return CertaintyEquivalent(RhoKind::Expectation, T(1)); }
  static CertaintyEquivalent esssup() { return CertaintyEquivalent(RhoKind::EssSup, T(0)); }
  /// (E[X^q])^(1/q), q >= 1; integer q under the rational backend.
  static CertaintyEquivalent power_mean(const T& q);
  /// Left-continuous tau-quantile, tau in (0,1).
  static CertaintyEquivalent quantile(const T& tau);

  RhoKind kind() const noexcept { return kind_; }
  const T& parameter() const noexcept { return parameter_; }
  std::string name() const;
  /// Quantiles are not continuous from below; the other menu entries are.
  bool continuous_from_below() const noexcept { return kind_ != RhoKind::Quantile; }

  /// Value of rho(X). For PowerMean under rationals the value is exact when the
  /// moment is a perfect power and rounded otherwise; use at_most for verdicts.
  Extended<T> operator()(const RandomVariable<T>& x) const;
  /// Exact verdict rho(X) <= c.
  bool at_most(const RandomVariable<T>& x, const T& c) const;

 private:
  CertaintyEquivalent(RhoKind kind, T parameter) : kind_(kind), parameter_(std::move(parameter)) {}

  RhoKind kind_;
  T parameter_;
};

template <class T>
struct Validity {
  bool valid;
  /// Compared against `threshold`; rho of the conditional loss profile for general validity.
  Extended<T> score;
  T threshold;
  std::vector<std::size_t> dropped_cells;
};

/// E[L(phi(alpha~)) | alpha~]: on each cell a, L0 + (L(d_a) - L0) * P(reject | cell).
/// Zero-mass cells carry L0 and are listed as dropped.
template <class T>
Conditioned<T> conditional_loss_profile(const TestFamily<T>& phi, const DataDependentLevel<T>& alpha_tilde,
                                        const LossFunction<T>& loss);

/// rho(E[L(phi(alpha~)) | alpha~]) <= C.
template <class T>
Validity<T> general_validity(const TestFamily<T>& phi, const DataDependentLevel<T>& alpha_tilde,
                             const CertaintyEquivalent<T>& rho, const LossFunction<T>& loss);

/// E[P(reject | alpha~) / alpha~], summed outcome by outcome.
template <class T>
T expected_distortion_ratio(const TestFamily<T>& phi, const DataDependentLevel<T>& alpha_tilde);

template <class T>
struct StrongConditional {
  bool valid;
  /// Largest P(reject | alpha~ = a) / a over positive-mass cells.
  T worst_ratio;
};

/// P(reject | alpha~ = a) <= a on every positive-mass cell.
template <class T>
StrongConditional<T> strong_conditional_validity(const TestFamily<T>& phi, const DataDependentLevel<T>& alpha_tilde);

template <class T>
struct MeanLevel {
  bool valid;
  T reject_probability;
  T mean_level;
};

/// P(reject) <= E[alpha~]. Kept as a comparator: it does not preserve classical validity.
template <class T>
MeanLevel<T> mean_level_validity(const TestFamily<T>& phi, const DataDependentLevel<T>& alpha_tilde);

enum class NotionKind { General, MeanLevel };

/// A notion of validity: either rho/loss based, or the mean-level comparator.
template <class T>
class ValidityNotion {
 public:
  static ValidityNotion general(CertaintyEquivalent<T> rho, LossFunction<T> loss) {
    return ValidityNotion(NotionKind::General, std::move(rho), std::move(loss));
  }
  static ValidityNotion mean_level() {
    return ValidityNotion(NotionKind::MeanLevel, CertaintyEquivalent<T>::expectation(), LossFunction<T>::canonical());
  }
  /// Expectation of the canonical normalized loss.
  static ValidityNotion pinned() { return general(CertaintyEquivalent<T>::expectation(), LossFunction<T>::canonical()); }

  NotionKind kind() const noexcept { return kind_; }
  const CertaintyEquivalent<T>& rho() const noexcept { return rho_; }
  const LossFunction<T>& loss() const noexcept { return loss_; }
  std::string name() const;
  bool is_pinned() const;

  Validity<T> evaluate(const TestFamily<T>& phi, const DataDependentLevel<T>& alpha_tilde) const;

 private:
  ValidityNotion(NotionKind kind, CertaintyEquivalent<T> rho, LossFunction<T> loss)
      : kind_(kind), rho_(std::move(rho)), loss_(std::move(loss)) {}

  NotionKind kind_;
  CertaintyEquivalent<T> rho_;
  LossFunction<T> loss_;
};

}  // namespace posthoc
