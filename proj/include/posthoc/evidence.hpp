#pragma once

// The evidence space: non-rejection below every rejection, and rejections
// ordered so that a smaller level is a stronger decision.

#include <compare>
#include <string>

#include "posthoc/numeric.hpp"

namespace posthoc {

enum class DecisionKind { NonReject, RejectAt };

template <class T>
class Decision {
 public:
  static Decision non_reject() { return Decision(DecisionKind::NonReject, T(0)); }

  /// Rejection at `level` >= 0. Level 0 rejects at every level (numeric +inf);
  /// levels >= 1 are the enlarged codomain used by e-values.
  static Decision reject_at(const T& level);

  DecisionKind kind() const noexcept { return kind_; }
  bool rejects() const noexcept { return kind_ == DecisionKind::RejectAt; }
  /// Only meaningful when rejects().
  const T& level() const noexcept { return level_; }

  std::string to_string() const;

 private:
  Decision(DecisionKind kind, T level) : kind_(kind), level_(std::move(level)) {}

  DecisionKind kind_;
  T level_;
};

/// Total order on decisions; level equality is exact for rationals, 1e-12 for doubles.
template <class T>
std::weak_ordering compare(const Decision<T>& a, const Decision<T>& b);

/// 0 for non-rejection, 1/level for a rejection (+inf at level 0).
template <class T>
Extended<T> numeric_rep(const Decision<T>& d);

template <class T>
bool operator==(const Decision<T>& a, const Decision<T>& b) {
  return compare(a, b) == std::weak_ordering::equivalent;
}

template <class T>
bool operator<=(const Decision<T>& a, const Decision<T>& b) {
  return compare(a, b) != std::weak_ordering::greater;
}

template <class T>
bool operator<(const Decision<T>& a, const Decision<T>& b) {
  return compare(a, b) == std::weak_ordering::less;
}

}  // namespace posthoc
