#include "posthoc/evidence.hpp"

#include "posthoc/errors.hpp"

namespace posthoc {

template <class T>
Decision<T> Decision<T>::reject_at(const T& level) {
  if (level < 0) throw ContractViolation("rejection level must be nonnegative, got " + num::format(level));
  return Decision(DecisionKind::RejectAt, level);
}

template <class T>
std::string Decision<T>::to_string() const {
  if (kind_ == DecisionKind::NonReject) return "nonreject";
  return "reject@" + num::format(level_);
}

template <class T>
std::weak_ordering compare(const Decision<T>& a, const Decision<T>& b) {
  if (!a.rejects() && !b.rejects()) return std::weak_ordering::equivalent;
  if (!a.rejects()) return std::weak_ordering::less;
  if (!b.rejects()) return std::weak_ordering::greater;
  if (num::eq(a.level(), b.level())) return std::weak_ordering::equivalent;
  // Smaller level, stronger decision.
  return a.level() > b.level() ? std::weak_ordering::less : std::weak_ordering::greater;
}

template <class T>
Extended<T> numeric_rep(const Decision<T>& d) {
  if (!d.rejects()) return Extended<T>();
  if (d.level() == 0) return Extended<T>::infinity();
  return Extended<T>(T(T(1) / d.level()));
}

#define POSTHOC_INSTANTIATE(T)                                                      \
  template class Decision<T>;                                                       \
  template std::weak_ordering compare<T>(const Decision<T>&, const Decision<T>&);   \
  template Extended<T> numeric_rep<T>(const Decision<T>&);

POSTHOC_INSTANTIATE(Rational)
POSTHOC_INSTANTIATE(double)

}  // namespace posthoc
