#include "posthoc/testfam.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "posthoc/errors.hpp"

namespace posthoc {

namespace {

template <class T>
void require_unit_interval(const std::vector<T>& values, const char* what) {
  for (const auto& v : values) {
    if (v < 0 || v > 1) throw ContractViolation(std::string(what) + " value " + num::format(v) + " outside [0,1]");
  }
}

}  // namespace

template <class T>
TestFamily<T>::TestFamily(FamilyForm form, SpacePtr<T> space, std::vector<T> values)
    : form_(form), space_(std::move(space)), values_(std::move(values)) {
  if (!space_) throw ContractViolation("test family without a sample space");
  if (values_.size() != space_->size()) throw ContractViolation("test family size does not match its space");
  require_unit_interval(values_, form_ == FamilyForm::Threshold ? "kappa" : "r");
}

template <class T>
TestFamily<T> TestFamily<T>::threshold(SpacePtr<T> space, std::vector<T> kappa) {
  return TestFamily(FamilyForm::Threshold, std::move(space), std::move(kappa));
}

template <class T>
TestFamily<T> TestFamily<T>::coupled(SpacePtr<T> space, std::vector<T> r) {
  return TestFamily(FamilyForm::Coupled, std::move(space), std::move(r));
}

template <class T>
TestFamily<T> TestFamily<T>::never_reject(SpacePtr<T> space) {
  const std::size_t n = space ? space->size() : 0;
  return threshold(std::move(space), std::vector<T>(n, T(1)));
}

template <class T>
T TestFamily<T>::rejection_probability(std::size_t x, const T& alpha) const {
  const T& v = values_.at(x);
  if (form_ == FamilyForm::Coupled) return v;
  if (v == 1) return T(0);
  return num::le(v, alpha) ? T(1) : T(0);
}

template <class T>
bool TestFamily<T>::deterministic() const {
  if (form_ == FamilyForm::Threshold) return true;
  return std::all_of(values_.begin(), values_.end(), [](const T& r) { return r == 0 || r == 1; });
}

template <class T>
DataDependentLevel<T>::DataDependentLevel(SpacePtr<T> space, std::vector<T> levels)
    : space_(std::move(space)), levels_(std::move(levels)) {
  if (!space_) throw ContractViolation("data-dependent level without a sample space");
  if (levels_.size() != space_->size()) throw ContractViolation("data-dependent level size does not match its space");
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (!(levels_[i] > 0 && levels_[i] < 1)) {
      throw ContractViolation("level " + num::format(levels_[i]) + " at outcome '" + space_->outcomes()[i] +
                              "' outside (0,1)");
    }
  }
}

template <class T>
DataDependentLevel<T> DataDependentLevel<T>::constant(SpacePtr<T> space, const T& alpha) {
  const std::size_t n = space ? space->size() : 0;
  return DataDependentLevel(std::move(space), std::vector<T>(n, alpha));
}

template <class T>
bool RandomizedDecisionProfile<T>::deterministic() const {
  return std::all_of(reject_prob.begin(), reject_prob.end(), [](const T& p) { return p == 0 || p == 1; });
}

template <class T>
Decision<T> RandomizedDecisionProfile<T>::decision(std::size_t x) const {
  const T& p = reject_prob.at(x);
  if (p == 1) return Decision<T>::reject_at(level.at(x));
  if (p == 0) return Decision<T>::non_reject();
  throw RandomizedEValue("outcome '" + space->outcomes()[x] + "' rejects with probability " + num::format(p) +
                         "; no pointwise decision");
}

template <class T>
RandomizedDecisionProfile<T> evaluate(const TestFamily<T>& phi, const DataDependentLevel<T>& alpha_tilde) {
  require_same_space(phi.space(), alpha_tilde.space(), "evaluate");
  RandomizedDecisionProfile<T> out{phi.space(), phi.form(), alpha_tilde.levels(), {}};
  out.reject_prob.reserve(alpha_tilde.size());
  for (std::size_t x = 0; x < alpha_tilde.size(); ++x) {
    out.reject_prob.push_back(phi.rejection_probability(x, alpha_tilde[x]));
  }
  return out;
}

template <class T>
ClassicalValidity<T> classical_validity(const TestFamily<T>& phi, const T& alpha) {
  if (!(alpha > 0 && alpha < 1)) throw ContractViolation("classical level must lie in (0,1)");
  const auto& space = *phi.space();
  T p = 0;
  for (std::size_t x = 0; x < space.size(); ++x) p += space.mass(x) * phi.rejection_probability(x, alpha);
  return {num::le(p, alpha), p, T(alpha - p)};
}

template <class T>
Partition<T> conditioning_partition(const DataDependentLevel<T>& alpha_tilde) {
  const auto& levels = alpha_tilde.levels();
  std::vector<std::size_t> order(levels.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return levels[a] < levels[b]; });
  std::vector<std::vector<std::size_t>> cells;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k == 0 || !num::eq(levels[cells.back().front()], levels[order[k]])) cells.emplace_back();
    cells.back().push_back(order[k]);
  }
  for (auto& cell : cells) std::sort(cell.begin(), cell.end());
  std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return Partition<T>(alpha_tilde.space(), std::move(cells));
}

template <class T>
bool dominates(const TestFamily<T>& phi, const DataDependentLevel<T>& at1, const DataDependentLevel<T>& at2) {
  require_same_space(phi.space(), at1.space(), "dominates");
  require_same_space(phi.space(), at2.space(), "dominates");
  for (std::size_t x = 0; x < at1.size(); ++x) {
    const bool weaker_level = num::le(at2[x], at1[x]);
    if (phi.form() == FamilyForm::Coupled) {
      // Both levels reject on the same event A.
      if (phi.values()[x] > 0 && !weaker_level) return false;
      continue;
    }
    const bool rejects1 = phi.rejection_probability(x, at1[x]) == 1;
    const bool rejects2 = phi.rejection_probability(x, at2[x]) == 1;
    if (!rejects1) continue;
    if (!rejects2 || !weaker_level) return false;
  }
  return true;
}

template <class T>
bool pointwise_le(const RandomizedDecisionProfile<T>& lhs, const RandomizedDecisionProfile<T>& rhs) {
  require_same_space(lhs.space, rhs.space, "pointwise_le");
  if (!lhs.deterministic() || !rhs.deterministic()) {
    throw UncoupledComparison("pointwise comparison of randomized profiles needs a shared rejection event");
  }
  for (std::size_t x = 0; x < lhs.level.size(); ++x) {
    if (!(lhs.decision(x) <= rhs.decision(x))) return false;
  }
  return true;
}

#define POSTHOC_INSTANTIATE(T)                                                                                   \
  template class TestFamily<T>;                                                                                  \
  template class DataDependentLevel<T>;                                                                          \
  template struct RandomizedDecisionProfile<T>;                                                                  \
  template RandomizedDecisionProfile<T> evaluate<T>(const TestFamily<T>&, const DataDependentLevel<T>&);         \
  template ClassicalValidity<T> classical_validity<T>(const TestFamily<T>&, const T&);                           \
  template Partition<T> conditioning_partition<T>(const DataDependentLevel<T>&);                                 \
  template bool dominates<T>(const TestFamily<T>&, const DataDependentLevel<T>&, const DataDependentLevel<T>&);  \
  template bool pointwise_le<T>(const RandomizedDecisionProfile<T>&, const RandomizedDecisionProfile<T>&);

POSTHOC_INSTANTIATE(Rational)
POSTHOC_INSTANTIATE(double)

}  // namespace posthoc
