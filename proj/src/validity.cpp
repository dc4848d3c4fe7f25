#include "posthoc/validity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "posthoc/errors.hpp"

namespace posthoc {

namespace {

template <class T>
std::string short_number(const T& v) {
  return num::pretty(v);
}

/// base^q for the power-mean exponent (integer under rationals).
template <class T>
T power(const T& base, const T& q) {
  if constexpr (NumTraits<T>::exact) {
    return NumTraits<T>::power(base, static_cast<unsigned>(q.get_num().get_ui()));
  } else {
    return std::pow(base, q);
  }
}

template <class T>
T power_mean_root(const T& moment, const T& q) {
  if constexpr (NumTraits<T>::exact) {
    const auto exponent = static_cast<unsigned>(q.get_num().get_ui());
    if (auto root = NumTraits<T>::exact_root(moment, exponent)) return *root;
    return NumTraits<T>::from_double(std::pow(moment.get_d(), 1.0 / static_cast<double>(exponent)));
  } else {
    return std::pow(moment, 1.0 / q);
  }
}

}  // namespace

template <class T>
LossFunction<T>::LossFunction(LossKind kind, T at_nonreject, T threshold, T scale,
                              std::vector<std::pair<T, T>> entries)
    : kind_(kind),
      at_nonreject_(std::move(at_nonreject)),
      threshold_(std::move(threshold)),
      scale_(std::move(scale)),
      entries_(std::move(entries)) {}

template <class T>
LossFunction<T> LossFunction<T>::canonical() {
  return scaled(T(1));
}

template <class T>
LossFunction<T> LossFunction<T>::scaled(const T& scale, const T& at_nonreject, const T& threshold) {
  if (!(scale > 0)) throw ContractViolation("loss scale must be positive");
  return LossFunction(LossKind::Scaled, at_nonreject, threshold, scale, {});
}

template <class T>
LossFunction<T> LossFunction<T>::table(const T& at_nonreject, const T& threshold,
                                       std::vector<std::pair<T, T>> entries) {
  for (const auto& [alpha, value] : entries) {
    if (!(alpha > 0)) throw ContractViolation("loss table level must be positive");
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return LossFunction(LossKind::Table, at_nonreject, threshold, T(1), std::move(entries));
}

template <class T>
std::string LossFunction<T>::label() const {
  if (kind_ == LossKind::Table) return "table";
  if (scale_ == 1 && at_nonreject_ == 0 && threshold_ == 1) return "canonical";
  std::string out = "scaled(" + short_number(scale_) + ")";
  if (!(at_nonreject_ == 0 && threshold_ == 1)) {
    out += "[L0=" + short_number(at_nonreject_) + ",C=" + short_number(threshold_) + "]";
  }
  return out;
}

template <class T>
T LossFunction<T>::at_reject(const T& alpha) const {
  if (!(alpha > 0)) throw ContractViolation("loss at a rejection needs a positive level");
  if (kind_ == LossKind::Scaled) return T(at_nonreject_ + (threshold_ - at_nonreject_) * scale_ / alpha);
  for (const auto& [level, value] : entries_) {
    if (num::eq(level, alpha)) return value;
  }
  throw ContractViolation("loss table has no entry for level " + num::format(alpha));
}

template <class T>
T LossFunction<T>::operator()(const Decision<T>& d) const {
  return d.rejects() ? at_reject(d.level()) : at_nonreject_;
}

template <class T>
LossFunction<T> LossFunction<T>::affine(const T& a, const T& b) const {
  if (!(a > 0)) throw ContractViolation("affine loss transformation needs a > 0");
  std::vector<std::pair<T, T>> mapped;
  mapped.reserve(entries_.size());
  for (const auto& [alpha, value] : entries_) mapped.emplace_back(alpha, T(a * value + b));
  return LossFunction(kind_, T(a * at_nonreject_ + b), T(a * threshold_ + b), scale_, std::move(mapped));
}

template <class T>
bool LossFunction<T>::increasing_on(const std::vector<T>& alpha_grid) const {
  std::vector<T> grid = alpha_grid;
  std::sort(grid.begin(), grid.end());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const T here = at_reject(grid[i]);
    if (here < at_nonreject_) return false;
    if (i > 0 && at_reject(grid[i - 1]) < here) return false;
  }
  return true;
}

template <class T>
T NormalizedLoss<T>::at_reject(const T& alpha) const {
  const T& l0 = source_.at_nonreject();
  return T((source_.at_reject(alpha) - l0) / (source_.threshold() - l0));
}

template <class T>
Extended<T> NormalizedLoss<T>::operator()(const Decision<T>& d) const {
  if (!d.rejects()) return Extended<T>();
  if (d.level() == 0) return Extended<T>::infinity();
  return Extended<T>(at_reject(d.level()));
}

template <class T>
LossFunction<T> NormalizedLoss<T>::as_loss() const {
  if (source_.kind() == LossKind::Scaled) return LossFunction<T>::scaled(source_.scale());
  std::vector<std::pair<T, T>> entries;
  for (const auto& [alpha, value] : source_.entries()) entries.emplace_back(alpha, at_reject(alpha));
  return LossFunction<T>::table(T(0), T(1), std::move(entries));
}

template <class T>
bool NormalizedLoss<T>::canonical_on(const std::vector<T>& alpha_grid) const {
  return std::all_of(alpha_grid.begin(), alpha_grid.end(),
                     [&](const T& alpha) { return num::eq(at_reject(alpha), T(T(1) / alpha)); });
}

template <class T>
NormalizedLoss<T> normalize(const LossFunction<T>& loss) {
  if (!(loss.threshold() > loss.at_nonreject())) {
    throw InvalidThreshold("threshold C = " + num::format(loss.threshold()) + " must exceed L(0) = " +
                           num::format(loss.at_nonreject()));
  }
  return NormalizedLoss<T>(loss);
}

template <class T>
CertaintyEquivalent<T> CertaintyEquivalent<T>::power_mean(const T& q) {
  if (q < 1) throw ContractViolation("power mean exponent must be >= 1");
  if constexpr (NumTraits<T>::exact) {
    if (!NumTraits<T>::is_integer(q) || !q.get_num().fits_uint_p()) {
      throw ContractViolation("power mean exponent must be an integer under the rational backend");
    }
  }
  return CertaintyEquivalent(RhoKind::PowerMean, q);
}

template <class T>
CertaintyEquivalent<T> CertaintyEquivalent<T>::quantile(const T& tau) {
  if (!(tau > 0 && tau < 1)) throw ContractViolation("quantile level must lie in (0,1)");
  return CertaintyEquivalent(RhoKind::Quantile, tau);
}

template <class T>
std::string CertaintyEquivalent<T>::name() const {
  switch (kind_) {
    case RhoKind::Expectation:
      return "expectation";
    case RhoKind::EssSup:
      return "esssup";
    case RhoKind::PowerMean:
      return "power_mean(" + short_number(parameter_) + ")";
    case RhoKind::Quantile:
      return "quantile(" + short_number(parameter_) + ")";
  }
  return "?";
}

namespace {

template <class T>
Extended<T> power_moment(const RandomVariable<T>& x, const T& q) {
  const auto& space = *x.space();
  T moment = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!space.positive(i)) continue;
    if (x[i].is_infinite()) return Extended<T>::infinity();
    if (x[i].value() < 0) throw ContractViolation("power mean is defined for nonnegative random variables");
    moment += space.mass(i) * power(x[i].value(), q);
  }
  return Extended<T>(moment);
}

}  // namespace

template <class T>
Extended<T> CertaintyEquivalent<T>::operator()(const RandomVariable<T>& x) const {
  switch (kind_) {
    case RhoKind::Expectation:
      return posthoc::expectation(x);
    case RhoKind::EssSup:
      return posthoc::esssup(x);
    case RhoKind::Quantile:
      return posthoc::quantile(x, parameter_);
    case RhoKind::PowerMean: {
      const Extended<T> moment = power_moment(x, parameter_);
      if (moment.is_infinite()) return moment;
      return Extended<T>(power_mean_root(moment.value(), parameter_));
    }
  }
  throw std::logic_error("unknown certainty equivalent");
}

template <class T>
bool CertaintyEquivalent<T>::at_most(const RandomVariable<T>& x, const T& c) const {
  if (kind_ != RhoKind::PowerMean) return num::le((*this)(x), Extended<T>(c));
  const Extended<T> moment = power_moment(x, parameter_);
  if (moment.is_infinite()) return false;
  if (c < 0) return false;
  return num::le(moment.value(), power(c, parameter_));
}

template <class T>
Conditioned<T> conditional_loss_profile(const TestFamily<T>& phi, const DataDependentLevel<T>& alpha_tilde,
                                        const LossFunction<T>& loss) {
  const auto profile = evaluate(phi, alpha_tilde);
  const auto partition = conditioning_partition(alpha_tilde);
  auto conditioned = conditional_expectation(RandomVariable<T>(phi.space(), profile.reject_prob), partition);
  const T& l0 = loss.at_nonreject();
  std::vector<Extended<T>> values;
  values.reserve(alpha_tilde.size());
  for (std::size_t x = 0; x < alpha_tilde.size(); ++x) {
    const T& p = conditioned.values[x].value();
    values.emplace_back(p == 0 ? l0 : T(l0 + (loss.at_reject(alpha_tilde[x]) - l0) * p));
  }
  return {RandomVariable<T>(phi.space(), std::move(values)), std::move(conditioned.dropped_cells)};
}

template <class T>
Validity<T> general_validity(const TestFamily<T>& phi, const DataDependentLevel<T>& alpha_tilde,
                             const CertaintyEquivalent<T>& rho, const LossFunction<T>& loss) {
  const T& threshold = loss.threshold();
  if (!num::eq(rho(RandomVariable<T>::constant(uniform_space<T>(1), Extended<T>(threshold))), Extended<T>(threshold))) {
    throw std::logic_error(rho.name() + " does not fix constants");
  }
  auto profile = conditional_loss_profile(phi, alpha_tilde, loss);
  return {rho.at_most(profile.values, threshold), rho(profile.values), threshold, std::move(profile.dropped_cells)};
}

template <class T>
T expected_distortion_ratio(const TestFamily<T>& phi, const DataDependentLevel<T>& alpha_tilde) {
  require_same_space(phi.space(), alpha_tilde.space(), "expected_distortion_ratio");
  const auto& space = *phi.space();
  T total = 0;
  for (std::size_t x = 0; x < space.size(); ++x) {
    const T p = phi.rejection_probability(x, alpha_tilde[x]);
    if (p == 0 || !space.positive(x)) continue;
    total += space.mass(x) * p / alpha_tilde[x];
  }
  return total;
}

template <class T>
StrongConditional<T> strong_conditional_validity(const TestFamily<T>& phi, const DataDependentLevel<T>& alpha_tilde) {
  require_same_space(phi.space(), alpha_tilde.space(), "strong_conditional_validity");
  const auto& space = *phi.space();
  const auto partition = conditioning_partition(alpha_tilde);
  T worst = 0;
  for (const auto& cell : partition.cells()) {
    T cell_mass = 0;
    T rejected = 0;
    for (std::size_t x : cell) {
      cell_mass += space.mass(x);
      rejected += space.mass(x) * phi.rejection_probability(x, alpha_tilde[x]);
    }
    if (cell_mass == 0) continue;
    const T ratio = rejected / (cell_mass * alpha_tilde[cell.front()]);
    if (ratio > worst) worst = ratio;
  }
  return {num::le(worst, T(1)), worst};
}

template <class T>
MeanLevel<T> mean_level_validity(const TestFamily<T>& phi, const DataDependentLevel<T>& alpha_tilde) {
  require_same_space(phi.space(), alpha_tilde.space(), "mean_level_validity");
  const auto& space = *phi.space();
  T rejected = 0;
  T mean = 0;
  for (std::size_t x = 0; x < space.size(); ++x) {
    rejected += space.mass(x) * phi.rejection_probability(x, alpha_tilde[x]);
    mean += space.mass(x) * alpha_tilde[x];
  }
  return {num::le(rejected, mean), rejected, mean};
}

template <class T>
std::string ValidityNotion<T>::name() const {
  if (kind_ == NotionKind::MeanLevel) return "mean_level";
  return rho_.name() + "/" + loss_.label();
}

template <class T>
bool ValidityNotion<T>::is_pinned() const {
  return kind_ == NotionKind::General && rho_.kind() == RhoKind::Expectation && loss_.kind() == LossKind::Scaled &&
         loss_.scale() == 1;
}

template <class T>
Validity<T> ValidityNotion<T>::evaluate(const TestFamily<T>& phi, const DataDependentLevel<T>& alpha_tilde) const {
  if (kind_ == NotionKind::General) return general_validity(phi, alpha_tilde, rho_, loss_);
  const auto m = mean_level_validity(phi, alpha_tilde);
  return {m.valid, Extended<T>(m.reject_probability), m.mean_level, {}};
}

#define POSTHOC_INSTANTIATE(T)                                                                                      \
  template class LossFunction<T>;                                                                                   \
  template class NormalizedLoss<T>;                                                                                 \
  template NormalizedLoss<T> normalize<T>(const LossFunction<T>&);                                                  \
  template class CertaintyEquivalent<T>;                                                                            \
  template Conditioned<T> conditional_loss_profile<T>(const TestFamily<T>&, const DataDependentLevel<T>&,          \
                                                      const LossFunction<T>&);                                      \
  template Validity<T> general_validity<T>(const TestFamily<T>&, const DataDependentLevel<T>&,                     \
                                           const CertaintyEquivalent<T>&, const LossFunction<T>&);                  \
  template T expected_distortion_ratio<T>(const TestFamily<T>&, const DataDependentLevel<T>&);                      \
  template StrongConditional<T> strong_conditional_validity<T>(const TestFamily<T>&, const DataDependentLevel<T>&); \
  template MeanLevel<T> mean_level_validity<T>(const TestFamily<T>&, const DataDependentLevel<T>&);                 \
  template class ValidityNotion<T>;

POSTHOC_INSTANTIATE(Rational)
POSTHOC_INSTANTIATE(double)

}  // namespace posthoc
