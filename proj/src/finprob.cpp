#include "posthoc/finprob.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "posthoc/errors.hpp"

namespace posthoc {

template <class T>
FiniteSpace<T>::FiniteSpace(std::vector<std::string> outcomes, std::vector<T> mass)
    : outcomes_(std::move(outcomes)), mass_(std::move(mass)) {
  if (outcomes_.empty()) throw ContractViolation("sample space has no outcomes");
  if (outcomes_.size() != mass_.size()) {
    throw ContractViolation("sample space: " + std::to_string(outcomes_.size()) + " outcomes but " +
                            std::to_string(mass_.size()) + " masses");
  }
  T total = 0;
  for (std::size_t i = 0; i < outcomes_.size(); ++i) {
    if (mass_[i] < 0) throw ContractViolation("negative mass on outcome '" + outcomes_[i] + "'");
    if (!index_.emplace(outcomes_[i], i).second) {
      throw ContractViolation("duplicate outcome id '" + outcomes_[i] + "'");
    }
    total += mass_[i];
  }
  if (!num::eq(total, T(1))) {
    throw ContractViolation("masses sum to " + num::format(total) + ", not 1");
  }
}

template <class T>
std::size_t FiniteSpace<T>::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) throw ContractViolation("unknown outcome '" + std::string(id) + "'");
  return it->second;
}

template <class T>
bool FiniteSpace<T>::contains(std::string_view id) const {
  return index_.count(std::string(id)) != 0;
}

template <class T>
bool FiniteSpace<T>::operator==(const FiniteSpace& other) const {
  return outcomes_ == other.outcomes_ && mass_ == other.mass_;
}

template <class T>
SpacePtr<T> uniform_space(std::size_t n, std::string_view prefix) {
  if (n == 0) throw ContractViolation("uniform space needs at least one outcome");
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) ids.push_back(std::string(prefix) + std::to_string(i));
  std::vector<T> mass(n, num::make<T>(1, static_cast<long>(n)));
  if constexpr (!NumTraits<T>::exact) {
    // Keep the total within tolerance for large n.
    mass.back() = 1.0 - std::accumulate(mass.begin(), mass.end() - 1, 0.0);
  }
  return make_space<T>(std::move(ids), std::move(mass));
}

template <class T>
bool same_space(const SpacePtr<T>& a, const SpacePtr<T>& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

template <class T>
void require_same_space(const SpacePtr<T>& a, const SpacePtr<T>& b, std::string_view what) {
  if (!same_space(a, b)) throw ContractViolation(std::string(what) + ": objects live on different sample spaces");
}

template <class T>
RandomVariable<T>::RandomVariable(SpacePtr<T> space, std::vector<Extended<T>> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) throw ContractViolation("random variable without a sample space");
  if (values_.size() != space_->size()) {
    throw ContractViolation("random variable has " + std::to_string(values_.size()) + " values on a space of " +
                            std::to_string(space_->size()) + " outcomes");
  }
}

template <class T>
RandomVariable<T>::RandomVariable(SpacePtr<T> space, const std::vector<T>& values)
    : RandomVariable(std::move(space), std::vector<Extended<T>>(values.begin(), values.end())) {}

template <class T>
RandomVariable<T> RandomVariable<T>::constant(SpacePtr<T> space, const Extended<T>& c) {
  const std::size_t n = space ? space->size() : 0;
  return RandomVariable(std::move(space), std::vector<Extended<T>>(n, c));
}

template <class T>
bool RandomVariable<T>::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](const Extended<T>& v) { return v.is_finite(); });
}

template <class T>
std::vector<T> RandomVariable<T>::finite_values() const {
  std::vector<T> out;
  out.reserve(values_.size());
  for (const auto& v : values_) out.push_back(v.value());
  return out;
}

template <class T>
RandomVariable<T> linear_combination(const T& a, const RandomVariable<T>& x, const T& b, const RandomVariable<T>& z) {
  require_same_space(x.space(), z.space(), "linear_combination");
  std::vector<Extended<T>> out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.emplace_back(T(a * x[i].value() + b * z[i].value()));
  return RandomVariable<T>(x.space(), std::move(out));
}

template <class T>
Partition<T>::Partition(SpacePtr<T> space, std::vector<std::vector<std::size_t>> cells)
    : space_(std::move(space)), cells_(std::move(cells)) {
  if (!space_) throw ContractViolation("partition without a sample space");
  constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
  cell_of_.assign(space_->size(), unassigned);
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    if (cells_[c].empty()) throw ContractViolation("partition has an empty cell");
    for (std::size_t i : cells_[c]) {
      if (i >= space_->size()) throw ContractViolation("partition cell refers to outcome outside the space");
      if (cell_of_[i] != unassigned) {
        throw ContractViolation("partition cells overlap on outcome '" + space_->outcomes()[i] + "'");
      }
      cell_of_[i] = c;
    }
  }
  for (std::size_t i = 0; i < cell_of_.size(); ++i) {
    if (cell_of_[i] == unassigned) {
      throw ContractViolation("partition does not cover outcome '" + space_->outcomes()[i] + "'");
    }
  }
}

template <class T>
Partition<T> Partition<T>::trivial(SpacePtr<T> space) {
  std::vector<std::size_t> all(space->size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return Partition(std::move(space), {std::move(all)});
}

template <class T>
Partition<T> Partition<T>::singletons(SpacePtr<T> space) {
  std::vector<std::vector<std::size_t>> cells(space->size());
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = {i};
  return Partition(std::move(space), std::move(cells));
}

template <class T>
T Partition<T>::cell_mass(std::size_t cell) const {
  T total = 0;
  for (std::size_t i : cells_.at(cell)) total += space_->mass(i);
  return total;
}

template <class T>
Extended<T> expectation(const RandomVariable<T>& x) {
  const auto& space = *x.space();
  T total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!space.positive(i)) continue;
    if (x[i].is_infinite()) return Extended<T>::infinity();
    total += space.mass(i) * x[i].value();
  }
  return Extended<T>(total);
}

template <class T>
Extended<T> esssup(const RandomVariable<T>& x) {
  const auto& space = *x.space();
  bool seen = false;
  Extended<T> best;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!space.positive(i)) continue;
    if (!seen || best < x[i]) best = x[i];
    seen = true;
  }
  return best;
}

template <class T>
Conditioned<T> conditional_expectation(const RandomVariable<T>& x, const Partition<T>& pi, const Extended<T>& fill) {
  require_same_space(x.space(), pi.space(), "conditional_expectation");
  const auto& space = *x.space();
  std::vector<Extended<T>> out(x.size(), fill);
  std::vector<std::size_t> dropped;
  for (std::size_t c = 0; c < pi.cells().size(); ++c) {
    const auto& cell = pi.cells()[c];
    T cell_mass = 0;
    T weighted = 0;
    bool infinite = false;
    for (std::size_t i : cell) {
      if (!space.positive(i)) continue;
      cell_mass += space.mass(i);
      if (x[i].is_infinite()) {
        infinite = true;
      } else {
        weighted += space.mass(i) * x[i].value();
      }
    }
    if (cell_mass == 0) {
      dropped.push_back(c);
      continue;
    }
    const Extended<T> mean = infinite ? Extended<T>::infinity() : Extended<T>(T(weighted / cell_mass));
    for (std::size_t i : cell) out[i] = mean;
  }
  return {RandomVariable<T>(x.space(), std::move(out)), std::move(dropped)};
}

template <class T>
Extended<T> quantile(const RandomVariable<T>& x, const T& tau) {
  if (!(tau > 0 && tau < 1)) throw ContractViolation("quantile level must lie in (0,1), got " + num::format(tau));
  const auto& space = *x.space();
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (space.positive(i)) order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  T cumulative = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    cumulative += space.mass(order[k]);
    // Ties: only stop once the whole atom group at this value is absorbed.
    const bool group_end = k + 1 == order.size() || x[order[k]] < x[order[k + 1]];
    if (group_end && num::le(tau, cumulative)) return x[order[k]];
  }
  return x[order.back()];
}

#define POSTHOC_INSTANTIATE(T)                                                                                \
  template class FiniteSpace<T>;                                                                              \
  template class RandomVariable<T>;                                                                           \
  template class Partition<T>;                                                                                \
  template SpacePtr<T> uniform_space<T>(std::size_t, std::string_view);                                       \
  template bool same_space<T>(const SpacePtr<T>&, const SpacePtr<T>&);                                        \
  template void require_same_space<T>(const SpacePtr<T>&, const SpacePtr<T>&, std::string_view);             \
  template RandomVariable<T> linear_combination<T>(const T&, const RandomVariable<T>&, const T&,              \
                                                   const RandomVariable<T>&);                                 \
  template Extended<T> expectation<T>(const RandomVariable<T>&);                                              \
  template Extended<T> esssup<T>(const RandomVariable<T>&);                                                   \
  template Conditioned<T> conditional_expectation<T>(const RandomVariable<T>&, const Partition<T>&,          \
                                                     const Extended<T>&);                                     \
  template Extended<T> quantile<T>(const RandomVariable<T>&, const T&);

POSTHOC_INSTANTIATE(Rational)
POSTHOC_INSTANTIATE(double)

}  // namespace posthoc
