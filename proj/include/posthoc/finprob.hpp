#pragma once

// Exact probability on finite sample spaces.

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "posthoc/numeric.hpp"

namespace posthoc {

/// Finite sample space with a probability mass. Outcome ids are unique and the
/// masses are nonnegative and sum to one (exactly for rationals, to 1e-12 for doubles).
template <class T>
class FiniteSpace {
 public:
  FiniteSpace(std::vector<std::string> outcomes, std::vector<T> mass);

  std::size_t size() const noexcept { return outcomes_.size(); }
  const std::vector<std::string>& outcomes() const noexcept { return outcomes_; }
  const std::vector<T>& mass() const noexcept { return mass_; }
  const T& mass(std::size_t i) const { return mass_.at(i); }
  bool positive(std::size_t i) const { return mass_.at(i) > 0; }

  /// Throws ContractViolation for unknown ids.
  std::size_t index_of(std::string_view id) const;
  bool contains(std::string_view id) const;

  bool operator==(const FiniteSpace& other) const;

 private:
  std::vector<std::string> outcomes_;
  std::vector<T> mass_;
  std::unordered_map<std::string, std::size_t> index_;
};

template <class T>
using SpacePtr = std::shared_ptr<const FiniteSpace<T>>;

template <class T>
SpacePtr<T> make_space(std::vector<std::string> outcomes, std::vector<T> mass) {
  return std::make_shared<const FiniteSpace<T>>(std::move(outcomes), std::move(mass));
}

/// n equally likely outcomes named prefix1..prefixn.
template <class T>
SpacePtr<T> uniform_space(std::size_t n, std::string_view prefix = "x");

/// Same pointer, or structurally equal spaces.
template <class T>
bool same_space(const SpacePtr<T>& a, const SpacePtr<T>& b);

template <class T>
void require_same_space(const SpacePtr<T>& a, const SpacePtr<T>& b, std::string_view what);

template <class T>
class RandomVariable {
 public:
  RandomVariable(SpacePtr<T> space, std::vector<Extended<T>> values);
  RandomVariable(SpacePtr<T> space, const std::vector<T>& values);

  static RandomVariable constant(SpacePtr<T> space, const Extended<T>& c);

  const SpacePtr<T>& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return values_.size(); }
  const Extended<T>& operator[](std::size_t i) const { return values_[i]; }
  const std::vector<Extended<T>>& values() const noexcept { return values_; }

  /// True when no outcome (of any mass) carries +inf.
  bool all_finite() const;
  /// Finite values, throwing if any outcome carries +inf.
  std::vector<T> finite_values() const;

 private:
  SpacePtr<T> space_;
  std::vector<Extended<T>> values_;
};

/// a*X + b*Z for finite-valued X, Z on the same space.
template <class T>
RandomVariable<T> linear_combination(const T& a, const RandomVariable<T>& x, const T& b, const RandomVariable<T>& z);

/// Disjoint nonempty cells of outcome indices that cover the space.
template <class T>
class Partition {
 public:
  Partition(SpacePtr<T> space, std::vector<std::vector<std::size_t>> cells);

  static Partition trivial(SpacePtr<T> space);
  static Partition singletons(SpacePtr<T> space);

  const SpacePtr<T>& space() const noexcept { return space_; }
  const std::vector<std::vector<std::size_t>>& cells() const noexcept { return cells_; }
  std::size_t cell_of(std::size_t outcome) const { return cell_of_.at(outcome); }
  T cell_mass(std::size_t cell) const;

 private:
  SpacePtr<T> space_;
  std::vector<std::vector<std::size_t>> cells_;
  std::vector<std::size_t> cell_of_;
};

/// Sum of mass * value with 0 * inf = 0.
template <class T>
Extended<T> expectation(const RandomVariable<T>& x);

/// Maximum over positive-mass outcomes.
template <class T>
Extended<T> esssup(const RandomVariable<T>& x);

template <class T>
struct Conditioned {
  RandomVariable<T> values;
  /// Zero-mass cells; their outcomes carry the fill value instead of a mean.
  std::vector<std::size_t> dropped_cells;
};

/// Mass-weighted mean of x on each cell of pi.
template <class T>
Conditioned<T> conditional_expectation(const RandomVariable<T>& x, const Partition<T>& pi,
                                       const Extended<T>& fill = Extended<T>());

/// Left-continuous quantile inf{v : P(X <= v) >= tau}, tau in (0,1).
template <class T>
Extended<T> quantile(const RandomVariable<T>& x, const T& tau);

}  // namespace posthoc
