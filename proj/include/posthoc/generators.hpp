#pragma once

// Seeded random instances for property sweeps. Draws use only the raw 64-bit
// output of mt19937_64, so a seed gives the same instances on every platform.
// All probabilities are small-denominator rationals, exact under both backends'
// parsers.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "posthoc/axioms.hpp"
#include "posthoc/finprob.hpp"
#include "posthoc/testfam.hpp"

namespace posthoc {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [lo, hi].
  long between(long lo, long hi);
  bool chance(long num, long den) { return between(1, den) <= num; }

 private:
  std::mt19937_64 engine_;
};

/// Masses w_i / sum(w) with w_i in 1..10, or 0..10 (at least one positive) with null atoms.
template <class T>
SpacePtr<T> random_space(Rng& rng, std::size_t atoms, bool allow_null_atoms = false);

/// Values k/100 with k in [0, max_k].
template <class T>
RandomVariable<T> random_variable(Rng& rng, const SpacePtr<T>& space, long max_k = 300);

/// Each outcome joins one of up to `max_cells` cells; empty cells are dropped.
template <class T>
Partition<T> random_partition(Rng& rng, const SpacePtr<T>& space, std::size_t max_cells);

/// Bounded profile on 2 to 5 atoms, values k/100 with k in [0, 300], with E[Y] < 1
/// (subcritical) or E[Y] > 1 (supercritical). Resampled until the regime matches.
template <class T>
RandomVariable<T> random_profile(Rng& rng, Regime regime);

/// 2 * per_regime profiles, alternating subcritical and supercritical.
template <class T>
std::vector<RandomVariable<T>> generate_profile_suite(std::uint64_t seed, std::size_t per_regime);

/// kappa = 0 or 1 with chance 1/10 each, otherwise k/100 with k in 1..99.
template <class T>
TestFamily<T> random_threshold_family(Rng& rng, const SpacePtr<T>& space);

/// r = k/100 with k in 0..100.
template <class T>
TestFamily<T> random_coupled_family(Rng& rng, const SpacePtr<T>& space);

/// Levels k/100 with k in 1..99.
template <class T>
DataDependentLevel<T> random_level(Rng& rng, const SpacePtr<T>& space);

}  // namespace posthoc
