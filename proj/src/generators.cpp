#include "posthoc/generators.hpp"

#include <string>

#include "posthoc/errors.hpp"

namespace posthoc {

long Rng::between(long lo, long hi) {
  if (hi < lo) throw ContractViolation("empty random range");
  const auto width = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(engine_() % width);
}

namespace {

template <class T>
T hundredths(long k) {
  return num::make<T>(k, 100);
}

}  // namespace

template <class T>
SpacePtr<T> random_space(Rng& rng, std::size_t atoms, bool allow_null_atoms) {
  if (atoms == 0) throw ContractViolation("random space needs at least one atom");
  std::vector<long> weights(atoms);
  long total = 0;
  do {
    total = 0;
    for (auto& w : weights) {
      w = rng.between(allow_null_atoms ? 0 : 1, 10);
      total += w;
    }
  } while (total == 0);
  std::vector<std::string> ids;
  std::vector<T> mass;
  for (std::size_t i = 0; i < atoms; ++i) {
    ids.push_back("w" + std::to_string(i + 1));
    mass.push_back(num::make<T>(weights[i], total));
  }
  return make_space<T>(std::move(ids), std::move(mass));
}

template <class T>
RandomVariable<T> random_variable(Rng& rng, const SpacePtr<T>& space, long max_k) {
  std::vector<T> values;
  values.reserve(space->size());
  for (std::size_t i = 0; i < space->size(); ++i) values.push_back(hundredths<T>(rng.between(0, max_k)));
  return RandomVariable<T>(space, values);
}

template <class T>
Partition<T> random_partition(Rng& rng, const SpacePtr<T>& space, std::size_t max_cells) {
  if (max_cells == 0) throw ContractViolation("partition needs at least one cell");
  std::vector<std::vector<std::size_t>> cells(max_cells);
  for (std::size_t i = 0; i < space->size(); ++i) {
    cells[static_cast<std::size_t>(rng.between(0, static_cast<long>(max_cells) - 1))].push_back(i);
  }
  std::erase_if(cells, [](const auto& c) { return c.empty(); });
  return Partition<T>(space, std::move(cells));
}

template <class T>
RandomVariable<T> random_profile(Rng& rng, Regime regime) {
  for (;;) {
    const auto space = random_space<T>(rng, static_cast<std::size_t>(rng.between(2, 5)));
    auto y = random_variable<T>(rng, space, 300);
    const T mean = expectation(y).value();
    if (regime == Regime::Subcritical ? num::lt(mean, T(1)) : num::lt(T(1), mean)) return y;
  }
}

template <class T>
std::vector<RandomVariable<T>> generate_profile_suite(std::uint64_t seed, std::size_t per_regime) {
  Rng rng(seed);
  std::vector<RandomVariable<T>> suite;
  suite.reserve(2 * per_regime);
  for (std::size_t i = 0; i < per_regime; ++i) {
    suite.push_back(random_profile<T>(rng, Regime::Subcritical));
    suite.push_back(random_profile<T>(rng, Regime::Supercritical));
  }
  return suite;
}

template <class T>
TestFamily<T> random_threshold_family(Rng& rng, const SpacePtr<T>& space) {
  std::vector<T> kappa;
  kappa.reserve(space->size());
  for (std::size_t i = 0; i < space->size(); ++i) {
    const long pick = rng.between(1, 10);
    kappa.push_back(pick == 1 ? T(0) : pick == 2 ? T(1) : hundredths<T>(rng.between(1, 99)));
  }
  return TestFamily<T>::threshold(space, std::move(kappa));
}

template <class T>
TestFamily<T> random_coupled_family(Rng& rng, const SpacePtr<T>& space) {
  std::vector<T> r;
  r.reserve(space->size());
  for (std::size_t i = 0; i < space->size(); ++i) r.push_back(hundredths<T>(rng.between(0, 100)));
  return TestFamily<T>::coupled(space, std::move(r));
}

template <class T>
DataDependentLevel<T> random_level(Rng& rng, const SpacePtr<T>& space) {
  std::vector<T> levels;
  levels.reserve(space->size());
  for (std::size_t i = 0; i < space->size(); ++i) levels.push_back(hundredths<T>(rng.between(1, 99)));
  return DataDependentLevel<T>(space, std::move(levels));
}

#define POSTHOC_INSTANTIATE(T)                                                                           \
  template SpacePtr<T> random_space<T>(Rng&, std::size_t, bool);                                         \
  template RandomVariable<T> random_variable<T>(Rng&, const SpacePtr<T>&, long);                         \
  template Partition<T> random_partition<T>(Rng&, const SpacePtr<T>&, std::size_t);                      \
  template RandomVariable<T> random_profile<T>(Rng&, Regime);                                            \
  template std::vector<RandomVariable<T>> generate_profile_suite<T>(std::uint64_t, std::size_t);         \
  template TestFamily<T> random_threshold_family<T>(Rng&, const SpacePtr<T>&);                           \
  template TestFamily<T> random_coupled_family<T>(Rng&, const SpacePtr<T>&);                             \
  template DataDependentLevel<T> random_level<T>(Rng&, const SpacePtr<T>&);

POSTHOC_INSTANTIATE(Rational)
POSTHOC_INSTANTIATE(double)

}  // namespace posthoc
