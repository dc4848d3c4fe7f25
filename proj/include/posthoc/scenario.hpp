#pragma once

// A self-contained bundle of everything a validity check needs: the null, a
// family, named data-dependent levels and the notion to check them under.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "posthoc/errors.hpp"
#include "posthoc/testfam.hpp"
#include "posthoc/validity.hpp"

namespace posthoc {

struct MonotonicityPair {
  std::string valid;
  std::string weaker;
};

template <class T>
struct Scenario {
  SpacePtr<T> space;
  std::optional<TestFamily<T>> family;
  std::map<std::string, DataDependentLevel<T>> levels;
  std::optional<CertaintyEquivalent<T>> rho;
  std::optional<LossFunction<T>> loss;
  /// "general" (rho/loss) or "mean_level".
  NotionKind notion = NotionKind::General;
  /// Preservation thresholds a; the distinct level values are always added.
  std::vector<T> a_grid;
  std::optional<MonotonicityPair> monotonicity;
  std::uint64_t seed = 0;
  std::string description;

  ValidityNotion<T> validity_notion() const {
    if (notion == NotionKind::MeanLevel) return ValidityNotion<T>::mean_level();
    return ValidityNotion<T>::general(rho.value_or(CertaintyEquivalent<T>::expectation()),
                                      loss.value_or(LossFunction<T>::canonical()));
  }

  const DataDependentLevel<T>& level(const std::string& name) const {
    auto it = levels.find(name);
    if (it == levels.end()) throw ConfigError("scenario has no level named '" + name + "'");
    return it->second;
  }
};

}  // namespace posthoc
