#include "posthoc/evalue.hpp"

#include <algorithm>
#include <stdexcept>

#include "posthoc/errors.hpp"

namespace posthoc {

template <class T>
EValue<T>::EValue(SpacePtr<T> space, std::vector<Decision<T>> decisions)
    : space_(std::move(space)), decisions_(std::move(decisions)) {
  if (!space_) throw ContractViolation("e-value needs a space");
  if (decisions_.size() != space_->size()) throw ContractViolation("e-value needs one decision per outcome");
}

template <class T>
RandomVariable<T> EValue<T>::numeric() const {
  std::vector<Extended<T>> values;
  values.reserve(decisions_.size());
  for (const auto& d : decisions_) values.push_back(numeric_rep(d));
  return RandomVariable<T>(space_, std::move(values));
}

template <class T>
Extended<T> EValue<T>::expected() const {
  return expectation(numeric());
}

template <class T>
TestFamily<T> as_threshold(const TestFamily<T>& phi) {
  if (phi.form() == FamilyForm::Threshold) return phi;
  std::vector<T> kappa;
  kappa.reserve(phi.values().size());
  for (const auto& r : phi.values()) {
    if (r == 1) {
      kappa.emplace_back(0);
    } else if (r == 0) {
      kappa.emplace_back(1);
    } else {
      throw RandomizedEValue("e-values need a pointwise family; coupled rejection probability " + num::format(r) +
                             " is strictly between 0 and 1");
    }
  }
  return TestFamily<T>::threshold(phi.space(), std::move(kappa));
}

template <class T>
EValue<T> evalue_of_family(const TestFamily<T>& phi) {
  const auto threshold = as_threshold(phi);
  std::vector<Decision<T>> decisions;
  decisions.reserve(threshold.values().size());
  for (const auto& kappa : threshold.values()) {
    decisions.push_back(kappa == 1 ? Decision<T>::non_reject() : Decision<T>::reject_at(kappa));
  }
  return EValue<T>(phi.space(), std::move(decisions));
}

namespace {

// Critical levels in (0,1) and the midpoints between neighbours, including the ends.
template <class T>
std::vector<T> probe_levels(const TestFamily<T>& phi) {
  std::vector<T> points{T(0), T(1)};
  for (const auto& k : phi.values()) {
    if (k > 0 && k < 1) points.push_back(k);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<T> out;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (i > 0) out.push_back(points[i]);
    out.push_back(T((points[i] + points[i + 1]) / 2));
  }
  return out;
}

}  // namespace

template <class T>
ClosureFamily<T> closure(const TestFamily<T>& phi) {
  auto e = evalue_of_family(phi);
  auto generated = as_threshold(phi);
  for (const auto& alpha : probe_levels(generated)) {
    for (std::size_t x = 0; x < phi.space()->size(); ++x) {
      if (phi.rejection_probability(x, alpha) > generated.rejection_probability(x, alpha)) {
        throw std::logic_error("closure does not dominate its source at level " + num::format(alpha));
      }
    }
  }
  if (!(evalue_of_family(generated) == e)) throw std::logic_error("closure changed the e-value");
  return ClosureFamily<T>{phi, std::move(e), std::move(generated)};
}

template <class T>
DataDependentLevel<T> posthoc_approximation(const TestFamily<T>& phi, std::size_t n) {
  if (n == 0) throw ContractViolation("post-hoc approximation index must be positive");
  const auto threshold = as_threshold(phi);
  const T step = T(T(1) / T(static_cast<long>(n) + 1));
  std::vector<T> levels;
  levels.reserve(threshold.values().size());
  for (const auto& kappa : threshold.values()) {
    if (kappa == 0) {
      levels.push_back(step);
    } else if (kappa == 1) {
      levels.push_back(T(1 - step));
    } else {
      levels.push_back(kappa);
    }
  }
  return DataDependentLevel<T>(phi.space(), std::move(levels));
}

template <class T>
RandomVariable<T> evidence_profile(const TestFamily<T>& phi, const DataDependentLevel<T>& alpha_tilde) {
  const auto profile = evaluate(phi, alpha_tilde);
  std::vector<Extended<T>> values;
  values.reserve(profile.level.size());
  for (std::size_t x = 0; x < profile.level.size(); ++x) values.push_back(numeric_rep(profile.decision(x)));
  return RandomVariable<T>(phi.space(), std::move(values));
}

template <class T>
bool bounded_by_evalue(const TestFamily<T>& phi, const DataDependentLevel<T>& alpha_tilde) {
  const auto attained = evidence_profile(phi, alpha_tilde);
  const auto e = evalue_of_family(phi).numeric();
  for (std::size_t x = 0; x < attained.size(); ++x) {
    if (!(attained[x] <= e[x])) return false;
  }
  return true;
}

template <class T>
PosthocValidity<T> posthoc_validity(const TestFamily<T>& phi, const ValidityNotion<T>& notion) {
  const auto threshold = as_threshold(phi);
  const auto e = evalue_of_family(phi);
  const auto expected = e.expected();
  const auto& space = *phi.space();

  // F collects the finite evidence, m0 the mass rejecting at every level.
  T finite = 0;
  T diverging = 0;
  for (std::size_t x = 0; x < space.size(); ++x) {
    const T& kappa = threshold.values()[x];
    if (kappa == 0) {
      diverging += space.mass(x);
    } else if (kappa < 1) {
      finite += space.mass(x) / kappa;
    }
  }
  std::size_t n = 1;
  if (diverging > 0) {
    const auto q = NumTraits<T>::floor(T((1 - finite) / diverging));
    n = static_cast<std::size_t>(std::max<std::int64_t>(1, q));
  }

  const bool certifying = notion.is_pinned();
  auto witness = posthoc_approximation(phi, n);
  auto verdict = notion.evaluate(phi, witness);
  if (certifying && expected.is_infinite()) {
    // Rounding under doubles can leave the first candidate on the boundary.
    for (std::size_t guard = 0; verdict.valid && guard < 64; ++guard) {
      witness = posthoc_approximation(phi, ++n);
      verdict = notion.evaluate(phi, witness);
    }
  }
  bool valid = verdict.valid;
  if (certifying) {
    valid = num::le(expected, Extended<T>(T(1)));
    if (valid != verdict.valid) {
      throw std::logic_error("post-hoc verdict from E[e] disagrees with the adversarial level");
    }
  }
  return PosthocValidity<T>{valid, certifying, expected, std::move(witness), n, std::move(verdict)};
}

template <class T>
bool EValueReport<T>::all_hold() const {
  return std::all_of(implications.begin(), implications.end(), [](const Implication& i) { return i.holds; });
}

namespace {

template <class T>
std::string describe(const PosthocValidity<T>& v) {
  return "E[e] = " + v.expected_evalue.format() + ", witness n = " + std::to_string(v.witness_n) + " scores " +
         v.witness_verdict.score.format();
}

}  // namespace

template <class T>
EValueReport<T> evalue_harness(const TestFamily<T>& phi) {
  const auto cl = closure(phi);
  auto on_family = posthoc_validity(phi);
  auto on_closure = posthoc_validity(cl.closure);
  const auto e_closure = evalue_of_family(cl.closure);
  const bool closure_e_valid = num::le(e_closure.expected(), Extended<T>(T(1)));
  const bool same_e = e_closure == cl.e;

  std::vector<Implication> implications;
  implications.push_back({"family_posthoc_valid_implies_closure_posthoc_valid", "phi post-hoc valid",
                          "closure post-hoc valid", on_family.valid, on_closure.valid,
                          !on_family.valid || on_closure.valid,
                          "phi: " + describe(on_family) + "; closure: " + describe(on_closure)});
  implications.push_back({"closure_posthoc_valid_iff_evalue_valid", "closure post-hoc valid",
                          "E[e_closure] <= 1", on_closure.valid, closure_e_valid, on_closure.valid == closure_e_valid,
                          "E[e_closure] = " + e_closure.expected().format()});
  implications.push_back({"closure_evalue_equals_family_evalue", "always", "e_closure = e_phi pointwise", true, same_e,
                          same_e, same_e ? "identical at every outcome" : "differs"});
  auto expected = cl.e.expected();
  return EValueReport<T>{cl.e, std::move(expected), std::move(on_family), std::move(on_closure),
                         std::move(implications)};
}

template <class T>
TestFamily<T> likelihood_ratio_family(SpacePtr<T> p, const std::vector<T>& q) {
  if (!p || q.size() != p->size()) throw ContractViolation("alternative needs one mass per outcome");
  T total = 0;
  for (const auto& v : q) {
    if (v < 0) throw ContractViolation("alternative masses must be nonnegative");
    total += v;
  }
  if (!num::eq(total, T(1))) throw ContractViolation("alternative masses must sum to 1");
  std::vector<T> kappa;
  kappa.reserve(q.size());
  for (std::size_t x = 0; x < q.size(); ++x) {
    if (p->mass(x) == 0) {
      if (q[x] > 0) throw ContractViolation("alternative puts mass on a null-impossible outcome");
      kappa.emplace_back(1);
      continue;
    }
    const T lr = q[x] / p->mass(x);
    kappa.push_back(num::lt(T(1), lr) ? T(T(1) / lr) : T(1));
  }
  return TestFamily<T>::threshold(std::move(p), std::move(kappa));
}

template <class T>
TestFamily<T> pvalue_family(std::size_t n) {
  auto space = uniform_space<T>(n, "p");
  std::vector<T> kappa;
  kappa.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) kappa.push_back(num::make<T>(static_cast<long>(i), static_cast<long>(n)));
  return TestFamily<T>::threshold(std::move(space), std::move(kappa));
}

#define POSTHOC_INSTANTIATE(T)                                                                         \
  template class EValue<T>;                                                                            \
  template TestFamily<T> as_threshold<T>(const TestFamily<T>&);                                        \
  template EValue<T> evalue_of_family<T>(const TestFamily<T>&);                                        \
  template ClosureFamily<T> closure<T>(const TestFamily<T>&);                                          \
  template DataDependentLevel<T> posthoc_approximation<T>(const TestFamily<T>&, std::size_t);          \
  template RandomVariable<T> evidence_profile<T>(const TestFamily<T>&, const DataDependentLevel<T>&);  \
  template bool bounded_by_evalue<T>(const TestFamily<T>&, const DataDependentLevel<T>&);              \
  template PosthocValidity<T> posthoc_validity<T>(const TestFamily<T>&, const ValidityNotion<T>&);     \
  template struct EValueReport<T>;                                                                     \
  template EValueReport<T> evalue_harness<T>(const TestFamily<T>&);                                  \
  template TestFamily<T> likelihood_ratio_family<T>(SpacePtr<T>, const std::vector<T>&);               \
  template TestFamily<T> pvalue_family<T>(std::size_t);

POSTHOC_INSTANTIATE(Rational)
POSTHOC_INSTANTIATE(double)

}  // namespace posthoc
