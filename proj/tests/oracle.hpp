#pragma once

// Independent reference computations for the test suites. Plain vectors of
// mpq_class and direct loops only; nothing here calls into the library.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Vec = std::vector<Q>;

/// "p/q", integers, or plain decimals such as "-0.05".
inline Q q(const std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos) {
    Q v(text, 10);
    v.canonicalize();
    return v;
  }
  const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  Q v(mpz_class(digits == "-" || digits.empty() ? "0" : digits, 10), 1);
  mpz_class den = 1;
  for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
  v /= den;
  v.canonicalize();
  return v;
}

/// n/d in canonical form; mpq_class(n, d) alone is not canonicalized.
inline Q frac(long n, long d) {
  Q v(n, d);
  v.canonicalize();
  return v;
}

inline Vec qs(std::initializer_list<const char*> items) {
  Vec out;
  for (const char* s : items) out.push_back(q(s));
  return out;
}

inline Vec uniform(std::size_t n) { return Vec(n, Q(1, static_cast<unsigned long>(n))); }

inline Q mean(const Vec& mass, const Vec& x) {
  Q s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += mass[i] * x[i];
  return s;
}

inline Q max_positive(const Vec& mass, const Vec& x) {
  bool seen = false;
  Q best = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (mass[i] > 0 && (!seen || x[i] > best)) {
      best = x[i];
      seen = true;
    }
  }
  return best;
}

/// Smallest observed value v with P(X <= v) >= tau, by scanning every candidate.
inline Q quantile(const Vec& mass, const Vec& x, const Q& tau) {
  Vec candidates;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (mass[i] > 0) candidates.push_back(x[i]);
  }
  std::sort(candidates.begin(), candidates.end());
  for (const auto& v : candidates) {
    Q cdf = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] <= v) cdf += mass[i];
    }
    if (cdf >= tau) return v;
  }
  return candidates.back();
}

/// Mass-weighted mean of x over the atoms sharing each atom's cell label; fill on null cells.
inline Vec conditional_mean(const Vec& mass, const Vec& x, const std::vector<int>& label, const Q& fill = 0) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    Q num = 0, den = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (label[j] == label[i]) {
        num += mass[j] * x[j];
        den += mass[j];
      }
    }
    out[i] = den > 0 ? Q(num / den) : fill;
  }
  return out;
}

/// Rejection probability of a closed threshold family with sentinel kappa = 1.
inline Q threshold_reject(const Q& kappa, const Q& alpha) { return (kappa < 1 && kappa <= alpha) ? Q(1) : Q(0); }

/// E[P(reject | level) / level], grouping atoms by equal level.
inline Q distortion_ratio(const Vec& mass, const Vec& reject, const Vec& level) {
  std::vector<int> label(level.size());
  for (std::size_t i = 0; i < level.size(); ++i) {
    label[i] = static_cast<int>(i);
    for (std::size_t j = 0; j < i; ++j) {
      if (level[j] == level[i]) {
        label[i] = label[j];
        break;
      }
    }
  }
  const auto cond = conditional_mean(mass, reject, label);
  Q s = 0;
  for (std::size_t i = 0; i < level.size(); ++i) s += mass[i] * cond[i] / level[i];
  return s;
}

/// sum over atoms with level <= a of mass * reject.
inline Q mass_rejecting_at_most(const Vec& mass, const Vec& reject, const Vec& level, const Q& a) {
  Q s = 0;
  for (std::size_t i = 0; i < level.size(); ++i) {
    if (level[i] <= a) s += mass[i] * reject[i];
  }
  return s;
}

inline Q harmonic(unsigned n) {
  Q h = 0;
  for (unsigned k = 1; k <= n; ++k) h += Q(1, k);
  return h;
}

/// Subcritical level a(1 + delta y / M) and event probability level * y.
inline Q sub_level(const Q& a, const Q& delta, const Q& y, const Q& m) { return a * (1 + delta * y / m); }
inline Q super_level(const Q& a, const Q& delta, const Q& y, const Q& m) { return a * (1 - delta * y / m); }

}  // namespace oracle
