#pragma once

// Scalar backends: exact rationals (GMP) for exact audits, doubles for sweeps.
// Every numeric template in the library is instantiated for both.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace posthoc {

using Rational = mpq_class;

enum class Backend { Rational, Double };

std::string_view backend_name(Backend b);
Backend parse_backend(std::string_view text);

template <class T>
struct NumTraits;

template <>
struct NumTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr Backend backend = Backend::Rational;

  static Rational ratio(long num, long den);
  /// Accepts "p/q", integers and decimals with optional exponent; decimals are exact.
  static Rational parse(std::string_view text);
  static std::string format(const Rational& v);
  static double to_double(const Rational& v) { return v.get_d(); }
  static bool eq(const Rational& a, const Rational& b) { return a == b; }
  static bool le(const Rational& a, const Rational& b) { return a <= b; }
  static Rational power(const Rational& base, unsigned exponent);
  static bool is_integer(const Rational& v) { return v.get_den() == 1; }
  /// Exact q-th root when numerator and denominator are perfect powers.
  static std::optional<Rational> exact_root(const Rational& v, unsigned q);
  static Rational from_double(double d);
  /// Largest integer <= v, saturated to int64.
  static std::int64_t floor(const Rational& v);
};

template <>
struct NumTraits<double> {
  static constexpr bool exact = false;
  static constexpr Backend backend = Backend::Double;
  static constexpr double tolerance = 1e-12;

  static double ratio(long num, long den) { return static_cast<double>(num) / static_cast<double>(den); }
  static double parse(std::string_view text);
  static std::string format(double v);
  static double to_double(double v) { return v; }
  static bool eq(double a, double b);
  static bool le(double a, double b);
  static double power(double base, unsigned exponent);
  static bool is_integer(double v);
  static std::optional<double> exact_root(double v, unsigned q);
  static double from_double(double d) { return d; }
  static std::int64_t floor(double v);
};

namespace num {

template <class T>
T make(long numerator, long denominator = 1) {
  return NumTraits<T>::ratio(numerator, denominator);
}

template <class T>
T parse(std::string_view text) {
  return NumTraits<T>::parse(text);
}

template <class T>
std::string format(const T& v) {
  return NumTraits<T>::format(v);
}

template <class T>
double to_double(const T& v) {
  return NumTraits<T>::to_double(v);
}

/// Terminating rationals as exact decimals ("0.95"), others as "p/q"; doubles shortest.
std::string pretty(const Rational& v);
inline std::string pretty(double v) { return NumTraits<double>::format(v); }

/// Equality: exact for rationals, within 1e-12 for doubles.
template <class T>
bool eq(const T& a, const T& b) {
  return NumTraits<T>::eq(a, b);
}

template <class T>
bool le(const T& a, const T& b) {
  return NumTraits<T>::le(a, b);
}

template <class T>
bool lt(const T& a, const T& b) {
  return !NumTraits<T>::le(b, a);
}

}  // namespace num

/// A value in [-inf-free reals] U {+inf}. Only +inf is representable; the library
/// never needs -inf. 0 * inf = 0.
template <class T>
class Extended {
 public:
  Extended() : value_(0) {}
  template <class U>
    requires std::constructible_from<T, U> && (!std::same_as<std::remove_cvref_t<U>, Extended>)
  Extended(U&& v) : value_(std::forward<U>(v)) {}  // NOLINT(google-explicit-constructor)

  static Extended infinity() {
    Extended e;
    e.infinite_ = true;
    return e;
  }

  bool is_infinite() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }

  /// Finite value; throws std::logic_error on +inf.
  const T& value() const;

  double to_double() const;
  std::string format() const;

  friend Extended operator+(const Extended& a, const Extended& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Extended(T(a.value_ + b.value_));
  }

  friend Extended operator*(const Extended& a, const Extended& b) {
    if (a.infinite_ || b.infinite_) {
      const Extended& other = a.infinite_ ? b : a;
      if (other.is_finite() && other.value_ == 0) return Extended();
      check_nonnegative(other);
      return infinity();
    }
    return Extended(T(a.value_ * b.value_));
  }

  friend bool operator==(const Extended& a, const Extended& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend bool operator<(const Extended& a, const Extended& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator>(const Extended& a, const Extended& b) { return b < a; }
  friend bool operator<=(const Extended& a, const Extended& b) { return !(b < a); }
  friend bool operator>=(const Extended& a, const Extended& b) { return !(a < b); }

 private:
  static void check_nonnegative(const Extended& other);

  T value_;
  bool infinite_ = false;
};

namespace num {

template <class T>
bool eq(const Extended<T>& a, const Extended<T>& b) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
  return NumTraits<T>::eq(a.value(), b.value());
}

template <class T>
bool le(const Extended<T>& a, const Extended<T>& b) {
  if (b.is_infinite()) return true;
  if (a.is_infinite()) return false;
  return NumTraits<T>::le(a.value(), b.value());
}

template <class T>
bool lt(const Extended<T>& a, const Extended<T>& b) {
  return !le(b, a);
}

/// Parses a number or "inf".
template <class T>
Extended<T> parse_extended(std::string_view text) {
  if (text == "inf" || text == "+inf" || text == "infinity") return Extended<T>::infinity();
  return Extended<T>(NumTraits<T>::parse(text));
}

}  // namespace num

}  // namespace posthoc
