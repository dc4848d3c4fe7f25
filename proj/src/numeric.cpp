#include "posthoc/numeric.hpp"

#include <gmp.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "posthoc/errors.hpp"

namespace posthoc {

std::string_view backend_name(Backend b) {
  return b == Backend::Rational ? "rational" : "double";
}

Backend parse_backend(std::string_view text) {
  if (text == "rational" || text == "exact") return Backend::Rational;
  if (text == "double" || text == "float") return Backend::Double;
  throw ConfigError("unknown arithmetic backend '" + std::string(text) + "' (expected rational|double)");
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw ConfigError("malformed number '" + std::string(text) + "'");
}

mpz_class parse_integer(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (!all_digits(text)) bad_number(whole);
  mpz_class z(std::string(text), 10);
  return negative ? mpz_class(-z) : z;
}

Rational parse_decimal(std::string_view text) {
  const std::string_view whole = text;
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = text.substr(e + 1);
    text = text.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) bad_number(whole);
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
  }
  std::string digits;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) bad_number(whole);
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part))) {
      bad_number(whole);
    }
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(text)) bad_number(whole);
    digits = std::string(text);
  }
  mpz_class mantissa(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational r = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

}  // namespace

Rational NumTraits<Rational>::ratio(long num, long den) {
  if (den == 0) throw ContractViolation("ratio with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational NumTraits<Rational>::parse(std::string_view text) {
  text = trim(text);
  if (text.empty()) bad_number(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class n = parse_integer(trim(text.substr(0, slash)), text);
    mpz_class d = parse_integer(trim(text.substr(slash + 1)), text);
    if (d == 0) throw ConfigError("zero denominator in '" + std::string(text) + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
  }
  return parse_decimal(text);
}

std::string NumTraits<Rational>::format(const Rational& v) {
  return v.get_str();
}

Rational NumTraits<Rational>::power(const Rational& base, unsigned exponent) {
  Rational out;
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  out = Rational(num, den);
  out.canonicalize();
  return out;
}

std::optional<Rational> NumTraits<Rational>::exact_root(const Rational& v, unsigned q) {
  if (q == 0) return std::nullopt;
  if (sgn(v) < 0) return std::nullopt;
  mpz_class num, den;
  if (mpz_root(num.get_mpz_t(), v.get_num_mpz_t(), q) == 0) return std::nullopt;
  if (mpz_root(den.get_mpz_t(), v.get_den_mpz_t(), q) == 0) return std::nullopt;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational NumTraits<Rational>::from_double(double d) {
  if (!std::isfinite(d)) throw ContractViolation("cannot convert non-finite double to rational");
  return Rational(d);
}

std::int64_t NumTraits<Rational>::floor(const Rational& v) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  if (!q.fits_slong_p()) {
    return sgn(q) > 0 ? std::numeric_limits<std::int64_t>::max() : std::numeric_limits<std::int64_t>::min();
  }
  return q.get_si();
}

double NumTraits<double>::parse(std::string_view text) {
  text = trim(text);
  if (text.empty()) bad_number(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const double n = parse(text.substr(0, slash));
    const double d = parse(text.substr(slash + 1));
    if (d == 0.0) throw ConfigError("zero denominator in '" + std::string(text) + "'");
    return n / d;
  }
  // Route through the exact parser so malformed input is rejected identically.
  return NumTraits<Rational>::parse(text).get_d();
}

std::string NumTraits<double>::format(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw std::runtime_error("to_chars failed");
  return std::string(buf.data(), ptr);
}

bool NumTraits<double>::eq(double a, double b) {
  return std::fabs(a - b) <= tolerance * std::max(1.0, std::max(std::fabs(a), std::fabs(b)));
}

bool NumTraits<double>::le(double a, double b) {
  return a <= b + tolerance * std::max(1.0, std::fabs(b));
}

double NumTraits<double>::power(double base, unsigned exponent) {
  return std::pow(base, static_cast<double>(exponent));
}

bool NumTraits<double>::is_integer(double v) {
  return std::isfinite(v) && std::floor(v) == v;
}

std::optional<double> NumTraits<double>::exact_root(double v, unsigned q) {
  if (q == 0 || v < 0) return std::nullopt;
  return std::pow(v, 1.0 / static_cast<double>(q));
}

std::int64_t NumTraits<double>::floor(double v) {
  const double f = std::floor(v);
  if (f >= 9.2e18) return std::numeric_limits<std::int64_t>::max();
  if (f <= -9.2e18) return std::numeric_limits<std::int64_t>::min();
  return static_cast<std::int64_t>(f);
}

template <class T>
const T& Extended<T>::value() const {
  if (infinite_) throw std::logic_error("finite value requested from +inf");
  return value_;
}

template <class T>
double Extended<T>::to_double() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : NumTraits<T>::to_double(value_);
}

template <class T>
std::string Extended<T>::format() const {
  return infinite_ ? std::string("inf") : NumTraits<T>::format(value_);
}

template <class T>
void Extended<T>::check_nonnegative(const Extended& other) {
  if (other.is_finite() && other.value_ < 0) {
    throw ContractViolation("negative value times +inf is not representable");
  }
}

namespace num {

std::string pretty(const Rational& v) {
  mpz_class den = v.get_den();
  unsigned twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2) != 0) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5) != 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return v.get_str();
  const unsigned digits = std::max(twos, fives);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  mpz_class scaled = v.get_num() * (scale / v.get_den());
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string body = scaled.get_str();
  if (digits > 0) {
    if (body.size() <= digits) body.insert(0, digits - body.size() + 1, '0');
    body.insert(body.size() - digits, ".");
  }
  return negative ? "-" + body : body;
}

}  // namespace num

template class Extended<Rational>;
template class Extended<double>;

}  // namespace posthoc
