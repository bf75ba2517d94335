#pragma once

// Exact integers, rationals and closed rational intervals.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "morphfreq/errors.hpp"

namespace morphfreq {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr std::size_t kDefaultMaxBigIntBits = 1'000'000;

/// Safety cap on big-integer size, read once from MORPHFREQ_MAX_BIGINT_BITS.
inline std::size_t max_bigint_bits() {
  static const std::size_t cap = [] {
    const char* env = std::getenv("MORPHFREQ_MAX_BIGINT_BITS");
    if (env == nullptr || *env == '\0') return kDefaultMaxBigIntBits;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) return kDefaultMaxBigIntBits;
    return static_cast<std::size_t>(v);
  }();
  return cap;
}

inline std::size_t bit_length(const BigInt& x) {
  if (x == 0) return 0;
  return boost::multiprecision::msb(boost::multiprecision::abs(x)) + 1;
}

inline void check_bits(const BigInt& x, const char* what) {
  const std::size_t bits = bit_length(x);
  if (bits > max_bigint_bits()) {
    throw BigIntCapExceeded(what, bits, max_bigint_bits());
  }
}

inline BigInt numerator_of(const Rational& r) {
  return boost::multiprecision::numerator(r);
}
inline BigInt denominator_of(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

/// floor(a / b) for b > 0.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if (a % b != 0 && a > 0) ++q;
  return q;
}

inline Rational floor_to_bits(const Rational& r, unsigned bits) {
  const BigInt scale = BigInt(1) << bits;
  return Rational(floor_div(numerator_of(r) * scale, denominator_of(r)), scale);
}

inline Rational ceil_to_bits(const Rational& r, unsigned bits) {
  const BigInt scale = BigInt(1) << bits;
  return Rational(ceil_div(numerator_of(r) * scale, denominator_of(r)), scale);
}

/// "p/q" with q > 0 always present, e.g. "0/1", "5/13".
inline std::string to_fraction_string(const Rational& r) {
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

/// Round-half-up decimal rendering with `digits` places after the point.
inline std::string to_decimal_string(const Rational& r, unsigned digits = 12) {
  BigInt scale = 1;
  for (unsigned i = 0; i < digits; ++i) scale *= 10;
  const BigInt num = numerator_of(r);
  const BigInt den = denominator_of(r);
  const bool negative = num < 0;
  const BigInt scaled = (boost::multiprecision::abs(num) * scale * 2 + den) / (den * 2);
  const BigInt whole = scaled / scale;
  std::string frac = BigInt(scaled % scale).str();
  if (frac.size() < digits) frac.insert(0, digits - frac.size(), '0');
  std::string out = (negative && scaled != 0 ? "-" : "") + whole.str();
  if (digits > 0) out += "." + frac;
  return out;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Exact parse of "p/q", "0.001", "1e-6", "2.5E3" or a plain integer.
inline Rational parse_rational(std::string_view text) {
  const auto fail = [&] {
    return InvalidArgument("not a rational number: '" + std::string(text) + "'");
  };
  if (text.empty()) throw fail();
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    try {
      const BigInt p(std::string(text.substr(0, slash)));
      const BigInt q(std::string(text.substr(slash + 1)));
      if (q == 0) throw fail();
      return Rational(p, q);
    } catch (const std::runtime_error&) {
      throw fail();
    }
  }
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
  BigInt mantissa = 0;
  long long exponent = 0;
  bool any_digit = false;
  for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
    mantissa = mantissa * 10 + (text[pos] - '0');
    any_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    for (++pos; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
      mantissa = mantissa * 10 + (text[pos] - '0');
      --exponent;
      any_digit = true;
    }
  }
  if (!any_digit) throw fail();
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_negative = text[pos++] == '-';
    }
    long long e = 0;
    bool exp_digit = false;
    for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
      e = e * 10 + (text[pos] - '0');
      exp_digit = true;
      if (e > 100000) throw fail();
    }
    if (!exp_digit) throw fail();
    exponent += exp_negative ? -e : e;
  }
  if (pos != text.size()) throw fail();
  BigInt power = 1;
  for (long long i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) power *= 10;
  Rational value = exponent < 0 ? Rational(mantissa, power) : Rational(mantissa * power);
  return negative ? Rational(-value) : value;
}

/// Closed interval [lo, hi] with exact rational endpoints.
struct Interval {
  Rational lo;
  Rational hi;

  Interval() = default;
  explicit Interval(const Rational& point) : lo(point), hi(point) {}
  Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {}

  [[nodiscard]] Rational width() const { return hi - lo; }
  [[nodiscard]] Rational midpoint() const { return (lo + hi) / 2; }
  [[nodiscard]] bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  [[nodiscard]] bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  [[nodiscard]] bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
  [[nodiscard]] bool is_point() const { return lo == hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

inline Interval operator+(const Interval& a, const Interval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

inline Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

inline std::optional<Interval> intersection(const Interval& a, const Interval& b) {
  Interval r{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
  if (r.lo > r.hi) return std::nullopt;
  return r;
}

inline Interval clamp_unit(const Interval& a) {
  Interval r{std::clamp(a.lo, Rational(0), Rational(1)),
             std::clamp(a.hi, Rational(0), Rational(1))};
  return r;
}

inline Interval widen(const Interval& a, const Rational& by) {
  return {a.lo - by, a.hi + by};
}

/// Endpoints rounded outward onto the grid 2^-bits; the result contains `a`.
inline Interval round_outward(const Interval& a, unsigned bits) {
  return {floor_to_bits(a.lo, bits), ceil_to_bits(a.hi, bits)};
}

/// Enclosure of num/den for num >= 0 and den.lo > 0.
inline Interval divide_nonnegative(const Interval& num, const Interval& den) {
  return {num.lo / den.hi, num.hi / den.lo};
}

}  // namespace morphfreq
