#pragma once

// Rational interval enclosures of the letter frequencies of a fixed point.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "morphfreq/errors.hpp"
#include "morphfreq/fixed_point.hpp"
#include "morphfreq/morphism.hpp"
#include "morphfreq/numeric.hpp"
#include "morphfreq/word.hpp"

namespace morphfreq {

enum class FrequencyMethod { eigenvector, power_limit, empirical };
enum class ExistenceDiagnostic { converged, oscillating, inconclusive };

inline const char* to_string(FrequencyMethod m) {
  switch (m) {
    case FrequencyMethod::eigenvector: return "eigenvector";
    case FrequencyMethod::power_limit: return "power-limit";
    case FrequencyMethod::empirical: return "empirical";
  }
  return "?";
}

inline const char* to_string(ExistenceDiagnostic d) {
  switch (d) {
    case ExistenceDiagnostic::converged: return "converged";
    case ExistenceDiagnostic::oscillating: return "oscillating";
    case ExistenceDiagnostic::inconclusive: return "inconclusive";
  }
  return "?";
}

struct FrequencyCrossCheck {
  std::uint64_t n = 0;
  std::vector<Rational> ratios;      // |w[1,n]|_a / n per letter
  std::vector<Rational> allowances;  // admitted |ratio - midpoint| per letter
  bool consistent = true;
};

struct FrequencyVector {
  std::vector<Interval> intervals;  // indexed by letter id
  FrequencyMethod method = FrequencyMethod::eigenvector;
  ExistenceDiagnostic diagnostic = ExistenceDiagnostic::inconclusive;
  Rational tolerance;
  std::uint64_t exponent = 0;  // largest matrix power used
  std::optional<FrequencyCrossCheck> cross_check;
  std::string note;

  [[nodiscard]] const Interval& operator[](Letter a) const { return intervals.at(a.id); }
  [[nodiscard]] bool converged() const { return diagnostic == ExistenceDiagnostic::converged; }

  [[nodiscard]] Rational max_width() const {
    Rational w = 0;
    for (const auto& i : intervals) w = std::max(w, i.width());
    return w;
  }
};

struct LetterFrequencyOptions {
  enum class Route { automatic, eigenvector, power_limit };
  Route route = Route::automatic;
  std::uint64_t cross_check_length = 100'000;  // 0 disables the empirical cross-check
  unsigned max_doublings = 256;
};

namespace detail {

/// Dyadic grid fine enough that rounding costs far less than `tol`.
inline unsigned precision_bits_for(const Rational& tol) {
  const BigInt inv = ceil_div(denominator_of(tol), numerator_of(tol));
  return static_cast<unsigned>(bit_length(inv)) + 40;
}

inline BigInt isqrt(const BigInt& n) { return boost::multiprecision::sqrt(n); }

/// Normalized Perron vector lies in the convex hull of the normalized
/// columns of any power P of the incidence matrix.
inline std::vector<Interval> column_cone_bounds(const IncidenceMatrix& p, unsigned bits) {
  const std::size_t n = p.size();
  std::vector<BigInt> sums(n);
  for (std::size_t j = 0; j < n; ++j) sums[j] = p.column_sum(j);
  std::vector<Interval> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational lo(p.at(i, 0), sums[0]);
    Rational hi = lo;
    for (std::size_t j = 1; j < n; ++j) {
      const Rational r(p.at(i, j), sums[j]);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    out[i] = clamp_unit(round_outward(Interval(lo, hi), bits));
  }
  return out;
}

inline FrequencyVector eigenvector_route(const Morphism& phi, const Rational& tol,
                                         const LetterFrequencyOptions& opts) {
  const unsigned bits = precision_bits_for(tol);
  FrequencyVector fv;
  fv.method = FrequencyMethod::eigenvector;
  fv.tolerance = tol;
  IncidenceMatrix p = incidence_matrix(phi);
  fv.exponent = 1;
  fv.intervals = column_cone_bounds(p, bits);
  for (unsigned k = 0; k <= opts.max_doublings; ++k) {
    if (fv.max_width() <= tol) {
      fv.diagnostic = ExistenceDiagnostic::converged;
      return fv;
    }
    if (k == opts.max_doublings) break;
    try {
      p = p * p;
    } catch (const BigIntCapExceeded& e) {
      fv.note = e.what();
      break;
    }
    fv.exponent *= 2;
    fv.intervals = column_cone_bounds(p, bits);
  }
  fv.diagnostic = ExistenceDiagnostic::inconclusive;
  return fv;
}

/// f_n = M^n e_b / |phi^n(b)| for n = 2^k and 2^k + 1. Converged once the
/// last four iterates span w < tol/6; the reported interval is their hull
/// widened by max(2w, tol/4) on each side, which still covers the limit when
/// the iterates only approach it like 1/n.
inline FrequencyVector power_limit_route(const Morphism& phi, Letter b, const Rational& tol,
                                         const LetterFrequencyOptions& opts) {
  const std::size_t n = phi.size();
  const unsigned bits = precision_bits_for(tol);
  FrequencyVector fv;
  fv.method = FrequencyMethod::power_limit;
  fv.tolerance = tol;
  fv.diagnostic = ExistenceDiagnostic::inconclusive;

  std::vector<std::vector<Rational>> iterates;
  std::vector<Rational> hull_widths;
  IncidenceMatrix p = incidence_matrix(phi);
  std::uint64_t exponent = 1;

  const auto hull_of_last = [&](std::size_t count) {
    std::vector<Interval> h(n);
    const std::size_t first = iterates.size() - std::min(count, iterates.size());
    for (std::size_t i = 0; i < n; ++i) {
      h[i] = Interval(iterates[first][i]);
      for (std::size_t k = first + 1; k < iterates.size(); ++k) h[i] = hull(h[i], Interval(iterates[k][i]));
    }
    return h;
  };

  const IncidenceMatrix base = p;
  const auto distribution = [&](const IncidenceMatrix& q) {
    const BigInt total = q.column_sum(b.id);
    std::vector<Rational> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = Rational(q.at(i, b.id), total);
    return f;
  };

  for (unsigned k = 0; k <= opts.max_doublings; ++k) {
    // n = 2^k and 2^k + 1, so a parity oscillation cannot hide behind the
    // even exponents.
    iterates.push_back(distribution(p));
    try {
      iterates.push_back(distribution(p * base));
    } catch (const BigIntCapExceeded& e) {
      fv.note = e.what();
      break;
    }
    fv.exponent = exponent + 1;

    if (iterates.size() >= 4) {
      const auto h = hull_of_last(4);
      Rational w = 0;
      for (const auto& x : h) w = std::max(w, x.width());
      hull_widths.push_back(w);
      if (w * 6 < tol) {
        fv.diagnostic = ExistenceDiagnostic::converged;
        break;
      }
      const std::size_t m = hull_widths.size();
      if (m > 4 && hull_widths[m - 1] * 2 >= hull_widths[m - 5]) {
        fv.diagnostic = ExistenceDiagnostic::oscillating;
        fv.note = "hull width of the last four iterates did not halve over four doublings";
        break;
      }
    }
    if (k == opts.max_doublings) {
      fv.note = "doubling cap reached";
      break;
    }
    try {
      p = p * p;
    } catch (const BigIntCapExceeded& e) {
      fv.note = e.what();
      break;
    }
    exponent *= 2;
  }

  const auto h = hull_of_last(4);
  Rational spread = 0;
  for (const auto& x : h) spread = std::max(spread, x.width());
  const Rational margin = std::max(Rational(2 * spread), Rational(tol / 4));
  fv.intervals.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    fv.intervals[i] = clamp_unit(round_outward(widen(h[i], margin), bits));
  }
  return fv;
}

inline FrequencyCrossCheck cross_check(const Morphism& phi, Letter b, const FrequencyVector& fv,
                                       std::uint64_t n) {
  FrequencyCrossCheck cc;
  cc.n = n;
  std::vector<std::uint64_t> counts(phi.size(), 0);
  FixedPointStream s(phi, b);
  for (std::uint64_t i = 0; i < n; ++i) ++counts[s.next().id];
  const Rational slack(10, isqrt(BigInt(n)));
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const Rational ratio(counts[i], n);
    const Interval& enclosure = fv.intervals[i];
    const Rational allowance = std::max(Rational(fv.tolerance * 10), Rational(enclosure.width() + slack));
    const Rational dev = boost::multiprecision::abs(Rational(ratio - enclosure.midpoint()));
    if (dev > allowance) cc.consistent = false;
    cc.ratios.push_back(ratio);
    cc.allowances.push_back(allowance);
  }
  return cc;
}

}  // namespace detail

/// Enclosures of the letter frequencies of lim phi^n(b).
///
/// Primitive morphisms use the rigorous column-cone enclosure of the
/// normalized Perron vector of powers of the incidence matrix (squared until
/// every width is at most `tol`). Otherwise the letter distribution of
/// phi^n(b) is followed for n = 1, 2, 4, ... until the last four iterates
/// agree within tol/6. Either result is checked against an empirical count.
inline FrequencyVector letter_frequencies(const Morphism& phi, Letter b, const Rational& tol,
                                          const LetterFrequencyOptions& opts = {}) {
  if (tol <= 0) throw InvalidArgument("tolerance must be positive");
  if (b.id >= phi.size()) throw UnknownLetter("#" + std::to_string(b.id));
  if (!is_prolongable(phi, b)) throw NotProlongable(phi.alphabet().token(b));

  using Route = LetterFrequencyOptions::Route;
  const bool eigen = opts.route == Route::eigenvector ||
                     (opts.route == Route::automatic && is_primitive(phi));
  FrequencyVector fv = eigen ? detail::eigenvector_route(phi, tol, opts)
                             : detail::power_limit_route(phi, b, tol, opts);
  if (opts.cross_check_length > 0) {
    fv.cross_check = detail::cross_check(phi, b, fv, opts.cross_check_length);
    if (!fv.cross_check->consistent && fv.method == FrequencyMethod::power_limit &&
        fv.diagnostic == ExistenceDiagnostic::converged) {
      fv.diagnostic = ExistenceDiagnostic::inconclusive;
      fv.note = "empirical cross-check disagrees with the power limit";
    }
  }
  return fv;
}

using BoundedMass = Interval;

/// Sum of the enclosures over the bounded letters, within [0, 1].
inline BoundedMass bounded_mass(const FrequencyVector& freqs, const LetterClassification& cls) {
  Interval sum(Rational(0));
  for (Letter a : cls.bounded) sum = sum + freqs[a];
  return clamp_unit(sum);
}

}  // namespace morphfreq
