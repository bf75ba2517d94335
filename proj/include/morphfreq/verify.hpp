#pragma once

// Cross-examination of the level estimates against empirical prefix counts,
// for every factor of the fixed point up to a given length.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <vector>

#include "morphfreq/factor_frequency.hpp"
#include "morphfreq/fixed_point.hpp"
#include "morphfreq/letter_spectrum.hpp"
#include "morphfreq/morphism.hpp"
#include "morphfreq/numeric.hpp"
#include "morphfreq/word.hpp"

namespace morphfreq {

/// Shorter factors first, then lexicographic in alphabet order.
struct FactorOrder {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

using FactorCounts = std::map<Word, std::uint64_t, FactorOrder>;

/// |w[1,n]|_v for every factor v of w[1,n] with |v| <= max_length, in one pass.
inline FactorCounts factor_counts(const Morphism& phi, Letter b, std::size_t max_length, std::uint64_t n) {
  FactorCounts counts;
  FixedPointStream s(phi, b);
  std::deque<Letter> window;
  Word key;
  for (std::uint64_t i = 0; i < n; ++i) {
    window.push_back(s.next());
    if (window.size() > max_length) window.pop_front();
    key.clear();
    for (auto it = window.rbegin(); it != window.rend(); ++it) {
      key.insert(key.begin(), *it);
      ++counts[key];
    }
  }
  return counts;
}

struct FactorCheck {
  FactorFrequencyReport report;
  std::uint64_t count = 0;  // |w[1,n]|_v
  Rational empirical;       // |w[1,n]|_v / n
  Rational deviation;       // |empirical - midpoint of C at the final level|
  Rational allowance;       // 2 delta*/3 + slack
  bool pass = false;
};

struct VerificationResult {
  std::uint64_t prefix_length = 0;
  std::size_t max_length = 0;
  Rational slack;
  std::vector<FactorCheck> factors;

  [[nodiscard]] std::size_t violations() const {
    return static_cast<std::size_t>(
        std::count_if(factors.begin(), factors.end(), [](const FactorCheck& f) { return !f.pass; }));
  }
  [[nodiscard]] bool passed() const { return violations() == 0; }
};

/// For each factor v of w[1,n] with |v| <= max_length: estimate the
/// frequency by levels and require
///     |w[1,n]|_v / n - mid C_{v,M}| <= 2 delta*(M) / 3 + tol
/// at the final level M. Without a bound the allowance is `tol` around the
/// reported estimate.
inline VerificationResult verify_factors(const Morphism& phi, Letter b, std::size_t max_length,
                                         std::uint64_t n, const Rational& tol, std::uint64_t max_level,
                                         const FrequencyVector& freqs, const LetterClassification& cls) {
  if (max_length == 0) throw InvalidArgument("maximum factor length must be positive");
  if (n == 0) throw InvalidArgument("prefix length must be at least 1");
  VerificationResult result;
  result.prefix_length = n;
  result.max_length = max_length;
  result.slack = tol;

  EstimateOptions opts;
  opts.tol = tol;
  opts.max_level = max_level;
  opts.fallback_length = n;

  for (const auto& [factor, count] : factor_counts(phi, b, max_length, n)) {
    FactorCheck check;
    check.report = estimate_frequency(phi, b, factor, opts, freqs, cls);
    check.count = count;
    check.empirical = Rational(count, n);
    const LevelEstimate* last = check.report.final_level();
    const bool bounded_level = check.report.verdict != Verdict::degenerate_support && last && last->bound;
    const Rational centre = bounded_level ? last->c.value.midpoint() : check.report.estimate.midpoint();
    check.deviation = boost::multiprecision::abs(Rational(check.empirical - centre));
    check.allowance = (bounded_level ? last->bound->bound : Rational(0)) + tol;
    check.pass = check.deviation <= check.allowance;
    result.factors.push_back(std::move(check));
  }
  return result;
}

inline VerificationResult verify_factors(const Morphism& phi, Letter b, std::size_t max_length,
                                         std::uint64_t n, const Rational& tol, std::uint64_t max_level = 64) {
  LetterFrequencyOptions lopts;
  lopts.cross_check_length = 0;
  const FrequencyVector freqs = letter_frequencies(phi, b, Rational(tol / 64), lopts);
  return verify_factors(phi, b, max_length, n, tol, max_level, freqs, classify_letters(phi));
}

}  // namespace morphfreq
