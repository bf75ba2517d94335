#pragma once

// Factor frequencies from level-M summaries of the images phi^M(a).
//
// For a factor v of length L and a level M, the summaries hold |phi^M(a)|_v
// and |phi^M(a)| exactly, without expanding phi^M(a). The estimate
//
//     C_{v,M} = sum_{a in A_U} |phi^M(a)|_v alpha_a / sum_{a in A_U} |phi^M(a)| alpha_a
//
// tends to the frequency of v as M grows, and the frequency lies within
// 2 delta*/3 of it, where delta* is the smallest gap the level-M image
// lengths of the unbounded letters can certify.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "morphfreq/errors.hpp"
#include "morphfreq/fixed_point.hpp"
#include "morphfreq/letter_spectrum.hpp"
#include "morphfreq/morphism.hpp"
#include "morphfreq/numeric.hpp"
#include "morphfreq/word.hpp"

namespace morphfreq {

/// Compressed view of phi^M(a) for factor length L. Words of length at most
/// 2(L-1) are kept whole; longer ones keep only their L-1 letter ends, which
/// is all that seam counting ever reads.
struct LevelSummary {
  BigInt length;
  BigInt count;
  bool full = true;
  Word word;    // full form
  Word prefix;  // windows form
  Word suffix;

  [[nodiscard]] WordView head() const { return full ? WordView(word) : WordView(prefix); }
  [[nodiscard]] WordView tail() const { return full ? WordView(word) : WordView(suffix); }
};

/// Level-by-level summaries for one factor, starting at level 0 (phi^0 = Id).
class LevelRecurrence {
 public:
  LevelRecurrence(Morphism phi, Word factor) : phi_(std::move(phi)), factor_(std::move(factor)) {
    if (factor_.empty()) throw InvalidArgument("empty factor has no occurrence count");
    const std::size_t window = factor_.size() - 1;
    summaries_.resize(phi_.size());
    for (Letter a : phi_.alphabet().letters()) {
      LevelSummary& s = summaries_[a.id];
      s.length = 1;
      s.count = (factor_.size() == 1 && factor_[0] == a) ? 1 : 0;
      s.full = 1 <= 2 * window;
      if (s.full) s.word = {a};
    }
  }

  [[nodiscard]] std::uint64_t level() const noexcept { return level_; }
  [[nodiscard]] const Word& factor() const noexcept { return factor_; }
  [[nodiscard]] const std::vector<LevelSummary>& summaries() const noexcept { return summaries_; }
  [[nodiscard]] const LevelSummary& operator[](Letter a) const { return summaries_.at(a.id); }

  /// Level M to M+1: phi^{M+1}(a) is the concatenation of the blocks
  /// phi^M(c), c in phi(a). Counts add up, plus the occurrences straddling
  /// each block boundary, found from a carry of the last L-1 letters.
  void advance() {
    const std::size_t window = factor_.size() - 1;
    std::vector<LevelSummary> next(phi_.size());
    for (Letter a : phi_.alphabet().letters()) {
      LevelSummary& out = next[a.id];
      out.length = 0;
      out.count = 0;
      Word carry;
      for (Letter c : phi_.image(a)) {
        const LevelSummary& block = summaries_[c.id];
        out.count += block.count;
        if (window > 0) out.count += seam_count(carry, block.head(), factor_);
        out.length += block.length;
        if (window > 0) carry = window_suffix(concat(carry, block.tail()), window);
      }
      check_bits(out.length, "level summary length");

      out.full = out.length <= 2 * window;
      if (out.full) {
        for (Letter c : phi_.image(a)) {
          const Word& w = summaries_[c.id].word;
          out.word.insert(out.word.end(), w.begin(), w.end());
        }
      } else {
        for (Letter c : phi_.image(a)) {
          const LevelSummary& block = summaries_[c.id];
          const WordView h = block.head();
          out.prefix.insert(out.prefix.end(), h.begin(), h.end());
          if (out.prefix.size() >= window) break;
        }
        out.prefix.resize(window);
        out.suffix = std::move(carry);
      }
    }
    summaries_ = std::move(next);
    ++level_;
  }

  void advance_to(std::uint64_t m) {
    while (level_ < m) advance();
  }

 private:
  Morphism phi_;
  Word factor_;
  std::vector<LevelSummary> summaries_;
  std::uint64_t level_ = 0;
};

/// Summaries of phi^M(a) for every letter a.
inline std::vector<LevelSummary> level_summaries(const Morphism& phi, WordView v, std::uint64_t m) {
  LevelRecurrence rec(phi, Word(v.begin(), v.end()));
  rec.advance_to(m);
  return rec.summaries();
}

struct CValue {
  std::uint64_t level = 0;
  Interval value;
};

/// Enclosure of C_{v,M}, restricted to the unbounded letters.
inline CValue c_value(const std::vector<LevelSummary>& summaries, std::uint64_t level,
                      const FrequencyVector& freqs, const LetterClassification& cls) {
  Interval num(Rational(0));
  Interval den(Rational(0));
  for (Letter a : cls.unbounded) {
    const LevelSummary& s = summaries.at(a.id);
    const Interval& alpha = freqs[a];
    num = num + Interval(alpha.lo * s.count, alpha.hi * s.count);
    den = den + Interval(alpha.lo * s.length, alpha.hi * s.length);
  }
  if (den.lo <= 0) throw DegenerateSupport();
  const unsigned bits = detail::precision_bits_for(freqs.tolerance) + 16;
  return {level, clamp_unit(round_outward(divide_nonnegative(num, den), bits))};
}

struct ErrorBound {
  std::uint64_t level = 0;
  Rational delta_star;
  Rational bound;             // 2 delta_star / 3
  BigInt min_length;          // g_M = min over A_U of |phi^M(a)|
  bool vacuous = false;       // delta_star >= 3: the bound says nothing in [0, 1]
  bool outside_range = false; // delta_star >= 6: second threshold term degenerates
};

/// Smallest gap delta certified at level M. With alpha the bounded mass and
/// g = g_M, the level-M threshold holds for every delta with
///     delta >= 6 (L + alpha k1) / ((1 - alpha) g)
///     delta >= 6 k1 alpha / ((1 - alpha) g + k1 alpha).
/// Both terms increase with alpha, so the upper end of the enclosure is used.
inline ErrorBound error_bound_for_length(const LetterClassification& cls, const Interval& alpha,
                                         std::size_t factor_length, std::uint64_t level,
                                         const BigInt& min_length) {
  if (cls.unbounded.empty()) throw InvalidArgument("error bound needs an unbounded letter");
  if (factor_length == 0) throw InvalidArgument("factor length must be positive");
  if (alpha.hi >= 1) throw DegenerateAlpha();
  const Rational a = alpha.hi;
  const Rational k1(cls.k1);
  const Rational g(min_length);
  const Rational rest = 1 - a;
  const Rational first = 6 * (factor_length + a * k1) / (rest * g);
  const Rational second = a == 0 ? Rational(0) : Rational(6 * k1 * a / (rest * g + k1 * a));
  ErrorBound eb;
  eb.level = level;
  eb.delta_star = std::max(first, second);
  eb.bound = eb.delta_star * 2 / 3;
  eb.min_length = min_length;
  eb.vacuous = eb.delta_star >= 3;
  eb.outside_range = eb.delta_star >= 6;
  return eb;
}

inline ErrorBound guaranteed_error_bound(const LetterClassification& cls, const Interval& alpha,
                                         std::size_t factor_length, std::uint64_t level,
                                         const Morphism& phi) {
  if (cls.unbounded.empty()) throw InvalidArgument("error bound needs an unbounded letter");
  if (alpha.hi >= 1) throw DegenerateAlpha();
  const IncidenceMatrix p = incidence_matrix(phi).power(level);
  BigInt g = p.column_sum(cls.unbounded.front().id);
  for (Letter a : cls.unbounded) g = std::min(g, p.column_sum(a.id));
  return error_bound_for_length(cls, alpha, factor_length, level, g);
}

enum class Verdict { converged, level_cap_reached, degenerate_support };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::converged: return "converged";
    case Verdict::level_cap_reached: return "level-cap-reached";
    case Verdict::degenerate_support: return "degenerate-support";
  }
  return "?";
}

struct LevelEstimate {
  CValue c;
  std::optional<ErrorBound> bound;
  Interval envelope;  // C interval widened by the bound, within [0, 1]
};

struct FactorFrequencyReport {
  Word factor;
  std::vector<LevelEstimate> levels;
  Interval estimate;
  Verdict verdict = Verdict::level_cap_reached;
  bool heuristic = false;  // stopped on C agreement because no bound was available
  std::optional<EmpiricalSeries> empirical;
  std::optional<bool> empirical_consistent;
  std::string note;

  [[nodiscard]] const LevelEstimate* final_level() const {
    return levels.empty() ? nullptr : &levels.back();
  }
};

struct EstimateOptions {
  Rational tol{1, 1000};
  std::uint64_t max_level = 64;
  std::optional<std::uint64_t> empirical_check;
  std::optional<Rational> letter_tol;       // default tol / 64
  std::uint64_t fallback_length = 100'000;  // empirical estimate when C is 0/0
};

namespace detail {

inline std::vector<std::uint64_t> checkpoints_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> cps;
  for (std::uint64_t c : {n / 100, n / 10, n}) {
    if (c > 0 && (cps.empty() || c > cps.back())) cps.push_back(c);
  }
  return cps;
}

}  // namespace detail

/// Advances M = 1, 2, ... until the envelope [C - bound, C + bound] is at
/// most `tol` wide. The returned estimate is the intersection of every
/// envelope seen. Without a bound (bounded mass reaching 1) the loop stops
/// once four consecutive C intervals fit in `tol`.
inline FactorFrequencyReport estimate_frequency(const Morphism& phi, Letter b, WordView v,
                                                const EstimateOptions& opts,
                                                const FrequencyVector& freqs,
                                                const LetterClassification& cls) {
  if (v.empty()) throw InvalidArgument("empty factor has no occurrence count");
  if (opts.tol <= 0) throw InvalidArgument("tolerance must be positive");
  if (!is_prolongable(phi, b)) throw NotProlongable(phi.alphabet().token(b));

  FactorFrequencyReport report;
  report.factor.assign(v.begin(), v.end());
  if (!freqs.converged()) {
    report.note = std::string("letter frequencies ") + to_string(freqs.diagnostic);
  }
  const Interval alpha = bounded_mass(freqs, cls);

  LevelRecurrence rec(phi, report.factor);
  std::optional<Interval> running;
  bool degenerate = false;
  bool done = false;
  for (std::uint64_t m = 1; m <= opts.max_level && !done; ++m) {
    try {
      rec.advance();
    } catch (const BigIntCapExceeded& e) {
      report.note = e.what();
      break;
    }
    LevelEstimate lvl;
    try {
      lvl.c = c_value(rec.summaries(), m, freqs, cls);
    } catch (const DegenerateSupport& e) {
      report.note = e.what();
      degenerate = true;
      break;
    }
    BigInt g = rec[cls.unbounded.front()].length;
    for (Letter a : cls.unbounded) g = std::min(g, rec[a].length);
    try {
      lvl.bound = error_bound_for_length(cls, alpha, v.size(), m, g);
    } catch (const DegenerateAlpha& e) {
      if (report.note.empty()) report.note = e.what();
    }

    if (lvl.bound) {
      lvl.envelope = clamp_unit(widen(lvl.c.value, lvl.bound->bound));
      if (!running) {
        running = lvl.envelope;
      } else if (auto both = intersection(*running, lvl.envelope)) {
        running = *both;
      } else {
        report.note = "level envelopes are disjoint";
        running = lvl.envelope;
      }
      done = lvl.envelope.width() <= opts.tol;
      report.levels.push_back(std::move(lvl));
      if (done) {
        report.verdict = Verdict::converged;
        report.estimate = *running;
      }
    } else {
      lvl.envelope = lvl.c.value;
      report.levels.push_back(std::move(lvl));
      const std::size_t n = report.levels.size();
      if (n >= 4) {
        Interval h = report.levels[n - 4].c.value;
        for (std::size_t i = n - 3; i < n; ++i) h = hull(h, report.levels[i].c.value);
        if (h.width() <= opts.tol) {
          done = true;
          report.verdict = Verdict::converged;
          report.heuristic = true;
          report.estimate = h;
        }
      }
    }
  }

  if (degenerate) {
    report.verdict = Verdict::degenerate_support;
    const std::uint64_t n = opts.empirical_check.value_or(opts.fallback_length);
    report.estimate = Interval(empirical_factor_count(phi, b, v, n).ratio);
  } else if (!done) {
    report.verdict = Verdict::level_cap_reached;
    if (running) {
      report.estimate = *running;
    } else if (!report.levels.empty()) {
      report.estimate = report.levels.back().c.value;
    } else {
      report.estimate = Interval(Rational(0), Rational(1));
    }
  }

  if (opts.empirical_check) {
    const std::uint64_t n = *opts.empirical_check;
    report.empirical = empirical_series(phi, b, v, detail::checkpoints_up_to(n), n / 100);
    const Rational ratio = report.empirical->last().ratio;
    if (report.verdict == Verdict::degenerate_support || report.levels.empty()) {
      report.empirical_consistent = report.estimate.contains(ratio);
    } else {
      const LevelEstimate& last = report.levels.back();
      const Rational allowance = (last.bound ? last.bound->bound : Rational(0)) + opts.tol;
      const Rational dev = boost::multiprecision::abs(Rational(ratio - last.c.value.midpoint()));
      report.empirical_consistent = dev <= allowance;
    }
  }
  return report;
}

inline FactorFrequencyReport estimate_frequency(const Morphism& phi, Letter b, WordView v,
                                                const EstimateOptions& opts = {}) {
  if (!is_prolongable(phi, b)) throw NotProlongable(phi.alphabet().token(b));
  LetterFrequencyOptions lopts;
  lopts.cross_check_length = 0;
  const Rational letter_tol = opts.letter_tol.value_or(Rational(opts.tol / 64));
  const FrequencyVector freqs = letter_frequencies(phi, b, letter_tol, lopts);
  return estimate_frequency(phi, b, v, opts, freqs, classify_letters(phi));
}

}  // namespace morphfreq
