#pragma once

// Lazy generation of the fixed point w = lim phi^n(b) and empirical factor
// counts over its prefixes.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "morphfreq/errors.hpp"
#include "morphfreq/morphism.hpp"
#include "morphfreq/numeric.hpp"
#include "morphfreq/word.hpp"

namespace morphfreq {

/// Single-consumer iterator over the letters of w.
///
/// With phi(b) = b u, the fixed point factors as w = b u phi(u) phi^2(u) ...
/// Each block phi^k(u) is produced depth-first from a stack of
/// (letter, remaining depth) frames; bounded letters are resolved in one
/// step from their precomputed orbit. For growing morphisms the stack
/// stays O(log n) deep.
class FixedPointStream {
 public:
  FixedPointStream(Morphism phi, Letter start)
      : phi_(std::move(phi)), cls_(classify_letters(phi_)), start_(start) {
    if (!is_prolongable(phi_, start_)) throw NotProlongable(phi_.alphabet().token(start_));
    const Word& img = phi_.image(start_);
    tail_.assign(img.begin() + 1, img.end());
  }

  Letter next() {
    ++emitted_;
    if (emitted_ == 1) return start_;
    while (true) {
      if (stack_.empty()) {
        push_reversed(tail_, level_);
        ++level_;
      }
      const Frame f = stack_.back();
      stack_.pop_back();
      if (f.depth == 0) return f.letter;
      if (const auto& orbit = cls_.orbits[f.letter.id]) {
        push_reversed(orbit->at(f.depth), 0);
      } else {
        push_reversed(phi_.image(f.letter), f.depth - 1);
      }
    }
  }

  [[nodiscard]] std::uint64_t emitted() const noexcept { return emitted_; }
  [[nodiscard]] std::size_t stack_depth() const noexcept { return stack_.size(); }
  [[nodiscard]] std::size_t max_stack_depth() const noexcept { return max_depth_; }
  [[nodiscard]] const Morphism& morphism() const noexcept { return phi_; }
  [[nodiscard]] const LetterClassification& classification() const noexcept { return cls_; }

 private:
  struct Frame {
    Letter letter;
    std::uint64_t depth;
  };

  void push_reversed(const Word& w, std::uint64_t depth) {
    for (auto it = w.rbegin(); it != w.rend(); ++it) stack_.push_back({*it, depth});
    max_depth_ = std::max(max_depth_, stack_.size());
  }

  Morphism phi_;
  LetterClassification cls_;
  Letter start_;
  Word tail_;
  std::vector<Frame> stack_;
  std::uint64_t level_ = 0;
  std::uint64_t emitted_ = 0;
  std::size_t max_depth_ = 0;
};

inline FixedPointStream stream(const Morphism& phi, Letter b) { return FixedPointStream(phi, b); }

/// w[1, n].
inline Word prefix(const Morphism& phi, Letter b, std::uint64_t n) {
  FixedPointStream s(phi, b);
  Word out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(s.next());
  return out;
}

struct EmpiricalCount {
  std::uint64_t count = 0;
  Rational ratio;
};

/// (|w[1,n]|_v, |w[1,n]|_v / n) in O(|v| + stack) memory.
inline EmpiricalCount empirical_factor_count(const Morphism& phi, Letter b, WordView v, std::uint64_t n) {
  if (n == 0) throw InvalidArgument("prefix length must be at least 1");
  PatternMatcher matcher(Word(v.begin(), v.end()));
  FixedPointStream s(phi, b);
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < n; ++i) count += matcher.feed(s.next()) ? 1 : 0;
  return {count, Rational(count, n)};
}

struct EmpiricalCheckpoint {
  std::uint64_t n = 0;
  std::uint64_t count = 0;
  Rational ratio;
};

/// Ratios |w[1,n]|_v / n at checkpoints; min/max over checkpoints past
/// burn-in, whose spread estimates any oscillation of the ratio.
struct EmpiricalSeries {
  Word factor;
  std::uint64_t burn_in = 0;
  std::vector<EmpiricalCheckpoint> checkpoints;
  Rational min_ratio;
  Rational max_ratio;

  [[nodiscard]] Rational spread() const { return max_ratio - min_ratio; }
  [[nodiscard]] const EmpiricalCheckpoint& last() const { return checkpoints.back(); }
};

inline EmpiricalSeries empirical_series(const Morphism& phi, Letter b, WordView v,
                                        const std::vector<std::uint64_t>& checkpoints,
                                        std::uint64_t burn_in) {
  if (checkpoints.empty()) throw InvalidArgument("at least one checkpoint is required");
  if (checkpoints.front() == 0) throw InvalidArgument("checkpoints must be positive");
  for (std::size_t i = 1; i < checkpoints.size(); ++i) {
    if (checkpoints[i] <= checkpoints[i - 1]) throw InvalidArgument("checkpoints must be strictly increasing");
  }
  EmpiricalSeries series;
  series.factor.assign(v.begin(), v.end());
  series.burn_in = burn_in;
  PatternMatcher matcher(series.factor);
  FixedPointStream s(phi, b);
  std::uint64_t count = 0;
  std::uint64_t pos = 0;
  bool have_range = false;
  for (std::uint64_t target : checkpoints) {
    for (; pos < target; ++pos) count += matcher.feed(s.next()) ? 1 : 0;
    EmpiricalCheckpoint cp{target, count, Rational(count, target)};
    if (target > burn_in) {
      if (!have_range) {
        series.min_ratio = series.max_ratio = cp.ratio;
        have_range = true;
      } else {
        series.min_ratio = std::min(series.min_ratio, cp.ratio);
        series.max_ratio = std::max(series.max_ratio, cp.ratio);
      }
    }
    series.checkpoints.push_back(std::move(cp));
  }
  if (!have_range) series.min_ratio = series.max_ratio = series.checkpoints.back().ratio;
  return series;
}

}  // namespace morphfreq
