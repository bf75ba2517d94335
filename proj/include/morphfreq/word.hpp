#pragma once

// Letters, alphabets, finite words and the occurrence-counting primitives.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "morphfreq/errors.hpp"

namespace morphfreq {

/// Index of a letter in its alphabet.
struct Letter {
  std::uint32_t id = 0;

  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;
using WordView = std::span<const Letter>;

inline bool is_token_char(char c) {
  return static_cast<unsigned char>(c) > 0x20 && c != 0x7f;
}

/// Ordered set of letter tokens. A token is a non-empty run of
/// non-whitespace characters, so alphabets are not limited to 26 symbols.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      const std::string& t = tokens_[i];
      if (t.empty() || !std::all_of(t.begin(), t.end(), is_token_char)) {
        throw InvalidArgument("invalid letter token '" + t + "'");
      }
      if (!index_.emplace(t, static_cast<std::uint32_t>(i)).second) {
        throw InvalidArgument("duplicate letter token '" + t + "'");
      }
    }
  }

  /// Alphabet of the single-character tokens of `chars`, e.g. "ab".
  static Alphabet of_chars(std::string_view chars) {
    std::vector<std::string> tokens;
    for (char c : chars) tokens.emplace_back(1, c);
    return Alphabet(std::move(tokens));
  }

  [[nodiscard]] std::size_t size() const noexcept { return tokens_.size(); }
  [[nodiscard]] const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  [[nodiscard]] const std::string& token(Letter a) const { return tokens_.at(a.id); }

  [[nodiscard]] std::optional<Letter> find(std::string_view token) const {
    const auto it = index_.find(std::string(token));
    if (it == index_.end()) return std::nullopt;
    return Letter{it->second};
  }

  [[nodiscard]] Letter letter(std::string_view token) const {
    if (auto a = find(token)) return *a;
    throw UnknownLetter(std::string(token));
  }

  [[nodiscard]] std::vector<Letter> letters() const {
    std::vector<Letter> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = Letter{static_cast<std::uint32_t>(i)};
    return out;
  }

  /// Whitespace-separated tokens to a word.
  [[nodiscard]] Word parse_word(std::string_view text) const {
    Word w;
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && !is_token_char(text[i])) ++i;
      std::size_t j = i;
      while (j < text.size() && is_token_char(text[j])) ++j;
      if (j > i) w.push_back(letter(text.substr(i, j - i)));
      i = j;
    }
    return w;
  }

  /// Word spelled by concatenated single-character tokens, e.g. "abaab".
  [[nodiscard]] Word spell(std::string_view chars) const {
    Word w;
    for (char c : chars) w.push_back(letter(std::string_view(&c, 1)));
    return w;
  }

  [[nodiscard]] std::string format(WordView w, std::string_view sep = " ") const {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i > 0) out += sep;
      out += token(w[i]);
    }
    return out;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.tokens_ == b.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

/// Knuth-Morris-Pratt automaton for one pattern; feeds letters one at a time
/// and reports each (possibly overlapping) match end.
class PatternMatcher {
 public:
  explicit PatternMatcher(Word pattern) : pattern_(std::move(pattern)), failure_(pattern_.size(), 0) {
    if (pattern_.empty()) throw InvalidArgument("empty factor has no occurrence count");
    for (std::size_t i = 1, k = 0; i < pattern_.size(); ++i) {
      while (k > 0 && pattern_[i] != pattern_[k]) k = failure_[k - 1];
      if (pattern_[i] == pattern_[k]) ++k;
      failure_[i] = k;
    }
  }

  /// Returns true when the letters fed so far end with the pattern.
  bool feed(Letter c) {
    if (state_ == pattern_.size()) state_ = failure_[state_ - 1];
    while (state_ > 0 && pattern_[state_] != c) state_ = failure_[state_ - 1];
    if (pattern_[state_] == c) ++state_;
    return state_ == pattern_.size();
  }

  void reset() noexcept { state_ = 0; }
  [[nodiscard]] const Word& pattern() const noexcept { return pattern_; }

 private:
  Word pattern_;
  std::vector<std::size_t> failure_;
  std::size_t state_ = 0;
};

/// |w|_v: number of positions i with w[i, i+|v|-1] = v, overlaps included.
inline std::uint64_t count_occurrences(WordView w, WordView v) {
  PatternMatcher matcher(Word(v.begin(), v.end()));
  std::uint64_t n = 0;
  for (Letter c : w) n += matcher.feed(c) ? 1 : 0;
  return n;
}

inline Word window_prefix(WordView w, std::size_t k) {
  const std::size_t n = std::min(k, w.size());
  return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n));
}

inline Word window_suffix(WordView w, std::size_t k) {
  const std::size_t n = std::min(k, w.size());
  return Word(w.end() - static_cast<std::ptrdiff_t>(n), w.end());
}

inline Word concat(WordView a, WordView b) {
  Word out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

/// Occurrences of v in left·right that start inside `left` and end inside
/// `right`. Only the |v|-1 letters on either side of the seam matter.
inline std::uint64_t seam_count(WordView left, WordView right, WordView v) {
  if (v.empty()) throw InvalidArgument("empty factor has no occurrence count");
  if (v.size() < 2) return 0;
  const Word joined = concat(window_suffix(left, v.size() - 1), window_prefix(right, v.size() - 1));
  // Every match in `joined` straddles: each side holds fewer than |v| letters.
  return count_occurrences(joined, v);
}

}  // namespace morphfreq
