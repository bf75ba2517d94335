#pragma once

// Non-erasing morphisms on a finite alphabet: parsing, application,
// incidence matrices and structural analysis (bounded letters, primitivity).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "morphfreq/errors.hpp"
#include "morphfreq/numeric.hpp"
#include "morphfreq/word.hpp"

namespace morphfreq {

class Morphism {
 public:
  Morphism() = default;

  /// `images[i]` is the image of letter i. Throws ErasingRule/UnknownLetter.
  Morphism(Alphabet alphabet, std::vector<Word> images, std::optional<Letter> start = std::nullopt)
      : alphabet_(std::move(alphabet)), images_(std::move(images)), start_(start) {
    if (images_.size() != alphabet_.size()) {
      throw InvalidArgument("morphism needs exactly one image per letter");
    }
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i].empty()) throw ErasingRule(alphabet_.tokens()[i], 0);
      for (Letter c : images_[i]) {
        if (c.id >= alphabet_.size()) throw UnknownLetter("#" + std::to_string(c.id));
      }
    }
    if (start_ && start_->id >= alphabet_.size()) throw UnknownLetter("#" + std::to_string(start_->id));
  }

  /// Convenience for single-character alphabets: {"ab", "a"} over "ab".
  static Morphism of_chars(std::string_view letters, const std::vector<std::string>& images,
                           std::optional<char> start = std::nullopt) {
    Alphabet alphabet = Alphabet::of_chars(letters);
    std::vector<Word> words;
    for (const auto& img : images) words.push_back(alphabet.spell(img));
    std::optional<Letter> s;
    if (start) s = alphabet.letter(std::string_view(&*start, 1));
    return Morphism(std::move(alphabet), std::move(words), s);
  }

  [[nodiscard]] const Alphabet& alphabet() const noexcept { return alphabet_; }
  [[nodiscard]] std::size_t size() const noexcept { return alphabet_.size(); }
  [[nodiscard]] const Word& image(Letter a) const { return images_.at(a.id); }
  [[nodiscard]] const std::vector<Word>& images() const noexcept { return images_; }
  [[nodiscard]] std::optional<Letter> start() const noexcept { return start_; }

  [[nodiscard]] std::size_t max_image_length() const {
    std::size_t m = 0;
    for (const auto& img : images_) m = std::max(m, img.size());
    return m;
  }

  friend bool operator==(const Morphism&, const Morphism&) = default;

 private:
  Alphabet alphabet_;
  std::vector<Word> images_;
  std::optional<Letter> start_;
};

namespace detail {

inline std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && !is_token_char(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && is_token_char(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && !is_token_char(s.front())) s.remove_prefix(1);
  while (!s.empty() && !is_token_char(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Reads the text morphism format:
///
///     # comment
///     alphabet: a b
///     start: a
///     a -> a b
///     b -> a
inline Morphism parse_morphism(std::string_view text) {
  std::optional<Alphabet> alphabet;
  std::optional<Letter> start;
  std::vector<std::optional<Word>> rules;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;

    if (line.starts_with("alphabet:")) {
      if (alphabet) throw ParseError("ParseError: repeated alphabet header", line_no);
      std::vector<std::string> tokens;
      for (auto t : detail::split_tokens(line.substr(9))) tokens.emplace_back(t);
      if (tokens.empty()) throw ParseError("ParseError: empty alphabet", line_no);
      if (std::find(tokens.begin(), tokens.end(), "->") != tokens.end()) {
        throw ParseError("ParseError: '->' cannot be a letter", line_no);
      }
      try {
        alphabet.emplace(std::move(tokens));
      } catch (const InvalidArgument& e) {
        throw ParseError(std::string("ParseError: ") + e.what(), line_no);
      }
      rules.assign(alphabet->size(), std::nullopt);
      continue;
    }
    if (!alphabet) throw ParseError("ParseError: expected 'alphabet:' header first", line_no);

    if (line.starts_with("start:")) {
      const auto tokens = detail::split_tokens(line.substr(6));
      if (tokens.size() != 1) throw ParseError("ParseError: 'start:' takes exactly one letter", line_no);
      const auto s = alphabet->find(tokens[0]);
      if (!s) throw UnknownLetter(std::string(tokens[0]), line_no);
      start = s;
      continue;
    }

    const auto tokens = detail::split_tokens(line);
    if (tokens.size() < 2 || tokens[1] != "->") {
      throw ParseError("ParseError: expected '<letter> -> <letters...>'", line_no);
    }
    const auto lhs = alphabet->find(tokens[0]);
    if (!lhs) throw UnknownLetter(std::string(tokens[0]), line_no);
    if (rules[lhs->id]) throw DuplicateRule(std::string(tokens[0]), line_no);
    if (tokens.size() == 2) throw ErasingRule(std::string(tokens[0]), line_no);
    Word image;
    for (std::size_t i = 2; i < tokens.size(); ++i) {
      const auto c = alphabet->find(tokens[i]);
      if (!c) throw UnknownLetter(std::string(tokens[i]), line_no);
      image.push_back(*c);
    }
    rules[lhs->id] = std::move(image);
  }

  if (!alphabet) throw ParseError("ParseError: missing 'alphabet:' header", 0);
  std::vector<Word> images;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (!rules[i]) throw MissingRule(alphabet->tokens()[i]);
    images.push_back(std::move(*rules[i]));
  }
  return Morphism(std::move(*alphabet), std::move(images), start);
}

/// Canonical text form; rules in alphabet order. parse(serialize(m)) == m.
inline std::string serialize(const Morphism& phi) {
  const Alphabet& alpha = phi.alphabet();
  std::string out = "alphabet: " + alpha.format(alpha.letters()) + "\n";
  if (phi.start()) out += "start: " + alpha.token(*phi.start()) + "\n";
  for (Letter a : alpha.letters()) {
    out += alpha.token(a) + " -> " + alpha.format(phi.image(a)) + "\n";
  }
  return out;
}

inline Word apply(const Morphism& phi, WordView w) {
  Word out;
  for (Letter c : w) {
    if (c.id >= phi.size()) throw UnknownLetter("#" + std::to_string(c.id));
    const Word& img = phi.image(c);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

/// phi^n(w) by explicit expansion. Exponential in n; meant for small cases.
inline Word expand(const Morphism& phi, WordView w, std::uint64_t n) {
  Word cur(w.begin(), w.end());
  for (std::uint64_t i = 0; i < n; ++i) cur = morphfreq::apply(phi, cur);
  return cur;
}

/// Square matrix of big integers. For a morphism, entry (i, j) counts
/// letter i in the image of letter j, so column j sums to |phi(a_j)|.
class IncidenceMatrix {
 public:
  IncidenceMatrix() = default;
  explicit IncidenceMatrix(std::size_t n) : n_(n), entries_(n * n) {}

  static IncidenceMatrix identity(std::size_t n) {
    IncidenceMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  BigInt& at(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  [[nodiscard]] const BigInt& at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  [[nodiscard]] BigInt column_sum(std::size_t j) const {
    BigInt s = 0;
    for (std::size_t i = 0; i < n_; ++i) s += at(i, j);
    return s;
  }

  [[nodiscard]] std::vector<BigInt> column(std::size_t j) const {
    std::vector<BigInt> c(n_);
    for (std::size_t i = 0; i < n_; ++i) c[i] = at(i, j);
    return c;
  }

  [[nodiscard]] bool positive() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const BigInt& x) { return x > 0; });
  }

  friend IncidenceMatrix operator*(const IncidenceMatrix& a, const IncidenceMatrix& b) {
    IncidenceMatrix c(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) {
      for (std::size_t k = 0; k < a.n_; ++k) {
        const BigInt& aik = a.at(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < a.n_; ++j) {
          if (b.at(k, j) != 0) c.at(i, j) += aik * b.at(k, j);
        }
      }
    }
    for (const auto& x : c.entries_) check_bits(x, "matrix product");
    return c;
  }

  [[nodiscard]] std::vector<BigInt> apply(const std::vector<BigInt>& x) const {
    std::vector<BigInt> y(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (at(i, j) != 0) y[i] += at(i, j) * x[j];
      }
    }
    return y;
  }

  /// Binary exponentiation.
  [[nodiscard]] IncidenceMatrix power(std::uint64_t e) const {
    IncidenceMatrix result = identity(n_);
    IncidenceMatrix base = *this;
    while (e > 0) {
      if (e & 1U) result = result * base;
      e >>= 1U;
      if (e > 0) base = base * base;
    }
    return result;
  }

  friend bool operator==(const IncidenceMatrix&, const IncidenceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<BigInt> entries_;
};

inline IncidenceMatrix incidence_matrix(const Morphism& phi) {
  IncidenceMatrix m(phi.size());
  for (Letter a : phi.alphabet().letters()) {
    for (Letter c : phi.image(a)) m.at(c.id, a.id) += 1;
  }
  return m;
}

/// |phi^n(a)| as the column sum of M^n at a; no expansion.
inline BigInt iterate_length(const Morphism& phi, Letter a, std::uint64_t n) {
  if (a.id >= phi.size()) throw UnknownLetter("#" + std::to_string(a.id));
  if (n == 0) return 1;
  return incidence_matrix(phi).power(n).column_sum(a.id);
}

/// Orbit phi^0(a), phi^1(a), ... of a bounded letter: eventually periodic.
struct BoundedOrbit {
  std::vector<Word> words;
  std::size_t preperiod = 0;
  std::size_t period = 1;

  [[nodiscard]] const Word& at(std::uint64_t depth) const {
    if (depth < words.size()) return words[depth];
    return words[preperiod + (depth - preperiod) % period];
  }

  [[nodiscard]] std::size_t max_length() const {
    std::size_t m = 0;
    for (const auto& w : words) m = std::max(m, w.size());
    return m;
  }
};

/// Partition into bounded letters A_B and unbounded letters A_U, with the
/// strict uniform bound k1 > |phi^n(a)| for all a in A_B and n >= 1.
struct LetterClassification {
  std::vector<Letter> bounded;
  std::vector<Letter> unbounded;
  std::size_t k1 = 1;
  std::map<Letter, std::size_t> orbit_lengths;
  std::vector<std::optional<BoundedOrbit>> orbits;  // indexed by letter id

  [[nodiscard]] bool is_bounded(Letter a) const { return orbits.at(a.id).has_value(); }
};

/// a is unbounded iff it reaches (in >= 0 steps of "occurs in the image of")
/// a letter c that lies on a cycle and has |phi(c)| >= 2.
inline LetterClassification classify_letters(const Morphism& phi) {
  const std::size_t n = phi.size();
  // reach[i][j]: j occurs in phi^k(i) for some k >= 1.
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (Letter c : phi.images()[i]) reach[i][c.id] = true;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[k][j]) reach[i][j] = true;
      }
    }
  }
  std::vector<bool> pumping(n, false);
  for (std::size_t c = 0; c < n; ++c) pumping[c] = reach[c][c] && phi.images()[c].size() >= 2;

  LetterClassification cls;
  cls.orbits.resize(n);
  for (Letter a : phi.alphabet().letters()) {
    bool unbounded = pumping[a.id];
    for (std::size_t c = 0; c < n && !unbounded; ++c) unbounded = reach[a.id][c] && pumping[c];
    if (unbounded) {
      cls.unbounded.push_back(a);
      continue;
    }
    cls.bounded.push_back(a);
    BoundedOrbit orbit;
    std::map<Word, std::size_t> seen;
    Word cur{a};
    while (true) {
      const auto [it, fresh] = seen.emplace(cur, orbit.words.size());
      if (!fresh) {
        orbit.preperiod = it->second;
        orbit.period = orbit.words.size() - it->second;
        break;
      }
      orbit.words.push_back(cur);
      cur = morphfreq::apply(phi, cur);
    }
    const std::size_t len = orbit.max_length();
    cls.orbit_lengths[a] = len;
    cls.k1 = std::max(cls.k1, len + 1);
    cls.orbits[a.id] = std::move(orbit);
  }
  return cls;
}

/// Primitive iff the n-th power of the incidence pattern is positive for
/// some n <= 2|A|^2. Positivity persists once reached (non-erasing images
/// leave no zero column), so it suffices to test the 2|A|^2-th power.
inline bool is_primitive(const Morphism& phi) {
  const std::size_t n = phi.size();
  using Pattern = std::vector<std::vector<bool>>;
  const auto multiply = [n](const Pattern& a, const Pattern& b) {
    Pattern c(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (a[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (b[k][j]) c[i][j] = true;
    return c;
  };
  Pattern base(n, std::vector<bool>(n, false));
  for (Letter a : phi.alphabet().letters()) {
    for (Letter c : phi.image(a)) base[c.id][a.id] = true;
  }
  Pattern result(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) result[i][i] = true;
  for (std::uint64_t e = 2 * n * n; e > 0; e >>= 1U) {
    if (e & 1U) result = multiply(result, base);
    base = multiply(base, base);
  }
  for (const auto& row : result)
    for (bool x : row)
      if (!x) return false;
  return true;
}

/// phi(b) = b v with v non-empty.
inline bool is_prolongable(const Morphism& phi, Letter b) {
  if (b.id >= phi.size()) throw UnknownLetter("#" + std::to_string(b.id));
  const Word& img = phi.image(b);
  return img.size() >= 2 && img.front() == b;
}

inline std::vector<Letter> prolongable_letters(const Morphism& phi) {
  std::vector<Letter> out;
  for (Letter a : phi.alphabet().letters())
    if (is_prolongable(phi, a)) out.push_back(a);
  return out;
}

}  // namespace morphfreq
