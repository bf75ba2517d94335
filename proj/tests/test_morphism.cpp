#include <set>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace morphfreq {
namespace {

using testing::brute_expand;
using testing::brute_lengths;

const Morphism fib = Morphism::of_chars("ab", {"ab", "a"}, 'a');
const Morphism swap_ab = Morphism::of_chars("ab", {"b", "a"});
const Morphism aba_b = Morphism::of_chars("ab", {"aba", "b"}, 'a');
const Morphism ab_b = Morphism::of_chars("ab", {"ab", "b"}, 'a');

TEST(ParseMorphism, Fibonacci) {
  const Morphism m = parse_morphism("alphabet: a b\na -> a b\nb -> a");
  EXPECT_EQ(m.size(), 2U);
  EXPECT_EQ(m.image(Letter{0}), fib.alphabet().spell("ab"));
  EXPECT_EQ(m.image(Letter{1}), fib.alphabet().spell("a"));
  EXPECT_FALSE(m.start().has_value());
}

TEST(ParseMorphism, CommentsStartAndBlankLines) {
  const Morphism m = parse_morphism("# Fibonacci\n\nalphabet: a b\nstart: a\n  # indented comment\na -> a b\r\nb -> a\n");
  EXPECT_EQ(m, fib);
}

TEST(ParseMorphism, Errors) {
  try {
    parse_morphism("alphabet: a b\na -> a b\nb ->");
    FAIL() << "expected ErasingRule";
  } catch (const ErasingRule& e) {
    EXPECT_EQ(e.line(), 3U);
    EXPECT_EQ(e.letter(), "b");
  }
  try {
    parse_morphism("alphabet: a\na -> a c");
    FAIL() << "expected UnknownLetter";
  } catch (const UnknownLetter& e) {
    EXPECT_EQ(e.token(), "c");
    EXPECT_EQ(e.line(), 2U);
  }
  EXPECT_THROW(parse_morphism("alphabet: a b\na -> a b"), MissingRule);
  EXPECT_THROW(parse_morphism("alphabet: a\na -> a\na -> a a"), DuplicateRule);
  EXPECT_THROW(parse_morphism("a -> a"), ParseError);
  EXPECT_THROW(parse_morphism("alphabet: a\na a a"), ParseError);
  EXPECT_THROW(parse_morphism("alphabet: a\nstart: z\na -> a"), UnknownLetter);
  EXPECT_THROW(parse_morphism("alphabet: a a\na -> a"), ParseError);
  EXPECT_THROW(parse_morphism(""), ParseError);
}

TEST(Serialize, CanonicalFormRoundTrips) {
  EXPECT_EQ(serialize(fib), "alphabet: a b\nstart: a\na -> a b\nb -> a\n");
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RandomMorphismOptions opts;
    opts.prolongable_first = seed % 2 == 0;
    const Morphism m = random_morphism(seed, opts);
    const std::string text = serialize(m);
    EXPECT_EQ(parse_morphism(text), m);
    EXPECT_EQ(serialize(parse_morphism(text)), text);
  }
}

TEST(Apply, Examples) {
  const Alphabet& al = fib.alphabet();
  EXPECT_EQ(morphfreq::apply(fib, al.spell("ab")), al.spell("aba"));
  EXPECT_EQ(morphfreq::apply(fib, Word{}), Word{});
  EXPECT_EQ(morphfreq::apply(fib, al.spell("abaab")), al.spell("abaababa"));
  EXPECT_EQ(morphfreq::apply(fib, al.spell("abaab")), brute_expand(fib, Letter{0}, 4));
  EXPECT_THROW(morphfreq::apply(fib, Word{Letter{5}}), UnknownLetter);
}

TEST(Apply, IsAMonoidMorphism) {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Morphism m = random_morphism(seed);
    Word u, w;
    for (int i = 0; i < 7; ++i) u.push_back(Letter{static_cast<std::uint32_t>(rng() % m.size())});
    for (int i = 0; i < 5; ++i) w.push_back(Letter{static_cast<std::uint32_t>(rng() % m.size())});
    EXPECT_EQ(morphfreq::apply(m, concat(u, w)), concat(morphfreq::apply(m, u), morphfreq::apply(m, w)));
  }
}

IncidenceMatrix matrix_of(std::initializer_list<std::initializer_list<int>> rows) {
  IncidenceMatrix m(rows.size());
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (int x : row) m.at(i, j++) = x;
    ++i;
  }
  return m;
}

TEST(IncidenceMatrix, Examples) {
  EXPECT_EQ(incidence_matrix(fib), matrix_of({{1, 1}, {1, 0}}));
  EXPECT_EQ(incidence_matrix(swap_ab), matrix_of({{0, 1}, {1, 0}}));
  EXPECT_EQ(incidence_matrix(aba_b), matrix_of({{2, 0}, {1, 1}}));
}

TEST(IncidenceMatrix, ColumnSumsAndPowersTrackLengths) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Morphism m = random_morphism(seed);
    const IncidenceMatrix im = incidence_matrix(m);
    for (Letter a : m.alphabet().letters()) EXPECT_EQ(im.column_sum(a.id), BigInt(m.image(a).size()));
    for (unsigned n = 0; n <= 6; ++n) {
      const auto lens = brute_lengths(m, n);
      const IncidenceMatrix p = im.power(n);
      for (Letter a : m.alphabet().letters()) {
        EXPECT_EQ(p.column_sum(a.id), lens[a.id]);
        EXPECT_EQ(iterate_length(m, a, n), lens[a.id]);
        // Entry (x, a) of M^n counts x in phi^n(a).
        const Word e = brute_expand(m, a, n);
        for (Letter x : m.alphabet().letters()) {
          EXPECT_EQ(p.at(x.id, a.id), BigInt(std::count(e.begin(), e.end(), x)));
        }
      }
    }
  }
}

TEST(IterateLength, Examples) {
  EXPECT_EQ(iterate_length(fib, Letter{0}, 7), 34);
  EXPECT_EQ(iterate_length(fib, Letter{1}, 7), 21);
  EXPECT_EQ(iterate_length(fib, Letter{0}, 0), 1);
  EXPECT_EQ(iterate_length(aba_b, Letter{0}, 0), 1);
}

TEST(IterateLength, NonDecreasing) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Morphism m = random_morphism(seed);
    auto prev = brute_lengths(m, 0);
    for (unsigned n = 1; n <= 20; ++n) {
      const auto cur = brute_lengths(m, n);
      for (Letter a : m.alphabet().letters()) {
        EXPECT_EQ(iterate_length(m, a, n), cur[a.id]);
        EXPECT_GE(cur[a.id], prev[a.id]);
      }
      prev = cur;
    }
  }
}

TEST(Classify, Examples) {
  const auto f = classify_letters(fib);
  EXPECT_TRUE(f.bounded.empty());
  EXPECT_EQ(f.unbounded, (std::vector<Letter>{Letter{0}, Letter{1}}));
  EXPECT_EQ(f.k1, 1U);
  // Oracle: strict growth of lengths up to depth 20.
  const auto lens = brute_lengths(fib, 20);
  EXPECT_GT(lens[0], brute_lengths(fib, 19)[0]);
  EXPECT_GT(lens[1], brute_lengths(fib, 19)[1]);

  const auto s = classify_letters(swap_ab);
  EXPECT_EQ(s.bounded.size(), 2U);
  EXPECT_TRUE(s.unbounded.empty());
  EXPECT_EQ(s.k1, 2U);

  const auto t = classify_letters(aba_b);
  EXPECT_EQ(t.bounded, std::vector<Letter>{Letter{1}});
  EXPECT_EQ(t.unbounded, std::vector<Letter>{Letter{0}});
  EXPECT_EQ(t.k1, 2U);
  EXPECT_EQ(t.orbit_lengths.at(Letter{1}), 1U);
}

TEST(Classify, BoundedButGrowingOnce) {
  // a -> b c, b -> b, c -> c: bounded, lengths 1, 2, 2, ...
  const Morphism m = Morphism::of_chars("abc", {"bc", "b", "c"});
  const auto cls = classify_letters(m);
  EXPECT_EQ(cls.bounded.size(), 3U);
  EXPECT_EQ(cls.orbit_lengths.at(Letter{0}), 2U);
  EXPECT_EQ(cls.k1, 3U);
  // A bounded chain into a permutation cycle.
  const Morphism p = Morphism::of_chars("abcd", {"b", "cd", "d", "c"});
  const auto pc = classify_letters(p);
  EXPECT_EQ(pc.bounded.size(), 4U);
  EXPECT_EQ(pc.orbits[0]->at(100).size(), 2U);
}

TEST(Classify, AgreesWithLengthIterationOracle) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Morphism m = random_morphism(seed);
    const auto cls = classify_letters(m);
    const auto l32 = brute_lengths(m, 32);
    const auto l64 = brute_lengths(m, 64);
    for (Letter a : m.alphabet().letters()) {
      if (cls.is_bounded(a)) {
        // Constant over 2|A| consecutive levels ending at 64.
        const auto base = brute_lengths(m, 64 - 2 * static_cast<unsigned>(m.size()));
        EXPECT_EQ(base[a.id], l64[a.id]) << serialize(m);
        // k1 soundness.
        for (unsigned n = 1; n <= 2 * cls.k1 * m.size(); ++n) {
          EXPECT_LT(iterate_length(m, a, n), BigInt(cls.k1)) << serialize(m);
        }
        // Orbit words are the true iterates.
        for (unsigned n = 0; n < 12; ++n) EXPECT_EQ(cls.orbits[a.id]->at(n), brute_expand(m, a, n));
      } else {
        EXPECT_GT(l64[a.id], l32[a.id]) << serialize(m);
      }
    }
  }
}

TEST(Primitive, Examples) {
  EXPECT_TRUE(is_primitive(fib));
  EXPECT_FALSE(is_primitive(ab_b));
  EXPECT_FALSE(is_primitive(swap_ab));
  EXPECT_FALSE(is_primitive(aba_b));
  EXPECT_TRUE(is_primitive(Morphism::of_chars("ab", {"ab", "ba"})));
  // M^2 of Fibonacci is positive.
  EXPECT_TRUE(incidence_matrix(fib).power(2).positive());
}

/// Letter sets of phi^n(b) by set iteration, independent of matrix powers.
bool primitive_by_letter_sets(const Morphism& m) {
  const std::size_t k = m.size();
  std::vector<std::set<std::uint32_t>> sets(k);
  for (std::size_t b = 0; b < k; ++b) sets[b] = {static_cast<std::uint32_t>(b)};
  for (std::size_t n = 1; n <= 2 * k * k; ++n) {
    std::vector<std::set<std::uint32_t>> next(k);
    for (std::size_t b = 0; b < k; ++b)
      for (auto c : sets[b])
        for (Letter d : m.images()[c]) next[b].insert(d.id);
    sets.swap(next);
    bool all = true;
    for (const auto& s : sets) all = all && s.size() == k;
    if (all) return true;
  }
  return false;
}

TEST(Primitive, AgreesWithLetterSetIteration) {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const Morphism m = random_morphism(seed, {.max_letters = 5, .max_image = 3});
    EXPECT_EQ(is_primitive(m), primitive_by_letter_sets(m)) << serialize(m);
  }
}

TEST(Primitive, AgreesWithDirectExpansionOnSmallCases) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Morphism m = random_morphism(seed, {.max_letters = 3, .max_image = 2});
    bool found = false;
    for (unsigned n = 1; n <= 2 * m.size() * m.size() && !found; ++n) {
      bool all = true;
      for (Letter b : m.alphabet().letters()) {
        const Word e = brute_expand(m, b, n);
        for (Letter a : m.alphabet().letters()) all = all && std::find(e.begin(), e.end(), a) != e.end();
      }
      found = all;
    }
    EXPECT_EQ(is_primitive(m), found) << serialize(m);
  }
}

TEST(Prolongable, Examples) {
  EXPECT_TRUE(is_prolongable(fib, Letter{0}));
  EXPECT_FALSE(is_prolongable(fib, Letter{1}));
  EXPECT_TRUE(is_prolongable(aba_b, Letter{0}));
  EXPECT_FALSE(is_prolongable(Morphism::of_chars("a", {"a"}), Letter{0}));
  EXPECT_THROW(is_prolongable(fib, Letter{9}), UnknownLetter);
}

}  // namespace
}  // namespace morphfreq
