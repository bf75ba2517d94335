#include <gtest/gtest.h>

#include "test_support.hpp"

namespace morphfreq {
namespace {

using testing::brute_count;
using testing::brute_expand;

const Morphism fib = Morphism::of_chars("ab", {"ab", "a"}, 'a');
const Morphism aba_b = Morphism::of_chars("ab", {"aba", "b"}, 'a');
const Morphism ab_b = Morphism::of_chars("ab", {"ab", "b"}, 'a');

std::string spell(const Morphism& m, const Word& w) { return m.alphabet().format(w, ""); }

TEST(Stream, Examples) {
  EXPECT_EQ(spell(fib, prefix(fib, Letter{0}, 13)), "abaababaabaab");
  EXPECT_EQ(spell(fib, brute_expand(fib, Letter{0}, 5)), "abaababaabaab");
  EXPECT_EQ(spell(aba_b, prefix(aba_b, Letter{0}, 7)), "abababa");
  EXPECT_EQ(spell(aba_b, brute_expand(aba_b, Letter{0}, 2)), "abababa");
  EXPECT_EQ(spell(ab_b, prefix(ab_b, Letter{0}, 5)), "abbbb");
  EXPECT_EQ(spell(fib, prefix(fib, Letter{0}, 2)), "ab");
  EXPECT_EQ(prefix(fib, Letter{0}, 1), Word{Letter{0}});
}

TEST(Stream, RejectsNonProlongableStart) {
  EXPECT_THROW(FixedPointStream(fib, Letter{1}), NotProlongable);
  EXPECT_THROW(prefix(fib, Letter{1}, 3), NotProlongable);
  EXPECT_THROW(empirical_factor_count(ab_b, Letter{1}, Word{Letter{1}}, 3), NotProlongable);
}

TEST(Stream, MatchesFullExpansionOnRandomMorphisms) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Morphism m = random_morphism(seed, {.max_letters = 4, .max_image = 3, .prolongable_first = true});
    const Word e = brute_expand(m, Letter{0}, 9);
    const std::size_t n = std::min<std::size_t>(e.size(), 3000);
    const Word p = prefix(m, Letter{0}, n);
    EXPECT_TRUE(std::equal(p.begin(), p.end(), e.begin())) << serialize(m);
  }
}

TEST(Stream, FixedPointSelfConsistency) {
  for (const auto& name : testing::corpus_names()) {
    const Morphism m = testing::corpus(name);
    const Letter b = *m.start();
    for (std::uint64_t n : {1U, 10U, 100U, 1000U, 10000U}) {
      const Word p = prefix(m, b, n);
      const Word img = morphfreq::apply(m, p);
      const Word longer = prefix(m, b, img.size());
      EXPECT_EQ(img, longer) << name << " n=" << n;
      EXPECT_EQ(window_prefix(longer, n), p);
    }
  }
}

TEST(Stream, StackDepthStaysLogarithmic) {
  FixedPointStream s(fib, Letter{0});
  for (int i = 0; i < 10'000'000; ++i) s.next();
  EXPECT_LE(s.max_stack_depth(), 64U);
}

TEST(Stream, BoundedLettersDoNotDeepenTheStack) {
  FixedPointStream s(ab_b, Letter{0});
  for (int i = 0; i < 1'000'000; ++i) s.next();
  EXPECT_LE(s.max_stack_depth(), 4U);
}

TEST(EmpiricalCount, Examples) {
  const auto ab = empirical_factor_count(fib, Letter{0}, fib.alphabet().spell("ab"), 13);
  EXPECT_EQ(ab.count, 5U);
  EXPECT_EQ(ab.ratio, Rational(5, 13));
  const auto a = empirical_factor_count(fib, Letter{0}, fib.alphabet().spell("a"), 2);
  EXPECT_EQ(a.count, 1U);
  EXPECT_EQ(a.ratio, Rational(1, 2));
  const auto bb = empirical_factor_count(ab_b, Letter{0}, ab_b.alphabet().spell("bb"), 5);
  EXPECT_EQ(bb.count, 3U);
  EXPECT_EQ(bb.ratio, Rational(3, 5));
}

TEST(EmpiricalCount, StreamingEqualsMaterialized) {
  for (const auto& name : testing::corpus_names()) {
    const Morphism m = testing::corpus(name);
    const Word p = prefix(m, *m.start(), 5000);
    for (std::size_t len = 1; len <= 3; ++len) {
      for (const Word& v : testing::all_words(m.size(), len)) {
        for (std::uint64_t n : {1U, 37U, 5000U}) {
          const Word pn = window_prefix(p, n);
          EXPECT_EQ(empirical_factor_count(m, *m.start(), v, n).count, brute_count(pn, v));
        }
      }
    }
  }
}

TEST(EmpiricalSeries, FibonacciConverges) {
  const auto s = empirical_series(fib, Letter{0}, fib.alphabet().spell("ab"), {1000, 10000, 100000}, 100);
  ASSERT_EQ(s.checkpoints.size(), 3U);
  EXPECT_LT(s.spread(), Rational(1, 100));
  for (std::size_t i = 1; i < s.checkpoints.size(); ++i) {
    EXPECT_GE(s.checkpoints[i].count, s.checkpoints[i - 1].count);
  }
}

TEST(EmpiricalSeries, AbBIsEventuallyAllB) {
  const auto s = empirical_series(ab_b, Letter{0}, ab_b.alphabet().spell("b"), {100, 1000}, 10);
  for (const auto& cp : s.checkpoints) EXPECT_GE(cp.ratio, Rational(98, 100));
  EXPECT_LT(s.spread(), Rational(2, 100));
}

TEST(EmpiricalSeries, AbsentFactorGivesZero) {
  const auto s = empirical_series(fib, Letter{0}, fib.alphabet().spell("bb"), {10, 100, 1000}, 0);
  for (const auto& cp : s.checkpoints) EXPECT_EQ(cp.ratio, 0);
  EXPECT_EQ(s.spread(), 0);
}

TEST(EmpiricalSeries, RejectsBadCheckpoints) {
  const Word v = fib.alphabet().spell("a");
  EXPECT_THROW(empirical_series(fib, Letter{0}, v, {10, 10}, 0), InvalidArgument);
  EXPECT_THROW(empirical_series(fib, Letter{0}, v, {}, 0), InvalidArgument);
  EXPECT_THROW(empirical_series(fib, Letter{0}, v, {0, 5}, 0), InvalidArgument);
}

}  // namespace
}  // namespace morphfreq
