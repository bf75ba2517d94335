#pragma once

// Seeded random non-erasing morphisms for stress testing.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "morphfreq/morphism.hpp"

namespace morphfreq {

struct RandomMorphismOptions {
  std::size_t max_letters = 4;
  std::size_t max_image = 4;
  bool prolongable_first = false;  // force phi(a_0) = a_0 u with u non-empty
};

inline std::string letter_token(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "l" + std::to_string(i);
}

/// Alphabet size uniform in [1, max_letters], image lengths uniform in
/// [1, max_image], image letters uniform. Deterministic per seed.
inline Morphism random_morphism(std::uint64_t seed, const RandomMorphismOptions& opts = {}) {
  std::mt19937_64 rng(seed);
  const auto below = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  const std::size_t letters = 1 + below(opts.max_letters);
  std::vector<std::string> tokens;
  for (std::size_t i = 0; i < letters; ++i) tokens.push_back(letter_token(i));
  std::vector<Word> images(letters);
  for (std::size_t i = 0; i < letters; ++i) {
    std::size_t len = 1 + below(opts.max_image);
    if (i == 0 && opts.prolongable_first) {
      len = std::max<std::size_t>(len, 2);
      images[i].push_back(Letter{0});
      --len;
    }
    for (std::size_t k = 0; k < len; ++k) images[i].push_back(Letter{static_cast<std::uint32_t>(below(letters))});
  }
  std::optional<Letter> start;
  if (opts.prolongable_first) start = Letter{0};
  return Morphism(Alphabet(std::move(tokens)), std::move(images), start);
}

}  // namespace morphfreq
