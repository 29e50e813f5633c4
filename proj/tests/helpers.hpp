#pragma once

#include <random>
#include <string_view>
#include <vector>

#include "parry/word.hpp"

namespace parry::test {

/// Word from a digit string, e.g. "00100102".
inline Word w(std::string_view digits, Letter sigma = 0) {
  return word_from_text(digits, sigma);
}

/// Word from arbitrary ASCII, one letter per byte.
inline Word ascii(std::string_view text) {
  std::vector<Letter> letters(text.begin(), text.end());
  return Word(std::move(letters), 128);
}

inline std::mt19937& rng() {
  static std::mt19937 gen(0x5eed);
  return gen;
}

inline Word random_word(Index length, Letter sigma) {
  std::uniform_int_distribution<Letter> dist(0, sigma - 1);
  std::vector<Letter> letters;
  for (Index i = 0; i < length; ++i) letters.push_back(dist(rng()));
  return Word(std::move(letters), sigma);
}

}  // namespace parry::test
