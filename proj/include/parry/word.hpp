#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace parry {

using Letter = std::int32_t;
using Index = std::int64_t;

/// Finite word over the alphabet {0, ..., alphabet_size-1}.
struct Word {
  std::vector<Letter> letters;
  Letter alphabet_size = 0;

  Word() = default;
  Word(std::vector<Letter> ls, Letter sigma)
      : letters(std::move(ls)), alphabet_size(sigma) {}

  Index size() const { return static_cast<Index>(letters.size()); }
  bool empty() const { return letters.empty(); }
  Letter operator[](Index i) const { return letters[static_cast<std::size_t>(i)]; }

  // equality is letter content; alphabet_size is rendering metadata
  bool operator==(const Word& other) const { return letters == other.letters; }

  Word prefix(Index len) const {
    if (len < 0 || len > size()) throw std::invalid_argument("prefix length out of range");
    return Word(std::vector<Letter>(letters.begin(), letters.begin() + len), alphabet_size);
  }

  Word substring(Index begin, Index end) const {
    if (begin < 0 || end < begin || end > size())
      throw std::invalid_argument("substring bounds out of range");
    return Word(std::vector<Letter>(letters.begin() + begin, letters.begin() + end),
                alphabet_size);
  }

  bool has_prefix(const Word& p) const {
    return p.size() <= size() &&
           std::equal(p.letters.begin(), p.letters.end(), letters.begin());
  }

  bool has_suffix(const Word& s) const {
    return s.size() <= size() &&
           std::equal(s.letters.begin(), s.letters.end(), letters.end() - s.size());
  }

  bool has_factor(const Word& f) const {
    if (f.empty()) return true;
    return std::search(letters.begin(), letters.end(), f.letters.begin(),
                       f.letters.end()) != letters.end();
  }

  void append(const Word& w) {
    letters.insert(letters.end(), w.letters.begin(), w.letters.end());
  }

  void append_power(const Word& w, Index count) {
    for (Index i = 0; i < count; ++i) append(w);
  }

  void push_back(Letter a) { letters.push_back(a); }

  int distinct_letter_count() const {
    return static_cast<int>(std::set<Letter>(letters.begin(), letters.end()).size());
  }
};

inline Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.append(b);
  return r;
}

/// True iff x = z^k z' for some k >= 0 and z' a prefix of z; equivalently
/// x equals the length-|x| prefix of z^omega.
inline bool is_power_of(const Word& x, const Word& z) {
  if (z.empty()) throw std::invalid_argument("is_power_of: base word is empty");
  const Index zl = z.size();
  for (Index i = 0; i < x.size(); ++i)
    if (x[i] != z[i % zl]) return false;
  return true;
}

/// Word text format: one ASCII decimal digit per letter when the alphabet has
/// at most 10 letters, comma-separated decimal integers otherwise.
inline std::string word_to_text(const Word& w) {
  std::string out;
  if (w.alphabet_size <= 10) {
    out.reserve(w.letters.size());
    for (Letter a : w.letters) out.push_back(static_cast<char>('0' + a));
  } else {
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
      if (i) out.push_back(',');
      out += std::to_string(w.letters[i]);
    }
  }
  return out;
}

/// Parses the word text format; the alphabet size is the largest letter + 1
/// unless a larger one is supplied.
inline Word word_from_text(std::string_view text, Letter alphabet_size = 0) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r'))
    text.remove_suffix(1);
  std::vector<Letter> letters;
  if (text.find(',') != std::string_view::npos) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t next = text.find(',', pos);
      if (next == std::string_view::npos) next = text.size();
      std::string_view tok = text.substr(pos, next - pos);
      Letter v = 0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || p != tok.data() + tok.size() || v < 0)
        throw std::invalid_argument("word text: bad letter token '" + std::string(tok) + "'");
      letters.push_back(v);
      pos = next + 1;
      if (next == text.size()) break;
    }
  } else {
    letters.reserve(text.size());
    for (char c : text) {
      if (c < '0' || c > '9')
        throw std::invalid_argument(std::string("word text: unexpected character '") + c + "'");
      letters.push_back(c - '0');
    }
  }
  Letter max_letter = -1;
  for (Letter a : letters) max_letter = std::max(max_letter, a);
  return Word(std::move(letters), std::max(alphabet_size, static_cast<Letter>(max_letter + 1)));
}

}  // namespace parry
