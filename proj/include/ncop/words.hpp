#ifndef NCOP_WORDS_HPP
#define NCOP_WORDS_HPP

// Words in the free semigroup on N generators, ordered graded-lexicographically
// (shorter words first, then letter by letter). Letters are 1-based.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ncop/core.hpp"

namespace ncop {

class Word {
 public:
  Word() = default;
  Word(std::initializer_list<int> letters) : letters_(letters) {}
  explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {}

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  int operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<int>& letters() const noexcept { return letters_; }

  int front() const { return letters_.front(); }
  /// Word without its first letter.
  Word tail() const { return Word(std::vector<int>(letters_.begin() + 1, letters_.end())); }

  bool operator==(const Word&) const = default;
  std::strong_ordering operator<=>(const Word& other) const {
    if (auto c = letters_.size() <=> other.letters_.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(letters_.begin(), letters_.end(),
                                                  other.letters_.begin(), other.letters_.end());
  }

  /// "i1.i2.….ik", or "e" for the empty word.
  std::string str() const {
    if (letters_.empty()) return "e";
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i) out += '.';
      out += std::to_string(letters_[i]);
    }
    return out;
  }

  static Word parse(std::string_view text) {
    if (text == "e") return {};
    if (text.empty()) throw InvalidInput("empty word string (use \"e\" for the empty word)");
    std::vector<int> letters;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t dot = std::min(text.find('.', pos), text.size());
      const std::string_view piece = text.substr(pos, dot - pos);
      if (piece.empty() || piece.size() > 9 ||
          !std::all_of(piece.begin(), piece.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw InvalidInput("malformed word '" + std::string(text) + "'");
      const int letter = std::stoi(std::string(piece));
      if (letter < 1) throw InvalidInput("letters start at 1 in word '" + std::string(text) + "'");
      letters.push_back(letter);
      pos = dot + 1;
    }
    return Word(std::move(letters));
  }

 private:
  std::vector<int> letters_;
};

inline std::ostream& operator<<(std::ostream& os, const Word& w) { return os << w.str(); }

/// Throws InvalidInput unless every letter lies in [1, n_generators].
inline void check_letters(const Word& w, int n_generators) {
  for (int l : w.letters())
    if (l < 1 || l > n_generators)
      throw InvalidInput("word '" + w.str() + "' has a letter outside 1.." +
                         std::to_string(n_generators));
}

/// Letter reversal i1…ik ↦ ik…i1.
inline Word involution(const Word& w) {
  std::vector<int> r(w.letters().rbegin(), w.letters().rend());
  return Word(std::move(r));
}

inline Word concat(const Word& u, const Word& v) {
  std::vector<int> r = u.letters();
  r.insert(r.end(), v.letters().begin(), v.letters().end());
  return Word(std::move(r));
}

inline Word operator+(const Word& u, const Word& v) { return concat(u, v); }

/// Prepends a single letter: k·w.
inline Word prepend(int k, const Word& w) {
  std::vector<int> r;
  r.reserve(w.size() + 1);
  r.push_back(k);
  r.insert(r.end(), w.letters().begin(), w.letters().end());
  return Word(std::move(r));
}

/// If `w` = `prefix`·α returns α.
inline std::optional<Word> strip_prefix(const Word& w, const Word& prefix) {
  if (prefix.size() > w.size()) return std::nullopt;
  if (!std::equal(prefix.letters().begin(), prefix.letters().end(), w.letters().begin()))
    return std::nullopt;
  return Word(std::vector<int>(w.letters().begin() + static_cast<std::ptrdiff_t>(prefix.size()),
                               w.letters().end()));
}

/// N^n.
inline std::size_t level_size(std::size_t n, int n_generators) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < n; ++i) r *= static_cast<std::size_t>(n_generators);
  return r;
}

/// Number of words of length < n, i.e. the global index of the first word of length n.
inline std::size_t level_offset(std::size_t n, int n_generators) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += level_size(i, n_generators);
  return total;
}

/// Number of words of length ≤ level.
inline std::size_t words_up_to_count(std::size_t level, int n_generators) {
  return level_offset(level + 1, n_generators);
}

/// Rank of `w` among the words of its length (base-N reading of the letters).
inline std::size_t word_index(const Word& w, int n_generators) {
  check_letters(w, n_generators);
  std::size_t r = 0;
  for (int l : w.letters()) r = r * static_cast<std::size_t>(n_generators) + static_cast<std::size_t>(l - 1);
  return r;
}

/// Position of `w` in the graded-lex enumeration starting from ∅ = 0.
inline std::size_t global_index(const Word& w, int n_generators) {
  return level_offset(w.size(), n_generators) + word_index(w, n_generators);
}

/// The `rank`-th word of length n.
inline Word word_from_index(std::size_t n, std::size_t rank, int n_generators) {
  std::vector<int> letters(n);
  for (std::size_t i = n; i-- > 0;) {
    letters[i] = static_cast<int>(rank % static_cast<std::size_t>(n_generators)) + 1;
    rank /= static_cast<std::size_t>(n_generators);
  }
  return Word(std::move(letters));
}

/// Inverse of global_index.
inline Word word_at(std::size_t index, int n_generators) {
  std::size_t n = 0;
  while (index >= level_size(n, n_generators)) {
    index -= level_size(n, n_generators);
    ++n;
  }
  return word_from_index(n, index, n_generators);
}

/// All N^n words of length n in lexicographic order.
inline std::vector<Word> enumerate_level(std::size_t n, int n_generators) {
  if (n_generators < 1) throw InvalidInput("n_generators must be at least 1");
  const std::size_t count = level_size(n, n_generators);
  std::vector<Word> out;
  out.reserve(count);
  for (std::size_t r = 0; r < count; ++r) out.push_back(word_from_index(n, r, n_generators));
  return out;
}

/// Every word of length ≤ level in graded-lex order.
inline std::vector<Word> words_up_to(std::size_t level, int n_generators) {
  std::vector<Word> out;
  for (std::size_t n = 0; n <= level; ++n) {
    auto lvl = enumerate_level(n, n_generators);
    out.insert(out.end(), lvl.begin(), lvl.end());
  }
  return out;
}

inline Word successor(const Word& w, int n_generators) {
  check_letters(w, n_generators);
  std::vector<int> l = w.letters();
  for (std::size_t i = l.size(); i-- > 0;) {
    if (l[i] < n_generators) {
      ++l[i];
      return Word(std::move(l));
    }
    l[i] = 1;
  }
  // every letter was N: first word of the next length
  return Word(std::vector<int>(w.size() + 1, 1));
}

/// Graded-lex predecessor. The empty word has none.
inline Word predecessor(const Word& w, int n_generators) {
  check_letters(w, n_generators);
  if (w.empty()) throw std::domain_error("the empty word has no predecessor");
  std::vector<int> l = w.letters();
  for (std::size_t i = l.size(); i-- > 0;) {
    if (l[i] > 1) {
      --l[i];
      return Word(std::move(l));
    }
    l[i] = n_generators;
  }
  return Word(std::vector<int>(w.size() - 1, n_generators));
}

/// Graded-lex order over a fixed alphabet.
struct WordOrder {
  int n_generators = 1;

  bool operator()(const Word& a, const Word& b) const { return a < b; }
  Word next(const Word& w) const { return successor(w, n_generators); }
  Word prev(const Word& w) const { return predecessor(w, n_generators); }
  std::size_t index(const Word& w) const { return global_index(w, n_generators); }
  Word at(std::size_t i) const { return word_at(i, n_generators); }
};

}  // namespace ncop

template <>
struct std::hash<ncop::Word> {
  std::size_t operator()(const ncop::Word& w) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int l : w.letters()) h = (h ^ static_cast<std::size_t>(l)) * 0x100000001b3ULL;
    return h ^ w.size();
  }
};

#endif  // NCOP_WORDS_HPP
