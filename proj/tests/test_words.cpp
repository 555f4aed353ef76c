#include <algorithm>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "ncop/words.hpp"

using ncop::Word;

namespace {

// All letter sequences of length n over 1..N, by nested counting.
std::vector<Word> brute_level(std::size_t n, int N) {
  std::vector<Word> out;
  std::vector<int> letters(n, 1);
  while (true) {
    out.emplace_back(letters);
    std::size_t i = n;
    while (i > 0 && letters[i - 1] == N) letters[--i] = 1;
    if (i == 0) break;
    ++letters[i - 1];
  }
  return out;
}

}  // namespace

TEST(Words, Involution) {
  EXPECT_EQ(ncop::involution(Word{1, 2}), (Word{2, 1}));
  EXPECT_EQ(ncop::involution(Word{}), Word{});
  EXPECT_EQ(ncop::involution(Word{1, 1, 2}), (Word{2, 1, 1}));
}

TEST(Words, InvolutionAntiMultiplicative) {
  for (const Word& u : ncop::words_up_to(2, 3))
    for (const Word& v : ncop::words_up_to(2, 3)) {
      EXPECT_EQ(ncop::involution(u + v), ncop::involution(v) + ncop::involution(u));
      EXPECT_EQ((u + v).size(), u.size() + v.size());
    }
}

TEST(Words, SuccessorPredecessor) {
  EXPECT_EQ(ncop::successor(Word{}, 2), Word{1});
  EXPECT_EQ(ncop::successor(Word{2}, 2), (Word{1, 1}));
  EXPECT_EQ(ncop::predecessor(Word{1, 1}, 2), Word{2});
  EXPECT_THROW(ncop::predecessor(Word{}, 2), std::domain_error);
}

TEST(Words, SuccessorWalkVisitsEveryWordOnce) {
  for (int N = 1; N <= 3; ++N) {
    std::vector<Word> expected;
    for (std::size_t n = 0; n <= 4; ++n) {
      auto lvl = brute_level(n, N);
      std::sort(lvl.begin(), lvl.end(), [](const Word& a, const Word& b) {
        return a.letters() < b.letters();
      });
      expected.insert(expected.end(), lvl.begin(), lvl.end());
    }
    Word w;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      ASSERT_EQ(w, expected[i]) << "N=" << N << " i=" << i;
      EXPECT_EQ(ncop::global_index(w, N), i);
      EXPECT_EQ(ncop::word_at(i, N), w);
      const Word next = ncop::successor(w, N);
      EXPECT_LT(w, next);
      EXPECT_EQ(ncop::predecessor(next, N), w);
      w = next;
    }
  }
}

TEST(Words, EnumerateLevel) {
  EXPECT_EQ(ncop::enumerate_level(0, 3), std::vector<Word>{Word{}});
  EXPECT_EQ(ncop::enumerate_level(1, 2), (std::vector<Word>{Word{1}, Word{2}}));
  const auto l3 = ncop::enumerate_level(3, 2);
  ASSERT_EQ(l3.size(), 8u);
  EXPECT_EQ(l3.front(), (Word{1, 1, 1}));
  EXPECT_EQ(l3.back(), (Word{2, 2, 2}));
}

TEST(Words, EnumerateLevelMatchesSortedBruteForce) {
  for (int N = 1; N <= 4; ++N)
    for (std::size_t n = 0; n <= 4; ++n) {
      auto b = brute_level(n, N);
      std::sort(b.begin(), b.end(), [](const Word& x, const Word& y) { return x.letters() < y.letters(); });
      EXPECT_EQ(ncop::enumerate_level(n, N), b);
      const std::set<Word> uniq(b.begin(), b.end());
      EXPECT_EQ(uniq.size(), b.size());
    }
}

TEST(Words, WordIndexAndConcat) {
  EXPECT_EQ(ncop::word_index(Word{1, 2}, 2), 1u);
  EXPECT_EQ(ncop::concat(Word{1}, Word{2, 1}), (Word{1, 2, 1}));
  EXPECT_EQ(ncop::concat(Word{}, Word{2, 2}), (Word{2, 2}));
  const Word a{1}, b{2, 3}, c{3, 1};
  EXPECT_EQ((a + b) + c, a + (b + c));
  for (std::size_t n = 0; n <= 3; ++n) {
    const auto lvl = ncop::enumerate_level(n, 3);
    for (std::size_t r = 0; r < lvl.size(); ++r) EXPECT_EQ(ncop::word_index(lvl[r], 3), r);
  }
}

TEST(Words, GradedOrder) {
  EXPECT_LT(Word{2}, (Word{1, 1}));
  EXPECT_LT((Word{1, 2}), (Word{2, 1}));
  EXPECT_LT(Word{}, Word{1});
}

TEST(Words, SerializationRoundTrip) {
  EXPECT_EQ(Word{}.str(), "e");
  EXPECT_EQ((Word{1, 12, 3}).str(), "1.12.3");
  for (const Word& w : ncop::words_up_to(3, 11)) EXPECT_EQ(Word::parse(w.str()), w);
  EXPECT_THROW(Word::parse(""), ncop::InvalidInput);
  EXPECT_THROW(Word::parse("1..2"), ncop::InvalidInput);
  EXPECT_THROW(Word::parse("0"), ncop::InvalidInput);
  EXPECT_THROW(Word::parse("1.x"), ncop::InvalidInput);
}

TEST(Words, LetterRangeChecked) {
  EXPECT_THROW(ncop::check_letters(Word{3}, 2), ncop::InvalidInput);
  EXPECT_NO_THROW(ncop::check_letters(Word{2, 1}, 2));
}

TEST(Words, WordOrderObject) {
  const ncop::WordOrder order{2};
  EXPECT_EQ(order.next(Word{2}), (Word{1, 1}));
  EXPECT_EQ(order.index(Word{1, 1}), 3u);
  EXPECT_EQ(order.at(3), (Word{1, 1}));
}
