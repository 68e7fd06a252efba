#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "rmspec/error.hpp"
#include "rmspec/limits.hpp"
#include "rmspec/words.hpp"

using namespace rmspec;

namespace {

std::vector<std::string> names(std::size_t k) {
  std::vector<std::string> out;
  for (const auto& w : enumerate_words(k)) out.push_back(w.to_string());
  return out;
}

// Brute-force oracle: every proper contiguous even block closed under pairing.
bool irreducible_oracle(const PartitionWord& w) {
  const std::size_t n = w.size();
  for (std::size_t lo = 0; lo < n; ++lo) {
    for (std::size_t hi = lo + 1; hi < n; hi += 2) {
      if (hi - lo + 1 == n) continue;
      bool closed = true;
      for (std::size_t p = lo; p <= hi && closed; ++p) {
        closed = w.partner(p) >= lo && w.partner(p) <= hi;
      }
      if (closed) return false;
    }
  }
  return true;
}

// Repeated deletion of xx, as stated.
bool noncrossing_oracle(std::string s) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (s[i] == s[i + 1]) {
        s.erase(i, 2);
        changed = true;
        break;
      }
    }
  }
  return s.empty();
}

}  // namespace

TEST_CASE("enumeration examples") {
  CHECK(names(1) == std::vector<std::string>{"aa"});
  CHECK(names(2) == std::vector<std::string>{"aabb", "abab", "abba"});
  CHECK(enumerate_words(4).size() == 105);
}

TEST_CASE("word count is (2k-1)!! for k <= 6") {
  const std::uint64_t expected[] = {1, 3, 15, 105, 945, 10395};
  for (std::size_t k = 1; k <= 6; ++k) {
    CHECK(word_count(k) == expected[k - 1]);
    std::uint64_t seen = 0;
    for_each_word(k, [&](const PartitionWord&) { ++seen; });
    CHECK(seen == expected[k - 1]);
  }
}

TEST_CASE("enumeration is strictly increasing and canonical") {
  for (std::size_t k = 1; k <= 5; ++k) {
    const auto ws = enumerate_words(k);
    CHECK(std::adjacent_find(ws.begin(), ws.end(),
                             [](const auto& a, const auto& b) { return !(a < b); }) == ws.end());
    for (const auto& w : ws) {
      CHECK_NOTHROW(PartitionWord(std::vector<PartitionWord::Letter>(w.letters().begin(),
                                                                     w.letters().end())));
    }
  }
}

TEST_CASE("enumeration caps") {
  CHECK_THROWS_AS(enumerate_words(0), InvalidArgument);
  CHECK_THROWS_AS(enumerate_words(9), InvalidArgument);
  CHECK_THROWS_AS(enumerate_words(3, 2), InvalidArgument);
  CHECK(enumerate_words(2, 2).size() == 3);
}

TEST_CASE("parsing and validation") {
  CHECK(PartitionWord::parse("bbaa").to_string() == "aabb");
  CHECK(PartitionWord::parse("xyxy").to_string() == "abab");
  CHECK_THROWS_AS(PartitionWord::parse(""), InvalidArgument);
  CHECK_THROWS_AS(PartitionWord::parse("aab"), InvalidArgument);
  CHECK_THROWS_AS(PartitionWord::parse("aaab"), InvalidArgument);
  CHECK_THROWS_AS(PartitionWord::parse("abcd"), InvalidArgument);
  CHECK_THROWS_AS(PartitionWord({1, 0, 0, 1}), InvalidArgument);
  CHECK_THROWS_AS(PartitionWord({0, 0, 0, 0}), InvalidArgument);
  const auto w = PartitionWord::parse("abcabc");
  CHECK(w.partner(0) == 3);
  CHECK(w.partner(5) == 2);
  CHECK(w.occurrences()[1] == std::pair<std::size_t, std::size_t>{1, 4});
}

TEST_CASE("height examples") {
  CHECK(height(PartitionWord::parse("abcabc")) == 0);
  CHECK(height(PartitionWord::parse("abccba")) == 3);
  CHECK(height(PartitionWord::parse("aabbcc")) == 3);
  CHECK(height(PartitionWord::parse("aa")) == 1);
  CHECK(height(PartitionWord::parse("abab")) == 0);
}

TEST_CASE("irreducible and noncrossing examples") {
  CHECK(is_irreducible(PartitionWord::parse("aa")));
  CHECK_FALSE(is_irreducible(PartitionWord::parse("aabb")));
  CHECK(is_irreducible(PartitionWord::parse("abab")));
  CHECK(is_noncrossing(PartitionWord::parse("aabb")));
  CHECK(is_noncrossing(PartitionWord::parse("abba")));
  CHECK_FALSE(is_noncrossing(PartitionWord::parse("abab")));
  CHECK(is_noncrossing(PartitionWord::parse("aa")));
}

TEST_CASE("predicates agree with brute-force oracles for k <= 5") {
  for (std::size_t k = 1; k <= 5; ++k) {
    for_each_word(k, [&](const PartitionWord& w) {
      CHECK(is_irreducible(w) == irreducible_oracle(w));
      CHECK(is_noncrossing(w) == noncrossing_oracle(w.to_string()));
    });
  }
}

TEST_CASE("noncrossing count is Catalan for k <= 6") {
  for (int k = 1; k <= 6; ++k) {
    std::uint64_t count = 0;
    for_each_word(k, [&](const PartitionWord& w) { count += is_noncrossing(w) ? 1 : 0; });
    CHECK(Rational(static_cast<long>(count)) == reference_moment(Family::semicircle, 2 * k));
  }
}

TEST_CASE("irreducible words of length >= 4 have height 0") {
  for (std::size_t k = 2; k <= 6; ++k) {
    for_each_word(k, [&](const PartitionWord& w) {
      if (is_irreducible(w)) CHECK(height(w) == 0);
    });
  }
}

TEST_CASE("height additivity over every inner partition subword, k <= 5") {
  std::size_t checked = 0;
  for (std::size_t k = 2; k <= 5; ++k) {
    for_each_word(k, [&](const PartitionWord& w) {
      const std::string s = w.to_string();
      const std::size_t n = s.size();
      for (std::size_t lo = 0; lo < n; ++lo) {
        for (std::size_t hi = lo + 1; hi < n; hi += 2) {
          if (hi - lo + 1 == n) continue;
          bool closed = true;
          for (std::size_t p = lo; p <= hi && closed; ++p) {
            closed = w.partner(p) >= lo && w.partner(p) <= hi;
          }
          if (!closed) continue;
          const auto inner = PartitionWord::parse(s.substr(lo, hi - lo + 1));
          const auto outer = PartitionWord::parse(s.substr(0, lo) + s.substr(hi + 1));
          CHECK_MESSAGE(height(w) == height(inner) + height(outer), s);
          ++checked;
        }
      }
    });
  }
  CHECK(checked > 1000);
}

TEST_CASE("rotations and reversal") {
  const auto w = PartitionWord::parse("aabcbc");
  CHECK(rotate(w, 1).to_string() == "abcbca");
  CHECK(rotate(w, 6) == w);
  CHECK(reverse(PartitionWord::parse("aabcbc")).to_string() == "ababcc");
  const auto orbit = dihedral_orbit(PartitionWord::parse("abab"));
  CHECK(orbit.size() == 1);
  CHECK(dihedral_orbit(PartitionWord::parse("aabb")).size() == 2);
  std::size_t total = 0;
  for_each_word(4, [&](const PartitionWord& x) {
    const auto o = dihedral_orbit(x);
    CHECK(std::find(o.begin(), o.end(), x) != o.end());
    if (o.front() == x) total += o.size();
  });
  CHECK(total == 105);
}
