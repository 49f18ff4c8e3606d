#include "dynlcs/partial_lcs.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "dynlcs/oracle.hpp"

using namespace dynlcs;

namespace {

std::vector<int> to_ints(const std::string& s) {
  std::vector<int> v;
  for (char c : s) v.push_back(c - 'a' + 1);
  return v;
}

bool occurs_in(const std::vector<int>& pattern, const std::vector<int>& text) {
  if (pattern.empty()) return true;
  return std::search(text.begin(), text.end(), pattern.begin(), pattern.end()) != text.end();
}

std::vector<int> slice(const std::vector<int>& v, int64_t pos, int64_t len) {
  return std::vector<int>(v.begin() + pos - 1, v.begin() + pos - 1 + len);
}

void check_block_invariants(const partial_lcs& eng) {
  auto bs = eng.blocks();
  const auto& s = eng.s();
  const auto& t = eng.t();
  REQUIRE(!bs.empty());
  CHECK(bs.front().start == 1);
  CHECK(bs.back().end == (int64_t)s.size());
  for (size_t i = 0; i < bs.size(); ++i) {
    REQUIRE(bs[i].start <= bs[i].end);
    if (i > 0) CHECK(bs[i].start == bs[i - 1].end + 1);
    auto content = slice(s, bs[i].start, bs[i].end - bs[i].start + 1);
    if (bs[i].occ == 0) {
      // foreign block: a single letter absent from t
      CHECK(content.size() == 1);
      CHECK(std::find(t.begin(), t.end(), content[0]) == t.end());
    } else {
      auto at_occ = slice(t, bs[i].occ, (int64_t)content.size());
      CHECK(content == at_occ);
    }
    if (i > 0) {
      // adjacent blocks never concatenate to a substring of t
      auto prev = slice(s, bs[i - 1].start, bs[i - 1].end - bs[i - 1].start + 1);
      prev.insert(prev.end(), content.begin(), content.end());
      CHECK(!occurs_in(prev, t));
    }
  }
}

void check_answer(const partial_lcs& eng) {
  auto want = oracle::lcs_dp(eng.s(), eng.t());
  auto got = eng.lcs();
  CHECK(got.length == want.length);
  if (got.length > 0) {
    REQUIRE(got.s_pos >= 1);
    REQUIRE(got.s_pos + got.length - 1 <= (int64_t)eng.s().size());
    REQUIRE(got.t_pos >= 1);
    REQUIRE(got.t_pos + got.length - 1 <= (int64_t)eng.t().size());
    CHECK(slice(eng.s(), got.s_pos, got.length) == slice(eng.t(), got.t_pos, got.length));
  } else {
    CHECK(got.s_pos == 0);
    CHECK(got.t_pos == 0);
  }
}

}  // namespace

TEST_CASE("partial_lcs fixed walkthrough") {
  partial_lcs eng(to_ints("bbbbb"), to_ints("abaab"));
  // "bb" does not occur in t, so the initial decomposition is all singletons
  CHECK(eng.blocks().size() == 5);
  CHECK(eng.lcs().length == 1);

  eng.substitute(3, 1);  // s becomes "bbabb"
  auto bs = eng.blocks();
  REQUIRE(bs.size() == 4);  // b | ba | b | b
  CHECK(bs[0].start == 1);
  CHECK(bs[0].end == 1);
  CHECK(bs[1].start == 2);
  CHECK(bs[1].end == 3);
  CHECK(bs[2].start == 4);
  CHECK(bs[2].end == 4);
  CHECK(bs[3].start == 5);
  CHECK(bs[3].end == 5);
  CHECK(eng.last_stats().merges == 1);
  CHECK(eng.lcs().length == 2);
  check_block_invariants(eng);
  check_answer(eng);
}

TEST_CASE("partial_lcs edge cases") {
  // single letters, shared and foreign
  partial_lcs a(to_ints("a"), to_ints("a"));
  CHECK(a.lcs().length == 1);
  a.substitute(1, 2);  // foreign
  CHECK(a.lcs().length == 0);
  a.substitute(1, 1);
  CHECK(a.lcs().length == 1);

  // all-foreign s
  partial_lcs b(to_ints("xyz"), to_ints("abc"));
  CHECK(b.lcs().length == 0);
  check_block_invariants(b);

  // no-op substitution keeps stats empty
  partial_lcs c(to_ints("abc"), to_ints("abc"));
  c.substitute(2, 2);
  CHECK(c.last_stats().merges == 0);
  CHECK(c.last_stats().candidates_recomputed == 0);
  CHECK(c.lcs().length == 3);

  CHECK_THROWS(partial_lcs({}, to_ints("abc")));
  CHECK_THROWS(c.substitute(0, 1));
  CHECK_THROWS(c.substitute(4, 1));
  CHECK_THROWS(c.substitute(1, 0));
}

TEST_CASE("partial_lcs matches dp oracle under random substitutions") {
  std::mt19937_64 rng(771144);
  for (int it = 0; it < 60; ++it) {
    int ns = 1 + (int)(rng() % 50), nt = 1 + (int)(rng() % 50);
    int sigma = 1 + (int)(rng() % 4);
    auto gen_letter = [&]() {
      // mostly within t's alphabet, sometimes foreign
      return rng() % 8 == 0 ? 90 + (int)(rng() % 3) : 1 + (int)(rng() % sigma);
    };
    std::vector<int> s(ns), t(nt);
    for (auto& c : s) c = gen_letter();
    for (auto& c : t) c = 1 + (int)(rng() % sigma);
    partial_lcs eng(s, t);
    check_block_invariants(eng);
    check_answer(eng);

    for (int u = 0; u < 25; ++u) {
      int64_t pos = 1 + (int64_t)(rng() % ns);
      int letter = gen_letter();
      eng.substitute(pos, letter);
      s[pos - 1] = letter;
      REQUIRE(eng.s() == s);
      CHECK(eng.last_stats().merges <= 4);
      CHECK(eng.last_stats().candidates_recomputed <= 12);
      check_block_invariants(eng);
      check_answer(eng);
    }
  }
}

TEST_CASE("partial_lcs on runs and periodic strings") {
  std::mt19937_64 rng(5150);
  // runs: substitutions inside long equal-letter runs exercise merges hard
  std::vector<int> s(60, 1), t(40, 1);
  for (int i = 10; i < 20; ++i) t[i] = 2;
  partial_lcs eng(s, t);
  check_answer(eng);
  for (int u = 0; u < 60; ++u) {
    int64_t pos = 1 + (int64_t)(rng() % 60);
    int letter = 1 + (int)(rng() % 2);
    eng.substitute(pos, letter);
    CHECK(eng.last_stats().merges <= 4);
    check_block_invariants(eng);
    check_answer(eng);
  }

  // periodic: ababab vs babab patterns
  std::vector<int> s2, t2;
  for (int i = 0; i < 50; ++i) s2.push_back(1 + i % 2);
  for (int i = 0; i < 30; ++i) t2.push_back(2 - i % 2);
  partial_lcs eng2(s2, t2);
  check_answer(eng2);
  for (int u = 0; u < 50; ++u) {
    int64_t pos = 1 + (int64_t)(rng() % 50);
    eng2.substitute(pos, 1 + (int)(rng() % 3));
    check_block_invariants(eng2);
    check_answer(eng2);
  }
}
