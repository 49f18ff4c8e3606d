#include "dynlcs/grammar.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "dynlcs/util.hpp"

using dynlcs::grammar;

namespace {

std::vector<int> to_ints(const std::string& s) {
  std::vector<int> v;
  for (char c : s) v.push_back(c - 'a' + 1);
  return v;
}

std::vector<int> expand_entries(const grammar& g,
                                const std::vector<grammar::entry>& seq) {
  std::vector<int> out;
  for (auto [s, e] : seq) {
    std::vector<int> part = g.expand(s);
    for (int64_t r = 0; r < e; ++r)
      out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<int> random_string(std::mt19937_64& rng, int n, int sigma) {
  std::vector<int> v(n);
  for (int& x : v) x = (int)(rng() % sigma) + 1;
  // sprinkle runs so powers show up
  for (int i = 1; i < n; ++i)
    if (rng() % 3 == 0) v[i] = v[i - 1];
  return v;
}

}  // namespace

TEST_CASE("grammar: fixed small parses") {
  grammar g;
  grammar::sym a = g.parse_string(to_ints("a"));
  CHECK(g.k(a) == grammar::kind::letter);
  CHECK(g.level(a) == 0);
  CHECK(g.len(a) == 1);

  grammar::sym a4 = g.parse_string(to_ints("aaaa"));
  CHECK(g.k(a4) == grammar::kind::power);
  CHECK(g.level(a4) == 1);
  CHECK(g.exponent(a4) == 4);
  CHECK(g.base(a4) == a);

  std::vector<int> w = to_ints("abababaabbcdabababcd");
  grammar::sym r = g.parse_string(w);
  CHECK(g.expand(r) == w);
  CHECK(g.len(r) == (int64_t)w.size());
}

TEST_CASE("grammar: lcp fixed values") {
  grammar g;
  grammar::sym x = g.parse_string(to_ints("abab"));
  grammar::sym y = g.parse_string(to_ints("abba"));
  CHECK(g.lcp(x, y) == 2);
  CHECK(g.lcp(x, x) == 4);
  CHECK(g.lcp(g.parse_string(to_ints("a")), g.parse_string(to_ints("b"))) ==
        0);
}

TEST_CASE("grammar: split and concat round-trip ids") {
  grammar g;
  grammar::sym r = g.parse_string(to_ints("abcd"));
  auto [p, q] = g.split(r, 2);
  CHECK(g.expand(p) == to_ints("ab"));
  CHECK(g.expand(q) == to_ints("cd"));
  CHECK(g.concat_roots(p, q) == r);

  auto [u, v] = g.split(g.parse_string(to_ints("aa")), 1);
  CHECK(u == v);
}

TEST_CASE("grammar: substitute matches reparse on fixed cases") {
  grammar g;
  grammar::sym r = g.parse_string(to_ints("aaaa"));
  CHECK(g.substitute(r, 2, 1) == r);
  CHECK(g.substitute(r, 2, 2) == g.parse_string(to_ints("abaa")));
  CHECK(g.expand(r) == to_ints("aaaa"));  // persistence
}

TEST_CASE("grammar: single letter decompose") {
  grammar g;
  grammar::sym r = g.parse_string(to_ints("abcab"));
  auto d = g.decompose(r, 3, 3);
  REQUIRE(d.up.size() == 1);
  CHECK(d.down.empty());
  CHECK(d.up[0].second == 1);
  CHECK(g.letter_value(d.up[0].first) == 3);
}

TEST_CASE("grammar: preconditions") {
  grammar g;
  CHECK_THROWS_AS(g.parse_string({}), std::invalid_argument);
  CHECK_THROWS_AS(g.letter(0), std::invalid_argument);
  grammar::sym r = g.parse_string(to_ints("abc"));
  CHECK_THROWS_AS(g.substitute(r, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(g.substitute(r, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(g.split(r, 3), std::invalid_argument);
  CHECK_THROWS_AS((void)g.decompose(r, 2, 4), std::invalid_argument);
  CHECK_THROWS_AS((void)g.lcp(-1, 0), std::invalid_argument);
}

TEST_CASE("grammar: random round trips, height, letter_at") {
  std::mt19937_64 rng(2024);
  grammar g;
  for (int it = 0; it < 80; ++it) {
    int n = 4 + (int)(rng() % 400);
    std::vector<int> w = random_string(rng, n, 1 + (int)(rng() % 4));
    grammar::sym r = g.parse_string(w);
    REQUIRE(g.expand(r) == w);
    REQUIRE(g.len(r) == n);
    // probabilistic height bound, pinned constant
    CHECK(g.level(r) <= 16 * (int)dynlcs::ceil_log2((uint64_t)n));
    for (int t = 0; t < 10; ++t) {
      int64_t pos = (int64_t)(rng() % n) + 1;
      CHECK(g.letter_at(r, pos) == w[pos - 1]);
      auto nd = g.alive_at(r, pos, (int)(rng() % (g.level(r) + 1)));
      CHECK(nd.start <= pos);
      CHECK(pos <= nd.start + g.len(nd.s) - 1);
      if (nd.parent >= 0) CHECK(g.level(nd.parent) > g.level(nd.s));
    }
  }
}

TEST_CASE("grammar: substitute chain matches from-scratch reparse") {
  std::mt19937_64 rng(77);
  grammar g;
  std::vector<int> w = random_string(rng, 256, 3);
  grammar::sym r = g.parse_string(w);
  for (int step = 0; step < 100; ++step) {
    int64_t pos = (int64_t)(rng() % w.size()) + 1;
    int a = (int)(rng() % 4) + 1;
    w[pos - 1] = a;
    r = g.substitute(r, pos, a);
    REQUIRE(r == g.parse_string(w));
  }
}

TEST_CASE("grammar: concat and split histories stay content-deterministic") {
  std::mt19937_64 rng(9119);
  for (int it = 0; it < 30; ++it) {
    grammar g;
    std::vector<std::vector<int>> pool;
    std::vector<grammar::sym> roots;
    for (int i = 0; i < 4; ++i) {
      pool.push_back(random_string(rng, 2 + (int)(rng() % 40), 3));
      roots.push_back(g.parse_string(pool.back()));
    }
    for (int step = 0; step < 40; ++step) {
      size_t i = rng() % roots.size();
      switch (rng() % 3) {
        case 0: {
          size_t j = rng() % roots.size();
          pool.push_back(pool[i]);
          pool.back().insert(pool.back().end(), pool[j].begin(),
                             pool[j].end());
          roots.push_back(g.concat_roots(roots[i], roots[j]));
          break;
        }
        case 1: {
          if (pool[i].size() < 2) continue;
          int64_t pos = (int64_t)(rng() % (pool[i].size() - 1)) + 1;
          auto [p, q] = g.split(roots[i], pos);
          pool.push_back({pool[i].begin(), pool[i].begin() + pos});
          roots.push_back(p);
          pool.push_back({pool[i].begin() + pos, pool[i].end()});
          roots.push_back(q);
          break;
        }
        default: {
          int64_t pos = (int64_t)(rng() % pool[i].size()) + 1;
          int a = (int)(rng() % 4) + 1;
          pool[i][pos - 1] = a;
          roots[i] = g.substitute(roots[i], pos, a);
          break;
        }
      }
      size_t j = rng() % roots.size();
      REQUIRE(roots[j] == g.parse_string(pool[j]));
    }
  }
}

TEST_CASE("grammar: decompose round-trip, size bound, canonical windows") {
  std::mt19937_64 rng(4242);
  grammar g;
  for (int it = 0; it < 60; ++it) {
    int n = 8 + (int)(rng() % 300);
    std::vector<int> w = random_string(rng, n, 1 + (int)(rng() % 3));
    grammar::sym r = g.parse_string(w);
    for (int t = 0; t < 8; ++t) {
      int64_t i = (int64_t)(rng() % n) + 1;
      int64_t j = i + (int64_t)(rng() % (n - i + 1));
      auto d = g.decompose(r, i, j);
      std::vector<int> want(w.begin() + i - 1, w.begin() + j);
      REQUIRE(expand_entries(g, d.joined()) == want);
      CHECK(d.up.size() + d.down.size() <=
            8 * (size_t)dynlcs::ceil_log2((uint64_t)n) + 4);
      // splicing the staircase back yields the canonical parse of the window
      REQUIRE(g.parse_rounds(d.joined()) == g.parse_string(want));
    }
  }
}

TEST_CASE("grammar: decompose is context insensitive") {
  std::mt19937_64 rng(515151);
  grammar g;
  for (int it = 0; it < 60; ++it) {
    int n = 6 + (int)(rng() % 120);
    std::vector<int> w1 = random_string(rng, n, 2);
    int64_t i = (int64_t)(rng() % n) + 1;
    int64_t j = i + (int64_t)(rng() % (n - i + 1));
    std::vector<int> frag(w1.begin() + i - 1, w1.begin() + j);
    // embed the same fragment in an unrelated host
    std::vector<int> w2 = random_string(rng, 1 + (int)(rng() % 60), 2);
    int64_t at = (int64_t)(rng() % (w2.size() + 1));
    w2.insert(w2.begin() + at, frag.begin(), frag.end());
    grammar::sym r1 = g.parse_string(w1);
    grammar::sym r2 = g.parse_string(w2);
    auto d1 = g.decompose(r1, i, j);
    auto d2 = g.decompose(r2, at + 1, at + (int64_t)frag.size());
    REQUIRE(d1.up == d2.up);
    REQUIRE(d1.down == d2.down);
  }
}

TEST_CASE("grammar: lcp matches character scan") {
  std::mt19937_64 rng(6161);
  grammar g;
  for (int it = 0; it < 200; ++it) {
    int n1 = 1 + (int)(rng() % 200), n2 = 1 + (int)(rng() % 200);
    std::vector<int> a = random_string(rng, n1, 2);
    std::vector<int> b = random_string(rng, n2, 2);
    if (rng() % 2) {
      // plant a long shared prefix
      size_t k = std::min(a.size(), b.size());
      std::copy(a.begin(), a.begin() + (rng() % (k + 1)), b.begin());
    }
    size_t want = 0;
    while (want < a.size() && want < b.size() && a[want] == b[want]) ++want;
    REQUIRE(g.lcp(g.parse_string(a), g.parse_string(b)) == (int64_t)want);
  }
}
