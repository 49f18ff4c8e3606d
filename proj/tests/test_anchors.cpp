#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "doctest.h"
#include "dynlcs/anchors.hpp"
#include "dynlcs/grammar.hpp"
#include "dynlcs/util.hpp"

using namespace dynlcs;

namespace {

std::vector<int> to_ints(const std::string& s) {
  std::vector<int> v;
  for (char c : s) v.push_back(c - 'a' + 1);
  return v;
}

std::vector<int> random_string(std::mt19937_64& rng, int n, int sigma) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) {
    if (i > 0 && rng() % 3 == 0)
      v[i] = v[i - 1];
    else
      v[i] = (int)(rng() % sigma) + 1;
  }
  return v;
}

using fam_map = std::unordered_map<uint64_t, anchor_pair>;

bool pair_eq(const anchor_pair& a, const anchor_pair& b) {
  return a.id == b.id && a.owner == b.owner && a.level == b.level &&
         a.up_lo == b.up_lo && a.up_hi == b.up_hi && a.down_lo == b.down_lo &&
         a.down_hi == b.down_hi;
}

fam_map to_map(const std::vector<anchor_pair>& v) {
  fam_map m;
  for (const auto& p : v) {
    REQUIRE(!m.count(p.id));
    m.emplace(p.id, p);
  }
  return m;
}

void check_family_invariants(const grammar& g, grammar::sym root,
                             const std::vector<anchor_pair>& fam) {
  int64_t n = g.len(root);
  for (const auto& p : fam) {
    CHECK(p.level >= 0);
    CHECK(p.level < g.level(root));
    CHECK(p.up_lo >= 1);
    CHECK(p.up_lo <= p.up_hi);
    CHECK(p.up_hi <= n);
    CHECK(p.down_lo == p.up_hi + 1);  // windows are adjacent by construction
    CHECK(p.down_hi >= p.down_lo - 1);
    CHECK(p.down_hi <= n);
  }
  CHECK((int64_t)fam.size() <= 4 * n + 8);
}

// applies a diff to the maintained map, requiring exact record matches
void apply_diff(fam_map& m, const anchor_diff& d) {
  for (const auto& p : d.deleted) {
    auto it = m.find(p.id);
    REQUIRE(it != m.end());
    REQUIRE(pair_eq(it->second, p));
    m.erase(it);
  }
  for (const auto& p : d.inserted) {
    REQUIRE(!m.count(p.id));
    m.emplace(p.id, p);
  }
}

void require_same_family(const fam_map& got, const fam_map& want) {
  REQUIRE(got.size() == want.size());
  for (const auto& [id, p] : want) {
    auto it = got.find(id);
    REQUIRE(it != got.end());
    REQUIRE(pair_eq(it->second, p));
  }
}

bool has_witness(const std::string& w, const std::vector<anchor_pair>& fam,
                 const std::string& xl, const std::string& xr) {
  for (const auto& p : fam) {
    int64_t ul = p.up_hi - p.up_lo + 1, dl = p.down_hi - p.down_lo + 1;
    if ((int64_t)xl.size() > ul || (int64_t)xr.size() > dl) continue;
    if (w.compare((size_t)(p.up_hi - (int64_t)xl.size()), xl.size(), xl) != 0)
      continue;
    if (w.compare((size_t)(p.down_lo - 1), xr.size(), xr) != 0) continue;
    return true;
  }
  return false;
}

}  // namespace

TEST_CASE("anchors: window size") {
  CHECK(anchor_window(1) == 8);
  CHECK(anchor_window(2) == 16);
  CHECK(anchor_window(256) == 72);
  CHECK(anchor_window(257) == 80);
  CHECK_THROWS_AS(anchor_window(0), std::invalid_argument);
}

TEST_CASE("anchors: fixed small families") {
  grammar g(42);

  grammar::sym one = g.parse_string(to_ints("a"));
  CHECK(anchor_family(g, one, 0).empty());

  grammar::sym ab = g.parse_string(to_ints("ab"));
  auto fam = anchor_family(g, ab, 0);
  REQUIRE(fam.size() == 2);
  std::sort(fam.begin(), fam.end(), [](const anchor_pair& x, const anchor_pair& y) {
    return x.up_hi < y.up_hi;
  });
  CHECK(fam[0].up_lo == 1);
  CHECK(fam[0].up_hi == 1);
  CHECK(fam[0].down_lo == 2);
  CHECK(fam[0].down_hi == 2);
  CHECK(fam[1].up_lo == 1);
  CHECK(fam[1].up_hi == 2);
  CHECK(fam[1].down_lo == 3);
  CHECK(fam[1].down_hi == 2);  // empty: rightmost node has nothing after it

  // a run collapses to one power node; every copy owns a pair here (k < C)
  grammar::sym runs = g.parse_string(std::vector<int>(10, 1));
  auto rf = anchor_family(g, runs, 0);
  REQUIRE(rf.size() == 10);
  std::sort(rf.begin(), rf.end(), [](const anchor_pair& x, const anchor_pair& y) {
    return x.up_hi < y.up_hi;
  });
  for (int64_t c = 0; c < 10; ++c) {
    CHECK(rf[c].level == 0);
    CHECK(rf[c].up_lo == 1);
    CHECK(rf[c].up_hi == c + 1);
    CHECK(rf[c].down_lo == c + 2);
    CHECK(rf[c].down_hi == 10);  // c == 9: empty span [11, 10]
  }
}

TEST_CASE("anchors: family invariants on random strings") {
  std::mt19937_64 rng(7101);
  for (int it = 0; it < 40; ++it) {
    int n = 2 + (int)(rng() % 300);
    int sigma = 2 + (int)(rng() % 3);
    grammar g(1000 + it);
    grammar::sym root = g.parse_string(random_string(rng, n, sigma));
    auto fam = anchor_family(g, root, it & 1);
    check_family_invariants(g, root, fam);
  }
}

TEST_CASE("anchors: diff of identical content is empty") {
  grammar g(5);
  grammar::sym r = g.parse_string(to_ints("abcabcab"));
  grammar::sym r2 = g.substitute(r, 3, 3);  // same letter
  CHECK(r2 == r);
  auto d = anchor_diff_update(g, r, r2, 0);
  CHECK(d.deleted.empty());
  CHECK(d.inserted.empty());
}

TEST_CASE("anchors: diff equals from-scratch recomputation, exhaustive small") {
  for (int n = 2; n <= 12; ++n) {
    grammar g(900 + n);
    std::mt19937_64 rng(33 * n);
    std::vector<int> w = random_string(rng, n, 2);
    grammar::sym before = g.parse_string(w);
    fam_map base = to_map(anchor_family(g, before, 0));
    for (int64_t pos = 1; pos <= n; ++pos) {
      for (int a = 1; a <= 3; ++a) {
        if (a == w[pos - 1]) continue;
        grammar::sym after = g.substitute(before, pos, a);
        auto d = anchor_diff_update(g, before, after, 0);
        fam_map m = base;
        apply_diff(m, d);
        require_same_family(m, to_map(anchor_family(g, after, 0)));
      }
    }
  }
}

TEST_CASE("anchors: diff equals from-scratch recomputation, random chains") {
  std::mt19937_64 rng(40991);
  for (int it = 0; it < 25; ++it) {
    int n = 4 + (int)(rng() % 253);
    int sigma = 2 + (int)(rng() % 3);
    grammar g(7000 + it);
    std::vector<int> w = random_string(rng, n, sigma);
    grammar::sym cur = g.parse_string(w);
    fam_map m = to_map(anchor_family(g, cur, 1));
    int64_t bound = 8;
    {
      int64_t lg = ceil_log2((uint64_t)n);
      bound = std::max<int64_t>(8, 8 * lg * lg * lg);
    }
    for (int step = 0; step < 15; ++step) {
      int64_t pos = 1 + (int64_t)(rng() % n);
      int a = (int)(rng() % sigma) + 1;
      grammar::sym nxt = g.substitute(cur, pos, a);
      auto d = anchor_diff_update(g, cur, nxt, 1);
      CHECK((int64_t)(d.deleted.size() + d.inserted.size()) <= bound);
      apply_diff(m, d);
      require_same_family(m, to_map(anchor_family(g, nxt, 1)));
      cur = nxt;
    }
  }
}

TEST_CASE("anchors: run-heavy strings stress block handling") {
  std::mt19937_64 rng(512);
  for (int it = 0; it < 12; ++it) {
    int n = 16 + (int)(rng() % 120);
    grammar g(300 + it);
    // long runs with occasional breaks; exercises power-block edge selection
    std::vector<int> w(n);
    int cur = 1;
    for (int i = 0; i < n; ++i) {
      if (rng() % 7 == 0) cur = (int)(rng() % 2) + 1;
      w[i] = cur;
    }
    grammar::sym root = g.parse_string(w);
    fam_map m = to_map(anchor_family(g, root, 0));
    check_family_invariants(g, root, anchor_family(g, root, 0));
    for (int step = 0; step < 10; ++step) {
      int64_t pos = 1 + (int64_t)(rng() % n);
      int a = (int)(rng() % 2) + 1;
      grammar::sym nxt = g.substitute(root, pos, a);
      auto d = anchor_diff_update(g, root, nxt, 0);
      apply_diff(m, d);
      require_same_family(m, to_map(anchor_family(g, nxt, 0)));
      root = nxt;
    }
  }
}

TEST_CASE("anchors: every common substring has a same-split witness in both families") {
  std::mt19937_64 rng(2424);
  for (int it = 0; it < 30; ++it) {
    int ns = 4 + (int)(rng() % 17), nt = 4 + (int)(rng() % 17);
    std::string S, T;
    for (int i = 0; i < ns; ++i) S.push_back((char)('a' + rng() % 2));
    for (int i = 0; i < nt; ++i) T.push_back((char)('a' + rng() % 2));
    grammar g(61 + it);
    grammar::sym rs = g.parse_string(to_ints(S));
    grammar::sym rt = g.parse_string(to_ints(T));
    auto fs = anchor_family(g, rs, 0);
    auto ft = anchor_family(g, rt, 1);

    std::set<std::string> seen;
    for (int s = 0; s < ns; ++s) {
      for (int e = s; e < ns; ++e) {
        std::string x = S.substr(s, e - s + 1);
        if (T.find(x) == std::string::npos) continue;
        if (!seen.insert(x).second) continue;
        bool found = false;
        for (size_t j = 0; j <= x.size() && !found; ++j) {
          std::string xl = x.substr(0, j), xr = x.substr(j);
          found = has_witness(S, fs, xl, xr) && has_witness(T, ft, xl, xr);
        }
        CAPTURE(S);
        CAPTURE(T);
        CAPTURE(x);
        REQUIRE(found);
      }
    }
  }
}
