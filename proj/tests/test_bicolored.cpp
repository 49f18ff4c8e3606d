#include <bitset>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "dynlcs/bicolored.hpp"
#include "dynlcs/util.hpp"

using namespace dynlcs;

namespace {

constexpr size_t kMaxLabels = 256;

struct model {
  struct nd {
    int parent;
    int64_t w;
  };
  std::vector<nd> t[2];
  struct lab {
    int leaf[2];
    bool red;
  };
  std::map<int64_t, lab> labels;

  model() {
    t[0].push_back({-1, 0});
    t[1].push_back({-1, 0});
  }

  std::optional<int64_t> brute() const {
    std::vector<std::bitset<kMaxLabels>> reds[2], blues[2];
    for (int s = 0; s < 2; ++s) {
      reds[s].assign(t[s].size(), {});
      blues[s].assign(t[s].size(), {});
    }
    size_t idx = 0;
    for (const auto& [id, l] : labels) {
      REQUIRE(idx < kMaxLabels);
      for (int s = 0; s < 2; ++s)
        for (int u = l.leaf[s]; u >= 0; u = t[s][u].parent)
          (l.red ? reds[s][u] : blues[s][u]).set(idx);
      ++idx;
    }
    std::optional<int64_t> best;
    for (size_t u = 0; u < t[0].size(); ++u)
      for (size_t v = 0; v < t[1].size(); ++v) {
        if ((reds[0][u] & reds[1][v]).none()) continue;
        if ((blues[0][u] & blues[1][v]).none()) continue;
        int64_t tot = t[0][u].w + t[1][v].w;
        if (!best || tot > *best) best = tot;
      }
    return best;
  }

  bool is_ancestor(int s, int anc, int node) const {
    for (int u = node; u >= 0; u = t[s][u].parent)
      if (u == anc) return true;
    return false;
  }
};

void check_same(const bicolored_trees& b, const model& m) {
  auto want = m.brute();
  auto got = b.global_best();
  REQUIRE(got.has_value() == want.has_value());
  if (!got) return;
  REQUIRE(got->total == *want);
  REQUIRE(got->lcp0 + got->lcp1 == got->total);
  REQUIRE(got->lcp0 == m.t[0][got->u].w);
  REQUIRE(got->lcp1 == m.t[1][got->v].w);
  auto ir = m.labels.find(got->red_label);
  auto ib = m.labels.find(got->blue_label);
  REQUIRE(ir != m.labels.end());
  REQUIRE(ib != m.labels.end());
  REQUIRE(ir->second.red);
  REQUIRE(!ib->second.red);
  // the witness nodes must dominate both winning labels' leaves
  REQUIRE(m.is_ancestor(0, got->u, ir->second.leaf[0]));
  REQUIRE(m.is_ancestor(0, got->u, ib->second.leaf[0]));
  REQUIRE(m.is_ancestor(1, got->v, ir->second.leaf[1]));
  REQUIRE(m.is_ancestor(1, got->v, ib->second.leaf[1]));
}

void check_path_bound(const bicolored_trees& b, const model& m) {
  for (int s = 0; s < 2; ++s) {
    int64_t n = std::max<int64_t>(2, (int64_t)m.t[s].size());
    int bound = 6 * ceil_log2((uint64_t)n);
    for (int u = 0; u < (int)m.t[s].size(); ++u)
      REQUIRE(b.paths_above(s, u) <= bound);
  }
}

}  // namespace

TEST_CASE("bicolored: first label matches the hand layout") {
  bicolored_trees b;
  model m;
  CHECK(!b.global_best().has_value());
  auto l0 = b.attach_leaf(0, b.root(0), 3);
  m.t[0].push_back({0, 3});
  auto l1 = b.attach_leaf(1, b.root(1), 4);
  m.t[1].push_back({0, 4});
  b.add_label(7, l0, l1, true);
  m.labels[7] = {{(int)l0, (int)l1}, true};
  // the rebuild after the first attach makes each leaf heavy, so each tree is
  // one path and the label contributes exactly one point
  CHECK(b.total_points() == 1);
  CHECK(!b.global_best().has_value());  // one color only
  b.check_invariants();

  auto r0 = b.attach_leaf(0, b.root(0), 2);
  m.t[0].push_back({0, 2});
  auto r1 = b.attach_leaf(1, b.root(1), 5);
  m.t[1].push_back({0, 5});
  b.add_label(8, r0, r1, false);
  m.labels[8] = {{(int)r0, (int)r1}, false};
  check_same(b, m);  // only shared dominator is the root pair: total 0
  REQUIRE(b.global_best().has_value());
  CHECK(b.global_best()->total == 0);
  b.check_invariants();

  // a blue label sharing the red pair's leaves lifts the answer to 3 + 4
  b.add_label(9, l0, l1, false);
  m.labels[9] = {{(int)l0, (int)l1}, false};
  check_same(b, m);
  CHECK(b.global_best()->total == 7);
  b.check_invariants();
}

TEST_CASE("bicolored: split_edge changes no points and no answer") {
  std::mt19937_64 rng(515);
  bicolored_trees b;
  model m;
  std::vector<bicolored_trees::node> leaves[2];
  for (int i = 0; i < 6; ++i) {
    for (int s = 0; s < 2; ++s) {
      auto parent = b.root(s);
      int64_t w = 10 + (int64_t)(rng() % 50);
      auto u = b.attach_leaf(s, parent, w);
      m.t[s].push_back({(int)parent, w});
      leaves[s].push_back(u);
    }
  }
  for (int i = 0; i < 6; ++i) {
    b.add_label(i, leaves[0][i], leaves[1][i], i % 2 == 0);
    m.labels[i] = {{(int)leaves[0][i], (int)leaves[1][i]}, i % 2 == 0};
  }
  check_same(b, m);
  b.check_invariants();
  int64_t pts = b.total_points();
  auto before = b.global_best();
  for (int s = 0; s < 2; ++s)
    for (auto child : leaves[s]) {
      int64_t lo = 0, hi = m.t[s][child].w;
      if (hi - lo < 2) continue;
      int64_t w = lo + 1 + (int64_t)(rng() % (hi - lo - 1));
      auto nn = b.split_edge(s, child, w);
      m.t[s].push_back({m.t[s][child].parent, w});
      m.t[s][child].parent = (int)nn;
      CHECK(b.total_points() == pts);
      REQUIRE(b.global_best().has_value() == before.has_value());
      if (before) CHECK(b.global_best()->total == before->total);
      check_same(b, m);
      b.check_invariants();
    }
}

TEST_CASE("bicolored: deleting a label removes exactly k1*k2 points") {
  std::mt19937_64 rng(99);
  bicolored_trees b;
  model m;
  std::vector<bicolored_trees::node> hosts[2]{{b.root(0)}, {b.root(1)}};
  for (int i = 0; i < 40; ++i) {
    for (int s = 0; s < 2; ++s) {
      auto parent = hosts[s][rng() % hosts[s].size()];
      int64_t w = m.t[s][parent].w + 1 + (int64_t)(rng() % 4);
      hosts[s].push_back(b.attach_leaf(s, parent, w));
      m.t[s].push_back({(int)parent, w});
    }
  }
  std::vector<int64_t> live;
  for (int i = 0; i < 30; ++i) {
    auto u = hosts[0][1 + rng() % (hosts[0].size() - 1)];
    auto v = hosts[1][1 + rng() % (hosts[1].size() - 1)];
    bool red = rng() % 2 == 0;
    b.add_label(i, u, v, red);
    m.labels[i] = {{(int)u, (int)v}, red};
    live.push_back(i);
  }
  b.check_invariants();
  while (!live.empty()) {
    int64_t id = live.back();
    live.pop_back();
    int k1 = b.paths_above(0, m.labels[id].leaf[0]);
    int k2 = b.paths_above(1, m.labels[id].leaf[1]);
    int64_t before = b.total_points();
    b.remove_label(id);
    m.labels.erase(id);
    CHECK(before - b.total_points() == (int64_t)k1 * k2);
    check_same(b, m);
    b.check_invariants();
  }
  CHECK(b.total_points() == 0);
}

TEST_CASE("bicolored: randomized operations match brute force") {
  std::mt19937_64 rng(77003);
  for (int run = 0; run < 3; ++run) {
    bicolored_trees b;
    model m;
    std::vector<int64_t> live;
    int64_t next_label = 0;
    for (int op = 0; op < 500; ++op) {
      int kind = (int)(rng() % 10);
      if (kind < 3) {
        int s = (int)(rng() % 2);
        int parent = (int)(rng() % m.t[s].size());
        int64_t w = m.t[s][parent].w + 1 + (int64_t)(rng() % 5);
        b.attach_leaf(s, parent, w);
        m.t[s].push_back({parent, w});
      } else if (kind < 5) {
        int s = (int)(rng() % 2);
        if (m.t[s].size() < 2) continue;
        int child = 1 + (int)(rng() % (m.t[s].size() - 1));
        int64_t lo = m.t[s][m.t[s][child].parent].w, hi = m.t[s][child].w;
        if (hi - lo < 2) continue;
        int64_t w = lo + 1 + (int64_t)(rng() % (hi - lo - 1));
        auto nn = b.split_edge(s, child, w);
        m.t[s].push_back({m.t[s][child].parent, w});
        m.t[s][child].parent = (int)nn;
      } else if (kind < 8 && m.labels.size() < kMaxLabels - 2) {
        int u = (int)(rng() % m.t[0].size());
        int v = (int)(rng() % m.t[1].size());
        bool red = rng() % 2 == 0;
        b.add_label(next_label, u, v, red);
        m.labels[next_label] = {{u, v}, red};
        live.push_back(next_label);
        ++next_label;
      } else if (!live.empty()) {
        size_t k = rng() % live.size();
        int64_t id = live[k];
        live[k] = live.back();
        live.pop_back();
        b.remove_label(id);
        m.labels.erase(id);
      }
      check_same(b, m);
      if (op % 5 == 0) b.check_invariants();
      if (op % 25 == 0) check_path_bound(b, m);
    }
    b.check_invariants();
    check_path_bound(b, m);
    int64_t n0 = (int64_t)m.t[0].size(), n1 = (int64_t)m.t[1].size();
    int64_t mm = std::max<int64_t>(2, std::max(n0, n1));
    int lg = ceil_log2((uint64_t)mm);
    CHECK(b.total_points() <=
          10 * (int64_t)m.labels.size() * lg * lg + 10);
  }
}

TEST_CASE("bicolored: deep chains keep path counts logarithmic") {
  std::mt19937_64 rng(31337);
  bicolored_trees b;
  model m;
  bicolored_trees::node tip[2] = {b.root(0), b.root(1)};
  std::vector<bicolored_trees::node> spine[2];
  for (int i = 0; i < 120; ++i) {
    for (int s = 0; s < 2; ++s) {
      int64_t w = m.t[s][tip[s]].w + 1;
      auto u = b.attach_leaf(s, tip[s], w);
      m.t[s].push_back({(int)tip[s], w});
      spine[s].push_back(u);
      tip[s] = u;
    }
    if (i % 10 == 0) {
      b.add_label(i, tip[0], tip[1], (i / 10) % 2 == 0);
      m.labels[i] = {{(int)tip[0], (int)tip[1]}, (i / 10) % 2 == 0};
    }
    if (i % 7 == 0) {
      check_same(b, m);
      b.check_invariants();
    }
  }
  check_same(b, m);
  check_path_bound(b, m);
  // label the spine at assorted depths from fresh side branches
  for (int i = 0; i < 30; ++i) {
    int s0 = (int)(rng() % spine[0].size());
    int s1 = (int)(rng() % spine[1].size());
    auto u = b.attach_leaf(0, spine[0][s0], m.t[0][spine[0][s0]].w + 100);
    m.t[0].push_back({(int)spine[0][s0], m.t[0][spine[0][s0]].w + 100});
    auto v = b.attach_leaf(1, spine[1][s1], m.t[1][spine[1][s1]].w + 100);
    m.t[1].push_back({(int)spine[1][s1], m.t[1][spine[1][s1]].w + 100});
    b.add_label(1000 + i, u, v, i % 2 == 0);
    m.labels[1000 + i] = {{(int)u, (int)v}, i % 2 == 0};
    check_same(b, m);
    if (i % 5 == 0) {
      b.check_invariants();
      check_path_bound(b, m);
    }
  }
}

TEST_CASE("bicolored: preconditions") {
  bicolored_trees b;
  CHECK_THROWS_AS(b.attach_leaf(0, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(b.attach_leaf(0, b.root(0), 0), std::invalid_argument);
  auto u = b.attach_leaf(0, b.root(0), 4);
  CHECK_THROWS_AS(b.split_edge(0, u, 4), std::invalid_argument);
  CHECK_THROWS_AS(b.split_edge(0, u, 0), std::invalid_argument);
  auto v = b.attach_leaf(1, b.root(1), 2);
  b.add_label(1, u, v, true);
  CHECK_THROWS_AS(b.add_label(1, u, v, false), std::invalid_argument);
  CHECK_THROWS_AS(b.remove_label(2), std::invalid_argument);
  CHECK(b.has_label(1));
  b.remove_label(1);
  CHECK(!b.has_label(1));
}
