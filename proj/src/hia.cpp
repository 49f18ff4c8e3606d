#include "dynlcs/hia.hpp"

#include <algorithm>
#include <limits>

#include "dynlcs/util.hpp"

namespace dynlcs {

namespace {

constexpr int64_t kNoCap = std::numeric_limits<int64_t>::max() / 4;

inline uint64_t pair_key(int p, int q) { return ((uint64_t)(uint32_t)p << 32) | (uint32_t)q; }

void validate(const hia_tree& t) {
  if (t.parent.empty() || t.parent[0] != -1 || t.weight[0] != 0)
    fail_pre("hia_tree: node 0 must be a weight-0 root");
  size_t n = t.parent.size();
  if (t.weight.size() != n || t.label.size() != n) fail_pre("hia_tree: array size mismatch");
  for (size_t v = 1; v < n; ++v) {
    if (t.parent[v] < 0 || (size_t)t.parent[v] >= n) fail_pre("hia_tree: bad parent");
    if (t.weight[t.parent[v]] > t.weight[v]) fail_pre("hia_tree: weights must not decrease");
  }
}

struct entry {
  int32_t p, q;
  int32_t a, b;
  int32_t label;
};

}  // namespace

void hia_index::hld::build(const hia_tree& t) {
  int n = (int)t.parent.size();
  parent = t.parent;
  weight = t.weight;
  std::vector<int> order(n), sz(n, 1), heavy(n, -1);
  // parents precede children in creation order is not guaranteed; compute a
  // BFS order from the root instead.
  std::vector<std::vector<int>> children(n);
  for (int v = 1; v < n; ++v) children[t.parent[v]].push_back(v);
  int head_i = 0;
  order[head_i++] = 0;
  for (int i = 0; i < n; ++i)
    for (int c : children[order[i]]) order[head_i++] = c;
  for (int i = n - 1; i >= 1; --i) {
    int v = order[i];
    sz[t.parent[v]] += sz[v];
    int& h = heavy[t.parent[v]];
    if (h < 0 || sz[v] > sz[h]) h = v;
  }
  head.assign(n, 0);
  path_of.assign(n, -1);
  path_count = 0;
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    head[v] = (v == 0 || heavy[t.parent[v]] != v) ? v : head[t.parent[v]];
    path_of[v] = (head[v] == v) ? path_count++ : path_of[head[v]];
  }
}

void hia_index::hld::segments(int u, std::vector<std::pair<int, int64_t>>& out) const {
  out.clear();
  while (u >= 0) {
    out.emplace_back(path_of[u], weight[u]);
    u = parent[head[u]];
  }
}

hia_index::hia_index(hia_tree t1, hia_tree t2) : t1_(std::move(t1)), t2_(std::move(t2)) {
  validate(t1_);
  validate(t2_);
  h1_.build(t1_);
  h2_.build(t2_);

  std::unordered_map<int64_t, int> leaf2;  // label -> leaf in t2
  leaf2.reserve(t2_.label.size());
  for (size_t v = 0; v < t2_.label.size(); ++v)
    if (t2_.label[v] >= 0)
      if (!leaf2.emplace(t2_.label[v], (int)v).second) fail_pre("hia_tree: duplicate label");

  std::vector<entry> entries;
  std::vector<std::pair<int, int64_t>> s1, s2;
  {
    // pre-count to size the entry buffer once
    size_t total = 0;
    std::unordered_map<int64_t, char> seen1;
    for (size_t v = 0; v < t1_.label.size(); ++v) {
      if (t1_.label[v] < 0) continue;
      if (!seen1.emplace(t1_.label[v], 1).second) fail_pre("hia_tree: duplicate label");
      auto it = leaf2.find(t1_.label[v]);
      if (it == leaf2.end()) continue;
      h1_.segments((int)v, s1);
      h2_.segments(it->second, s2);
      total += s1.size() * s2.size();
    }
    entries.reserve(total);
  }
  for (size_t v = 0; v < t1_.label.size(); ++v) {
    if (t1_.label[v] < 0) continue;
    auto it = leaf2.find(t1_.label[v]);
    if (it == leaf2.end()) continue;
    h1_.segments((int)v, s1);
    h2_.segments(it->second, s2);
    for (auto& [p, a] : s1)
      for (auto& [q, b] : s2)
        entries.push_back({(int32_t)p, (int32_t)q, (int32_t)a, (int32_t)b, (int32_t)t1_.label[v]});
  }
  std::sort(entries.begin(), entries.end(), [](const entry& x, const entry& y) {
    if (x.p != y.p) return x.p < y.p;
    if (x.q != y.q) return x.q < y.q;
    if (x.a != y.a) return x.a < y.a;
    return x.b > y.b;
  });

  // per path pair keep the Pareto staircase: a strictly ascending, b strictly
  // descending; dominated entries can never win under any cap pair
  size_t i = 0;
  std::vector<entry> ded, kept;
  while (i < entries.size()) {
    size_t j = i;
    while (j < entries.size() && entries[j].p == entries[i].p && entries[j].q == entries[i].q) ++j;
    ded.clear();
    for (size_t k = i; k < j; ++k)
      if (ded.empty() || ded.back().a != entries[k].a) ded.push_back(entries[k]);
    kept.clear();
    int64_t maxb = -1;
    for (size_t k = ded.size(); k-- > 0;)
      if (ded[k].b > maxb) {
        kept.push_back(ded[k]);
        maxb = ded[k].b;
      }
    int64_t begin = (int64_t)stair_a_.size();
    for (size_t k = kept.size(); k-- > 0;) {
      stair_a_.push_back(kept[k].a);
      stair_b_.push_back(kept[k].b);
      stair_label_.push_back(kept[k].label);
      stair_val_.push_back((int64_t)kept[k].a + kept[k].b);
    }
    slices_.emplace(pair_key(entries[i].p, entries[i].q),
                    std::make_pair(begin, (int64_t)stair_a_.size()));
    i = j;
  }

  // bottom-up argmax segment tree (ties resolve to either side)
  int64_t n = (int64_t)stair_val_.size();
  seg_base_ = 1;
  while (seg_base_ < std::max<int64_t>(n, 1)) seg_base_ <<= 1;
  seg_.assign(2 * seg_base_, -1);
  for (int64_t k = 0; k < n; ++k) seg_[seg_base_ + k] = k;
  for (int64_t k = seg_base_ - 1; k >= 1; --k) {
    int64_t l = seg_[2 * k], r = seg_[2 * k + 1];
    seg_[k] = (r < 0 || (l >= 0 && stair_val_[l] >= stair_val_[r])) ? l : r;
  }
}

int64_t hia_index::range_argmax(int64_t lo, int64_t hi) const {
  int64_t best = -1;
  for (int64_t l = lo + seg_base_, r = hi + seg_base_ + 1; l < r; l >>= 1, r >>= 1) {
    if (l & 1) {
      int64_t c = seg_[l++];
      if (c >= 0 && (best < 0 || stair_val_[c] > stair_val_[best])) best = c;
    }
    if (r & 1) {
      int64_t c = seg_[--r];
      if (c >= 0 && (best < 0 || stair_val_[c] > stair_val_[best])) best = c;
    }
  }
  return best;
}

std::optional<hia_index::result> hia_index::query(int u, int64_t cap_u, int v,
                                                  int64_t cap_v) const {
  if (u < 0 || (size_t)u >= t1_.parent.size() || v < 0 || (size_t)v >= t2_.parent.size())
    fail_pre("hia query: node out of range");
  if (cap_u < 0) cap_u = kNoCap;
  if (cap_v < 0) cap_v = kNoCap;
  std::vector<std::pair<int, int64_t>> s1, s2;
  h1_.segments(u, s1);
  h2_.segments(v, s2);

  std::optional<result> best;
  auto offer = [&](int64_t value, int64_t idx, int64_t w1, int64_t w2) {
    if (!best || value > best->value) best = result{value, stair_label_[idx], w1, w2};
  };
  for (auto& [p, e1] : s1) {
    const int64_t astar = std::min(cap_u, e1);
    for (auto& [q, e2] : s2) {
      auto it = slices_.find(pair_key(p, q));
      if (it == slices_.end()) continue;
      const auto [lo, hi_] = it->second;
      const int64_t len = hi_ - lo;
      const int64_t bstar = std::min(cap_v, e2);
      const int64_t* abeg = stair_a_.data() + lo;
      const int64_t* bbeg = stair_b_.data() + lo;
      // last index with a <= astar / with b >= bstar (relative, -1 if none)
      int64_t i1 = std::upper_bound(abeg, abeg + len, astar) - abeg - 1;
      int64_t i2 = std::partition_point(bbeg, bbeg + len, [&](int64_t b) { return b >= bstar; }) -
                   bbeg - 1;
      if (std::min(i1, i2) >= 0) {  // a <= astar, b >= bstar: value a + bstar
        int64_t k = lo + std::min(i1, i2);
        offer(stair_a_[k] + bstar, k, stair_a_[k], bstar);
      }
      if (i1 < i2) {  // a > astar, b >= bstar: value astar + bstar
        int64_t k = lo + i1 + 1;
        offer(astar + bstar, k, astar, bstar);
      }
      if (i2 < i1) {  // a <= astar, b < bstar: value a + b, range argmax
        int64_t k = range_argmax(lo + i2 + 1, lo + i1);
        if (k >= 0) offer(stair_val_[k], k, stair_a_[k], stair_b_[k]);
      }
      if (std::max(i1, i2) + 1 < len) {  // a > astar, b < bstar: value astar + b
        int64_t k = lo + std::max(i1, i2) + 1;
        offer(astar + stair_b_[k], k, astar, stair_b_[k]);
      }
    }
  }
  return best;
}

}  // namespace dynlcs
