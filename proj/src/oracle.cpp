#include "dynlcs/oracle.hpp"

#include <algorithm>
#include <map>

namespace dynlcs::oracle {

lcs_result lcs_dp(const std::vector<int>& s, const std::vector<int>& t) {
  const size_t n = s.size(), m = t.size();
  lcs_result best;
  if (n == 0 || m == 0) return best;
  // cur[j] = length of longest common suffix of s[..i] and t[..j]
  std::vector<int64_t> prev(m + 1, 0), cur(m + 1, 0);
  for (size_t i = 1; i <= n; ++i) {
    for (size_t j = 1; j <= m; ++j) {
      if (s[i - 1] == t[j - 1]) {
        cur[j] = prev[j - 1] + 1;
        if (cur[j] > best.length) {
          best.length = cur[j];
          best.s_pos = static_cast<int64_t>(i) - best.length + 1;
          best.t_pos = static_cast<int64_t>(j) - best.length + 1;
        }
      } else {
        cur[j] = 0;
      }
    }
    std::swap(prev, cur);
  }
  return best;
}

lcs_result lcs_dp(const std::string& s, const std::string& t) {
  std::vector<int> a(s.begin(), s.end()), b(t.begin(), t.end());
  return lcs_dp(a, b);
}

namespace {

std::vector<std::vector<uint64_t>> label_bitsets(const brute_tree& t, const std::map<int64_t, int>& label_ids) {
  const size_t n = t.parent.size();
  const size_t words = (label_ids.size() + 63) / 64;
  std::vector<std::vector<uint64_t>> sets(n, std::vector<uint64_t>(words, 0));
  for (size_t v = 0; v < n; ++v)
    if (t.label[v] >= 0) {
      auto it = label_ids.find(t.label[v]);
      if (it != label_ids.end()) sets[v][it->second / 64] |= 1ull << (it->second % 64);
    }
  // children before parents: order nodes by depth descending
  std::vector<int> depth(n, 0), order(n);
  for (size_t v = 0; v < n; ++v) {
    int d = 0;
    for (int u = static_cast<int>(v); t.parent[u] >= 0; u = t.parent[u]) ++d;
    depth[v] = d;
  }
  for (size_t v = 0; v < n; ++v) order[v] = static_cast<int>(v);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return depth[a] > depth[b]; });
  for (int v : order)
    if (t.parent[v] >= 0)
      for (size_t w = 0; w < words; ++w) sets[t.parent[v]][w] |= sets[v][w];
  return sets;
}

}  // namespace

std::optional<int64_t> hia_brute(const brute_tree& t1, const brute_tree& t2, const hia_query_rec& q) {
  // labels present in both trees
  std::map<int64_t, int> ids;
  {
    std::map<int64_t, int> seen1;
    for (size_t v = 0; v < t1.parent.size(); ++v)
      if (t1.label[v] >= 0) seen1[t1.label[v]] = 1;
    int next = 0;
    for (size_t v = 0; v < t2.parent.size(); ++v)
      if (t2.label[v] >= 0 && seen1.count(t2.label[v]) && !ids.count(t2.label[v])) ids[t2.label[v]] = next++;
  }
  if (ids.empty()) return std::nullopt;
  auto s1 = label_bitsets(t1, ids), s2 = label_bitsets(t2, ids);
  const size_t words = (ids.size() + 63) / 64;

  std::vector<int> anc1, anc2;
  for (int u = q.u; u >= 0; u = t1.parent[u]) anc1.push_back(u);
  for (int v = q.v; v >= 0; v = t2.parent[v]) anc2.push_back(v);
  int64_t cap_u = q.cap_u < 0 ? t1.weight[q.u] : q.cap_u;
  int64_t cap_v = q.cap_v < 0 ? t2.weight[q.v] : q.cap_v;

  std::optional<int64_t> best;
  for (int a : anc1)
    for (int b : anc2) {
      bool induced = false;
      for (size_t w = 0; w < words && !induced; ++w) induced = (s1[a][w] & s2[b][w]) != 0;
      if (!induced) continue;
      int64_t val = std::min(t1.weight[a], cap_u) + std::min(t2.weight[b], cap_v);
      if (!best || val > *best) best = val;
    }
  return best;
}

std::optional<int64_t> bichromatic_brute(const std::vector<brute_point>& pts) {
  std::optional<int64_t> best;
  for (const auto& p : pts)
    if (p.red)
      for (const auto& b : pts)
        if (!b.red) {
          int64_t val = std::min(p.x, b.x) + std::min(p.y, b.y);
          if (!best || val > *best) best = val;
        }
  return best;
}

std::vector<std::vector<int>> trie_brute(const std::vector<std::pair<std::vector<int>, int>>& strings) {
  // Internal explicit nodes of the compacted trie = root plus every pairwise
  // divergence point. Unique sentinels make two strings always diverge at
  // their content lcp (letter mismatch, prefix end, or sentinel vs sentinel).
  auto lcp = [](const std::vector<int>& a, const std::vector<int>& b) {
    size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    return k;
  };
  std::vector<std::vector<int>> nodes;
  nodes.emplace_back();  // root
  for (size_t i = 0; i < strings.size(); ++i)
    for (size_t j = i + 1; j < strings.size(); ++j) {
      size_t k = lcp(strings[i].first, strings[j].first);
      nodes.emplace_back(strings[i].first.begin(), strings[i].first.begin() + k);
    }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

std::optional<int64_t> family_brute(const std::vector<brute_pair>& reds, const std::vector<brute_pair>& blues) {
  auto lcp = [](const std::vector<int>& a, const std::vector<int>& b) {
    int64_t k = 0;
    while (k < static_cast<int64_t>(a.size()) && k < static_cast<int64_t>(b.size()) && a[k] == b[k]) ++k;
    return k;
  };
  std::optional<int64_t> best;
  for (const auto& r : reds)
    for (const auto& b : blues) {
      int64_t val = lcp(r.p, b.p) + lcp(r.q, b.q);
      if (!best || val > *best) best = val;
    }
  return best;
}

}  // namespace dynlcs::oracle
