#pragma once
// Brute-force reference implementations. Definition-level, quadratic or worse,
// deliberately independent from the engine code they validate.
#include <cstdint>
#include <optional>
#include <utility>
#include <string>
#include <vector>

namespace dynlcs::oracle {

struct lcs_result {
  int64_t length = 0;
  int64_t s_pos = 0;  // 1-based start in S, 0 when length == 0
  int64_t t_pos = 0;  // 1-based start in T, 0 when length == 0
};

// Longest common substring by the classic suffix-match table.
lcs_result lcs_dp(const std::vector<int>& s, const std::vector<int>& t);
lcs_result lcs_dp(const std::string& s, const std::string& t);

// Plain rooted tree with node weights and optional leaf labels (-1 = none).
struct brute_tree {
  std::vector<int> parent;   // parent[root] == -1
  std::vector<int64_t> weight;
  std::vector<int64_t> label;  // -1 when unlabeled
};

struct hia_query_rec {
  int u = 0, v = 0;
  int64_t cap_u = -1, cap_v = -1;  // -1: cap at the node's own weight
};

// Max over induced ancestor pairs (u', v') of min(w(u'),cap_u) + min(w(v'),cap_v).
std::optional<int64_t> hia_brute(const brute_tree& t1, const brute_tree& t2, const hia_query_rec& q);

struct brute_point {
  int64_t x = 0, y = 0;
  bool red = true;
};

// Max over red p, blue q of min(p.x,q.x) + min(p.y,q.y).
std::optional<int64_t> bichromatic_brute(const std::vector<brute_point>& pts);

// Compacted trie over int strings; each string is terminated by a unique
// sentinel derived from its id. Returns the sorted path labels (content
// letters only) of the root and all internal branching nodes — a canonical
// shape summary. Leaves are one per string and are checked separately.
std::vector<std::vector<int>> trie_brute(const std::vector<std::pair<std::vector<int>, int>>& strings);

struct brute_pair {
  std::vector<int> p, q;
};

// Max over r in reds, b in blues of lcp(r.p,b.p) + lcp(r.q,b.q).
std::optional<int64_t> family_brute(const std::vector<brute_pair>& reds, const std::vector<brute_pair>& blues);

}  // namespace dynlcs::oracle
