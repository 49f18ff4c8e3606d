#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace dynlcs {

// Weighted rooted tree with labeled leaves, flattened. Node 0 must be the
// root (weight 0, parent -1); weights are non-decreasing along every
// root-to-leaf path; leaf labels are unique within the tree.
struct hia_tree {
  std::vector<int> parent;
  std::vector<int64_t> weight;
  std::vector<int64_t> label;  // leaf label, -1 for internal nodes
};

// Static index for heaviest-induced-ancestor queries with weight caps: over
// ancestor pairs (u', v') of (u, v) whose subtrees share a leaf label,
// maximize min(weight(u'), cap_u) + min(weight(v'), cap_v).
//
// Both trees are heavy-path decomposed. For every shared label and every
// pair of heavy paths met by its two root-to-leaf walks, one entry
// (a, b) = (exit weights on the two paths) is stored; within a path pair
// only Pareto-maximal entries are kept, since the query value
// min(a, A) + min(b, B) is monotone in (a, b) for every cap pair (A, B).
class hia_index {
 public:
  hia_index(hia_tree t1, hia_tree t2);

  struct result {
    int64_t value;
    int64_t label;   // shared label witnessing the optimum
    int64_t w1, w2;  // clamped credit per side; value == w1 + w2
  };
  // cap < 0 means uncapped. nullopt iff the two subtrees' label sets are
  // disjoint from each other entirely (no induced ancestor pair).
  std::optional<result> query(int u, int64_t cap_u, int v, int64_t cap_v) const;

  const hia_tree& tree1() const { return t1_; }
  const hia_tree& tree2() const { return t2_; }

 private:
  struct hld {
    std::vector<int> parent, head, path_of;
    std::vector<int64_t> weight;
    int path_count = 0;
    void build(const hia_tree& t);
    // (path id, exit weight) per heavy path met on the root-to-u walk
    void segments(int u, std::vector<std::pair<int, int64_t>>& out) const;
  };

  hia_tree t1_, t2_;
  hld h1_, h2_;
  std::vector<int64_t> stair_a_, stair_b_, stair_label_, stair_val_;
  std::unordered_map<uint64_t, std::pair<int64_t, int64_t>> slices_;
  // bottom-up argmax segment tree over stair_val_
  int64_t seg_base_ = 0;
  std::vector<int64_t> seg_;
  int64_t range_argmax(int64_t lo, int64_t hi) const;  // inclusive, global indices
};

}  // namespace dynlcs
