#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace dynlcs {

// Static full-text index over an int string (letters >= 1; 0 is the internal
// terminator). Provides O(1) longest-common-extension queries, the suffix
// tree (flattened arrays + locus lookup by suffix-array interval), and
// extend_prefix: the longest prefix of the concatenation of two text
// intervals that occurs in the text.
//
// All positions in the public API are 1-based; intervals are inclusive.
// An interval with c > d denotes the empty string.
class suffix_index {
 public:
  explicit suffix_index(std::vector<int> text);

  int64_t size() const { return n_; }
  const std::vector<int>& text() const { return text_; }

  // Longest common extension of the suffixes starting at i and j. Positions
  // may be n+1 (the terminator) or n+2 (past the end, extension 0). The
  // terminator participates, so lce(i, i) == n + 2 - i.
  int64_t lce(int64_t i, int64_t j) const;

  struct extend_result {
    int64_t len;             // |x| + matched prefix length of y
    int64_t witness;         // 1-based occurrence start in the text; 0 iff len == 0
    int64_t sa_lo, sa_hi;    // 1-based suffix-array interval of the matched pattern
  };
  // Longest prefix of text[xc..xd] . text[yc..yd] occurring in the text.
  // Both parts must be real text intervals (so the x part always occurs).
  extend_result extend_prefix(int64_t xc, int64_t xd, int64_t yc, int64_t yd) const;

  // Some occurrence position of a letter, or 0 if the letter is absent.
  int64_t letter_occurrence(int letter) const;

  // Narrow a pattern interval (pattern length plen) by one more letter.
  // Returns the 1-based interval of the extended pattern; empty (lo > hi)
  // if it does not occur.
  std::pair<int64_t, int64_t> narrow_letter(int64_t sa_lo, int64_t sa_hi, int64_t plen,
                                            int letter) const;

  // Suffix tree over text + terminator. Node 0 is the root; leaf weights
  // include the terminator, internal weights are string depths.
  int node_count() const { return (int)parent_.size(); }
  const std::vector<int>& tree_parent() const { return parent_; }
  const std::vector<int64_t>& tree_depth() const { return depth_; }
  // 1-based suffix start for leaves, -1 for internal nodes.
  const std::vector<int64_t>& tree_leaf_label() const { return leaf_label_; }
  // Node whose leaf set equals the given 1-based suffix-array interval.
  // Every pattern interval (as produced by extend_prefix) maps to a node.
  int locus(int64_t sa_lo, int64_t sa_hi) const;
  // Leaf node of the suffix starting at 1-based position j (j <= n + 1).
  int leaf_node(int64_t j) const;
  // 1-based suffix start at the given 1-based suffix-array rank.
  int64_t suffix_at(int64_t sa_rank) const;

 private:
  void build_sa();
  void build_lcp();
  void build_sparse();
  void build_tree();
  int64_t rmq(int64_t lo, int64_t hi) const;  // min of lcp_[lo..hi], 0-based
  int64_t lce0(int64_t i, int64_t j) const;   // 0-based positions < n_ + 1
  int cmp_continuation(int64_t rank_idx, int64_t plen, int64_t c, int64_t klen) const;
  // 0-based rank interval narrowing by the chunk text[c..c+klen-1]
  std::pair<int64_t, int64_t> narrow_range(int64_t lo, int64_t hi, int64_t plen, int64_t c,
                                           int64_t klen) const;

  int64_t n_ = 0;
  std::vector<int> text_;
  std::vector<int64_t> sa_, rank_, lcp_;
  std::vector<std::vector<int64_t>> sparse_;
  std::vector<int64_t> log2_;

  std::vector<int> parent_;
  std::vector<int64_t> depth_, leaf_label_;
  std::vector<int64_t> sa_l_, sa_r_;  // 0-based rank intervals per node
  std::vector<int> leaf_of_;          // suffix start (0-based) -> leaf node
  std::unordered_map<uint64_t, int> locus_;
  std::unordered_map<int, int64_t> first_occ_;
};

}  // namespace dynlcs
