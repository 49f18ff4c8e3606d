#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "dynlcs/core_strings.hpp"
#include "dynlcs/hia.hpp"

namespace dynlcs {

// Longest common substring of a mutable string s and a static string t,
// maintained under single-letter substitutions to s.
//
// s is kept as a block decomposition: each block either occurs in t (with a
// witness occurrence) or is a single letter absent from t. Adjacent blocks
// never concatenate to a substring of t. Each gap between blocks (plus the
// two virtual gaps at the ends) carries a candidate: the longest substring
// of U.V occurring in t, where U is the longest suffix of the two blocks
// left of the gap occurring in t and V is the longest prefix of the two
// blocks right of it. The global answer is the best gap candidate.
class partial_lcs {
 public:
  partial_lcs(std::vector<int> s, std::vector<int> t);

  int64_t s_size() const { return (int64_t)s_.size(); }
  int64_t t_size() const { return fwd_.size(); }
  const std::vector<int>& s() const { return s_; }
  const std::vector<int>& t() const { return fwd_.text(); }

  // replace s[pos] (1-based) with letter (>= 1)
  void substitute(int64_t pos, int letter);

  struct result {
    int64_t length, s_pos, t_pos;  // 1-based positions; zeros when length is 0
  };
  result lcs() const;

  // introspection for validation
  struct block_view {
    int64_t start, end, occ;  // occ = witness start in t, 0 for foreign letters
  };
  std::vector<block_view> blocks() const;
  struct update_stats {
    int merges = 0;
    int candidates_recomputed = 0;
  };
  const update_stats& last_stats() const { return stats_; }

 private:
  struct block {
    int64_t end;
    int64_t occ;  // 0 iff the block is a single letter absent from t
  };
  struct candidate {
    int64_t value, s_pos, t_pos;
  };

  void insert_block(int64_t start, int64_t end, int64_t occ);
  void drop_candidate(int64_t key);
  void recompute_candidate(int64_t key);
  // try to merge the block ending at key-1 with the block starting at key;
  // returns true and re-queues neighbours on success
  bool try_merge(int64_t key);

  std::vector<int> s_;
  suffix_index fwd_, rev_;
  hia_index hia_;
  std::map<int64_t, block> blocks_;          // start -> block
  std::map<int64_t, candidate> candidates_;  // gap key (right block start or n+1)
  std::set<std::pair<int64_t, int64_t>> values_;  // (value, gap key)
  update_stats stats_;
};

}  // namespace dynlcs
