#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "dynlcs/bicolored.hpp"
#include "dynlcs/grammar.hpp"

namespace dynlcs {

// two families of string pairs, red and blue, answering
// max over (red r, blue b) of lcp(P_r, P_b) + lcp(Q_r, Q_b).
//
// the P strings of all records live in one compacted trie, the Q strings in
// another; both tries are realized inside a bicolored-trees structure whose
// node weights are string depths, so its global best is exactly the family
// maximum.  every inserted string is terminated by a unique sentinel letter
// outside the working alphabet, which keeps leaves prefix-free, makes branch
// depths equal content lcps, and lets deletion drop just the label while the
// structural leaf stays until the periodic full rebuild.
class pair_families {
 public:
  // letters at or above this value are reserved for termination sentinels
  static constexpr int kSentinelBase = 1 << 20;

  explicit pair_families(grammar& g);

  // p / q are grammar roots; -1 denotes the empty string
  void insert_pair(int64_t id, grammar::sym p, grammar::sym q, bool red);
  void delete_pair(int64_t id);
  // replaces the strings of an existing record in place; a side whose handle
  // is unchanged keeps its leaf, so only the moved side costs anything
  void update_pair(int64_t id, grammar::sym p, grammar::sym q, bool red);
  // replaces one string of an existing record; the other side keeps its
  // leaf untouched, so callers that know which side changed skip half the
  // work
  void update_side(int64_t id, int side, grammar::sym s, bool red);
  bool has_pair(int64_t id) const;

  struct rec {
    grammar::sym p, q;
    bool red;
  };
  rec get(int64_t id) const;

  struct answer {
    int64_t red_id, blue_id;
    int64_t lcp_p, lcp_q;  // the maximizing pair's two lcp values
    int64_t total;
  };
  std::optional<answer> best() const;

  int64_t live_count() const { return (int64_t)recs_.size(); }
  int64_t leaf_count(int trie) const { return (int64_t)sets_[trie].size(); }
  int64_t rebuild_count() const { return rebuilds_; }
  int64_t split_count(int trie) const { return splits_[trie]; }
  int64_t attach_count(int trie) const { return attaches_[trie]; }
  // terminated string and its structural leaf, in lexicographic order
  std::vector<std::pair<grammar::sym, bicolored_trees::node>> trie_entries(
      int trie) const;
  const bicolored_trees& structure() const { return bico_; }
  void check_invariants() const;

 private:
  struct cmp {
    grammar* g;
    bool operator()(const std::pair<grammar::sym, bicolored_trees::node>& a,
                    const std::pair<grammar::sym, bicolored_trees::node>& b)
        const;
  };
  using entryset =
      std::set<std::pair<grammar::sym, bicolored_trees::node>, cmp>;
  struct live_rec {
    grammar::sym p, q;
    grammar::sym term[2];
    bool red;
    bicolored_trees::node leaf[2];
  };

  grammar::sym terminate(grammar::sym s);
  bicolored_trees::node trie_insert(int trie, grammar::sym term);
  void maybe_rebuild();
  void rebuild();

  grammar* g_;
  bicolored_trees bico_;
  entryset sets_[2];
  std::map<int64_t, live_rec> recs_;
  // per-trie count of leaves whose record was deleted or re-homed
  int64_t dead_[2] = {0, 0};
  int64_t threshold_ = 2;  // twice the live count at the last rebuild
  int64_t updates_ = 0;
  int64_t rebuilds_ = 0;
  int64_t seq_ = 0;
  int64_t splits_[2] = {0, 0}, attaches_[2] = {0, 0};
};

}  // namespace dynlcs
