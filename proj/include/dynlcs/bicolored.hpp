#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "dynlcs/geom.hpp"

namespace dynlcs {

// dynamic bicolored trees: two node-weighted trees whose leaves are linked by
// colored labels (one leaf per tree per label).  global_best() maximizes
// w(u) + w(v) over node pairs (u in tree 0, v in tree 1) that have both a red
// and a blue label with leaves below u and below v.
//
// both trees carry heavy-path decompositions maintained by threshold
// rebuilding: leaf counts L are frozen per rebuild, a child extends its
// parent's path when 6L(child) >= 5L(path root), and a path is re-decomposed
// once the insertions below its root reach a sixth of its frozen count.  each
// label contributes one point per pair of heavy paths above its two leaves,
// stored in a best-bichromatic-point structure per path pair; a global
// ordered set of per-structure bests yields the answer.
class bicolored_trees {
 public:
  using node = int32_t;

  bicolored_trees();

  node root(int tree) const;
  int64_t weight(int tree, node u) const;
  // attaches a structural leaf below parent; heavier than its parent
  node attach_leaf(int tree, node parent, int64_t w);
  // splits the edge (parent(child), child) with a new node of the given
  // weight; never touches any point structure
  node split_edge(int tree, node child, int64_t w);

  // activates a label: leaf0 in tree 0 and leaf1 in tree 1 start counting as
  // colored descendants.  labels are the unit of deletion; structural leaves
  // are never removed (the trie layer above reuses them until its own
  // periodic rebuild)
  void add_label(int64_t label, node leaf0, node leaf1, bool red);
  void remove_label(int64_t label);
  bool has_label(int64_t label) const;
  // re-homes one of the label's leaves; placements whose stops are shared
  // between the old and new leaf are left untouched
  void move_label(int64_t label, int tree, node new_leaf);
  struct bulk_label {
    int64_t label;
    node leaf0, leaf1;
    bool red;
  };
  // adds a batch of labels with one point-structure build per touched pair
  // of heavy paths; equivalent to add_label over the batch
  void add_labels_bulk(const std::vector<bulk_label>& items);
  // back to the freshly constructed state; retired point structures stay
  // pooled so a caller that rebuilds from scratch reuses their storage
  void reset();

  struct best {
    node u, v;
    int64_t lcp0, lcp1;  // w(u) and w(v)
    int64_t total;
    int64_t red_label, blue_label;
  };
  std::optional<best> global_best() const;

  int64_t node_count(int tree) const;
  int64_t label_count() const;
  int64_t total_points() const;
  node parent(int tree, node u) const;
  const std::vector<node>& kids(int tree, node u) const;
  // weighted-ancestor query: the ancestor of u with weight exactly d
  // (exact = true), or else the child on u's root-path whose edge spans d
  // (exact = false, so callers can split_edge there)
  node ancestor_at(int tree, node u, int64_t d, bool& exact) const;
  // number of heavy paths intersecting the root-path of u
  int paths_above(int tree, node u) const;
  // frozen-count path invariants, heap/structure agreement, point placement
  void check_invariants() const;

 private:
  struct tnode {
    int32_t parent;
    std::vector<int32_t> kids;
    int64_t w;
    int64_t leaves_frozen;  // L at the last rebuild covering this node
    int32_t path;
    std::vector<int64_t> labs;  // labels whose leaf in this tree is here
  };
  struct hpath {
    std::vector<std::pair<int64_t, node>> nodes;  // (weight, node) ascending
    int64_t inserted = 0;           // insertions below the root since rebuild
  };
  struct labelrec {
    node leaf[2];
    bool red;
  };
  using skey = std::pair<int32_t, int32_t>;
  struct sentry {
    geom_best_pair g;
    bool in_heap = false;
    int64_t heap_total = 0;
  };
  struct skey_hash {
    size_t operator()(const skey& k) const {
      uint64_t x = ((uint64_t)(uint32_t)k.first << 32) | (uint32_t)k.second;
      x ^= x >> 30;
      x *= 0xbf58476d1ce4e5b9ULL;
      x ^= x >> 27;
      x *= 0x94d049bb133111ebULL;
      return (size_t)(x ^ (x >> 31));
    }
  };

  int32_t new_path(int tree, node u);
  void unlist_label(int tree, node leaf, int64_t label);
  std::vector<std::pair<int32_t, int64_t>> path_stops(int tree, node u) const;
  // stops at or below the path rooted at top (top = -1: all stops)
  node path_node(int tree, int32_t path, int64_t w) const;
  void path_stops_into(int tree, node u, node top,
                       std::vector<std::pair<int32_t, int64_t>>& out) const;
  void insert_points(int64_t label, const labelrec& rec);
  void remove_points(int64_t label, const labelrec& rec);
  void apply_stop_diff(int tree, int64_t label, const labelrec& rec,
                       std::vector<std::pair<int32_t, int64_t>>& od,
                       std::vector<std::pair<int32_t, int64_t>>& nw);
  sentry& struct_at(const skey& k);
  void touch_struct(const skey& k);
  void rebuild(int tree, node a);
  void maybe_rebuild(int tree, node parent);

  std::vector<tnode> nodes_[2];
  std::unordered_map<int32_t, hpath> paths_[2];
  int32_t next_path_ = 0;
  std::unordered_map<int64_t, labelrec> labels_;
  std::unordered_map<skey, sentry, skey_hash> structs_;
  std::vector<geom_best_pair> gpool_;  // cleared structures awaiting reuse
  std::set<std::pair<int64_t, skey>> heap_;
  int64_t points_ = 0;
  // scratch buffers for the stop-diff hot path
  std::vector<std::pair<int32_t, int64_t>> scr_gone_, scr_born_, scr_other_;
  std::vector<std::pair<int32_t, int64_t>> scr_a_, scr_b_;
};

}  // namespace dynlcs
