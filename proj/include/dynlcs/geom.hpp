#pragma once
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace dynlcs {

// dynamic best bichromatic point structure: a multiset of colored points,
// best_pair() returns a red-blue pair maximizing min(x,x') + min(y,y').
//
// two-level range tree: a weight-balanced primary tree over x splits every
// red-blue pair at a unique node u, and u's secondary tree over y splits it
// at a unique node v; at v the cheaper coordinates are known per point, so
// constant per-(side, color) maxima make the merge O(1).  balance is kept by
// rebuilding the highest overweight subtree; updates are O(log^2) amortized.
class geom_best_pair {
 public:
  struct answer {
    int64_t red_label, blue_label;
    int64_t value;
  };

  // coordinates are perturbed internally by insertion order so stored keys
  // are distinct; reported values always use the raw coordinates
  void insert_point(int64_t label, int64_t x, int64_t y, bool red);
  void delete_point(int64_t label);
  struct bulk_item {
    int64_t label, x, y;
    bool red;
  };
  // adds a batch in one tree construction; equivalent to inserting the
  // items in order but costs one build instead of per-point rebalancing
  void bulk_insert(const std::vector<bulk_item>& items);
  std::optional<answer> best_pair() const;
  int64_t size() const;
  bool contains(int64_t label) const;
  // back to the empty state, retaining allocated capacity for reuse
  void clear();

  // recomputes every stored field from scratch and cross-checks; throws on
  // any mismatch (test hook)
  void audit() const;

 private:
  struct pointrec {
    int64_t label, x, y;
    uint32_t seq;
    bool red;
  };
  struct sagg {
    int32_t mx[2][2], my[2][2], mxy[2][2];  // [side][red] -> point slot
    int64_t best;
    int32_t br, bb;  // witnesses (red slot, blue slot)
  };
  struct snode {
    int32_t l, r, pt;
    int32_t weight;
    uint8_t side;  // leaf: 0 = point lies in the owning primary node's left
    uint64_t ylim;
    sagg ag;
  };
  struct pnode {
    int32_t l, r, pt;
    int32_t weight;
    uint64_t xlim;
    int32_t sec;
    int64_t best;
    int32_t br, bb;
  };

  static bool agg_equal(const sagg& a, const sagg& b);
  uint64_t xkey(int32_t s) const;
  uint64_t ykey(int32_t s) const;
  int32_t pick_x(int32_t a, int32_t b) const;
  int32_t pick_y(int32_t a, int32_t b) const;
  int32_t pick_xy(int32_t a, int32_t b) const;
  sagg leaf_agg(int32_t slot, uint8_t side) const;
  sagg merge_agg(const sagg& lo, const sagg& hi) const;

  int32_t salloc();
  void sfree_node(int32_t v);
  int32_t palloc();
  void pfree_node(int32_t u);

  int32_t sec_build(std::vector<std::pair<int32_t, uint8_t>>& items, int lo,
                    int hi);
  void sec_collect(int32_t v, std::vector<std::pair<int32_t, uint8_t>>& out,
                   bool free_nodes);
  void sec_insert(int32_t& root, int32_t slot, uint8_t side);
  void sec_delete(int32_t& root, int32_t slot);
  void sec_settle(int32_t& root, std::vector<int32_t>& path,
                  std::vector<uint8_t>& dirs);
  void prim_settle(std::vector<int32_t>& path, std::vector<uint8_t>& dirs);

  int32_t prim_build(std::vector<int32_t>& slots, int lo, int hi,
                     std::vector<std::pair<int32_t, uint8_t>>& ylist,
                     int depth = 0);
  void prim_collect(int32_t u, std::vector<int32_t>& out);
  void prim_free(int32_t u);
  void prim_refresh(int32_t u);
  void rebuild_primary(int32_t& link);

  void audit_secondary(int32_t v, const pnode& owner,
                       std::vector<int32_t>& got) const;
  void audit_primary(int32_t u, std::vector<int32_t>& got) const;

  std::vector<pointrec> pts_;
  std::vector<int32_t> pts_free_;
  std::vector<snode> sn_;
  std::vector<int32_t> sn_free_;
  std::vector<pnode> pn_;
  std::vector<int32_t> pn_free_;
  std::unordered_map<int64_t, int32_t> by_label_;
  int32_t root_ = -1;
  uint32_t seq_ = 0;
};

}  // namespace dynlcs
