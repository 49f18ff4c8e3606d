#include "dynlcs/bicolored.hpp"

#include <algorithm>
#include <iterator>

#include "dynlcs/util.hpp"

namespace dynlcs {

bicolored_trees::bicolored_trees() {
  for (int t = 0; t < 2; ++t) {
    nodes_[t].push_back({-1, {}, 0, 1, -1, {}});
    new_path(t, 0);
  }
}

void bicolored_trees::reset() {
  for (auto& [k, e] : structs_) {
    e.g.clear();
    gpool_.push_back(std::move(e.g));
  }
  structs_.clear();
  heap_.clear();
  labels_.clear();
  points_ = 0;
  for (int t = 0; t < 2; ++t) {
    nodes_[t].clear();
    paths_[t].clear();
    nodes_[t].push_back({-1, {}, 0, 1, -1, {}});
    new_path(t, 0);
  }
}

int32_t bicolored_trees::new_path(int tree, node u) {
  int32_t id = next_path_++;
  hpath p;
  p.nodes.emplace_back(nodes_[tree][u].w, u);
  paths_[tree].emplace(id, std::move(p));
  nodes_[tree][u].path = id;
  return id;
}

bicolored_trees::node bicolored_trees::root(int tree) const {
  if (tree < 0 || tree > 1) fail_pre("bicolored: bad tree index");
  return 0;
}

int64_t bicolored_trees::weight(int tree, node u) const {
  if (u < 0 || u >= (node)nodes_[tree].size())
    fail_pre("bicolored: bad node");
  return nodes_[tree][u].w;
}

bicolored_trees::node bicolored_trees::attach_leaf(int tree, node parent,
                                                   int64_t w) {
  if (parent < 0 || parent >= (node)nodes_[tree].size())
    fail_pre("bicolored: bad parent");
  if (w <= nodes_[tree][parent].w)
    fail_pre("bicolored: leaf weight must exceed its parent's");
  node u = (node)nodes_[tree].size();
  nodes_[tree].push_back({parent, {}, w, 1, -1, {}});
  nodes_[tree][parent].kids.push_back(u);
  new_path(tree, u);
  maybe_rebuild(tree, parent);
  return u;
}

bicolored_trees::node bicolored_trees::split_edge(int tree, node child,
                                                  int64_t w) {
  if (child <= 0 || child >= (node)nodes_[tree].size())
    fail_pre("bicolored: bad edge");
  node parent = nodes_[tree][child].parent;
  if (w <= nodes_[tree][parent].w || w >= nodes_[tree][child].w)
    fail_pre("bicolored: split weight out of range");
  node u = (node)nodes_[tree].size();
  // the new node joins the child's heavy path (as its new root when the split
  // edge was light); frozen leaf count is inherited, so no path ratios move
  int32_t p = nodes_[tree][child].path;
  nodes_[tree].push_back(
      {parent, {child}, w, nodes_[tree][child].leaves_frozen, p, {}});
  auto& ks = nodes_[tree][parent].kids;
  *std::find(ks.begin(), ks.end(), child) = u;
  nodes_[tree][child].parent = u;
  auto& pn = paths_[tree].at(p).nodes;
  pn.emplace(std::lower_bound(pn.begin(), pn.end(),
                              std::pair<int64_t, node>{w, u}),
             w, u);
  return u;
}

bicolored_trees::node bicolored_trees::parent(int tree, node u) const {
  if (u < 0 || u >= (node)nodes_[tree].size()) fail_pre("bicolored: bad node");
  return nodes_[tree][u].parent;
}

const std::vector<bicolored_trees::node>& bicolored_trees::kids(
    int tree, node u) const {
  if (u < 0 || u >= (node)nodes_[tree].size()) fail_pre("bicolored: bad node");
  return nodes_[tree][u].kids;
}

bicolored_trees::node bicolored_trees::ancestor_at(int tree, node u, int64_t d,
                                                   bool& exact) const {
  if (u < 0 || u >= (node)nodes_[tree].size()) fail_pre("bicolored: bad node");
  if (d < 0 || d > nodes_[tree][u].w)
    fail_pre("bicolored: ancestor weight out of range");
  node cur = u;  // invariant: ancestor-or-self of u with w(cur) >= d
  while (true) {
    const hpath& hp = paths_[tree].at(nodes_[tree][cur].path);
    node r = hp.nodes.front().second;
    if (nodes_[tree][r].w <= d) {
      // d lies inside [w(r), w(cur)]; entries there are cur's ancestor
      // chain, consecutive entries adjacent, so lower_bound lands on it
      auto it = std::lower_bound(
          hp.nodes.begin(), hp.nodes.end(), d,
          [](const std::pair<int64_t, node>& e, int64_t k) {
            return e.first < k;
          });
      exact = it->first == d;
      return it->second;
    }
    node up = nodes_[tree][r].parent;  // w(root)=0 <= d < w(r), so r isn't it
    if (nodes_[tree][up].w == d) {
      exact = true;
      return up;
    }
    if (nodes_[tree][up].w < d) {  // d falls on the light edge (up, r)
      exact = false;
      return r;
    }
    cur = up;
  }
}

// heavy paths intersecting the root-path of u, bottom-up, each with the
// weight of its deepest node that is an ancestor of u
std::vector<std::pair<int32_t, int64_t>> bicolored_trees::path_stops(
    int tree, node u) const {
  std::vector<std::pair<int32_t, int64_t>> out;
  path_stops_into(tree, u, -1, out);
  return out;
}

void bicolored_trees::path_stops_into(
    int tree, node u, node top,
    std::vector<std::pair<int32_t, int64_t>>& out) const {
  out.clear();
  node cur = u;
  while (cur >= 0) {
    int32_t p = nodes_[tree][cur].path;
    out.emplace_back(p, nodes_[tree][cur].w);
    node r = paths_[tree].at(p).nodes.front().second;
    if (r == top) break;
    cur = nodes_[tree][r].parent;
  }
}

void bicolored_trees::insert_points(int64_t label, const labelrec& rec) {
  path_stops_into(0, rec.leaf[0], -1, scr_a_);
  path_stops_into(1, rec.leaf[1], -1, scr_b_);
  for (const auto& [p, x] : scr_a_)
    for (const auto& [q, y] : scr_b_) {
      struct_at({p, q}).g.insert_point(label, x, y, rec.red);
      ++points_;
      touch_struct({p, q});
    }
}

void bicolored_trees::remove_points(int64_t label, const labelrec& rec) {
  path_stops_into(0, rec.leaf[0], -1, scr_a_);
  path_stops_into(1, rec.leaf[1], -1, scr_b_);
  for (const auto& [p, x] : scr_a_)
    for (const auto& [q, y] : scr_b_) {
      structs_.at({p, q}).g.delete_point(label);
      --points_;
      touch_struct({p, q});
    }
}

bicolored_trees::sentry& bicolored_trees::struct_at(const skey& k) {
  auto it = structs_.find(k);
  if (it != structs_.end()) return it->second;
  sentry s;
  if (!gpool_.empty()) {
    s.g = std::move(gpool_.back());
    gpool_.pop_back();
  }
  return structs_.emplace(k, std::move(s)).first->second;
}

void bicolored_trees::touch_struct(const skey& k) {
  auto it = structs_.find(k);
  if (it == structs_.end()) return;
  sentry& e = it->second;
  if (e.g.size() == 0) {  // empty structures are pooled, not kept around
    if (e.in_heap) heap_.erase({e.heap_total, k});
    e.g.clear();
    gpool_.push_back(std::move(e.g));
    structs_.erase(it);
    return;
  }
  auto b = e.g.best_pair();
  if (e.in_heap == b.has_value() && (!e.in_heap || e.heap_total == b->value))
    return;  // heap entry already current
  if (e.in_heap) {
    heap_.erase({e.heap_total, k});
    e.in_heap = false;
  }
  if (b) {
    e.heap_total = b->value;
    e.in_heap = true;
    heap_.insert({e.heap_total, k});
  }
}

void bicolored_trees::unlist_label(int tree, node leaf, int64_t label) {
  auto& v = nodes_[tree][leaf].labs;
  auto it = std::find(v.begin(), v.end(), label);
  if (it == v.end()) fail_pre("bicolored: label list out of sync");
  *it = v.back();
  v.pop_back();
}

void bicolored_trees::add_label(int64_t label, node leaf0, node leaf1,
                                bool red) {
  if (labels_.count(label)) fail_pre("bicolored: duplicate label");
  if (leaf0 < 0 || leaf0 >= (node)nodes_[0].size() || leaf1 < 0 ||
      leaf1 >= (node)nodes_[1].size())
    fail_pre("bicolored: bad label leaves");
  labelrec rec{{leaf0, leaf1}, red};
  insert_points(label, rec);
  labels_.emplace(label, rec);
  nodes_[0][leaf0].labs.push_back(label);
  nodes_[1][leaf1].labs.push_back(label);
}

void bicolored_trees::remove_label(int64_t label) {
  auto it = labels_.find(label);
  if (it == labels_.end()) fail_pre("bicolored: unknown label");
  remove_points(label, it->second);
  unlist_label(0, it->second.leaf[0], label);
  unlist_label(1, it->second.leaf[1], label);
  labels_.erase(it);
}

bool bicolored_trees::has_label(int64_t label) const {
  return labels_.count(label) > 0;
}

void bicolored_trees::maybe_rebuild(int tree, node parent) {
  node trigger = -1;
  node cur = parent;
  while (cur >= 0) {
    int32_t p = nodes_[tree][cur].path;
    hpath& hp = paths_[tree].at(p);
    node r = hp.nodes.front().second;
    ++hp.inserted;
    if (6 * hp.inserted >= nodes_[tree][r].leaves_frozen) trigger = r;
    cur = nodes_[tree][r].parent;
  }
  if (trigger >= 0) rebuild(tree, trigger);
}

void bicolored_trees::rebuild(int tree, node a) {
  if (paths_[tree].at(nodes_[tree][a].path).nodes.front().second != a)
    fail_pre("bicolored: rebuild target is not a path root");
  // subtree sweep: order nodes, find affected labels, retire old paths
  std::vector<node> order;
  std::vector<int64_t> affected;
  {
    std::vector<node> stack{a};
    while (!stack.empty()) {
      node u = stack.back();
      stack.pop_back();
      order.push_back(u);
      for (int64_t label : nodes_[tree][u].labs) affected.push_back(label);
      for (node c : nodes_[tree][u].kids) stack.push_back(c);
    }
  }
  // snapshot stops so points can be diffed instead of fully replaced; a
  // chain that re-roots at the same node keeps its path id, so placements
  // on unchanged chains survive the rebuild untouched.  stops above a are
  // identical before and after and so stay out of the diff entirely
  std::vector<std::vector<std::pair<int32_t, int64_t>>> old_stops;
  old_stops.resize(affected.size());
  for (size_t i = 0; i < affected.size(); ++i)
    path_stops_into(tree, labels_.at(affected[i]).leaf[tree], a, old_stops[i]);
  std::unordered_map<node, int32_t> reuse;
  for (node u : order) {
    int32_t p = nodes_[tree][u].path;
    auto it = paths_[tree].find(p);
    if (it == paths_[tree].end()) continue;  // already retired via its root
    reuse.emplace(it->second.nodes.front().second, p);
    paths_[tree].erase(it);  // paths never cross a path-root boundary upward
  }
  // frozen counts: structural leaves below each node (reverse preorder is a
  // valid post order here because kids were pushed in order)
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    tnode& n = nodes_[tree][*it];
    if (n.kids.empty()) {
      n.leaves_frozen = 1;
    } else {
      n.leaves_frozen = 0;
      for (node c : n.kids) n.leaves_frozen += nodes_[tree][c].leaves_frozen;
    }
  }
  // re-decompose: a child continues its parent's path when its frozen count
  // is at least 5/6 of the path root's
  {
    struct item {
      node u;
      int32_t path;      // -1: open a new path at u
      int64_t root_cnt;  // frozen count of that path's root
    };
    std::vector<item> stack{{a, -1, 0}};
    while (!stack.empty()) {
      item it = stack.back();
      stack.pop_back();
      tnode& n = nodes_[tree][it.u];
      int32_t p;
      int64_t rl;
      if (it.path < 0) {
        auto ru = reuse.find(it.u);
        if (ru != reuse.end()) {
          p = ru->second;
          hpath fresh;
          fresh.nodes.emplace_back(n.w, it.u);
          paths_[tree].emplace(p, std::move(fresh));
          n.path = p;
        } else {
          p = new_path(tree, it.u);
        }
        rl = n.leaves_frozen;
      } else {
        p = it.path;
        rl = it.root_cnt;
        n.path = p;
        paths_[tree].at(p).nodes.emplace_back(n.w, it.u);
      }
      int heavy = 0;
      for (node c : n.kids) {
        bool h = 6 * nodes_[tree][c].leaves_frozen >= 5 * rl;
        heavy += h;
        stack.push_back({c, h ? p : -1, rl});
      }
      if (heavy > 1) fail_pre("bicolored: two heavy children");
    }
  }
  // touch only placements whose (path, depth) stop actually moved
  std::vector<std::pair<int32_t, int64_t>> nw;
  for (size_t i = 0; i < affected.size(); ++i) {
    const labelrec& rec = labels_.at(affected[i]);
    path_stops_into(tree, rec.leaf[tree], a, nw);
    apply_stop_diff(tree, affected[i], rec, old_stops[i], nw);
  }
}

void bicolored_trees::apply_stop_diff(
    int tree, int64_t label, const labelrec& rec,
    std::vector<std::pair<int32_t, int64_t>>& od,
    std::vector<std::pair<int32_t, int64_t>>& nw) {
  std::sort(nw.begin(), nw.end());
  std::sort(od.begin(), od.end());
  scr_gone_.clear();
  scr_born_.clear();
  std::set_difference(od.begin(), od.end(), nw.begin(), nw.end(),
                      std::back_inserter(scr_gone_));
  std::set_difference(nw.begin(), nw.end(), od.begin(), od.end(),
                      std::back_inserter(scr_born_));
  if (scr_gone_.empty() && scr_born_.empty()) return;
  path_stops_into(1 - tree, rec.leaf[1 - tree], -1, scr_other_);
  for (const auto& [p, x] : scr_gone_)
    for (const auto& [q, y] : scr_other_) {
      skey k = tree == 0 ? skey{p, q} : skey{q, p};
      structs_.at(k).g.delete_point(label);
      --points_;
      touch_struct(k);
    }
  for (const auto& [p, x] : scr_born_)
    for (const auto& [q, y] : scr_other_) {
      skey k = tree == 0 ? skey{p, q} : skey{q, p};
      struct_at(k).g.insert_point(label, tree == 0 ? x : y, tree == 0 ? y : x,
                                 rec.red);
      ++points_;
      touch_struct(k);
    }
}

void bicolored_trees::move_label(int64_t label, int tree, node new_leaf) {
  auto it = labels_.find(label);
  if (it == labels_.end()) fail_pre("bicolored: unknown label");
  if (tree < 0 || tree > 1) fail_pre("bicolored: bad tree index");
  if (new_leaf < 0 || new_leaf >= (node)nodes_[tree].size())
    fail_pre("bicolored: bad label leaves");
  labelrec& rec = it->second;
  if (rec.leaf[tree] == new_leaf) return;
  path_stops_into(tree, rec.leaf[tree], -1, scr_a_);
  unlist_label(tree, rec.leaf[tree], label);
  rec.leaf[tree] = new_leaf;
  nodes_[tree][new_leaf].labs.push_back(label);
  path_stops_into(tree, new_leaf, -1, scr_b_);
  apply_stop_diff(tree, label, rec, scr_a_, scr_b_);
}

void bicolored_trees::add_labels_bulk(const std::vector<bulk_label>& items) {
  std::map<skey, std::vector<geom_best_pair::bulk_item>> by_struct;
  for (const auto& it : items) {
    if (labels_.count(it.label)) fail_pre("bicolored: duplicate label");
    if (it.leaf0 < 0 || it.leaf0 >= (node)nodes_[0].size() || it.leaf1 < 0 ||
        it.leaf1 >= (node)nodes_[1].size())
      fail_pre("bicolored: bad label leaves");
    labels_.emplace(it.label, labelrec{{it.leaf0, it.leaf1}, it.red});
    nodes_[0][it.leaf0].labs.push_back(it.label);
    nodes_[1][it.leaf1].labs.push_back(it.label);
    for (const auto& [p, x] : path_stops(0, it.leaf0))
      for (const auto& [q, y] : path_stops(1, it.leaf1))
        by_struct[{p, q}].push_back({it.label, x, y, it.red});
  }
  for (auto& [k, v] : by_struct) {
    struct_at(k).g.bulk_insert(v);
    points_ += (int64_t)v.size();
    touch_struct(k);
  }
}

bicolored_trees::node bicolored_trees::path_node(int tree, int32_t path,
                                                 int64_t w) const {
  const auto& pn = paths_[tree].at(path).nodes;
  auto it = std::lower_bound(pn.begin(), pn.end(), w,
                             [](const std::pair<int64_t, node>& e, int64_t k) {
                               return e.first < k;
                             });
  if (it == pn.end() || it->first != w)
    fail_pre("bicolored: no node at that depth");
  return it->second;
}

std::optional<bicolored_trees::best> bicolored_trees::global_best() const {
  if (heap_.empty()) return std::nullopt;
  auto [total, key] = *heap_.rbegin();
  const sentry& e = structs_.at(key);
  auto bp = e.g.best_pair();
  if (!bp || bp->value != total) fail_pre("bicolored: heap out of sync");
  auto stop_on = [&](int t, node leaf, int32_t path) {
    for (const auto& [p, w] : path_stops(t, leaf))
      if (p == path) return w;
    fail_pre("bicolored: winner not on its path");
    return int64_t(0);
  };
  const labelrec& lr = labels_.at(bp->red_label);
  const labelrec& lb = labels_.at(bp->blue_label);
  int64_t x0 = std::min(stop_on(0, lr.leaf[0], key.first),
                        stop_on(0, lb.leaf[0], key.first));
  int64_t x1 = std::min(stop_on(1, lr.leaf[1], key.second),
                        stop_on(1, lb.leaf[1], key.second));
  if (x0 + x1 != total) fail_pre("bicolored: stop depths disagree");
  best out;
  out.u = path_node(0, key.first, x0);
  out.v = path_node(1, key.second, x1);
  out.lcp0 = x0;
  out.lcp1 = x1;
  out.total = total;
  out.red_label = bp->red_label;
  out.blue_label = bp->blue_label;
  return out;
}

int64_t bicolored_trees::node_count(int tree) const {
  return (int64_t)nodes_[tree].size();
}
int64_t bicolored_trees::label_count() const { return (int64_t)labels_.size(); }
int64_t bicolored_trees::total_points() const { return points_; }

int bicolored_trees::paths_above(int tree, node u) const {
  if (u < 0 || u >= (node)nodes_[tree].size()) fail_pre("bicolored: bad node");
  return (int)path_stops(tree, u).size();
}

void bicolored_trees::check_invariants() const {
  for (int t = 0; t < 2; ++t) {
    int64_t covered = 0;
    for (const auto& [id, hp] : paths_[t]) {
      if (hp.nodes.empty()) fail_pre("bicolored audit: empty path");
      node prev = -1;
      for (const auto& [w, u] : hp.nodes) {
        if (nodes_[t][u].path != id) fail_pre("bicolored audit: path field");
        if (nodes_[t][u].w != w) fail_pre("bicolored audit: path weight");
        if (prev >= 0 && nodes_[t][u].parent != prev)
          fail_pre("bicolored audit: path not a chain");
        prev = u;
        ++covered;
      }
      node r = hp.nodes.front().second;
      node e = hp.nodes.back().second;
      if (3 * nodes_[t][e].leaves_frozen < 2 * nodes_[t][r].leaves_frozen)
        fail_pre("bicolored audit: end too light");
    }
    if (covered != (int64_t)nodes_[t].size())
      fail_pre("bicolored audit: paths do not partition the tree");
  }
  int64_t pts = 0, in_heap = 0;
  for (const auto& [k, e] : structs_) {
    if (e.g.size() == 0) fail_pre("bicolored audit: empty structure kept");
    pts += e.g.size();
    auto b = e.g.best_pair();
    if (e.in_heap != b.has_value()) fail_pre("bicolored audit: heap flag");
    if (e.in_heap) {
      if (e.heap_total != b->value) fail_pre("bicolored audit: stale total");
      if (!heap_.count({e.heap_total, k}))
        fail_pre("bicolored audit: heap entry missing");
      ++in_heap;
    }
  }
  if (pts != points_) fail_pre("bicolored audit: point count");
  if ((int64_t)heap_.size() != in_heap) fail_pre("bicolored audit: heap size");
  for (int t = 0; t < 2; ++t) {
    int64_t listed = 0;
    for (node u = 0; u < (node)nodes_[t].size(); ++u)
      for (int64_t label : nodes_[t][u].labs) {
        auto lt = labels_.find(label);
        if (lt == labels_.end() || lt->second.leaf[t] != u)
          fail_pre("bicolored audit: label list entry wrong");
        ++listed;
      }
    if (listed != (int64_t)labels_.size())
      fail_pre("bicolored audit: label lists incomplete");
  }
  int64_t expect = 0;
  for (const auto& [label, rec] : labels_) {
    auto a = path_stops(0, rec.leaf[0]);
    auto b = path_stops(1, rec.leaf[1]);
    expect += (int64_t)a.size() * (int64_t)b.size();
    for (const auto& [p, x] : a)
      for (const auto& [q, y] : b) {
        auto it = structs_.find({p, q});
        if (it == structs_.end() || !it->second.g.contains(label))
          fail_pre("bicolored audit: missing point");
      }
  }
  if (expect != points_) fail_pre("bicolored audit: placement count");
}

}  // namespace dynlcs
