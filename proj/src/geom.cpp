#include "dynlcs/geom.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_set>

#include "dynlcs/util.hpp"

namespace dynlcs {

namespace {
constexpr int64_t kNone = std::numeric_limits<int64_t>::min();
constexpr int64_t kCoordLimit = int64_t(1) << 31;

// rebuild a subtree when one side holds more than 3/4 of its leaves
bool overweight(int32_t wl, int32_t wr) {
  return 4 * std::max(wl, wr) > 3 * (wl + wr);
}
}  // namespace

bool geom_best_pair::agg_equal(const sagg& a, const sagg& b) {
  for (int s = 0; s < 2; ++s)
    for (int c = 0; c < 2; ++c)
      if (a.mx[s][c] != b.mx[s][c] || a.my[s][c] != b.my[s][c] ||
          a.mxy[s][c] != b.mxy[s][c])
        return false;
  return a.best == b.best && a.br == b.br && a.bb == b.bb;
}

uint64_t geom_best_pair::xkey(int32_t s) const {
  return (uint64_t)pts_[s].x << 32 | pts_[s].seq;
}
uint64_t geom_best_pair::ykey(int32_t s) const {
  return (uint64_t)pts_[s].y << 32 | pts_[s].seq;
}

int32_t geom_best_pair::pick_x(int32_t a, int32_t b) const {
  if (a < 0) return b;
  if (b < 0) return a;
  return xkey(a) > xkey(b) ? a : b;
}
int32_t geom_best_pair::pick_y(int32_t a, int32_t b) const {
  if (a < 0) return b;
  if (b < 0) return a;
  return ykey(a) > ykey(b) ? a : b;
}
int32_t geom_best_pair::pick_xy(int32_t a, int32_t b) const {
  if (a < 0) return b;
  if (b < 0) return a;
  int64_t sa = pts_[a].x + pts_[a].y, sb = pts_[b].x + pts_[b].y;
  if (sa != sb) return sa > sb ? a : b;
  return pts_[a].seq > pts_[b].seq ? a : b;
}

geom_best_pair::sagg geom_best_pair::leaf_agg(int32_t slot, uint8_t side) const {
  sagg a;
  for (int s = 0; s < 2; ++s)
    for (int c = 0; c < 2; ++c) a.mx[s][c] = a.my[s][c] = a.mxy[s][c] = -1;
  int c = pts_[slot].red ? 1 : 0;
  a.mx[side][c] = a.my[side][c] = a.mxy[side][c] = slot;
  a.best = kNone;
  a.br = a.bb = -1;
  return a;
}

// lo holds the smaller y-keys.  a cross pair takes min(y) from lo and min(x)
// from whichever point lies on the primary left side; same-side pairs are
// split at a deeper primary node and are not eligible here.
geom_best_pair::sagg geom_best_pair::merge_agg(const sagg& lo,
                                               const sagg& hi) const {
  sagg a;
  for (int s = 0; s < 2; ++s)
    for (int c = 0; c < 2; ++c) {
      a.mx[s][c] = pick_x(lo.mx[s][c], hi.mx[s][c]);
      a.my[s][c] = pick_y(lo.my[s][c], hi.my[s][c]);
      a.mxy[s][c] = pick_xy(lo.mxy[s][c], hi.mxy[s][c]);
    }
  a.best = lo.best;
  a.br = lo.br;
  a.bb = lo.bb;
  auto consider = [&](int64_t v, int32_t p, int32_t q) {
    if (v <= a.best) return;
    a.best = v;
    a.br = pts_[p].red ? p : q;
    a.bb = pts_[p].red ? q : p;
  };
  if (hi.best > a.best) {
    a.best = hi.best;
    a.br = hi.br;
    a.bb = hi.bb;
  }
  for (int c = 0; c < 2; ++c) {
    // p in lo on the primary left: value = x_p + y_p, any q on the right
    int32_t p = lo.mxy[0][c], q = hi.mx[1][1 - c];
    if (p >= 0 && q >= 0) consider(pts_[p].x + pts_[p].y, p, q);
    // p in lo on the primary right: value = x_q + y_p
    int32_t p2 = lo.my[1][c], q2 = hi.mx[0][1 - c];
    if (p2 >= 0 && q2 >= 0) consider(pts_[q2].x + pts_[p2].y, p2, q2);
  }
  return a;
}

int32_t geom_best_pair::salloc() {
  if (!sn_free_.empty()) {
    int32_t v = sn_free_.back();
    sn_free_.pop_back();
    return v;
  }
  sn_.push_back({});
  return (int32_t)sn_.size() - 1;
}
void geom_best_pair::sfree_node(int32_t v) { sn_free_.push_back(v); }

int32_t geom_best_pair::palloc() {
  if (!pn_free_.empty()) {
    int32_t u = pn_free_.back();
    pn_free_.pop_back();
    return u;
  }
  pn_.push_back({});
  return (int32_t)pn_.size() - 1;
}
void geom_best_pair::pfree_node(int32_t u) { pn_free_.push_back(u); }

int32_t geom_best_pair::sec_build(
    std::vector<std::pair<int32_t, uint8_t>>& items, int lo, int hi) {
  int32_t v = salloc();
  if (hi - lo == 1) {
    sn_[v] = {-1, -1, items[lo].first, 1, items[lo].second,
              ykey(items[lo].first), leaf_agg(items[lo].first, items[lo].second)};
    return v;
  }
  int mid = (lo + hi) / 2;
  int32_t l = sec_build(items, lo, mid);
  int32_t r = sec_build(items, mid, hi);
  sn_[v].l = l;
  sn_[v].r = r;
  sn_[v].pt = -1;
  sn_[v].side = 0;
  sn_[v].weight = hi - lo;
  sn_[v].ylim = ykey(items[mid - 1].first);
  sn_[v].ag = merge_agg(sn_[l].ag, sn_[r].ag);
  return v;
}

void geom_best_pair::sec_collect(int32_t v,
                                 std::vector<std::pair<int32_t, uint8_t>>& out,
                                 bool free_nodes) {
  if (sn_[v].l < 0) {
    out.emplace_back(sn_[v].pt, sn_[v].side);
  } else {
    sec_collect(sn_[v].l, out, free_nodes);
    sec_collect(sn_[v].r, out, free_nodes);
  }
  if (free_nodes) sfree_node(v);
}

void geom_best_pair::sec_insert(int32_t& root, int32_t slot, uint8_t side) {
  if (root < 0) {
    int32_t v = salloc();
    sn_[v] = {-1, -1, slot, 1, side, ykey(slot), leaf_agg(slot, side)};
    root = v;
    return;
  }
  uint64_t yk = ykey(slot);
  static thread_local std::vector<int32_t> path;
  static thread_local std::vector<uint8_t> dirs;
  path.clear();
  dirs.clear();
  int32_t cur = root;
  while (sn_[cur].l >= 0) {
    bool goleft = yk <= sn_[cur].ylim;
    ++sn_[cur].weight;
    path.push_back(cur);
    dirs.push_back(goleft ? 0 : 1);
    cur = goleft ? sn_[cur].l : sn_[cur].r;
  }
  int32_t leaf = salloc();
  sn_[leaf] = {-1, -1, slot, 1, side, yk, leaf_agg(slot, side)};
  int32_t w = salloc();
  if (yk < sn_[cur].ylim) {
    sn_[w] = {leaf, cur, -1, 2, 0, yk, merge_agg(sn_[leaf].ag, sn_[cur].ag)};
  } else {
    sn_[w] = {cur, leaf, -1, 2, 0, sn_[cur].ylim,
              merge_agg(sn_[cur].ag, sn_[leaf].ag)};
  }
  if (path.empty())
    root = w;
  else if (dirs.back() == 0)
    sn_[path.back()].l = w;
  else
    sn_[path.back()].r = w;
  sec_settle(root, path, dirs);
}

// rebuilds the highest overweight node on the path, then recomputes the
// aggregates of the survivors bottom-up (a rebuild can change tie-break
// witnesses below, so ancestors must be refreshed after it)
void geom_best_pair::sec_settle(int32_t& root, std::vector<int32_t>& path,
                                std::vector<uint8_t>& dirs) {
  size_t keep = path.size();
  for (size_t i = 0; i < path.size(); ++i) {
    int32_t v = path[i];
    if (!overweight(sn_[sn_[v].l].weight, sn_[sn_[v].r].weight)) continue;
    static thread_local std::vector<std::pair<int32_t, uint8_t>> items;
    items.clear();
    items.reserve(sn_[v].weight);
    sec_collect(v, items, true);
    int32_t nv = sec_build(items, 0, (int)items.size());
    if (i == 0)
      root = nv;
    else if (dirs[i - 1] == 0)
      sn_[path[i - 1]].l = nv;
    else
      sn_[path[i - 1]].r = nv;
    keep = i;
    break;
  }
  for (size_t j = keep; j-- > 0;) {
    sagg next = merge_agg(sn_[sn_[path[j]].l].ag, sn_[sn_[path[j]].r].ag);
    if (agg_equal(next, sn_[path[j]].ag)) return;  // ancestors can't change
    sn_[path[j]].ag = next;
  }
}

void geom_best_pair::sec_delete(int32_t& root, int32_t slot) {
  uint64_t yk = ykey(slot);
  if (sn_[root].l < 0) {
    if (sn_[root].pt != slot) fail_pre("geom: secondary leaf mismatch");
    sfree_node(root);
    root = -1;
    return;
  }
  static thread_local std::vector<int32_t> path;
  static thread_local std::vector<uint8_t> dirs;
  path.clear();
  dirs.clear();
  int32_t cur = root;
  while (sn_[cur].l >= 0) {
    bool goleft = yk <= sn_[cur].ylim;
    --sn_[cur].weight;
    path.push_back(cur);
    dirs.push_back(goleft ? 0 : 1);
    cur = goleft ? sn_[cur].l : sn_[cur].r;
  }
  if (sn_[cur].pt != slot) fail_pre("geom: secondary delete missed");
  int32_t p = path.back();
  int32_t sib = dirs.back() == 0 ? sn_[p].r : sn_[p].l;
  path.pop_back();
  dirs.pop_back();
  if (path.empty())
    root = sib;
  else if (dirs.back() == 0)
    sn_[path.back()].l = sib;
  else
    sn_[path.back()].r = sib;
  sfree_node(cur);
  sfree_node(p);
  sec_settle(root, path, dirs);
}

void geom_best_pair::prim_refresh(int32_t u) {
  pnode& n = pn_[u];
  n.best = kNone;
  n.br = n.bb = -1;
  auto fold = [&](int64_t v, int32_t r, int32_t b) {
    if (v == kNone || v <= n.best) return;
    n.best = v;
    n.br = r;
    n.bb = b;
  };
  fold(pn_[n.l].best, pn_[n.l].br, pn_[n.l].bb);
  fold(pn_[n.r].best, pn_[n.r].br, pn_[n.r].bb);
  if (n.sec >= 0) fold(sn_[n.sec].ag.best, sn_[n.sec].ag.br, sn_[n.sec].ag.bb);
}

int32_t geom_best_pair::prim_build(
    std::vector<int32_t>& slots, int lo, int hi,
    std::vector<std::pair<int32_t, uint8_t>>& ylist, int depth) {
  int32_t u = palloc();
  if (hi - lo == 1) {
    pn_[u] = {-1, -1, slots[lo], 1, xkey(slots[lo]), -1, kNone, -1, -1};
    ylist.assign(1, {slots[lo], 0});
    return u;
  }
  int mid = (lo + hi) / 2;
  // per-depth merge scratch: the two children of a call at depth d use
  // pool slots 2d+2..2d+3, disjoint from this call's 2d..2d+1; a deque so
  // that growth in deeper calls leaves outer levels' references valid
  static thread_local std::deque<std::vector<std::pair<int32_t, uint8_t>>>
      pool;
  if ((int)pool.size() < 2 * depth + 2) pool.resize(2 * depth + 2);
  auto& yl = pool[2 * depth];
  auto& yr = pool[2 * depth + 1];
  yl.clear();
  yr.clear();
  int32_t l = prim_build(slots, lo, mid, yl, depth + 1);
  int32_t r = prim_build(slots, mid, hi, yr, depth + 1);
  ylist.clear();
  ylist.reserve(hi - lo);
  size_t i = 0, j = 0;
  while (i < yl.size() || j < yr.size()) {
    bool take_left = j == yr.size() ||
                     (i < yl.size() && ykey(yl[i].first) < ykey(yr[j].first));
    if (take_left)
      ylist.emplace_back(yl[i++].first, 0);
    else
      ylist.emplace_back(yr[j++].first, 1);
  }
  int32_t sec = sec_build(ylist, 0, (int)ylist.size());
  pn_[u] = {l, r, -1, hi - lo, xkey(slots[mid - 1]), sec, kNone, -1, -1};
  prim_refresh(u);
  return u;
}

void geom_best_pair::prim_collect(int32_t u, std::vector<int32_t>& out) {
  if (pn_[u].l < 0) {
    out.push_back(pn_[u].pt);
  } else {
    prim_collect(pn_[u].l, out);
    prim_collect(pn_[u].r, out);
  }
  if (pn_[u].sec >= 0) {
    std::vector<std::pair<int32_t, uint8_t>> scratch;
    sec_collect(pn_[u].sec, scratch, true);
  }
  pfree_node(u);
}

void geom_best_pair::rebuild_primary(int32_t& link) {
  static thread_local std::vector<int32_t> slots;
  slots.clear();
  slots.reserve(pn_[link].weight);
  prim_collect(link, slots);
  static thread_local std::vector<std::pair<int32_t, uint8_t>> ylist;
  ylist.clear();
  link = prim_build(slots, 0, (int)slots.size(), ylist);
}

void geom_best_pair::insert_point(int64_t label, int64_t x, int64_t y,
                                  bool red) {
  if (by_label_.count(label)) fail_pre("geom: duplicate label");
  if (x < 0 || y < 0 || x >= kCoordLimit || y >= kCoordLimit)
    fail_pre("geom: coordinate out of range");
  int32_t slot;
  if (!pts_free_.empty()) {
    slot = pts_free_.back();
    pts_free_.pop_back();
  } else {
    pts_.push_back({});
    slot = (int32_t)pts_.size() - 1;
  }
  pts_[slot] = {label, x, y, seq_++, red};
  by_label_[label] = slot;
  if (root_ < 0) {
    root_ = palloc();
    pn_[root_] = {-1, -1, slot, 1, xkey(slot), -1, kNone, -1, -1};
    return;
  }
  uint64_t xk = xkey(slot);
  static thread_local std::vector<int32_t> path;
  static thread_local std::vector<uint8_t> dirs;
  path.clear();
  dirs.clear();
  int32_t cur = root_;
  while (pn_[cur].l >= 0) {
    bool goleft = xk <= pn_[cur].xlim;
    ++pn_[cur].weight;
    sec_insert(pn_[cur].sec, slot, goleft ? 0 : 1);
    path.push_back(cur);
    dirs.push_back(goleft ? 0 : 1);
    cur = goleft ? pn_[cur].l : pn_[cur].r;
  }
  int32_t leaf = palloc();
  pn_[leaf] = {-1, -1, slot, 1, xk, -1, kNone, -1, -1};
  int32_t w = palloc();
  static thread_local std::vector<std::pair<int32_t, uint8_t>> two;
  two.clear();
  int32_t lo_child, hi_child;
  if (xk < pn_[cur].xlim) {
    lo_child = leaf;
    hi_child = cur;
  } else {
    lo_child = cur;
    hi_child = leaf;
  }
  int32_t a = pn_[lo_child].pt, b = pn_[hi_child].pt;
  if (ykey(a) < ykey(b)) {
    two.push_back({a, 0});
    two.push_back({b, 1});
  } else {
    two.push_back({b, 1});
    two.push_back({a, 0});
  }
  int32_t sec = sec_build(two, 0, 2);
  pn_[w] = {lo_child, hi_child, -1, 2, pn_[lo_child].xlim, sec, kNone, -1, -1};
  prim_refresh(w);
  if (path.empty())
    root_ = w;
  else if (dirs.back() == 0)
    pn_[path.back()].l = w;
  else
    pn_[path.back()].r = w;
  prim_settle(path, dirs);
}

void geom_best_pair::prim_settle(std::vector<int32_t>& path,
                                 std::vector<uint8_t>& dirs) {
  size_t keep = path.size();
  for (size_t i = 0; i < path.size(); ++i) {
    int32_t u = path[i];
    if (!overweight(pn_[pn_[u].l].weight, pn_[pn_[u].r].weight)) continue;
    int32_t nu = u;
    rebuild_primary(nu);
    if (i == 0)
      root_ = nu;
    else if (dirs[i - 1] == 0)
      pn_[path[i - 1]].l = nu;
    else
      pn_[path[i - 1]].r = nu;
    keep = i;
    break;
  }
  for (size_t j = keep; j-- > 0;) prim_refresh(path[j]);
}

void geom_best_pair::bulk_insert(const std::vector<bulk_item>& items) {
  if (items.empty()) return;
  std::unordered_set<int64_t> batch;
  for (const auto& it : items) {
    if (by_label_.count(it.label) || !batch.insert(it.label).second)
      fail_pre("geom: duplicate label");
    if (it.x < 0 || it.y < 0 || it.x >= kCoordLimit || it.y >= kCoordLimit)
      fail_pre("geom: coordinate out of range");
  }
  std::vector<int32_t> slots;
  slots.reserve((size_t)size() + items.size());
  if (root_ >= 0) {
    prim_collect(root_, slots);
    root_ = -1;
  }
  for (const auto& it : items) {
    int32_t slot;
    if (!pts_free_.empty()) {
      slot = pts_free_.back();
      pts_free_.pop_back();
    } else {
      pts_.push_back({});
      slot = (int32_t)pts_.size() - 1;
    }
    pts_[slot] = {it.label, it.x, it.y, seq_++, it.red};
    by_label_[it.label] = slot;
    slots.push_back(slot);
  }
  std::sort(slots.begin(), slots.end(),
            [&](int32_t a, int32_t b) { return xkey(a) < xkey(b); });
  std::vector<std::pair<int32_t, uint8_t>> ylist;
  root_ = prim_build(slots, 0, (int)slots.size(), ylist);
}

void geom_best_pair::delete_point(int64_t label) {
  auto it = by_label_.find(label);
  if (it == by_label_.end()) fail_pre("geom: unknown label");
  int32_t slot = it->second;
  by_label_.erase(it);
  if (pn_[root_].l < 0) {
    if (pn_[root_].pt != slot) fail_pre("geom: primary leaf mismatch");
    pfree_node(root_);
    root_ = -1;
    pts_free_.push_back(slot);
    return;
  }
  uint64_t xk = xkey(slot);
  static thread_local std::vector<int32_t> path;
  static thread_local std::vector<uint8_t> dirs;
  path.clear();
  dirs.clear();
  int32_t cur = root_;
  while (pn_[cur].l >= 0) {
    bool goleft = xk <= pn_[cur].xlim;
    --pn_[cur].weight;
    sec_delete(pn_[cur].sec, slot);
    path.push_back(cur);
    dirs.push_back(goleft ? 0 : 1);
    cur = goleft ? pn_[cur].l : pn_[cur].r;
  }
  if (pn_[cur].pt != slot) fail_pre("geom: primary delete missed");
  int32_t p = path.back();
  int32_t sib = dirs.back() == 0 ? pn_[p].r : pn_[p].l;
  path.pop_back();
  dirs.pop_back();
  if (path.empty())
    root_ = sib;
  else if (dirs.back() == 0)
    pn_[path.back()].l = sib;
  else
    pn_[path.back()].r = sib;
  if (pn_[p].sec >= 0) {
    static thread_local std::vector<std::pair<int32_t, uint8_t>> scratch;
    scratch.clear();
    sec_collect(pn_[p].sec, scratch, true);
  }
  pfree_node(cur);
  pfree_node(p);
  prim_settle(path, dirs);
  pts_free_.push_back(slot);
}

std::optional<geom_best_pair::answer> geom_best_pair::best_pair() const {
  if (root_ < 0 || pn_[root_].best == kNone) return std::nullopt;
  return answer{pts_[pn_[root_].br].label, pts_[pn_[root_].bb].label,
                pn_[root_].best};
}

void geom_best_pair::clear() {
  pts_.clear();
  pts_free_.clear();
  sn_.clear();
  sn_free_.clear();
  pn_.clear();
  pn_free_.clear();
  by_label_.clear();
  root_ = -1;
  seq_ = 0;
}

int64_t geom_best_pair::size() const { return (int64_t)by_label_.size(); }

bool geom_best_pair::contains(int64_t label) const {
  return by_label_.count(label) > 0;
}

namespace {
void audit_fail(const char* what) { fail_pre(std::string("geom audit: ") + what); }
}  // namespace

void geom_best_pair::audit_secondary(int32_t v, const pnode& owner,
                                     std::vector<int32_t>& got) const {
  const snode& n = sn_[v];
  if (n.l < 0) {
    if (n.r >= 0 || n.pt < 0) audit_fail("bad leaf");
    if (n.weight != 1) audit_fail("leaf weight");
    got.push_back(n.pt);
    sagg want = leaf_agg(n.pt, n.side);
    for (int s = 0; s < 2; ++s)
      for (int c = 0; c < 2; ++c)
        if (want.mx[s][c] != n.ag.mx[s][c] || want.my[s][c] != n.ag.my[s][c] ||
            want.mxy[s][c] != n.ag.mxy[s][c])
          audit_fail("leaf agg");
    if (n.ag.best != kNone) audit_fail("leaf best");
    if (n.ylim != ykey(n.pt)) audit_fail("leaf ylim");
    return;
  }
  std::vector<int32_t> gl, gr;
  audit_secondary(n.l, owner, gl);
  audit_secondary(n.r, owner, gr);
  if (n.weight != sn_[n.l].weight + sn_[n.r].weight) audit_fail("sec weight");
  if (overweight(sn_[n.l].weight, sn_[n.r].weight)) audit_fail("sec balance");
  for (int32_t s : gl)
    if (ykey(s) > n.ylim) audit_fail("ylim left");
  for (int32_t s : gr)
    if (ykey(s) <= n.ylim) audit_fail("ylim right");
  sagg want = merge_agg(sn_[n.l].ag, sn_[n.r].ag);
  for (int s = 0; s < 2; ++s)
    for (int c = 0; c < 2; ++c)
      if (want.mx[s][c] != n.ag.mx[s][c] || want.my[s][c] != n.ag.my[s][c] ||
          want.mxy[s][c] != n.ag.mxy[s][c])
        audit_fail("sec maxima");
  if (want.best != n.ag.best || want.br != n.ag.br || want.bb != n.ag.bb)
    audit_fail("sec best");
  got.insert(got.end(), gl.begin(), gl.end());
  got.insert(got.end(), gr.begin(), gr.end());
}

void geom_best_pair::audit_primary(int32_t u, std::vector<int32_t>& got) const {
  const pnode& n = pn_[u];
  if (n.l < 0) {
    if (n.pt < 0 || n.sec >= 0 || n.weight != 1) audit_fail("bad primary leaf");
    if (n.best != kNone) audit_fail("primary leaf best");
    got.push_back(n.pt);
    return;
  }
  std::vector<int32_t> gl, gr;
  audit_primary(n.l, gl);
  audit_primary(n.r, gr);
  if (n.weight != pn_[n.l].weight + pn_[n.r].weight)
    audit_fail("primary weight");
  if (overweight(pn_[n.l].weight, pn_[n.r].weight))
    audit_fail("primary balance");
  for (int32_t s : gl)
    if (xkey(s) > n.xlim) audit_fail("xlim left");
  for (int32_t s : gr)
    if (xkey(s) <= n.xlim) audit_fail("xlim right");
  if (n.sec < 0 || sn_[n.sec].weight != n.weight) audit_fail("sec coverage");
  std::vector<int32_t> sec_got;
  audit_secondary(n.sec, n, sec_got);
  // the secondary holds exactly this subtree's points, sides per child
  std::unordered_set<int32_t> left_set(gl.begin(), gl.end());
  std::unordered_set<int32_t> all(gl.begin(), gl.end());
  all.insert(gr.begin(), gr.end());
  if (sec_got.size() != all.size()) audit_fail("sec point count");
  // recollect with sides to verify flags
  {
    std::vector<std::pair<int32_t, uint8_t>> items;
    const_cast<geom_best_pair*>(this)->sec_collect(n.sec, items, false);
    for (auto& [slot, side] : items) {
      if (!all.count(slot)) audit_fail("sec stray point");
      bool is_left = left_set.count(slot) > 0;
      if ((side == 0) != is_left) audit_fail("sec side flag");
    }
  }
  int64_t want_best = kNone;
  int32_t wr = -1, wb = -1;
  auto fold = [&](int64_t v, int32_t r, int32_t b) {
    if (v == kNone || v <= want_best) return;
    want_best = v;
    wr = r;
    wb = b;
  };
  fold(pn_[n.l].best, pn_[n.l].br, pn_[n.l].bb);
  fold(pn_[n.r].best, pn_[n.r].br, pn_[n.r].bb);
  fold(sn_[n.sec].ag.best, sn_[n.sec].ag.br, sn_[n.sec].ag.bb);
  if (want_best != n.best || wr != n.br || wb != n.bb)
    audit_fail("primary best");
  got.insert(got.end(), gl.begin(), gl.end());
  got.insert(got.end(), gr.begin(), gr.end());
}

void geom_best_pair::audit() const {
  if (root_ < 0) {
    if (!by_label_.empty()) audit_fail("lost points");
    return;
  }
  std::vector<int32_t> got;
  audit_primary(root_, got);
  if (got.size() != by_label_.size()) audit_fail("point count");
  for (int32_t s : got) {
    auto it = by_label_.find(pts_[s].label);
    if (it == by_label_.end() || it->second != s) audit_fail("label map");
  }
}

}  // namespace dynlcs
