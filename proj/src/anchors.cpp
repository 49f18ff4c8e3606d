#include "dynlcs/anchors.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>

#include "dynlcs/util.hpp"

namespace dynlcs {

namespace {

using sym = grammar::sym;

int64_t deg_of(const grammar& g, sym parent) {
  if (parent < 0) return 0;
  return g.k(parent) == grammar::kind::power ? g.exponent(parent) : 2;
}

// take `count` layer-h nodes immediately left of pos; returns the start of
// the leftmost one taken (pos when none fit); power blocks advance in bulk
int64_t walk_left(const grammar& g, sym root, int h, int64_t pos,
                  int64_t count) {
  while (count > 0 && pos > 1) {
    grammar::pos_node u = g.alive_at(root, pos - 1, h);
    int64_t take = 1, lo = u.start;
    if (u.parent >= 0 && g.k(u.parent) == grammar::kind::power) {
      int64_t bl = g.len(u.s);
      int64_t c = (u.start - u.parent_start) / bl;  // copy index of u
      take = std::min(c + 1, count);
      lo = u.start - (take - 1) * bl;
    }
    count -= take;
    pos = lo;
  }
  return pos;
}

// take `count` layer-h nodes starting at pos; returns the end of the
// rightmost one taken (pos-1 when none fit)
int64_t walk_right(const grammar& g, sym root, int h, int64_t pos,
                   int64_t count, int64_t n) {
  int64_t end = pos - 1;
  while (count > 0 && end < n) {
    grammar::pos_node u = g.alive_at(root, end + 1, h);
    int64_t take = 1, hi = u.start + g.len(u.s) - 1;
    if (u.parent >= 0 && g.k(u.parent) == grammar::kind::power) {
      int64_t bl = g.len(u.s);
      int64_t c = (u.start - u.parent_start) / bl;
      take = std::min(g.exponent(u.parent) - c, count);
      hi = u.start + take * bl - 1;
    }
    count -= take;
    end = hi;
  }
  return end;
}

uint64_t pair_id(int owner, int level, int64_t ul, int64_t uh, int64_t dl,
                 int64_t dh) {
  uint64_t x = mix64((uint64_t)owner, (uint64_t)level, (uint64_t)ul);
  return mix64(x, (uint64_t)uh, mix64((uint64_t)dl, (uint64_t)dh));
}

struct ctx {
  const grammar* g;
  sym root;
  int owner;
  int64_t n, C;
};

// child v of a concat parent: Y_l covers v plus C-1 predecessors, Y_r the
// following C nodes extended by the degree of the next node's parent
anchor_pair make_case1(const ctx& x, int h, int64_t v_start, int64_t v_end) {
  int64_t up_lo = walk_left(*x.g, x.root, h, v_start, x.C - 1);
  int64_t cnt = x.C;
  if (v_end < x.n)
    cnt += deg_of(*x.g, x.g->alive_at(x.root, v_end + 1, h).parent);
  int64_t down_hi = walk_right(*x.g, x.root, h, v_end + 1, cnt, x.n);
  return {pair_id(x.owner, h, up_lo, v_end, v_end + 1, down_hi),
          x.owner,  h, up_lo, v_end, v_end + 1, down_hi};
}

// edge child (copy index c) of a power parent: Y_l covers the weakly-left
// siblings plus C nodes before the block; Y_r gets the degree extension only
// past the block's end
anchor_pair make_case2(const ctx& x, int h, int64_t block_start, int64_t bl,
                       int64_t k, int64_t c) {
  int64_t v_end = block_start + (c + 1) * bl - 1;
  int64_t up_lo = walk_left(*x.g, x.root, h, block_start, x.C);
  int64_t cnt = x.C;
  if (c == k - 1 && v_end < x.n)
    cnt += deg_of(*x.g, x.g->alive_at(x.root, v_end + 1, h).parent);
  int64_t down_hi = walk_right(*x.g, x.root, h, v_end + 1, cnt, x.n);
  return {pair_id(x.owner, h, up_lo, v_end, v_end + 1, down_hi),
          x.owner,  h, up_lo, v_end, v_end + 1, down_hi};
}

bool edge_copy(int64_t k, int64_t C, int64_t c) {
  return c <= C || c >= k - (C + 1);
}

void collect_family(const ctx& x, sym s, int64_t start,
                    std::vector<anchor_pair>& out) {
  switch (x.g->k(s)) {
    case grammar::kind::letter:
      return;
    case grammar::kind::concat: {
      sym l = x.g->left(s), r = x.g->right(s);
      int64_t mid = start + x.g->len(l);
      int h = x.g->level(s) - 1;
      out.push_back(make_case1(x, h, start, mid - 1));
      out.push_back(make_case1(x, h, mid, start + x.g->len(s) - 1));
      collect_family(x, l, start, out);
      collect_family(x, r, mid, out);
      return;
    }
    case grammar::kind::power: {
      sym b = x.g->base(s);
      int64_t k = x.g->exponent(s), bl = x.g->len(b);
      int h = x.g->level(s) - 1;
      for (int64_t c = 0; c < k; ++c)
        if (edge_copy(k, x.C, c)) out.push_back(make_case2(x, h, start, bl, k, c));
      for (int64_t c = 0; c < k; ++c) collect_family(x, b, start + c * bl, out);
      return;
    }
  }
}

}  // namespace

int64_t anchor_window(int64_t n) {
  if (n < 1) fail_pre("anchor_window: empty string");
  return 8 * (int64_t)ceil_log2((uint64_t)n) + 8;
}

std::vector<anchor_pair> anchor_family(const grammar& g, grammar::sym root,
                                       int owner) {
  ctx x{&g, root, owner, g.len(root), anchor_window(g.len(root))};
  std::vector<anchor_pair> out;
  collect_family(x, root, 1, out);
  return out;
}

namespace {

// candidate pairs at layer h whose windows could overlap the edit column:
// scan outward from the node containing i, counting power blocks at their
// copy count saturated at C+2 (a window crosses at most one full block)
void collect_candidates(const ctx& x, int h, int64_t i,
                        std::unordered_map<uint64_t, anchor_pair>& m) {
  const grammar& g = *x.g;
  int64_t budget = 2 * x.C + 8;
  auto offer = [&](const anchor_pair& p) { m.emplace(p.id, p); };
  auto consider_single = [&](const grammar::pos_node& u) {
    if (u.parent < 0 || g.level(u.parent) != h + 1) return;
    if (g.k(u.parent) == grammar::kind::concat) {
      offer(make_case1(x, h, u.start, u.start + g.len(u.s) - 1));
    } else {
      int64_t bl = g.len(u.s), k = g.exponent(u.parent);
      int64_t c = (u.start - u.parent_start) / bl;
      if (edge_copy(k, x.C, c))
        offer(make_case2(x, h, u.parent_start, bl, k, c));
    }
  };
  auto consider_block = [&](const grammar::pos_node& u, int64_t c_lo,
                            int64_t c_hi) {
    if (g.level(u.parent) != h + 1) return;
    int64_t bl = g.len(u.s), k = g.exponent(u.parent);
    for (int64_t c = c_lo; c <= c_hi; ++c)
      if (edge_copy(k, x.C, c))
        offer(make_case2(x, h, u.parent_start, bl, k, c));
  };

  grammar::pos_node u0 = g.alive_at(x.root, i, h);
  consider_single(u0);
  int64_t steps = 0, p = u0.start;
  while (steps <= budget && p > 1) {
    grammar::pos_node u = g.alive_at(x.root, p - 1, h);
    if (u.parent >= 0 && g.k(u.parent) == grammar::kind::power) {
      int64_t bl = g.len(u.s);
      int64_t c = (u.start - u.parent_start) / bl;
      consider_block(u, 0, c);
      steps += std::min(c + 1, x.C + 2);
      p = u.parent_start;
    } else {
      consider_single(u);
      ++steps;
      p = u.start;
    }
  }
  steps = 0;
  p = u0.start + g.len(u0.s);
  while (steps <= budget && p <= x.n) {
    grammar::pos_node u = g.alive_at(x.root, p, h);
    if (u.parent >= 0 && g.k(u.parent) == grammar::kind::power) {
      int64_t bl = g.len(u.s), k = g.exponent(u.parent);
      int64_t c = (u.start - u.parent_start) / bl;
      consider_block(u, c, k - 1);
      steps += std::min(k - c, x.C + 2);
      p = u.parent_start + k * bl;
    } else {
      consider_single(u);
      ++steps;
      p = u.start + g.len(u.s);
    }
  }
}

bool spans_match(const anchor_pair& a, const anchor_pair& b) {
  return a.level == b.level && a.up_lo == b.up_lo && a.up_hi == b.up_hi &&
         a.down_lo == b.down_lo && a.down_hi == b.down_hi;
}

bool contains_column(const anchor_pair& p, int64_t i) {
  return (p.up_lo <= i && i <= p.up_hi) ||
         (p.down_lo <= i && i <= p.down_hi);
}

// reconstruct the pair owned by the layer-p.level node ending at p.up_hi, if
// one exists with the same id; lets the diff resolve candidates found by only
// one tree's scan (the scans saturate on different block structure)
std::optional<anchor_pair> probe(const ctx& x, const anchor_pair& p) {
  const grammar& g = *x.g;
  if (p.level >= g.level(x.root)) return std::nullopt;
  grammar::pos_node u = g.alive_at(x.root, p.up_hi, p.level);
  if (u.parent < 0 || g.level(u.parent) != p.level + 1) return std::nullopt;
  int64_t u_end = u.start + g.len(u.s) - 1;
  if (u_end != p.up_hi) return std::nullopt;
  anchor_pair q;
  if (g.k(u.parent) == grammar::kind::concat) {
    q = make_case1(x, p.level, u.start, u_end);
  } else {
    int64_t bl = g.len(u.s), k = g.exponent(u.parent);
    int64_t c = (u.start - u.parent_start) / bl;
    if (!edge_copy(k, x.C, c)) return std::nullopt;
    q = make_case2(x, p.level, u.parent_start, bl, k, c);
  }
  if (q.id != p.id) return std::nullopt;
  return q;
}

}  // namespace

anchor_diff anchor_diff_update(const grammar& g, grammar::sym before,
                               grammar::sym after, int owner) {
  int64_t n = g.len(before);
  if (g.len(after) != n) fail_pre("anchor diff: length mismatch");
  if (before == after) return {};
  int64_t i = g.lcp(before, after) + 1;
  if (i > n) fail_pre("anchor diff: distinct roots with equal content");
  ctx xb{&g, before, owner, n, anchor_window(n)};
  ctx xa{&g, after, owner, n, anchor_window(n)};
  std::unordered_map<uint64_t, anchor_pair> cb, ca;
  int hb = g.level(before), ha = g.level(after);
  for (int h = 0; h < std::max(hb, ha); ++h) {
    if (h < hb) collect_candidates(xb, h, i, cb);
    if (h < ha) collect_candidates(xa, h, i, ca);
  }
  auto resolve = [](const std::unordered_map<uint64_t, anchor_pair>& m,
                    const ctx& x, uint64_t id, const anchor_pair& hint)
      -> std::optional<anchor_pair> {
    auto it = m.find(id);
    if (it != m.end()) return it->second;
    return probe(x, hint);
  };
  anchor_diff d;
  auto classify = [&](uint64_t id, const anchor_pair& hint) {
    std::optional<anchor_pair> rb = resolve(cb, xb, id, hint);
    std::optional<anchor_pair> ra = resolve(ca, xa, id, hint);
    if (rb && ra && spans_match(*rb, *ra) && !contains_column(*rb, i)) return;
    if (rb) d.deleted.push_back(*rb);
    if (ra) d.inserted.push_back(*ra);
  };
  for (const auto& [id, rb] : cb) classify(id, rb);
  for (const auto& [id, ra] : ca)
    if (!cb.count(id)) classify(id, ra);
  return d;
}

}  // namespace dynlcs
