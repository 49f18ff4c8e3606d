#include "dynlcs/partial_lcs.hpp"

#include <algorithm>

#include "dynlcs/util.hpp"

namespace dynlcs {

namespace {

std::vector<int> reversed(std::vector<int> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

hia_tree fwd_tree(const suffix_index& idx) {
  hia_tree t;
  t.parent = idx.tree_parent();
  t.weight = idx.tree_depth();
  t.label = idx.tree_leaf_label();
  return t;
}

// Leaf for the reversed-text suffix starting at i corresponds to the text
// prefix ending at n - i + 1; it is labeled with the position right after
// that prefix, so a shared label j pairs "t[..j-1] ends with the U part"
// with "t[j..] starts with the V part".
hia_tree rev_tree(const suffix_index& idx) {
  hia_tree t = fwd_tree(idx);
  int64_t n = idx.size();
  for (auto& l : t.label)
    if (l >= 0) l = n - l + 2;
  return t;
}

}  // namespace

partial_lcs::partial_lcs(std::vector<int> s, std::vector<int> t)
    : s_(std::move(s)),
      fwd_(t),
      rev_(reversed(std::move(t))),
      hia_(fwd_tree(fwd_), rev_tree(rev_)) {
  if (s_.empty()) fail_pre("partial_lcs: s must be non-empty");
  for (int c : s_)
    if (c < 1) fail_pre("partial_lcs: letters must be >= 1");

  // greedy maximal decomposition: each block is the longest prefix of the
  // remainder occurring in t, or a single absent letter
  const int64_t n = (int64_t)s_.size();
  int64_t pos = 1;
  while (pos <= n) {
    if (fwd_.letter_occurrence(s_[pos - 1]) == 0) {
      blocks_[pos] = {pos, 0};
      pos += 1;
      continue;
    }
    int64_t lo = 1, hi = fwd_.size() + 1, plen = 0;
    while (pos + plen <= n) {
      auto [l2, h2] = fwd_.narrow_letter(lo, hi, plen, s_[pos + plen - 1]);
      if (l2 > h2) break;
      lo = l2, hi = h2, ++plen;
    }
    blocks_[pos] = {pos + plen - 1, fwd_.suffix_at(lo)};
    pos += plen;
  }
  for (auto& [start, b] : blocks_) recompute_candidate(start);
  recompute_candidate(n + 1);
}

void partial_lcs::drop_candidate(int64_t key) {
  auto it = candidates_.find(key);
  if (it == candidates_.end()) return;
  values_.erase({it->second.value, key});
  candidates_.erase(it);
}

void partial_lcs::recompute_candidate(int64_t key) {
  drop_candidate(key);
  const int64_t n = (int64_t)s_.size(), tn = fwd_.size();

  // U: longest suffix of the <= 2 blocks ending at key-1 occurring in t,
  // computed as a prefix of the reversed pair in the reversed index
  int64_t ulen = 0;
  int q_node = 0;
  auto rit = blocks_.lower_bound(key);
  if (rit != blocks_.begin()) {
    auto l1 = std::prev(rit);
    if (l1->second.occ != 0) {
      int64_t c = l1->second.occ, d = c + (l1->second.end - l1->first);
      int64_t yc = 1, yd = 0;
      if (l1 != blocks_.begin()) {
        auto l2 = std::prev(l1);
        if (l2->second.occ != 0) {
          int64_t c2 = l2->second.occ, d2 = c2 + (l2->second.end - l2->first);
          yc = tn - d2 + 1, yd = tn - c2 + 1;
        }
      }
      auto r = rev_.extend_prefix(tn - d + 1, tn - c + 1, yc, yd);
      ulen = r.len;
      q_node = rev_.locus(r.sa_lo, r.sa_hi);
    }
  }

  // V: longest prefix of the <= 2 blocks starting at key occurring in t
  int64_t vlen = 0;
  int p_node = 0;
  if (key <= n) {
    auto r1 = blocks_.find(key);
    if (r1 == blocks_.end()) fail_pre("recompute_candidate: key is not a gap");
    if (r1->second.occ != 0) {
      int64_t c = r1->second.occ, d = c + (r1->second.end - r1->first);
      int64_t yc = 1, yd = 0;
      auto r2 = std::next(r1);
      if (r2 != blocks_.end() && r2->second.occ != 0) {
        yc = r2->second.occ, yd = yc + (r2->second.end - r2->first);
      }
      auto r = fwd_.extend_prefix(c, d, yc, yd);
      vlen = r.len;
      p_node = fwd_.locus(r.sa_lo, r.sa_hi);
    }
  }

  if (ulen == 0 && vlen == 0) return;
  auto res = hia_.query(p_node, vlen, q_node, ulen);
  if (!res || res->value <= 0) fail_pre("recompute_candidate: empty induced answer");
  candidates_[key] = {res->value, key - res->w2, res->label - res->w2};
  values_.insert({res->value, key});
}

bool partial_lcs::try_merge(int64_t key) {
  auto rit = blocks_.find(key);
  if (rit == blocks_.end() || rit == blocks_.begin()) return false;
  auto lit = std::prev(rit);
  if (lit->second.occ == 0 || rit->second.occ == 0) return false;
  int64_t lc = lit->second.occ, ld = lc + (lit->second.end - lit->first);
  int64_t rc = rit->second.occ, rd = rc + (rit->second.end - rit->first);
  auto r = fwd_.extend_prefix(lc, ld, rc, rd);
  if (r.len < (ld - lc + 1) + (rd - rc + 1)) return false;
  lit->second.end = rit->second.end;
  lit->second.occ = r.witness;
  blocks_.erase(rit);
  drop_candidate(key);
  return true;
}

void partial_lcs::substitute(int64_t pos, int letter) {
  const int64_t n = (int64_t)s_.size();
  if (pos < 1 || pos > n) fail_pre("substitute: position out of range");
  if (letter < 1) fail_pre("substitute: letters must be >= 1");
  stats_ = {};
  if (s_[pos - 1] == letter) return;
  s_[pos - 1] = letter;

  auto it = std::prev(blocks_.upper_bound(pos));
  const int64_t bs = it->first, be = it->second.end, occ = it->second.occ;
  blocks_.erase(it);
  drop_candidate(bs);
  if (pos > bs) blocks_[bs] = {pos - 1, occ};
  blocks_[pos] = {pos, fwd_.letter_occurrence(letter)};
  if (pos < be) blocks_[pos + 1] = {be, occ + (pos + 1 - bs)};

  // restore the invariant that adjacent blocks never concatenate to a
  // substring of t; each merge can only expose its two outer gaps
  std::vector<int64_t> work = {bs, pos, pos + 1, be + 1};
  for (size_t wi = 0; wi < work.size(); ++wi) {
    int64_t k = work[wi];
    if (k <= 1 || k > n) continue;
    if (!blocks_.count(k)) continue;
    if (try_merge(k)) {
      stats_.merges++;
      auto mit = std::prev(blocks_.upper_bound(k));
      work.push_back(mit->first);
      work.push_back(mit->second.end + 1);
    }
  }

  // candidates of every gap whose two-block context touches the changed
  // region: one gap left of it, the gaps inside, two gaps right of it
  auto a_it = std::prev(blocks_.upper_bound(bs));
  auto e_it = std::prev(blocks_.upper_bound(be));
  const int64_t region_end = e_it->second.end;
  std::vector<int64_t> keys;
  if (a_it != blocks_.begin()) keys.push_back(std::prev(a_it)->first);
  for (auto jt = a_it; jt != blocks_.end() && jt->first <= region_end; ++jt)
    keys.push_back(jt->first);
  auto jt = blocks_.upper_bound(region_end);
  if (jt != blocks_.end()) {
    keys.push_back(jt->first);
    ++jt;
    keys.push_back(jt != blocks_.end() ? jt->first : n + 1);
  } else {
    keys.push_back(n + 1);
  }
  for (int64_t k : keys) {
    recompute_candidate(k);
    stats_.candidates_recomputed++;
  }
}

partial_lcs::result partial_lcs::lcs() const {
  if (values_.empty()) return {0, 0, 0};
  auto [value, key] = *values_.rbegin();
  const candidate& c = candidates_.at(key);
  return {value, c.s_pos, c.t_pos};
}

std::vector<partial_lcs::block_view> partial_lcs::blocks() const {
  std::vector<block_view> out;
  out.reserve(blocks_.size());
  for (auto& [start, b] : blocks_) out.push_back({start, b.end, b.occ});
  return out;
}

}  // namespace dynlcs
