#include "dynlcs/full_lcs.hpp"

#include <algorithm>
#include <unordered_set>

#include "dynlcs/util.hpp"

namespace dynlcs {

namespace {

std::vector<int> reversed(const std::vector<int>& s) {
  return {s.rbegin(), s.rend()};
}

void check_letters(const std::vector<int>& s) {
  for (int c : s)
    if (c < 1 || c >= pair_families::kSentinelBase)
      fail_pre("full_lcs: letter outside working alphabet");
}

}  // namespace

full_engine::full_engine(const std::vector<int>& s, const std::vector<int>& t,
                         uint64_t seed)
    : g_(seed), fams_(g_) {
  if (s.empty() || t.empty()) fail_pre("full_lcs: empty input string");
  check_letters(s);
  check_letters(t);
  const std::vector<int>* in[2] = {&s, &t};
  for (int w = 0; w < 2; ++w) {
    len_[w] = (int64_t)in[w]->size();
    root_[w] = g_.parse_string(*in[w]);
    rootr_[w] = g_.parse_string(reversed(*in[w]));
    for (const auto& ap : anchor_family(g_, root_[w], w)) insert_anchor(w, ap);
  }
  recompute_answer();
}

grammar::sym full_engine::slice(grammar::sym root, int64_t i, int64_t j) {
  if (i == 1 && j == g_.len(root)) return root;
  return g_.parse_rounds(g_.decompose(root, i, j).joined());
}

void full_engine::insert_anchor(int which, const anchor_pair& ap) {
  int64_t n = len_[which];
  grammar::sym p = slice(rootr_[which], n + 1 - ap.up_hi, n + 1 - ap.up_lo);
  grammar::sym q = ap.down_hi < ap.down_lo
                       ? -1
                       : slice(root_[which], ap.down_lo, ap.down_hi);
  fams_.insert_pair((int64_t)ap.id, p, q, which == 0);
  live_[which].emplace(ap.id, ap);
}

full_engine::answer full_engine::substitute(int which, int64_t pos,
                                            int letter) {
  if (which < 0 || which > 1) fail_pre("full_lcs: bad string selector");
  if (pos < 1 || pos > len_[which]) fail_pre("full_lcs: position out of range");
  if (letter < 1 || letter >= pair_families::kSentinelBase)
    fail_pre("full_lcs: letter outside working alphabet");
  grammar::sym before = root_[which];
  grammar::sym after = g_.substitute(before, pos, letter);
  if (after == before) return cache_;  // content unchanged
  root_[which] = after;
  rootr_[which] = g_.substitute(rootr_[which], len_[which] + 1 - pos, letter);
  anchor_diff d = anchor_diff_update(g_, before, after, which);
  // a span-preserving pair reappears under its old id with new content;
  // updating it in place keeps the unchanged half of its trie footprint
  std::unordered_set<uint64_t> refreshed;
  for (const auto& ap : d.inserted) refreshed.insert(ap.id);
  for (const auto& ap : d.deleted) {
    if (refreshed.count(ap.id)) continue;
    fams_.delete_pair((int64_t)ap.id);
    live_[which].erase(ap.id);
  }
  for (const auto& ap : d.inserted) {
    if (live_[which].count(ap.id)) {
      // the changed column sits in exactly one of the two disjoint windows,
      // so only that side's string needs re-extraction
      int64_t n = len_[which];
      if (ap.up_lo <= pos && pos <= ap.up_hi) {
        grammar::sym p =
            slice(rootr_[which], n + 1 - ap.up_hi, n + 1 - ap.up_lo);
        fams_.update_side((int64_t)ap.id, 0, p, which == 0);
      } else if (ap.down_lo <= pos && pos <= ap.down_hi) {
        grammar::sym q = slice(root_[which], ap.down_lo, ap.down_hi);
        fams_.update_side((int64_t)ap.id, 1, q, which == 0);
      }
      live_[which][ap.id] = ap;
    } else {
      insert_anchor(which, ap);
    }
  }
  recompute_answer();
  return cache_;
}

void full_engine::recompute_answer() {
  if (len_[0] == 1 || len_[1] == 1) {
    // length-1 strings have edge-free parse trees and thus empty anchor
    // families; answer directly by scanning for the single letter
    int small = len_[0] == 1 ? 0 : 1;
    int c = g_.letter_at(root_[small], 1);
    auto other = g_.expand(root_[1 - small]);
    auto it = std::find(other.begin(), other.end(), c);
    if (it == other.end()) {
      cache_ = {0, -1, -1};
      return;
    }
    int64_t pos = (it - other.begin()) + 1;
    cache_ = {1, small == 0 ? 1 : pos, small == 0 ? pos : 1};
    return;
  }
  auto b = fams_.best();
  if (!b) fail_pre("full_lcs: families unexpectedly empty");
  if (b->total == 0) {
    cache_ = {0, -1, -1};
    return;
  }
  // the winning records' common suffix ends at up_hi, the common prefix
  // starts at down_lo = up_hi + 1, so the match starts lcp_p earlier
  const anchor_pair& red = live_[0].at((uint64_t)b->red_id);
  const anchor_pair& blue = live_[1].at((uint64_t)b->blue_id);
  cache_ = {b->total, red.up_hi + 1 - b->lcp_p, blue.up_hi + 1 - b->lcp_p};
}

int64_t full_engine::size(int which) const {
  if (which < 0 || which > 1) fail_pre("full_lcs: bad string selector");
  return len_[which];
}

int full_engine::letter_at(int which, int64_t pos) const {
  if (which < 0 || which > 1) fail_pre("full_lcs: bad string selector");
  return g_.letter_at(root_[which], pos);
}

void full_engine::check_invariants() {
  for (int w = 0; w < 2; ++w) {
    auto fresh = anchor_family(g_, root_[w], w);
    if (fresh.size() != live_[w].size())
      fail_pre("full_lcs: anchor family size drifted");
    for (const auto& ap : fresh) {
      auto it = live_[w].find(ap.id);
      if (it == live_[w].end()) fail_pre("full_lcs: anchor missing");
      const anchor_pair& have = it->second;
      if (have.level != ap.level || have.up_lo != ap.up_lo ||
          have.up_hi != ap.up_hi || have.down_lo != ap.down_lo ||
          have.down_hi != ap.down_hi)
        fail_pre("full_lcs: anchor spans drifted");
      if (!fams_.has_pair((int64_t)ap.id))
        fail_pre("full_lcs: family record missing");
      auto rec = fams_.get((int64_t)ap.id);
      if (rec.red != (w == 0)) fail_pre("full_lcs: record color wrong");
      int64_t n = len_[w];
      grammar::sym p = slice(rootr_[w], n + 1 - ap.up_hi, n + 1 - ap.up_lo);
      grammar::sym q = ap.down_hi < ap.down_lo
                           ? -1
                           : slice(root_[w], ap.down_lo, ap.down_hi);
      if (rec.p != p || rec.q != q)
        fail_pre("full_lcs: record handles drifted");
    }
  }
  fams_.check_invariants();
}

}  // namespace dynlcs
