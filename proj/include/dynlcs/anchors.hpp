#pragma once

#include <cstdint>
#include <vector>

#include "dynlcs/grammar.hpp"

namespace dynlcs {

// Anchor pair of a parse-tree node v: Y_l = gen of a bounded window of
// same-layer nodes ending at v, Y_r = gen of the following window. Every
// common substring of two strings admits a split X = X_l·X_r with X_l a
// suffix of some Y_l and X_r a prefix of the matching Y_r in both strings'
// families, so the best red/blue combination of (suffix, prefix) overlaps
// recovers the longest common substring.
struct anchor_pair {
  uint64_t id;  // stable hash of (owner, level, spans); content not included
  int owner;    // caller-chosen tag (which string the pair came from)
  int level;    // layer whose node windows the spans cover
  int64_t up_lo, up_hi;      // Y_l = content [up_lo..up_hi], ends at v
  int64_t down_lo, down_hi;  // Y_r = content [down_lo..down_hi]; may be empty
};

struct anchor_diff {
  std::vector<anchor_pair> deleted, inserted;
};

// window length: covers any staircase (<= 8 log n + 4 powered symbols)
int64_t anchor_window(int64_t n);

// all pairs of the parse tree of root, one per parent-child edge of a
// concat instance plus the edge children of every power instance
std::vector<anchor_pair> anchor_family(const grammar& g, grammar::sym root,
                                       int owner);

// events turning family(before) into family(after); the trees must generate
// equal-length strings differing by one substitution (or be equal)
anchor_diff anchor_diff_update(const grammar& g, grammar::sym before,
                               grammar::sym after, int owner);

}  // namespace dynlcs
