#pragma once
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "dynlcs/anchors.hpp"
#include "dynlcs/grammar.hpp"
#include "dynlcs/pair_families.hpp"

namespace dynlcs {

// fully dynamic longest common substring of two strings under single-letter
// substitutions.
//
// both strings and their reverses are kept as grammar roots.  every anchor
// pair (Y_l, Y_r) of S becomes the red record (Y_l reversed, Y_r), every
// anchor pair of T a blue one; the family structure then maximizes
// lcp(P,P') + lcp(Q,Q') over red-blue record pairs, which by the anchoring
// property equals the LCS length: the winning records' windows overlap on a
// common suffix of length lcp_p ending at up_hi and a common prefix of
// length lcp_q starting at down_lo in both strings.  a substitution reparses
// the two roots, turns the anchor-family diff into record updates, and reads
// the answer back off the family structure.
class full_engine {
 public:
  // letters live in [1, kSentinelBase); the seed fixes grammar randomness
  full_engine(const std::vector<int>& s, const std::vector<int>& t,
              uint64_t seed = 0x9e3779b97f4a7c15ull);

  struct answer {
    int64_t length;
    int64_t s_pos, t_pos;  // 1-based start positions; -1 when length is 0
  };

  // which: 0 substitutes in S, 1 in T; pos is 1-based
  answer substitute(int which, int64_t pos, int letter);
  answer current() const { return cache_; }

  int64_t size(int which) const;
  int letter_at(int which, int64_t pos) const;
  int64_t record_count() const { return fams_.live_count(); }
  grammar& gr() { return g_; }
  // recomputes both anchor families from scratch and checks the live record
  // set matches them, handle by handle; then checks the family structure
  void check_invariants();

 private:
  grammar::sym slice(grammar::sym root, int64_t i, int64_t j);
  void insert_anchor(int which, const anchor_pair& ap);
  void recompute_answer();

  grammar g_;
  grammar::sym root_[2], rootr_[2];
  int64_t len_[2];
  pair_families fams_;
  std::unordered_map<uint64_t, anchor_pair> live_[2];
  answer cache_{0, -1, -1};
};

}  // namespace dynlcs
