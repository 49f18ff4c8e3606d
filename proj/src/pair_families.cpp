#include "dynlcs/pair_families.hpp"

#include <unordered_map>

#include "dynlcs/util.hpp"

namespace dynlcs {

bool pair_families::cmp::operator()(
    const std::pair<grammar::sym, bicolored_trees::node>& a,
    const std::pair<grammar::sym, bicolored_trees::node>& b) const {
  if (a.first == b.first) return false;  // hash-consing: equal content
  int64_t l = g->lcp(a.first, b.first);
  // sentinels make stored strings prefix-free, so both sides have letter l+1
  if (l >= g->len(a.first)) return true;
  if (l >= g->len(b.first)) return false;
  return g->letter_at(a.first, l + 1) < g->letter_at(b.first, l + 1);
}

pair_families::pair_families(grammar& g)
    : g_(&g), sets_{entryset(cmp{&g}), entryset(cmp{&g})} {}

grammar::sym pair_families::terminate(grammar::sym s) {
  grammar::sym sent = g_->letter((int)(kSentinelBase + seq_));
  return s < 0 ? sent : g_->concat_roots(s, sent);
}

bicolored_trees::node pair_families::trie_insert(int trie, grammar::sym term) {
  int64_t tlen = g_->len(term);
  auto& st = sets_[trie];
  bicolored_trees::node leaf;
  if (st.empty()) {
    leaf = bico_.attach_leaf(trie, bico_.root(trie), tlen);
    ++attaches_[trie];
    st.insert({term, leaf});
    return leaf;
  }
  auto it = st.lower_bound({term, -1});
  int64_t d = -1;
  bicolored_trees::node nb = -1;
  if (it != st.end()) {
    d = g_->lcp(term, it->first);
    nb = it->second;
  }
  if (it != st.begin()) {
    auto pv = std::prev(it);
    int64_t dp = g_->lcp(term, pv->first);
    if (dp > d) {
      d = dp;
      nb = pv->second;
    }
  }
  // the longest prefix of term in the trie is its lcp with an ordered-set
  // neighbor; sentinels keep d strictly below both leaf depths
  bool exact;
  bicolored_trees::node locus = bico_.ancestor_at(trie, nb, d, exact);
  if (!exact) {
    locus = bico_.split_edge(trie, locus, d);
    ++splits_[trie];
  }
  leaf = bico_.attach_leaf(trie, locus, tlen);
  ++attaches_[trie];
  st.insert(it, {term, leaf});
  return leaf;
}

void pair_families::insert_pair(int64_t id, grammar::sym p, grammar::sym q,
                                bool red) {
  if (recs_.count(id)) fail_pre("pair_families: duplicate id");
  if (p < -1 || q < -1) fail_pre("pair_families: bad handle");
  live_rec r;
  r.p = p;
  r.q = q;
  r.red = red;
  r.term[0] = terminate(p);
  r.term[1] = terminate(q);
  ++seq_;
  r.leaf[0] = trie_insert(0, r.term[0]);
  r.leaf[1] = trie_insert(1, r.term[1]);
  bico_.add_label(id, r.leaf[0], r.leaf[1], red);
  recs_.emplace(id, r);
  ++updates_;
  maybe_rebuild();
}

void pair_families::delete_pair(int64_t id) {
  auto it = recs_.find(id);
  if (it == recs_.end()) fail_pre("pair_families: unknown id");
  bico_.remove_label(id);
  recs_.erase(it);
  ++dead_[0];
  ++dead_[1];
  ++updates_;
  maybe_rebuild();
}

void pair_families::update_pair(int64_t id, grammar::sym p, grammar::sym q,
                                bool red) {
  auto it = recs_.find(id);
  if (it == recs_.end()) fail_pre("pair_families: unknown id");
  if (p < -1 || q < -1) fail_pre("pair_families: bad handle");
  live_rec& r = it->second;
  if (r.red != red) fail_pre("pair_families: color change on update");
  if (p == r.p && q == r.q) return;
  grammar::sym fresh[2] = {-1, -1};
  if (p != r.p) fresh[0] = terminate(p);
  if (q != r.q) fresh[1] = terminate(q);
  ++seq_;
  if (fresh[0] >= 0) {
    r.p = p;
    r.term[0] = fresh[0];
    r.leaf[0] = trie_insert(0, r.term[0]);
    bico_.move_label(id, 0, r.leaf[0]);
    ++dead_[0];
    ++updates_;
  }
  if (fresh[1] >= 0) {
    r.q = q;
    r.term[1] = fresh[1];
    r.leaf[1] = trie_insert(1, r.term[1]);
    bico_.move_label(id, 1, r.leaf[1]);
    ++dead_[1];
    ++updates_;
  }
  maybe_rebuild();
}

void pair_families::update_side(int64_t id, int side, grammar::sym s,
                                bool red) {
  auto it = recs_.find(id);
  if (it == recs_.end()) fail_pre("pair_families: unknown id");
  if (side < 0 || side > 1 || s < -1) fail_pre("pair_families: bad handle");
  live_rec& r = it->second;
  if (r.red != red) fail_pre("pair_families: color change on update");
  grammar::sym& cur = side == 0 ? r.p : r.q;
  if (s == cur) return;
  cur = s;
  r.term[side] = terminate(s);
  ++seq_;
  r.leaf[side] = trie_insert(side, r.term[side]);
  bico_.move_label(id, side, r.leaf[side]);
  ++dead_[side];
  ++updates_;
  maybe_rebuild();
}

bool pair_families::has_pair(int64_t id) const { return recs_.count(id) > 0; }

pair_families::rec pair_families::get(int64_t id) const {
  auto it = recs_.find(id);
  if (it == recs_.end()) fail_pre("pair_families: unknown id");
  return {it->second.p, it->second.q, it->second.red};
}

std::optional<pair_families::answer> pair_families::best() const {
  auto b = bico_.global_best();
  if (!b) return std::nullopt;
  return answer{b->red_label, b->blue_label, b->lcp0, b->lcp1, b->total};
}

void pair_families::maybe_rebuild() {
  if (updates_ >= threshold_ || dead_[0] > (int64_t)recs_.size() ||
      dead_[1] > (int64_t)recs_.size())
    rebuild();
}

void pair_families::rebuild() {
  // live terms are re-inserted in trie order taken from the old sets, so the
  // predecessor is the sole lcp partner and set inserts are end-hinted
  std::unordered_map<grammar::sym, live_rec*> by_term[2];
  std::vector<grammar::sym> order[2];
  for (auto& [id, r] : recs_) {
    by_term[0].emplace(r.term[0], &r);
    by_term[1].emplace(r.term[1], &r);
  }
  for (int t = 0; t < 2; ++t) {
    order[t].reserve(recs_.size());
    for (const auto& e : sets_[t])
      if (by_term[t].count(e.first)) order[t].push_back(e.first);
  }
  bico_.reset();
  sets_[0].clear();
  sets_[1].clear();
  // structure first: decomposition rebuilds that fire mid-load shuffle no
  // points this way, and every label is then placed once, in bulk, against
  // the settled decomposition
  for (int t = 0; t < 2; ++t) {
    grammar::sym prev = -1;
    bicolored_trees::node prev_leaf = -1;
    for (grammar::sym term : order[t]) {
      int64_t tlen = g_->len(term);
      bicolored_trees::node leaf;
      if (prev < 0) {
        leaf = bico_.attach_leaf(t, bico_.root(t), tlen);
      } else {
        int64_t d = g_->lcp(term, prev);
        bool exact;
        bicolored_trees::node locus = bico_.ancestor_at(t, prev_leaf, d, exact);
        if (!exact) {
          locus = bico_.split_edge(t, locus, d);
          ++splits_[t];
        }
        leaf = bico_.attach_leaf(t, locus, tlen);
      }
      ++attaches_[t];
      sets_[t].emplace_hint(sets_[t].end(), term, leaf);
      by_term[t].at(term)->leaf[t] = leaf;
      prev = term;
      prev_leaf = leaf;
    }
  }
  std::vector<bicolored_trees::bulk_label> labels;
  labels.reserve(recs_.size());
  for (auto& [id, r] : recs_)
    labels.push_back({id, r.leaf[0], r.leaf[1], r.red});
  bico_.add_labels_bulk(labels);
  dead_[0] = dead_[1] = 0;
  updates_ = 0;
  threshold_ = std::max<int64_t>(2, 2 * (int64_t)recs_.size());
  ++rebuilds_;
}

std::vector<std::pair<grammar::sym, bicolored_trees::node>>
pair_families::trie_entries(int trie) const {
  return {sets_[trie].begin(), sets_[trie].end()};
}

void pair_families::check_invariants() const {
  bico_.check_invariants();
  int64_t live = (int64_t)recs_.size();
  for (int t = 0; t < 2; ++t) {
    if ((int64_t)sets_[t].size() != live + dead_[t])
      fail_pre("pair_families: leaf census mismatch");
    if (live == 0 && dead_[t] != 0)
      fail_pre("pair_families: dead leaves without live records");
    if (live > 0 && live + dead_[t] > 2 * live)
      fail_pre("pair_families: leaf count exceeds twice the live records");
  }
  if (updates_ >= threshold_) fail_pre("pair_families: rebuild overdue");
  for (const auto& [id, r] : recs_) {
    if (!bico_.has_label(id)) fail_pre("pair_families: label missing");
    for (int t = 0; t < 2; ++t)
      if (bico_.weight(t, r.leaf[t]) != g_->len(r.term[t]))
        fail_pre("pair_families: leaf depth != string length");
  }
}

}  // namespace dynlcs
