#include "dynlcs/core_strings.hpp"

#include <algorithm>
#include <numeric>

#include "dynlcs/util.hpp"

namespace dynlcs {

namespace {
inline uint64_t locus_key(int64_t lo, int64_t hi) {
  return (uint64_t)lo * 0x200003ull + (uint64_t)hi;
}
}  // namespace

suffix_index::suffix_index(std::vector<int> text) : text_(std::move(text)) {
  n_ = (int64_t)text_.size();
  if (n_ == 0) fail_pre("suffix_index: text must be non-empty");
  for (int c : text_)
    if (c < 1) fail_pre("suffix_index: letters must be >= 1");
  build_sa();
  build_lcp();
  build_sparse();
  build_tree();
  for (int64_t i = n_; i >= 1; --i) first_occ_[text_[i - 1]] = i;
}

void suffix_index::build_sa() {
  const int64_t m = n_ + 1;  // suffixes of text + terminator
  auto at = [&](int64_t i) { return i < n_ ? text_[i] : 0; };
  std::vector<int64_t> r(m), nr(m);
  sa_.resize(m);
  std::iota(sa_.begin(), sa_.end(), 0);
  for (int64_t i = 0; i < m; ++i) r[i] = at(i);
  for (int64_t k = 1;; k <<= 1) {
    auto cmp = [&](int64_t a, int64_t b) {
      if (r[a] != r[b]) return r[a] < r[b];
      int64_t ra = a + k < m ? r[a + k] : -1;
      int64_t rb = b + k < m ? r[b + k] : -1;
      return ra < rb;
    };
    std::sort(sa_.begin(), sa_.end(), cmp);
    nr[sa_[0]] = 0;
    for (int64_t i = 1; i < m; ++i)
      nr[sa_[i]] = nr[sa_[i - 1]] + (cmp(sa_[i - 1], sa_[i]) ? 1 : 0);
    r = nr;
    if (r[sa_[m - 1]] == m - 1) break;
  }
  rank_.resize(m);
  for (int64_t i = 0; i < m; ++i) rank_[sa_[i]] = i;
}

void suffix_index::build_lcp() {
  const int64_t m = n_ + 1;
  auto at = [&](int64_t i) { return i < n_ ? text_[i] : 0; };
  lcp_.assign(m, 0);
  int64_t h = 0;
  for (int64_t i = 0; i < m; ++i) {
    if (h > 0) --h;
    int64_t ri = rank_[i];
    if (ri == 0) {
      h = 0;
      continue;
    }
    int64_t j = sa_[ri - 1];
    while (i + h < m && j + h < m && at(i + h) == at(j + h)) ++h;
    lcp_[ri] = h;
  }
}

void suffix_index::build_sparse() {
  const int64_t m = n_ + 1;
  log2_.assign(m + 1, 0);
  for (int64_t i = 2; i <= m; ++i) log2_[i] = log2_[i / 2] + 1;
  int64_t levels = log2_[m] + 1;
  sparse_.assign(levels, std::vector<int64_t>(m));
  sparse_[0] = lcp_;
  for (int64_t k = 1; k < levels; ++k)
    for (int64_t i = 0; i + (int64_t(1) << k) <= m; ++i)
      sparse_[k][i] = std::min(sparse_[k - 1][i], sparse_[k - 1][i + (int64_t(1) << (k - 1))]);
}

int64_t suffix_index::rmq(int64_t lo, int64_t hi) const {
  int64_t k = log2_[hi - lo + 1];
  return std::min(sparse_[k][lo], sparse_[k][hi - (int64_t(1) << k) + 1]);
}

int64_t suffix_index::lce0(int64_t i, int64_t j) const {
  if (i == j) return n_ + 1 - i;
  int64_t a = rank_[i], b = rank_[j];
  if (a > b) std::swap(a, b);
  return rmq(a + 1, b);
}

int64_t suffix_index::lce(int64_t i, int64_t j) const {
  if (i < 1 || j < 1 || i > n_ + 2 || j > n_ + 2) fail_pre("lce: position out of range");
  if (i == n_ + 2 || j == n_ + 2) return 0;
  return lce0(i - 1, j - 1);
}

// Three-way compare of the continuation of suffix sa_[rank_idx] after plen
// matched letters against the chunk text[c..c+klen-1] (c 1-based). A suffix
// that runs out (or hits the terminator) compares below any real chunk letter.
int suffix_index::cmp_continuation(int64_t rank_idx, int64_t plen, int64_t c, int64_t klen) const {
  const int64_t m = n_ + 1;
  int64_t s = sa_[rank_idx] + plen;  // 0-based continuation start
  int64_t e = 0;
  if (s < m) e = std::min(lce0(s, c - 1), klen);
  if (e >= klen) return 0;
  int av = (s + e < m) ? (s + e < n_ ? text_[s + e] : 0) : -1;
  int bv = text_[c - 1 + e];
  return av < bv ? -1 : (av > bv ? 1 : 0);
}

// Narrow the pattern interval [lo, hi] (pattern length plen, 0-based ranks)
// to the sub-interval whose suffixes continue with text[c..c+klen-1].
std::pair<int64_t, int64_t> suffix_index::narrow_range(int64_t lo, int64_t hi, int64_t plen,
                                                       int64_t c, int64_t klen) const {
  int64_t l = lo, r = hi + 1;
  while (l < r) {
    int64_t mid = l + (r - l) / 2;
    if (cmp_continuation(mid, plen, c, klen) >= 0)
      r = mid;
    else
      l = mid + 1;
  }
  int64_t first_ge = l;
  l = first_ge, r = hi + 1;
  while (l < r) {
    int64_t mid = l + (r - l) / 2;
    if (cmp_continuation(mid, plen, c, klen) > 0)
      r = mid;
    else
      l = mid + 1;
  }
  return {first_ge, l - 1};
}

std::pair<int64_t, int64_t> suffix_index::narrow_letter(int64_t sa_lo, int64_t sa_hi, int64_t plen,
                                                        int letter) const {
  if (sa_lo > sa_hi) return {1, 0};
  int64_t c = letter_occurrence(letter);
  if (c == 0) return {1, 0};
  auto [lo, hi] = narrow_range(sa_lo - 1, sa_hi - 1, plen, c, 1);
  return {lo + 1, hi + 1};
}

suffix_index::extend_result suffix_index::extend_prefix(int64_t xc, int64_t xd, int64_t yc,
                                                        int64_t yd) const {
  auto part_len = [&](int64_t c, int64_t d, const char* what) -> int64_t {
    if (c > d) return 0;
    if (c < 1 || d > n_) fail_pre(std::string("extend_prefix: ") + what + " interval out of range");
    return d - c + 1;
  };
  const int64_t xlen = part_len(xc, xd, "x");
  const int64_t ylen = part_len(yc, yd, "y");
  const int64_t m = n_ + 1;

  int64_t lo = 0, hi = m - 1, plen = 0;
  if (xlen > 0) {
    std::tie(lo, hi) = narrow_range(lo, hi, 0, xc, xlen);
    if (lo > hi) fail_pre("extend_prefix: x part does not occur");  // impossible for real intervals
    plen = xlen;
  }
  int64_t best_k = 0, bl = lo, bh = hi;
  int64_t klo = 0, khi = ylen;
  while (klo < khi) {
    int64_t kmid = klo + (khi - klo + 1) / 2;
    auto [l2, h2] = narrow_range(lo, hi, plen, yc, kmid);
    if (l2 <= h2) {
      klo = kmid, best_k = kmid, bl = l2, bh = h2;
    } else {
      khi = kmid - 1;
    }
  }
  extend_result res;
  res.len = plen + best_k;
  res.witness = res.len == 0 ? 0 : sa_[bl] + 1;
  res.sa_lo = bl + 1;
  res.sa_hi = bh + 1;
  return res;
}

int64_t suffix_index::letter_occurrence(int letter) const {
  auto it = first_occ_.find(letter);
  return it == first_occ_.end() ? 0 : it->second;
}

void suffix_index::build_tree() {
  const int64_t m = n_ + 1;
  auto make_node = [&](int par, int64_t dep, int64_t l) {
    parent_.push_back(par);
    depth_.push_back(dep);
    sa_l_.push_back(l);
    sa_r_.push_back(-1);
    leaf_label_.push_back(-1);
    return (int)parent_.size() - 1;
  };
  parent_.reserve(2 * m);
  depth_.reserve(2 * m);
  int root = make_node(-1, 0, 0);
  std::vector<int> st{root};
  leaf_of_.assign(m, -1);
  for (int64_t k = 0; k < m; ++k) {
    int64_t h = (k == 0) ? 0 : lcp_[k];
    int last = -1;
    while (depth_[st.back()] > h) {
      last = st.back();
      st.pop_back();
      sa_r_[last] = k - 1;
    }
    int attach;
    if (depth_[st.back()] == h) {
      attach = st.back();
    } else {
      attach = make_node(st.back(), h, sa_l_[last]);
      parent_[last] = attach;
      st.push_back(attach);
    }
    int leaf = make_node(attach, m - sa_[k], k);
    leaf_label_[leaf] = sa_[k] + 1;
    leaf_of_[sa_[k]] = leaf;
    st.push_back(leaf);
  }
  while (!st.empty()) {
    sa_r_[st.back()] = m - 1;
    st.pop_back();
  }
  locus_.reserve(parent_.size() * 2);
  for (size_t v = 0; v < parent_.size(); ++v)
    locus_.emplace(locus_key(sa_l_[v] + 1, sa_r_[v] + 1), (int)v);
}

int suffix_index::locus(int64_t sa_lo, int64_t sa_hi) const {
  auto it = locus_.find(locus_key(sa_lo, sa_hi));
  if (it == locus_.end()) fail_pre("locus: interval is not a pattern interval");
  return it->second;
}

int suffix_index::leaf_node(int64_t j) const {
  if (j < 1 || j > n_ + 1) fail_pre("leaf_node: suffix start out of range");
  return leaf_of_[j - 1];
}

int64_t suffix_index::suffix_at(int64_t sa_rank) const {
  if (sa_rank < 1 || sa_rank > n_ + 1) fail_pre("suffix_at: rank out of range");
  return sa_[sa_rank - 1] + 1;
}

}  // namespace dynlcs
