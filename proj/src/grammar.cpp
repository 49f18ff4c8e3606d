#include "dynlcs/grammar.hpp"

#include <algorithm>
#include <optional>

#include "dynlcs/util.hpp"

namespace dynlcs {

namespace {

// content hashes are polynomial hashes mod 2^61 - 1, so the hash of a
// concatenation combines from the parts' hashes and base powers in O(1)
constexpr uint64_t kMod = (1ull << 61) - 1;

uint64_t mulmod(uint64_t a, uint64_t b) {
  return (uint64_t)((__uint128_t)a * b % kMod);
}

}  // namespace

size_t grammar::key_hash::operator()(const key& k) const {
  return (size_t)mix64(mix64((uint64_t)k.kd << 32 | (uint32_t)k.level,
                             (uint64_t)k.a),
                       (uint64_t)k.b);
}

grammar::grammar(uint64_t seed) : seed_(mix64(seed, 0x5713d9b2a4e5c1f7ull)) {}

grammar::sym grammar::check(sym s) const {
  if (s < 0 || (size_t)s >= kind_.size()) fail_pre("grammar: bad symbol id");
  return s;
}

int grammar::letter_value(sym s) const {
  if (k(s) != kind::letter) fail_pre("grammar: not a letter");
  return (int)a_[s];
}

grammar::sym grammar::left(sym s) const {
  if (k(s) != kind::concat) fail_pre("grammar: not a concat");
  return (sym)a_[s];
}

grammar::sym grammar::right(sym s) const {
  if (k(s) != kind::concat) fail_pre("grammar: not a concat");
  return (sym)b_[s];
}

grammar::sym grammar::base(sym s) const {
  if (k(s) != kind::power) fail_pre("grammar: not a power");
  return (sym)a_[s];
}

int64_t grammar::exponent(sym s) const {
  if (k(s) != kind::power) fail_pre("grammar: not a power");
  return b_[s];
}

bool grammar::cls(int round, sym s) const {
  return (mix64(seed_, (uint64_t)round, chash_[check(s)]) & 1) != 0;
}

grammar::sym grammar::make(uint8_t kd, int lvl, int64_t a, int64_t b) {
  key ky{kd, lvl, a, b};
  auto it = table_.find(ky);
  if (it != table_.end()) return it->second;
  sym id = (sym)kind_.size();
  uint64_t ch, pw;
  int64_t ln;
  switch ((kind)kd) {
    case kind::letter:
      ln = 1;
      ch = (uint64_t)a % kMod;
      pw = mix64(seed_) % (kMod - 4) + 2;  // polynomial base B
      break;
    case kind::concat:
      ln = len_[a] + len_[b];
      ch = (mulmod(chash_[a], powb_[b]) + chash_[b]) % kMod;
      pw = mulmod(powb_[a], powb_[b]);
      break;
    case kind::power: {
      ln = len_[a] * b;
      // append blocks A^(2^i) per bit of the exponent; content hashes of
      // equal-letter products are order independent
      uint64_t h = 0, p = 1, bh = chash_[a], bp = powb_[a];
      for (int64_t e = b; e > 0; e >>= 1) {
        if (e & 1) {
          h = (mulmod(h, bp) + bh) % kMod;
          p = mulmod(p, bp);
        }
        bh = (mulmod(bh, bp) + bh) % kMod;
        bp = mulmod(bp, bp);
      }
      ch = h;
      pw = p;
      break;
    }
    default:
      fail_pre("grammar: bad kind");
  }
  kind_.push_back(kd);
  level_.push_back(lvl);
  a_.push_back(a);
  b_.push_back(b);
  len_.push_back(ln);
  chash_.push_back(ch);
  powb_.push_back(pw);
  table_.emplace(ky, id);
  return id;
}

grammar::sym grammar::letter(int a) {
  if (a < 1) fail_pre("grammar: letters must be >= 1");
  return make((uint8_t)kind::letter, 0, a, 0);
}

grammar::sym grammar::make_power(sym b, int64_t e, int lvl) {
  if (e < 2) fail_pre("grammar: power exponent < 2");
  if (k(b) == kind::power) fail_pre("grammar: power of a power");
  if (lvl % 2 != 1 || level(b) > lvl - 1) fail_pre("grammar: bad power level");
  return make((uint8_t)kind::power, lvl, b, e);
}

grammar::sym grammar::make_concat(sym l, sym r, int lvl) {
  if (lvl % 2 != 0 || level(l) > lvl - 1 || level(r) > lvl - 1)
    fail_pre("grammar: bad concat level");
  return make((uint8_t)kind::concat, lvl, l, r);
}

void grammar::canonicalize(std::vector<entry>& seq) {
  size_t out = 0;
  for (const entry& e : seq) {
    if (e.second <= 0) fail_pre("grammar: non-positive repeat");
    if (out > 0 && seq[out - 1].first == e.first) {
      seq[out - 1].second += e.second;
    } else {
      seq[out++] = e;
    }
  }
  seq.resize(out);
}

grammar::sym grammar::parse_rounds(std::vector<entry> seq) {
  canonicalize(seq);
  if (seq.empty()) fail_pre("grammar: empty sequence");
  int64_t total = 0;
  for (const entry& e : seq) total += len(e.first) * e.second;
  const int cap = 32 * (int)ceil_log2((uint64_t)total) + 96;
  for (int round = 1; seq.size() > 1 || seq[0].second > 1; ++round) {
    if (round > cap) fail_pre("grammar: rounds exceeded");
    if (round & 1) {
      for (entry& e : seq)
        if (e.second >= 2 && level(e.first) <= round - 1)
          e = {make_power(e.first, e.second, round), 1};
    } else {
      std::vector<entry> out;
      out.reserve(seq.size());
      size_t i = 0;
      while (i < seq.size()) {
        if (i + 1 < seq.size() && seq[i].second == 1 &&
            seq[i + 1].second == 1 && level(seq[i].first) <= round - 1 &&
            level(seq[i + 1].first) <= round - 1 &&
            !cls(round, seq[i].first) && cls(round, seq[i + 1].first)) {
          out.emplace_back(make_concat(seq[i].first, seq[i + 1].first, round),
                           1);
          i += 2;
        } else {
          out.push_back(seq[i]);
          ++i;
        }
      }
      seq.swap(out);
    }
    canonicalize(seq);
  }
  return seq[0].first;
}

grammar::sym grammar::parse_string(const std::vector<int>& letters) {
  if (letters.empty()) fail_pre("grammar: empty string");
  std::vector<entry> seq;
  seq.reserve(letters.size());
  for (int a : letters) seq.emplace_back(letter(a), 1);
  return parse_rounds(std::move(seq));
}

grammar::pos_node grammar::alive_at(sym root, int64_t pos, int lev) const {
  if (pos < 1 || pos > len(root)) fail_pre("grammar: position out of range");
  pos_node nd{root, 1, -1, 1};
  while (level(nd.s) > lev) {
    pos_node par = nd;
    if (k(nd.s) == kind::concat) {
      sym l = left(nd.s);
      if (pos < nd.start + len(l)) {
        nd.s = l;
      } else {
        nd.start += len(l);
        nd.s = right(nd.s);
      }
    } else if (k(nd.s) == kind::power) {
      sym b = base(nd.s);
      int64_t idx = (pos - nd.start) / len(b);
      nd.start += idx * len(b);
      nd.s = b;
    } else {
      fail_pre("grammar: letter above level 0");
    }
    nd.parent = par.s;
    nd.parent_start = par.start;
  }
  return nd;
}

std::vector<grammar::entry> grammar::decomposition::joined() const {
  std::vector<entry> res = up;
  res.insert(res.end(), down.begin(), down.end());
  return res;
}

grammar::decomposition grammar::decompose(sym root, int64_t i,
                                          int64_t j) const {
  if (i < 1 || i > j || j > len(root)) fail_pre("grammar: bad window");
  std::vector<entry> up, down;
  std::optional<entry> peak;
  int64_t L = i, R = j;
  const int cap = 32 * (int)ceil_log2((uint64_t)(j - i + 1)) + 96;
  for (int r = 1; L <= R; ++r) {
    if (r > cap) fail_pre("grammar: decompose rounds exceeded");
    pos_node v = alive_at(root, L, r - 1);
    if (v.start != L) fail_pre("grammar: window misaligned");
    int64_t vend = v.start + len(v.s) - 1;
    if (vend == R) {
      peak = entry{v.s, 1};
      break;
    }
    if (r & 1) {
      // run round: peel the border runs of the window unconditionally, as
      // run-length entries so splices can fuse runs across the seam
      int64_t step = len(v.s), cnt = 1;
      if (v.parent >= 0 && k(v.parent) == kind::power) {
        int64_t pend = v.parent_start + len(v.parent) - 1;
        int64_t lim = std::min(pend, R);
        if ((lim + 1 - L) % step != 0) fail_pre("grammar: run misaligned");
        cnt = (lim + 1 - L) / step;
      }
      up.emplace_back(v.s, cnt);
      L += cnt * step;
      if (L > R) break;
      pos_node w = alive_at(root, R, r - 1);
      if (w.start + len(w.s) - 1 != R) fail_pre("grammar: window misaligned");
      step = len(w.s);
      cnt = 1;
      if (w.parent >= 0 && k(w.parent) == kind::power) {
        int64_t lim = std::max(w.parent_start, L);
        if ((R + 1 - lim) % step != 0) fail_pre("grammar: run misaligned");
        cnt = (R + 1 - lim) / step;
      }
      down.emplace_back(w.s, cnt);
      R -= cnt * step;
    } else {
      // pair round: a border symbol leaves the window only if its class
      // would pair it with a neighbor outside
      if (cls(r, v.s)) {
        up.emplace_back(v.s, 1);
        L = vend + 1;
        if (L > R) break;
      }
      pos_node w = alive_at(root, R, r - 1);
      if (w.start + len(w.s) - 1 != R) fail_pre("grammar: window misaligned");
      if (!cls(r, w.s)) {
        down.emplace_back(w.s, 1);
        R = w.start - 1;
      }
    }
  }
  decomposition res;
  res.up = std::move(up);
  if (peak) res.up.push_back(*peak);
  res.down.assign(down.rbegin(), down.rend());
  return res;
}

grammar::sym grammar::substitute(sym root, int64_t pos, int a) {
  int64_t n = len(root);
  if (pos < 1 || pos > n) fail_pre("grammar: position out of range");
  std::vector<entry> seq;
  if (pos > 1) seq = decompose(root, 1, pos - 1).joined();
  seq.emplace_back(letter(a), 1);
  if (pos < n) {
    std::vector<entry> d2 = decompose(root, pos + 1, n).joined();
    seq.insert(seq.end(), d2.begin(), d2.end());
  }
  return parse_rounds(std::move(seq));
}

grammar::sym grammar::concat_roots(sym a, sym b) {
  std::vector<entry> seq = decompose(a, 1, len(a)).joined();
  std::vector<entry> d2 = decompose(b, 1, len(b)).joined();
  seq.insert(seq.end(), d2.begin(), d2.end());
  return parse_rounds(std::move(seq));
}

std::pair<grammar::sym, grammar::sym> grammar::split(sym root, int64_t pos) {
  int64_t n = len(root);
  if (pos < 1 || pos >= n) fail_pre("grammar: bad split point");
  sym a = parse_rounds(decompose(root, 1, pos).joined());
  sym b = parse_rounds(decompose(root, pos + 1, n).joined());
  return {a, b};
}

int grammar::letter_at(sym root, int64_t pos) const {
  return letter_value(alive_at(root, pos, 0).s);
}

int64_t grammar::lcp(sym a, sym b) const {
  check(a);
  check(b);
  static thread_local std::vector<entry> A, B;
  A.assign(1, entry{a, 1});
  B.assign(1, entry{b, 1});
  int64_t matched = 0;
  auto expand_top = [this](std::vector<entry>& s) {
    entry e = s.back();
    s.pop_back();
    if (e.second > 1) s.emplace_back(e.first, e.second - 1);
    if (k(e.first) == kind::concat) {
      s.emplace_back(right(e.first), 1);
      s.emplace_back(left(e.first), 1);
    } else {
      s.emplace_back(base(e.first), exponent(e.first));
    }
  };
  while (!A.empty() && !B.empty()) {
    entry& x = A.back();
    entry& y = B.back();
    if (x.first == y.first) {
      // equal ids generate equal content: skip the whole repeated subtree
      int64_t c = std::min(x.second, y.second);
      matched += c * len(x.first);
      if ((x.second -= c) == 0) A.pop_back();
      if ((y.second -= c) == 0) B.pop_back();
      continue;
    }
    bool xl = k(x.first) == kind::letter, yl = k(y.first) == kind::letter;
    if (xl && yl) break;
    if (!xl && (yl || level(x.first) >= level(y.first))) {
      expand_top(A);
    } else {
      expand_top(B);
    }
  }
  return matched;
}

std::vector<int> grammar::expand(sym root) const {
  std::vector<int> out;
  out.reserve((size_t)len(root));
  std::vector<entry> st{{root, 1}};
  while (!st.empty()) {
    entry e = st.back();
    st.pop_back();
    if (e.second > 1) st.emplace_back(e.first, e.second - 1);
    switch (k(e.first)) {
      case kind::letter:
        out.push_back((int)a_[e.first]);
        break;
      case kind::concat:
        st.emplace_back(right(e.first), 1);
        st.emplace_back(left(e.first), 1);
        break;
      case kind::power:
        st.emplace_back(base(e.first), exponent(e.first));
        break;
    }
  }
  return out;
}

}  // namespace dynlcs
