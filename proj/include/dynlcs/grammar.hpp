#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dynlcs {

// Run-length straight-line programs built by recompression, hash-consed in a
// shared append-only table.
//
// Rounds alternate: odd rounds collapse maximal runs of equal symbols into
// powers, even rounds pair adjacent symbols whose round classes are
// (left, right) into concats. A symbol formed at round r has level r, and a
// round only touches symbols of lower level. Classes derive from a content
// hash, so equal strings parse to the same symbol regardless of edit
// history; hash-consing then makes content equality an id comparison.
//
// Edits (substitute / split / concat) decompose the affected strings into
// canonical staircases — border elements peeled per round, letter entries at
// the ends rising to a single interior peak — and re-parse the spliced
// sequence; only O(log) border symbols per round are new.
class grammar {
 public:
  using sym = int32_t;
  using entry = std::pair<sym, int64_t>;  // symbol, repeat count

  explicit grammar(uint64_t seed = 0);

  sym letter(int a);
  sym parse_string(const std::vector<int>& letters);

  enum class kind : uint8_t { letter, concat, power };
  kind k(sym s) const { return (kind)kind_[check(s)]; }
  int level(sym s) const { return level_[check(s)]; }
  int64_t len(sym s) const { return len_[check(s)]; }
  int letter_value(sym s) const;
  sym left(sym s) const;
  sym right(sym s) const;
  sym base(sym s) const;
  int64_t exponent(sym s) const;
  size_t size() const { return kind_.size(); }

  // round class of a symbol: false = left, true = right
  bool cls(int round, sym s) const;

  // canonical staircase of positions [i..j] of the string generated by root:
  // gen(up)·gen(down) = the fragment, and the sequences depend only on the
  // fragment's content, never on the host string around it
  struct decomposition {
    std::vector<entry> up, down;
    std::vector<entry> joined() const;
  };
  decomposition decompose(sym root, int64_t i, int64_t j) const;
  // parse a staircase splice back to a root
  sym parse_rounds(std::vector<entry> seq);

  // edits; every result is the canonical parse of the edited content
  sym substitute(sym root, int64_t pos, int a);
  sym concat_roots(sym a, sym b);
  std::pair<sym, sym> split(sym root, int64_t pos);  // [1..pos], [pos+1..]

  int letter_at(sym root, int64_t pos) const;
  int64_t lcp(sym a, sym b) const;
  std::vector<int> expand(sym root) const;

  struct pos_node {
    sym s;
    int64_t start;        // 1-based span start of this instance
    sym parent;           // -1 when s is the root itself
    int64_t parent_start;
  };
  // highest node of level <= lev whose instance contains pos (its parent, if
  // any, has level > lev)
  pos_node alive_at(sym root, int64_t pos, int lev) const;

 private:
  struct key {
    uint8_t kd;
    int32_t level;
    int64_t a, b;
    bool operator==(const key& o) const {
      return kd == o.kd && level == o.level && a == o.a && b == o.b;
    }
  };
  struct key_hash {
    size_t operator()(const key& k) const;
  };

  sym check(sym s) const;
  sym make(uint8_t kd, int lvl, int64_t a, int64_t b);
  sym make_power(sym b, int64_t e, int lvl);
  sym make_concat(sym l, sym r, int lvl);
  static void canonicalize(std::vector<entry>& seq);

  uint64_t seed_;
  std::vector<uint8_t> kind_;
  std::vector<int32_t> level_;
  std::vector<int64_t> a_, b_, len_;
  std::vector<uint64_t> chash_, powb_;
  std::unordered_map<key, sym, key_hash> table_;
};

}  // namespace dynlcs
