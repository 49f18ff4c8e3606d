#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dynlcs {

// splitmix64 finalizer; used wherever a deterministic, platform-stable mix is needed.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline uint64_t mix64(uint64_t a, uint64_t b) { return mix64(a ^ mix64(b)); }
inline uint64_t mix64(uint64_t a, uint64_t b, uint64_t c) { return mix64(a ^ mix64(b ^ mix64(c))); }

inline int ceil_log2(uint64_t n) {
  int k = 0;
  while ((1ull << k) < n) ++k;
  return k;
}

[[noreturn]] inline void fail_pre(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace dynlcs
