#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dynlcs/full_lcs.hpp"
#include "dynlcs/oracle.hpp"
#include "dynlcs/partial_lcs.hpp"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;

struct stream_op {
  int which;  // 0 = S, 1 = T
  int64_t pos;
  int letter;
};

struct stream_file {
  bool full;
  std::vector<int> s, t;
  std::vector<stream_op> ops;
};

[[noreturn]] void input_error(const std::string& path, int line,
                              const std::string& what) {
  std::cerr << path << ":" << line << ": " << what << "\n";
  std::exit(kExitInput);
}

std::vector<int> decode_word(const std::string& raw, const std::string& path,
                             int line) {
  if (raw.empty()) input_error(path, line, "empty string");
  std::vector<int> out;
  for (char ch : raw) {
    unsigned char c = (unsigned char)ch;
    if (c <= 32 || c >= 127)
      input_error(path, line, "letters must be printable non-space");
    out.push_back((int)c);
  }
  return out;
}

stream_file load_stream(const std::string& path) {
  std::ifstream in(path);
  if (!in) input_error(path, 0, "cannot open stream file");
  stream_file f;
  std::string line;
  int lineno = 0;

  auto next_line = [&](const char* what) {
    if (!std::getline(in, line)) input_error(path, lineno + 1, what);
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
  };

  next_line("missing header line (partial|full)");
  if (line == "partial")
    f.full = false;
  else if (line == "full")
    f.full = true;
  else
    input_error(path, lineno, "header must be 'partial' or 'full'");
  next_line("missing initial T line");
  f.t = decode_word(line, path, lineno);
  next_line("missing initial S line");
  f.s = decode_word(line, path, lineno);

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string target, letter;
    int64_t pos;
    if (!(ls >> target >> pos >> letter) || !(ls >> std::ws).eof())
      input_error(path, lineno, "expected '<S|T> <pos> <letter>'");
    stream_op op;
    if (target == "S")
      op.which = 0;
    else if (target == "T")
      op.which = 1;
    else
      input_error(path, lineno, "target must be S or T");
    if (!f.full && op.which == 1)
      input_error(path, lineno, "T-updates are illegal in partial mode");
    const auto& str = op.which == 0 ? f.s : f.t;
    if (pos < 1 || pos > (int64_t)str.size())
      input_error(path, lineno, "position out of bounds");
    op.pos = pos;
    if (letter.size() != 1)
      input_error(path, lineno, "letter must be a single character");
    op.letter = decode_word(letter, path, lineno)[0];
    f.ops.push_back(op);
  }
  return f;
}

struct step {
  int64_t length, s_pos, t_pos;  // positions 0 = absent
};

void emit(int64_t index, const step& st, bool json) {
  if (json) {
    nlohmann::json o;
    o["index"] = index;
    o["length"] = st.length;
    if (st.s_pos > 0) {
      o["s_pos"] = st.s_pos;
      o["t_pos"] = st.t_pos;
    } else {
      o["s_pos"] = nullptr;
      o["t_pos"] = nullptr;
    }
    std::cout << o.dump() << "\n";
    return;
  }
  std::cout << index << " " << st.length;
  if (st.s_pos > 0)
    std::cout << " " << st.s_pos << " " << st.t_pos;
  else
    std::cout << " - -";
  std::cout << "\n";
}

// oracle equality plus direct validation of the reported occurrence
bool validate(const step& st, const std::vector<int>& s,
              const std::vector<int>& t, int64_t index) {
  auto want = dynlcs::oracle::lcs_dp(s, t);
  if (st.length != want.length) {
    std::cerr << "mismatch at index " << index << ": length " << st.length
              << " vs oracle " << want.length << "\n";
    return false;
  }
  if (st.length == 0) return true;
  if (st.s_pos < 1 || st.t_pos < 1 ||
      st.s_pos + st.length - 1 > (int64_t)s.size() ||
      st.t_pos + st.length - 1 > (int64_t)t.size()) {
    std::cerr << "mismatch at index " << index << ": positions out of range\n";
    return false;
  }
  for (int64_t k = 0; k < st.length; ++k)
    if (s[st.s_pos - 1 + k] != t[st.t_pos - 1 + k]) {
      std::cerr << "mismatch at index " << index
                << ": reported occurrence differs at offset " << k << "\n";
      return false;
    }
  return true;
}

int run_stream(const std::string& path, bool oracle_check, bool json,
               uint64_t seed) {
  stream_file f = load_stream(path);
  std::vector<int> s = f.s, t = f.t;

  auto handle = [&](int64_t index, const step& st) -> bool {
    emit(index, st, json);
    return !oracle_check || validate(st, s, t, index);
  };

  if (f.full) {
    dynlcs::full_engine eng(f.s, f.t, seed);
    auto to_step = [](const dynlcs::full_engine::answer& a) {
      return step{a.length, a.length ? a.s_pos : 0, a.length ? a.t_pos : 0};
    };
    if (!handle(0, to_step(eng.current()))) return kExitMismatch;
    for (size_t i = 0; i < f.ops.size(); ++i) {
      const auto& op = f.ops[i];
      auto a = eng.substitute(op.which, op.pos, op.letter);
      (op.which == 0 ? s : t)[op.pos - 1] = op.letter;
      if (!handle((int64_t)i + 1, to_step(a))) return kExitMismatch;
    }
  } else {
    dynlcs::partial_lcs eng(f.s, f.t);
    auto to_step = [](const dynlcs::partial_lcs::result& r) {
      return step{r.length, r.s_pos, r.t_pos};
    };
    if (!handle(0, to_step(eng.lcs()))) return kExitMismatch;
    for (size_t i = 0; i < f.ops.size(); ++i) {
      const auto& op = f.ops[i];
      eng.substitute(op.pos, op.letter);
      s[op.pos - 1] = op.letter;
      if (!handle((int64_t)i + 1, to_step(eng.lcs()))) return kExitMismatch;
    }
  }
  return kExitOk;
}

struct bench_row {
  int64_t n, ops;
  double mean_us, median_us, p99_us;
};

bench_row bench_one(bool full, int64_t n, int64_t ops, uint64_t seed) {
  std::mt19937_64 rng(seed ^ (uint64_t)n);
  auto word = [&](int64_t len) {
    std::vector<int> w(len);
    for (auto& c : w) c = 'a' + (int)(rng() % 4);
    return w;
  };
  std::vector<double> us;
  auto measure = [&](auto& eng, auto&& apply) {
    us.clear();
    us.reserve(ops);
    for (int64_t i = 0; i < ops; ++i) {
      int which = full ? (int)(rng() % 2) : 0;
      int64_t pos = 1 + (int64_t)(rng() % n);
      int letter = 'a' + (int)(rng() % 4);
      auto t0 = std::chrono::steady_clock::now();
      apply(eng, which, pos, letter);
      auto t1 = std::chrono::steady_clock::now();
      us.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
    }
  };
  // two passes per size; the second (warm allocator) is reported
  for (int pass = 0; pass < 2; ++pass) {
    if (full) {
      dynlcs::full_engine eng(word(n), word(n), seed);
      measure(eng, [](dynlcs::full_engine& e, int w, int64_t p, int l) {
        e.substitute(w, p, l);
      });
    } else {
      dynlcs::partial_lcs eng(word(n), word(n));
      measure(eng, [](dynlcs::partial_lcs& e, int, int64_t p, int l) {
        e.substitute(p, l);
      });
    }
  }
  std::sort(us.begin(), us.end());
  double mean = 0;
  for (double v : us) mean += v;
  mean /= (double)us.size();
  auto at = [&](double q) {
    return us[std::min(us.size() - 1, (size_t)(q * (double)us.size()))];
  };
  return {n, ops, mean, at(0.5), at(0.99)};
}

int run_bench(bool full, const std::vector<int64_t>& sizes, int64_t ops,
              uint64_t seed) {
  std::cout << "mode,n,ops,mean_us,median_us,p99_us\n";
  for (int64_t n : sizes) {
    bench_row r = bench_one(full, n, ops, seed);
    std::cout << (full ? "full" : "partial") << "," << r.n << "," << r.ops
              << "," << r.mean_us << "," << r.median_us << "," << r.p99_us
              << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "dynamic longest-common-substring engines: stream replay and "
      "benchmarks"};
  app.require_subcommand(1);

  std::string stream_path;
  bool oracle_check = false, json = false;
  uint64_t seed = 0x9e3779b97f4a7c15ull;
  auto* run = app.add_subcommand("run", "replay an update stream");
  run->add_option("stream", stream_path, "stream file")->required();
  run->add_flag("--oracle-check", oracle_check,
                "check every answer against the quadratic oracle");
  run->add_flag("--json", json, "emit one JSON object per line");
  run->add_option("--seed", seed, "fixes grammar randomness");

  std::string mode = "full";
  std::vector<int64_t> sizes{4096, 65536};
  int64_t ops = 200;
  auto* bench = app.add_subcommand(
      "bench",
      "update-time benchmark; each size runs twice and the second, "
      "warm-allocator pass is reported as CSV");
  bench->add_option("--mode", mode, "partial or full")
      ->check(CLI::IsMember({"partial", "full"}));
  bench->add_option("--sizes", sizes, "string lengths to measure");
  bench->add_option("--ops", ops, "substitutions per size");
  bench->add_option("--seed", seed, "fixes instance and grammar randomness");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (run->parsed()) return run_stream(stream_path, oracle_check, json, seed);
    return run_bench(mode == "full", sizes, ops, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
