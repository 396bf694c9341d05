#pragma once

#include <cstdlib>
#include <string>
#include <vector>

namespace mext {

/// Execution policy for the data-parallel kernels. Every kernel has a serial
/// reference path; the parallel path partitions work into a fixed number of
/// blocks (independent of thread count) and merges per-block results in block
/// order, so both paths produce bit-identical output.
enum class Exec { serial, parallel };

namespace par {

constexpr long long kBlocks = 64;

struct Range {
  long long begin, end;
};

inline std::vector<Range> block_ranges(long long n) {
  std::vector<Range> r;
  long long blocks = n < kBlocks ? (n > 0 ? n : 0) : kBlocks;
  for (long long b = 0; b < blocks; ++b) {
    long long lo = n * b / blocks;
    long long hi = n * (b + 1) / blocks;
    if (lo < hi) r.push_back({lo, hi});
  }
  return r;
}

/// Applies per_block(begin, end) to each block of [0, n); blocks are independent.
template <class BlockFn>
void block_for(long long n, Exec exec, BlockFn&& per_block) {
  std::vector<Range> ranges = block_ranges(n);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(ranges.size()); ++i)
      per_block(ranges[i].begin, ranges[i].end);
  } else {
    for (const Range& r : ranges) per_block(r.begin, r.end);
  }
}

/// Reduction with a deterministic merge: per-block partials are combined in
/// block order regardless of how many threads ran.
template <class T, class BlockFn, class Combine>
T block_reduce(long long n, Exec exec, T init, BlockFn&& per_block, Combine&& combine) {
  std::vector<Range> ranges = block_ranges(n);
  std::vector<T> partial(ranges.size(), init);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(ranges.size()); ++i)
      partial[i] = per_block(ranges[i].begin, ranges[i].end);
  } else {
    for (size_t i = 0; i < ranges.size(); ++i) partial[i] = per_block(ranges[i].begin, ranges[i].end);
  }
  T acc = init;
  for (const T& p : partial) acc = combine(acc, p);
  return acc;
}

}  // namespace par

/// Brute-force size guards. MEXT_MAX_ORDER overrides both defaults.
struct Limits {
  long long metric_group_order = 1024;  // element scans over metric groups
  long long form_enumeration_order = 64;  // quadratic-form enumeration
};

inline Limits limits() {
  static const Limits cached = [] {
    Limits l;
    if (const char* env = std::getenv("MEXT_MAX_ORDER")) {
      long long v = std::atoll(env);
      if (v > 0) {
        l.metric_group_order = v;
        l.form_enumeration_order = v;
      }
    }
    return l;
  }();
  return cached;
}

}  // namespace mext
