#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mext {

/// Thrown when a mathematical precondition of an operation is violated.
/// The message names the violated invariant.
class precondition_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when checked integer arithmetic would overflow, or when an internal
/// numeric consistency check fails (both indicate inputs outside the supported
/// range or a bug, never a recoverable condition).
class arithmetic_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline long long checked_add(long long a, long long b) {
  __int128 s = static_cast<__int128>(a) + b;
  if (s > INT64_MAX || s < INT64_MIN) throw arithmetic_error("integer overflow in addition");
  return static_cast<long long>(s);
}

inline long long checked_mul(long long a, long long b) {
  __int128 p = static_cast<__int128>(a) * b;
  if (p > INT64_MAX || p < INT64_MIN) throw arithmetic_error("integer overflow in multiplication");
  return static_cast<long long>(p);
}

inline long long narrow64(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw arithmetic_error("value exceeds 64 bits");
  return static_cast<long long>(v);
}

// a + x*y with the accumulator kept in 128 bits, overflow-checked.
inline __int128 fma128(__int128 a, long long x, long long y) {
  __int128 p = static_cast<__int128>(x) * y;  // cannot overflow: both factors fit in 64 bits
  __int128 s;
  if (__builtin_add_overflow(a, p, &s)) throw arithmetic_error("integer overflow in accumulation");
  return s;
}

}  // namespace detail

inline void require(bool cond, const std::string& invariant) {
  if (!cond) throw precondition_error(invariant);
}

}  // namespace mext
