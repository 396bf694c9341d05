#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <string_view>

#include "mext/error.hpp"

namespace mext {

/// Exact residue in Q/Z, stored in canonical form: 0 <= num < den, gcd(num, den) = 1.
/// All arithmetic is mod 1 and exact; intermediates use 128-bit integers.
class QZ {
 public:
  QZ() : num_(0), den_(1) {}

  /// Reduces num/den mod 1. den must be nonzero; negative inputs are normalized.
  QZ(long long num, long long den) {
    if (den == 0) throw precondition_error("QZ: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    num %= den;
    if (num < 0) num += den;
    long long g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  QZ operator+(const QZ& o) const {
    long long g = std::gcd(den_, o.den_);
    long long l = detail::checked_mul(den_ / g, o.den_);
    __int128 n = static_cast<__int128>(num_) * (l / den_) + static_cast<__int128>(o.num_) * (l / o.den_);
    n %= l;
    return QZ(static_cast<long long>(n), l);
  }

  QZ operator-() const { return QZ(den_ - num_, den_); }
  QZ operator-(const QZ& o) const { return *this + (-o); }

  /// Integer scaling k*(num/den) mod 1.
  QZ times(long long k) const {
    __int128 kk = static_cast<__int128>(k) % den_;
    if (kk < 0) kk += den_;
    __int128 n = (static_cast<__int128>(num_) * kk) % den_;
    return QZ(static_cast<long long>(n), den_);
  }

  bool operator==(const QZ& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const QZ& o) const { return !(*this == o); }

  /// Natural order of representatives in [0,1); used only for deterministic tie-breaking.
  bool operator<(const QZ& o) const {
    return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
  }

  /// Representative in [0,1) as a long double; exactness lives in num/den.
  long double value() const { return static_cast<long double>(num_) / static_cast<long double>(den_); }

  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  /// Parses "num/den" or a bare integer (which is 0 mod 1). Accepts a leading minus.
  static QZ parse(std::string_view s);

 private:
  long long num_;
  long long den_;
};

/// 1/2 mod 1, the value order-2 data keeps landing on.
inline QZ qz_half() { return QZ(1, 2); }

inline QZ QZ::parse(std::string_view s) {
  if (s.empty()) throw precondition_error("QZ: empty rational literal");
  bool neg = false;
  size_t pos = 0;
  if (s[0] == '-') {
    neg = true;
    pos = 1;
  } else if (s[0] == '+') {
    pos = 1;
  }
  long long num = 0, den = 1;
  bool any = false;
  while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
    num = detail::checked_add(detail::checked_mul(num, 10), s[pos] - '0');
    ++pos;
    any = true;
  }
  if (!any) throw precondition_error("QZ: malformed rational literal");
  if (pos < s.size()) {
    if (s[pos] != '/') throw precondition_error("QZ: malformed rational literal");
    ++pos;
    den = 0;
    any = false;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
      den = detail::checked_add(detail::checked_mul(den, 10), s[pos] - '0');
      ++pos;
      any = true;
    }
    if (!any || pos != s.size() || den == 0) throw precondition_error("QZ: malformed rational literal");
  }
  return QZ(neg ? -num : num, den);
}

}  // namespace mext

template <>
struct std::hash<mext::QZ> {
  size_t operator()(const mext::QZ& q) const {
    return std::hash<long long>()(q.num()) * 1000003u ^ std::hash<long long>()(q.den());
  }
};
