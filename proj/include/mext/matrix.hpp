#pragma once

#include <optional>
#include <vector>

#include "mext/error.hpp"

namespace mext {

/// Dense integer matrix, row-major. All mutating arithmetic is overflow-checked.
struct IntMat {
  int rows = 0;
  int cols = 0;
  std::vector<long long> a;

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

  long long& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  long long at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static IntMat identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  // Accumulates in 128 bits; only the final entries must fit in 64.
  IntMat mul(const IntMat& o) const {
    if (cols != o.rows) throw precondition_error("IntMat: dimension mismatch in product");
    IntMat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < o.cols; ++j) {
        __int128 acc = 0;
        for (int k = 0; k < cols; ++k) acc = detail::fma128(acc, at(i, k), o.at(k, j));
        r.at(i, j) = detail::narrow64(acc);
      }
    return r;
  }

  IntMat transpose() const {
    IntMat r(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  std::vector<long long> mul_vec(const std::vector<long long>& x) const {
    if (static_cast<int>(x.size()) != cols) throw precondition_error("IntMat: dimension mismatch in matrix-vector product");
    std::vector<long long> r(rows, 0);
    for (int i = 0; i < rows; ++i) {
      __int128 acc = 0;
      for (int j = 0; j < cols; ++j) acc = detail::fma128(acc, at(i, j), x[j]);
      r[i] = detail::narrow64(acc);
    }
    return r;
  }

  bool operator==(const IntMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

/// u * input * v = d with u, v unimodular and d diagonal, d[0] | d[1] | ... >= 0.
/// Exact over Z with overflow-checked arithmetic; the transform coefficients can
/// grow quickly on dense inputs of dimension >= 5, in which case this throws
/// arithmetic_error rather than returning wrong values. Group-sized work should
/// go through smith_mod below, whose entries never grow.
struct SmithDecomposition {
  IntMat u, d, v;
};

SmithDecomposition smith_normal_form(const IntMat& m);

/// Smith form over the ring Z_N: u * input * v = d (mod N) with u, v invertible
/// mod N (inverses tracked), d diagonal with the representative divisibility
/// chain d[0] | d[1] | ... All entries stay within [0, N), so there is no
/// coefficient growth. For finite-abelian-group computations whose objects are
/// killed by N this carries exactly the same information as the Z form.
struct SmithModN {
  long long n = 1;
  IntMat u, d, v, u_inv, v_inv;
};

SmithModN smith_mod(const IntMat& m, long long n);

/// One solution x of m*x = b (mod N), or nullopt when the congruence is unsolvable.
std::optional<std::vector<long long>> solve_mod(const IntMat& m, const std::vector<long long>& b,
                                                long long n);

/// Diagonal of the Smith form, padded with the stated sign convention (all entries >= 0).
std::vector<long long> smith_diagonal(const IntMat& m);

/// One integer solution x of m*x = b, or nullopt when none exists.
std::optional<std::vector<long long>> solve_linear(const IntMat& m, const std::vector<long long>& b);

/// Inverse of a unimodular matrix (throws when the determinant is not +-1).
IntMat unimodular_inverse(const IntMat& m);

/// Exact determinant via fraction-free elimination; used by tests and the unimodular inverse.
long long determinant(const IntMat& m);

/// A basis (as columns) of the integer kernel lattice {x : m*x = 0}.
IntMat kernel_lattice(const IntMat& m);

}  // namespace mext
