#include "mext/matrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>

namespace mext {

namespace {

using i128 = __int128;

i128 mul128(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw arithmetic_error("integer overflow in multiplication");
  return r;
}

i128 add128(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw arithmetic_error("integer overflow in addition");
  return r;
}

i128 abs128(i128 a) { return a < 0 ? -a : a; }

// Working matrix for the elimination: 128-bit entries give the transform
// matrices generous headroom before the final narrowing back to long long.
struct Wide {
  int rows = 0, cols = 0;
  std::vector<i128> a;

  Wide(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
  explicit Wide(const IntMat& m) : rows(m.rows), cols(m.cols), a(m.a.begin(), m.a.end()) {}

  i128& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  i128 at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static Wide identity(int n) {
    Wide m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
};

IntMat narrow(const Wide& w) {
  IntMat m(w.rows, w.cols);
  for (size_t i = 0; i < w.a.size(); ++i) {
    i128 v = w.a[i];
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
      throw arithmetic_error("matrix entry exceeds 64 bits after elimination");
    m.a[i] = static_cast<long long>(v);
  }
  return m;
}

void swap_rows(Wide& m, int i, int j) {
  if (i == j) return;
  for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
}

void swap_cols(Wide& m, int i, int j) {
  if (i == j) return;
  for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
}

struct Bezout {
  i128 g, p, q;  // p*a + q*b = g >= 0
};

Bezout ext_gcd(i128 a, i128 b) {
  i128 r0 = a, r1 = b, p0 = 1, p1 = 0, q0 = 0, q1 = 1;
  while (r1 != 0) {
    i128 k = r0 / r1;
    r0 = r0 - k * r1;
    std::swap(r0, r1);
    p0 = p0 - k * p1;
    std::swap(p0, p1);
    q0 = q0 - k * q1;
    std::swap(q0, q1);
  }
  if (r0 < 0) {
    r0 = -r0;
    p0 = -p0;
    q0 = -q0;
  }
  return {r0, p0, q0};
}

// (row_t, row_i) <- (p*row_t + q*row_i, a*row_t + b*row_i); [[p,q],[a,b]] unimodular.
void row_transform(Wide& m, int t, int i, i128 p, i128 q, i128 a, i128 b) {
  for (int c = 0; c < m.cols; ++c) {
    i128 x = m.at(t, c), y = m.at(i, c);
    m.at(t, c) = add128(mul128(p, x), mul128(q, y));
    m.at(i, c) = add128(mul128(a, x), mul128(b, y));
  }
}

// (col_t, col_j) <- (p*col_t + q*col_j, a*col_t + b*col_j).
void col_transform(Wide& m, int t, int j, i128 p, i128 q, i128 a, i128 b) {
  for (int r = 0; r < m.rows; ++r) {
    i128 x = m.at(r, t), y = m.at(r, j);
    m.at(r, t) = add128(mul128(p, x), mul128(q, y));
    m.at(r, j) = add128(mul128(a, x), mul128(b, y));
  }
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMat& m) {
  Wide d(m);
  Wide u = Wide::identity(m.rows);
  Wide v = Wide::identity(m.cols);
  const int n = std::min(m.rows, m.cols);

  for (int t = 0; t < n; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing submatrix becomes the pivot;
      // re-selecting it every round keeps the coefficient growth down.
      int pi = -1, pj = -1;
      for (int i = t; i < d.rows; ++i)
        for (int j = t; j < d.cols; ++j)
          if (d.at(i, j) != 0 && (pi < 0 || abs128(d.at(i, j)) < abs128(d.at(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) {
        t = n;  // the rest of the matrix is zero
        break;
      }
      swap_rows(d, t, pi);
      swap_rows(u, t, pi);
      swap_cols(d, t, pj);
      swap_cols(v, t, pj);

      // Clear the pivot column and row with 2x2 unimodular transforms; each
      // Bezout step replaces the pivot by a gcd, so it strictly shrinks.
      for (int i = t + 1; i < d.rows; ++i) {
        i128 x = d.at(i, t);
        if (x == 0) continue;
        i128 piv = d.at(t, t);
        if (x % piv == 0) {
          row_transform(d, t, i, 1, 0, -(x / piv), 1);
          row_transform(u, t, i, 1, 0, -(x / piv), 1);
        } else {
          Bezout bz = ext_gcd(piv, x);
          row_transform(d, t, i, bz.p, bz.q, -(x / bz.g), piv / bz.g);
          row_transform(u, t, i, bz.p, bz.q, -(x / bz.g), piv / bz.g);
        }
      }
      bool mixed = false;
      for (int j = t + 1; j < d.cols; ++j) {
        i128 x = d.at(t, j);
        if (x == 0) continue;
        i128 piv = d.at(t, t);
        if (x % piv == 0) {
          col_transform(d, t, j, 1, 0, -(x / piv), 1);
          col_transform(v, t, j, 1, 0, -(x / piv), 1);
        } else {
          Bezout bz = ext_gcd(piv, x);
          col_transform(d, t, j, bz.p, bz.q, -(x / bz.g), piv / bz.g);
          col_transform(v, t, j, bz.p, bz.q, -(x / bz.g), piv / bz.g);
          mixed = true;  // the column transform may have refilled column t
        }
      }
      for (int i = t + 1; i < d.rows && !mixed; ++i)
        if (d.at(i, t) != 0) mixed = true;
      if (mixed) continue;

      // Pivot must divide the whole trailing submatrix for the divisibility chain.
      int bi = -1;
      for (int i = t + 1; i < d.rows && bi < 0; ++i)
        for (int j = t + 1; j < d.cols; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            bi = i;
            break;
          }
      if (bi < 0) break;
      // Fold the offending row into row t; the next pass gcds the pivot down.
      row_transform(d, t, bi, 1, 1, 0, 1);
      row_transform(u, t, bi, 1, 1, 0, 1);
    }
    if (t < n && d.at(t, t) < 0) {
      for (int c = 0; c < d.cols; ++c) d.at(t, c) = -d.at(t, c);
      for (int c = 0; c < u.cols; ++c) u.at(t, c) = -u.at(t, c);
    }
  }
  return SmithDecomposition{narrow(u), narrow(d), narrow(v)};
}

std::vector<long long> smith_diagonal(const IntMat& m) {
  SmithDecomposition s = smith_normal_form(m);
  std::vector<long long> out;
  for (int i = 0; i < std::min(m.rows, m.cols); ++i) out.push_back(s.d.at(i, i));
  return out;
}

std::optional<std::vector<long long>> solve_linear(const IntMat& m, const std::vector<long long>& b) {
  if (static_cast<int>(b.size()) != m.rows) throw precondition_error("solve_linear: dimension mismatch");
  SmithDecomposition s = smith_normal_form(m);
  std::vector<long long> c = s.u.mul_vec(b);
  std::vector<long long> z(m.cols, 0);
  const int n = std::min(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i) {
    long long di = i < n ? s.d.at(i, i) : 0;
    if (di == 0) {
      if (c[i] != 0) return std::nullopt;
    } else {
      if (c[i] % di != 0) return std::nullopt;
      z[i] = c[i] / di;
    }
  }
  return s.v.mul_vec(z);
}

long long determinant(const IntMat& m) {
  if (m.rows != m.cols) throw precondition_error("determinant: matrix not square");
  int n = m.rows;
  if (n == 0) return 1;
  // Bareiss fraction-free elimination in 128-bit.
  std::vector<__int128> a(m.a.begin(), m.a.end());
  auto at = [&](int i, int j) -> __int128& { return a[static_cast<size_t>(i) * n + j]; };
  __int128 sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (at(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
    prev = at(k, k);
  }
  __int128 det = sign * at(n - 1, n - 1);
  if (det > INT64_MAX || det < INT64_MIN) throw arithmetic_error("determinant overflow");
  return static_cast<long long>(det);
}

IntMat unimodular_inverse(const IntMat& m) {
  long long det = determinant(m);
  if (det != 1 && det != -1) throw precondition_error("unimodular_inverse: determinant is not +-1");
  int n = m.rows;
  // Adjugate over 128-bit intermediates via cofactors; n stays small here.
  IntMat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      IntMat minor(n - 1, n - 1);
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor.at(rr, cc++) = m.at(r, c);
        }
        ++rr;
      }
      long long cof = determinant(minor);
      if ((i + j) % 2 != 0) cof = -cof;
      inv.at(i, j) = det * cof;
    }
  return inv;
}

IntMat kernel_lattice(const IntMat& m) {
  SmithDecomposition s = smith_normal_form(m);
  const int n = std::min(m.rows, m.cols);
  std::vector<int> keep;
  for (int j = 0; j < m.cols; ++j)
    if (j >= n || s.d.at(j, j) == 0) keep.push_back(j);
  IntMat out(m.cols, static_cast<int>(keep.size()));
  for (int i = 0; i < m.cols; ++i)
    for (size_t k = 0; k < keep.size(); ++k) out.at(i, static_cast<int>(k)) = s.v.at(i, keep[k]);
  return out;
}

namespace {

long long mod_reduce(long long x, long long n) {
  long long r = x % n;
  return r < 0 ? r + n : r;
}

void reduce_all(IntMat& m, long long n) {
  for (long long& v : m.a) v = mod_reduce(v, n);
}

// Row version: applies the 2x2 transform [[p,q],[a,b]] (det = +-1) to rows t,i
// of d and u, and the inverse transform to columns t,i of u_inv, all mod n.
// This preserves u * m * v = d and u * u_inv = I modulo n.
void mod_row_transform(IntMat& d, IntMat& u, IntMat& u_inv, int t, int i, long long p,
                       long long q, long long a, long long b, long long n) {
  auto rows = [&](IntMat& m) {
    for (int c = 0; c < m.cols; ++c) {
      long long x = m.at(t, c), y = m.at(i, c);
      m.at(t, c) = mod_reduce(detail::checked_add(detail::checked_mul(p, x), detail::checked_mul(q, y)), n);
      m.at(i, c) = mod_reduce(detail::checked_add(detail::checked_mul(a, x), detail::checked_mul(b, y)), n);
    }
  };
  rows(d);
  rows(u);
  long long det = detail::checked_add(detail::checked_mul(p, b), -detail::checked_mul(q, a));
  for (int r = 0; r < u_inv.rows; ++r) {
    long long x = u_inv.at(r, t), y = u_inv.at(r, i);
    u_inv.at(r, t) = mod_reduce(detail::checked_mul(det, detail::checked_add(detail::checked_mul(b, x), -detail::checked_mul(a, y))), n);
    u_inv.at(r, i) = mod_reduce(detail::checked_mul(det, detail::checked_add(-detail::checked_mul(q, x), detail::checked_mul(p, y))), n);
  }
}

// Column version: transforms columns t,j of d and v, rows t,j of v_inv.
void mod_col_transform(IntMat& d, IntMat& v, IntMat& v_inv, int t, int j, long long p,
                       long long q, long long a, long long b, long long n) {
  auto cols = [&](IntMat& m) {
    for (int r = 0; r < m.rows; ++r) {
      long long x = m.at(r, t), y = m.at(r, j);
      m.at(r, t) = mod_reduce(detail::checked_add(detail::checked_mul(p, x), detail::checked_mul(q, y)), n);
      m.at(r, j) = mod_reduce(detail::checked_add(detail::checked_mul(a, x), detail::checked_mul(b, y)), n);
    }
  };
  cols(d);
  cols(v);
  long long det = detail::checked_add(detail::checked_mul(p, b), -detail::checked_mul(q, a));
  for (int c = 0; c < v_inv.cols; ++c) {
    long long x = v_inv.at(t, c), y = v_inv.at(j, c);
    v_inv.at(t, c) = mod_reduce(detail::checked_mul(det, detail::checked_add(detail::checked_mul(b, x), -detail::checked_mul(a, y))), n);
    v_inv.at(j, c) = mod_reduce(detail::checked_mul(det, detail::checked_add(-detail::checked_mul(q, x), detail::checked_mul(p, y))), n);
  }
}

}  // namespace

SmithModN smith_mod(const IntMat& m, long long n) {
  if (n <= 0) throw precondition_error("smith_mod: modulus must be positive");
  SmithModN s;
  s.n = n;
  s.d = m;
  reduce_all(s.d, n);
  s.u = IntMat::identity(m.rows);
  s.u_inv = IntMat::identity(m.rows);
  s.v = IntMat::identity(m.cols);
  s.v_inv = IntMat::identity(m.cols);
  IntMat& d = s.d;
  const int rank_bound = std::min(m.rows, m.cols);

  // Safety net: the elimination provably terminates, but a bound turns any
  // logic error into a clean failure instead of a hang.
  long long budget = 1000 + 64LL * (m.rows + m.cols + 8) * (m.rows + m.cols + 8);

  for (int t = 0; t < rank_bound; ++t) {
    for (;;) {
      if (--budget < 0) throw arithmetic_error("smith_mod: elimination did not converge");
      int pi = -1, pj = -1;
      for (int i = t; i < d.rows; ++i)
        for (int j = t; j < d.cols; ++j)
          if (d.at(i, j) != 0 && (pi < 0 || d.at(i, j) < d.at(pi, pj))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) {
        t = rank_bound;  // the rest of the matrix is zero mod n
        break;
      }
      if (pi != t) mod_row_transform(d, s.u, s.u_inv, t, pi, 0, 1, 1, 0, n);
      if (pj != t) mod_col_transform(d, s.v, s.v_inv, t, pj, 0, 1, 1, 0, n);

      for (int i = t + 1; i < d.rows; ++i) {
        long long x = d.at(i, t);
        if (x == 0) continue;
        long long piv = d.at(t, t);
        if (x % piv == 0) {
          mod_row_transform(d, s.u, s.u_inv, t, i, 1, 0, -(x / piv), 1, n);
        } else {
          Bezout bz = ext_gcd(piv, x);
          mod_row_transform(d, s.u, s.u_inv, t, i, (long long)bz.p, (long long)bz.q,
                            -(x / (long long)bz.g), piv / (long long)bz.g, n);
        }
      }
      bool mixed = false;
      for (int j = t + 1; j < d.cols; ++j) {
        long long x = d.at(t, j);
        if (x == 0) continue;
        long long piv = d.at(t, t);
        if (x % piv == 0) {
          mod_col_transform(d, s.v, s.v_inv, t, j, 1, 0, -(x / piv), 1, n);
        } else {
          Bezout bz = ext_gcd(piv, x);
          mod_col_transform(d, s.v, s.v_inv, t, j, (long long)bz.p, (long long)bz.q,
                            -(x / (long long)bz.g), piv / (long long)bz.g, n);
          mixed = true;
        }
      }
      for (int i = t + 1; i < d.rows && !mixed; ++i)
        if (d.at(i, t) != 0) mixed = true;
      if (mixed) continue;

      int bi = -1;
      for (int i = t + 1; i < d.rows && bi < 0; ++i)
        for (int j = t + 1; j < d.cols; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            bi = i;
            break;
          }
      if (bi < 0) break;
      mod_row_transform(d, s.u, s.u_inv, t, bi, 1, 1, 0, 1, n);
    }
  }
  return s;
}

std::optional<std::vector<long long>> solve_mod(const IntMat& m, const std::vector<long long>& b,
                                                long long n) {
  if (static_cast<int>(b.size()) != m.rows) throw precondition_error("solve_mod: dimension mismatch");
  SmithModN s = smith_mod(m, n);
  std::vector<long long> c = s.u.mul_vec(b);
  for (long long& x : c) x = mod_reduce(x, n);
  std::vector<long long> w(m.cols, 0);
  const int k = std::min(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i) {
    long long di = i < k ? s.d.at(i, i) : 0;
    long long g = std::gcd(di, n);  // gcd(0, n) = n
    if (c[i] % g != 0) return std::nullopt;
    if (i >= k || g == n) continue;
    // Solve di * w = c[i] (mod n): divide the congruence by g.
    long long nn = n / g;
    Bezout bz = ext_gcd(di / g, nn);
    long long inv = mod_reduce((long long)bz.p, nn);
    w[i] = mod_reduce(detail::checked_mul(c[i] / g, inv), nn);
  }
  std::vector<long long> x = s.v.mul_vec(w);
  for (long long& v : x) v = mod_reduce(v, n);
  return x;
}

}  // namespace mext
