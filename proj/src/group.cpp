#include "mext/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace mext {

namespace {

constexpr long long kExponentCap = 1LL << 16;

long long mod_reduce(long long v, long long n) {
  v %= n;
  if (v < 0) v += n;
  return v;
}

// Presentation matrix of A/<gens>: columns are the relations n_i e_i together
// with the given generators.
IntMat relations_matrix(const FinAbGroup& a, const std::vector<GroupElt>& gens) {
  int r = a.rank();
  IntMat m(r, r + static_cast<int>(gens.size()));
  for (int i = 0; i < r; ++i) m.at(i, i) = a.moduli[i];
  for (size_t k = 0; k < gens.size(); ++k) {
    if (gens[k].parent != a) throw precondition_error("subgroup generator has a different parent group");
    for (int i = 0; i < r; ++i) m.at(i, r + static_cast<int>(k)) = gens[k].coords[i];
  }
  return m;
}

// Columns generating {x : m x = 0 mod n}. Because the relevant column spans
// always contain n Z^rows here, working modulo n loses nothing, and entries
// never leave [0, n).
IntMat mod_kernel_columns(const IntMat& m, long long n) {
  SmithModN s = smith_mod(m, n);
  int k = std::min(m.rows, m.cols);
  IntMat out(m.cols, m.cols);
  for (int i = 0; i < m.cols; ++i) {
    long long di = i < k ? s.d.at(i, i) : 0;
    long long mult = n / std::gcd(di, n);
    for (int r = 0; r < m.cols; ++r)
      out.at(r, i) = mod_reduce(detail::checked_mul(mult, s.v.at(r, i)), n);
  }
  return out;
}

// Generators of the relation subgroup {c : sum_j c_j gens[j] = 0 in a}, as the
// first #gens coordinates of the mod-n kernel of [gens | diag(moduli)].
IntMat relation_columns(const FinAbGroup& a, const std::vector<GroupElt>& gens, long long n) {
  int k = static_cast<int>(gens.size());
  int r = a.rank();
  IntMat span(r, k + r);
  for (int c = 0; c < k; ++c) {
    if (gens[c].parent != a) throw precondition_error("subgroup generator has a different parent group");
    for (int i = 0; i < r; ++i) span.at(i, c) = gens[c].coords[i];
  }
  for (int i = 0; i < r; ++i) span.at(i, k + i) = a.moduli[i];
  IntMat full = mod_kernel_columns(span, n);
  IntMat rel(k, full.cols);
  for (int i = 0; i < k; ++i)
    for (int c = 0; c < full.cols; ++c) rel.at(i, c) = full.at(i, c);
  return rel;
}

}  // namespace

long long FinAbGroup::order() const {
  long long o = 1;
  for (long long n : moduli) o = detail::checked_mul(o, n);
  return o;
}

long long FinAbGroup::exponent() const {
  long long e = 1;
  for (long long n : moduli) e = std::lcm(e, n);
  return e;
}

FinAbGroup make_group(std::vector<long long> moduli) {
  for (long long n : moduli)
    if (n < 1) throw precondition_error("FinAbGroup: moduli must be positive");
  FinAbGroup g{std::move(moduli)};
  if (g.exponent() > kExponentCap) throw precondition_error("FinAbGroup: exponent exceeds the 2^16 cap");
  return g;
}

GroupElt make_elt(const FinAbGroup& parent, std::vector<long long> coords) {
  if (coords.size() != parent.moduli.size())
    throw precondition_error("GroupElt: coordinate count does not match the parent rank");
  for (size_t i = 0; i < coords.size(); ++i) coords[i] = mod_reduce(coords[i], parent.moduli[i]);
  return GroupElt{parent, std::move(coords)};
}

bool GroupElt::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](long long c) { return c == 0; });
}

GroupElt zero_elt(const FinAbGroup& g) { return GroupElt{g, std::vector<long long>(g.moduli.size(), 0)}; }

GroupElt add(const GroupElt& a, const GroupElt& b) {
  if (a.parent != b.parent) throw precondition_error("GroupElt: parent mismatch in addition");
  std::vector<long long> c(a.coords.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = mod_reduce(a.coords[i] + b.coords[i], a.parent.moduli[i]);
  return GroupElt{a.parent, std::move(c)};
}

GroupElt neg(const GroupElt& a) {
  std::vector<long long> c(a.coords.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = mod_reduce(-a.coords[i], a.parent.moduli[i]);
  return GroupElt{a.parent, std::move(c)};
}

GroupElt sub(const GroupElt& a, const GroupElt& b) { return add(a, neg(b)); }

GroupElt scale(long long k, const GroupElt& a) {
  std::vector<long long> c(a.coords.size());
  for (size_t i = 0; i < c.size(); ++i) {
    long long n = a.parent.moduli[i];
    c[i] = mod_reduce(static_cast<long long>((static_cast<__int128>(mod_reduce(k, n)) * a.coords[i]) % n), n);
  }
  return GroupElt{a.parent, std::move(c)};
}

long long elt_order(const GroupElt& a) {
  long long o = 1;
  for (size_t i = 0; i < a.coords.size(); ++i) {
    long long n = a.parent.moduli[i];
    long long d = n / std::gcd(a.coords[i], n);
    o = std::lcm(o, d);
  }
  return o;
}

QZ pair_eval(const GroupElt& x, const GroupElt& phi) {
  if (x.parent != phi.parent) throw precondition_error("pair_eval: the element and the character live over different moduli");
  QZ v;
  for (size_t i = 0; i < x.coords.size(); ++i)
    v = v + QZ(detail::checked_mul(x.coords[i], phi.coords[i]), x.parent.moduli[i]);
  return v;
}

std::vector<GroupElt> elements(const FinAbGroup& g, long long guard) {
  long long n = g.order();
  if (n > guard) throw precondition_error("element enumeration exceeds the size guard");
  std::vector<GroupElt> out;
  out.reserve(n);
  std::vector<long long> c(g.moduli.size(), 0);
  for (long long k = 0; k < n; ++k) {
    out.push_back(GroupElt{g, c});
    for (int i = g.rank() - 1; i >= 0; --i) {
      if (++c[i] < g.moduli[i]) break;
      c[i] = 0;
    }
  }
  return out;
}

long long element_index(const GroupElt& e) {
  long long idx = 0;
  for (size_t i = 0; i < e.coords.size(); ++i)
    idx = detail::checked_add(detail::checked_mul(idx, e.parent.moduli[i]), e.coords[i]);
  return idx;
}

GroupElt element_at(const FinAbGroup& g, long long index) {
  std::vector<long long> c(g.moduli.size(), 0);
  for (int i = g.rank() - 1; i >= 0; --i) {
    c[i] = index % g.moduli[i];
    index /= g.moduli[i];
  }
  return GroupElt{g, std::move(c)};
}

GroupHom make_hom(const FinAbGroup& source, const FinAbGroup& target, IntMat matrix) {
  if (matrix.rows != target.rank() || matrix.cols != source.rank())
    throw precondition_error("GroupHom: matrix shape does not match source/target ranks");
  for (int i = 0; i < matrix.rows; ++i)
    for (int j = 0; j < matrix.cols; ++j) matrix.at(i, j) = mod_reduce(matrix.at(i, j), target.moduli[i]);
  // Well-definedness: each source relation must map to zero.
  for (int j = 0; j < matrix.cols; ++j)
    for (int i = 0; i < matrix.rows; ++i)
      if (detail::checked_mul(source.moduli[j], matrix.at(i, j)) % target.moduli[i] != 0)
        throw precondition_error("GroupHom: column " + std::to_string(j) +
                                 " does not kill the source relation (not well defined)");
  return GroupHom{source, target, std::move(matrix)};
}

GroupHom zero_hom(const FinAbGroup& source, const FinAbGroup& target) {
  return GroupHom{source, target, IntMat(target.rank(), source.rank())};
}

GroupHom identity_hom(const FinAbGroup& g) { return GroupHom{g, g, IntMat::identity(g.rank())}; }

GroupElt apply(const GroupHom& f, const GroupElt& x) {
  if (x.parent != f.source) throw precondition_error("GroupHom: argument parent mismatch");
  return make_elt(f.target, f.matrix.mul_vec(x.coords));
}

GroupHom compose(const GroupHom& g, const GroupHom& f) {
  if (f.target != g.source) throw precondition_error("compose: inner target differs from outer source");
  return make_hom(f.source, g.target, g.matrix.mul(f.matrix));
}

FinAbGroup canonical_decomposition(const FinAbGroup& g) {
  int r = g.rank();
  IntMat d(r, r);
  for (int i = 0; i < r; ++i) d.at(i, i) = g.moduli[i];
  std::vector<long long> diag = smith_diagonal(d);
  std::vector<long long> moduli;
  for (long long v : diag)
    if (v > 1) moduli.push_back(v);
  return FinAbGroup{std::move(moduli)};
}

namespace {
FinAbGroup gcd_product(const FinAbGroup& a, const FinAbGroup& b) {
  std::vector<long long> moduli;
  for (long long x : a.moduli)
    for (long long y : b.moduli) {
      long long g = std::gcd(x, y);
      if (g > 1) moduli.push_back(g);
    }
  return canonical_decomposition(FinAbGroup{std::move(moduli)});
}
}  // namespace

FinAbGroup hom_group(const FinAbGroup& a, const FinAbGroup& b) { return gcd_product(a, b); }
FinAbGroup ext_group(const FinAbGroup& a, const FinAbGroup& b) { return gcd_product(a, b); }
FinAbGroup tensor_product(const FinAbGroup& a, const FinAbGroup& b) { return gcd_product(a, b); }

FinAbGroup wedge_power(const FinAbGroup& a, int k) {
  if (k != 2 && k != 3) throw precondition_error("wedge_power: only k = 2 and k = 3 are supported");
  FinAbGroup c = canonical_decomposition(a);
  std::vector<long long> moduli;
  int r = c.rank();
  if (k == 2) {
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) {
        long long g = std::gcd(c.moduli[i], c.moduli[j]);
        if (g > 1) moduli.push_back(g);
      }
  } else {
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j)
        for (int l = j + 1; l < r; ++l) {
          long long g = std::gcd(std::gcd(c.moduli[i], c.moduli[j]), c.moduli[l]);
          if (g > 1) moduli.push_back(g);
        }
  }
  return canonical_decomposition(FinAbGroup{std::move(moduli)});
}

KernelCokernel kernel_cokernel(const GroupHom& f) {
  const FinAbGroup& a = f.source;
  const FinAbGroup& b = f.target;
  int ra = a.rank(), rb = b.rank();
  long long n = std::lcm(a.exponent(), b.exponent());

  // Kernel: restrict the mod-n kernel of [matrix | diag(target moduli)] to the
  // source coordinates; those restrictions generate the kernel subgroup.
  IntMat m(rb, ra + rb);
  for (int i = 0; i < rb; ++i) {
    for (int j = 0; j < ra; ++j) m.at(i, j) = f.matrix.at(i, j);
    m.at(i, ra + i) = b.moduli[i];
  }
  IntMat lat = mod_kernel_columns(m, n);
  std::vector<GroupElt> kgens;
  for (int c = 0; c < lat.cols; ++c) {
    std::vector<long long> v(ra);
    for (int i = 0; i < ra; ++i) v[i] = lat.at(i, c);
    GroupElt e = make_elt(a, std::move(v));
    if (!e.is_zero()) kgens.push_back(e);
  }

  // Adapted kernel generators via the relation subgroup of the generating tuple.
  int kk = static_cast<int>(kgens.size());
  IntMat rel = relation_columns(a, kgens, n);
  SmithModN s2 = smith_mod(rel, n);
  std::vector<long long> kmoduli;
  std::vector<int> keep;
  for (int i = 0; i < kk; ++i) {
    long long delta = std::gcd(s2.d.at(i, i), n);
    if (delta > 1) {
      kmoduli.push_back(delta);
      keep.push_back(i);
    }
  }
  FinAbGroup kernel = make_group(kmoduli);
  IntMat emb(ra, kernel.rank());
  for (size_t kcol = 0; kcol < keep.size(); ++kcol) {
    // Abstract generator kcol is the source element with coefficient vector
    // u_inv * e_{keep[kcol]} over the original kernel generators.
    GroupElt g = zero_elt(a);
    for (int i = 0; i < kk; ++i) g = add(g, scale(s2.u_inv.at(i, keep[kcol]), kgens[i]));
    for (int i = 0; i < ra; ++i) emb.at(i, static_cast<int>(kcol)) = g.coords[i];
  }
  GroupHom kernel_embedding = make_hom(kernel, a, emb);

  // Cokernel: mod-n Smith form of [matrix | diag(target moduli)]; the invariant
  // factors are gcd(d_i, n) and the projection is read off the kept rows of u.
  SmithModN cs = smith_mod(m, n);
  std::vector<long long> cmoduli;
  std::vector<int> ckeep;
  for (int i = 0; i < rb; ++i) {
    long long delta = std::gcd(cs.d.at(i, i), n);
    if (delta > 1) {
      cmoduli.push_back(delta);
      ckeep.push_back(i);
    }
  }
  FinAbGroup cokernel = make_group(cmoduli);
  IntMat proj(cokernel.rank(), rb);
  for (size_t r = 0; r < ckeep.size(); ++r)
    for (int j = 0; j < rb; ++j) proj.at(static_cast<int>(r), j) = cs.u.at(ckeep[r], j);
  GroupHom cokernel_projection = make_hom(b, cokernel, proj);

  // Exactness bookkeeping: |ker| * |im| = |source| and |im| * |coker| = |target|.
  long long image1 = a.order() / kernel.order();
  if (a.order() % kernel.order() != 0 || b.order() % cokernel.order() != 0 ||
      image1 != b.order() / cokernel.order())
    throw arithmetic_error("kernel_cokernel: exactness check failed");

  return KernelCokernel{kernel, kernel_embedding, cokernel, cokernel_projection};
}

Quotient quotient_by(const FinAbGroup& a, const std::vector<GroupElt>& gens) {
  int r = a.rank();
  long long n = a.exponent();
  IntMat m = relations_matrix(a, gens);
  SmithModN s = smith_mod(m, n);
  std::vector<long long> qmoduli;
  std::vector<int> keep;
  for (int i = 0; i < r; ++i) {
    long long delta = std::gcd(s.d.at(i, i), n);
    if (delta > 1) {
      qmoduli.push_back(delta);
      keep.push_back(i);
    }
  }
  FinAbGroup q = make_group(qmoduli);
  IntMat proj(q.rank(), r);
  for (size_t i = 0; i < keep.size(); ++i)
    for (int j = 0; j < r; ++j) proj.at(static_cast<int>(i), j) = s.u.at(keep[i], j);
  IntMat section(r, q.rank());
  for (int i = 0; i < r; ++i)
    for (size_t c = 0; c < keep.size(); ++c) section.at(i, static_cast<int>(c)) = s.u_inv.at(i, keep[c]);
  return Quotient{q, make_hom(a, q, proj), section};
}

GroupElt lift_through_section(const Quotient& q, const GroupElt& y) {
  if (y.parent != q.group) throw precondition_error("lift_through_section: element is not in the quotient");
  return make_elt(q.projection.source, q.section.mul_vec(y.coords));
}

FinAbGroup subgroup_structure(const FinAbGroup& a, const std::vector<GroupElt>& gens) {
  int k = static_cast<int>(gens.size());
  if (k == 0) return FinAbGroup{{}};
  long long n = a.exponent();
  IntMat rel = relation_columns(a, gens, n);
  SmithModN s = smith_mod(rel, n);
  std::vector<long long> moduli;
  for (int i = 0; i < k; ++i) {
    long long delta = std::gcd(s.d.at(i, i), n);
    if (delta > 1) moduli.push_back(delta);
  }
  return canonical_decomposition(FinAbGroup{std::move(moduli)});
}

std::vector<GroupElt> subgroup_elements(const FinAbGroup& a, const std::vector<GroupElt>& gens,
                                        long long guard) {
  std::set<GroupElt> seen;
  seen.insert(zero_elt(a));
  std::vector<GroupElt> frontier{zero_elt(a)};
  while (!frontier.empty()) {
    std::vector<GroupElt> next;
    for (const GroupElt& x : frontier)
      for (const GroupElt& g : gens) {
        GroupElt y = add(x, g);
        if (seen.insert(y).second) {
          if (static_cast<long long>(seen.size()) > guard)
            throw precondition_error("subgroup enumeration exceeds the size guard");
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  return std::vector<GroupElt>(seen.begin(), seen.end());
}

std::optional<std::vector<long long>> express_in_span(const FinAbGroup& a,
                                                      const std::vector<GroupElt>& gens,
                                                      const GroupElt& x) {
  if (x.parent != a) throw precondition_error("express_in_span: element parent mismatch");
  int k = static_cast<int>(gens.size());
  int r = a.rank();
  IntMat m(r, k + r);
  for (int c = 0; c < k; ++c) {
    if (gens[c].parent != a) throw precondition_error("subgroup generator has a different parent group");
    for (int i = 0; i < r; ++i) m.at(i, c) = gens[c].coords[i];
  }
  for (int i = 0; i < r; ++i) m.at(i, k + i) = a.moduli[i];
  auto sol = solve_mod(m, x.coords, a.exponent());
  if (!sol) return std::nullopt;
  return std::vector<long long>(sol->begin(), sol->begin() + k);
}

bool is_split(const FinAbGroup& a, const GroupElt& t) {
  if (t.parent != a) throw precondition_error("is_split: element parent mismatch");
  if (elt_order(t) != 2) throw precondition_error("is_split: t must have order exactly 2");
  // <t> is a summand iff t is not divisible by 2 in A.
  int r = a.rank();
  IntMat m(r, 2 * r);
  for (int i = 0; i < r; ++i) {
    m.at(i, i) = 2;
    m.at(i, r + i) = a.moduli[i];
  }
  return !solve_mod(m, t.coords, a.exponent()).has_value();
}

std::optional<std::vector<GroupElt>> complement_search(const FinAbGroup& a, const GroupElt& t) {
  if (elt_order(t) != 2) throw precondition_error("complement_search: t must have order exactly 2");
  if (a.order() > 4096) throw precondition_error("complement_search: group order exceeds the 2^12 guard");
  // A complement of <t> is the kernel of a retraction A -> <t> = Z_2, so walk
  // all characters A -> Z_2 in lexicographic order and keep the first that is
  // nonzero on t.
  std::vector<int> spots;
  for (int i = 0; i < a.rank(); ++i)
    if (a.moduli[i] % 2 == 0) spots.push_back(i);
  FinAbGroup z2 = make_group({2});
  long long count = 1LL << spots.size();
  for (long long mask = 0; mask < count; ++mask) {
    IntMat m(1, a.rank());
    for (size_t b = 0; b < spots.size(); ++b)
      if (mask & (1LL << b)) m.at(0, spots[b]) = 1;
    GroupHom chi = make_hom(a, z2, m);
    if (apply(chi, t).is_zero()) continue;
    KernelCokernel kc = kernel_cokernel(chi);
    std::vector<GroupElt> gens;
    for (int c = 0; c < kc.kernel_embedding.matrix.cols; ++c) {
      std::vector<long long> v(a.rank());
      for (int i = 0; i < a.rank(); ++i) v[i] = kc.kernel_embedding.matrix.at(i, c);
      gens.push_back(make_elt(a, std::move(v)));
    }
    // Complement sanity: right order and t outside it.
    if (subgroup_structure(a, gens).order() * 2 != a.order()) throw arithmetic_error("complement has the wrong order");
    if (express_in_span(a, gens, t).has_value()) throw arithmetic_error("complement contains t");
    return gens;
  }
  return std::nullopt;
}

}  // namespace mext
