#include "mext/forms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace mext {

namespace {

constexpr long double kTwoPi = 6.283185307179586476925286766559005768394L;

long long diag_torsion(long long n) { return n % 2 == 0 ? 2 * n : n; }

// Decodes a mixed-radix element index into coords (last coordinate fastest).
void decode_index(const FinAbGroup& g, long long index, std::vector<long long>& coords) {
  coords.assign(g.moduli.size(), 0);
  for (int i = g.rank() - 1; i >= 0; --i) {
    coords[i] = index % g.moduli[i];
    index /= g.moduli[i];
  }
}

QZ eval_quad_coords(const QuadForm& q, const std::vector<long long>& x) {
  QZ v;
  int r = q.group.rank();
  for (int i = 0; i < r; ++i)
    if (x[i] != 0) v = v + q.diag[i].times(detail::checked_mul(x[i], x[i]));
  int idx = 0;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j, ++idx)
      if (x[i] != 0 && x[j] != 0) v = v + q.cross[idx].times(detail::checked_mul(x[i], x[j]));
  return v;
}

// Kernel data of the adjoint pairing against the given elements:
// {x : b(x, h_k) = 0 for all k}.
KernelCokernel pairing_kernel(const BilForm& b, const std::vector<GroupElt>& hs) {
  const FinAbGroup& a = b.group;
  long long e = a.exponent();
  int r = a.rank();
  int k = static_cast<int>(hs.size());
  FinAbGroup target = make_group(std::vector<long long>(k, e));
  IntMat m(k, r);
  for (int row = 0; row < k; ++row)
    for (int i = 0; i < r; ++i) {
      QZ v = eval_bil(b, make_elt(a, [&] {
                        std::vector<long long> c(r, 0);
                        c[i] = 1;
                        return c;
                      }()),
                      hs[row]);
      if (e % v.den() != 0) throw arithmetic_error("bilinear value denominator does not divide the exponent");
      m.at(row, i) = v.num() * (e / v.den()) % e;
    }
  return kernel_cokernel(make_hom(a, target, std::move(m)));
}

std::vector<GroupElt> embedding_columns(const GroupHom& emb) {
  std::vector<GroupElt> out;
  for (int c = 0; c < emb.matrix.cols; ++c) {
    std::vector<long long> v(emb.matrix.rows);
    for (int i = 0; i < emb.matrix.rows; ++i) v[i] = emb.matrix.at(i, c);
    out.push_back(make_elt(emb.target, std::move(v)));
  }
  return out;
}

}  // namespace

const QZ& QuadForm::cross_at(int i, int j) const {
  int r = group.rank();
  // row-major upper triangle: offset of (i,j), i < j
  int idx = i * (2 * r - i - 1) / 2 + (j - i - 1);
  return cross[idx];
}

QuadForm make_quad_form(const FinAbGroup& g, std::vector<QZ> diag, std::vector<QZ> cross) {
  int r = g.rank();
  if (static_cast<int>(diag.size()) != r || static_cast<int>(cross.size()) != r * (r - 1) / 2)
    throw precondition_error("QuadForm: generator data has the wrong shape");
  for (int i = 0; i < r; ++i)
    if (!diag[i].times(diag_torsion(g.moduli[i])).is_zero())
      throw precondition_error("QuadForm: diag[" + std::to_string(i) + "] violates its torsion constraint");
  int idx = 0;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j, ++idx)
      if (!cross[idx].times(std::gcd(g.moduli[i], g.moduli[j])).is_zero())
        throw precondition_error("QuadForm: cross value at (" + std::to_string(i) + "," +
                                 std::to_string(j) + ") violates its torsion constraint");
  return QuadForm{g, std::move(diag), std::move(cross)};
}

QuadForm zero_form(const FinAbGroup& g) {
  int r = g.rank();
  return QuadForm{g, std::vector<QZ>(r), std::vector<QZ>(r * (r - 1) / 2)};
}

QuadForm negate(const QuadForm& q) {
  QuadForm out = q;
  for (QZ& v : out.diag) v = -v;
  for (QZ& v : out.cross) v = -v;
  return out;
}

QuadForm add_forms(const QuadForm& a, const QuadForm& b) {
  if (a.group != b.group) throw precondition_error("add_forms: group mismatch");
  QuadForm out = a;
  for (size_t i = 0; i < out.diag.size(); ++i) out.diag[i] = out.diag[i] + b.diag[i];
  for (size_t i = 0; i < out.cross.size(); ++i) out.cross[i] = out.cross[i] + b.cross[i];
  return out;
}

QuadForm direct_sum(const QuadForm& a, const QuadForm& b) {
  std::vector<long long> moduli = a.group.moduli;
  moduli.insert(moduli.end(), b.group.moduli.begin(), b.group.moduli.end());
  FinAbGroup g = make_group(moduli);
  std::vector<QZ> diag = a.diag;
  diag.insert(diag.end(), b.diag.begin(), b.diag.end());
  int ra = a.group.rank();
  int r = g.rank();
  std::vector<QZ> cross;
  cross.reserve(static_cast<size_t>(r) * (r - 1) / 2);
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      if (j < ra)
        cross.push_back(a.cross_at(i, j));
      else if (i >= ra)
        cross.push_back(b.cross_at(i - ra, j - ra));
      else
        cross.push_back(QZ());
    }
  return make_quad_form(g, std::move(diag), std::move(cross));
}

QZ eval_quad(const QuadForm& q, const GroupElt& x) {
  if (x.parent != q.group) throw precondition_error("eval_quad: element parent mismatch");
  return eval_quad_coords(q, x.coords);
}

BilForm assoc_bilinear(const QuadForm& q) {
  int r = q.group.rank();
  BilForm b{q.group, std::vector<QZ>(static_cast<size_t>(r) * r)};
  for (int i = 0; i < r; ++i) {
    b.entries[static_cast<size_t>(i) * r + i] = q.diag[i].times(2);
    for (int j = i + 1; j < r; ++j) {
      b.entries[static_cast<size_t>(i) * r + j] = q.cross_at(i, j);
      b.entries[static_cast<size_t>(j) * r + i] = q.cross_at(i, j);
    }
  }
  return b;
}

QZ eval_bil(const BilForm& b, const GroupElt& x, const GroupElt& y) {
  if (x.parent != b.group || y.parent != b.group)
    throw precondition_error("eval_bil: element parent mismatch");
  QZ v;
  int r = b.group.rank();
  for (int i = 0; i < r; ++i) {
    if (x.coords[i] == 0) continue;
    for (int j = 0; j < r; ++j)
      if (y.coords[j] != 0) v = v + b.at(i, j).times(detail::checked_mul(x.coords[i], y.coords[j]));
  }
  return v;
}

std::vector<GroupElt> radical(const QuadForm& q) {
  BilForm b = assoc_bilinear(q);
  std::vector<GroupElt> gens;
  for (int i = 0; i < q.group.rank(); ++i) {
    std::vector<long long> c(q.group.rank(), 0);
    c[i] = 1;
    gens.push_back(make_elt(q.group, std::move(c)));
  }
  KernelCokernel kc = pairing_kernel(b, gens);
  return embedding_columns(kc.kernel_embedding);
}

bool is_nondegenerate(const QuadForm& q) {
  return subgroup_structure(q.group, radical(q)).order() == 1;
}

MetricGroup make_metric_group(const QuadForm& q) {
  if (!is_nondegenerate(q))
    throw precondition_error("MetricGroup: the quadratic form is degenerate");
  return MetricGroup{q.group, q};
}

QuadGroupData quad_group(const FinAbGroup& a) {
  int r = a.rank();
  std::vector<long long> moduli;
  std::vector<QuadForm> gens;
  for (int i = 0; i < r; ++i) {
    long long m = diag_torsion(a.moduli[i]);
    moduli.push_back(m);
    QuadForm g = zero_form(a);
    g.diag[i] = QZ(1, m);
    gens.push_back(std::move(g));
  }
  int idx = 0;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j, ++idx) {
      long long m = std::gcd(a.moduli[i], a.moduli[j]);
      moduli.push_back(m);
      QuadForm g = zero_form(a);
      g.cross[idx] = QZ(1, m);
      gens.push_back(std::move(g));
    }
  return QuadGroupData{make_group(std::move(moduli)), std::move(gens)};
}

std::vector<long long> quad_coordinates(const QuadForm& q) {
  const FinAbGroup& a = q.group;
  int r = a.rank();
  std::vector<long long> out;
  for (int i = 0; i < r; ++i) {
    long long m = diag_torsion(a.moduli[i]);
    if (m % q.diag[i].den() != 0) throw arithmetic_error("quad_coordinates: invalid diagonal torsion");
    out.push_back(q.diag[i].num() * (m / q.diag[i].den()) % m);
  }
  int idx = 0;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j, ++idx) {
      long long m = std::gcd(a.moduli[i], a.moduli[j]);
      if (m % q.cross[idx].den() != 0) throw arithmetic_error("quad_coordinates: invalid cross torsion");
      out.push_back(q.cross[idx].num() * (m / q.cross[idx].den()) % m);
    }
  return out;
}

std::vector<QuadForm> enumerate_forms(const FinAbGroup& a, bool nondegenerate_only, Exec exec) {
  if (a.order() > limits().form_enumeration_order)
    throw precondition_error("enumerate_forms: group order exceeds the enumeration guard");
  QuadGroupData qg = quad_group(a);
  long long total = qg.group.order();
  if (total > (1LL << 22))
    throw precondition_error("enumerate_forms: the form space itself is too large to materialize");

  std::vector<par::Range> ranges = par::block_ranges(total);
  std::vector<std::vector<QuadForm>> partial(ranges.size());
  par::block_for(total, exec, [&](long long lo, long long hi) {
    size_t slot = 0;
    while (ranges[slot].begin != lo) ++slot;
    std::vector<long long> c;
    for (long long k = lo; k < hi; ++k) {
      decode_index(qg.group, k, c);
      QuadForm f = zero_form(a);
      int r = a.rank();
      for (int i = 0; i < r; ++i) f.diag[i] = QZ(c[i], diag_torsion(a.moduli[i]));
      int idx = 0;
      for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j, ++idx)
          f.cross[idx] = QZ(c[r + idx], std::gcd(a.moduli[i], a.moduli[j]));
      if (!nondegenerate_only || is_nondegenerate(f)) partial[slot].push_back(std::move(f));
    }
  });
  std::vector<QuadForm> out;
  for (auto& p : partial)
    for (auto& f : p) out.push_back(std::move(f));
  return out;
}

GaussSum gauss_sum(const QuadForm& q, Exec exec) {
  long long n = q.group.order();
  if (n > limits().metric_group_order)
    throw precondition_error("gauss_sum: group order exceeds the metric-group guard");

  struct Acc {
    long double re = 0, im = 0;
  };
  Acc total = par::block_reduce<Acc>(
      n, exec, Acc{},
      [&](long long lo, long long hi) {
        Acc acc;
        std::vector<long long> c;
        for (long long k = lo; k < hi; ++k) {
          decode_index(q.group, k, c);
          long double ang = kTwoPi * eval_quad_coords(q, c).value();
          acc.re += std::cos(ang);
          acc.im += std::sin(ang);
        }
        return acc;
      },
      [](Acc a, Acc b) {
        return Acc{a.re + b.re, a.im + b.im};
      });

  // Exact |sigma|^2 = |A| * (#{z in rad : q(z) = 0} - #{z in rad : q(z) = 1/2});
  // q restricted to the radical is additive with values in {0, 1/2}.
  std::vector<GroupElt> rad = subgroup_elements(q.group, radical(q), n);
  long long plus = 0, minus = 0;
  for (const GroupElt& z : rad) {
    QZ v = eval_quad(q, z);
    if (v.is_zero())
      ++plus;
    else if (v == qz_half())
      ++minus;
    else
      throw arithmetic_error("gauss_sum: radical value outside {0, 1/2}");
  }
  GaussSum out{total.re, total.im, detail::checked_mul(n, plus - minus)};
  long double float_norm2 = out.re * out.re + out.im * out.im;
  if (std::fabs(static_cast<double>(float_norm2 - out.norm2)) > 1e-6 * static_cast<double>(std::max<long long>(n, 1)))
    throw arithmetic_error("gauss_sum: floating evaluation disagrees with the exact |sigma|^2");
  return out;
}

int central_charge(const MetricGroup& m, Exec exec) {
  GaussSum s = gauss_sum(m.form, exec);
  long long n = m.group.order();
  if (s.norm2 != n)
    throw precondition_error("central_charge: |sigma|^2 != |A|, the form is degenerate");
  long double inv = 1.0L / std::sqrt(static_cast<long double>(n));
  long double re = s.re * inv, im = s.im * inv;
  for (int k = 0; k < 8; ++k) {
    long double ang = kTwoPi * k / 8;
    long double dre = re - std::cos(ang), dim = im - std::sin(ang);
    if (std::sqrt(dre * dre + dim * dim) < 1e-6) return k;
  }
  throw arithmetic_error("central_charge: normalized Gauss sum is not an 8th root of unity");
}

std::vector<GroupElt> orthogonal_complement(const MetricGroup& m, const std::vector<GroupElt>& gens) {
  if (gens.empty()) {
    std::vector<GroupElt> all;
    for (int i = 0; i < m.group.rank(); ++i) {
      std::vector<long long> c(m.group.rank(), 0);
      c[i] = 1;
      all.push_back(make_elt(m.group, std::move(c)));
    }
    return all;
  }
  KernelCokernel kc = pairing_kernel(assoc_bilinear(m.form), gens);
  return embedding_columns(kc.kernel_embedding);
}

GroupElt Condensation::project(const GroupElt& x) const {
  auto coords = express_in_span(hperp_embedding.target, hperp_gens, x);
  if (!coords) throw precondition_error("condense: element is outside H^perp");
  GroupElt abstract = make_elt(hperp_to_result.source, *coords);
  return apply(hperp_to_result, abstract);
}

Condensation condense(const MetricGroup& m, const std::vector<GroupElt>& isotropic_gens) {
  // Everything here is matrix-based except the walk over H itself, so only the
  // condensed subgroup is size-guarded; the ambient group may be much larger.
  long long n = m.group.order();
  BilForm b = assoc_bilinear(m.form);
  for (size_t i = 0; i < isotropic_gens.size(); ++i) {
    if (!eval_quad(m.form, isotropic_gens[i]).is_zero())
      throw precondition_error("condense: subgroup generator has nonzero form value (not isotropic)");
    for (size_t j = i; j < isotropic_gens.size(); ++j)
      if (!eval_bil(b, isotropic_gens[i], isotropic_gens[j]).is_zero())
        throw precondition_error("condense: subgroup generators do not pair to zero (not isotropic)");
  }

  KernelCokernel perp = pairing_kernel(b, isotropic_gens.empty()
                                              ? std::vector<GroupElt>{zero_elt(m.group)}
                                              : isotropic_gens);
  std::vector<GroupElt> hperp_gens = embedding_columns(perp.kernel_embedding);

  // H inside abstract H^perp coordinates.
  std::vector<GroupElt> h_in_p;
  for (const GroupElt& h : isotropic_gens) {
    auto c = express_in_span(m.group, hperp_gens, h);
    if (!c) throw arithmetic_error("condense: isotropic generator is outside its own perp");
    h_in_p.push_back(make_elt(perp.kernel, *c));
  }
  Quotient quo = quotient_by(perp.kernel, h_in_p);

  std::vector<GroupElt> h_elems = subgroup_elements(m.group, isotropic_gens, limits().metric_group_order);
  long long h_order = static_cast<long long>(h_elems.size());

  // Minimal-coordinate coset representatives for the result generators.
  std::vector<GroupElt> lifts;
  for (int i = 0; i < quo.group.rank(); ++i) {
    std::vector<long long> e(quo.group.rank(), 0);
    e[i] = 1;
    GroupElt abstract = lift_through_section(quo, make_elt(quo.group, std::move(e)));
    GroupElt ambient = apply(perp.kernel_embedding, abstract);
    GroupElt best = ambient;
    for (const GroupElt& h : h_elems) {
      GroupElt cand = add(ambient, h);
      if (cand < best) best = cand;
    }
    lifts.push_back(best);
  }

  int rq = quo.group.rank();
  std::vector<QZ> diag(rq), cross(rq * (rq - 1) / 2);
  for (int i = 0; i < rq; ++i) diag[i] = eval_quad(m.form, lifts[i]);
  int idx = 0;
  for (int i = 0; i < rq; ++i)
    for (int j = i + 1; j < rq; ++j, ++idx) cross[idx] = eval_bil(b, lifts[i], lifts[j]);
  QuadForm qform = make_quad_form(quo.group, std::move(diag), std::move(cross));

  // Well-definedness on coset representatives: moving a lift by H leaves the data.
  for (int i = 0; i < rq; ++i)
    for (const GroupElt& h : isotropic_gens) {
      if (eval_quad(m.form, add(lifts[i], h)) != qform.diag[i])
        throw arithmetic_error("condense: induced form value depends on the coset representative");
      if (!eval_bil(b, lifts[i], h).is_zero())
        throw arithmetic_error("condense: lift pairs nontrivially with the condensed subgroup");
    }

  if (quo.group.order() * h_order * h_order != n)
    throw arithmetic_error("condense: |H^perp/H| != |A|/|H|^2");

  MetricGroup result = make_metric_group(qform);
  return Condensation{result, lifts, hperp_gens, quo.projection, perp.kernel_embedding};
}

namespace {

struct SideTables {
  std::vector<GroupElt> elems;
  std::vector<long long> order_of;    // by element index
  std::vector<QZ> q_of;               // by element index
  std::vector<int> coset_of;          // by element index
  std::vector<std::vector<std::pair<long long, QZ>>> coset_sig;  // sorted signature per coset id
};

SideTables build_tables(const MetricGroup& m, const std::vector<GroupElt>& span_gens) {
  SideTables t;
  long long n = m.group.order();
  t.elems = elements(m.group, limits().metric_group_order);
  t.order_of.resize(n);
  t.q_of.resize(n);
  t.coset_of.assign(n, -1);
  for (long long i = 0; i < n; ++i) {
    t.order_of[i] = elt_order(t.elems[i]);
    t.q_of[i] = eval_quad(m.form, t.elems[i]);
  }
  std::vector<GroupElt> span = subgroup_elements(m.group, span_gens, n);
  int next = 0;
  for (long long i = 0; i < n; ++i) {
    if (t.coset_of[i] >= 0) continue;
    std::vector<std::pair<long long, QZ>> sig;
    for (const GroupElt& s : span) {
      long long j = element_index(add(t.elems[i], s));
      t.coset_of[j] = next;
      sig.emplace_back(t.order_of[j], t.q_of[j]);
    }
    std::sort(sig.begin(), sig.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first < b.first : a.second < b.second;
    });
    t.coset_sig.push_back(std::move(sig));
    ++next;
  }
  return t;
}

}  // namespace

std::optional<GroupHom> isometry_search(const MetricGroup& m1, const MetricGroup& m2,
                                        const std::vector<std::pair<GroupElt, GroupElt>>& pinned) {
  if (m1.group.order() != m2.group.order()) return std::nullopt;
  if (canonical_decomposition(m1.group) != canonical_decomposition(m2.group)) return std::nullopt;

  BilForm b1 = assoc_bilinear(m1.form), b2 = assoc_bilinear(m2.form);
  std::vector<GroupElt> dom, img;
  for (const auto& [p, y] : pinned) {
    if (eval_quad(m1.form, p) != eval_quad(m2.form, y)) return std::nullopt;
    if (elt_order(p) != elt_order(y)) return std::nullopt;
    dom.push_back(p);
    img.push_back(y);
  }
  for (size_t i = 0; i < dom.size(); ++i)
    for (size_t j = i; j < dom.size(); ++j)
      if (eval_bil(b1, dom[i], dom[j]) != eval_bil(b2, img[i], img[j])) return std::nullopt;

  SideTables t1 = build_tables(m1, dom);
  SideTables t2 = build_tables(m2, img);
  {
    auto s1 = t1.coset_sig;
    auto s2 = t2.coset_sig;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return std::nullopt;
  }

  int r = m1.group.rank();
  long long n2 = m2.group.order();
  std::vector<GroupElt> assigned;  // images of e_0..e_{i-1}
  std::vector<GroupElt> egens;
  for (int i = 0; i < r; ++i) {
    std::vector<long long> c(r, 0);
    c[i] = 1;
    egens.push_back(make_elt(m1.group, std::move(c)));
  }

  std::optional<GroupHom> found;
  auto dfs = [&](auto&& self, int level) -> bool {
    if (level == r) {
      IntMat mat(m2.group.rank(), r);
      for (int j = 0; j < r; ++j)
        for (int i = 0; i < m2.group.rank(); ++i) mat.at(i, j) = assigned[j].coords[i];
      GroupHom f = make_hom(m1.group, m2.group, std::move(mat));
      for (size_t k = 0; k < dom.size(); ++k)
        if (apply(f, dom[k]) != img[k]) return false;
      if (subgroup_structure(m2.group, assigned).order() != n2) return false;
      for (const GroupElt& x : t1.elems)
        if (eval_quad(m2.form, apply(f, x)) != eval_quad(m1.form, x)) return false;
      found = std::move(f);
      return true;
    }
    long long ei_idx = element_index(egens[level]);
    for (long long cand = 0; cand < n2; ++cand) {
      const GroupElt& c = t2.elems[cand];
      if (!scale(m1.group.moduli[level], c).is_zero()) continue;
      if (t2.q_of[cand] != t1.q_of[ei_idx]) continue;
      if (t2.coset_sig[t2.coset_of[cand]] != t1.coset_sig[t1.coset_of[ei_idx]]) continue;
      bool ok = true;
      for (int j = 0; j < level && ok; ++j)
        if (eval_bil(b2, c, assigned[j]) != eval_bil(b1, egens[level], egens[j])) ok = false;
      for (size_t k = 0; k < dom.size() && ok; ++k)
        if (eval_bil(b2, c, img[k]) != eval_bil(b1, egens[level], dom[k])) ok = false;
      if (!ok) continue;
      assigned.push_back(c);
      if (self(self, level + 1)) return true;
      assigned.pop_back();
    }
    return false;
  };
  dfs(dfs, 0);
  return found;
}

}  // namespace mext
