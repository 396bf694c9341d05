#include "mext/filtration.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "mext/error.hpp"
#include "mext/forms.hpp"
#include "mext/parallel.hpp"

namespace mext {

namespace {

long long mod_pos(long long v, long long m) {
  long long r = v % m;
  return r < 0 ? r + m : r;
}

int pair_slot(int r, int i, int j) {
  int idx = 0;
  for (int a = 0; a < i; ++a) idx += r - 1 - a;
  return idx + (j - i - 1);
}

GroupElt unit_elt(const FinAbGroup& g, int i) {
  std::vector<long long> c(g.rank(), 0);
  c[i] = 1;
  return make_elt(g, std::move(c));
}

long long gcd_of(const FinAbGroup& a, int i, int j) {
  return std::gcd(a.moduli[i], a.moduli[j]);
}

}  // namespace

AbCocycle2 make_ab_cocycle(const FinAbGroup& a, std::vector<long long> matrix) {
  int r = a.rank();
  if (static_cast<int>(matrix.size()) != r * r)
    throw precondition_error("AbCocycle2: matrix size does not match rank^2");
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      matrix[static_cast<size_t>(i) * r + j] =
          mod_pos(matrix[static_cast<size_t>(i) * r + j], gcd_of(a, i, j));
  return AbCocycle2{a, std::move(matrix)};
}

GroupElt ab_cocycle_value(const AbCocycle2& l, const GroupElt& x, const GroupElt& y) {
  const FinAbGroup& a = l.group;
  if (x.parent != a || y.parent != a)
    throw precondition_error("ab_cocycle_value: arguments must live in the cocycle's group");
  int r = a.rank();
  std::vector<long long> coords(r, 0);
  for (int i = 0; i < r; ++i) {
    if (x.coords[i] + y.coords[i] < a.moduli[i]) continue;
    for (int j = 0; j < r; ++j) coords[j] += l.at(i, j);
  }
  return make_elt(dual_group(a), std::move(coords));
}

QZ ab_cocycle_eval(const AbCocycle2& l, const GroupElt& x, const GroupElt& y, const GroupElt& z) {
  return pair_eval(z, ab_cocycle_value(l, x, y));
}

AbCocycle2 epsilon(const AbCocycle2& l) {
  const FinAbGroup& a = l.group;
  if (a.order() > 64) throw precondition_error("epsilon: group order exceeds 64");
  int r = a.rank();
  std::vector<GroupElt> all = elements(a, 64);
  long long n = a.order();

  // Row characters w_i and their fractional values on every element.
  std::vector<std::vector<QZ>> wt(r, std::vector<QZ>(n));
  for (int i = 0; i < r; ++i) {
    std::vector<long long> row(r);
    for (int j = 0; j < r; ++j) row[j] = l.at(i, j);
    GroupElt wi = make_elt(dual_group(a), std::move(row));
    for (const GroupElt& x : all) wt[i][element_index(x)] = pair_eval(x, wi);
  }

  // a_param(arg) = sum_i arg_i * wt_i(param) / n_i, the explicit trivializing
  // cochain of L_{.,.}(param) as a function of arg.
  auto cochain = [&](const GroupElt& param, const GroupElt& arg) {
    QZ acc;
    long long p = element_index(param);
    for (int i = 0; i < r; ++i) {
      if (arg.coords[i] == 0 || wt[i][p].is_zero()) continue;
      acc = acc + QZ(arg.coords[i] * wt[i][p].num(), wt[i][p].den() * a.moduli[i]);
    }
    return acc;
  };

  for (const GroupElt& z : all)
    for (const GroupElt& x : all)
      for (const GroupElt& y : all) {
        QZ lhs = cochain(z, x) + cochain(z, y) - cochain(z, add(x, y));
        if (lhs != ab_cocycle_eval(l, x, y, z))
          throw arithmetic_error("epsilon: the trivializing cochain fails its defining identity");
      }

  // The involution re-reads the cochain with the roles of parameter and
  // argument swapped; extracting its carry-basis matrix must give the
  // transpose, which is then the returned representative.
  auto eps_value = [&](const GroupElt& x, const GroupElt& y, const GroupElt& z) {
    return cochain(x, z) + cochain(y, z) - cochain(add(x, y), z);
  };

  std::vector<long long> trans(static_cast<size_t>(r) * r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) trans[static_cast<size_t>(i) * r + j] = l.at(j, i);
  AbCocycle2 result = make_ab_cocycle(a, std::move(trans));

  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      QZ s;
      for (long long k = 0; k < a.moduli[i]; ++k)
        s = s + eps_value(scale(k, unit_elt(a, i)), unit_elt(a, i), unit_elt(a, j));
      if (s.is_zero() ? false : a.moduli[j] % s.den() != 0)
        throw arithmetic_error("epsilon: extraction produced a value outside (1/n_j)Z");
      long long extracted =
          s.is_zero() ? 0 : mod_pos(s.num() * (a.moduli[j] / s.den()), gcd_of(a, i, j));
      if (extracted != result.at(i, j))
        throw arithmetic_error("epsilon: extraction disagrees with the transposed matrix");
    }
  return result;
}

FinAbGroup symmetric_classes(const FinAbGroup& a) {
  int r = a.rank();
  std::vector<long long> moduli = a.moduli;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) moduli.push_back(gcd_of(a, i, j));
  return make_group(std::move(moduli));
}

AbCocycle2 symmetric_cocycle_at(const FinAbGroup& a, const GroupElt& v) {
  if (v.parent != symmetric_classes(a))
    throw precondition_error("symmetric_cocycle_at: coordinates must live in symmetric_classes");
  int r = a.rank();
  std::vector<long long> m(static_cast<size_t>(r) * r, 0);
  for (int i = 0; i < r; ++i) m[static_cast<size_t>(i) * r + i] = v.coords[i];
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      long long c = v.coords[r + pair_slot(r, i, j)];
      m[static_cast<size_t>(i) * r + j] = c;
      m[static_cast<size_t>(j) * r + i] = c;
    }
  return make_ab_cocycle(a, std::move(m));
}

ThetaKernel theta_kernel(const BaseCategory& base) {
  const FinAbGroup& a = base.a;
  int r = a.rank();
  FinAbGroup dom = symmetric_classes(a);

  // Present the 2-torsion subgroup abstractly: one Z_2 per even modulus,
  // embedded by (n_i / 2) e_i.
  std::vector<int> even;
  for (int i = 0; i < r; ++i)
    if (a.moduli[i] % 2 == 0) even.push_back(i);
  int s = static_cast<int>(even.size());
  if (s == 0)
    return ThetaKernel{canonical_decomposition(dom), zero_hom(dom, make_group({}))};
  FinAbGroup torsion = make_group(std::vector<long long>(s, 2));

  auto embed = [&](const GroupElt& v) {
    std::vector<long long> c(r, 0);
    for (int l = 0; l < s; ++l) c[even[l]] = v.coords[l] * (a.moduli[even[l]] / 2);
    return make_elt(a, std::move(c));
  };
  std::vector<long long> tcoords(s);
  for (int l = 0; l < s; ++l) tcoords[l] = 2 * base.t.coords[even[l]] / a.moduli[even[l]];
  GroupElt t_abs = make_elt(torsion, std::move(tcoords));

  Quotient quo = quotient_by(torsion, {t_abs});
  FinAbGroup target = dual_group(quo.group);

  if (target.order() == 1) {
    // Nothing to map onto; every class is in the kernel.
    return ThetaKernel{canonical_decomposition(dom), zero_hom(dom, target)};
  }

  std::vector<GroupElt> torsion_all = elements(torsion, limits().metric_group_order);

  IntMat mat(target.rank(), dom.rank());
  for (int g = 0; g < dom.rank(); ++g) {
    AbCocycle2 lrep = symmetric_cocycle_at(a, unit_elt(dom, g));
    // The character x -> L_{x,x}(x + t) on the 2-torsion subgroup.
    auto chi = [&](const GroupElt& v) {
      GroupElt x = embed(v);
      return ab_cocycle_eval(lrep, x, x, add(x, base.t));
    };
    for (const GroupElt& v : torsion_all) {
      QZ c = chi(v);
      if (!c.is_zero() && c != qz_half())
        throw arithmetic_error("theta_kernel: character value escapes {0, 1/2}");
      for (const GroupElt& w : torsion_all)
        if (chi(add(v, w)) != chi(v) + chi(w))
          throw arithmetic_error("theta_kernel: character is not additive on the 2-torsion");
    }
    if (!chi(t_abs).is_zero())
      throw arithmetic_error("theta_kernel: character does not vanish on t");

    for (int m = 0; m < quo.group.rank(); ++m) {
      QZ c = chi(lift_through_section(quo, unit_elt(quo.group, m)));
      mat.at(m, g) = c.is_zero() ? 0 : 1;
    }
  }

  GroupHom theta = make_hom(dom, target, std::move(mat));
  KernelCokernel kc = kernel_cokernel(theta);
  if (kc.kernel.order() * target.order() != dom.order())
    throw arithmetic_error("theta_kernel: the map is not surjective");
  return ThetaKernel{canonical_decomposition(kc.kernel), theta};
}

KappaCokernel kappa_cokernel(const BaseCategory& base) {
  const FinAbGroup& a = base.a;
  int r = a.rank();

  // Source: Hom(A, A^), one Z_{gcd(n_i, n_j)} factor per ordered pair (i, j),
  // generated by x -> (n_j / gcd) x_i e_j^.
  std::vector<long long> src_moduli;
  src_moduli.reserve(static_cast<size_t>(r) * r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) src_moduli.push_back(gcd_of(a, i, j));
  FinAbGroup source = make_group(std::move(src_moduli));

  QuadGroupData qg = quad_group(a);

  IntMat mat(qg.group.rank(), source.rank());
  int col = 0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j, ++col) {
      // q(x) = x_i (x_j + t_j) / gcd, read off on generators.
      long long g = gcd_of(a, i, j);
      auto q_of = [&](const GroupElt& x) {
        return QZ(x.coords[i] * (x.coords[j] + base.t.coords[j]), g);
      };
      std::vector<QZ> diag(r);
      for (int l = 0; l < r; ++l) diag[l] = q_of(unit_elt(a, l));
      std::vector<QZ> cross(static_cast<size_t>(r) * (r - 1) / 2);
      int idx = 0;
      for (int l = 0; l < r; ++l)
        for (int m = l + 1; m < r; ++m, ++idx)
          cross[idx] =
              q_of(add(unit_elt(a, l), unit_elt(a, m))) - q_of(unit_elt(a, l)) - q_of(unit_elt(a, m));
      QuadForm q = make_quad_form(a, std::move(diag), std::move(cross));

      std::vector<long long> coords = quad_coordinates(q);
      for (int row = 0; row < qg.group.rank(); ++row) mat.at(row, col) = coords[row];
    }

  GroupHom kappa = make_hom(source, qg.group, std::move(mat));
  KernelCokernel kc = kernel_cokernel(kappa);
  return KappaCokernel{canonical_decomposition(kc.cokernel), kappa};
}

FactorReport mext_factors(const BaseCategory& base) {
  const FinAbGroup& a = base.a;
  FactorReport rep;
  FinAbGroup trivial_group = make_group({});

  if (base.t.is_zero()) {
    rep.triv = canonical_decomposition(cohomology_orders(a).h3);
    rep.pt_over_triv = trivial_group;
    rep.int_over_pt = trivial_group;
    rep.top = trivial_group;
    rep.total_order = rep.triv.order();
    rep.split = true;
    return rep;
  }

  rep.split = is_split(a, base.t);
  rep.triv = kappa_cokernel(base).cokernel;
  rep.pt_over_triv = theta_kernel(base).kernel;
  rep.int_over_pt = canonical_decomposition(wedge_power(a, 3));
  rep.top = rep.split ? canonical_decomposition(hom_group(a, make_group({2}))) : trivial_group;
  rep.total_order = rep.triv.order() * rep.pt_over_triv.order() * rep.int_over_pt.order() *
                    rep.top.order();
  return rep;
}

CohomologyOrders cohomology_orders(const FinAbGroup& a) {
  int r = a.rank();
  CohomologyOrders out;
  out.h2_order = wedge_power(a, 2).order();

  std::vector<long long> h3_moduli = a.moduli;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) h3_moduli.push_back(gcd_of(a, i, j));
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      for (int k = j + 1; k < r; ++k)
        h3_moduli.push_back(std::gcd(gcd_of(a, i, j), a.moduli[k]));
  out.h3 = canonical_decomposition(make_group(std::move(h3_moduli)));

  out.quad_order = quad_group(a).group.order();
  return out;
}

KunnethLedger kunneth_check(const FinAbGroup& g, const FinAbGroup& l) {
  KunnethLedger led;
  std::vector<long long> prod_moduli = g.moduli;
  prod_moduli.insert(prod_moduli.end(), l.moduli.begin(), l.moduli.end());
  FinAbGroup prod = make_group(std::move(prod_moduli));

  led.product_order = cohomology_orders(prod).h3.order();
  led.h3_g = cohomology_orders(g).h3.order();
  led.h3_l = cohomology_orders(l).h3.order();
  led.tensor = tensor_product(dual_group(g), dual_group(l)).order();
  led.hom_l_h2g = hom_group(l, wedge_power(g, 2)).order();
  led.hom_g_h2l = hom_group(g, wedge_power(l, 2)).order();
  led.expected = led.h3_g * led.h3_l * led.tensor * led.hom_l_h2g * led.hom_g_h2l;
  led.ok = led.product_order == led.expected;
  return led;
}

TwofunLedger twofun_recursion(const BaseCategory& base, int coord) {
  const FinAbGroup& a = base.a;
  if (coord < 0 || coord >= a.rank())
    throw precondition_error("twofun_recursion: coordinate out of range");
  if (base.t.coords[coord] != 0)
    throw precondition_error("twofun_recursion: t must vanish on the split-off coordinate");

  TwofunLedger led;
  led.n = a.moduli[coord];

  std::vector<long long> rest;
  std::vector<long long> t1coords;
  for (int i = 0; i < a.rank(); ++i)
    if (i != coord) {
      rest.push_back(a.moduli[i]);
      t1coords.push_back(base.t.coords[i]);
    }
  FinAbGroup a1 = make_group(std::move(rest));
  BaseCategory sub = make_base(a1, make_elt(a1, std::move(t1coords)));

  led.whole = mext_factors(base).total_order;
  led.sub = mext_factors(sub).total_order;
  led.ext_part = ext_group(make_group({led.n}), dual_group(a1)).order();

  // The Picard group of the smaller base: the exterior square, with one extra
  // Z_2 factor when t1 is a nonzero direct summand generator.
  std::vector<long long> pic_moduli = wedge_power(a1, 2).moduli;
  if (!sub.t.is_zero() && is_split(a1, sub.t)) pic_moduli.push_back(2);
  led.hom_pic = hom_group(make_group({led.n}), make_group(std::move(pic_moduli))).order();

  led.expected = led.sub * led.n * led.ext_part * led.hom_pic;
  led.ok = led.whole == led.expected;
  return led;
}

PicOrder pic_order(const BaseCategory& base) {
  PicOrder out;
  out.integral = wedge_power(base.a, 2).order();
  bool doubled = !base.t.is_zero() && is_split(base.a, base.t);
  out.total = doubled ? 2 * out.integral : out.integral;
  return out;
}

const QZ& AltForm2::cross_at(int i, int j) const {
  return cross[pair_slot(group.rank(), i, j)];
}

AltForm2 make_alt_form(const FinAbGroup& a, std::vector<QZ> cross) {
  int r = a.rank();
  if (static_cast<int>(cross.size()) != r * (r - 1) / 2)
    throw precondition_error("AltForm2: cross size does not match the pair count");
  int idx = 0;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j, ++idx)
      if (!cross[idx].times(gcd_of(a, i, j)).is_zero())
        throw precondition_error("AltForm2: entry is not killed by gcd(n_i, n_j)");
  return AltForm2{a, std::move(cross)};
}

AltForm2 zero_alt_form(const FinAbGroup& a) {
  int r = a.rank();
  return AltForm2{a, std::vector<QZ>(static_cast<size_t>(r) * (r - 1) / 2)};
}

QZ eval_alt(const AltForm2& b, const GroupElt& x, const GroupElt& y) {
  const FinAbGroup& a = b.group;
  if (x.parent != a || y.parent != a)
    throw precondition_error("eval_alt: arguments must live in the form's group");
  int r = a.rank();
  QZ acc;
  int idx = 0;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j, ++idx) {
      if (b.cross[idx].is_zero()) continue;
      acc = acc + b.cross[idx].times(x.coords[i] * y.coords[j] - x.coords[j] * y.coords[i]);
    }
  return acc;
}

int xi_of(const AltForm2& b, const GroupElt& t, const GroupElt& x) {
  QZ v = eval_alt(b, x, t);
  if (v.is_zero()) return 0;
  if (v == qz_half()) return 1;
  throw precondition_error("xi_of: beta(x, t) escapes {0, 1/2}; t must be 2-torsion");
}

AltForm2 star_product(const AltForm2& b1, const AltForm2& b2, const GroupElt& t) {
  const FinAbGroup& a = b1.group;
  if (!(b2.group == a)) throw precondition_error("star_product: forms live on different groups");
  if (t.parent != a) throw precondition_error("star_product: t lives in the wrong group");
  int r = a.rank();
  std::vector<QZ> cross(b1.cross.size());
  int idx = 0;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j, ++idx) {
      int twist = xi_of(b1, t, unit_elt(a, i)) * xi_of(b2, t, unit_elt(a, j)) -
                  xi_of(b1, t, unit_elt(a, j)) * xi_of(b2, t, unit_elt(a, i));
      cross[idx] = b1.cross[idx] + b2.cross[idx] + qz_half().times(twist);
    }
  return make_alt_form(a, std::move(cross));
}

GroupElt q_e_character(const AltForm2& b, const GroupElt& t, const GroupElt& z) {
  const FinAbGroup& a = b.group;
  GroupElt w = add(z, scale(xi_of(b, t, z) + 1, t));
  std::vector<long long> coords(a.rank());
  for (int j = 0; j < a.rank(); ++j) {
    QZ v = eval_alt(b, w, unit_elt(a, j));
    if (!v.is_zero() && a.moduli[j] % v.den() != 0)
      throw arithmetic_error("q_e_character: pairing value does not lie in (1/n_j)Z");
    coords[j] = v.is_zero() ? 0 : v.num() * (a.moduli[j] / v.den());
  }
  return make_elt(dual_group(a), std::move(coords));
}

CupSquareKernel cup_square_kernel(int r) {
  if (r < 1 || r > 6) throw precondition_error("cup_square_kernel: r must lie in [1, 6]");

  // Degree-2 basis x_i x_j (i <= j), squaring to x_i^2 x_j^2 in degree 4.
  std::vector<std::pair<int, int>> deg2;
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j) deg2.emplace_back(i, j);
  int d2 = static_cast<int>(deg2.size());

  std::map<std::vector<int>, int> deg4_rows;
  std::vector<std::vector<int>> columns(d2);
  for (int c = 0; c < d2; ++c) {
    std::vector<int> expo(r, 0);
    expo[deg2[c].first] += 2;
    expo[deg2[c].second] += 2;
    auto [it, fresh] = deg4_rows.emplace(expo, static_cast<int>(deg4_rows.size()));
    (void)fresh;
    columns[c].push_back(it->second);
  }

  // Gaussian elimination over F_2 on the (rows x d2) incidence matrix.
  int rows = static_cast<int>(deg4_rows.size());
  std::vector<std::vector<int>> mat(rows, std::vector<int>(d2, 0));
  for (int c = 0; c < d2; ++c)
    for (int row : columns[c]) mat[row][c] = 1;

  std::vector<int> pivot_of_col(d2, -1);
  int rank = 0;
  for (int c = 0; c < d2 && rank < rows; ++c) {
    int p = -1;
    for (int rr = rank; rr < rows; ++rr)
      if (mat[rr][c]) {
        p = rr;
        break;
      }
    if (p < 0) continue;
    std::swap(mat[p], mat[rank]);
    for (int rr = 0; rr < rows; ++rr)
      if (rr != rank && mat[rr][c])
        for (int cc = 0; cc < d2; ++cc) mat[rr][cc] ^= mat[rank][cc];
    pivot_of_col[c] = rank;
    ++rank;
  }

  CupSquareKernel out;
  for (int c = 0; c < d2; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    std::vector<int> vec(d2, 0);
    vec[c] = 1;
    for (int cc = 0; cc < d2; ++cc)
      if (pivot_of_col[cc] >= 0 && mat[pivot_of_col[cc]][c]) vec[cc] = 1;
    out.basis.push_back(std::move(vec));
  }
  out.dimension = static_cast<int>(out.basis.size());
  return out;
}

}  // namespace mext
