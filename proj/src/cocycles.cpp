#include "mext/cocycles.hpp"

#include <numeric>

#include "mext/error.hpp"

namespace mext {

namespace {

int pair_slot(int r, int i, int j) {
  int idx = 0;
  for (int a = 0; a < i; ++a) idx += r - 1 - a;
  return idx + (j - i - 1);
}

int triple_slot(int r, int i, int j, int k) {
  int idx = 0;
  for (int a = 0; a < i; ++a) idx += (r - 1 - a) * (r - 2 - a) / 2;
  for (int b = i + 1; b < j; ++b) idx += r - 1 - b;
  return idx + (k - j - 1);
}

long long mod_pos(long long v, long long m) {
  long long r = v % m;
  return r < 0 ? r + m : r;
}

int carry(const GroupElt& y, const GroupElt& z, int i) {
  return y.coords[i] + z.coords[i] >= y.parent.moduli[i] ? 1 : 0;
}

}  // namespace

Cocycle3 zero_cocycle(const FinAbGroup& a) {
  int r = a.rank();
  return Cocycle3{a, std::vector<long long>(r, 0),
                  std::vector<long long>(static_cast<size_t>(r) * (r - 1) / 2, 0),
                  std::vector<long long>(static_cast<size_t>(r) * (r - 1) * (r - 2) / 6, 0)};
}

Cocycle3 standard_cocycle(const FinAbGroup& a, int type, const std::vector<int>& indices,
                          long long coefficient) {
  int r = a.rank();
  if (type < 1 || type > 3) throw precondition_error("standard_cocycle: type must be 1, 2 or 3");
  if (static_cast<int>(indices.size()) != type)
    throw precondition_error("standard_cocycle: index count does not match the type");
  for (size_t s = 0; s < indices.size(); ++s) {
    if (indices[s] < 0 || indices[s] >= r)
      throw precondition_error("standard_cocycle: generator index out of range");
    if (s > 0 && indices[s - 1] >= indices[s])
      throw precondition_error("standard_cocycle: indices must be strictly increasing");
  }

  Cocycle3 w = zero_cocycle(a);
  if (type == 1) {
    w.type1[indices[0]] = mod_pos(coefficient, a.moduli[indices[0]]);
  } else if (type == 2) {
    long long g = std::gcd(a.moduli[indices[0]], a.moduli[indices[1]]);
    w.type2[pair_slot(r, indices[0], indices[1])] = mod_pos(coefficient, g);
  } else {
    long long g = std::gcd(std::gcd(a.moduli[indices[0]], a.moduli[indices[1]]),
                           a.moduli[indices[2]]);
    w.type3[triple_slot(r, indices[0], indices[1], indices[2])] = mod_pos(coefficient, g);
  }
  return w;
}

QZ cocycle3_eval(const Cocycle3& w, const GroupElt& x, const GroupElt& y, const GroupElt& z) {
  const FinAbGroup& a = w.group;
  if (x.parent != a || y.parent != a || z.parent != a)
    throw precondition_error("cocycle3_eval: arguments must live in the cocycle's group");
  int r = a.rank();
  QZ acc;
  for (int i = 0; i < r; ++i)
    if (w.type1[i] != 0 && carry(y, z, i))
      acc = acc + QZ(w.type1[i] * x.coords[i], a.moduli[i]);
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      long long c = w.type2[pair_slot(r, i, j)];
      if (c != 0 && carry(y, z, j))
        acc = acc + QZ(c * x.coords[i], std::gcd(a.moduli[i], a.moduli[j]));
    }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      for (int k = j + 1; k < r; ++k) {
        long long c = w.type3[triple_slot(r, i, j, k)];
        if (c != 0) {
          long long g = std::gcd(std::gcd(a.moduli[i], a.moduli[j]), a.moduli[k]);
          acc = acc + QZ(c * x.coords[i] * y.coords[j] * z.coords[k], g);
        }
      }
  return acc;
}

bool check_cocycle_identity(const Cocycle3& w, Exec exec) {
  if (w.group.order() > 16)
    throw precondition_error("check_cocycle_identity: group order exceeds 16");
  std::vector<GroupElt> all = elements(w.group, 16);
  long long n = static_cast<long long>(all.size());

  bool ok = true;
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static) reduction(&& : ok)
    for (long long xi = 0; xi < n; ++xi) {
      bool local = true;
      for (long long yi = 0; yi < n && local; ++yi)
        for (long long zi = 0; zi < n && local; ++zi)
          for (long long ui = 0; ui < n && local; ++ui) {
            QZ lhs = cocycle3_eval(w, all[yi], all[zi], all[ui]) -
                     cocycle3_eval(w, add(all[xi], all[yi]), all[zi], all[ui]) +
                     cocycle3_eval(w, all[xi], add(all[yi], all[zi]), all[ui]) -
                     cocycle3_eval(w, all[xi], all[yi], add(all[zi], all[ui])) +
                     cocycle3_eval(w, all[xi], all[yi], all[zi]);
            if (!lhs.is_zero()) local = false;
          }
      ok = ok && local;
    }
  } else {
    for (long long xi = 0; xi < n && ok; ++xi)
      for (long long yi = 0; yi < n && ok; ++yi)
        for (long long zi = 0; zi < n && ok; ++zi)
          for (long long ui = 0; ui < n && ok; ++ui) {
            QZ lhs = cocycle3_eval(w, all[yi], all[zi], all[ui]) -
                     cocycle3_eval(w, add(all[xi], all[yi]), all[zi], all[ui]) +
                     cocycle3_eval(w, all[xi], add(all[yi], all[zi]), all[ui]) -
                     cocycle3_eval(w, all[xi], all[yi], add(all[zi], all[ui])) +
                     cocycle3_eval(w, all[xi], all[yi], all[zi]);
            if (!lhs.is_zero()) ok = false;
          }
  }
  return ok;
}

QZ trilinear_eval(const Trilinear& t, const GroupElt& x, const GroupElt& y, const GroupElt& z) {
  const FinAbGroup& a = t.group;
  if (x.parent != a || y.parent != a || z.parent != a)
    throw precondition_error("trilinear_eval: arguments must live in the form's group");
  int r = a.rank();
  QZ acc;
  for (int i = 0; i < r; ++i) {
    if (x.coords[i] == 0) continue;
    for (int j = 0; j < r; ++j) {
      if (y.coords[j] == 0) continue;
      for (int k = 0; k < r; ++k) {
        if (z.coords[k] == 0) continue;
        acc = acc + t.at(i, j, k).times(x.coords[i] * y.coords[j] * z.coords[k]);
      }
    }
  }
  return acc;
}

Trilinear alternator(const Cocycle3& w) {
  const FinAbGroup& a = w.group;
  int r = a.rank();
  auto gen = [&](int i) {
    std::vector<long long> c(r, 0);
    c[i] = 1;
    return make_elt(a, std::move(c));
  };

  Trilinear t{a, std::vector<QZ>(static_cast<size_t>(r) * r * r)};
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) {
        GroupElt x = gen(i), y = gen(j), z = gen(k);
        QZ v = cocycle3_eval(w, x, y, z) - cocycle3_eval(w, x, z, y) +
               cocycle3_eval(w, z, x, y) - cocycle3_eval(w, z, y, x) +
               cocycle3_eval(w, y, z, x) - cocycle3_eval(w, y, x, z);
        t.values[(static_cast<size_t>(i) * r + j) * r + k] = v;
      }
  return t;
}

const QZ& Cochain2Table::at(const GroupElt& y, const GroupElt& z) const {
  return values[static_cast<size_t>(element_index(y)) * group.order() + element_index(z)];
}

Cochain2Table mu_from_omega(const Cocycle3& w, const GroupElt& x) {
  const FinAbGroup& a = w.group;
  if (x.parent != a) throw precondition_error("mu_from_omega: x must live in the cocycle's group");
  if (a.order() > 32) throw precondition_error("mu_from_omega: group order exceeds 32");

  std::vector<GroupElt> all = elements(a, 32);
  long long n = a.order();
  Cochain2Table table{a, std::vector<QZ>(static_cast<size_t>(n) * n)};
  for (const GroupElt& y : all)
    for (const GroupElt& z : all)
      table.values[static_cast<size_t>(element_index(y)) * n + element_index(z)] =
          cocycle3_eval(w, x, y, z) + cocycle3_eval(w, y, z, x) - cocycle3_eval(w, y, x, z);
  return table;
}

bool is_cocycle2(const Cochain2Table& c) {
  std::vector<GroupElt> all = elements(c.group, 32);
  for (const GroupElt& x : all)
    for (const GroupElt& y : all)
      for (const GroupElt& z : all) {
        QZ lhs = c.at(y, z) - c.at(add(x, y), z) + c.at(x, add(y, z)) - c.at(x, y);
        if (!lhs.is_zero()) return false;
      }
  return true;
}

AltForm2 alt_form_of(const Cochain2Table& c) {
  const FinAbGroup& a = c.group;
  int r = a.rank();
  auto gen = [&](int i) {
    std::vector<long long> cc(r, 0);
    cc[i] = 1;
    return make_elt(a, std::move(cc));
  };

  std::vector<QZ> cross(static_cast<size_t>(r) * (r - 1) / 2);
  int idx = 0;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j, ++idx) cross[idx] = c.at(gen(i), gen(j)) - c.at(gen(j), gen(i));
  AltForm2 b = make_alt_form(a, std::move(cross));

  for (const GroupElt& y : elements(a, 32))
    for (const GroupElt& z : elements(a, 32))
      if (eval_alt(b, y, z) != c.at(y, z) - c.at(z, y))
        throw precondition_error("alt_form_of: the antisymmetrization is not bilinear");
  return b;
}

Trilinear tau_from_mu(const std::vector<AltForm2>& mu, const BaseCategory& base) {
  const FinAbGroup& a = base.a;
  if (a.order() > 64) throw precondition_error("tau_from_mu: base order exceeds 64");
  if (static_cast<long long>(mu.size()) != a.order())
    throw precondition_error("tau_from_mu: need one form per element of the base group");
  for (const AltForm2& b : mu)
    if (!(b.group == a))
      throw precondition_error("tau_from_mu: every form must live on the base group");

  std::vector<GroupElt> all = elements(a, 64);
  auto form_at = [&](const GroupElt& x) -> const AltForm2& { return mu[element_index(x)]; };

  for (const GroupElt& x : all)
    for (const GroupElt& y : all)
      if (!(form_at(add(x, y)) == star_product(form_at(x), form_at(y), base.t)))
        throw precondition_error("tau_from_mu: the assignment is not additive for the twisted product");

  auto tau = [&](const GroupElt& x, const GroupElt& y, const GroupElt& z) {
    const AltForm2& b = form_at(x);
    QZ v = eval_alt(b, y, z);
    if (xi_of(b, base.t, y) && xi_of(b, base.t, z)) v = v + qz_half();
    return v;
  };

  for (const GroupElt& x : all)
    for (const GroupElt& y : all) {
      if (!tau(x, add(x, base.t), y).is_zero())
        throw precondition_error("tau_from_mu: tau(x, x + t, -) does not vanish; unrealizable");
      if (!tau(x, add(y, base.t), y).is_zero())
        throw precondition_error("tau_from_mu: tau(x, y + t, y) does not vanish; unrealizable");
    }

  int r = a.rank();
  auto gen = [&](int i) {
    std::vector<long long> c(r, 0);
    c[i] = 1;
    return make_elt(a, std::move(c));
  };
  Trilinear t{a, std::vector<QZ>(static_cast<size_t>(r) * r * r)};
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k)
        t.values[(static_cast<size_t>(i) * r + j) * r + k] = tau(gen(i), gen(j), gen(k));

  for (const GroupElt& x : all)
    for (const GroupElt& y : all)
      for (const GroupElt& z : all)
        if (trilinear_eval(t, x, y, z) != tau(x, y, z))
          throw precondition_error("tau_from_mu: the assignment does not produce a trilinear form");
  return t;
}

}  // namespace mext
