#include "mext/verify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace mext {

namespace {

void add_check(std::vector<CheckResult>& out, const std::string& name, bool pass,
               const std::string& detail) {
  out.push_back({name, pass, detail});
}

std::string group_str(const FinAbGroup& g) {
  if (g.moduli.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < g.moduli.size(); ++i) {
    if (i) s += "x";
    s += "Z" + std::to_string(g.moduli[i]);
  }
  return s;
}

std::string factor_str(const FactorReport& f) {
  std::ostringstream os;
  os << "triv=" << group_str(f.triv) << " pt/triv=" << group_str(f.pt_over_triv)
     << " int/pt=" << group_str(f.int_over_pt) << " top=" << group_str(f.top)
     << " total=" << f.total_order << " split=" << (f.split ? "yes" : "no");
  return os.str();
}

/// The order-4 classes of the Z_2 x Z_2 base with t = (0, 1), realized on
/// C = Z_4 x Z_4 with q(i, j) = z (i^2 - j^2) / 8 for odd z. The embedding of
/// the dual sends the two dual generators to (2, 2) and (2, 0).
MinExt order_four_rep(const BaseCategory& base, long long z) {
  FinAbGroup c = make_group({4, 4});
  long long zr = ((z % 8) + 8) % 8;
  QuadForm q = make_quad_form(c, {QZ(zr, 8), QZ(8 - zr, 8)}, {QZ()});
  IntMat m(2, 2);
  m.at(0, 0) = 2;
  m.at(1, 0) = 2;
  m.at(0, 1) = 2;
  m.at(1, 1) = 0;
  return make_min_ext(base, make_metric_group(q), make_hom(dual_group(base.a), c, m));
}

/// Their squares: exponent-2 classes on C = Z_2^4 with
/// q = diag(z/4, z/4, -z/4, -z/4), dual generators landing on (1, 1, 1, 1)
/// and (1, 1, 0, 0).
MinExt exponent_two_rep(const BaseCategory& base, long long z) {
  FinAbGroup c = make_group({2, 2, 2, 2});
  long long zr = ((z % 4) + 4) % 4;
  QuadForm q = make_quad_form(c, {QZ(zr, 4), QZ(zr, 4), QZ(4 - zr, 4), QZ(4 - zr, 4)},
                              std::vector<QZ>(6, QZ()));
  IntMat m(4, 2);
  for (int i = 0; i < 4; ++i) m.at(i, 0) = 1;
  m.at(0, 1) = 1;
  m.at(1, 1) = 1;
  return make_min_ext(base, make_metric_group(q), make_hom(dual_group(base.a), c, m));
}

}  // namespace

std::vector<CheckResult> verify_svect() {
  std::vector<CheckResult> out;
  FinAbGroup a = make_group({2});
  BaseCategory base = make_base(a, make_elt(a, {1}));

  FactorReport f = mext_factors(base);
  bool factors_ok = f.triv.moduli == std::vector<long long>{4} &&
                    f.pt_over_triv.moduli == std::vector<long long>{2} &&
                    f.int_over_pt.moduli.empty() &&
                    f.top.moduli == std::vector<long long>{2} && f.total_order == 16 && f.split;
  add_check(out, "svect.factors", factors_ok, factor_str(f));

  std::vector<MinExt> classes = enumerate_pointed(base);
  add_check(out, "svect.class-count", classes.size() == 8,
            "classes=" + std::to_string(classes.size()) + " expected=8");

  std::set<int> charges;
  bool cross_ok = true;
  for (const MinExt& m : classes) {
    ChargeReport c = charge_and_w(m);
    charges.insert(c.k16);
    cross_ok = cross_ok && c.k16 == c.cross_check;
  }
  std::set<int> expected_charges{0, 2, 4, 6, 8, 10, 12, 14};
  {
    std::ostringstream os;
    os << "charges=";
    for (int c : charges) os << c << "/16 ";
    os << (cross_ok ? "cross-check=agree" : "cross-check=DISAGREE");
    add_check(out, "svect.charges", charges == expected_charges && cross_ok, os.str());
  }

  // The class of charge 2/16 generates: its powers walk through all eight
  // charges in order, so the charge is a complete invariant and the group of
  // classes is cyclic of order 8.
  bool cyclic = true;
  std::string cyc_detail = "walk=";
  const MinExt* g = nullptr;
  for (const MinExt& m : classes)
    if (charge_and_w(m).k16 == 2) g = &m;
  if (g == nullptr) {
    cyclic = false;
    cyc_detail = "no class of charge 2/16";
  } else {
    MinExt p = build_trivial(base, zero_form(a));
    for (int k = 0; k < 8 && cyclic; ++k) {
      int want = (2 * k) % 16;
      const MinExt* match = nullptr;
      for (const MinExt& m : classes)
        if (charge_and_w(m).k16 == want) match = &m;
      cyclic = match != nullptr && equivalent(p, *match).has_value();
      cyc_detail += std::to_string(want) + (cyclic ? "/16 " : "/16(FAIL) ");
      p = product(p, *g);
    }
    if (cyclic) {
      cyclic = charge_and_w(p).k16 == 0;
      cyc_detail += cyclic ? "order=8" : "generator order exceeds 8";
    }
  }
  add_check(out, "svect.cyclic-z8", cyclic, cyc_detail);

  return out;
}

std::vector<CheckResult> verify_z2n() {
  std::vector<CheckResult> out;
  for (int n : {2, 3}) {
    std::string tag = "z2n.n" + std::to_string(n);
    long long size = 1LL << n;
    FinAbGroup a = make_group({size});
    BaseCategory base = make_base(a, make_elt(a, {size / 2}));

    FactorReport f = mext_factors(base);
    long long want_total = 1LL << (n + 1);
    add_check(out, tag + ".total", f.total_order == want_total && !f.split,
              factor_str(f) + " expected-total=" + std::to_string(want_total));

    MinExt m0 = build_m_k_zeta(n, 0, 1);
    long long ord = order_in_mext(m0, want_total);
    add_check(out, tag + ".generator-order", ord == want_total,
              "order=" + std::to_string(ord) + " expected=" + std::to_string(want_total));

    bool chain = true;
    std::string chain_detail = "squares:";
    for (int k = 0; k < n; ++k) {
      MinExt mk = build_m_k_zeta(n, k, 1);
      MinExt next = build_m_k_zeta(n, k + 1, 1);
      bool step = equivalent(product(mk, mk), next).has_value();
      chain = chain && step;
      chain_detail += " k" + std::to_string(k) + (step ? "=ok" : "=FAIL");
    }
    add_check(out, tag + ".squaring-chain", chain, chain_detail);
  }
  return out;
}

std::vector<CheckResult> verify_z2z2() {
  std::vector<CheckResult> out;
  FinAbGroup a = make_group({2, 2});
  BaseCategory base = make_base(a, make_elt(a, {0, 1}));

  FactorReport f = mext_factors(base);
  bool factors_ok = f.triv.moduli == std::vector<long long>{2, 4} &&
                    f.pt_over_triv.moduli == std::vector<long long>{2, 2} &&
                    f.int_over_pt.moduli.empty() &&
                    f.top.moduli == std::vector<long long>{2, 2} && f.total_order == 128 &&
                    f.split;
  add_check(out, "z2z2.factors", factors_ok, factor_str(f));

  std::vector<MinExt> classes = enumerate_pointed(base);
  add_check(out, "z2z2.class-count", classes.size() == 32,
            "classes=" + std::to_string(classes.size()) + " expected=32");

  // Order statistics identify the group: among the abelian groups of order
  // 32, only Z_8 x Z_4 has one identity, three elements of order 2, twelve of
  // order 4, and sixteen of order 8.
  std::map<long long, int> histogram;
  for (const MinExt& m : classes) histogram[order_in_mext(m, 8)] += 1;
  std::map<long long, int> expected{{1, 1}, {2, 3}, {4, 12}, {8, 16}};
  {
    std::ostringstream os;
    os << "orders=";
    for (const auto& [ord, count] : histogram) os << ord << ":" << count << " ";
    os << "target=Z8xZ4";
    add_check(out, "z2z2.group-z8xz4", histogram == expected, os.str());
  }

  MinExt m2_1 = order_four_rep(base, 1);
  MinExt m2_3 = order_four_rep(base, 3);
  MinExt m2_5 = order_four_rep(base, 5);
  MinExt m2_7 = order_four_rep(base, 7);

  long long ord = order_in_mext(m2_1, 8);
  add_check(out, "z2z2.rep-order", ord == 4, "order=" + std::to_string(ord) + " expected=4");

  bool sq = equivalent(product(m2_1, m2_1), exponent_two_rep(base, 1)).has_value() &&
            equivalent(product(m2_3, m2_3), exponent_two_rep(base, 3)).has_value();
  add_check(out, "z2z2.rep-squares", sq, sq ? "z=1,3 squares land as computed" : "square mismatch");

  bool conj = equivalent(m2_1, m2_5).has_value() && equivalent(m2_3, m2_7).has_value() && !equivalent(m2_1, m2_3).has_value() &&
              !equivalent(m2_1, m2_7).has_value();
  add_check(out, "z2z2.rep-conjugates", conj,
            "z=1~z=5, z=3~z=7, z=1 distinct from z=3 and z=7");

  return out;
}

std::vector<CheckResult> verify_kunneth() {
  std::vector<CheckResult> out;
  struct Pair {
    std::vector<long long> g, l;
  };
  for (const Pair& p : {Pair{{2}, {2}}, Pair{{2}, {4}}, Pair{{4}, {4}}, Pair{{2, 2}, {2}}}) {
    FinAbGroup g = make_group(p.g);
    FinAbGroup l = make_group(p.l);
    KunnethLedger k = kunneth_check(g, l);
    std::ostringstream os;
    os << group_str(g) << "," << group_str(l) << ": |H3|=" << k.product_order << " expected="
       << k.expected << " (" << k.h3_g << "*" << k.h3_l << "*" << k.tensor << "*" << k.hom_l_h2g
       << "*" << k.hom_g_h2l << ")";
    add_check(out, "kunneth." + group_str(g) + "." + group_str(l), k.ok, os.str());
  }

  FinAbGroup a = make_group({2, 2});
  BaseCategory base = make_base(a, make_elt(a, {0, 1}));
  TwofunLedger t = twofun_recursion(base, 0);
  std::ostringstream os;
  os << "whole=" << t.whole << " expected=" << t.expected << " (sub=" << t.sub << " n=" << t.n
     << " ext=" << t.ext_part << " hom-pic=" << t.hom_pic << ")";
  bool ok = t.ok && t.whole == 128 && t.sub == 16 && t.n == 2 && t.ext_part == 2 && t.hom_pic == 2;
  add_check(out, "kunneth.recursion-128", ok, os.str());

  return out;
}

std::vector<CheckResult> verify_suite(const std::string& suite) {
  if (suite == "svect") return verify_svect();
  if (suite == "z2n") return verify_z2n();
  if (suite == "z2z2") return verify_z2z2();
  if (suite == "kunneth") return verify_kunneth();
  if (suite == "all") {
    std::vector<CheckResult> out = verify_svect();
    for (const auto& part : {verify_z2n(), verify_z2z2(), verify_kunneth()})
      out.insert(out.end(), part.begin(), part.end());
    return out;
  }
  throw precondition_error("verify: unknown suite '" + suite +
                           "' (expected svect, z2n, z2z2, kunneth, or all)");
}

}  // namespace mext
