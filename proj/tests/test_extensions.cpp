#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "mext/extensions.hpp"
#include "mext/parallel.hpp"

using namespace mext;

namespace {

BaseCategory svect() {
  FinAbGroup z2 = make_group({2});
  return make_base(z2, make_elt(z2, {1}));
}

// The trivial extension with the quarter form on Z2: values 0, 1/2, 1/4, 1/4.
MinExt svect_quarter() {
  BaseCategory b = svect();
  return build_trivial(b, make_quad_form(b.a, {QZ(1, 4)}, {}));
}

}  // namespace

TEST_CASE("base categories require 2-torsion t in the right group") {
  FinAbGroup z4 = make_group({4});
  CHECK_NOTHROW(make_base(z4, make_elt(z4, {2})));
  CHECK_NOTHROW(make_base(z4, make_elt(z4, {0})));
  CHECK_THROWS_AS(make_base(z4, make_elt(z4, {1})), precondition_error);
  FinAbGroup z2 = make_group({2});
  CHECK_THROWS_AS(make_base(z4, make_elt(z2, {1})), precondition_error);
}

TEST_CASE("the trivial extension of sVect carries the expected form") {
  MinExt m = svect_quarter();
  CHECK(m.cat.group.moduli == std::vector<long long>{2, 2});

  std::multiset<QZ> values;
  for (const GroupElt& x : elements(m.cat.group, 16)) values.insert(eval_quad(m.cat.form, x));
  CHECK(values == std::multiset<QZ>{QZ(), QZ(1, 2), QZ(1, 4), QZ(1, 4)});

  GroupElt phi = make_elt(dual_group(m.base.a), {1});
  CHECK(apply(m.iota, phi) == make_elt(m.cat.group, {0, 1}));
  CHECK(eval_quad(m.cat.form, apply(m.iota, phi)) == QZ(1, 2));

  ChargeReport c = charge_and_w(m);
  CHECK(c.k16 == 4);
  CHECK(c.cross_check == 4);
}

TEST_CASE("trivial extension rejects forms on the wrong group") {
  BaseCategory b = svect();
  FinAbGroup z4 = make_group({4});
  CHECK_THROWS_AS(build_trivial(b, zero_form(z4)), precondition_error);
}

TEST_CASE("minimal extension validation catches broken candidates") {
  BaseCategory b = svect();
  FinAbGroup c = make_group({2, 2});

  // Wrong twist: the embedded character must take value <t, phi> = 1/2.
  MetricGroup bad = make_metric_group(
      make_quad_form(c, {QZ(1, 4), QZ()}, {QZ(1, 2)}));
  IntMat iota(2, 1);
  iota.at(1, 0) = 1;
  CHECK_THROWS_AS(make_min_ext(b, bad, make_hom(dual_group(b.a), c, iota)),
                  precondition_error);

  // Non-injective embedding.
  MinExt good = svect_quarter();
  CHECK_THROWS_AS(make_min_ext(b, good.cat, zero_hom(dual_group(b.a), c)), precondition_error);

  // Wrong total order.
  FinAbGroup c8 = make_group({8});
  MetricGroup big = make_metric_group(make_quad_form(c8, {QZ(1, 16)}, {}));
  CHECK_THROWS_AS(make_min_ext(b, big, zero_hom(dual_group(b.a), c8)), precondition_error);
}

TEST_CASE("reverse negates the form and the charge") {
  MinExt m = svect_quarter();
  MinExt r = reverse(m);
  for (const GroupElt& x : elements(m.cat.group, 16))
    CHECK(eval_quad(r.cat.form, x) == -eval_quad(m.cat.form, x));
  CHECK(reverse(r).cat.form == m.cat.form);
  CHECK(charge_and_w(r).k16 == (16 - charge_and_w(m).k16) % 16);
}

TEST_CASE("cyclic builders realize the two-power tower") {
  // n=1, k=0: the cyclic extension Z4 with q(j) = j^2/8 and iota(1) = 2.
  MinExt m = build_m_k_zeta(1, 0, 1);
  CHECK(m.cat.group.order() == 4);
  GroupElt gen = make_elt(m.cat.group, {0, 1});
  CHECK(eval_quad(m.cat.form, gen) == QZ(1, 8));
  CHECK(charge_and_w(m).k16 == 2);

  // n=1, k=1: Z2 x Z2 with both generators at 1/4.
  MinExt s = build_m_k_zeta(1, 1, 1);
  CHECK(s.cat.group.moduli == std::vector<long long>{2, 2});
  CHECK(charge_and_w(s).k16 == 4);

  CHECK_THROWS_AS(build_m_k_zeta(1, 0, 2), precondition_error);
  CHECK_THROWS_AS(build_m_k_zeta(1, 2, 1), precondition_error);
  CHECK_THROWS_AS(build_m_k_zeta(0, 0, 1), precondition_error);
  CHECK_THROWS_AS(build_m_k_zeta(1, -1, 1), precondition_error);
}

TEST_CASE("product obeys the group laws on small extensions") {
  MinExt m = build_m_k_zeta(1, 0, 1);
  MinExt unit = build_trivial(m.base, zero_form(m.base.a));

  CHECK(charge_and_w(unit).k16 == 0);
  CHECK(equivalent(product(m, reverse(m)), unit).has_value());
  CHECK(equivalent(product(unit, m), m).has_value());
  CHECK(equivalent(product(m, unit), m).has_value());

  MinExt m3 = build_m_k_zeta(1, 0, 3);
  CHECK(!equivalent(m, m3).has_value());
  CHECK(equivalent(product(m, m3), product(m3, m)).has_value());

  MinExt left = product(product(m, m3), m);
  MinExt right = product(m, product(m3, m));
  CHECK(equivalent(left, right).has_value());

  // Charges add under the product.
  CHECK(charge_and_w(product(m, m3)).k16 ==
        (charge_and_w(m).k16 + charge_and_w(m3).k16) % 16);
}

TEST_CASE("products of distinct bases are rejected") {
  FinAbGroup z2 = make_group({2});
  BaseCategory fermionic = make_base(z2, make_elt(z2, {1}));
  BaseCategory tannakian = make_base(z2, make_elt(z2, {0}));
  MinExt a = build_trivial(fermionic, zero_form(z2));
  MinExt b = build_trivial(tannakian, zero_form(z2));
  CHECK_THROWS_AS(product(a, b), precondition_error);
  CHECK_THROWS_AS(equivalent(a, b), precondition_error);
}

TEST_CASE("squaring a cyclic extension climbs one level") {
  MinExt sq1 = product(build_m_k_zeta(1, 0, 1), build_m_k_zeta(1, 0, 1));
  CHECK(equivalent(sq1, build_m_k_zeta(1, 1, 1)).has_value());

  MinExt sq2 = product(build_m_k_zeta(2, 0, 1), build_m_k_zeta(2, 0, 1));
  CHECK(equivalent(sq2, build_m_k_zeta(2, 1, 1)).has_value());

  MinExt sq3 = product(build_m_k_zeta(2, 1, 3), build_m_k_zeta(2, 1, 3));
  CHECK(equivalent(sq3, build_m_k_zeta(2, 2, 3)).has_value());
}

TEST_CASE("orders in the extension group match the cyclic tower") {
  CHECK(order_in_mext(build_m_k_zeta(1, 0, 1)) == 8);
  CHECK(order_in_mext(build_m_k_zeta(1, 1, 1)) == 4);
  CHECK(order_in_mext(build_m_k_zeta(2, 0, 1)) == 8);
  CHECK_THROWS_AS(order_in_mext(build_m_k_zeta(1, 0, 1), 4), precondition_error);
}

TEST_CASE("the grading splits the extension over the base") {
  MinExt m = svect_quarter();
  GroupHom deg = grading_degree(m);
  CHECK(apply(deg, make_elt(m.cat.group, {1, 0})) == make_elt(m.base.a, {1}));
  CHECK(apply(deg, make_elt(m.cat.group, {0, 1})).is_zero());

  for (int n : {1, 2})
    for (int k = 0; k <= n; ++k) CHECK_NOTHROW(grading_degree(build_m_k_zeta(n, k, 1)));
}

TEST_CASE("charge cross-check survives a Tannakian point") {
  FinAbGroup z2 = make_group({2});
  BaseCategory b = make_base(z2, make_elt(z2, {0}));
  MinExt m = build_trivial(b, make_quad_form(z2, {QZ(1, 4)}, {}));
  ChargeReport c = charge_and_w(m);
  CHECK(c.k16 == 0);
  CHECK(c.cross_check == 0);
}

TEST_CASE("pointed enumeration over sVect finds the eight even classes") {
  std::vector<MinExt> reps = enumerate_pointed(svect());
  CHECK(reps.size() == 8);

  std::set<int> charges;
  for (const MinExt& m : reps) {
    CHECK(m.cat.group.order() == 4);
    charges.insert(charge_and_w(m).k16);
  }
  CHECK(charges == std::set<int>{0, 2, 4, 6, 8, 10, 12, 14});
}

TEST_CASE("pointed enumeration over the non-split Z4 base finds eight classes") {
  FinAbGroup z4 = make_group({4});
  BaseCategory b = make_base(z4, make_elt(z4, {2}));
  std::vector<MinExt> reps = enumerate_pointed(b);
  CHECK(reps.size() == 8);
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = i + 1; j < reps.size(); ++j)
      CHECK(!equivalent(reps[i], reps[j]).has_value());
}

TEST_CASE("enumeration rejects oversized bases") {
  FinAbGroup z8 = make_group({8});
  CHECK_THROWS_AS(enumerate_pointed(make_base(z8, make_elt(z8, {4}))), precondition_error);
}
