#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "mext/filtration.hpp"
#include "mext/forms.hpp"

using namespace mext;

namespace {

GroupElt gen(const FinAbGroup& g, int i) {
  std::vector<long long> c(g.rank(), 0);
  c[i] = 1;
  return make_elt(g, std::move(c));
}

BaseCategory base_of(std::vector<long long> moduli, std::vector<long long> t) {
  FinAbGroup a = make_group(std::move(moduli));
  return make_base(a, make_elt(a, std::move(t)));
}

// All carry-basis matrices on a, mixed-radix over the gcd bounds.
std::vector<AbCocycle2> all_cocycles(const FinAbGroup& a) {
  int r = a.rank();
  std::vector<long long> bounds;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) bounds.push_back(std::gcd(a.moduli[i], a.moduli[j]));
  std::vector<AbCocycle2> out;
  std::vector<long long> cur(bounds.size(), 0);
  while (true) {
    out.push_back(make_ab_cocycle(a, cur));
    int p = static_cast<int>(bounds.size()) - 1;
    while (p >= 0 && cur[p] + 1 == bounds[p]) cur[p--] = 0;
    if (p < 0) break;
    ++cur[p];
  }
  return out;
}

}  // namespace

TEST_CASE("carry-basis cocycles reduce their matrices mod the gcd bounds") {
  FinAbGroup g = make_group({2, 4});
  AbCocycle2 l = make_ab_cocycle(g, {5, -1, 7, 9});
  CHECK(l.at(0, 0) == 1);  // mod gcd(2,2) = 2
  CHECK(l.at(0, 1) == 1);  // mod gcd(2,4) = 2
  CHECK(l.at(1, 0) == 1);
  CHECK(l.at(1, 1) == 1);  // mod 4

  CHECK_THROWS_AS(make_ab_cocycle(g, {1, 2, 3}), precondition_error);
}

TEST_CASE("cocycle values expand as carries against the matrix rows") {
  FinAbGroup z4 = make_group({4});
  AbCocycle2 l = make_ab_cocycle(z4, {3});
  // Carry happens exactly when x + y >= 4.
  CHECK(ab_cocycle_eval(l, make_elt(z4, {1}), make_elt(z4, {2}), make_elt(z4, {1})).is_zero());
  CHECK(ab_cocycle_eval(l, make_elt(z4, {3}), make_elt(z4, {2}), make_elt(z4, {1})) == QZ(3, 4));
  CHECK(ab_cocycle_eval(l, make_elt(z4, {3}), make_elt(z4, {2}), make_elt(z4, {2})) == QZ(1, 2));
}

TEST_CASE("epsilon is matrix transposition and an involution") {
  for (std::vector<long long> moduli :
       {std::vector<long long>{2}, {4}, {8}, {2, 2}, {2, 4}, {4, 4}, {2, 3}, {2, 2, 2}}) {
    FinAbGroup a = make_group(moduli);
    for (const AbCocycle2& l : all_cocycles(a)) {
      AbCocycle2 e = epsilon(l);
      int r = a.rank();
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) CHECK(e.at(i, j) == l.at(j, i));
      CHECK(epsilon(e).m == l.m);
    }
  }
}

TEST_CASE("symmetric classes collect diagonal and pair coordinates") {
  FinAbGroup g = make_group({2, 4});
  FinAbGroup s = symmetric_classes(g);
  CHECK(s.moduli == std::vector<long long>{2, 4, 2});

  AbCocycle2 l = symmetric_cocycle_at(g, make_elt(s, {1, 3, 1}));
  CHECK(l.at(0, 0) == 1);
  CHECK(l.at(1, 1) == 3);
  CHECK(l.at(0, 1) == 1);
  CHECK(l.at(1, 0) == 1);
  CHECK(epsilon(l).m == l.m);
}

TEST_CASE("theta kernels match the closed computations") {
  // sVect: t spans the whole 2-torsion, so theta has nothing to hit.
  ThetaKernel svect = theta_kernel(base_of({2}, {1}));
  CHECK(svect.kernel.order() == 2);

  // Z4 with t = 2: again <t> = A_2, the kernel is everything.
  ThetaKernel z4 = theta_kernel(base_of({4}, {2}));
  CHECK(z4.kernel.order() == 4);
  CHECK(canonical_decomposition(z4.kernel).moduli == std::vector<long long>{4});

  // Z2 x Z2 with t = (0,1): one surviving Z2 of targets, kernel Z2 x Z2.
  ThetaKernel k22 = theta_kernel(base_of({2, 2}, {0, 1}));
  CHECK(k22.kernel.order() == 4);
  CHECK(canonical_decomposition(k22.kernel).moduli == std::vector<long long>{2, 2});

  // Tannakian point on Z2: theta is onto the full dual of A_2.
  ThetaKernel t2 = theta_kernel(base_of({2}, {0}));
  CHECK(t2.kernel.order() == 1);

  // Odd group: no 2-torsion at all, kernel is the whole symmetric part.
  ThetaKernel t3 = theta_kernel(base_of({3}, {0}));
  CHECK(t3.kernel.order() == 3);
}

TEST_CASE("theta is surjective for every small base") {
  for (std::vector<long long> moduli :
       {std::vector<long long>{2}, {4}, {8}, {16}, {2, 2}, {2, 4}, {4, 4}, {2, 8}, {2, 2, 2},
        {2, 2, 4}, {6}, {12}, {2, 6}}) {
    FinAbGroup a = make_group(moduli);
    for (const GroupElt& t : elements(a, 64)) {
      if (!scale(2, t).is_zero()) continue;
      CHECK_NOTHROW(theta_kernel(make_base(a, t)));  // surjectivity is asserted inside
    }
  }
}

TEST_CASE("kappa cokernels match the closed formula on small bases") {
  CHECK(kappa_cokernel(base_of({2}, {1})).cokernel.moduli == std::vector<long long>{4});
  CHECK(kappa_cokernel(base_of({4}, {2})).cokernel.moduli == std::vector<long long>{2});
  CHECK(kappa_cokernel(base_of({2, 2}, {0, 1})).cokernel.moduli == std::vector<long long>{2, 4});
  CHECK(kappa_cokernel(base_of({8}, {4})).cokernel.moduli == std::vector<long long>{2});
  CHECK(kappa_cokernel(base_of({2, 2, 2}, {1, 0, 0})).cokernel.moduli ==
        std::vector<long long>{2, 2, 4});
}

TEST_CASE("factor reports reproduce the worked examples") {
  FactorReport svect = mext_factors(base_of({2}, {1}));
  CHECK(svect.split);
  CHECK(svect.triv.moduli == std::vector<long long>{4});
  CHECK(svect.pt_over_triv.moduli == std::vector<long long>{2});
  CHECK(svect.int_over_pt.order() == 1);
  CHECK(svect.top.moduli == std::vector<long long>{2});
  CHECK(svect.total_order == 16);

  FactorReport e2 = mext_factors(base_of({4}, {2}));
  CHECK(!e2.split);
  CHECK(e2.triv.moduli == std::vector<long long>{2});
  CHECK(e2.pt_over_triv.moduli == std::vector<long long>{4});
  CHECK(e2.top.order() == 1);
  CHECK(e2.total_order == 8);

  FactorReport e3 = mext_factors(base_of({8}, {4}));
  CHECK(e3.total_order == 16);

  FactorReport f = mext_factors(base_of({2, 2}, {0, 1}));
  CHECK(f.split);
  CHECK(f.triv.moduli == std::vector<long long>{2, 4});
  CHECK(f.pt_over_triv.moduli == std::vector<long long>{2, 2});
  CHECK(f.int_over_pt.order() == 1);
  CHECK(f.top.moduli == std::vector<long long>{2, 2});
  CHECK(f.total_order == 128);

  // Tannakian: the whole answer is ordinary degree-3 cohomology.
  FactorReport tan = mext_factors(base_of({2}, {0}));
  CHECK(tan.split);
  CHECK(tan.triv.moduli == std::vector<long long>{2});
  CHECK(tan.total_order == 2);
  CHECK(tan.pt_over_triv.order() == 1);

  FactorReport mixed = mext_factors(base_of({2, 4}, {0, 2}));
  CHECK(!mixed.split);
  CHECK(mixed.total_order == 32);
}

TEST_CASE("cohomology orders for small groups") {
  CohomologyOrders z2 = cohomology_orders(make_group({2}));
  CHECK(z2.h2_order == 1);
  CHECK(z2.h3.moduli == std::vector<long long>{2});
  CHECK(z2.quad_order == 4);

  CohomologyOrders z4 = cohomology_orders(make_group({4}));
  CHECK(z4.h3.moduli == std::vector<long long>{4});
  CHECK(z4.quad_order == 8);

  CohomologyOrders k22 = cohomology_orders(make_group({2, 2}));
  CHECK(k22.h2_order == 2);
  CHECK(k22.h3.order() == 8);

  CHECK(cohomology_orders(make_group({2, 2, 2})).h3.order() == 128);
}

TEST_CASE("Kunneth ledger balances on the control pairs") {
  KunnethLedger a = kunneth_check(make_group({2}), make_group({2}));
  CHECK(a.ok);
  CHECK(a.product_order == 8);
  CHECK(a.tensor == 2);

  CHECK(kunneth_check(make_group({2}), make_group({4})).ok);
  CHECK(kunneth_check(make_group({4}), make_group({4})).ok);
  CHECK(kunneth_check(make_group({2, 2}), make_group({2})).ok);
  CHECK(kunneth_check(make_group({2, 4}), make_group({2, 2})).ok);
}

TEST_CASE("the one-factor recursion balances the 128 example") {
  TwofunLedger led = twofun_recursion(base_of({2, 2}, {0, 1}), 0);
  CHECK(led.ok);
  CHECK(led.whole == 128);
  CHECK(led.sub == 16);
  CHECK(led.n == 2);
  CHECK(led.ext_part == 2);
  CHECK(led.hom_pic == 2);

  CHECK(twofun_recursion(base_of({2, 4}, {0, 2}), 0).ok);
  CHECK(twofun_recursion(base_of({4, 4}, {0, 2}), 0).ok);

  CHECK_THROWS_AS(twofun_recursion(base_of({2, 2}, {0, 1}), 1), precondition_error);
  CHECK_THROWS_AS(twofun_recursion(base_of({2, 2}, {0, 1}), 5), precondition_error);
}

TEST_CASE("Picard orders follow the split rule") {
  PicOrder svect = pic_order(base_of({2}, {1}));
  CHECK(svect.total == 2);
  CHECK(svect.integral == 1);

  PicOrder e2 = pic_order(base_of({4}, {2}));
  CHECK(e2.total == 1);

  PicOrder f = pic_order(base_of({2, 2}, {0, 1}));
  CHECK(f.total == 4);
  CHECK(f.integral == 2);

  CHECK(pic_order(base_of({2}, {0})).total == 1);
}

TEST_CASE("alternating forms evaluate and validate torsion") {
  FinAbGroup g = make_group({2, 2});
  AltForm2 b = make_alt_form(g, {qz_half()});
  CHECK(eval_alt(b, gen(g, 0), gen(g, 1)) == qz_half());
  CHECK(eval_alt(b, gen(g, 1), gen(g, 0)) == qz_half());  // -1/2 = 1/2 mod 1
  CHECK(eval_alt(b, gen(g, 0), gen(g, 0)).is_zero());

  CHECK_THROWS_AS(make_alt_form(g, {QZ(1, 4)}), precondition_error);
  CHECK_THROWS_AS(make_alt_form(g, {}), precondition_error);
}

TEST_CASE("xi and the twisted star product") {
  FinAbGroup g = make_group({2, 2});
  GroupElt t = make_elt(g, {0, 1});
  AltForm2 b = make_alt_form(g, {qz_half()});

  CHECK(xi_of(b, t, gen(g, 0)) == 1);
  CHECK(xi_of(b, t, gen(g, 1)) == 0);
  CHECK(xi_of(zero_alt_form(g), t, gen(g, 0)) == 0);

  // The twist exactly cancels the doubled form here.
  AltForm2 sq = star_product(b, b, t);
  CHECK(sq == zero_alt_form(g));

  // Commutativity on a handful of forms.
  FinAbGroup h = make_group({2, 4});
  GroupElt th = make_elt(h, {1, 2});
  for (int c1 = 0; c1 < 2; ++c1)
    for (int c2 = 0; c2 < 2; ++c2) {
      AltForm2 x = make_alt_form(h, {qz_half().times(c1)});
      AltForm2 y = make_alt_form(h, {qz_half().times(c2)});
      CHECK(star_product(x, y, th) == star_product(y, x, th));
    }
}

TEST_CASE("the grading character pairs through the form") {
  FinAbGroup g = make_group({2, 2});
  GroupElt t = make_elt(g, {0, 1});
  AltForm2 b = make_alt_form(g, {qz_half()});

  for (const GroupElt& z : elements(g, 16)) {
    GroupElt chi = q_e_character(b, t, z);
    GroupElt w = add(z, scale(xi_of(b, t, z) + 1, t));
    for (const GroupElt& y : elements(g, 16)) CHECK(pair_eval(y, chi) == eval_alt(b, w, y));
  }
}

TEST_CASE("cup squaring on degree-2 polynomial classes is injective") {
  for (int r = 1; r <= 6; ++r) {
    CupSquareKernel k = cup_square_kernel(r);
    CHECK(k.dimension == 0);
    CHECK(k.basis.empty());
  }
  CHECK_THROWS_AS(cup_square_kernel(0), precondition_error);
  CHECK_THROWS_AS(cup_square_kernel(7), precondition_error);
}
