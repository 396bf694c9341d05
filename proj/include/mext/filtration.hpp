#pragma once

#include <vector>

#include "mext/extensions.hpp"
#include "mext/group.hpp"
#include "mext/qz.hpp"

namespace mext {

/// Symmetric 2-cocycle on A with values in the character group, stored in the
/// carry basis: the cocycle attached to the integer matrix m is
///   L_{x,y} = sum_{i,j} carry_i(x, y) * m[i][j] * e_j^,
/// where carry_i(x, y) is 1 exactly when x_i + y_i >= n_i and e_j^ is the j-th
/// dual generator. Entry m[i][j] is well defined mod gcd(n_i, n_j), and the
/// matrix mod those bounds is a complete invariant of the cohomology class.
struct AbCocycle2 {
  FinAbGroup group;
  std::vector<long long> m;  // rank x rank, row-major, m[i][j] mod gcd(n_i, n_j)

  long long at(int i, int j) const { return m[static_cast<size_t>(i) * group.rank() + j]; }
};

AbCocycle2 make_ab_cocycle(const FinAbGroup& a, std::vector<long long> matrix);

/// The cocycle value L_{x,y} as a character of A.
GroupElt ab_cocycle_value(const AbCocycle2& l, const GroupElt& x, const GroupElt& y);

/// <z, L_{x,y}> in Q/Z.
QZ ab_cocycle_eval(const AbCocycle2& l, const GroupElt& x, const GroupElt& y, const GroupElt& z);

/// The involution L -> eps(L) defined by trivializing L_{.,.}(z) for each fixed z
/// (every symmetric cocycle admits a 1-cochain a_z with
/// L_{x,y}(z) = a_z(x) + a_z(y) - a_z(x+y)) and re-reading the roles:
///   eps(L)_{x,y}(z) = a_x(z) + a_y(z) - a_{x+y}(z).
/// The result is re-expressed in the carry basis; in that basis eps is matrix
/// transposition. The cochain solve is verified pointwise (failure signals a
/// bug, not bad input). Guarded at |A| <= 64.
AbCocycle2 epsilon(const AbCocycle2& l);

/// The subgroup of classes fixed by eps: symmetric carry matrices. Presented
/// with one Z_{n_i} factor per diagonal entry followed by one Z_{gcd(n_i, n_j)}
/// factor per pair i < j (row-major).
FinAbGroup symmetric_classes(const FinAbGroup& a);

/// The symmetric carry matrix named by coordinates in symmetric_classes(a).
AbCocycle2 symmetric_cocycle_at(const FinAbGroup& a, const GroupElt& v);

/// theta^t on eps-fixed classes: theta(L) is the character x -> L_{x,x}(x + t)
/// of the 2-torsion subgroup of A modulo <t>. The map is a surjective group
/// homomorphism; its kernel measures the pointed classes that stay split.
struct ThetaKernel {
  FinAbGroup kernel;  // canonical invariant form
  GroupHom theta;     // symmetric_classes(a) -> dual of A_2/<t>
};

ThetaKernel theta_kernel(const BaseCategory& base);

/// kappa^t : Hom(A, A^) -> Quad(A), f -> (x -> <x, f(x + t)>). The source is
/// presented with one Z_{gcd(n_i, n_j)} factor per ordered pair (i, j),
/// row-major, generated by x -> (n_j / gcd) x_i e_j^; the target is the
/// realized quadratic-form group of quad_group(A). The cokernel classifies
/// split extensions up to equivalence.
struct KappaCokernel {
  FinAbGroup cokernel;  // canonical invariant form
  GroupHom kappa;
};

KappaCokernel kappa_cokernel(const BaseCategory& base);

/// The four graded factors of the extension group of (A, t):
///   triv:         classes of split extensions            (cokernel of kappa^t)
///   pt_over_triv: pointed classes modulo split ones      (kernel of theta^t)
///   int_over_pt:  integral classes modulo pointed ones   (third exterior power)
///   top:          the remaining quotient                 (Hom(A, Z_2) when <t>
///                 is a direct summand, trivial otherwise)
/// For t = 0 the group is the full degree-3 cohomology of A; it is reported in
/// triv with the other factors trivial and split = true.
struct FactorReport {
  FinAbGroup triv;
  FinAbGroup pt_over_triv;
  FinAbGroup int_over_pt;
  FinAbGroup top;
  long long total_order = 1;
  bool split = false;
};

FactorReport mext_factors(const BaseCategory& base);

/// Orders of the low-degree cohomology of A with coefficients in Q/Z:
/// |H^2| = |wedge^2 A|, H^3 as an explicit group, and the order of Quad(A).
struct CohomologyOrders {
  long long h2_order = 1;
  FinAbGroup h3;
  long long quad_order = 1;
};

CohomologyOrders cohomology_orders(const FinAbGroup& a);

/// Kunneth control identity for H^3 of a product:
/// |H^3(G x L)| = |H^3(G)| |H^3(L)| |G^ (x) L^| |Hom(L, H^2(G))| |Hom(G, H^2(L))|.
struct KunnethLedger {
  bool ok = false;
  long long product_order = 1;  // |H^3(G x L)| computed directly
  long long expected = 1;       // the right-hand side
  long long h3_g = 1, h3_l = 1, tensor = 1, hom_l_h2g = 1, hom_g_h2l = 1;
};

KunnethLedger kunneth_check(const FinAbGroup& g, const FinAbGroup& l);

/// Recursion control for splitting off one cyclic factor Z_N (at coord) from A
/// with t supported on the complement A1:
/// |Mext(A, t)| = |Mext(A1, t1)| * N * |Ext(Z_N, A1^)| * |Hom(Z_N, Pic(A1, t1))|.
struct TwofunLedger {
  bool ok = false;
  long long whole = 1;     // |Mext(A, t)|
  long long expected = 1;  // the right-hand side
  long long sub = 1, n = 1, ext_part = 1, hom_pic = 1;
};

TwofunLedger twofun_recursion(const BaseCategory& base, int coord);

/// Order of the Picard group of the base: 2 |wedge^2 A| when t != 0 and <t> is
/// a direct summand, |wedge^2 A| otherwise; the integral part is always
/// |wedge^2 A|.
struct PicOrder {
  long long total = 1;
  long long integral = 1;
};

PicOrder pic_order(const BaseCategory& base);

/// Alternating bilinear form on A with values in Q/Z, determined by its values
/// on generator pairs i < j (the diagonal vanishes and the form is
/// antisymmetric). Classifies degree-2 cohomology classes of A.
struct AltForm2 {
  FinAbGroup group;
  std::vector<QZ> cross;  // pairs i < j, row-major

  const QZ& cross_at(int i, int j) const;  // i < j
  bool operator==(const AltForm2& o) const { return group == o.group && cross == o.cross; }
};

AltForm2 make_alt_form(const FinAbGroup& a, std::vector<QZ> cross);
AltForm2 zero_alt_form(const FinAbGroup& a);
QZ eval_alt(const AltForm2& b, const GroupElt& x, const GroupElt& y);

/// xi(beta, x) = 1 exactly when beta(x, t) = 1/2 (the value always lies in
/// {0, 1/2} because t has order at most 2).
int xi_of(const AltForm2& b, const GroupElt& t, const GroupElt& x);

/// The t-twisted product on alternating forms:
///   (b1 * b2)(x, y) = b1(x,y) + b2(x,y) + (xi1(x) xi2(y) - xi1(y) xi2(x)) / 2.
/// Commutative and associative; the twist deforms plain addition.
AltForm2 star_product(const AltForm2& b1, const AltForm2& b2, const GroupElt& t);

/// The character y -> beta(z + (xi(beta, z) + 1) t, y) of A attached to a
/// form class and a grading degree z; returned as an element of the dual group.
GroupElt q_e_character(const AltForm2& b, const GroupElt& t, const GroupElt& z);

/// Kernel of the cup-squaring map on degree-2 polynomial classes over F_2 in
/// r variables (basis x_i x_j for i <= j; squaring is linear over F_2).
/// Returned as coefficient vectors over that basis. Guarded at r <= 6.
struct CupSquareKernel {
  int dimension = 0;
  std::vector<std::vector<int>> basis;  // each entry: r(r+1)/2 coefficients in {0,1}
};

CupSquareKernel cup_square_kernel(int r);

}  // namespace mext
