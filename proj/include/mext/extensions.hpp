#pragma once

#include <optional>
#include <vector>

#include "mext/forms.hpp"
#include "mext/group.hpp"

namespace mext {

/// A finite abelian group A together with a distinguished element t with 2t = 0.
/// The pair fixes the symmetric pairing data that every minimal extension below
/// must restrict to: characters phi of A acquire the twist value <t, phi>.
struct BaseCategory {
  FinAbGroup a;
  GroupElt t;

  bool operator==(const BaseCategory& o) const { return a == o.a && t == o.t; }
};

BaseCategory make_base(const FinAbGroup& a, const GroupElt& t);

/// Minimal nondegenerate extension of a base (A, t): a metric group C of order
/// |A|^2 with an embedding iota of the character group of A such that
///   q(iota(phi)) = <t, phi>  for every character phi, and
///   iota(A^) is its own orthogonal complement.
/// The embedding is part of the data; maps between extensions must commute with it.
struct MinExt {
  BaseCategory base;
  MetricGroup cat;
  GroupHom iota;  // dual_group(base.a) -> cat.group
};

/// Validates every defining condition and names the violated one on failure.
MinExt make_min_ext(const BaseCategory& base, const MetricGroup& cat, const GroupHom& iota);

/// The split extension on C = A x A^ with
///   h(a, phi) = <a, phi> + <t, phi> + q(a),
/// where q is any quadratic form on A (possibly degenerate; zero_form works).
/// iota embeds A^ as the second factor. The result is always nondegenerate.
MinExt build_trivial(const BaseCategory& base, const QuadForm& q);

/// Same extension with the negated form; represents the inverse under product().
MinExt reverse(const MinExt& m);

/// Tensor product of two extensions of the same base: condensation of the
/// orthogonal direct sum C1 x C2 by the isotropic graph {(iota1(phi), -iota2(phi))},
/// with the induced embedding. Never enumerates the direct sum's elements.
MinExt product(const MinExt& m1, const MinExt& m2);

/// The canonical surjection C -> A whose fiber over 0 is iota(A^); the grading
/// that exhibits C as an A-graded extension. deg(x) is determined by
/// <deg(x), phi> = b(x, iota(phi)) for all characters phi.
GroupHom grading_degree(const MinExt& m);

/// Isomorphism of extensions: a form-preserving isomorphism C1 -> C2 carrying
/// iota1 to iota2, or nullopt. Exhaustive search, guarded by limits().
std::optional<GroupHom> equivalent(const MinExt& m1, const MinExt& m2);

/// Order of the class of m under product(), by repeated multiplication against
/// the split extension with the zero form. Throws when the cap is exceeded.
long long order_in_mext(const MinExt& m, long long cap = 64);

/// Multiplicative central charge of the extension as a 16th root of unity,
/// reported as the exponent k in e^{2 pi i k / 16}. Computed twice:
/// from the Gauss sum of C directly, and through the condensation of C by
/// iota of the kernel of t-evaluation (an order-4 group when t != 0). The two
/// routes must agree; disagreement throws.
struct ChargeReport {
  int k16 = 0;         // exponent of the charge as a 16th root of unity
  int cross_check = 0; // the same exponent recomputed through condensation
};

ChargeReport charge_and_w(const MinExt& m);

/// The two-parameter family of extensions of (Z_{2^n}, t = 2^{n-1}) on
/// C = Z_{2^k} x Z_{2^{2n-k}} for 0 <= k <= n and odd z:
///   q(i, j) = (2^k - z) i^2 / 2^{k+1} + z j^2 / 2^{2n-k+1},
/// iota(1) = (1, 2^{n-k}). Covers all pointed classes of this base as z varies.
MinExt build_m_k_zeta(int n, int k, long long z);

/// Moduli lists of all abelian groups of the given order, one per isomorphism
/// type: partitions of each prime exponent combined across primes, in a
/// deterministic order.
std::vector<std::vector<long long>> abelian_groups_of_order(long long n);

/// All pointed minimal extensions of the base up to equivalence, one canonical
/// representative per class (lexicographically minimal serialized encoding),
/// sorted by that encoding. Exhaustive; guarded at |A| <= 4.
std::vector<MinExt> enumerate_pointed(const BaseCategory& base);

}  // namespace mext
