#pragma once

#include <optional>
#include <vector>

#include "mext/matrix.hpp"
#include "mext/qz.hpp"

namespace mext {

/// Finite abelian group presented as a direct product of cyclic factors Z_{moduli[i]}.
/// Moduli are arbitrary positive integers (never forced into invariant-factor form);
/// the empty list is the trivial group. The group exponent is capped at 2^16.
struct FinAbGroup {
  std::vector<long long> moduli;

  int rank() const { return static_cast<int>(moduli.size()); }
  long long order() const;
  long long exponent() const;
  bool operator==(const FinAbGroup& o) const { return moduli == o.moduli; }
  bool operator!=(const FinAbGroup& o) const { return !(*this == o); }
};

FinAbGroup make_group(std::vector<long long> moduli);

/// The character group of A. It is presented on the same moduli; the evaluation
/// pairing below is the only structure that distinguishes the two roles.
inline FinAbGroup dual_group(const FinAbGroup& a) { return a; }

/// Element of a FinAbGroup, coordinates reduced mod the parent moduli.
struct GroupElt {
  FinAbGroup parent;
  std::vector<long long> coords;

  bool is_zero() const;
  bool operator==(const GroupElt& o) const { return parent == o.parent && coords == o.coords; }
  bool operator!=(const GroupElt& o) const { return !(*this == o); }
  bool operator<(const GroupElt& o) const { return coords < o.coords; }
};

GroupElt make_elt(const FinAbGroup& parent, std::vector<long long> coords);
GroupElt zero_elt(const FinAbGroup& g);
GroupElt add(const GroupElt& a, const GroupElt& b);
GroupElt neg(const GroupElt& a);
GroupElt sub(const GroupElt& a, const GroupElt& b);
GroupElt scale(long long k, const GroupElt& a);
long long elt_order(const GroupElt& a);

/// Evaluation pairing <x, phi> = sum_i x_i phi_i / n_i in Q/Z, for x in A and phi in the dual.
QZ pair_eval(const GroupElt& x, const GroupElt& phi);

/// All elements in lexicographic coordinate order (last coordinate fastest).
/// Throws when |A| exceeds the guard.
std::vector<GroupElt> elements(const FinAbGroup& g, long long guard);

/// Mixed-radix index of an element within the enumeration order above.
long long element_index(const GroupElt& e);
GroupElt element_at(const FinAbGroup& g, long long index);

/// Homomorphism between presented groups. Column i of the matrix is the image of
/// source generator e_i; entries are kept reduced mod the target moduli.
struct GroupHom {
  FinAbGroup source;
  FinAbGroup target;
  IntMat matrix;  // target.rank() x source.rank()
};

GroupHom make_hom(const FinAbGroup& source, const FinAbGroup& target, IntMat matrix);
GroupHom zero_hom(const FinAbGroup& source, const FinAbGroup& target);
GroupHom identity_hom(const FinAbGroup& g);
GroupElt apply(const GroupHom& f, const GroupElt& x);
GroupHom compose(const GroupHom& g, const GroupHom& f);

/// Invariant-factor form d_1 | d_2 | ... with trivial factors dropped.
FinAbGroup canonical_decomposition(const FinAbGroup& g);

/// Hom(A,B), Ext(A,B) and A (x) B all decompose as prod_{i,j} Z_{gcd(a_i,b_j)};
/// results are returned in canonical form.
FinAbGroup hom_group(const FinAbGroup& a, const FinAbGroup& b);
FinAbGroup ext_group(const FinAbGroup& a, const FinAbGroup& b);
FinAbGroup tensor_product(const FinAbGroup& a, const FinAbGroup& b);

/// Exterior power (k = 2 or 3) of the canonical form of A.
FinAbGroup wedge_power(const FinAbGroup& a, int k);

/// Kernel and cokernel of a homomorphism, with witnesses:
/// kernel_embedding maps the abstract kernel into the source (columns = adapted
/// generators), cokernel_projection maps the target onto the abstract cokernel.
struct KernelCokernel {
  FinAbGroup kernel;
  GroupHom kernel_embedding;
  FinAbGroup cokernel;
  GroupHom cokernel_projection;
};

KernelCokernel kernel_cokernel(const GroupHom& f);

/// Quotient of A by the subgroup generated by gens: the abstract quotient group,
/// the projection, and an integer section matrix lifting quotient coordinates.
struct Quotient {
  FinAbGroup group;
  GroupHom projection;
  IntMat section;  // ambient.rank() x group.rank()
};

Quotient quotient_by(const FinAbGroup& a, const std::vector<GroupElt>& gens);
GroupElt lift_through_section(const Quotient& q, const GroupElt& y);

/// Isomorphism type of the subgroup generated by gens.
FinAbGroup subgroup_structure(const FinAbGroup& a, const std::vector<GroupElt>& gens);

/// All elements of the subgroup generated by gens, sorted; guarded closure walk.
std::vector<GroupElt> subgroup_elements(const FinAbGroup& a, const std::vector<GroupElt>& gens,
                                        long long guard);

/// Coordinates of x over the given generators, when x lies in their span.
std::optional<std::vector<long long>> express_in_span(const FinAbGroup& a,
                                                      const std::vector<GroupElt>& gens,
                                                      const GroupElt& x);

/// Whether <t> is a direct summand of A; t must have order exactly 2.
/// Decided by the divisibility criterion: the summand exists iff t is not twice an element.
bool is_split(const FinAbGroup& a, const GroupElt& t);

/// Brute-force complement search: generators of some B with A = B x <t>, or nullopt.
/// Enumerates kernels of retractions A -> <t>; guarded at |A| <= 4096.
std::optional<std::vector<GroupElt>> complement_search(const FinAbGroup& a, const GroupElt& t);

}  // namespace mext
