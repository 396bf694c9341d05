#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mext/group.hpp"
#include "mext/parallel.hpp"
#include "mext/qz.hpp"

namespace mext {

/// Quadratic form q: A -> Q/Z determined by generator data:
///   diag[i]  = q(e_i),            subject to (2n_i or n_i) * diag[i] = 0,
///   cross    = b(e_i, e_j) for i < j (row-major), subject to gcd(n_i, n_j) * cross = 0,
/// where b(x,y) = q(x+y) - q(x) - q(y) is the associated bilinear form.
struct QuadForm {
  FinAbGroup group;
  std::vector<QZ> diag;
  std::vector<QZ> cross;

  const QZ& cross_at(int i, int j) const;  // i < j
  bool operator==(const QuadForm& o) const {
    return group == o.group && diag == o.diag && cross == o.cross;
  }
};

QuadForm make_quad_form(const FinAbGroup& g, std::vector<QZ> diag, std::vector<QZ> cross);
QuadForm zero_form(const FinAbGroup& g);
QuadForm negate(const QuadForm& q);
QuadForm add_forms(const QuadForm& a, const QuadForm& b);

/// Orthogonal direct sum on the product group; the two blocks do not pair.
QuadForm direct_sum(const QuadForm& a, const QuadForm& b);

QZ eval_quad(const QuadForm& q, const GroupElt& x);

/// Symmetric bilinear form as a full matrix of Q/Z values on generators.
struct BilForm {
  FinAbGroup group;
  std::vector<QZ> entries;  // rank x rank, row-major

  const QZ& at(int i, int j) const { return entries[static_cast<size_t>(i) * group.rank() + j]; }
};

BilForm assoc_bilinear(const QuadForm& q);
QZ eval_bil(const BilForm& b, const GroupElt& x, const GroupElt& y);

/// Generators of the radical {x : b(x, -) = 0}; computed exactly as a kernel.
std::vector<GroupElt> radical(const QuadForm& q);
bool is_nondegenerate(const QuadForm& q);

/// Nondegenerate quadratic form on a finite abelian group.
struct MetricGroup {
  FinAbGroup group;
  QuadForm form;
};

MetricGroup make_metric_group(const QuadForm& q);

/// The group Quad(A) of all quadratic forms on A, with realizing generator forms:
/// one factor Z_{2n_i} (n_i even) or Z_{n_i} (n_i odd) per generator and one
/// factor Z_{gcd(n_i,n_j)} per pair i < j.
struct QuadGroupData {
  FinAbGroup group;
  std::vector<QuadForm> generators;
};

QuadGroupData quad_group(const FinAbGroup& a);

/// Coordinates of q inside quad_group(A), i.e. the scaled generator data.
std::vector<long long> quad_coordinates(const QuadForm& q);

/// All quadratic forms on A in mixed-radix order over quad_group coordinates.
std::vector<QuadForm> enumerate_forms(const FinAbGroup& a, bool nondegenerate_only,
                                      Exec exec = Exec::parallel);

/// Gauss sum sigma(q) = sum_x e^{2 pi i q(x)}. The complex value is evaluated in
/// long double; norm2 is the exact integer |sigma|^2 = |A| * (#{z in rad : q(z)=0}
/// - #{z in rad : q(z)=1/2}), an identity that holds for every quadratic form.
struct GaussSum {
  long double re = 0, im = 0;
  long long norm2 = 0;
};

GaussSum gauss_sum(const QuadForm& q, Exec exec = Exec::parallel);

/// k in Z_8 with sigma(q)/sqrt|A| = e^{2 pi i k/8}; requires nondegeneracy, which
/// is re-checked through the exact |sigma|^2 = |A| identity.
int central_charge(const MetricGroup& m, Exec exec = Exec::parallel);

/// Generators of H^perp = {x : b(x,h) = 0 for all h in the span of gens}; exact.
std::vector<GroupElt> orthogonal_complement(const MetricGroup& m, const std::vector<GroupElt>& gens);

/// Condensation by an isotropic subgroup H: the metric group H^perp/H with the
/// induced form, generator lifts chosen as minimal-coordinate coset representatives,
/// and a projection for elements of H^perp.
struct Condensation {
  MetricGroup result;
  std::vector<GroupElt> lifts;          // ambient representatives of the result generators
  std::vector<GroupElt> hperp_gens;     // ambient generators of H^perp
  GroupHom hperp_to_result;             // abstract H^perp onto the result
  GroupHom hperp_embedding;             // abstract H^perp into the ambient group

  /// Image of an ambient element; throws when x is outside H^perp.
  GroupElt project(const GroupElt& x) const;
};

Condensation condense(const MetricGroup& m, const std::vector<GroupElt>& isotropic_gens);

/// Form-preserving isomorphism m1 -> m2 extending the pinned assignments, or
/// nullopt. Backtracking over generator images, pruned by (element order,
/// q-value) multisets per coset of the pinned span; candidates are tried in
/// lexicographic coordinate order, so the result is deterministic.
std::optional<GroupHom> isometry_search(const MetricGroup& m1, const MetricGroup& m2,
                                        const std::vector<std::pair<GroupElt, GroupElt>>& pinned);

}  // namespace mext
