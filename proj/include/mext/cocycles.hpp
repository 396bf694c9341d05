#pragma once

#include <vector>

#include "mext/extensions.hpp"
#include "mext/filtration.hpp"
#include "mext/group.hpp"
#include "mext/parallel.hpp"
#include "mext/qz.hpp"

namespace mext {

/// 3-cocycle on A with values in Q/Z, stored as coefficients of the standard
/// representatives built from coordinate carries:
///   type I   (per index i):        c * x_i * carry_i(y, z) / n_i,
///   type II  (per pair i < j):     c * x_i * carry_j(y, z) / gcd(n_i, n_j),
///   type III (per triple i < j < k): c * x_i y_j z_k / gcd(n_i, n_j, n_k),
/// where carry_i(y, z) is 1 exactly when the i-th coordinates wrap: y_i + z_i >= n_i.
/// Every class arises from exactly one coefficient vector with the coefficients
/// reduced mod the listed denominators (n_i, gcd, gcd).
struct Cocycle3 {
  FinAbGroup group;
  std::vector<long long> type1;  // rank entries, c_i mod n_i
  std::vector<long long> type2;  // pairs i < j row-major, c_ij mod gcd(n_i, n_j)
  std::vector<long long> type3;  // triples i < j < k, c_ijk mod gcd(n_i, n_j, n_k)

  bool operator==(const Cocycle3& o) const {
    return group == o.group && type1 == o.type1 && type2 == o.type2 && type3 == o.type3;
  }
};

/// The zero cocycle, and a cocycle with a single nonzero coefficient.
/// `type` is 1, 2 or 3; `indices` lists the 1, 2 or 3 strictly increasing
/// generator indices the coefficient is attached to.
Cocycle3 zero_cocycle(const FinAbGroup& a);
Cocycle3 standard_cocycle(const FinAbGroup& a, int type, const std::vector<int>& indices,
                          long long coefficient);

QZ cocycle3_eval(const Cocycle3& w, const GroupElt& x, const GroupElt& y, const GroupElt& z);

/// Brute-force verification of the 3-cocycle identity
///   w(y,z,u) - w(x+y,z,u) + w(x,y+z,u) - w(x,y,z+u) + w(x,y,z) = 0
/// over all argument quadruples. Guarded at |A| <= 16.
bool check_cocycle_identity(const Cocycle3& w, Exec exec = Exec::parallel);

/// Trilinear Q/Z-valued form on A, stored by its values on generator triples;
/// evaluation at arbitrary arguments expands by trilinearity.
struct Trilinear {
  FinAbGroup group;
  std::vector<QZ> values;  // rank^3 entries, index (i * rank + j) * rank + k

  const QZ& at(int i, int j, int k) const {
    int r = group.rank();
    return values[(static_cast<size_t>(i) * r + j) * r + k];
  }
};

QZ trilinear_eval(const Trilinear& t, const GroupElt& x, const GroupElt& y, const GroupElt& z);

/// Alternating sum of w over the six argument orderings, signed by parity.
/// Kills types I and II and is trilinear and alternating on what remains.
Trilinear alternator(const Cocycle3& w);

/// The 2-cochain mu_x(y, z) = w(x,y,z) + w(y,z,x) - w(y,x,z) as a full value
/// table over A x A. Guarded at |A| <= 32.
struct Cochain2Table {
  FinAbGroup group;
  std::vector<QZ> values;  // |A|^2 entries indexed by element_index pairs

  const QZ& at(const GroupElt& y, const GroupElt& z) const;
};

Cochain2Table mu_from_omega(const Cocycle3& w, const GroupElt& x);

/// Whether the table satisfies the 2-cocycle identity
///   c(y,z) - c(x+y,z) + c(x,y+z) - c(x,y) = 0 for all triples.
bool is_cocycle2(const Cochain2Table& c);

/// The alternating bilinear form c(y,z) - c(z,y) classifying the table up to
/// coboundary. The antisymmetrization of a 2-cocycle is automatically
/// bilinear; the reconstruction is verified pointwise and a mismatch throws.
AltForm2 alt_form_of(const Cochain2Table& c);

/// Assembles the trilinear form
///   tau(x, y, z) = beta_x(y, z) + xi_x(y) xi_x(z) / 2
/// from an assignment x -> beta_x of alternating forms (indexed by element_index
/// over A), where xi_x(y) = 1 exactly when beta_x(y, t) = 1/2. The assignment
/// must be additive for the star product twisted by t; a non-additive assignment
/// is rejected. The t-shifted alternating identities
///   tau(x, x+t, y) = 0 and tau(x, y+t, y) = 0
/// are verified pointwise and a violation is rejected as unrealizable.
Trilinear tau_from_mu(const std::vector<AltForm2>& mu, const BaseCategory& base);

}  // namespace mext
