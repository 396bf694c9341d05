#pragma once

#include <string>
#include <vector>

#include "mext/extensions.hpp"
#include "mext/filtration.hpp"

namespace mext {

/// One named end-to-end check. The detail string holds the computed values in
/// a fixed format, so two runs of the same suite produce identical bytes.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// The rank-one fermionic base: the factor tower has order 16, and the eight
/// pointed classes form a cyclic group of order 8 indexed by their charge.
std::vector<CheckResult> verify_svect();

/// Cyclic 2-group bases Z_{2^n} with t of order 2, for n = 2 and 3: total
/// order 2^{n+1}, a generator of full order, and the squaring chain through
/// the two-parameter family of cyclic-by-cyclic extensions.
std::vector<CheckResult> verify_z2n();

/// The split rank-two base on Z_2 x Z_2: factor tower of order 128; the 32
/// pointed classes form Z_8 x Z_4, with explicit order-4 representatives and
/// their squares identified.
std::vector<CheckResult> verify_z2z2();

/// Kunneth bookkeeping for degree-3 cohomology of products, plus the
/// recursion that splits one cyclic factor off the base.
std::vector<CheckResult> verify_kunneth();

/// Runs one suite by name ("svect", "z2n", "z2z2", "kunneth") or all four in
/// that order ("all"). Unknown names raise precondition_error.
std::vector<CheckResult> verify_suite(const std::string& suite);

}  // namespace mext
