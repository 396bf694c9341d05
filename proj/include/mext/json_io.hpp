#pragma once

#include <string>

#include "json.hpp"
#include "mext/cocycles.hpp"
#include "mext/extensions.hpp"
#include "mext/filtration.hpp"
#include "mext/forms.hpp"
#include "mext/group.hpp"

namespace mext {

/// JSON encodings used by the command line tool and the regression files.
/// Rationals are strings "num/den" in lowest terms with den >= 1; groups are
/// their moduli lists; homomorphisms are matrices as lists of rows. Encoding
/// followed by decoding is the identity on every type here, and object keys
/// are emitted in sorted order so encodings are canonical strings.
using json = nlohmann::json;

json to_json(const QZ& v);
QZ qz_from_json(const json& j);

json to_json(const FinAbGroup& g);
FinAbGroup group_from_json(const json& j);

json to_json(const GroupElt& e);                                  // coords only
GroupElt elt_from_json(const json& j, const FinAbGroup& parent);  // parent supplied

json to_json(const GroupHom& h);  // source, target, matrix
GroupHom hom_from_json(const json& j);

json to_json(const QuadForm& q);
QuadForm form_from_json(const json& j);

json to_json(const MetricGroup& m);
MetricGroup metric_from_json(const json& j);

json to_json(const BaseCategory& b);
BaseCategory base_from_json(const json& j);

json to_json(const MinExt& m);  // base, cat, iota matrix
MinExt min_ext_from_json(const json& j);

json to_json(const FactorReport& r);
FactorReport factor_report_from_json(const json& j);

json to_json(const Cocycle3& w);
Cocycle3 cocycle_from_json(const json& j);

/// Canonical serialized encoding (sorted keys, no whitespace); the comparison
/// key used wherever a deterministic representative must be chosen.
std::string encode(const json& j);

}  // namespace mext
