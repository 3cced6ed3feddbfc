#pragma once

#include <json.hpp>

#include "scdkit/gadget.hpp"
#include "scdkit/poset.hpp"
#include "scdkit/scd.hpp"
#include "scdkit/snmf.hpp"

namespace scdkit {

using Json = nlohmann::json;

// Integers are emitted as JSON numbers while they are exactly
// representable in a double (|v| < 2^53) and as decimal strings beyond
// that; parsers accept both.
Json bint_to_json(const Bint& v);
Bint bint_from_json(const Json& j);

// { "kind", "t", "n", "levels": [[encoding, ...], ...] }
// boolean encodings are integers, hypergrid encodings coordinate arrays
Json poset_to_json(const GradedPoset& poset);
GradedPoset poset_from_json(const Json& j,
                            std::uint64_t budget = GradedPoset::kDefaultBudget);

// { "poset": {...}, "chains": [[encoding, ...], ...] }
Json scd_to_json(const GradedPoset& poset, const Scd& scd);
std::pair<GradedPoset, Scd> scd_from_json(
    const Json& j, std::uint64_t budget = GradedPoset::kDefaultBudget);

// { "size", "rows": [[{"col", "num", "den"}, ...], ...], "vertex_maps" }
Json matrix_to_json(const StochasticMatrix& m);
StochasticMatrix matrix_from_json(const Json& j);

// flow dump: one object per level pair,
// { "i", "edges": [{"from", "to", "weight"}, ...] }
Json snmf_to_json(const GradedPoset& poset, const Snmf& flow);

}  // namespace scdkit
