#pragma once

#include "scdkit/scd.hpp"

namespace scdkit {

// Greene-Kleitman bracket construction on 2^[n].
//
// Convention (frozen; golden-file tested): position i of the bracket word
// is '(' when i is a member of the set and ')' otherwise. Brackets are
// matched in the usual way. A set is a chain bottom when every '(' is
// matched; the chain above it toggles the unmatched ')' positions to
// members from the rightmost one leftwards.
Scd gk_decomposition(int n,
                     std::uint64_t budget = GradedPoset::kDefaultBudget);

// de Bruijn-Tengbergen-Kruyswijk recursion on [t]^n: each chain of an SCD
// of [t]^{n-1}, crossed with the new coordinate, is peeled into symmetric
// chains of the k x t grid. Peel j starts at new-coordinate value j on the
// lowest chain element, runs up the old chain, and then finishes along the
// top row, so the longest chain of every grid hugs the low-coordinate edge.
Scd btk_decomposition(int t, int n,
                      std::uint64_t budget = GradedPoset::kDefaultBudget);

}  // namespace scdkit
