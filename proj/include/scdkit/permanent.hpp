#pragma once

#include <cstdint>
#include <vector>

#include "scdkit/numbers.hpp"

namespace scdkit {

// 2^k subset loop; the feasibility frontier at desk scale.
inline constexpr std::size_t kPermanentSizeCap = 30;

// Exact permanent by the Ryser inclusion-exclusion formula with Gray-code
// subset updates, O(2^k * k). The subset range may be partitioned across
// threads; partial sums are combined in range order, so the result is
// identical for any thread count.
Bint permanent_ryser_int(const std::vector<std::vector<Bint>>& m,
                         int threads = 1);

// Rational matrices are scaled to a common denominator per matrix and run
// through the integer kernel, so no per-step normalization happens.
Rat permanent_ryser(const std::vector<std::vector<Rat>>& m, int threads = 1);

// Same loop in doubles; error grows with 2^k term cancellation, use only
// where a float answer is acceptable.
double permanent_ryser_float(const std::vector<std::vector<double>>& m);

// Factorial expansion along rows, k <= 9. Shares no code with the Ryser or
// subset-DP routes.
Rat permanent_naive(const std::vector<std::vector<Rat>>& m);

// Permanent by dynamic programming over column subsets, O(2^k) states.
// This is the designated independent oracle for matching counts; it shares
// no code with the Ryser kernel.
Rat permanent_subset_dp(const std::vector<std::vector<Rat>>& m);

// Number of perfect matchings of a bipartite graph with equal sides, given
// as row -> sorted column adjacency. Subset DP over the right side.
Bint count_perfect_matchings(const std::vector<std::vector<std::uint32_t>>& adj,
                             std::size_t cols);

// log of the Bregman bound prod (d_i!)^(1/d_i) on perfect matchings, from
// one side's degree sequence.
double bregman_upper(const std::vector<std::uint32_t>& degrees);

}  // namespace scdkit
