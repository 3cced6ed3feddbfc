#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "scdkit/gadget.hpp"
#include "scdkit/numbers.hpp"
#include "scdkit/poset.hpp"
#include "scdkit/threelevel.hpp"

namespace scdkit {

// A scaled normalized matching on one consecutive-level bigraph: every
// lower vertex's weights sum to 1 and every upper vertex's to
// |lower| / |upper|. Weights are exact rationals num[x][e] / den, aligned
// with the bigraph adjacency.
struct SnmfPair {
  int lower_level = 0;
  LevelBigraph graph;
  std::int64_t den = 1;
  std::vector<std::vector<std::int64_t>> num;

  Rat weight(std::size_t x, std::size_t e) const {
    return Rat(Bint(num[x][e]), Bint(den));
  }
  Rat max_weight() const;
};

// Per-pair flows; constraints never couple different pairs, so a flow on a
// level range is just the list of its pairs.
struct Snmf {
  int first_pair = 0;
  std::vector<SnmfPair> pairs;
  Rat max_weight() const;
};

// Feasible flow per pair via an integer-scaled transportation problem
// (denominator = upper level size, so the solution is exactly rational).
Snmf compute_snmf(const GradedPoset& poset,
                  std::optional<std::pair<int, int>> level_range = {});

// Exact validation of the two sum constraints, vertex by vertex.
void validate_snmf(const GradedPoset& poset, const Snmf& flow);

struct MinimizedSnmf {
  Snmf flow;
  std::vector<Rat> w_per_pair;
  Rat w_global;
};

// Per pair, the smallest max edge weight among feasible flows, located by
// binary search on integer-scaled edge caps (scale ~1e12, so the answer is
// exact to 1e-12) with a max-flow feasibility oracle.
MinimizedSnmf minimize_max_weight(
    const GradedPoset& poset,
    std::optional<std::pair<int, int>> level_range = {});

// Flow weights for both bigraphs of a three-level poset, shaped for
// build_gadget_snmf. Works on glued posets too.
SnmfPairWeights compute_snmf_p3(const ThreeLevelPoset& p3);

// Same, minimizing the max weight per bigraph; W is the max over both.
std::pair<SnmfPairWeights, Rat> minimize_snmf_p3(const ThreeLevelPoset& p3);

}  // namespace scdkit
