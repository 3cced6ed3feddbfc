#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "scdkit/numbers.hpp"
#include "scdkit/threelevel.hpp"

namespace scdkit {

// The two-copy bipartite gadget of a three-level poset: rows are Y1 then X,
// columns are Y2 then Z (each block in canonical order). Perfect matchings
// of the gadget correspond one-to-one to symmetric chain decompositions of
// the poset: a copy edge (y1, y2) makes y a singleton chain, otherwise the
// x matched to y2 and the z matched to y1 join y into the chain {x, y, z}.

enum class EdgeTag : std::uint8_t { copy, x_side, z_side };

struct GadgetEdge {
  std::uint32_t row;
  std::uint32_t col;
  Rat weight;
  EdgeTag tag;
};

struct VertexRef {
  enum class Part : std::uint8_t { y1, x, y2, z };
  Part part;
  std::uint32_t index;
};

struct StochasticMatrix {
  std::size_t size = 0;
  std::vector<std::vector<Rat>> entries;
  std::vector<VertexRef> row_map;
  std::vector<VertexRef> col_map;
  void check_doubly_stochastic() const;  // exact; throws with the bad line
};

struct WeightedBigraph {
  std::size_t a = 0;
  std::size_t b = 0;
  ThreeLevelPoset p3;
  std::vector<GadgetEdge> edges;  // sorted by (row, col)

  std::size_t size() const { return a + b; }
  std::uint32_t row_of_y1(std::uint32_t j) const { return j; }
  std::uint32_t row_of_x(std::uint32_t i) const {
    return static_cast<std::uint32_t>(b) + i;
  }
  std::uint32_t col_of_y2(std::uint32_t j) const { return j; }
  std::uint32_t col_of_z(std::uint32_t i) const {
    return static_cast<std::uint32_t>(b) + i;
  }

  StochasticMatrix matrix() const;
  // 0/1 support as row -> sorted columns
  std::vector<std::vector<std::uint32_t>> support() const;
  // degree sequence of the row side of the support graph
  std::vector<std::uint32_t> row_degrees() const;
};

// Regular case: side edges weigh 1/r, copy edges 1 - a/b.
WeightedBigraph build_gadget_regular(const ThreeLevelPoset& p3);

// Flow-weighted case: the x-y edge (x,y) weighs f(xy), the z-y edge
// (a/b) f(yz), copy edges 1 - a/b. f must be a scaled normalized matching
// on both bigraphs: up-sums 1, down-sums |X|/|Y| resp. |Y|/|Z|.
struct SnmfPairWeights {
  std::vector<std::vector<Rat>> f_xy;  // aligned with ThreeLevelPoset::xy
  std::vector<std::vector<Rat>> f_yz;  // aligned with ThreeLevelPoset::yz
};
WeightedBigraph build_gadget_snmf(const ThreeLevelPoset& p3,
                                  const SnmfPairWeights& f);

// A perfect matching of the gadget, as row -> column.
using Matching = std::vector<std::uint32_t>;

P3Scd matching_to_scd(const WeightedBigraph& g, const Matching& m);
Matching scd_to_matching(const WeightedBigraph& g, const P3Scd& scd);

// Product of edge weights of a perfect matching.
Rat matching_weight(const WeightedBigraph& g, const Matching& m);

// Backtracking enumeration of all perfect matchings of a bipartite support
// graph with equal sides; deterministic order; callback returns false to
// stop.
void enumerate_perfect_matchings(
    const std::vector<std::vector<std::uint32_t>>& adj,
    const std::function<bool(const Matching&)>& cb);

}  // namespace scdkit
