#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scdkit/error.hpp"
#include "scdkit/numbers.hpp"

namespace scdkit {

enum class PosetKind { boolean_lattice, hypergrid };

// An element is a single code word.
//   boolean lattice 2^[n]: the subset bitmask itself, bit i-1 <-> element i.
//   hypergrid [t]^n: the mixed-radix value sum_i (x_i - 1) * t^(n-i), so
//   numeric order on codes equals lexicographic order on (x_1,...,x_n).
// Numeric code order is the canonical element order everywhere: levels,
// adjacency lists, serialization and counting traversals all follow it.
using ElemCode = std::uint64_t;

struct LevelBigraph {
  int lower_level = 0;
  std::size_t lower_size = 0;
  std::size_t upper_size = 0;
  // adj[i] = sorted indices into the upper level of the elements covering
  // the i-th element of the lower level
  std::vector<std::vector<std::uint32_t>> adj;
  std::vector<std::uint32_t> lower_deg;
  std::vector<std::uint32_t> upper_deg;
  std::size_t edge_count() const;
};

class GradedPoset {
 public:
  static constexpr std::uint64_t kDefaultBudget = 10'000'000;
  static constexpr std::size_t kDefaultMaxEdges = 1'000'000;

  static GradedPoset boolean_lattice(int n,
                                     std::uint64_t budget = kDefaultBudget);
  static GradedPoset hypergrid(int t, int n,
                               std::uint64_t budget = kDefaultBudget);
  static GradedPoset build(PosetKind kind, int t, int n,
                           std::uint64_t budget = kDefaultBudget);

  PosetKind kind() const { return kind_; }
  int t() const { return t_; }
  int n() const { return n_; }
  int num_levels() const { return static_cast<int>(levels_.size()); }
  // rank of the top element; levels run 0..total_rank()
  int total_rank() const { return num_levels() - 1; }
  std::uint64_t size() const { return size_; }

  const std::vector<ElemCode>& level(int i) const;
  int rank_of(ElemCode code) const;
  bool contains(ElemCode code) const;
  // index of the element within its (sorted) level
  std::uint32_t index_in_level(ElemCode code) const;

  std::vector<ElemCode> covers_up(ElemCode code) const;    // sorted
  std::vector<ElemCode> covers_down(ElemCode code) const;  // sorted
  bool covers(ElemCode lo, ElemCode hi) const;             // hi covers lo

  LevelBigraph level_bigraph(int i,
                             std::size_t max_edges = kDefaultMaxEdges) const;

  // hypergrid: coordinates (x_1..x_n); boolean: sorted list of members of [n]
  std::vector<int> decode(ElemCode code) const;
  std::string describe(ElemCode code) const;
  std::string descriptor() const;  // e.g. "boolean:n=4", "hypergrid:t=3:n=2"

 private:
  GradedPoset() = default;
  PosetKind kind_ = PosetKind::boolean_lattice;
  int t_ = 2;
  int n_ = 0;
  std::uint64_t size_ = 0;
  std::vector<std::vector<ElemCode>> levels_;
};

// Level sizes of [t]^n by iterated convolution of the all-ones vector of
// length t; never materializes elements, so n can be large.
std::vector<Bint> level_sizes(int t, int n);

}  // namespace scdkit
