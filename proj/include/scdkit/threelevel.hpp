#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "scdkit/numbers.hpp"
#include "scdkit/poset.hpp"

namespace scdkit {

// A rank-symmetric poset with three levels X, Y, Z, |X| = |Z| = a,
// |Y| = b. These arise two ways: as a window of three consecutive levels
// of a graded poset, and as the glued unit of the layer-by-layer counting
// procedure, where each middle element is a (bottom, top) pair of chain
// endpoints identified with each other.
struct ThreeLevelPoset {
  std::size_t a = 0;
  std::size_t b = 0;
  std::vector<std::vector<std::uint32_t>> xy;  // x index -> sorted y indices
  std::vector<std::vector<std::uint32_t>> yz;  // y index -> sorted z indices

  // labels, for diagnostics and for mapping decompositions back
  std::vector<ElemCode> x_code;
  std::vector<ElemCode> z_code;
  std::vector<std::pair<ElemCode, ElemCode>> y_code;  // (bottom, top)

  std::vector<std::vector<std::uint32_t>> yx() const;  // transposed xy
  std::vector<std::vector<std::uint32_t>> zy() const;  // transposed yz
  void check_structure() const;  // sizes and adjacency ranges
  void check() const;            // structure + nonempty bigraphs
};

// The window (L_i, L_{i+1}, L_{i+2}) of a graded poset. Requires
// |L_i| = |L_{i+2}| < |L_{i+1}|.
ThreeLevelPoset slice(const GradedPoset& poset, int x_level);

struct RegularityCheck {
  bool regular = false;
  std::uint32_t r = 0;  // common X/Z degree into Y when regular
  std::string why;      // first offending vertex otherwise
};
// Regular means: every x and z has the same degree r into Y, and every y
// has degree r*a/b to each side.
RegularityCheck check_regular(const ThreeLevelPoset& p3);

// A symmetric chain decomposition of a three-level poset: (x,y,z) triples
// plus middle-level singletons.
struct P3Scd {
  std::vector<std::array<std::uint32_t, 3>> triples;
  std::vector<std::uint32_t> singleton_ys;

  void canonicalize();
  bool operator==(const P3Scd&) const = default;
};

bool validate_p3_scd(const ThreeLevelPoset& p3, const P3Scd& scd,
                     std::string* why = nullptr);

// Backtracking enumeration over all decompositions, in a deterministic
// order; the callback returns false to stop early.
void enumerate_p3_scds(const ThreeLevelPoset& p3,
                       const std::function<bool(const P3Scd&)>& cb);

// Direct count via the same backtracking; independent of the gadget
// matching route, used to cross-check it on small instances.
Bint count_p3_scds_backtracking(const ThreeLevelPoset& p3);

}  // namespace scdkit
