#pragma once

#include <cstdint>
#include <vector>

#include "scdkit/numbers.hpp"

namespace scdkit {

// Closed-form count bounds, all evaluated in log-space with log-gamma for
// factorials. Where a bound composes per-layer factors, the per-layer
// sizes and degrees are kept exact rather than collapsed into headline
// constants.

struct Lemma3Bounds {
  double log_lower;          // 2a(ln r - 1) - 2(b - a)
  double log_upper;          // ((a+b)/r) ln r!
  double log_upper_mixed;    // (a/r) ln r! + (b/q) ln q!, q = ar/b + 1
};

// Count bounds for a regular three-level poset: |X| = |Z| = a < |Y| = b,
// every outer vertex with degree r into the middle.
Lemma3Bounds lemma3_bounds(std::uint64_t a, std::uint64_t b, std::uint64_t r);

// Lower bound for a flow-weighted three-level poset with max edge weight
// W: -2a ln W - (a + b).
double lemma8_lower(std::uint64_t a, std::uint64_t b, double w_max);

struct Theorem1Bounds {
  double log_lower;
  double log_upper;
  double normalized_lower;  // log_lower / 2^n
  double normalized_upper;  // log_upper / 2^n
};

// Whole-lattice bounds for 2^[n]: the product over layers of the
// three-level bounds, with exact binomial level sizes and the exact
// per-layer degree m+s. Odd n starts with the middle-matching factor
// (r/e)^l below and (r!)^(l/r) above, l = C(n, (n-1)/2), r = (n+1)/2,
// and then layers as in the even case.
Theorem1Bounds theorem1_bounds(int n);

struct Theorem2Lower {
  double log_lower;
  double normalized;  // log_lower / t^n
  int layers_used;    // min(floor(t * n^(3/5)), m)
};

// Hypergrid lower bound: sum over central layers of
// -2|L_{m+s}| ln W_s - (|L_{m+s-1}| + |L_{m+s}|), where W_s is the max
// flow weight available at layer s. Odd total rank adds the
// middle-matching factor -l ln W - l, l the middle level size.
// w_per_layer[s-1] feeds layer s; if fewer values are given than layers,
// the last one is reused.
Theorem2Lower theorem2_lower(int t, int n,
                             const std::vector<double>& w_per_layer);

// ln of the degree bound n^(t^n) on the number of decompositions.
double trivial_upper(int t, int n);

}  // namespace scdkit
