#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "scdkit/numbers.hpp"
#include "scdkit/poset.hpp"
#include "scdkit/scd.hpp"
#include "scdkit/threelevel.hpp"

namespace scdkit {

struct OracleOptions {
  std::uint64_t max_elements = 40;
};

// Exact count by canonical backtracking: elements are processed in rank
// order (canonical within each level); each one either opens a new chain or
// extends the open chain whose top it covers. Branches die as soon as a
// chain can no longer close symmetrically. Every decomposition corresponds
// to exactly one surviving assignment sequence.
Bint count_scd_oracle(const GradedPoset& poset, const OracleOptions& = {});

// Endpoint bijection: for every chain spanning the processed band of
// levels, sigma[top index] = bottom index (canonical level orderings).
// It is the entire state of the layer-by-layer procedure: the next glued
// three-level poset, and hence every future extension count, depends only
// on it.
using Sigma = std::vector<std::uint32_t>;

struct LayeredOptions {
  std::uint64_t state_cap = 10'000'000;  // max live sigma states per layer
  int threads = 1;
  bool explore_reversed = false;  // test hook: expand states in reverse order
  std::optional<std::filesystem::path> cache_dir;
  // observation hook for certification runs; forces single-threaded layers
  std::function<void(int layer, const Sigma& sigma, const ThreeLevelPoset& glued)>
      on_state;
};

// Exact count by the layered procedure: start at the middle (the central
// three levels when the total rank is even, a perfect matching between the
// two equal middle levels when odd), then repeatedly glue the outer chain
// endpoints along sigma and extend by one level on both sides. Counts are
// accumulated per reachable sigma, layer by layer.
Bint count_scd_layered(const GradedPoset& poset, const LayeredOptions& = {});

// Count for a single three-level poset = number of perfect matchings of its
// gadget support graph.
Bint count_scd_threelevel(const ThreeLevelPoset& p3);

// Exact uniform sampling driven by the layered tables: each layer's
// extension is drawn with probability proportional to its number of
// completions.
class ScdSampler {
 public:
  explicit ScdSampler(const GradedPoset& poset, const LayeredOptions& = {});
  ~ScdSampler();
  ScdSampler(const ScdSampler&) = delete;
  ScdSampler& operator=(const ScdSampler&) = delete;

  const Bint& total_count() const;
  Scd draw(std::mt19937_64& rng) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Scd sample_scd_uniform(const GradedPoset& poset, std::uint64_t seed,
                       const LayeredOptions& = {});

}  // namespace scdkit
