#include "scdkit/construct.hpp"

#include <algorithm>

namespace scdkit {

Scd gk_decomposition(int n, std::uint64_t budget) {
  require(n >= 1, Errc::invalid_parameter, "n must be at least 1");
  require(n <= 62, Errc::budget_exceeded, "n too large for the encoding");
  std::uint64_t size = 1;
  for (int i = 0; i < n; ++i) {
    require(size <= budget / 2, Errc::budget_exceeded,
            "2^" + std::to_string(n) + " exceeds the element budget");
    size *= 2;
  }

  Scd scd;
  std::vector<int> unmatched_close;
  for (std::uint64_t mask = 0; mask < size; ++mask) {
    // match the bracket word of this set; members are '('
    unmatched_close.clear();
    int open_depth = 0;
    for (int i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) {
        ++open_depth;
      } else if (open_depth > 0) {
        --open_depth;
      } else {
        unmatched_close.push_back(i);
      }
    }
    if (open_depth != 0) continue;  // some '(' unmatched: not a chain bottom

    std::vector<ElemCode> chain{mask};
    std::uint64_t cur = mask;
    for (auto it = unmatched_close.rbegin(); it != unmatched_close.rend();
         ++it) {
      cur |= std::uint64_t{1} << *it;
      chain.push_back(cur);
    }
    scd.chains.push_back(std::move(chain));
  }
  scd.canonicalize();
  return scd;
}

Scd btk_decomposition(int t, int n, std::uint64_t budget) {
  require(t >= 2, Errc::invalid_parameter, "t must be at least 2");
  require(n >= 1, Errc::invalid_parameter, "n must be at least 1");
  std::uint64_t size = 1;
  for (int i = 0; i < n; ++i) {
    require(size <= budget / static_cast<std::uint64_t>(t),
            Errc::budget_exceeded,
            std::to_string(t) + "^" + std::to_string(n) +
                " exceeds the element budget");
    size *= static_cast<std::uint64_t>(t);
  }

  // dimension 1: the single chain (1) < (2) < ... < (t)
  std::vector<std::vector<ElemCode>> chains{std::vector<ElemCode>()};
  for (int v = 0; v < t; ++v) chains[0].push_back(static_cast<ElemCode>(v));

  for (int dim = 2; dim <= n; ++dim) {
    std::vector<std::vector<ElemCode>> next;
    for (const auto& chain : chains) {
      auto k = chain.size();
      auto peels = std::min<std::size_t>(k, static_cast<std::size_t>(t));
      for (std::size_t j = 1; j <= peels; ++j) {
        std::vector<ElemCode> out;
        // up the old chain with new coordinate j...
        for (std::size_t a = 0; a + j <= k; ++a)
          out.push_back(chain[a] * t + (j - 1));
        // ...then bump the new coordinate at the top of the peel
        for (std::size_t v = j + 1; v <= static_cast<std::size_t>(t); ++v)
          out.push_back(chain[k - j] * t + (v - 1));
        next.push_back(std::move(out));
      }
    }
    chains = std::move(next);
  }

  Scd scd;
  scd.chains = std::move(chains);
  scd.canonicalize();
  return scd;
}

}  // namespace scdkit
