#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "scdkit/poset.hpp"

namespace scdkit {

// A chain is stored bottom-up; a decomposition is a list of chains.
// canonicalize() orders chains by their minimal element, which makes
// equality of decompositions a plain comparison.
struct Scd {
  std::vector<std::vector<ElemCode>> chains;

  void canonicalize();
  bool operator==(const Scd&) const = default;
};

struct Violation {
  int chain_index;  // -1 for whole-decomposition conditions
  std::string condition;
  std::string detail;
};

struct ValidationReport {
  bool ok = false;
  std::vector<Violation> violations;
  std::string summary() const;
};

// Checks that the chains partition the poset, that every step is a cover
// step, and that each chain's endpoint ranks sum to the total rank.
// Collects all violations instead of failing fast. Elements that are not
// in the poset at all raise a foreign-element error.
ValidationReport validate_scd(const GradedPoset& poset, const Scd& scd);

// chain length -> number of chains of that length
std::map<std::size_t, std::uint64_t> chain_profile(const Scd& scd);

}  // namespace scdkit
