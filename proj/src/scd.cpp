#include "scdkit/scd.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace scdkit {

void Scd::canonicalize() {
  std::sort(chains.begin(), chains.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

std::string ValidationReport::summary() const {
  if (ok) return "ok";
  std::ostringstream os;
  os << violations.size() << " violation(s)";
  for (const auto& v : violations) {
    os << "; ";
    if (v.chain_index >= 0) os << "chain " << v.chain_index << ": ";
    os << v.condition << " (" << v.detail << ")";
  }
  return os.str();
}

ValidationReport validate_scd(const GradedPoset& poset, const Scd& scd) {
  ValidationReport report;
  auto add = [&](int chain, std::string cond, std::string detail) {
    report.violations.push_back({chain, std::move(cond), std::move(detail)});
  };

  const int mtot = poset.total_rank();
  std::unordered_set<ElemCode> seen;
  seen.reserve(poset.size() * 2);

  for (std::size_t ci = 0; ci < scd.chains.size(); ++ci) {
    const auto& chain = scd.chains[ci];
    int idx = static_cast<int>(ci);
    if (chain.empty()) {
      add(idx, "empty-chain", "chain has no elements");
      continue;
    }
    for (ElemCode e : chain) {
      require(poset.contains(e), Errc::foreign_element,
              "element with code " + std::to_string(e) +
                  " is not in " + poset.descriptor());
      if (!seen.insert(e).second)
        add(idx, "duplicate-element",
            poset.describe(e) + " appears in more than one chain");
    }
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      if (!poset.covers(chain[i], chain[i + 1]))
        add(idx, "not-a-cover-step",
            poset.describe(chain[i + 1]) + " does not cover " +
                poset.describe(chain[i]));
    }
    int lo = poset.rank_of(chain.front());
    int hi = poset.rank_of(chain.back());
    if (lo + hi != mtot)
      add(idx, "not-symmetric",
          "endpoint ranks " + std::to_string(lo) + "+" + std::to_string(hi) +
              " != total rank " + std::to_string(mtot));
  }

  if (seen.size() != poset.size())
    add(-1, "not-a-partition",
        "chains cover " + std::to_string(seen.size()) + " of " +
            std::to_string(poset.size()) + " elements");

  std::size_t middle = 0;
  for (int i = 0; i < poset.num_levels(); ++i)
    middle = std::max(middle, poset.level(i).size());
  if (scd.chains.size() != middle)
    add(-1, "chain-count",
        std::to_string(scd.chains.size()) + " chains, largest level has " +
            std::to_string(middle));

  report.ok = report.violations.empty();
  return report;
}

std::map<std::size_t, std::uint64_t> chain_profile(const Scd& scd) {
  std::map<std::size_t, std::uint64_t> profile;
  for (const auto& chain : scd.chains) profile[chain.size()]++;
  return profile;
}

}  // namespace scdkit
