#include "scdkit/snmf.hpp"

#include <algorithm>

#include "scdkit/error.hpp"
#include "scdkit/maxflow.hpp"

namespace scdkit {

namespace {

// Transportation network over one bigraph: source -> lower vertices with
// supply `supply`, lower -> upper along cover edges, upper -> sink with
// demand `demand`. Node layout: 0 = source, 1..L = lower, L+1..L+U = upper,
// L+U+1 = sink.
struct PairNetwork {
  MaxFlow flow;
  std::vector<std::vector<int>> edge_ids;  // per lower vertex, per adj slot
  int source, sink;
  std::int64_t total;

  PairNetwork(const std::vector<std::vector<std::uint32_t>>& adj,
              std::size_t upper, std::int64_t supply, std::int64_t demand,
              std::int64_t edge_cap)
      : flow(static_cast<int>(adj.size() + upper + 2)) {
    auto lower = adj.size();
    source = 0;
    sink = static_cast<int>(lower + upper + 1);
    total = supply * static_cast<std::int64_t>(lower);
    edge_ids.resize(lower);
    for (std::size_t x = 0; x < lower; ++x)
      flow.add_edge(source, static_cast<int>(1 + x), supply);
    for (std::size_t x = 0; x < lower; ++x)
      for (std::uint32_t y : adj[x])
        edge_ids[x].push_back(flow.add_edge(static_cast<int>(1 + x),
                                            static_cast<int>(1 + lower + y),
                                            edge_cap));
    for (std::size_t y = 0; y < upper; ++y)
      flow.add_edge(static_cast<int>(1 + lower + y), sink, demand);
  }

  bool feasible_with_cap(std::int64_t cap) {
    for (const auto& ids : edge_ids)
      for (int id : ids) flow.set_cap(id, cap);
    flow.reset();
    return flow.run(source, sink) == total;
  }
};

struct PairFlow {
  std::int64_t den;
  std::vector<std::vector<std::int64_t>> num;
};

// Feasible flow with up-sums 1 and down-sums lower/upper, scaled by the
// upper level size so everything is integral.
PairFlow solve_pair(const std::vector<std::vector<std::uint32_t>>& adj,
                    std::size_t upper) {
  auto lower = adj.size();
  auto supply = static_cast<std::int64_t>(upper);
  auto demand = static_cast<std::int64_t>(lower);
  PairNetwork net(adj, upper, supply, demand, supply);
  require(net.flow.run(net.source, net.sink) == net.total,
          Errc::invalid_parameter,
          "transportation problem infeasible; the level bigraph violates "
          "normalized matching (this indicates a bug)");
  PairFlow out;
  out.den = supply;
  out.num.resize(lower);
  for (std::size_t x = 0; x < lower; ++x)
    for (int id : net.edge_ids[x]) out.num[x].push_back(net.flow.flow_on(id));
  return out;
}

constexpr std::int64_t kScaleTarget = 1'000'000'000'000;  // 1e12

// Smallest feasible edge cap by binary search on the scaled integers.
PairFlow minimize_pair(const std::vector<std::vector<std::uint32_t>>& adj,
                       std::size_t upper) {
  auto lower = adj.size();
  auto u = static_cast<std::int64_t>(upper);
  std::int64_t q = (kScaleTarget + u - 1) / u;
  std::int64_t den = u * q;  // >= 1e12, divisible by the upper size
  std::int64_t supply = den;
  std::int64_t demand = q * static_cast<std::int64_t>(lower);

  PairNetwork net(adj, upper, supply, demand, den);
  require(net.feasible_with_cap(den), Errc::invalid_parameter,
          "transportation problem infeasible at cap 1 (this indicates a bug)");

  std::int64_t lo = 0, hi = den;  // hi feasible, lo infeasible
  while (hi - lo > 1) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (net.feasible_with_cap(mid))
      hi = mid;
    else
      lo = mid;
  }
  net.feasible_with_cap(hi);

  PairFlow out;
  out.den = den;
  out.num.resize(lower);
  for (std::size_t x = 0; x < lower; ++x)
    for (int id : net.edge_ids[x]) out.num[x].push_back(net.flow.flow_on(id));
  return out;
}

std::pair<int, int> resolve_range(const GradedPoset& poset,
                                  std::optional<std::pair<int, int>> range) {
  int last_pair = poset.num_levels() - 2;
  if (!range) return {0, last_pair};
  auto [lo, hi] = *range;
  require(lo >= 0 && hi <= last_pair && lo <= hi, Errc::out_of_range,
          "level pair range " + std::to_string(lo) + ".." + std::to_string(hi) +
              " outside 0.." + std::to_string(last_pair));
  return {lo, hi};
}

SnmfPair make_pair(const GradedPoset& poset, int i, bool minimize) {
  SnmfPair p;
  p.lower_level = i;
  p.graph = poset.level_bigraph(i);
  PairFlow f = minimize ? minimize_pair(p.graph.adj, p.graph.upper_size)
                        : solve_pair(p.graph.adj, p.graph.upper_size);
  p.den = f.den;
  p.num = std::move(f.num);
  return p;
}

}  // namespace

Rat SnmfPair::max_weight() const {
  std::int64_t best = 0;
  for (const auto& row : num)
    for (std::int64_t v : row) best = std::max(best, v);
  return Rat(Bint(best), Bint(den));
}

Rat Snmf::max_weight() const {
  Rat best = 0;
  for (const auto& p : pairs) best = std::max(best, p.max_weight());
  return best;
}

Snmf compute_snmf(const GradedPoset& poset,
                  std::optional<std::pair<int, int>> level_range) {
  auto [lo, hi] = resolve_range(poset, level_range);
  Snmf flow;
  flow.first_pair = lo;
  for (int i = lo; i <= hi; ++i)
    flow.pairs.push_back(make_pair(poset, i, false));
  return flow;
}

void validate_snmf(const GradedPoset& poset, const Snmf& flow) {
  for (const auto& p : flow.pairs) {
    const auto lower = poset.level(p.lower_level).size();
    const auto upper = poset.level(p.lower_level + 1).size();
    require(p.graph.lower_size == lower && p.graph.upper_size == upper,
            Errc::invalid_parameter, "flow does not belong to this poset");
    std::vector<std::int64_t> down(upper, 0);
    for (std::size_t x = 0; x < lower; ++x) {
      require(p.num[x].size() == p.graph.adj[x].size(),
              Errc::invalid_parameter, "flow shape mismatch");
      std::int64_t up = 0;
      for (std::size_t e = 0; e < p.num[x].size(); ++e) {
        require(p.num[x][e] >= 0, Errc::not_snmf, "negative weight");
        up += p.num[x][e];
        down[p.graph.adj[x][e]] += p.num[x][e];
      }
      require(up == p.den, Errc::not_snmf,
              "pair " + std::to_string(p.lower_level) + ": lower vertex " +
                  std::to_string(x) + " has up-sum " + std::to_string(up) +
                  "/" + std::to_string(p.den));
    }
    for (std::size_t y = 0; y < upper; ++y) {
      // down-sum must be lower/upper: cross-multiplied in 128-bit
      __int128 lhs = static_cast<__int128>(down[y]) * static_cast<__int128>(upper);
      __int128 rhs = static_cast<__int128>(p.den) * static_cast<__int128>(lower);
      require(lhs == rhs, Errc::not_snmf,
              "pair " + std::to_string(p.lower_level) + ": upper vertex " +
                  std::to_string(y) + " has down-sum " +
                  std::to_string(down[y]) + "/" + std::to_string(p.den));
    }
  }
}

MinimizedSnmf minimize_max_weight(
    const GradedPoset& poset, std::optional<std::pair<int, int>> level_range) {
  auto [lo, hi] = resolve_range(poset, level_range);
  MinimizedSnmf out;
  out.flow.first_pair = lo;
  out.w_global = 0;
  for (int i = lo; i <= hi; ++i) {
    out.flow.pairs.push_back(make_pair(poset, i, true));
    Rat w = out.flow.pairs.back().max_weight();
    out.w_per_pair.push_back(w);
    out.w_global = std::max(out.w_global, w);
  }
  return out;
}

SnmfPairWeights compute_snmf_p3(const ThreeLevelPoset& p3) {
  SnmfPairWeights f;
  PairFlow xy = solve_pair(p3.xy, p3.b);
  PairFlow yz = solve_pair(p3.yz, p3.a);
  f.f_xy.resize(p3.a);
  for (std::size_t x = 0; x < p3.a; ++x)
    for (std::int64_t v : xy.num[x])
      f.f_xy[x].push_back(Rat(Bint(v), Bint(xy.den)));
  f.f_yz.resize(p3.b);
  for (std::size_t y = 0; y < p3.b; ++y)
    for (std::int64_t v : yz.num[y])
      f.f_yz[y].push_back(Rat(Bint(v), Bint(yz.den)));
  return f;
}

std::pair<SnmfPairWeights, Rat> minimize_snmf_p3(const ThreeLevelPoset& p3) {
  SnmfPairWeights f;
  PairFlow xy = minimize_pair(p3.xy, p3.b);
  PairFlow yz = minimize_pair(p3.yz, p3.a);
  Rat w = 0;
  f.f_xy.resize(p3.a);
  for (std::size_t x = 0; x < p3.a; ++x)
    for (std::int64_t v : xy.num[x]) {
      f.f_xy[x].push_back(Rat(Bint(v), Bint(xy.den)));
      w = std::max(w, f.f_xy[x].back());
    }
  f.f_yz.resize(p3.b);
  for (std::size_t y = 0; y < p3.b; ++y)
    for (std::int64_t v : yz.num[y]) {
      f.f_yz[y].push_back(Rat(Bint(v), Bint(yz.den)));
      w = std::max(w, f.f_yz[y].back());
    }
  return {std::move(f), w};
}

}  // namespace scdkit
