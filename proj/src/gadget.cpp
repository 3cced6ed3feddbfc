#include "scdkit/gadget.hpp"

#include <algorithm>

#include "scdkit/error.hpp"

namespace scdkit {

void StochasticMatrix::check_doubly_stochastic() const {
  for (std::size_t i = 0; i < size; ++i) {
    Rat row_sum = 0, col_sum = 0;
    for (std::size_t j = 0; j < size; ++j) {
      require(entries[i][j] >= 0, Errc::invalid_parameter,
              "negative entry at (" + std::to_string(i) + "," +
                  std::to_string(j) + ")");
      row_sum += entries[i][j];
      col_sum += entries[j][i];
    }
    require(row_sum == 1, Errc::invalid_parameter,
            "row " + std::to_string(i) + " sums to " + row_sum.str());
    require(col_sum == 1, Errc::invalid_parameter,
            "column " + std::to_string(i) + " sums to " + col_sum.str());
  }
}

StochasticMatrix WeightedBigraph::matrix() const {
  StochasticMatrix m;
  m.size = size();
  m.entries.assign(m.size, std::vector<Rat>(m.size, Rat(0)));
  for (const auto& e : edges) m.entries[e.row][e.col] = e.weight;
  m.row_map.reserve(m.size);
  m.col_map.reserve(m.size);
  for (std::uint32_t j = 0; j < b; ++j)
    m.row_map.push_back({VertexRef::Part::y1, j});
  for (std::uint32_t i = 0; i < a; ++i)
    m.row_map.push_back({VertexRef::Part::x, i});
  for (std::uint32_t j = 0; j < b; ++j)
    m.col_map.push_back({VertexRef::Part::y2, j});
  for (std::uint32_t i = 0; i < a; ++i)
    m.col_map.push_back({VertexRef::Part::z, i});
  return m;
}

std::vector<std::vector<std::uint32_t>> WeightedBigraph::support() const {
  std::vector<std::vector<std::uint32_t>> adj(size());
  for (const auto& e : edges) adj[e.row].push_back(e.col);
  return adj;  // edges are sorted by (row, col) already
}

std::vector<std::uint32_t> WeightedBigraph::row_degrees() const {
  std::vector<std::uint32_t> deg(size(), 0);
  for (const auto& e : edges) deg[e.row]++;
  return deg;
}

namespace {

WeightedBigraph assemble(const ThreeLevelPoset& p3,
                         const std::function<Rat(std::uint32_t, std::uint32_t)>& wxy,
                         const std::function<Rat(std::uint32_t, std::uint32_t)>& wyz) {
  require(p3.a < p3.b, Errc::invalid_parameter,
          "gadget requires |X| < |Y|, got " + std::to_string(p3.a) + " and " +
              std::to_string(p3.b));
  WeightedBigraph g;
  g.a = p3.a;
  g.b = p3.b;
  g.p3 = p3;
  Rat copy_w = Rat(1) - Rat(Bint(p3.a), Bint(p3.b));

  // rows in order: Y1 block first, then X block
  for (std::uint32_t j = 0; j < p3.b; ++j) {
    g.edges.push_back({g.row_of_y1(j), g.col_of_y2(j), copy_w, EdgeTag::copy});
    for (std::uint32_t zi = 0; zi < p3.yz[j].size(); ++zi) {
      std::uint32_t z = p3.yz[j][zi];
      g.edges.push_back(
          {g.row_of_y1(j), g.col_of_z(z), wyz(j, zi), EdgeTag::z_side});
    }
  }
  for (std::uint32_t i = 0; i < p3.a; ++i)
    for (std::uint32_t yi = 0; yi < p3.xy[i].size(); ++yi) {
      std::uint32_t y = p3.xy[i][yi];
      g.edges.push_back(
          {g.row_of_x(i), g.col_of_y2(y), wxy(i, yi), EdgeTag::x_side});
    }

  g.matrix().check_doubly_stochastic();
  return g;
}

}  // namespace

WeightedBigraph build_gadget_regular(const ThreeLevelPoset& p3) {
  p3.check();
  auto rc = check_regular(p3);
  require(rc.regular, Errc::not_regular, "poset is not regular: " + rc.why);
  Rat w = Rat(Bint(1), Bint(rc.r));
  return assemble(
      p3, [&](std::uint32_t, std::uint32_t) { return w; },
      [&](std::uint32_t, std::uint32_t) { return w; });
}

WeightedBigraph build_gadget_snmf(const ThreeLevelPoset& p3,
                                  const SnmfPairWeights& f) {
  p3.check();
  require(f.f_xy.size() == p3.a && f.f_yz.size() == p3.b,
          Errc::invalid_parameter, "flow weights do not match the poset");

  Rat down_xy = Rat(Bint(p3.a), Bint(p3.b));  // |X| / |Y|
  Rat down_yz = Rat(Bint(p3.b), Bint(p3.a));  // |Y| / |Z|

  std::vector<Rat> y_down(p3.b, Rat(0)), z_down(p3.a, Rat(0));
  for (std::uint32_t x = 0; x < p3.a; ++x) {
    require(f.f_xy[x].size() == p3.xy[x].size(), Errc::invalid_parameter,
            "flow weights do not match the x-y adjacency");
    Rat up = 0;
    for (std::uint32_t yi = 0; yi < p3.xy[x].size(); ++yi) {
      require(f.f_xy[x][yi] >= 0, Errc::not_snmf, "negative flow weight");
      up += f.f_xy[x][yi];
      y_down[p3.xy[x][yi]] += f.f_xy[x][yi];
    }
    require(up == 1, Errc::not_snmf,
            "x vertex " + std::to_string(x) + " has up-sum " + up.str() +
                ", expected 1");
  }
  for (std::uint32_t y = 0; y < p3.b; ++y)
    require(y_down[y] == down_xy, Errc::not_snmf,
            "y vertex " + std::to_string(y) + " has down-sum " +
                y_down[y].str() + ", expected " + down_xy.str());
  for (std::uint32_t y = 0; y < p3.b; ++y) {
    require(f.f_yz[y].size() == p3.yz[y].size(), Errc::invalid_parameter,
            "flow weights do not match the y-z adjacency");
    Rat up = 0;
    for (std::uint32_t zi = 0; zi < p3.yz[y].size(); ++zi) {
      require(f.f_yz[y][zi] >= 0, Errc::not_snmf, "negative flow weight");
      up += f.f_yz[y][zi];
      z_down[p3.yz[y][zi]] += f.f_yz[y][zi];
    }
    require(up == 1, Errc::not_snmf,
            "y vertex " + std::to_string(y) + " has up-sum " + up.str() +
                ", expected 1");
  }
  for (std::uint32_t z = 0; z < p3.a; ++z)
    require(z_down[z] == down_yz, Errc::not_snmf,
            "z vertex " + std::to_string(z) + " has down-sum " +
                z_down[z].str() + ", expected " + down_yz.str());

  Rat scale = Rat(Bint(p3.a), Bint(p3.b));
  return assemble(
      p3,
      [&](std::uint32_t x, std::uint32_t yi) { return f.f_xy[x][yi]; },
      [&](std::uint32_t y, std::uint32_t zi) { return scale * f.f_yz[y][zi]; });
}

P3Scd matching_to_scd(const WeightedBigraph& g, const Matching& m) {
  const std::size_t k = g.size();
  require(m.size() == k, Errc::not_perfect_matching,
          "matching has " + std::to_string(m.size()) + " rows, expected " +
              std::to_string(k));
  std::vector<bool> col_used(k, false);
  auto support = g.support();
  for (std::size_t r = 0; r < k; ++r) {
    require(m[r] < k, Errc::not_perfect_matching, "column index out of range");
    require(!col_used[m[r]], Errc::not_perfect_matching,
            "column " + std::to_string(m[r]) + " matched twice");
    col_used[m[r]] = true;
    require(std::binary_search(support[r].begin(), support[r].end(), m[r]),
            Errc::not_perfect_matching,
            "pair (" + std::to_string(r) + "," + std::to_string(m[r]) +
                ") is not an edge");
  }

  // y2 column -> the x matched to it, if any
  std::vector<std::int64_t> x_of_y2(g.b, -1);
  for (std::uint32_t i = 0; i < g.a; ++i) {
    std::uint32_t c = m[g.row_of_x(i)];
    require(c < g.b, Errc::not_perfect_matching,
            "x vertex " + std::to_string(i) + " is not matched into Y2");
    x_of_y2[c] = i;
  }

  P3Scd scd;
  for (std::uint32_t j = 0; j < g.b; ++j) {
    std::uint32_t c = m[g.row_of_y1(j)];
    if (c == g.col_of_y2(j)) {
      scd.singleton_ys.push_back(j);
      continue;
    }
    require(c >= g.b, Errc::not_perfect_matching,
            "y1 vertex " + std::to_string(j) + " matched to a foreign y2");
    std::uint32_t z = c - static_cast<std::uint32_t>(g.b);
    require(x_of_y2[j] >= 0, Errc::not_perfect_matching,
            "y2 copy of " + std::to_string(j) + " left unmatched");
    scd.triples.push_back({static_cast<std::uint32_t>(x_of_y2[j]), j, z});
  }
  scd.canonicalize();
  return scd;
}

Matching scd_to_matching(const WeightedBigraph& g, const P3Scd& scd) {
  std::string why;
  require(validate_p3_scd(g.p3, scd, &why), Errc::invalid_scd,
          "not a symmetric chain decomposition of the gadget poset: " + why);
  Matching m(g.size());
  for (std::uint32_t j = 0; j < g.b; ++j) m[g.row_of_y1(j)] = g.col_of_y2(j);
  for (const auto& [x, y, z] : scd.triples) {
    m[g.row_of_x(x)] = g.col_of_y2(y);
    m[g.row_of_y1(y)] = g.col_of_z(z);
  }
  return m;
}

Rat matching_weight(const WeightedBigraph& g, const Matching& m) {
  std::vector<std::vector<Rat>> w(g.size(),
                                  std::vector<Rat>(g.size(), Rat(0)));
  for (const auto& e : g.edges) w[e.row][e.col] = e.weight;
  Rat prod = 1;
  for (std::size_t r = 0; r < g.size(); ++r) prod *= w[r][m[r]];
  return prod;
}

namespace {

struct MatchingEnumerator {
  const std::vector<std::vector<std::uint32_t>>& adj;
  const std::function<bool(const Matching&)>& cb;
  std::vector<bool> used;
  Matching current;
  bool stopped = false;

  void run(std::size_t row) {
    if (stopped) return;
    if (row == adj.size()) {
      if (!cb(current)) stopped = true;
      return;
    }
    for (std::uint32_t c : adj[row]) {
      if (used[c]) continue;
      used[c] = true;
      current[row] = c;
      run(row + 1);
      used[c] = false;
      if (stopped) return;
    }
  }
};

}  // namespace

void enumerate_perfect_matchings(
    const std::vector<std::vector<std::uint32_t>>& adj,
    const std::function<bool(const Matching&)>& cb) {
  MatchingEnumerator en{adj, cb, std::vector<bool>(adj.size(), false),
                        Matching(adj.size()), false};
  en.run(0);
}

}  // namespace scdkit
