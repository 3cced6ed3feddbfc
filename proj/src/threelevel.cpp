#include "scdkit/threelevel.hpp"

#include <algorithm>

#include "scdkit/error.hpp"

namespace scdkit {

namespace {

std::vector<std::vector<std::uint32_t>> transpose(
    const std::vector<std::vector<std::uint32_t>>& adj, std::size_t cols) {
  std::vector<std::vector<std::uint32_t>> out(cols);
  for (std::size_t i = 0; i < adj.size(); ++i)
    for (std::uint32_t j : adj[i]) out[j].push_back(static_cast<std::uint32_t>(i));
  return out;
}

}  // namespace

std::vector<std::vector<std::uint32_t>> ThreeLevelPoset::yx() const {
  return transpose(xy, b);
}

std::vector<std::vector<std::uint32_t>> ThreeLevelPoset::zy() const {
  return transpose(yz, a);
}

void ThreeLevelPoset::check_structure() const {
  require(a >= 1 && b >= 1, Errc::invalid_parameter, "empty level");
  require(xy.size() == a && yz.size() == b, Errc::invalid_parameter,
          "adjacency size does not match level sizes");
  for (const auto& row : xy) {
    for (auto y : row)
      require(y < b, Errc::out_of_range, "xy adjacency index out of range");
    require(std::is_sorted(row.begin(), row.end()), Errc::invalid_parameter,
            "xy adjacency not sorted");
  }
  for (const auto& row : yz) {
    for (auto z : row)
      require(z < a, Errc::out_of_range, "yz adjacency index out of range");
    require(std::is_sorted(row.begin(), row.end()), Errc::invalid_parameter,
            "yz adjacency not sorted");
  }
}

void ThreeLevelPoset::check() const {
  check_structure();
  bool any_xy = false, any_yz = false;
  for (const auto& row : xy) any_xy |= !row.empty();
  for (const auto& row : yz) any_yz |= !row.empty();
  require(any_xy && any_yz, Errc::invalid_parameter,
          "a comparability bigraph is empty");
}

ThreeLevelPoset slice(const GradedPoset& poset, int x_level) {
  require(x_level >= 0 && x_level + 2 < poset.num_levels(), Errc::out_of_range,
          "slice at level " + std::to_string(x_level) + " out of range");
  const auto& X = poset.level(x_level);
  const auto& Y = poset.level(x_level + 1);
  const auto& Z = poset.level(x_level + 2);
  require(X.size() == Z.size(), Errc::invalid_parameter,
          "slice levels " + std::to_string(x_level) + ".." +
              std::to_string(x_level + 2) + " are not rank-symmetric (" +
              std::to_string(X.size()) + " vs " + std::to_string(Z.size()) +
              ")");
  require(X.size() < Y.size(), Errc::invalid_parameter,
          "slice middle level is not the largest");

  ThreeLevelPoset p3;
  p3.a = X.size();
  p3.b = Y.size();
  p3.x_code = X;
  p3.z_code = Z;
  p3.y_code.reserve(Y.size());
  for (ElemCode y : Y) p3.y_code.emplace_back(y, y);

  auto lower = poset.level_bigraph(x_level);
  auto upper = poset.level_bigraph(x_level + 1);
  p3.xy = std::move(lower.adj);
  p3.yz = std::move(upper.adj);
  p3.check();
  return p3;
}

RegularityCheck check_regular(const ThreeLevelPoset& p3) {
  RegularityCheck rc;
  auto degree_mismatch = [&](const char* part, std::size_t idx,
                             std::size_t got, std::size_t want) {
    rc.why = std::string(part) + " vertex " + std::to_string(idx) +
             " has degree " + std::to_string(got) + ", expected " +
             std::to_string(want);
  };

  std::size_t r = p3.xy.empty() ? 0 : p3.xy[0].size();
  for (std::size_t i = 0; i < p3.a; ++i)
    if (p3.xy[i].size() != r) {
      degree_mismatch("X", i, p3.xy[i].size(), r);
      return rc;
    }
  auto zy = p3.zy();
  for (std::size_t i = 0; i < p3.a; ++i)
    if (zy[i].size() != r) {
      degree_mismatch("Z", i, zy[i].size(), r);
      return rc;
    }
  if (r == 0 || (r * p3.a) % p3.b != 0) {
    rc.why = "X degree " + std::to_string(r) + " with |X|=" +
             std::to_string(p3.a) + ", |Y|=" + std::to_string(p3.b) +
             " admits no bi-regular middle";
    return rc;
  }
  std::size_t q = r * p3.a / p3.b;
  auto yx = p3.yx();
  for (std::size_t j = 0; j < p3.b; ++j) {
    if (yx[j].size() != q) {
      degree_mismatch("Y(down)", j, yx[j].size(), q);
      return rc;
    }
    if (p3.yz[j].size() != q) {
      degree_mismatch("Y(up)", j, p3.yz[j].size(), q);
      return rc;
    }
  }
  rc.regular = true;
  rc.r = static_cast<std::uint32_t>(r);
  return rc;
}

void P3Scd::canonicalize() {
  std::sort(triples.begin(), triples.end());
  std::sort(singleton_ys.begin(), singleton_ys.end());
}

bool validate_p3_scd(const ThreeLevelPoset& p3, const P3Scd& scd,
                     std::string* why) {
  auto reject = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (scd.triples.size() != p3.a)
    return reject("expected " + std::to_string(p3.a) + " triples, got " +
                  std::to_string(scd.triples.size()));
  if (scd.triples.size() + scd.singleton_ys.size() != p3.b)
    return reject("triples plus singletons do not cover the middle level");

  std::vector<bool> used_x(p3.a, false), used_y(p3.b, false),
      used_z(p3.a, false);
  for (const auto& [x, y, z] : scd.triples) {
    if (x >= p3.a || y >= p3.b || z >= p3.a) return reject("index out of range");
    if (used_x[x] || used_y[y] || used_z[z])
      return reject("element reused across chains");
    used_x[x] = used_y[y] = used_z[z] = true;
    if (!std::binary_search(p3.xy[x].begin(), p3.xy[x].end(), y))
      return reject("triple uses a missing x-y edge");
    if (!std::binary_search(p3.yz[y].begin(), p3.yz[y].end(), z))
      return reject("triple uses a missing y-z edge");
  }
  for (auto y : scd.singleton_ys) {
    if (y >= p3.b) return reject("singleton index out of range");
    if (used_y[y]) return reject("element reused across chains");
    used_y[y] = true;
  }
  return true;
}

namespace {

struct P3Enumerator {
  const ThreeLevelPoset& p3;
  const std::function<bool(const P3Scd&)>& cb;
  std::vector<bool> used_y, used_z;
  P3Scd current;
  bool stopped = false;

  P3Enumerator(const ThreeLevelPoset& p, const std::function<bool(const P3Scd&)>& c)
      : p3(p), cb(c), used_y(p.b, false), used_z(p.a, false) {}

  void run(std::uint32_t x) {
    if (stopped) return;
    if (x == p3.a) {
      current.singleton_ys.clear();
      for (std::uint32_t y = 0; y < p3.b; ++y)
        if (!used_y[y]) current.singleton_ys.push_back(y);
      if (!cb(current)) stopped = true;
      return;
    }
    for (std::uint32_t y : p3.xy[x]) {
      if (used_y[y]) continue;
      used_y[y] = true;
      for (std::uint32_t z : p3.yz[y]) {
        if (used_z[z]) continue;
        used_z[z] = true;
        current.triples.push_back({x, y, z});
        run(x + 1);
        current.triples.pop_back();
        used_z[z] = false;
        if (stopped) break;
      }
      used_y[y] = false;
      if (stopped) break;
    }
  }
};

}  // namespace

void enumerate_p3_scds(const ThreeLevelPoset& p3,
                       const std::function<bool(const P3Scd&)>& cb) {
  P3Enumerator en(p3, cb);
  en.run(0);
}

Bint count_p3_scds_backtracking(const ThreeLevelPoset& p3) {
  Bint count = 0;
  enumerate_p3_scds(p3, [&](const P3Scd&) {
    ++count;
    return true;
  });
  return count;
}

}  // namespace scdkit
