#include "scdkit/poset.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace scdkit {

namespace {

// t^n if it stays within budget, otherwise 0
std::uint64_t pow_checked(int t, int n, std::uint64_t budget) {
  std::uint64_t v = 1;
  for (int i = 0; i < n; ++i) {
    if (v > budget / static_cast<std::uint64_t>(t)) return 0;
    v *= static_cast<std::uint64_t>(t);
  }
  return v;
}

void check_params(int t, int n) {
  require(t >= 2, Errc::invalid_parameter,
          "t must be at least 2, got " + std::to_string(t));
  require(n >= 1, Errc::invalid_parameter,
          "n must be at least 1, got " + std::to_string(n));
}

}  // namespace

std::size_t LevelBigraph::edge_count() const {
  std::size_t e = 0;
  for (const auto& row : adj) e += row.size();
  return e;
}

GradedPoset GradedPoset::boolean_lattice(int n, std::uint64_t budget) {
  check_params(2, n);
  require(n <= 62, Errc::budget_exceeded,
          "boolean lattice with n=" + std::to_string(n) +
              " does not fit the element encoding");
  std::uint64_t sz = pow_checked(2, n, budget);
  require(sz != 0, Errc::budget_exceeded,
          "2^" + std::to_string(n) + " exceeds the element budget of " +
              std::to_string(budget));

  GradedPoset p;
  p.kind_ = PosetKind::boolean_lattice;
  p.t_ = 2;
  p.n_ = n;
  p.size_ = sz;
  p.levels_.assign(n + 1, {});
  for (std::uint64_t mask = 0; mask < sz; ++mask)
    p.levels_[std::popcount(mask)].push_back(mask);
  // masks are generated in increasing order, so levels are already sorted
  return p;
}

GradedPoset GradedPoset::hypergrid(int t, int n, std::uint64_t budget) {
  check_params(t, n);
  std::uint64_t sz = pow_checked(t, n, budget);
  require(sz != 0, Errc::budget_exceeded,
          std::to_string(t) + "^" + std::to_string(n) +
              " exceeds the element budget of " + std::to_string(budget));

  GradedPoset p;
  p.kind_ = PosetKind::hypergrid;
  p.t_ = t;
  p.n_ = n;
  p.size_ = sz;
  p.levels_.assign(n * (t - 1) + 1, {});
  for (std::uint64_t code = 0; code < sz; ++code) {
    int rank = 0;
    std::uint64_t v = code;
    for (int i = 0; i < n; ++i) {
      rank += static_cast<int>(v % t);
      v /= t;
    }
    p.levels_[rank].push_back(code);
  }
  return p;
}

GradedPoset GradedPoset::build(PosetKind kind, int t, int n,
                               std::uint64_t budget) {
  if (kind == PosetKind::boolean_lattice) {
    require(t == 2, Errc::invalid_parameter,
            "boolean lattice requires t=2, got t=" + std::to_string(t));
    return boolean_lattice(n, budget);
  }
  return hypergrid(t, n, budget);
}

const std::vector<ElemCode>& GradedPoset::level(int i) const {
  require(i >= 0 && i < num_levels(), Errc::out_of_range,
          "level index " + std::to_string(i) + " out of range [0, " +
              std::to_string(num_levels()) + ")");
  return levels_[i];
}

int GradedPoset::rank_of(ElemCode code) const {
  if (kind_ == PosetKind::boolean_lattice)
    return std::popcount(static_cast<std::uint64_t>(code));
  int rank = 0;
  for (int i = 0; i < n_; ++i) {
    rank += static_cast<int>(code % t_);
    code /= t_;
  }
  return rank;
}

bool GradedPoset::contains(ElemCode code) const { return code < size_; }

std::uint32_t GradedPoset::index_in_level(ElemCode code) const {
  const auto& lv = levels_[rank_of(code)];
  auto it = std::lower_bound(lv.begin(), lv.end(), code);
  require(it != lv.end() && *it == code, Errc::foreign_element,
          "element " + describe(code) + " not present in the poset");
  return static_cast<std::uint32_t>(it - lv.begin());
}

std::vector<ElemCode> GradedPoset::covers_up(ElemCode code) const {
  std::vector<ElemCode> out;
  if (kind_ == PosetKind::boolean_lattice) {
    for (int i = 0; i < n_; ++i) {
      ElemCode bit = ElemCode{1} << i;
      if (!(code & bit)) out.push_back(code | bit);
    }
  } else {
    // incrementing coordinate x_i adds t^(n-i); iterate the smallest place
    // first so codes come out ascending
    std::uint64_t place = 1;
    std::uint64_t v = code;
    for (int i = 0; i < n_; ++i) {
      if (v % t_ < static_cast<std::uint64_t>(t_ - 1))
        out.push_back(code + place);
      v /= t_;
      place *= t_;
    }
  }
  return out;
}

std::vector<ElemCode> GradedPoset::covers_down(ElemCode code) const {
  std::vector<ElemCode> out;
  if (kind_ == PosetKind::boolean_lattice) {
    for (int i = 0; i < n_; ++i) {
      ElemCode bit = ElemCode{1} << i;
      if (code & bit) out.push_back(code & ~bit);
    }
    std::sort(out.begin(), out.end());
  } else {
    std::uint64_t place = 1;
    std::uint64_t v = code;
    for (int i = 0; i < n_; ++i) {
      if (v % t_ > 0) out.push_back(code - place);
      v /= t_;
      place *= t_;
    }
    std::reverse(out.begin(), out.end());
  }
  return out;
}

bool GradedPoset::covers(ElemCode lo, ElemCode hi) const {
  if (kind_ == PosetKind::boolean_lattice) {
    std::uint64_t diff = hi ^ lo;
    return (lo & hi) == lo && std::popcount(diff) == 1 && (hi & diff);
  }
  if (hi <= lo) return false;
  std::uint64_t diff = hi - lo;
  // must be a single coordinate bump: diff == t^k and no carry across digits
  std::uint64_t place = 1;
  std::uint64_t v = lo;
  for (int i = 0; i < n_; ++i) {
    if (diff == place)
      return v % t_ < static_cast<std::uint64_t>(t_ - 1);
    v /= t_;
    place *= t_;
  }
  return false;
}

LevelBigraph GradedPoset::level_bigraph(int i, std::size_t max_edges) const {
  require(i >= 0 && i + 1 < num_levels(), Errc::out_of_range,
          "level pair index " + std::to_string(i) + " out of range [0, " +
              std::to_string(num_levels() - 1) + ")");
  const auto& lower = levels_[i];
  const auto& upper = levels_[i + 1];

  LevelBigraph g;
  g.lower_level = i;
  g.lower_size = lower.size();
  g.upper_size = upper.size();
  g.adj.resize(lower.size());
  g.lower_deg.assign(lower.size(), 0);
  g.upper_deg.assign(upper.size(), 0);

  std::size_t edges = 0;
  for (std::size_t x = 0; x < lower.size(); ++x) {
    for (ElemCode up : covers_up(lower[x])) {
      auto it = std::lower_bound(upper.begin(), upper.end(), up);
      auto y = static_cast<std::uint32_t>(it - upper.begin());
      g.adj[x].push_back(y);
      g.upper_deg[y]++;
      if (++edges > max_edges)
        fail(Errc::budget_exceeded,
             "level bigraph at pair " + std::to_string(i) + " exceeds " +
                 std::to_string(max_edges) + " edges");
    }
    g.lower_deg[x] = static_cast<std::uint32_t>(g.adj[x].size());
  }
  return g;
}

std::vector<int> GradedPoset::decode(ElemCode code) const {
  std::vector<int> out;
  if (kind_ == PosetKind::boolean_lattice) {
    for (int i = 0; i < n_; ++i)
      if (code & (ElemCode{1} << i)) out.push_back(i + 1);
  } else {
    out.resize(n_);
    for (int i = n_ - 1; i >= 0; --i) {
      out[i] = static_cast<int>(code % t_) + 1;
      code /= t_;
    }
  }
  return out;
}

std::string GradedPoset::describe(ElemCode code) const {
  std::ostringstream os;
  auto v = decode(code);
  if (kind_ == PosetKind::boolean_lattice) {
    os << "{";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "}";
  } else {
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
  }
  return os.str();
}

std::string GradedPoset::descriptor() const {
  if (kind_ == PosetKind::boolean_lattice)
    return "boolean:n=" + std::to_string(n_);
  return "hypergrid:t=" + std::to_string(t_) + ":n=" + std::to_string(n_);
}

std::vector<Bint> level_sizes(int t, int n) {
  check_params(t, n);
  if (t == 2) {
    // binomial row
    std::vector<Bint> row(n + 1);
    row[0] = 1;
    for (int k = 0; k < n; ++k) row[k + 1] = row[k] * (n - k) / (k + 1);
    return row;
  }
  std::vector<Bint> cur{1};
  for (int step = 0; step < n; ++step) {
    std::vector<Bint> next(cur.size() + t - 1);
    Bint window = 0;  // sliding sum of the last t entries of cur
    for (std::size_t k = 0; k < next.size(); ++k) {
      if (k < cur.size()) window += cur[k];
      if (k >= static_cast<std::size_t>(t) && k - t < cur.size())
        window -= cur[k - t];
      next[k] = window;
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace scdkit
