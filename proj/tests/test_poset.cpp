#include <doctest.h>

#include <map>
#include <numeric>

#include "scdkit/error.hpp"
#include "scdkit/poset.hpp"

using namespace scdkit;

TEST_SUITE_BEGIN("poset");

TEST_CASE("boolean lattice n=4") {
  auto p = GradedPoset::boolean_lattice(4);
  CHECK(p.num_levels() == 5);
  CHECK(p.total_rank() == 4);
  CHECK(p.size() == 16);
  std::vector<std::size_t> sizes;
  for (int i = 0; i < p.num_levels(); ++i) sizes.push_back(p.level(i).size());
  CHECK(sizes == std::vector<std::size_t>{1, 4, 6, 4, 1});
  CHECK(p.rank_of(0b1011) == 3);
  CHECK(p.describe(0b101) == "{1,3}");
}

TEST_CASE("hypergrid t=3 n=2") {
  auto p = GradedPoset::hypergrid(3, 2);
  CHECK(p.num_levels() == 5);
  CHECK(p.size() == 9);
  std::vector<std::size_t> sizes;
  for (int i = 0; i < p.num_levels(); ++i) sizes.push_back(p.level(i).size());
  CHECK(sizes == std::vector<std::size_t>{1, 2, 3, 2, 1});
  // (2,3) has code (2-1)*3 + (3-1) = 5, rank 3
  CHECK(p.rank_of(5) == 3);
  CHECK(p.decode(5) == std::vector<int>{2, 3});
  CHECK(p.describe(5) == "(2,3)");
}

TEST_CASE("hypergrid t=3 n=3 level sizes by full enumeration") {
  auto p = GradedPoset::hypergrid(3, 3);
  // independent histogram over all 27 triples
  std::map<int, int> hist;
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      for (int c = 1; c <= 3; ++c) hist[a + b + c - 3]++;
  for (int i = 0; i < p.num_levels(); ++i)
    CHECK(p.level(i).size() == static_cast<std::size_t>(hist[i]));
  std::vector<std::size_t> sizes;
  for (int i = 0; i < p.num_levels(); ++i) sizes.push_back(p.level(i).size());
  CHECK(sizes == std::vector<std::size_t>{1, 3, 6, 7, 6, 3, 1});
}

TEST_CASE("levels are sorted and cover steps raise rank by one") {
  for (auto [t, n] : {std::pair{2, 5}, {3, 3}, {4, 2}}) {
    auto p = GradedPoset::build(
        t == 2 ? PosetKind::boolean_lattice : PosetKind::hypergrid, t, n);
    std::uint64_t total = 0;
    for (int i = 0; i < p.num_levels(); ++i) {
      const auto& lv = p.level(i);
      total += lv.size();
      CHECK(std::is_sorted(lv.begin(), lv.end()));
      for (ElemCode e : lv) {
        CHECK(p.rank_of(e) == i);
        for (ElemCode up : p.covers_up(e)) {
          CHECK(p.rank_of(up) == i + 1);
          CHECK(p.covers(e, up));
        }
        for (ElemCode dn : p.covers_down(e)) {
          CHECK(p.rank_of(dn) == i - 1);
          CHECK(p.covers(dn, e));
        }
      }
    }
    CHECK(total == p.size());
    // rank symmetry
    for (int i = 0; i < p.num_levels(); ++i)
      CHECK(p.level(i).size() == p.level(p.total_rank() - i).size());
  }
}

TEST_CASE("level_sizes small cases") {
  CHECK(level_sizes(2, 5) ==
        std::vector<Bint>{1, 5, 10, 10, 5, 1});
  CHECK(level_sizes(3, 2) == std::vector<Bint>{1, 2, 3, 2, 1});
  auto s43 = level_sizes(4, 3);
  CHECK(s43.size() == 10);
  Bint total = 0;
  for (const auto& v : s43) total += v;
  CHECK(total == 64);
}

TEST_CASE("level_sizes equals enumeration histogram for t^n <= 1e5") {
  for (int t = 2; t <= 8; ++t) {
    for (int n = 1;; ++n) {
      double size = std::pow(static_cast<double>(t), n);
      if (size > 1e5) break;
      auto sizes = level_sizes(t, n);
      CHECK(static_cast<int>(sizes.size()) == n * (t - 1) + 1);
      // symmetric
      for (std::size_t i = 0; i < sizes.size(); ++i)
        CHECK(sizes[i] == sizes[sizes.size() - 1 - i]);
      auto p = GradedPoset::hypergrid(t, n);
      for (int i = 0; i < p.num_levels(); ++i)
        CHECK(sizes[i] == p.level(i).size());
    }
  }
}

TEST_CASE("boolean level sizes are binomials") {
  auto sizes = level_sizes(2, 40);
  for (int k = 0; k <= 40; ++k) CHECK(sizes[k] == binomial(40, k));
}

TEST_CASE("level_bigraph boolean n=4 pair 1") {
  auto p = GradedPoset::boolean_lattice(4);
  auto g = p.level_bigraph(1);
  CHECK(g.lower_size == 4);
  CHECK(g.upper_size == 6);
  for (auto d : g.lower_deg) CHECK(d == 3);
  for (auto d : g.upper_deg) CHECK(d == 2);
}

TEST_CASE("level_bigraph boolean n=2 pair 0") {
  auto p = GradedPoset::boolean_lattice(2);
  auto g = p.level_bigraph(0);
  CHECK(g.lower_size == 1);
  CHECK(g.upper_size == 2);
  CHECK(g.lower_deg[0] == 2);
}

TEST_CASE("level_bigraph hypergrid t=3 n=2 pair 1") {
  auto p = GradedPoset::hypergrid(3, 2);
  auto g = p.level_bigraph(1);
  CHECK(g.lower_size == 2);
  CHECK(g.upper_size == 3);
  CHECK(g.lower_deg == std::vector<std::uint32_t>{2, 2});
  CHECK(g.upper_deg == std::vector<std::uint32_t>{1, 2, 1});
}

TEST_CASE("parameter and budget errors") {
  CHECK_THROWS_AS(GradedPoset::hypergrid(1, 3), ScdError);
  CHECK_THROWS_AS(GradedPoset::hypergrid(3, 0), ScdError);
  CHECK_THROWS_AS(GradedPoset::boolean_lattice(30, 1000), ScdError);
  CHECK_THROWS_AS(level_sizes(1, 5), ScdError);
  auto p = GradedPoset::boolean_lattice(3);
  CHECK_THROWS_AS(p.level(7), ScdError);
  CHECK_THROWS_AS(p.level_bigraph(2), ScdError);
  CHECK_THROWS_AS(GradedPoset::build(PosetKind::boolean_lattice, 3, 4),
                  ScdError);
}

TEST_SUITE_END();
