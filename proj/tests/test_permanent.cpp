#include <doctest.h>

#include <cmath>
#include <random>

#include "scdkit/permanent.hpp"

using namespace scdkit;

namespace {

std::vector<std::vector<Rat>> rat_identity(std::size_t k) {
  std::vector<std::vector<Rat>> m(k, std::vector<Rat>(k, Rat(0)));
  for (std::size_t i = 0; i < k; ++i) m[i][i] = 1;
  return m;
}

std::vector<std::vector<Rat>> random_matrix(std::mt19937_64& rng, std::size_t k,
                                            bool zero_one) {
  std::vector<std::vector<Rat>> m(k, std::vector<Rat>(k));
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_int_distribution<int> num(0, 6);
  std::uniform_int_distribution<int> den(1, 9);
  for (auto& row : m)
    for (auto& v : row)
      v = zero_one ? Rat(bit(rng)) : Rat(num(rng), den(rng));
  return m;
}

}  // namespace

TEST_SUITE_BEGIN("permanent");

TEST_CASE("identity and constant matrices") {
  CHECK(permanent_ryser(rat_identity(3)) == 1);
  std::vector<std::vector<Rat>> third(3, std::vector<Rat>(3, Rat(1, 3)));
  CHECK(permanent_ryser(third) == Rat(2, 9));  // 3! / 3^3
}

TEST_CASE("complete bipartite and cycle counts") {
  std::vector<std::vector<std::uint32_t>> k33{{0, 1, 2}, {0, 1, 2}, {0, 1, 2}};
  CHECK(count_perfect_matchings(k33, 3) == 6);
  // 6-cycle as a 3+3 bipartite graph
  std::vector<std::vector<std::uint32_t>> c6{{0, 1}, {1, 2}, {0, 2}};
  CHECK(count_perfect_matchings(c6, 3) == 2);
}

TEST_CASE("three routes agree on random matrices up to 9") {
  std::mt19937_64 rng(20240811);
  for (int iter = 0; iter < 60; ++iter) {
    std::size_t k = 1 + static_cast<std::size_t>(rng() % 7);
    auto m = random_matrix(rng, k, iter % 2 == 0);
    Rat a = permanent_ryser(m);
    Rat b = permanent_naive(m);
    Rat c = permanent_subset_dp(m);
    CHECK(a == b);
    CHECK(a == c);
  }
}

TEST_CASE("ryser equals subset dp at size 14") {
  std::mt19937_64 rng(7);
  auto m = random_matrix(rng, 14, true);
  CHECK(permanent_ryser(m) == permanent_subset_dp(m));
}

TEST_CASE("threaded ryser is identical") {
  std::mt19937_64 rng(99);
  auto m = random_matrix(rng, 10, false);
  Rat serial = permanent_ryser(m, 1);
  CHECK(permanent_ryser(m, 4) == serial);
  CHECK(permanent_ryser(m, 8) == serial);
}

TEST_CASE("float mode approximates the exact value") {
  std::mt19937_64 rng(3);
  auto m = random_matrix(rng, 8, false);
  std::vector<std::vector<double>> md(8, std::vector<double>(8));
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) md[i][j] = to_double(m[i][j]);
  double exact = to_double(permanent_ryser(m));
  CHECK(permanent_ryser_float(md) == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("bregman bound values") {
  CHECK(bregman_upper({3, 3, 3}) == doctest::Approx(std::log(6.0)));
  CHECK(bregman_upper({1, 1}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(bregman_upper({2, 0, 1}), ScdError);
  // (d!)^(1/d) is monotone in d
  double prev = 0.0;
  for (std::uint32_t d = 1; d <= 40; ++d) {
    double cur = bregman_upper({d});
    CHECK(cur >= prev);
    prev = cur;
  }
  // K_{3,3}: the bound is tight
  CHECK(std::exp(bregman_upper({3, 3, 3})) == doctest::Approx(6.0));
}

TEST_CASE("guards") {
  std::vector<std::vector<Rat>> rect{{Rat(1), Rat(0)}};
  CHECK_THROWS_AS(permanent_ryser(rect), ScdError);
  std::vector<std::vector<Rat>> big(31, std::vector<Rat>(31, Rat(1)));
  CHECK_THROWS_AS(permanent_ryser(big), ScdError);
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(permanent_naive(random_matrix(rng, 10, true)), ScdError);
  std::vector<std::vector<std::uint32_t>> unbalanced{{0}, {0}};
  CHECK_THROWS_AS(count_perfect_matchings(unbalanced, 3), ScdError);
  // a row with no edges means zero matchings
  std::vector<std::vector<std::uint32_t>> dead{{0, 1}, {}};
  CHECK(count_perfect_matchings(dead, 2) == 0);
}

TEST_SUITE_END();
