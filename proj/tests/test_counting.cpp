#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>

#include "scdkit/bounds.hpp"
#include "scdkit/counting.hpp"
#include "scdkit/json_io.hpp"

using namespace scdkit;

TEST_SUITE_BEGIN("counting");

TEST_CASE("oracle on the small boolean lattices") {
  CHECK(count_scd_oracle(GradedPoset::boolean_lattice(1)) == 1);
  CHECK(count_scd_oracle(GradedPoset::boolean_lattice(2)) == 2);
  CHECK(count_scd_oracle(GradedPoset::boolean_lattice(3)) == 6);
  CHECK(count_scd_oracle(GradedPoset::boolean_lattice(4)) == 240);
}

TEST_CASE("oracle on small hypergrids") {
  CHECK(count_scd_oracle(GradedPoset::hypergrid(3, 2)) == 6);
  CHECK(count_scd_oracle(GradedPoset::hypergrid(4, 2)) == 24);
  CHECK(count_scd_oracle(GradedPoset::hypergrid(3, 3),
                         OracleOptions{.max_elements = 27}) == 2934);
}

TEST_CASE("layered equals the oracle everywhere both run") {
  for (auto [t, n] : {std::pair{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3},
                      {4, 2}, {5, 2}}) {
    auto p = GradedPoset::hypergrid(t, n);
    CAPTURE(t);
    CAPTURE(n);
    CHECK(count_scd_layered(p) == count_scd_oracle(p));
  }
  // the bitmask representation counts the same as [2]^n
  auto b4 = GradedPoset::boolean_lattice(4);
  CHECK(count_scd_layered(b4) == 240);
}

TEST_CASE("boolean n=5 by both methods") {
  auto p = GradedPoset::boolean_lattice(5);
  Bint layered = count_scd_layered(p);
  CHECK(layered == 235200);
  CHECK(count_scd_oracle(p) == layered);
}

TEST_CASE("three-level count: slice routes agree") {
  auto p2 = GradedPoset::boolean_lattice(2);
  CHECK(count_scd_threelevel(slice(p2, 0)) == 2);

  auto p4 = GradedPoset::boolean_lattice(4);
  auto p3 = slice(p4, 1);
  Bint count = count_scd_threelevel(p3);
  CHECK(count == count_p3_scds_backtracking(p3));
  // within the regular three-level bounds for (a, b, r) = (4, 6, 3)
  auto bounds = lemma3_bounds(4, 6, 3);
  double logc = log_bint(count);
  CHECK(logc >= bounds.log_lower);
  CHECK(logc <= bounds.log_upper);
}

TEST_CASE("empty lower bigraph means no decomposition") {
  ThreeLevelPoset p3;
  p3.a = 1;
  p3.b = 2;
  p3.xy = {{}};
  p3.yz = {{0}, {0}};
  p3.x_code = {0};
  p3.z_code = {0};
  p3.y_code = {{0, 0}, {1, 1}};
  CHECK(count_scd_threelevel(p3) == 0);
  CHECK(count_p3_scds_backtracking(p3) == 0);
  p3.xy = {{0}};  // x < y0 only: the one decomposition is {x,y0,z} + {y1}
  CHECK(count_scd_threelevel(p3) == 1);
  CHECK(count_p3_scds_backtracking(p3) == 1);
}

TEST_CASE("glued posets of 2^[n] are regular with degree m+s") {
  // total rank 2m even: layer s joins L_{m-s} .. L_{m+s}
  auto p = GradedPoset::boolean_lattice(4);
  LayeredOptions opt;
  std::map<int, std::uint32_t> seen_r;
  opt.on_state = [&](int layer, const Sigma&, const ThreeLevelPoset& p3) {
    auto rc = check_regular(p3);
    REQUIRE_MESSAGE(rc.regular, rc.why);
    if (seen_r.count(layer))
      CHECK(seen_r[layer] == rc.r);
    else
      seen_r[layer] = rc.r;
  };
  count_scd_layered(p, opt);
  CHECK(seen_r == std::map<int, std::uint32_t>{{1, 3}, {2, 4}});
}

TEST_CASE("exploration order does not change the count") {
  for (auto [t, n] : {std::pair{2, 4}, {3, 3}}) {
    auto p = GradedPoset::hypergrid(t, n);
    LayeredOptions fwd, rev;
    rev.explore_reversed = true;
    CHECK(count_scd_layered(p, fwd) == count_scd_layered(p, rev));
  }
}

TEST_CASE("worker count does not change the count") {
  auto p = GradedPoset::boolean_lattice(5);
  LayeredOptions one, eight;
  one.threads = 1;
  eight.threads = 8;
  CHECK(count_scd_layered(p, one) == count_scd_layered(p, eight));
}

TEST_CASE("layer cache: store, reload, survive corruption") {
  auto dir = std::filesystem::temp_directory_path() /
             ("scdkit-test-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  auto p = GradedPoset::boolean_lattice(4);
  LayeredOptions opt;
  opt.cache_dir = dir;
  Bint first = count_scd_layered(p, opt);
  CHECK(first == 240);
  std::size_t files = 0;
  for (auto& e : std::filesystem::directory_iterator(dir)) {
    ++files;
    (void)e;
  }
  CHECK(files == 2);  // one table per layer
  CHECK(count_scd_layered(p, opt) == first);  // warm reload

  // corrupt every cache file; counting must fall back and still be right
  for (auto& e : std::filesystem::directory_iterator(dir)) {
    std::ofstream os(e.path(), std::ios::binary | std::ios::trunc);
    os << "garbage";
  }
  CHECK(count_scd_layered(p, opt) == first);
  std::filesystem::remove_all(dir);
}

TEST_CASE("budget guards") {
  auto p = GradedPoset::boolean_lattice(8);
  CHECK_THROWS_AS(count_scd_oracle(p), ScdError);
  LayeredOptions opt;
  CHECK_THROWS_AS(count_scd_layered(p, opt), ScdError);  // middle level 70
  LayeredOptions tiny;
  tiny.state_cap = 1;
  CHECK_THROWS_AS(count_scd_layered(GradedPoset::boolean_lattice(4), tiny),
                  ScdError);
}

TEST_CASE("chain posets have exactly one decomposition") {
  auto p = GradedPoset::hypergrid(5, 1);
  CHECK(count_scd_layered(p) == 1);
  CHECK(count_scd_oracle(p) == 1);
  auto scd = sample_scd_uniform(p, 1);
  CHECK(validate_scd(p, scd).ok);
}

TEST_CASE("samples are valid and reproducible") {
  for (auto [t, n] : {std::pair{2, 4}, {3, 2}, {3, 3}}) {
    auto p = GradedPoset::hypergrid(t, n);
    auto a = sample_scd_uniform(p, 12345);
    auto b = sample_scd_uniform(p, 12345);
    CHECK(a == b);
    CHECK(validate_scd(p, a).ok);
    CHECK(sample_scd_uniform(p, 999) != a);  // overwhelmingly likely distinct
  }
}

TEST_CASE("sampler hits every decomposition of 2^[3]") {
  auto p = GradedPoset::boolean_lattice(3);
  ScdSampler sampler(p);
  CHECK(sampler.total_count() == 6);
  std::mt19937_64 rng(424242);
  std::map<std::string, int> freq;
  for (int i = 0; i < 600; ++i) {
    Scd scd = sampler.draw(rng);
    REQUIRE(validate_scd(p, scd).ok);
    freq[scd_to_json(p, scd).dump()]++;
  }
  CHECK(freq.size() == 6);
  for (const auto& [key, count] : freq) CHECK(count > 50);
}

TEST_SUITE_END();
