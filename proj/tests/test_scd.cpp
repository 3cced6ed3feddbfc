#include <doctest.h>

#include "scdkit/construct.hpp"
#include "scdkit/json_io.hpp"
#include "scdkit/scd.hpp"

using namespace scdkit;

TEST_SUITE_BEGIN("scd");

TEST_CASE("valid decomposition of 2^[2]") {
  auto p = GradedPoset::boolean_lattice(2);
  Scd scd;
  scd.chains = {{0b00, 0b01, 0b11}, {0b10}};
  auto report = validate_scd(p, scd);
  CHECK(report.ok);
  CHECK(scd.chains.size() == 2);  // C(2,1)
}

TEST_CASE("non-symmetric chains are reported") {
  auto p = GradedPoset::boolean_lattice(2);
  Scd scd;
  scd.chains = {{0b00, 0b01}, {0b10, 0b11}};
  auto report = validate_scd(p, scd);
  CHECK(!report.ok);
  int symmetric_violations = 0;
  for (const auto& v : report.violations)
    if (v.condition == "not-symmetric") ++symmetric_violations;
  CHECK(symmetric_violations == 2);
}

TEST_CASE("foreign elements raise, other defects accumulate") {
  auto p = GradedPoset::boolean_lattice(2);
  Scd foreign;
  foreign.chains = {{0b00, 0b01, 0b11}, {0b100}};
  CHECK_THROWS_AS(validate_scd(p, foreign), ScdError);

  Scd broken;
  broken.chains = {{0b00, 0b11}, {0b10}, {0b10}};  // skip + dup + missing
  auto report = validate_scd(p, broken);
  CHECK(!report.ok);
  std::set<std::string> kinds;
  for (const auto& v : report.violations) kinds.insert(v.condition);
  CHECK(kinds.count("not-a-cover-step"));
  CHECK(kinds.count("duplicate-element"));
  CHECK(kinds.count("not-a-partition"));
  CHECK(kinds.count("chain-count"));
}

TEST_CASE("chain_profile") {
  auto p2 = GradedPoset::boolean_lattice(2);
  Scd s2;
  s2.chains = {{0b00, 0b01, 0b11}, {0b10}};
  auto prof2 = chain_profile(s2);
  CHECK(prof2 == std::map<std::size_t, std::uint64_t>{{3, 1}, {1, 1}});

  auto s4 = gk_decomposition(4);
  REQUIRE(validate_scd(GradedPoset::boolean_lattice(4), s4).ok);
  auto prof4 = chain_profile(s4);
  CHECK(prof4 == std::map<std::size_t, std::uint64_t>{{5, 1}, {3, 3}, {1, 2}});

  auto s32 = btk_decomposition(3, 2);
  REQUIRE(validate_scd(GradedPoset::hypergrid(3, 2), s32).ok);
  auto prof32 = chain_profile(s32);
  CHECK(prof32 ==
        std::map<std::size_t, std::uint64_t>{{5, 1}, {3, 1}, {1, 1}});
}

TEST_CASE("gk n=3 validates with C(3,1) chains") {
  auto p = GradedPoset::boolean_lattice(3);
  auto scd = gk_decomposition(3);
  CHECK(validate_scd(p, scd).ok);
  CHECK(scd.chains.size() == 3);
}

TEST_CASE("json round trip is exact") {
  auto p = GradedPoset::hypergrid(3, 2);
  auto scd = btk_decomposition(3, 2);
  Json j = scd_to_json(p, scd);
  auto [p2, scd2] = scd_from_json(j);
  CHECK(p2.descriptor() == p.descriptor());
  CHECK(scd2 == scd);
  CHECK(scd_to_json(p2, scd2).dump() == j.dump());

  auto pb = GradedPoset::boolean_lattice(3);
  auto scdb = gk_decomposition(3);
  Json jb = scd_to_json(pb, scdb);
  auto [pb2, scdb2] = scd_from_json(jb);
  CHECK(scdb2 == scdb);
  CHECK(scd_to_json(pb2, scdb2).dump() == jb.dump());
}

TEST_SUITE_END();
