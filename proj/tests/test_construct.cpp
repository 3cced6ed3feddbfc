#include <doctest.h>

#include "scdkit/construct.hpp"
#include "scdkit/json_io.hpp"

using namespace scdkit;

TEST_SUITE_BEGIN("construct");

TEST_CASE("gk n=1 and n=2 exact chains") {
  auto s1 = gk_decomposition(1);
  CHECK(s1.chains == std::vector<std::vector<ElemCode>>{{0b0, 0b1}});

  // frozen bracket convention
  auto s2 = gk_decomposition(2);
  CHECK(s2.chains ==
        std::vector<std::vector<ElemCode>>{{0b00, 0b10, 0b11}, {0b01}});
}

TEST_CASE("gk validates for n = 1..14") {
  for (int n = 1; n <= 14; ++n) {
    auto p = GradedPoset::boolean_lattice(n);
    auto scd = gk_decomposition(n);
    auto report = validate_scd(p, scd);
    CHECK_MESSAGE(report.ok, "n=", n, ": ", report.summary());
    CHECK(scd.chains.size() == binomial(n, n / 2));
  }
}

TEST_CASE("gk n=12 has C(12,6)=924 chains") {
  CHECK(gk_decomposition(12).chains.size() == 924);
}

TEST_CASE("btk single-coordinate chains") {
  auto s21 = btk_decomposition(2, 1);
  CHECK(s21.chains == std::vector<std::vector<ElemCode>>{{0, 1}});
  auto s31 = btk_decomposition(3, 1);
  CHECK(s31.chains == std::vector<std::vector<ElemCode>>{{0, 1, 2}});
}

TEST_CASE("btk t=3 n=2 shape") {
  auto p = GradedPoset::hypergrid(3, 2);
  auto scd = btk_decomposition(3, 2);
  CHECK(validate_scd(p, scd).ok);
  CHECK(scd.chains.size() == 3);
  auto prof = chain_profile(scd);
  CHECK(prof == std::map<std::size_t, std::uint64_t>{{5, 1}, {3, 1}, {1, 1}});
}

TEST_CASE("btk validates across the budget sweep") {
  for (int t = 2; t <= 6; ++t) {
    for (int n = 1;; ++n) {
      double size = std::pow(static_cast<double>(t), n);
      if (size > 2e5) break;  // full 1e6 sweep lives in the long suite
      auto p = GradedPoset::hypergrid(t, n);
      auto scd = btk_decomposition(t, n);
      auto report = validate_scd(p, scd);
      CHECK_MESSAGE(report.ok, "t=", t, " n=", n, ": ", report.summary());
      std::size_t middle = 0;
      for (int i = 0; i < p.num_levels(); ++i)
        middle = std::max(middle, p.level(i).size());
      CHECK(scd.chains.size() == middle);
    }
  }
}

TEST_CASE("btk validates up to 10^6 elements" *
          doctest::skip(std::getenv("SCDKIT_LONG_TESTS") == nullptr)) {
  for (int t = 2; t <= 6; ++t) {
    for (int n = 1;; ++n) {
      double size = std::pow(static_cast<double>(t), n);
      if (size > 1e6) break;
      auto p = GradedPoset::hypergrid(t, n);
      auto scd = btk_decomposition(t, n);
      CHECK(validate_scd(p, scd).ok);
    }
  }
}

TEST_CASE("btk(2,n) and gk(n) have identical profiles") {
  for (int n = 1; n <= 14; ++n) {
    auto a = chain_profile(gk_decomposition(n));
    auto b = chain_profile(btk_decomposition(2, n));
    CHECK(a == b);
  }
}

TEST_CASE("construction is deterministic byte for byte") {
  auto p = GradedPoset::boolean_lattice(6);
  CHECK(scd_to_json(p, gk_decomposition(6)).dump() ==
        scd_to_json(p, gk_decomposition(6)).dump());
  auto h = GradedPoset::hypergrid(3, 4);
  CHECK(scd_to_json(h, btk_decomposition(3, 4)).dump() ==
        scd_to_json(h, btk_decomposition(3, 4)).dump());
}

TEST_CASE("budget errors") {
  CHECK_THROWS_AS(gk_decomposition(26, 1000), ScdError);
  CHECK_THROWS_AS(btk_decomposition(3, 20, 1000), ScdError);
}

TEST_SUITE_END();
