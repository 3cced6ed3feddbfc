#include "scdkit/permanent.hpp"

#include <bit>
#include <cmath>
#include <thread>

#include "scdkit/error.hpp"

namespace scdkit {

namespace {

void check_square(std::size_t rows, std::size_t cols) {
  require(rows == cols, Errc::invalid_parameter, "matrix is not square");
  require(rows >= 1, Errc::invalid_parameter, "matrix is empty");
  require(rows <= kPermanentSizeCap, Errc::size_limit,
          "matrix size " + std::to_string(rows) + " exceeds the 2^k cap of " +
              std::to_string(kPermanentSizeCap));
}

// Sum of signed row-sum products over the Gray-code subsets in [lo, hi).
// Subset used at step s is gray(s) = s ^ (s >> 1).
Bint ryser_range(const std::vector<std::vector<Bint>>& m, std::uint64_t lo,
                 std::uint64_t hi) {
  const std::size_t k = m.size();
  std::uint64_t gray = lo ^ (lo >> 1);
  std::vector<Bint> rowsum(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (gray & (std::uint64_t{1} << j)) rowsum[i] += m[i][j];

  Bint acc = 0;
  Bint prod;
  for (std::uint64_t s = lo;;) {
    prod = 1;
    for (std::size_t i = 0; i < k; ++i) prod *= rowsum[i];
    if (std::popcount(gray) & 1)
      acc -= prod;
    else
      acc += prod;
    if (++s >= hi) break;
    std::uint64_t j = std::countr_zero(s);
    std::uint64_t bit = std::uint64_t{1} << j;
    gray ^= bit;
    if (gray & bit)
      for (std::size_t i = 0; i < k; ++i) rowsum[i] += m[i][j];
    else
      for (std::size_t i = 0; i < k; ++i) rowsum[i] -= m[i][j];
  }
  return acc;
}

}  // namespace

Bint permanent_ryser_int(const std::vector<std::vector<Bint>>& m, int threads) {
  const std::size_t k = m.size();
  check_square(k, m.empty() ? 0 : m[0].size());
  const std::uint64_t end = std::uint64_t{1} << k;

  int workers = std::max(1, threads);
  std::uint64_t span = end - 1;
  if (workers == 1 || span < 1024) {
    Bint acc = ryser_range(m, 1, end);
    return (k % 2 == 0) ? acc : -acc;
  }

  workers = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), span));
  std::vector<Bint> partial(workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    std::uint64_t lo = 1 + span * w / workers;
    std::uint64_t hi = 1 + span * (w + 1) / workers;
    pool.emplace_back(
        [&, w, lo, hi] { partial[w] = ryser_range(m, lo, hi); });
  }
  for (auto& th : pool) th.join();

  Bint acc = 0;
  for (const auto& p : partial) acc += p;  // fixed order; exact anyway
  return (k % 2 == 0) ? acc : -acc;
}

Rat permanent_ryser(const std::vector<std::vector<Rat>>& m, int threads) {
  const std::size_t k = m.size();
  check_square(k, m.empty() ? 0 : m[0].size());
  // one common denominator for the whole matrix
  Bint den = 1;
  for (const auto& row : m)
    for (const auto& v : row) den = boost::multiprecision::lcm(den, denominator(v));
  std::vector<std::vector<Bint>> scaled(k, std::vector<Bint>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      scaled[i][j] = numerator(m[i][j]) * (den / denominator(m[i][j]));

  Bint num = permanent_ryser_int(scaled, threads);
  Bint d = 1;
  for (std::size_t i = 0; i < k; ++i) d *= den;
  return Rat(num, d);
}

double permanent_ryser_float(const std::vector<std::vector<double>>& m) {
  const std::size_t k = m.size();
  check_square(k, m.empty() ? 0 : m[0].size());
  const std::uint64_t end = std::uint64_t{1} << k;
  std::vector<double> rowsum(k, 0.0);
  std::uint64_t gray = 0;
  double acc = 0.0;
  for (std::uint64_t s = 1; s < end; ++s) {
    std::uint64_t j = std::countr_zero(s);
    std::uint64_t bit = std::uint64_t{1} << j;
    gray ^= bit;
    if (gray & bit)
      for (std::size_t i = 0; i < k; ++i) rowsum[i] += m[i][j];
    else
      for (std::size_t i = 0; i < k; ++i) rowsum[i] -= m[i][j];
    double prod = 1.0;
    for (std::size_t i = 0; i < k; ++i) prod *= rowsum[i];
    acc += (std::popcount(gray) & 1) ? -prod : prod;
  }
  return (k % 2 == 0) ? acc : -acc;
}

namespace {

Rat naive_expand(const std::vector<std::vector<Rat>>& m, std::size_t row,
                 std::uint32_t used_cols) {
  const std::size_t k = m.size();
  if (row == k) return Rat(1);
  Rat acc = 0;
  for (std::size_t j = 0; j < k; ++j) {
    if (used_cols & (std::uint32_t{1} << j)) continue;
    if (m[row][j] == 0) continue;
    acc += m[row][j] * naive_expand(m, row + 1, used_cols | (std::uint32_t{1} << j));
  }
  return acc;
}

}  // namespace

Rat permanent_naive(const std::vector<std::vector<Rat>>& m) {
  const std::size_t k = m.size();
  require(k >= 1 && k <= 9, Errc::size_limit,
          "naive permanent supports sizes 1..9");
  require(k == m[0].size(), Errc::invalid_parameter, "matrix is not square");
  return naive_expand(m, 0, 0);
}

Rat permanent_subset_dp(const std::vector<std::vector<Rat>>& m) {
  const std::size_t k = m.size();
  check_square(k, m.empty() ? 0 : m[0].size());
  require(k <= 26, Errc::size_limit,
          "subset DP table for size " + std::to_string(k) +
              " does not fit in memory");
  // dp[mask] = permanent of the first popcount(mask) rows against columns mask
  std::vector<Rat> dp(std::size_t{1} << k);
  dp[0] = 1;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << k); ++mask) {
    std::size_t row = static_cast<std::size_t>(std::popcount(mask)) - 1;
    Rat acc = 0;
    for (std::uint32_t rest = mask; rest;) {
      std::uint32_t j = std::countr_zero(rest);
      rest &= rest - 1;
      if (m[row][j] != 0) acc += m[row][j] * dp[mask ^ (std::uint32_t{1} << j)];
    }
    dp[mask] = std::move(acc);
  }
  return dp.back();
}

Bint count_perfect_matchings(const std::vector<std::vector<std::uint32_t>>& adj,
                             std::size_t cols) {
  const std::size_t k = adj.size();
  require(k == cols, Errc::invalid_parameter,
          "matching count requires equal sides, got " + std::to_string(k) +
              " and " + std::to_string(cols));
  require(k >= 1, Errc::invalid_parameter, "empty graph");
  require(k <= kPermanentSizeCap, Errc::size_limit,
          "side size " + std::to_string(k) + " exceeds the 2^k cap");
  require(k <= 26, Errc::size_limit,
          "subset DP table for size " + std::to_string(k) +
              " does not fit in memory");
  std::vector<Bint> dp(std::size_t{1} << k);
  dp[0] = 1;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    std::size_t row = static_cast<std::size_t>(std::popcount(mask)) - 1;
    Bint acc = 0;
    for (std::uint32_t j : adj[row])
      if (mask & (std::uint64_t{1} << j)) acc += dp[mask ^ (std::uint64_t{1} << j)];
    dp[mask] = std::move(acc);
  }
  return dp.back();
}

double bregman_upper(const std::vector<std::uint32_t>& degrees) {
  double acc = 0.0;
  for (std::uint32_t d : degrees) {
    require(d >= 1, Errc::zero_degree,
            "a vertex of degree 0 admits no perfect matching");
    acc += std::lgamma(static_cast<double>(d) + 1.0) / static_cast<double>(d);
  }
  return acc;
}

}  // namespace scdkit
