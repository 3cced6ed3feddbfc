#include "scdkit/bounds.hpp"

#include <cmath>

#include "scdkit/error.hpp"
#include "scdkit/poset.hpp"

namespace scdkit {

namespace {

long double lfact(long double k) {  // ln k!
  return std::lgamma(k + 1.0L);
}

// per-layer three-level factors in long double
long double l3_lower(long double a, long double b, long double r) {
  return 2.0L * a * (std::log(r) - 1.0L) - 2.0L * (b - a);
}

long double l3_upper(long double a, long double b, long double r) {
  return (a + b) / r * lfact(r);
}

}  // namespace

Lemma3Bounds lemma3_bounds(std::uint64_t a, std::uint64_t b, std::uint64_t r) {
  require(a >= 1, Errc::invalid_parameter, "a must be positive");
  require(a < b, Errc::invalid_parameter,
          "requires a < b, got a=" + std::to_string(a) +
              ", b=" + std::to_string(b));
  require(r >= 1, Errc::invalid_parameter, "degree r must be positive");

  auto la = static_cast<long double>(a);
  auto lb = static_cast<long double>(b);
  auto lr = static_cast<long double>(r);
  Lemma3Bounds out;
  out.log_lower = static_cast<double>(l3_lower(la, lb, lr));
  out.log_upper = static_cast<double>(l3_upper(la, lb, lr));
  // middle-copy vertices have degree q = ar/b + 1; integral in the regular
  // case, evaluated through log-gamma regardless
  long double q = la * lr / lb + 1.0L;
  out.log_upper_mixed =
      static_cast<double>(la / lr * lfact(lr) + lb / q * lfact(q));
  return out;
}

double lemma8_lower(std::uint64_t a, std::uint64_t b, double w_max) {
  require(a >= 1 && a < b, Errc::invalid_parameter, "requires 1 <= a < b");
  require(w_max > 0.0 && w_max <= 1.0, Errc::invalid_parameter,
          "max weight must lie in (0, 1]");
  return -2.0 * static_cast<double>(a) * std::log(w_max) -
         static_cast<double>(a + b);
}

Theorem1Bounds theorem1_bounds(int n) {
  require(n >= 1, Errc::invalid_parameter, "n must be positive");
  require(n <= 10000, Errc::invalid_parameter, "n capped at 10^4");

  auto sizes = level_sizes(2, n);
  std::vector<long double> lv(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i)
    lv[i] = sizes[i].convert_to<long double>();

  long double lower = 0.0L, upper = 0.0L;
  if (n % 2 == 0) {
    int m = n / 2;
    for (int s = 1; s <= m; ++s) {
      long double a = lv[m + s];
      long double b = lv[m + s - 1];
      long double r = m + s;
      lower += l3_lower(a, b, r);
      upper += l3_upper(a, b, r);
    }
  } else {
    int h = (n - 1) / 2;
    // middle matching between the equal levels L_h, L_{h+1}: at least
    // (r/e)^l and at most (r!)^(l/r) matchings, l = |L_h|, r = h+1
    long double l = lv[h];
    long double r0 = h + 1;
    lower += l * (std::log(r0) - 1.0L);
    upper += l / r0 * lfact(r0);
    for (int s = 1; s <= h; ++s) {
      long double a = lv[h + 1 + s];
      long double b = lv[h + s];
      long double r = h + 1 + s;
      lower += l3_lower(a, b, r);
      upper += l3_upper(a, b, r);
    }
  }

  long double pow2n = std::pow(2.0L, static_cast<long double>(n));
  Theorem1Bounds out;
  out.log_lower = static_cast<double>(lower);
  out.log_upper = static_cast<double>(upper);
  out.normalized_lower = static_cast<double>(lower / pow2n);
  out.normalized_upper = static_cast<double>(upper / pow2n);
  return out;
}

Theorem2Lower theorem2_lower(int t, int n,
                             const std::vector<double>& w_per_layer) {
  require(t >= 2 && n >= 1, Errc::invalid_parameter, "requires t >= 2, n >= 1");
  require(!w_per_layer.empty(), Errc::invalid_parameter,
          "need at least one max-weight value");
  for (double w : w_per_layer)
    require(w > 0.0 && w <= 1.0, Errc::invalid_parameter,
            "max weights must lie in (0, 1]");

  auto sizes = level_sizes(t, n);
  int mtot = (t - 1) * n;
  int band = static_cast<int>(
      std::floor(static_cast<double>(t) *
                 std::pow(static_cast<double>(n), 3.0 / 5.0)));

  auto w_at = [&](int s) {
    return s <= static_cast<int>(w_per_layer.size()) ? w_per_layer[s - 1]
                                                     : w_per_layer.back();
  };

  long double lower = 0.0L;
  int layers;
  if (mtot % 2 == 0) {
    int m = mtot / 2;
    layers = std::min(band, m);
    for (int s = 1; s <= layers; ++s) {
      long double a = sizes[m + s].convert_to<long double>();
      long double b = sizes[m + s - 1].convert_to<long double>();
      lower += -2.0L * a * std::log(static_cast<long double>(w_at(s))) -
               (b + a);
    }
  } else {
    // odd total rank: the flow matrix between the two equal middle levels
    // is itself doubly stochastic, giving at least W^-l e^-l perfect
    // matchings, l = |L_h|; then layers as in the even case
    int h = (mtot - 1) / 2;
    layers = std::min(band, h);
    long double l = sizes[h].convert_to<long double>();
    lower += -l * std::log(static_cast<long double>(w_at(1))) - l;
    for (int s = 1; s <= layers; ++s) {
      long double a = sizes[h + 1 + s].convert_to<long double>();
      long double b = sizes[h + s].convert_to<long double>();
      lower += -2.0L * a * std::log(static_cast<long double>(w_at(s))) -
               (b + a);
    }
  }

  Theorem2Lower out;
  out.log_lower = static_cast<double>(lower);
  out.normalized = static_cast<double>(
      lower / std::pow(static_cast<long double>(t),
                        static_cast<long double>(n)));
  out.layers_used = layers;
  return out;
}

double trivial_upper(int t, int n) {
  require(t >= 2 && n >= 1, Errc::invalid_parameter, "requires t >= 2, n >= 1");
  return std::pow(static_cast<double>(t), static_cast<double>(n)) *
         std::log(static_cast<double>(n));
}

}  // namespace scdkit
