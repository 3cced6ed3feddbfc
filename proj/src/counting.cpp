#include "scdkit/counting.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <thread>
#include <unordered_map>

#include "scdkit/error.hpp"
#include "scdkit/gadget.hpp"
#include "scdkit/permanent.hpp"

namespace scdkit {

// ---------------------------------------------------------------------------
// Canonical backtracking oracle
// ---------------------------------------------------------------------------

namespace {

struct OpenChain {
  int bottom_rank;
  int top_rank;
  ElemCode top;
};

struct OracleState {
  const GradedPoset& poset;
  int mtot;
  std::vector<ElemCode> order;           // all elements, rank-major
  std::vector<int> rank_of;              // rank per order index
  std::vector<std::vector<ElemCode>> down;  // down-covers per order index
  std::vector<int> level_start;          // first index of each level in order
  std::vector<OpenChain> open;
  std::vector<int> slot_of_top;          // element code -> open slot, -1 free
  Bint count = 0;

  explicit OracleState(const GradedPoset& p) : poset(p), mtot(p.total_rank()) {
    for (int r = 0; r < p.num_levels(); ++r) {
      level_start.push_back(static_cast<int>(order.size()));
      const auto& lv = p.level(r);
      for (ElemCode e : lv) {
        order.push_back(e);
        rank_of.push_back(r);
        down.push_back(poset.covers_down(e));
      }
    }
    level_start.push_back(static_cast<int>(order.size()));
    slot_of_top.assign(poset.size(), -1);
  }

  // `need` counts open chains topped at the previous level that still have
  // to grow; each one consumes a distinct element of the current level, so
  // a branch dies as soon as need exceeds the elements left in the level.
  void run(std::size_t i, int need) {
    if (i == order.size()) {
      for (const auto& c : open)
        if (c.bottom_rank + c.top_rank != mtot) return;
      ++count;
      return;
    }
    int r = rank_of[i];
    if (static_cast<int>(i) == level_start[r]) {
      need = 0;
      for (const auto& c : open) {
        if (c.bottom_rank + c.top_rank == mtot) continue;
        if (c.top_rank < r - 1) return;  // stranded incomplete chain
        ++need;
      }
    }
    if (need > level_start[r + 1] - static_cast<int>(i)) return;

    ElemCode x = order[i];
    // open a new chain at x
    if (2 * r <= mtot) {
      open.push_back({r, r, x});
      slot_of_top[x] = static_cast<int>(open.size()) - 1;
      run(i + 1, need);
      slot_of_top[x] = -1;
      open.pop_back();
    }
    // or extend the chain topped by one of x's down-covers; open[] may
    // reallocate inside the recursion, so index it afresh afterwards
    for (ElemCode below : down[i]) {
      int slot = slot_of_top[below];
      if (slot < 0) continue;
      if (open[slot].bottom_rank + r > mtot) continue;
      slot_of_top[below] = -1;
      open[slot].top = x;
      open[slot].top_rank = r;
      slot_of_top[x] = slot;
      run(i + 1, need - 1);
      slot_of_top[x] = -1;
      open[slot].top = below;
      open[slot].top_rank = r - 1;
      slot_of_top[below] = slot;
    }
  }
};

}  // namespace

Bint count_scd_oracle(const GradedPoset& poset, const OracleOptions& opt) {
  require(poset.size() <= opt.max_elements, Errc::budget_exceeded,
          poset.descriptor() + " has " + std::to_string(poset.size()) +
              " elements; oracle guard is " + std::to_string(opt.max_elements));
  OracleState st(poset);
  st.run(0, 0);
  return st.count;
}

// ---------------------------------------------------------------------------
// Layered procedure
// ---------------------------------------------------------------------------

namespace {

using Frontier = std::map<Sigma, Bint>;

// Level indices of one layer: X = l_x, glued middle = (l_bg, l_tg),
// Z = l_z. For an even total rank, layer 1 glues the single middle level
// to itself along the identity.
struct LayerSpec {
  int l_x, l_bg, l_tg, l_z;
};

struct LayerPlan {
  bool odd = false;
  int middle_lower = 0;  // l_bg of the first step (odd: matching levels)
  std::vector<LayerSpec> layers;  // 1-based in messages; stored 0-based
};

LayerPlan make_plan(const GradedPoset& poset) {
  LayerPlan plan;
  int mtot = poset.total_rank();
  if (mtot % 2 == 0) {
    int h = mtot / 2;
    plan.odd = false;
    plan.middle_lower = h;
    for (int s = 1; s <= h; ++s)
      plan.layers.push_back({h - s, h - s + 1, h + s - 1, h + s});
  } else {
    int h = (mtot - 1) / 2;
    plan.odd = true;
    plan.middle_lower = h;
    for (int s = 1; s <= h; ++s)
      plan.layers.push_back({h - s, h - s + 1, h + s, h + s + 1});
  }
  return plan;
}

Sigma identity_sigma(std::size_t n) {
  Sigma s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<std::uint32_t>(i);
  return s;
}

Frontier initial_frontier(const GradedPoset& poset, const LayerPlan& plan,
                          std::uint64_t state_cap) {
  Frontier frontier;
  if (!plan.odd) {
    frontier.emplace(identity_sigma(poset.level(plan.middle_lower).size()),
                     Bint(1));
    return frontier;
  }
  // odd total rank: every decomposition starts as a perfect matching
  // between the two equal middle levels
  auto g = poset.level_bigraph(plan.middle_lower);
  require(g.lower_size == g.upper_size, Errc::invalid_parameter,
          "odd middle levels differ in size");
  bool capped = false;
  enumerate_perfect_matchings(g.adj, [&](const Matching& m) {
    Sigma sigma(m.size());
    for (std::size_t bottom = 0; bottom < m.size(); ++bottom)
      sigma[m[bottom]] = static_cast<std::uint32_t>(bottom);
    frontier.emplace(std::move(sigma), Bint(1));
    if (frontier.size() > state_cap) {
      capped = true;
      return false;
    }
    return true;
  });
  require(!capped, Errc::budget_exceeded,
          "middle-level matchings exceed the state cap of " +
              std::to_string(state_cap));
  return frontier;
}

// glue the chain endpoints along sigma and view four levels as three
ThreeLevelPoset build_glued(const GradedPoset& poset, const LayerSpec& ls,
                            const Sigma& sigma) {
  const auto& X = poset.level(ls.l_x);
  const auto& Bg = poset.level(ls.l_bg);
  const auto& Tg = poset.level(ls.l_tg);
  const auto& Z = poset.level(ls.l_z);
  require(sigma.size() == Tg.size(), Errc::invalid_parameter,
          "sigma does not match the glued level");
  require(Bg.size() == Tg.size() && X.size() == Z.size(),
          Errc::invalid_parameter, "glued levels are not rank-symmetric");
  require(Tg.size() <= 64, Errc::budget_exceeded,
          "glued middle level of size " + std::to_string(Tg.size()) +
              " exceeds the 64-element limit of the layered engine");

  ThreeLevelPoset p3;
  p3.a = X.size();
  p3.b = Tg.size();
  p3.x_code = X;
  p3.z_code = Z;
  p3.y_code.resize(Tg.size());
  Sigma inv(sigma.size());
  for (std::size_t t = 0; t < sigma.size(); ++t) {
    inv[sigma[t]] = static_cast<std::uint32_t>(t);
    p3.y_code[t] = {Bg[sigma[t]], Tg[t]};
  }

  auto lower = poset.level_bigraph(ls.l_x);
  p3.xy.resize(X.size());
  for (std::size_t x = 0; x < X.size(); ++x) {
    for (std::uint32_t bottom : lower.adj[x]) p3.xy[x].push_back(inv[bottom]);
    std::sort(p3.xy[x].begin(), p3.xy[x].end());
  }
  auto upper = poset.level_bigraph(ls.l_tg);
  p3.yz = std::move(upper.adj);
  return p3;
}

// Number of injective choices of middle representatives for the given
// candidate masks: dp over pair subsets, one pass per middle element.
Bint count_sdr(const std::vector<std::uint64_t>& masks, std::size_t b,
               std::uint64_t used, std::size_t from, std::vector<Bint>& dp) {
  std::size_t a = masks.size() - from;
  if (a == 0) return 1;
  std::size_t full = (std::size_t{1} << a) - 1;
  std::fill(dp.begin(), dp.begin() + full + 1, Bint(0));
  dp[0] = 1;
  for (std::size_t y = 0; y < b; ++y) {
    if (used & (std::uint64_t{1} << y)) continue;
    for (std::size_t S = full; S + 1 > 0; --S) {
      if (dp[S] == 0) {
        if (S == 0) break;
        continue;
      }
      for (std::size_t i = 0; i < a; ++i) {
        if (S & (std::size_t{1} << i)) continue;
        if (masks[from + i] & (std::uint64_t{1} << y))
          dp[S | (std::size_t{1} << i)] += dp[S];
      }
      if (S == 0) break;
    }
  }
  return dp[full];
}

// Enumerate the bijections X -> Z realizable through distinct middle
// elements; ways = number of injective middle assignments for the pairing.
void for_each_pairing(
    const ThreeLevelPoset& p3,
    const std::function<void(const std::vector<std::uint32_t>&, const Bint&)>&
        cb) {
  require(p3.a <= 16, Errc::budget_exceeded,
          "outer level of size " + std::to_string(p3.a) +
              " exceeds the pairing enumeration limit");
  std::vector<std::uint64_t> xmask(p3.a, 0), zmask(p3.a, 0);
  for (std::size_t x = 0; x < p3.a; ++x)
    for (std::uint32_t y : p3.xy[x]) xmask[x] |= std::uint64_t{1} << y;
  for (std::size_t y = 0; y < p3.b; ++y)
    for (std::uint32_t z : p3.yz[y]) zmask[z] |= std::uint64_t{1} << y;

  std::vector<std::uint32_t> pi(p3.a);
  std::vector<std::uint64_t> pair_masks(p3.a);
  std::vector<Bint> dp(std::size_t{1} << p3.a);
  std::uint64_t used_z = 0;

  auto rec = [&](auto&& self, std::size_t x) -> void {
    if (x == p3.a) {
      Bint ways = count_sdr(pair_masks, p3.b, 0, 0, dp);
      if (ways != 0) cb(pi, ways);
      return;
    }
    for (std::uint32_t z = 0; z < p3.a; ++z) {
      if (used_z & (std::uint64_t{1} << z)) continue;
      std::uint64_t m = xmask[x] & zmask[z];
      if (!m) continue;
      pi[x] = z;
      pair_masks[x] = m;
      used_z |= std::uint64_t{1} << z;
      self(self, x + 1);
      used_z &= ~(std::uint64_t{1} << z);
    }
  };
  rec(rec, 0);
}

Sigma derive_next_sigma(const std::vector<std::uint32_t>& pi) {
  Sigma next(pi.size());
  for (std::size_t x = 0; x < pi.size(); ++x)
    next[pi[x]] = static_cast<std::uint32_t>(x);
  return next;
}

// ---------------------------------------------------------------------------
// Layer cache
// ---------------------------------------------------------------------------

constexpr std::uint64_t kCacheMagic = 0x5343444c41594552ull;  // "SCDLAYER"
constexpr std::uint32_t kCacheVersion = 1;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::filesystem::path cache_file(const std::filesystem::path& dir,
                                 const std::string& descriptor, int layer) {
  char name[64];
  std::snprintf(name, sizeof(name), "%016llx.layer%03d.bin",
                static_cast<unsigned long long>(fnv1a(descriptor)), layer);
  return dir / name;
}

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
bool get(std::istream& is, T& v) {
  is.read(reinterpret_cast<char*>(&v), sizeof(v));
  return static_cast<bool>(is);
}

void store_layer(const std::filesystem::path& dir,
                 const std::string& descriptor, int layer,
                 const Frontier& frontier) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  auto path = cache_file(dir, descriptor, layer);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) return;  // cache is best-effort
  put(os, kCacheMagic);
  put(os, kCacheVersion);
  put(os, static_cast<std::uint32_t>(layer));
  put(os, static_cast<std::uint64_t>(descriptor.size()));
  os.write(descriptor.data(),
           static_cast<std::streamsize>(descriptor.size()));
  put(os, static_cast<std::uint64_t>(frontier.size()));
  put(os, static_cast<std::uint64_t>(
              frontier.empty() ? 0 : frontier.begin()->first.size()));
  std::vector<unsigned char> bytes;
  for (const auto& [sigma, count] : frontier) {
    for (std::uint32_t v : sigma) put(os, v);
    bytes.clear();
    boost::multiprecision::export_bits(count, std::back_inserter(bytes), 8);
    put(os, static_cast<std::uint64_t>(bytes.size()));
    os.write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
  }
}

bool load_layer(const std::filesystem::path& dir,
                const std::string& descriptor, int layer, Frontier& out) {
  auto path = cache_file(dir, descriptor, layer);
  std::ifstream is(path, std::ios::binary);
  if (!is) return false;
  std::uint64_t magic = 0, desc_len = 0, entries = 0, sigma_len = 0;
  std::uint32_t version = 0, stored_layer = 0;
  if (!get(is, magic) || magic != kCacheMagic) return false;
  if (!get(is, version) || version != kCacheVersion) return false;
  if (!get(is, stored_layer) || stored_layer != static_cast<std::uint32_t>(layer))
    return false;
  if (!get(is, desc_len) || desc_len > 4096) return false;
  std::string desc(desc_len, '\0');
  is.read(desc.data(), static_cast<std::streamsize>(desc_len));
  if (!is || desc != descriptor) return false;
  if (!get(is, entries) || !get(is, sigma_len)) return false;
  Frontier frontier;
  std::vector<unsigned char> bytes;
  for (std::uint64_t e = 0; e < entries; ++e) {
    Sigma sigma(sigma_len);
    for (auto& v : sigma)
      if (!get(is, v)) return false;
    std::uint64_t len = 0;
    if (!get(is, len) || len > (1u << 20)) return false;
    bytes.assign(len, 0);
    is.read(reinterpret_cast<char*>(bytes.data()),
            static_cast<std::streamsize>(len));
    if (!is) return false;
    Bint count = 0;
    if (!bytes.empty())
      boost::multiprecision::import_bits(count, bytes.begin(), bytes.end(), 8);
    frontier.emplace(std::move(sigma), std::move(count));
  }
  out = std::move(frontier);
  return true;
}

// ---------------------------------------------------------------------------
// Layer expansion
// ---------------------------------------------------------------------------

using Contribs = std::vector<std::pair<Sigma, Bint>>;

Contribs expand_state(const GradedPoset& poset, const LayerSpec& ls,
                      const Sigma& sigma, const Bint& count) {
  ThreeLevelPoset p3 = build_glued(poset, ls, sigma);
  Contribs out;
  for_each_pairing(p3, [&](const std::vector<std::uint32_t>& pi,
                           const Bint& ways) {
    out.emplace_back(derive_next_sigma(pi), count * ways);
  });
  return out;
}

Frontier advance_layer(const GradedPoset& poset, const LayerSpec& ls,
                       int layer_index, const Frontier& frontier,
                       const LayeredOptions& opt) {
  std::vector<const std::pair<const Sigma, Bint>*> entries;
  entries.reserve(frontier.size());
  for (const auto& kv : frontier) entries.push_back(&kv);
  if (opt.explore_reversed) std::reverse(entries.begin(), entries.end());

  int workers = std::max(1, opt.threads);
  if (opt.on_state) workers = 1;  // keep hook call order deterministic

  std::vector<Contribs> results(entries.size());
  if (workers == 1 || entries.size() <= 1) {
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (opt.on_state) {
        ThreeLevelPoset p3 = build_glued(poset, ls, entries[i]->first);
        opt.on_state(layer_index, entries[i]->first, p3);
      }
      results[i] = expand_state(poset, ls, entries[i]->first,
                                entries[i]->second);
    }
  } else {
    std::vector<std::thread> pool;
    std::size_t nw = std::min<std::size_t>(workers, entries.size());
    for (std::size_t w = 0; w < nw; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < entries.size(); i += nw)
          results[i] = expand_state(poset, ls, entries[i]->first,
                                    entries[i]->second);
      });
    }
    for (auto& th : pool) th.join();
  }

  // merge in entry order; addition is exact, so any order gives the same
  // frontier, but a fixed order keeps runs reproducible instruction-for-
  // instruction
  Frontier next;
  for (auto& contribs : results)
    for (auto& [sigma, c] : contribs) next[std::move(sigma)] += c;
  require(next.size() <= opt.state_cap, Errc::budget_exceeded,
          "layer " + std::to_string(layer_index) + " has " +
              std::to_string(next.size()) +
              " endpoint-bijection states; cap is " +
              std::to_string(opt.state_cap));
  return next;
}

bool is_chain_poset(const GradedPoset& poset) {
  return poset.size() == static_cast<std::uint64_t>(poset.num_levels());
}

}  // namespace

Bint count_scd_layered(const GradedPoset& poset, const LayeredOptions& opt) {
  if (is_chain_poset(poset)) return 1;

  LayerPlan plan = make_plan(poset);
  const int total_layers = static_cast<int>(plan.layers.size());
  const std::string descriptor = poset.descriptor();

  Frontier frontier;
  int start = 1;
  if (opt.cache_dir) {
    for (int s = total_layers; s >= 1; --s) {
      if (load_layer(*opt.cache_dir, descriptor, s, frontier)) {
        start = s + 1;
        break;
      }
    }
  }
  if (start == 1) frontier = initial_frontier(poset, plan, opt.state_cap);
  require(frontier.size() <= opt.state_cap, Errc::budget_exceeded,
          "initial frontier exceeds the state cap");

  for (int s = start; s <= total_layers; ++s) {
    frontier = advance_layer(poset, plan.layers[s - 1], s, frontier, opt);
    if (opt.cache_dir) store_layer(*opt.cache_dir, descriptor, s, frontier);
  }

  Bint total = 0;
  for (const auto& [sigma, count] : frontier) total += count;
  return total;
}

Bint count_scd_threelevel(const ThreeLevelPoset& p3) {
  // an empty bigraph is allowed here: the count is simply 0
  p3.check_structure();
  require(p3.a + p3.b <= 30, Errc::size_limit,
          "three-level poset with " + std::to_string(p3.a + p3.b) +
              " gadget vertices per side exceeds the cap of 30");
  // support graph of the two-copy gadget, independent of any weighting:
  // rows Y1 then X, columns Y2 then Z
  std::vector<std::vector<std::uint32_t>> adj(p3.a + p3.b);
  for (std::uint32_t j = 0; j < p3.b; ++j) {
    adj[j].push_back(j);
    for (std::uint32_t z : p3.yz[j])
      adj[j].push_back(static_cast<std::uint32_t>(p3.b) + z);
  }
  for (std::uint32_t i = 0; i < p3.a; ++i)
    adj[p3.b + i] = p3.xy[i];
  return count_perfect_matchings(adj, p3.a + p3.b);
}

// ---------------------------------------------------------------------------
// Uniform sampling
// ---------------------------------------------------------------------------

namespace {

Bint random_below(std::mt19937_64& rng, const Bint& bound) {
  if (bound <= 1) return 0;
  std::size_t bits = boost::multiprecision::msb(bound) + 1;
  for (;;) {
    Bint v = 0;
    for (std::size_t done = 0; done < bits; done += 64) {
      v <<= 64;
      v |= Bint(rng());
    }
    v >>= (64 - bits % 64) % 64;
    if (v < bound) return v;
  }
}

}  // namespace

struct ScdSampler::Impl {
  const GradedPoset& poset;
  LayeredOptions opt;
  LayerPlan plan;
  bool chain_poset = false;
  std::vector<Frontier> forward;   // [0..S]; forward[0] = initial states
  std::vector<Frontier> backward;  // [0..S]; completions from each state
  Bint total = 0;

  Impl(const GradedPoset& p, const LayeredOptions& o)
      : poset(p), opt(o), plan(make_plan(p)) {
    if (is_chain_poset(p)) {
      chain_poset = true;
      total = 1;
      return;
    }
    const int S = static_cast<int>(plan.layers.size());
    forward.resize(S + 1);
    backward.resize(S + 1);
    forward[0] = initial_frontier(poset, plan, opt.state_cap);
    LayeredOptions fwd = opt;
    fwd.cache_dir.reset();
    fwd.on_state = nullptr;
    for (int s = 1; s <= S; ++s)
      forward[s] = advance_layer(poset, plan.layers[s - 1], s, forward[s - 1], fwd);

    for (const auto& [sigma, c] : forward[S]) backward[S][sigma] = 1;
    for (int s = S; s >= 1; --s) {
      for (const auto& [sigma, c] : forward[s - 1]) {
        ThreeLevelPoset p3 = build_glued(poset, plan.layers[s - 1], sigma);
        Bint completions = 0;
        for_each_pairing(p3, [&](const std::vector<std::uint32_t>& pi,
                                 const Bint& ways) {
          auto it = backward[s].find(derive_next_sigma(pi));
          if (it != backward[s].end()) completions += ways * it->second;
        });
        backward[s - 1][sigma] = std::move(completions);
      }
    }
    for (const auto& [sigma, c] : forward[0]) total += c * backward[0][sigma];
    require(total > 0, Errc::zero_count,
            poset.descriptor() + " has no symmetric chain decomposition");
  }

  // uniform pick of one injective middle assignment for the given pairing
  std::vector<std::uint32_t> sample_assignment(
      const std::vector<std::uint64_t>& masks, std::size_t b,
      std::mt19937_64& rng) const {
    std::vector<Bint> dp(std::size_t{1} << masks.size());
    std::vector<std::uint32_t> pick(masks.size());
    std::uint64_t used = 0;
    for (std::size_t i = 0; i < masks.size(); ++i) {
      std::vector<std::pair<std::uint32_t, Bint>> options;
      Bint sum = 0;
      for (std::uint32_t y = 0; y < b; ++y) {
        if (used & (std::uint64_t{1} << y)) continue;
        if (!(masks[i] & (std::uint64_t{1} << y))) continue;
        Bint rest = count_sdr(masks, b, used | (std::uint64_t{1} << y), i + 1,
                              dp);
        if (rest == 0) continue;
        sum += rest;
        options.emplace_back(y, std::move(rest));
      }
      Bint r = random_below(rng, sum);
      for (auto& [y, w] : options) {
        if (r < w) {
          pick[i] = y;
          used |= std::uint64_t{1} << y;
          break;
        }
        r -= w;
      }
    }
    return pick;
  }

  Scd draw(std::mt19937_64& rng) const {
    Scd out;
    if (chain_poset) {
      std::vector<ElemCode> chain;
      for (int r = 0; r < poset.num_levels(); ++r)
        chain.push_back(poset.level(r)[0]);
      out.chains.push_back(std::move(chain));
      return out;
    }

    // pick the initial state weighted by its completions
    const Sigma* sigma = nullptr;
    {
      Bint r = random_below(rng, total);
      for (const auto& [sg, c] : forward[0]) {
        Bint w = c * backward[0].at(sg);
        if (r < w) {
          sigma = &sg;
          break;
        }
        r -= w;
      }
    }

    // live spanning chains, keyed by the index of their top element
    std::map<std::uint32_t, std::vector<ElemCode>> chains;
    const auto& bottom_lv = poset.level(plan.middle_lower);
    if (!plan.odd) {
      for (std::uint32_t j = 0; j < bottom_lv.size(); ++j)
        chains[j] = {bottom_lv[j]};
    } else {
      const auto& top_lv = poset.level(plan.middle_lower + 1);
      for (std::uint32_t t = 0; t < top_lv.size(); ++t)
        chains[t] = {bottom_lv[(*sigma)[t]], top_lv[t]};
    }

    Sigma current = *sigma;
    const int S = static_cast<int>(plan.layers.size());
    for (int s = 1; s <= S; ++s) {
      const LayerSpec& ls = plan.layers[s - 1];
      ThreeLevelPoset p3 = build_glued(poset, ls, current);

      // pick a pairing weighted by assignments * completions
      std::vector<std::uint32_t> chosen_pi;
      std::vector<std::uint64_t> chosen_masks;
      {
        std::vector<std::tuple<std::vector<std::uint32_t>, Bint, Sigma>> opts;
        Bint sum = 0;
        std::vector<std::uint64_t> xmask(p3.a, 0), zmask(p3.a, 0);
        for (std::size_t x = 0; x < p3.a; ++x)
          for (std::uint32_t y : p3.xy[x]) xmask[x] |= std::uint64_t{1} << y;
        for (std::size_t y = 0; y < p3.b; ++y)
          for (std::uint32_t z : p3.yz[y]) zmask[z] |= std::uint64_t{1} << y;
        for_each_pairing(p3, [&](const std::vector<std::uint32_t>& pi,
                                 const Bint& ways) {
          Sigma next = derive_next_sigma(pi);
          auto it = backward[s].find(next);
          if (it == backward[s].end()) return;
          Bint w = ways * it->second;
          sum += w;
          opts.emplace_back(pi, std::move(w), std::move(next));
        });
        Bint r = random_below(rng, sum);
        for (auto& [pi, w, next] : opts) {
          if (r < w) {
            chosen_pi = pi;
            current = next;
            break;
          }
          r -= w;
        }
        chosen_masks.resize(p3.a);
        for (std::size_t x = 0; x < p3.a; ++x)
          chosen_masks[x] = xmask[x] & zmask[chosen_pi[x]];
      }

      auto ys = sample_assignment(chosen_masks, p3.b, rng);

      std::map<std::uint32_t, std::vector<ElemCode>> next_chains;
      std::vector<bool> y_used(p3.b, false);
      for (std::size_t x = 0; x < p3.a; ++x) {
        std::uint32_t y = ys[x];
        y_used[y] = true;
        auto chain = std::move(chains.at(y));
        chain.insert(chain.begin(), p3.x_code[x]);
        chain.push_back(p3.z_code[chosen_pi[x]]);
        next_chains[chosen_pi[x]] = std::move(chain);
      }
      for (std::uint32_t y = 0; y < p3.b; ++y)
        if (!y_used[y]) out.chains.push_back(std::move(chains.at(y)));
      chains = std::move(next_chains);
    }

    for (auto& [top, chain] : chains) out.chains.push_back(std::move(chain));
    out.canonicalize();
    return out;
  }
};

ScdSampler::ScdSampler(const GradedPoset& poset, const LayeredOptions& opt)
    : impl_(std::make_unique<Impl>(poset, opt)) {}

ScdSampler::~ScdSampler() = default;

const Bint& ScdSampler::total_count() const { return impl_->total; }

Scd ScdSampler::draw(std::mt19937_64& rng) const { return impl_->draw(rng); }

Scd sample_scd_uniform(const GradedPoset& poset, std::uint64_t seed,
                       const LayeredOptions& opt) {
  ScdSampler sampler(poset, opt);
  std::mt19937_64 rng(seed);
  return sampler.draw(rng);
}

}  // namespace scdkit
