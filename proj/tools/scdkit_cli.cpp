// scdkit: construct, validate, count, sample and certify symmetric chain
// decompositions of the Boolean lattice and the hypergrid.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "scdkit/bounds.hpp"
#include "scdkit/construct.hpp"
#include "scdkit/counting.hpp"
#include "scdkit/error.hpp"
#include "scdkit/json_io.hpp"
#include "scdkit/permanent.hpp"
#include "scdkit/snmf.hpp"

namespace {

using namespace scdkit;

struct GlobalOpts {
  std::string format = "json";
  bool quiet = false;
  int threads = 0;  // 0 = hardware
  std::uint64_t budget = GradedPoset::kDefaultBudget;

  int resolved_threads() const {
    if (threads > 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
  }
};

void log_line(const GlobalOpts& g, const std::string& msg) {
  if (!g.quiet) std::cerr << msg << "\n";
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += "\"";
  return out;
}

void emit_csv(const std::vector<std::vector<std::string>>& rows) {
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      std::cout << (i ? "," : "") << csv_field(row[i]);
    std::cout << "\n";
  }
}

GradedPoset build_from_tn(int t, int n, std::uint64_t budget) {
  // [2]^n is the Boolean lattice; keep the bitmask representation for it
  if (t == 2) return GradedPoset::boolean_lattice(n, budget);
  return GradedPoset::hypergrid(t, n, budget);
}

Json load_json(const std::string& path) {
  std::ifstream is(path);
  require(static_cast<bool>(is), Errc::io, "cannot open " + path);
  Json j;
  try {
    is >> j;
  } catch (const std::exception& e) {
    fail(Errc::io, std::string("cannot parse ") + path + ": " + e.what());
  }
  return j;
}

void write_out(const Json& j, const std::string& path) {
  if (path.empty()) {
    emit(j);
    return;
  }
  std::ofstream os(path);
  require(static_cast<bool>(os), Errc::io, "cannot write " + path);
  os << j.dump(2) << "\n";
}

std::optional<std::filesystem::path> default_cache_dir() {
  if (const char* env = std::getenv("SCDKIT_CACHE"))
    return std::filesystem::path(env);
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"))
    return std::filesystem::path(xdg) / "scdkit";
  if (const char* home = std::getenv("HOME"))
    return std::filesystem::path(home) / ".cache" / "scdkit";
  return std::nullopt;
}

double log_of_count(const Bint& c) { return log_bint(c); }

// ---------------------------------------------------------------------------

int cmd_levels(const GlobalOpts& g, int t, int n) {
  auto sizes = level_sizes(t, n);
  if (g.format == "csv") {
    std::vector<std::string> row;
    for (const auto& s : sizes) row.push_back(to_decimal(s));
    emit_csv({row});
    return 0;
  }
  Json out = Json::array();
  for (const auto& s : sizes) out.push_back(bint_to_json(s));
  emit(out);
  return 0;
}

int cmd_construct(const GlobalOpts& g, const std::string& poset_kind, int t,
                  int n, const std::string& method, const std::string& out) {
  require(g.format == "json", Errc::invalid_parameter,
          "construct only supports --format json");
  GradedPoset poset = GradedPoset::build(poset_kind == "boolean"
                                             ? PosetKind::boolean_lattice
                                             : PosetKind::hypergrid,
                                         t, n, g.budget);
  Scd scd;
  if (method == "gk") {
    require(poset.kind() == PosetKind::boolean_lattice, Errc::invalid_parameter,
            "gk construction is defined on the boolean lattice");
    scd = gk_decomposition(n, g.budget);
  } else {
    scd = btk_decomposition(t, n, g.budget);
  }
  auto report = validate_scd(poset, scd);
  require(report.ok, Errc::invalid_scd,
          "constructed decomposition failed validation: " + report.summary());
  log_line(g, "constructed " + std::to_string(scd.chains.size()) + " chains");
  write_out(scd_to_json(poset, scd), out);
  return 0;
}

int cmd_validate(const GlobalOpts& g, const std::string& in) {
  require(g.format == "json", Errc::invalid_parameter,
          "validate only supports --format json");
  auto [poset, scd] = scd_from_json(load_json(in), g.budget);
  auto report = validate_scd(poset, scd);
  Json out;
  out["ok"] = report.ok;
  Json violations = Json::array();
  for (const auto& v : report.violations)
    violations.push_back({{"chain", v.chain_index},
                          {"condition", v.condition},
                          {"detail", v.detail}});
  out["violations"] = std::move(violations);
  emit(out);
  return report.ok ? 0 : 1;
}

int cmd_count(const GlobalOpts& g, int t, int n, const std::string& method,
              const std::string& cache_dir, bool no_cache) {
  GradedPoset poset = build_from_tn(t, n, g.budget);

  LayeredOptions lopt;
  lopt.threads = g.resolved_threads();
  if (!no_cache) {
    if (!cache_dir.empty())
      lopt.cache_dir = std::filesystem::path(cache_dir);
    else
      lopt.cache_dir = default_cache_dir();
  }

  std::optional<Bint> oracle, layered;
  if (method == "oracle" || method == "both")
    oracle = count_scd_oracle(poset);
  if (method == "layered" || method == "both")
    layered = count_scd_layered(poset, lopt);

  if (g.format == "csv") {
    std::vector<std::string> header{"poset"}, row{poset.descriptor()};
    if (oracle) {
      header.push_back("oracle");
      row.push_back(to_decimal(*oracle));
    }
    if (layered) {
      header.push_back("layered");
      row.push_back(to_decimal(*layered));
    }
    if (oracle && layered) {
      header.push_back("agree");
      row.push_back(*oracle == *layered ? "true" : "false");
    }
    emit_csv({header, row});
  } else {
    Json out;
    out["poset"] = poset.descriptor();
    if (oracle) out["oracle"] = bint_to_json(*oracle);
    if (layered) out["layered"] = bint_to_json(*layered);
    if (oracle && layered) out["agree"] = (*oracle == *layered);
    emit(out);
  }
  return 0;
}

int cmd_gadget(const GlobalOpts& g, int t, int n, int slice_level,
               bool use_snmf, const std::string& dump) {
  GradedPoset poset = build_from_tn(t, n, g.budget);
  ThreeLevelPoset p3 = slice(poset, slice_level);
  WeightedBigraph gadget;
  Json summary;
  if (use_snmf) {
    auto f = compute_snmf_p3(p3);
    gadget = build_gadget_snmf(p3, f);
    summary["weighting"] = "snmf";
  } else {
    auto rc = check_regular(p3);
    require(rc.regular, Errc::not_regular,
            "slice is not regular (" + rc.why + "); rerun with --snmf");
    gadget = build_gadget_regular(p3);
    summary["weighting"] = "regular";
    summary["r"] = rc.r;
  }
  auto matrix = gadget.matrix();
  matrix.check_doubly_stochastic();
  summary["size"] = matrix.size;
  summary["doubly_stochastic"] = true;
  Json mj = matrix_to_json(matrix);
  if (!dump.empty()) {
    write_out(mj, dump);
    emit(summary);
  } else {
    emit(mj);
  }
  return 0;
}

int cmd_perm(const GlobalOpts& g, const std::string& in,
             const std::string& mode) {
  StochasticMatrix m = matrix_from_json(load_json(in));
  Json out;
  out["size"] = m.size;
  if (mode == "float") {
    std::vector<std::vector<double>> md(m.size, std::vector<double>(m.size));
    for (std::size_t i = 0; i < m.size; ++i)
      for (std::size_t j = 0; j < m.size; ++j)
        md[i][j] = to_double(m.entries[i][j]);
    out["mode"] = "float";
    out["permanent"] = permanent_ryser_float(md);
  } else {
    Rat p = permanent_ryser(m.entries, g.resolved_threads());
    out["mode"] = "rational";
    out["permanent"] = {{"num", bint_to_json(numerator(p))},
                        {"den", bint_to_json(denominator(p))}};
    out["permanent_approx"] = to_double(p);
    // van der Waerden / Falikman floor for doubly stochastic matrices
    Rat floor_val(factorial(m.size), Bint(pow(Bint(m.size), unsigned(m.size))));
    out["falikman_lower"] = {{"num", bint_to_json(numerator(floor_val))},
                             {"den", bint_to_json(denominator(floor_val))}};
    out["exceeds_falikman"] = (p >= floor_val);
  }
  emit(out);
  return 0;
}

int cmd_snmf(const GlobalOpts& g, int t, int n, bool minimize,
             const std::string& pairs, const std::string& dump) {
  GradedPoset poset = build_from_tn(t, n, g.budget);
  std::optional<std::pair<int, int>> range;
  if (!pairs.empty()) {
    auto dots = pairs.find("..");
    require(dots != std::string::npos, Errc::invalid_parameter,
            "--pairs expects a..b");
    range = std::make_pair(std::stoi(pairs.substr(0, dots)),
                           std::stoi(pairs.substr(dots + 2)));
  }

  Snmf flow;
  std::vector<Rat> w_per_pair;
  if (minimize) {
    auto min = minimize_max_weight(poset, range);
    flow = std::move(min.flow);
    w_per_pair = std::move(min.w_per_pair);
  } else {
    flow = compute_snmf(poset, range);
  }
  validate_snmf(poset, flow);

  if (g.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"pair", "lower_size", "upper_size", "max_weight"});
    for (std::size_t k = 0; k < flow.pairs.size(); ++k) {
      const auto& p = flow.pairs[k];
      rows.push_back({std::to_string(p.lower_level),
                      std::to_string(p.graph.lower_size),
                      std::to_string(p.graph.upper_size),
                      std::to_string(to_double(p.max_weight()))});
    }
    emit_csv(rows);
  } else {
    Json out;
    out["poset"] = poset.descriptor();
    out["minimized"] = minimize;
    Json jp = Json::array();
    for (std::size_t k = 0; k < flow.pairs.size(); ++k) {
      const auto& p = flow.pairs[k];
      Json e;
      e["i"] = p.lower_level;
      e["lower_size"] = p.graph.lower_size;
      e["upper_size"] = p.graph.upper_size;
      Rat w = p.max_weight();
      e["max_weight"] = {{"num", bint_to_json(numerator(w))},
                         {"den", bint_to_json(denominator(w))},
                         {"approx", to_double(w)}};
      jp.push_back(std::move(e));
    }
    out["pairs"] = std::move(jp);
    out["max_weight_global"] = to_double(flow.max_weight());
    emit(out);
  }
  if (!dump.empty()) write_out(snmf_to_json(poset, flow), dump);
  return 0;
}

int cmd_sample(const GlobalOpts& g, int t, int n, std::uint64_t seed,
               int count) {
  require(g.format == "json", Errc::invalid_parameter,
          "sample only supports --format json");
  GradedPoset poset = build_from_tn(t, n, g.budget);
  LayeredOptions lopt;
  lopt.threads = g.resolved_threads();
  ScdSampler sampler(poset, lopt);
  log_line(g, "total decompositions: " + to_decimal(sampler.total_count()));

  std::mt19937_64 rng(seed);
  Json out;
  out["poset"] = poset_to_json(poset);
  out["seed"] = seed;
  Json samples = Json::array();
  for (int k = 0; k < count; ++k) {
    Scd scd = sampler.draw(rng);
    Json chains = Json::array();
    for (const auto& chain : scd.chains) {
      Json c = Json::array();
      for (ElemCode e : chain)
        c.push_back(poset.kind() == PosetKind::boolean_lattice
                        ? Json(e)
                        : Json(poset.decode(e)));
      chains.push_back(std::move(c));
    }
    samples.push_back(std::move(chains));
  }
  out["samples"] = std::move(samples);
  emit(out);
  return 0;
}

int cmd_bounds(const GlobalOpts& g, const std::string& formula,
               std::uint64_t a, std::uint64_t b, std::uint64_t r, double w,
               std::vector<double> w_list, int t, int n, bool with_count) {
  std::ostringstream params;
  Json out;
  out["formula"] = formula;
  double log_lower = 0, log_upper = 0;
  bool has_lower = false, has_upper = false, has_norm = false;
  double normalized = 0;

  if (formula == "lemma3") {
    auto bounds = lemma3_bounds(a, b, r);
    log_lower = bounds.log_lower;
    log_upper = bounds.log_upper;
    has_lower = has_upper = true;
    out["log_upper_mixed"] = bounds.log_upper_mixed;
    params << "a=" << a << ";b=" << b << ";r=" << r;
  } else if (formula == "lemma8") {
    log_lower = lemma8_lower(a, b, w);
    has_lower = true;
    params << "a=" << a << ";b=" << b << ";w=" << w;
  } else if (formula == "thm1") {
    auto bounds = theorem1_bounds(n);
    log_lower = bounds.log_lower;
    log_upper = bounds.log_upper;
    normalized = bounds.normalized_lower;
    has_lower = has_upper = has_norm = true;
    out["normalized_upper"] = bounds.normalized_upper;
    params << "n=" << n;
  } else if (formula == "thm2") {
    require(!w_list.empty(), Errc::invalid_parameter,
            "thm2 needs at least one --w value");
    auto bounds = theorem2_lower(t, n, w_list);
    log_lower = bounds.log_lower;
    normalized = bounds.normalized;
    has_lower = has_norm = true;
    out["layers_used"] = bounds.layers_used;
    params << "t=" << t << ";n=" << n << ";w=" << w_list.size() << " values";
  } else {  // trivial
    log_upper = trivial_upper(t, n);
    has_upper = true;
    params << "t=" << t << ";n=" << n;
  }

  std::optional<double> exact_log;
  std::optional<bool> inside;
  if (with_count) {
    require(formula == "thm1" || formula == "thm2" || formula == "trivial",
            Errc::invalid_parameter,
            "--with-count applies to whole-poset formulas");
    int tt = (formula == "thm1") ? 2 : t;
    int nn = n;
    GradedPoset poset = build_from_tn(tt, nn, g.budget);
    LayeredOptions lopt;
    lopt.threads = g.resolved_threads();
    Bint c = count_scd_layered(poset, lopt);
    exact_log = log_of_count(c);
    bool ok = true;
    if (has_lower) ok = ok && (*exact_log >= log_lower - 1e-9);
    if (has_upper) ok = ok && (*exact_log <= log_upper + 1e-9);
    inside = ok;
    out["exact_count"] = bint_to_json(c);
  }

  if (g.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"formula", "params", "log_lower", "log_upper",
                    "normalized", "exact_log_count", "inside_sandwich"});
    rows.push_back(
        {formula, params.str(),
         has_lower ? std::to_string(log_lower) : "",
         has_upper ? std::to_string(log_upper) : "",
         has_norm ? std::to_string(normalized) : "",
         exact_log ? std::to_string(*exact_log) : "",
         inside ? (*inside ? "true" : "false") : ""});
    emit_csv(rows);
    return 0;
  }

  out["params"] = params.str();
  if (has_lower) out["log_lower"] = log_lower;
  if (has_upper) out["log_upper"] = log_upper;
  if (has_norm) out["normalized"] = normalized;
  if (exact_log) out["exact_log_count"] = *exact_log;
  if (inside) out["inside_sandwich"] = *inside;
  emit(out);
  return 0;
}

int exit_code_for(const ScdError& e) {
  switch (e.code()) {
    case Errc::budget_exceeded:
    case Errc::size_limit:
      return 3;
    case Errc::invalid_parameter:
    case Errc::out_of_range:
    case Errc::io:
      return 2;
    default:
      return 1;  // a validity check failed
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "symmetric chain decompositions of 2^[n] and [t]^n: construction, "
      "validation, exact counting, uniform sampling, permanent "
      "certificates and count bounds"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global flags after the subcommand too

  GlobalOpts g;
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_flag("--quiet", g.quiet, "suppress progress logs on stderr");
  app.add_option("--threads", g.threads, "worker threads (0 = hardware)");
  app.add_option("--budget", g.budget, "element budget for built posets")
      ->capture_default_str();

  int t = 2, n = 1, slice_level = 0, sample_count = 1;
  std::uint64_t a = 0, b = 0, r = 0, seed = 0;
  double w = 1.0;
  std::vector<double> w_list;
  std::string poset_kind = "boolean", method, in_file, out_file, dump_file,
              cache_dir, pairs, formula, mode = "rational";
  bool use_snmf = false, no_cache = false, minimize = false, with_count = false;

  auto* c_levels = app.add_subcommand("levels", "level sizes of [t]^n");
  c_levels->add_option("--t", t)->required();
  c_levels->add_option("--n", n)->required();

  auto* c_construct =
      app.add_subcommand("construct", "build a reference decomposition");
  c_construct->add_option("--poset", poset_kind)
      ->check(CLI::IsMember({"boolean", "hypergrid"}));
  c_construct->add_option("--t", t);
  c_construct->add_option("--n", n)->required();
  c_construct->add_option("--method", method)
      ->check(CLI::IsMember({"gk", "btk"}))
      ->required();
  c_construct->add_option("--out", out_file, "write the decomposition here");

  auto* c_validate =
      app.add_subcommand("validate", "validate a decomposition file");
  c_validate->add_option("--in", in_file)->required();

  auto* c_count = app.add_subcommand("count", "count all decompositions");
  c_count->add_option("--t", t)->required();
  c_count->add_option("--n", n)->required();
  c_count->add_option("--method", method)
      ->check(CLI::IsMember({"oracle", "layered", "both"}))
      ->required();
  c_count->add_option("--cache-dir", cache_dir, "layer cache directory");
  c_count->add_flag("--no-cache", no_cache, "disable the layer cache");

  auto* c_gadget =
      app.add_subcommand("gadget", "dump the matching gadget of a slice");
  c_gadget->add_option("--t", t)->required();
  c_gadget->add_option("--n", n)->required();
  c_gadget->add_option("--slice", slice_level, "level index of X")->required();
  c_gadget->add_flag("--snmf", use_snmf, "weight by a computed flow");
  c_gadget->add_option("--dump", dump_file, "write the matrix here");

  auto* c_perm = app.add_subcommand("perm", "permanent of a dumped matrix");
  c_perm->add_option("--in", in_file)->required();
  c_perm->add_option("--mode", mode)
      ->check(CLI::IsMember({"rational", "float"}));

  auto* c_bounds = app.add_subcommand("bounds", "evaluate count bounds");
  c_bounds->add_option("--formula", formula)
      ->check(CLI::IsMember({"lemma3", "lemma8", "thm1", "thm2", "trivial"}))
      ->required();
  c_bounds->add_option("--a", a);
  c_bounds->add_option("--b", b);
  c_bounds->add_option("--r", r);
  c_bounds->add_option("--w", w_list, "max weight per layer (repeatable)");
  c_bounds->add_option("--t", t);
  c_bounds->add_option("--n", n);
  c_bounds->add_flag("--with-count", with_count,
                     "also compute the exact count and check the sandwich");

  auto* c_snmf = app.add_subcommand("snmf", "scaled normalized matching flow");
  c_snmf->add_option("--t", t)->required();
  c_snmf->add_option("--n", n)->required();
  c_snmf->add_flag("--minimize-max", minimize, "minimize the max edge weight");
  c_snmf->add_option("--pairs", pairs, "level pair range a..b");
  c_snmf->add_option("--dump", dump_file, "write the flow here");

  auto* c_sample =
      app.add_subcommand("sample", "draw uniform random decompositions");
  c_sample->add_option("--t", t)->required();
  c_sample->add_option("--n", n)->required();
  c_sample->add_option("--seed", seed)->required();
  c_sample->add_option("--count", sample_count)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c_levels->parsed()) return cmd_levels(g, t, n);
    if (c_construct->parsed()) {
      if (poset_kind == "hypergrid" && !c_construct->count("--t"))
        fail(Errc::invalid_parameter, "hypergrid construct needs --t");
      return cmd_construct(g, poset_kind, t, n, method, out_file);
    }
    if (c_validate->parsed()) return cmd_validate(g, in_file);
    if (c_count->parsed())
      return cmd_count(g, t, n, method, cache_dir, no_cache);
    if (c_gadget->parsed())
      return cmd_gadget(g, t, n, slice_level, use_snmf, dump_file);
    if (c_perm->parsed()) return cmd_perm(g, in_file, mode);
    if (c_bounds->parsed())
      return cmd_bounds(g, formula, a, b, r, w, w_list, t, n, with_count);
    if (c_snmf->parsed())
      return cmd_snmf(g, t, n, minimize, pairs, dump_file);
    if (c_sample->parsed()) return cmd_sample(g, t, n, seed, sample_count);
  } catch (const ScdError& e) {
    if (g.format == "json") {
      Json err;
      err["error"] = {{"kind", errc_name(e.code())}, {"message", e.what()}};
      std::cerr << err.dump() << "\n";
    } else {
      std::cerr << "error (" << errc_name(e.code()) << "): " << e.what()
                << "\n";
    }
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
