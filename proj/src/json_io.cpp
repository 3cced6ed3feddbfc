#include "scdkit/json_io.hpp"

#include "scdkit/error.hpp"

namespace scdkit {

namespace {

constexpr std::int64_t kJsonIntMax = 9007199254740991;  // 2^53 - 1

Json encode_elem(const GradedPoset& poset, ElemCode code) {
  if (poset.kind() == PosetKind::boolean_lattice) return code;
  return Json(poset.decode(code));
}

ElemCode decode_elem(const GradedPoset& poset, const Json& j) {
  if (poset.kind() == PosetKind::boolean_lattice) {
    require(j.is_number_unsigned(), Errc::io,
            "boolean encodings must be unsigned integers");
    return j.get<ElemCode>();
  }
  require(j.is_array() && static_cast<int>(j.size()) == poset.n(), Errc::io,
          "hypergrid encodings must be coordinate arrays of length n");
  ElemCode code = 0;
  for (const auto& c : j) {
    require(c.is_number_integer(), Errc::io, "bad coordinate");
    int v = c.get<int>();
    require(v >= 1 && v <= poset.t(), Errc::io,
            "coordinate " + std::to_string(v) + " outside [1, t]");
    code = code * static_cast<ElemCode>(poset.t()) +
           static_cast<ElemCode>(v - 1);
  }
  return code;
}

std::string part_name(VertexRef::Part p) {
  switch (p) {
    case VertexRef::Part::y1: return "y1";
    case VertexRef::Part::x: return "x";
    case VertexRef::Part::y2: return "y2";
    case VertexRef::Part::z: return "z";
  }
  return "?";
}

VertexRef::Part part_from(const std::string& s) {
  if (s == "y1") return VertexRef::Part::y1;
  if (s == "x") return VertexRef::Part::x;
  if (s == "y2") return VertexRef::Part::y2;
  if (s == "z") return VertexRef::Part::z;
  fail(Errc::io, "bad vertex part: " + s);
}

}  // namespace

Json bint_to_json(const Bint& v) {
  if (v >= -kJsonIntMax && v <= kJsonIntMax) return v.convert_to<std::int64_t>();
  return to_decimal(v);
}

Bint bint_from_json(const Json& j) {
  if (j.is_number_integer()) return Bint(j.get<std::int64_t>());
  require(j.is_string(), Errc::io, "expected an integer or a decimal string");
  return parse_decimal(j.get<std::string>());
}

Json poset_to_json(const GradedPoset& poset) {
  Json j;
  j["kind"] =
      poset.kind() == PosetKind::boolean_lattice ? "boolean" : "hypergrid";
  j["t"] = poset.t();
  j["n"] = poset.n();
  Json levels = Json::array();
  for (int i = 0; i < poset.num_levels(); ++i) {
    Json lv = Json::array();
    for (ElemCode e : poset.level(i)) lv.push_back(encode_elem(poset, e));
    levels.push_back(std::move(lv));
  }
  j["levels"] = std::move(levels);
  return j;
}

GradedPoset poset_from_json(const Json& j, std::uint64_t budget) {
  require(j.contains("kind") && j.contains("t") && j.contains("n"), Errc::io,
          "poset object needs kind, t, n");
  std::string kind = j.at("kind").get<std::string>();
  require(kind == "boolean" || kind == "hypergrid", Errc::io,
          "unknown poset kind: " + kind);
  int t = j.at("t").get<int>();
  int n = j.at("n").get<int>();
  GradedPoset poset = GradedPoset::build(
      kind == "boolean" ? PosetKind::boolean_lattice : PosetKind::hypergrid, t,
      n, budget);
  if (j.contains("levels")) {
    const auto& levels = j.at("levels");
    require(static_cast<int>(levels.size()) == poset.num_levels(), Errc::io,
            "level count mismatch");
    for (int i = 0; i < poset.num_levels(); ++i) {
      const auto& lv = levels.at(i);
      require(lv.size() == poset.level(i).size(), Errc::io,
              "level " + std::to_string(i) + " size mismatch");
      for (std::size_t k = 0; k < lv.size(); ++k)
        require(decode_elem(poset, lv.at(k)) == poset.level(i)[k], Errc::io,
                "level " + std::to_string(i) + " is not in canonical order");
    }
  }
  return poset;
}

Json scd_to_json(const GradedPoset& poset, const Scd& scd) {
  Json j;
  j["poset"] = poset_to_json(poset);
  Json chains = Json::array();
  for (const auto& chain : scd.chains) {
    Json c = Json::array();
    for (ElemCode e : chain) c.push_back(encode_elem(poset, e));
    chains.push_back(std::move(c));
  }
  j["chains"] = std::move(chains);
  return j;
}

std::pair<GradedPoset, Scd> scd_from_json(const Json& j,
                                          std::uint64_t budget) {
  require(j.contains("poset") && j.contains("chains"), Errc::io,
          "decomposition object needs poset and chains");
  GradedPoset poset = poset_from_json(j.at("poset"), budget);
  Scd scd;
  for (const auto& c : j.at("chains")) {
    std::vector<ElemCode> chain;
    for (const auto& e : c) chain.push_back(decode_elem(poset, e));
    scd.chains.push_back(std::move(chain));
  }
  return {std::move(poset), std::move(scd)};
}

Json matrix_to_json(const StochasticMatrix& m) {
  Json j;
  j["size"] = m.size;
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size; ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.size; ++c) {
      if (m.entries[i][c] == 0) continue;
      Json cell;
      cell["col"] = c;
      cell["num"] = bint_to_json(numerator(m.entries[i][c]));
      cell["den"] = bint_to_json(denominator(m.entries[i][c]));
      row.push_back(std::move(cell));
    }
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  auto encode_refs = [](const std::vector<VertexRef>& refs) {
    Json out = Json::array();
    for (const auto& r : refs)
      out.push_back({{"part", part_name(r.part)}, {"index", r.index}});
    return out;
  };
  j["vertex_maps"] = {{"rows", encode_refs(m.row_map)},
                      {"cols", encode_refs(m.col_map)}};
  return j;
}

StochasticMatrix matrix_from_json(const Json& j) {
  StochasticMatrix m;
  require(j.contains("size") && j.contains("rows"), Errc::io,
          "matrix object needs size and rows");
  m.size = j.at("size").get<std::size_t>();
  const auto& rows = j.at("rows");
  require(rows.size() == m.size, Errc::io, "row count mismatch");
  m.entries.assign(m.size, std::vector<Rat>(m.size, Rat(0)));
  for (std::size_t i = 0; i < m.size; ++i) {
    for (const auto& cell : rows.at(i)) {
      auto c = cell.at("col").get<std::size_t>();
      require(c < m.size, Errc::io, "column index out of range");
      Bint num = bint_from_json(cell.at("num"));
      Bint den = bint_from_json(cell.at("den"));
      require(den > 0, Errc::io, "denominator must be positive");
      m.entries[i][c] = Rat(num, den);
    }
  }
  if (j.contains("vertex_maps")) {
    auto decode_refs = [](const Json& arr) {
      std::vector<VertexRef> refs;
      for (const auto& r : arr)
        refs.push_back({part_from(r.at("part").get<std::string>()),
                        r.at("index").get<std::uint32_t>()});
      return refs;
    };
    m.row_map = decode_refs(j.at("vertex_maps").at("rows"));
    m.col_map = decode_refs(j.at("vertex_maps").at("cols"));
  }
  return m;
}

Json snmf_to_json(const GradedPoset& poset, const Snmf& flow) {
  Json out = Json::array();
  for (const auto& p : flow.pairs) {
    Json pair;
    pair["i"] = p.lower_level;
    Json edges = Json::array();
    const auto& lower = poset.level(p.lower_level);
    const auto& upper = poset.level(p.lower_level + 1);
    for (std::size_t x = 0; x < p.graph.adj.size(); ++x)
      for (std::size_t e = 0; e < p.graph.adj[x].size(); ++e) {
        Json edge;
        edge["from"] = encode_elem(poset, lower[x]);
        edge["to"] = encode_elem(poset, upper[p.graph.adj[x][e]]);
        edge["weight"] = static_cast<double>(p.num[x][e]) /
                         static_cast<double>(p.den);
        edges.push_back(std::move(edge));
      }
    pair["edges"] = std::move(edges);
    out.push_back(std::move(pair));
  }
  return out;
}

}  // namespace scdkit
