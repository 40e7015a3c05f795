#include "pcx/io.hpp"

#include <fstream>
#include <sstream>

namespace pcx {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error("ParseError", std::string("missing field '") + key + "'");
  return j.at(key);
}

void expect_kind(const json& j, const std::string& kind) {
  const json& k = field(j, "kind");
  if (!k.is_string() || k.get<std::string>() != kind)
    throw Error("ParseError", "expected kind '" + kind + "'");
}

std::vector<std::string> string_list(const json& j, const char* what) {
  if (!j.is_array()) throw Error("ParseError", std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw Error("ParseError", std::string(what) + " entries must be strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

Mask index_set(const json& j, int n) {
  if (!j.is_array()) throw Error("ParseError", "sets must be arrays of indices");
  Mask m = 0;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw Error("ParseError", "set entries must be integers");
    int i = x.get<int>();
    if (i < 0 || i >= n) throw Error("IndexOutOfRange", "element " + std::to_string(i) + " outside the ground set");
    m |= Mask(1) << i;
  }
  return m;
}

}  // namespace

json rational_json(const Rational& q) { return to_string(q); }

Rational json_rational(const json& j, bool* inexact) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_number_float()) {
      if (inexact) *inexact = true;
      return from_double(j.get<double>());
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error("ParseError", e.what());
  }
  throw Error("ParseError", "expected a rational, got " + j.dump());
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IoError", "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error("ParseError", path + ": " + e.what());
  }
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("IoError", "cannot write " + path);
  out << text;
  if (!out) throw Error("IoError", "write failed for " + path);
}

PosetInput parse_poset(const json& j) {
  expect_kind(j, "poset");
  PosetInput r;
  auto elements = string_list(field(j, "elements"), "elements");
  std::vector<std::pair<std::string, std::string>> covers;
  if (j.contains("covers")) {
    const json& c = j.at("covers");
    if (!c.is_array()) throw Error("ParseError", "covers must be an array");
    for (const auto& e : c) {
      auto pair = string_list(e, "cover");
      if (pair.size() != 2) throw Error("ParseError", "each cover is a pair [lower, upper]");
      covers.emplace_back(pair[0], pair[1]);
    }
  }
  r.poset = Poset::build(elements, covers, &r.warnings);
  if (j.contains("psi")) {
    const json& p = j.at("psi");
    if (!p.is_object()) throw Error("ParseError", "psi must be an object");
    std::map<std::string, Rational> psi;
    for (auto it = p.begin(); it != p.end(); ++it) {
      r.poset.index(it.key());
      psi[it.key()] = json_rational(it.value(), &r.inexact);
    }
    r.psi = std::move(psi);
  }
  return r;
}

json poset_json(const Poset& p, const std::map<std::string, Rational>* psi) {
  json j;
  j["kind"] = "poset";
  j["elements"] = p.labels();
  json covers = json::array();
  for (auto [a, b] : p.cover_pairs()) covers.push_back({p.label(a), p.label(b)});
  j["covers"] = covers;
  if (psi) {
    json w = json::object();
    for (const auto& [k, v] : *psi) w[k] = rational_json(v);
    j["psi"] = w;
  }
  return j;
}

Matroid parse_matroid(const json& j) {
  expect_kind(j, "matroid");
  std::string format = field(j, "format").get<std::string>();
  if (format == "graphic") {
    int n = field(j, "vertices").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : field(j, "edges")) {
      if (!e.is_array() || e.size() != 2) throw Error("ParseError", "edges are pairs of vertex indices");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return Matroid::graphic(n, edges);
  }
  if (format == "bases") {
    int n = field(j, "ground").get<int>();
    std::vector<Mask> bases;
    for (const auto& b : field(j, "bases")) bases.push_back(index_set(b, n));
    return Matroid::from_bases(n, bases);
  }
  if (format == "uniform") return Matroid::uniform(field(j, "rank").get<int>(), field(j, "ground").get<int>());
  throw Error("ParseError", "unknown matroid format '" + format + "'");
}

PathComplex parse_complex(const json& j) {
  expect_kind(j, "complex");
  int d = field(j, "d").get<int>();
  const json& parts_j = field(j, "parts");
  if (!parts_j.is_array() || static_cast<int>(parts_j.size()) != d)
    throw Error("ParseError", "parts must list d label arrays");
  std::vector<std::vector<std::string>> parts;
  for (const auto& p : parts_j) parts.push_back(string_list(p, "part"));
  bool inexact = false;
  std::vector<PathComplex::FacetSpec> facets;
  for (const auto& f : field(j, "facets")) {
    PathComplex::FacetSpec s;
    s.vertices = string_list(field(f, "v"), "facet");
    s.weight = f.contains("w") ? json_rational(f.at("w"), &inexact) : Rational(1);
    facets.push_back(std::move(s));
  }
  return PathComplex::make(parts, facets, !inexact);
}

json complex_json(const PathComplex& X) {
  json j;
  j["kind"] = "complex";
  j["d"] = X.d();
  json parts = json::array();
  for (int i = 0; i < X.d(); ++i) {
    json p = json::array();
    for (int v : X.part(i)) p.push_back(X.vertex(v).label);
    parts.push_back(p);
  }
  j["parts"] = parts;
  json facets = json::array();
  for (std::size_t f = 0; f < X.num_facets(); ++f) {
    json v = json::array();
    for (int x : X.facet(f)) v.push_back(X.vertex(x).label);
    facets.push_back({{"v", v}, {"w", rational_json(X.weight(f))}});
  }
  j["facets"] = facets;
  return j;
}

json face_json(const PathComplex& X, const Face& f) {
  json a = json::array();
  for (int v : f)
    if (v >= 0) a.push_back(X.vertex(v).label);
  return a;
}

}  // namespace pcx
