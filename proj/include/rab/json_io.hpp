#pragma once

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "rab/atlases.hpp"
#include "rab/building.hpp"
#include "rab/fuchsian.hpp"
#include "rab/groupoids.hpp"
#include "rab/hyperplanes.hpp"
#include "rab/verify.hpp"

namespace rab {

// Elements serialize as [[vertex, elt], ...] over the canonical word.
inline nlohmann::json element_json(const Element& a) {
  nlohmann::json out = nlohmann::json::array();
  for (const Syllable& s : a.word()) out.push_back({s.vertex, s.elt});
  return out;
}

// Accepts vertex ids or names in the first slot; the result is normalized,
// so any spelling of the same group element parses to the same Element.
inline Element element_from_json(const DefiningGraph& g,
                                 const nlohmann::json& j) {
  if (!j.is_array()) throw input_error("element: expected an array of pairs");
  std::vector<Syllable> w;
  for (const auto& entry : j) {
    if (!entry.is_array() || entry.size() != 2)
      throw input_error("element: each syllable is a [vertex, elt] pair");
    int v;
    if (entry[0].is_string()) {
      v = g.id_of(entry[0].get<std::string>());
      if (v < 0)
        throw input_error("element: unknown vertex " +
                          entry[0].get<std::string>());
    } else if (entry[0].is_number_integer()) {
      v = entry[0].get<int>();
    } else {
      throw input_error("element: vertex must be an id or a name");
    }
    if (!entry[1].is_number_integer())
      throw input_error("element: elt must be an integer");
    w.push_back({v, entry[1].get<int>()});
  }
  return normal_form(g, w);
}

// Graph spec: {"vertices": [{"name", "order"} | {"name", "table"}],
// "edges": [[name, name], ...]}. Vertex ids follow list order.
inline DefiningGraph graph_from_json(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("vertices") ||
      !spec["vertices"].is_array())
    throw input_error("graph spec: expected an object with a vertices array");
  std::vector<DefiningGraph::VertexGroup> groups;
  std::map<std::string, int> ids;
  for (const auto& v : spec["vertices"]) {
    if (!v.is_object() || !v.contains("name") || !v["name"].is_string())
      throw input_error("graph spec: each vertex needs a string name");
    DefiningGraph::VertexGroup grp;
    grp.name = v["name"].get<std::string>();
    if (!ids.emplace(grp.name, static_cast<int>(groups.size())).second)
      throw input_error("graph spec: duplicate vertex name " + grp.name);
    if (v.contains("table")) {
      if (!v["table"].is_array())
        throw input_error("graph spec: table must be an array of rows");
      for (const auto& row : v["table"]) {
        if (!row.is_array())
          throw input_error("graph spec: table rows must be arrays");
        grp.table.push_back(row.get<std::vector<int>>());
      }
      grp.order = static_cast<int>(grp.table.size());
      for (const auto& row : grp.table)
        if (static_cast<int>(row.size()) != grp.order)
          throw input_error("graph spec: table must be square");
    } else if (v.contains("order") && v["order"].is_number_integer()) {
      grp.order = v["order"].get<int>();
    } else {
      throw input_error("graph spec: vertex " + grp.name +
                        " needs an order or a table");
    }
    groups.push_back(std::move(grp));
  }
  std::vector<std::pair<int, int>> edges;
  if (spec.contains("edges")) {
    if (!spec["edges"].is_array())
      throw input_error("graph spec: edges must be an array");
    for (const auto& e : spec["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() ||
          !e[1].is_string())
        throw input_error("graph spec: each edge is a [name, name] pair");
      auto a = ids.find(e[0].get<std::string>());
      auto b = ids.find(e[1].get<std::string>());
      if (a == ids.end() || b == ids.end())
        throw input_error("graph spec: edge endpoint is not a vertex name");
      edges.push_back({a->second, b->second});
    }
  }
  return DefiningGraph(std::move(groups), edges);
}

inline nlohmann::json graph_json(const DefiningGraph& g) {
  nlohmann::json verts = nlohmann::json::array();
  for (int v = 0; v < g.size(); ++v) {
    bool cyclic = true;
    for (int x = 0; x < g.order(v) && cyclic; ++x)
      for (int y = 0; y < g.order(v) && cyclic; ++y)
        cyclic = g.mul(v, x, y) == (x + y) % g.order(v);
    nlohmann::json entry{{"name", g.name(v)}};
    if (cyclic) {
      entry["order"] = g.order(v);
    } else {
      entry["table"] = detail::copy_group(g, v).table;
    }
    verts.push_back(std::move(entry));
  }
  nlohmann::json edges = nlohmann::json::array();
  for (auto [a, b] : detail::graph_edges(g))
    edges.push_back({g.name(a), g.name(b)});
  return {{"vertices", std::move(verts)}, {"edges", std::move(edges)}};
}

namespace detail {

inline nlohmann::json type_names(const DefiningGraph& g, VSet J) {
  nlohmann::json out = nlohmann::json::array();
  for (int m : vmembers(J)) out.push_back(g.name(m));
  return out;
}

struct Truncation {
  std::vector<Chamber> chambers;  // sorted
  std::vector<BVertex> vertices;  // sorted
  std::vector<Cube> cubes;        // sorted, dimension >= 1
};

inline Truncation truncation(const DefiningGraph& g, int radius) {
  Truncation t;
  t.chambers = chamber_ball(g, radius);
  std::set<BVertex> vs;
  std::set<Cube> qs;
  std::vector<VSet> sph = g.spherical_sets();
  for (const Chamber& c : t.chambers) {
    for (const BVertex& v : chamber_vertices(c)) vs.insert(v);
    for (VSet j2 : sph)
      for (VSet j1 : sph)
        if (j1 != j2 && !(j1 & ~j2))
          qs.insert(Cube{coset_min_rep(c.label, j1), j1, j2});
  }
  t.vertices.assign(vs.begin(), vs.end());
  t.cubes.assign(qs.begin(), qs.end());
  return t;
}

}  // namespace detail

// Chambers, vertices and cubes of the radius ball, with ids given by the
// canonical order. Equal inputs produce byte-identical dumps.
inline nlohmann::json truncation_json(const DefiningGraph& g, int radius) {
  detail::Truncation t = detail::truncation(g, radius);
  nlohmann::json chambers = nlohmann::json::array();
  for (size_t i = 0; i < t.chambers.size(); ++i)
    chambers.push_back({{"id", i},
                        {"label", element_json(t.chambers[i].label)},
                        {"show", show(t.chambers[i].label)}});
  nlohmann::json vertices = nlohmann::json::array();
  for (size_t i = 0; i < t.vertices.size(); ++i)
    vertices.push_back(
        {{"id", i},
         {"rep", element_json(t.vertices[i].rep)},
         {"type", detail::type_names(g, t.vertices[i].type_std)},
         {"rank", rank(t.vertices[i])}});
  nlohmann::json cubes = nlohmann::json::array();
  for (size_t i = 0; i < t.cubes.size(); ++i)
    cubes.push_back({{"id", i},
                     {"rep", element_json(t.cubes[i].rep)},
                     {"j1", detail::type_names(g, t.cubes[i].j1)},
                     {"j2", detail::type_names(g, t.cubes[i].j2)},
                     {"dimension", dimension(t.cubes[i])}});
  return {{"radius", radius},
          {"chambers", std::move(chambers)},
          {"vertices", std::move(vertices)},
          {"cubes", std::move(cubes)}};
}

// 1-skeleton of the radius ball: nodes carry type and rank, edges carry the
// type added between their endpoints.
inline std::string truncation_dot(const DefiningGraph& g, int radius) {
  detail::Truncation t = detail::truncation(g, radius);
  std::map<BVertex, size_t> id;
  for (size_t i = 0; i < t.vertices.size(); ++i) id[t.vertices[i]] = i;
  std::string out = "graph truncation {\n";
  for (size_t i = 0; i < t.vertices.size(); ++i) {
    const BVertex& v = t.vertices[i];
    std::string type;
    for (int m : vmembers(v.type_std)) {
      if (!type.empty()) type += ' ';
      type += g.name(m);
    }
    out += "  v" + std::to_string(i) + " [label=\"" + show(v) +
           "\", type=\"" + type + "\", rank=" + std::to_string(rank(v)) +
           "];\n";
  }
  for (const Cube& q : t.cubes) {
    if (dimension(q) != 1) continue;
    int added = vmembers(q.j2 & ~q.j1)[0];
    out += "  v" + std::to_string(id.at(bottom_vertex(q))) + " -- v" +
           std::to_string(id.at(top_vertex(q))) + " [label=\"" +
           g.name(added) + "\"];\n";
  }
  out += "}\n";
  return out;
}

inline nlohmann::json special_report_json(const SpecialReport& rep) {
  nlohmann::json violations = nlohmann::json::array();
  for (const SpecialViolation& v : rep.violations)
    violations.push_back({{"kind", v.kind}, {"witness", v.witness}});
  return {{"box",
           {{"ball_radius", rep.ball_radius},
            {"max_word_length", rep.max_word_length},
            {"group_elements", rep.group_elements}}},
          {"configurations_checked", rep.configurations_checked},
          {"violations", std::move(violations)},
          {"ok", rep.ok()}};
}

inline nlohmann::json chamber_map_json(const ChamberMap& m) {
  return {{"from", element_json(m.from.label)},
          {"to", element_json(m.to.label)},
          {"sigma", m.sigma}};
}

inline nlohmann::json groupoid_json(const DefiningGraph& g,
                                    const ResidueGroupoid& phi) {
  nlohmann::json maps = nlohmann::json::array();
  for (const auto& [key, m] : phi.adjacent_maps)
    maps.push_back(chamber_map_json(m));
  return {{"J", detail::type_names(g, phi.J)},
          {"base", element_json(phi.base.label)},
          {"radius", phi.radius},
          {"maps", std::move(maps)}};
}

inline nlohmann::json atlas_json(const DefiningGraph& g,
                                 const TypedAtlas& atlas) {
  nlohmann::json typing = nlohmann::json::array();
  for (const auto& [c, sigma] : atlas.typing.tau)
    typing.push_back({{"chamber", element_json(c.label)}, {"sigma", sigma}});
  nlohmann::json actions = nlohmann::json::array();
  for (const auto& [cls, labels] : atlas.actions) {
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& [column, label] : labels)
      cols.push_back(
          {{"column", element_json(column)}, {"label", element_json(label)}});
    actions.push_back({{"class",
                        {{"rep", element_json(cls.rep)},
                         {"type", detail::type_names(g, cls.type_std)}}},
                       {"column_labels", std::move(cols)}});
  }
  nlohmann::json out{{"typing", std::move(typing)},
                     {"actions", std::move(actions)}};
  if (!atlas.typing.global.empty())
    out["global_twist"] = atlas.typing.global;
  return out;
}

inline nlohmann::json extension_json(const AtlasExtension& f) {
  nlohmann::json table = nlohmann::json::array();
  for (const ChamberMap& m : f.table) table.push_back(chamber_map_json(m));
  return {{"seed_from", element_json(f.from.label)},
          {"seed_to", element_json(f.to.label)},
          {"radius", f.radius},
          {"table", std::move(table)}};
}

inline nlohmann::json link_report_json(const LinkReport& rep) {
  return {{"rank0", rep.rank0},
          {"rank1", rep.rank1},
          {"rank2", rep.rank2},
          {"failures", rep.failures},
          {"ok", rep.ok()}};
}

inline nlohmann::json case_report_json(const DefiningGraph& g,
                                       const CaseReport& rep) {
  const PolygonReport& p = rep.polygon;
  auto names = [&](const std::vector<int>& side) {
    nlohmann::json out = nlohmann::json::array();
    for (int v : side) out.push_back(g.name(v));
    return out;
  };
  nlohmann::json polygon{{"is_gen_mgon", p.is_gen_mgon},
                         {"m", p.m},
                         {"girth", p.girth},
                         {"side1", names(p.side1)},
                         {"side2", names(p.side2)},
                         {"thick", p.thick},
                         {"reason", p.reason}};
  if (p.bidegrees)
    polygon["bidegrees"] = {p.bidegrees->first, p.bidegrees->second};
  else
    polygon["bidegrees"] = nullptr;
  nlohmann::json out{{"case", show(rep.which)},
                     {"polygon", std::move(polygon)},
                     {"reason", rep.reason}};
  if (rep.parameters) {
    const auto& q = *rep.parameters;
    out["parameters"] = {
        {"d1", q[0]}, {"d2", q[1]}, {"p1", q[2]}, {"p2", q[3]}};
  } else {
    out["parameters"] = nullptr;
  }
  out["link_check"] =
      rep.link_check ? link_report_json(*rep.link_check) : nullptr;
  return out;
}

inline nlohmann::json incidence_report_json(const IncidenceReport& rep) {
  return {{"case", show(rep.which)},
          {"side_multiplicity", rep.side_multiplicity}};
}

inline nlohmann::json demo_report_json(const CommensurationReport& rep) {
  nlohmann::json samples = nlohmann::json::array();
  for (const CommensurationSample& s : rep.samples)
    samples.push_back({{"lambda", element_json(s.lambda)},
                       {"gamma", element_json(s.gamma)},
                       {"ok", s.ok},
                       {"witness", s.witness}});
  return {{"radius", rep.radius},
          {"ball_size", rep.ball_size},
          {"conjugator_found", rep.conjugator_found},
          {"conjugator_ball", rep.conjugator_ball},
          {"witness", rep.witness},
          {"all_ok", rep.all_ok},
          {"samples", std::move(samples)}};
}

inline nlohmann::json check_results_json(
    const std::vector<CheckResult>& results) {
  nlohmann::json out = nlohmann::json::array();
  for (const CheckResult& r : results)
    out.push_back(
        {{"name", r.name}, {"checked", r.checked}, {"failures", r.failures}});
  return out;
}

}  // namespace rab
