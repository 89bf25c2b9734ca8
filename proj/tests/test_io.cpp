#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "rab/json_io.hpp"
#include "test_helpers.hpp"

using namespace rab;
using namespace rabtest;
using nlohmann::json;

namespace {

DefiningGraph cycle(int n, int p) {
  std::vector<DefiningGraph::VertexGroup> groups;
  std::vector<std::pair<int, int>> edges;
  for (int t = 0; t < n; ++t) {
    groups.push_back({"u" + std::to_string(t), p, {}});
    edges.push_back({t, (t + 1) % n});
  }
  return DefiningGraph(std::move(groups), edges);
}

}  // namespace

TEST_CASE("graph specs round trip through JSON") {
  const auto& g = g0();
  DefiningGraph h = graph_from_json(graph_json(g));
  REQUIRE(h.size() == g.size());
  for (int v = 0; v < g.size(); ++v) {
    CHECK(h.name(v) == g.name(v));
    CHECK(h.order(v) == g.order(v));
    for (int w = 0; w < g.size(); ++w)
      CHECK(h.adjacent(v, w) == g.adjacent(v, w));
    for (int x = 0; x < g.order(v); ++x)
      for (int y = 0; y < g.order(v); ++y)
        CHECK(h.mul(v, x, y) == g.mul(v, x, y));
  }

  // A non-cyclic vertex group survives through its multiplication table.
  std::vector<std::vector<int>> klein(4, std::vector<int>(4));
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) klein[x][y] = x ^ y;
  DefiningGraph k({{"a", 4, klein}, {"b", 2, {}}}, {{0, 1}});
  json spec = graph_json(k);
  REQUIRE(spec["vertices"][0].contains("table"));
  CHECK_FALSE(spec["vertices"][1].contains("table"));
  DefiningGraph k2 = graph_from_json(spec);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) CHECK(k2.mul(0, x, y) == (x ^ y));
}

TEST_CASE("malformed graph specs are rejected") {
  CHECK_THROWS_AS(graph_from_json(json::parse("[]")), input_error);
  CHECK_THROWS_AS(graph_from_json(json::parse("{}")), input_error);
  CHECK_THROWS_AS(graph_from_json(json::parse(R"({"vertices": [{}]})")),
                  input_error);
  CHECK_THROWS_AS(graph_from_json(json::parse(
                      R"({"vertices": [{"name": "a"}]})")),
                  input_error);
  CHECK_THROWS_AS(
      graph_from_json(json::parse(
          R"({"vertices": [{"name": "a", "order": 2},
                           {"name": "a", "order": 2}]})")),
      input_error);
  CHECK_THROWS_AS(
      graph_from_json(json::parse(
          R"({"vertices": [{"name": "a", "order": 2}], "edges": [["a"]]})")),
      input_error);
  CHECK_THROWS_AS(
      graph_from_json(json::parse(
          R"({"vertices": [{"name": "a", "order": 2}],
              "edges": [["a", "zz"]]})")),
      input_error);
  CHECK_THROWS_AS(
      graph_from_json(json::parse(
          R"({"vertices": [{"name": "a", "table": [[0, 1]]}]})")),
      input_error);
}

TEST_CASE("elements round trip through JSON") {
  const auto& g = g0();
  std::mt19937_64 rng(20260817);
  for (int trial = 0; trial < 50; ++trial) {
    Element x = random_element(g, rng, 6);
    CHECK(element_from_json(g, element_json(x)) == x);
  }

  // Vertex names and ids are interchangeable; inputs are normalized.
  CHECK(element_from_json(g, json::parse(R"([["k", 1]])")) ==
        normal_form(g, {{2, 1}}));
  CHECK(element_from_json(g, json::parse(R"([[2, 1], [2, 2]])")) ==
        identity(g));

  CHECK_THROWS_AS(element_from_json(g, json::parse("{}")), input_error);
  CHECK_THROWS_AS(element_from_json(g, json::parse("[[0]]")), input_error);
  CHECK_THROWS_AS(element_from_json(g, json::parse(R"([["zz", 1]])")),
                  input_error);
  CHECK_THROWS_AS(element_from_json(g, json::parse("[[0, 5]]")), input_error);
}

TEST_CASE("truncation exports have the derived counts") {
  const auto& g = g0();

  // Radius 0: one chamber, one vertex per spherical type, one cube per
  // proper containment of spherical types.
  rab::detail::Truncation t0 = rab::detail::truncation(g, 0);
  CHECK(t0.chambers.size() == 1);
  CHECK(t0.vertices.size() == 7);
  CHECK(t0.cubes.size() == 10);

  // Radius 1: seven chambers; coset counts per type are 7 (rank 0), 6, 6,
  // 5, 5 (rank 1 for i, j, k, l), 5, 4 (rank 2), summing to 38. Cubes pair
  // a coset with each spherical superset: 6 * 7 + 6 + 6 + 6 + 5 = 65.
  rab::detail::Truncation t1 = rab::detail::truncation(g, 1);
  CHECK(t1.chambers.size() == 7);
  CHECK(t1.vertices.size() == 38);
  CHECK(t1.cubes.size() == 65);

  json j = truncation_json(g, 1);
  CHECK(j["radius"] == 1);
  CHECK(j["chambers"].size() == 7);
  CHECK(j["vertices"].size() == 38);
  CHECK(j["cubes"].size() == 65);
  CHECK(j["chambers"][0]["show"] == "1");

  // Byte-stable dumps: equal configurations give equal strings.
  CHECK(truncation_json(g, 1).dump(2) == j.dump(2));
}

TEST_CASE("the radius-0 skeleton renders to the frozen DOT text") {
  const auto& g = g0();
  const std::string expected =
      "graph truncation {\n"
      "  v0 [label=\"1:{}\", type=\"\", rank=0];\n"
      "  v1 [label=\"1:{i}\", type=\"i\", rank=1];\n"
      "  v2 [label=\"1:{j}\", type=\"j\", rank=1];\n"
      "  v3 [label=\"1:{i,j}\", type=\"i j\", rank=2];\n"
      "  v4 [label=\"1:{k}\", type=\"k\", rank=1];\n"
      "  v5 [label=\"1:{j,k}\", type=\"j k\", rank=2];\n"
      "  v6 [label=\"1:{l}\", type=\"l\", rank=1];\n"
      "  v0 -- v1 [label=\"i\"];\n"
      "  v0 -- v2 [label=\"j\"];\n"
      "  v0 -- v4 [label=\"k\"];\n"
      "  v0 -- v6 [label=\"l\"];\n"
      "  v1 -- v3 [label=\"j\"];\n"
      "  v2 -- v3 [label=\"i\"];\n"
      "  v2 -- v5 [label=\"k\"];\n"
      "  v4 -- v5 [label=\"j\"];\n"
      "}\n";
  CHECK(truncation_dot(g, 0) == expected);
}

TEST_CASE("report serializers expose the computed fields") {
  const auto& g = g0();

  json sp = special_report_json(check_special(g, {}, 1));
  CHECK(sp["ok"] == true);
  CHECK(sp["box"]["ball_radius"] == 1);
  CHECK(sp["violations"].empty());

  DefiningGraph hex3 = cycle(6, 3);
  CaseReport rep = classify_case(hex3);
  rep.link_check = verify_links(hex3, 1);
  json cr = case_report_json(hex3, rep);
  CHECK(cr["case"] == "iii");
  CHECK(cr["parameters"]["p1"] == 3);
  CHECK(cr["polygon"]["m"] == 3);
  CHECK(cr["polygon"]["side1"].size() == 3);
  CHECK(cr["link_check"]["ok"] == true);

  json inc = incidence_report_json(edge_cell_incidence(hex3, 1));
  CHECK(inc["side_multiplicity"] == json({{"p1", 3}, {"p2", 3}}));

  // Identity seed between standard atlases: the table fixes every chamber.
  TypedAtlas plain = standard_atlas(g);
  Chamber base = base_chamber(g);
  AtlasExtension f = extend_automorphism(
      g, seed_permutation(g, plain, base, plain, base), base, base, plain,
      plain, 1);
  json ext = extension_json(f);
  CHECK(ext["radius"] == 1);
  CHECK(ext["table"].size() == 7);
  for (const auto& row : ext["table"]) CHECK(row["from"] == row["to"]);

  std::mt19937_64 rng(3);
  std::vector<Element> lambdas{identity(g),
                               rab::detail::random_element(g, rng, 2)};
  json demo =
      demo_report_json(commensuration_demo(g, standard_atlas(g), lambdas, 1));
  CHECK(demo["all_ok"] == true);
  CHECK(demo["conjugator_found"] == true);
  CHECK(demo["samples"].size() == 2);

  json checks = check_results_json(verify_words(g, 1));
  REQUIRE(!checks.empty());
  for (const auto& c : checks) {
    CHECK(c.contains("name"));
    CHECK(c["failures"].empty());
  }
}
