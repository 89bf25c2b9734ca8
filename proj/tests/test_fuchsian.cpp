#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "rab/fuchsian.hpp"
#include "rab/verify.hpp"
#include "test_helpers.hpp"

using namespace rab;
using namespace rabtest;

namespace {

// Point-line incidence graph of the seven-point projective plane: point t
// lies on line j when t is j, j+1 or j+3 mod 7. 3-regular, girth 6,
// diameter 3. Points get ids 0..6 and order p_points, lines 7..13.
DefiningGraph heawood(int p_points, int p_lines) {
  std::vector<DefiningGraph::VertexGroup> groups;
  for (int t = 0; t < 7; ++t)
    groups.push_back({"a" + std::to_string(t), p_points, {}});
  for (int t = 0; t < 7; ++t)
    groups.push_back({"b" + std::to_string(t), p_lines, {}});
  std::vector<std::pair<int, int>> edges;
  for (int j = 0; j < 7; ++j)
    for (int o : {0, 1, 3}) edges.push_back({(j + o) % 7, 7 + j});
  return DefiningGraph(std::move(groups), edges);
}

DefiningGraph cycle(int n, int p) {
  std::vector<DefiningGraph::VertexGroup> groups;
  std::vector<std::pair<int, int>> edges;
  for (int t = 0; t < n; ++t) {
    groups.push_back({"u" + std::to_string(t), p, {}});
    edges.push_back({t, (t + 1) % n});
  }
  return DefiningGraph(std::move(groups), edges);
}

DefiningGraph k23() {
  return DefiningGraph(
      {{"a", 2, {}}, {"b", 2, {}}, {"x", 2, {}}, {"y", 2, {}}, {"z", 2, {}}},
      {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}});
}

// 3-cube on binary strings; edges flip one bit. Bipartite with diameter 3
// but girth 4, so it is not a generalized polygon.
DefiningGraph cube() {
  std::vector<DefiningGraph::VertexGroup> groups;
  std::vector<std::pair<int, int>> edges;
  for (int t = 0; t < 8; ++t) {
    groups.push_back({"q" + std::to_string(t), 2, {}});
    for (int b : {1, 2, 4})
      if (t < (t ^ b)) edges.push_back({t, t ^ b});
  }
  return DefiningGraph(std::move(groups), edges);
}

// Two vertices joined by three disjoint paths of length 3: a generalized
// 3-gon whose sides are not regular (degrees 3 and 2 mix on each side).
DefiningGraph theta() {
  std::vector<DefiningGraph::VertexGroup> groups;
  for (const char* nm : {"u", "v", "a1", "a2", "b1", "b2", "c1", "c2"})
    groups.push_back({nm, 2, {}});
  return DefiningGraph(std::move(groups), {{0, 2},
                                           {2, 3},
                                           {3, 1},
                                           {0, 4},
                                           {4, 5},
                                           {5, 1},
                                           {0, 6},
                                           {6, 7},
                                           {7, 1}});
}

DefiningGraph single_edge() {
  return DefiningGraph({{"a", 2, {}}, {"b", 2, {}}}, {{0, 1}});
}

DefiningGraph path3() {
  return DefiningGraph({{"a", 2, {}}, {"b", 2, {}}, {"c", 2, {}}},
                       {{0, 1}, {1, 2}});
}

DefiningGraph star4() {
  return DefiningGraph(
      {{"c", 2, {}}, {"a", 2, {}}, {"b", 2, {}}, {"d", 2, {}}},
      {{0, 1}, {0, 2}, {0, 3}});
}

DefiningGraph k4() {
  return DefiningGraph(
      {{"a", 2, {}}, {"b", 2, {}}, {"c", 2, {}}, {"d", 2, {}}},
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

// Heawood with one point order raised, so orders are not uniform on a side.
DefiningGraph heawood_uneven() {
  std::vector<DefiningGraph::VertexGroup> groups;
  for (int t = 0; t < 7; ++t)
    groups.push_back({"a" + std::to_string(t), t == 0 ? 3 : 2, {}});
  for (int t = 0; t < 7; ++t)
    groups.push_back({"b" + std::to_string(t), 2, {}});
  std::vector<std::pair<int, int>> edges;
  for (int j = 0; j < 7; ++j)
    for (int o : {0, 1, 3}) edges.push_back({(j + o) % 7, 7 + j});
  return DefiningGraph(std::move(groups), edges);
}

bool mentions(const std::string& text, const std::string& part) {
  return text.find(part) != std::string::npos;
}

}  // namespace

TEST_CASE("polygon reports on the fixture graphs") {
  PolygonReport hw = polygon_report(heawood(2, 2));
  CHECK(hw.is_gen_mgon);
  CHECK(hw.m == 3);
  CHECK(hw.girth == 6);
  CHECK(hw.thick);
  CHECK(hw.bidegrees == std::make_pair(3, 3));
  std::vector<int> points{0, 1, 2, 3, 4, 5, 6};
  std::vector<int> side1 = hw.side1;
  std::sort(side1.begin(), side1.end());
  CHECK(side1 == points);

  PolygonReport hex = polygon_report(cycle(6, 3));
  CHECK(hex.is_gen_mgon);
  CHECK(hex.m == 3);
  CHECK(hex.girth == 6);
  CHECK_FALSE(hex.thick);
  CHECK(hex.bidegrees == std::make_pair(2, 2));

  PolygonReport sq = polygon_report(cycle(4, 2));
  CHECK(sq.is_gen_mgon);
  CHECK(sq.m == 2);
  CHECK(sq.girth == 4);

  PolygonReport kb = polygon_report(k23());
  CHECK(kb.is_gen_mgon);
  CHECK(kb.m == 2);
  CHECK(kb.bidegrees == std::make_pair(3, 2));
  CHECK_FALSE(kb.thick);

  PolygonReport th = polygon_report(theta());
  CHECK(th.is_gen_mgon);
  CHECK(th.m == 3);
  CHECK_FALSE(th.bidegrees.has_value());

  PolygonReport qb = polygon_report(cube());
  CHECK_FALSE(qb.is_gen_mgon);
  CHECK(qb.m == 3);
  CHECK(qb.girth == 4);
  CHECK(mentions(qb.reason, "not twice the diameter"));

  PolygonReport g0r = polygon_report(g0());
  CHECK_FALSE(g0r.is_gen_mgon);
  CHECK(g0r.m == 0);
  CHECK(mentions(g0r.reason, "disconnected"));

  CHECK(mentions(polygon_report(cycle(3, 2)).reason, "not bipartite"));

  PolygonReport ed = polygon_report(single_edge());
  CHECK_FALSE(ed.is_gen_mgon);
  CHECK(ed.m == 1);
  CHECK(mentions(ed.reason, "at least 2"));

  PolygonReport pa = polygon_report(path3());
  CHECK_FALSE(pa.is_gen_mgon);
  CHECK(pa.girth == 0);
  CHECK(mentions(pa.reason, "no circuit"));
  CHECK(mentions(polygon_report(star4()).reason, "no circuit"));
}

TEST_CASE("case classification matches the side parameters") {
  CaseReport hw2 = classify_case(heawood(2, 2));
  CHECK(hw2.which == FuchsianCase::ii);
  CHECK(hw2.parameters == std::array<int, 4>{3, 3, 2, 2});

  CaseReport hw3 = classify_case(heawood(3, 3));
  CHECK(hw3.which == FuchsianCase::i);
  CHECK(hw3.parameters == std::array<int, 4>{3, 3, 3, 3});

  CaseReport hwm = classify_case(heawood(3, 4));
  CHECK(hwm.which == FuchsianCase::i);
  CHECK(hwm.parameters == std::array<int, 4>{3, 3, 3, 4});

  CaseReport hex3 = classify_case(cycle(6, 3));
  CHECK(hex3.which == FuchsianCase::iii);
  CHECK(hex3.parameters == std::array<int, 4>{2, 2, 3, 3});

  CaseReport hex2 = classify_case(cycle(6, 2));
  CHECK(hex2.which == FuchsianCase::none);
  CHECK(hex2.parameters == std::array<int, 4>{2, 2, 2, 2});
  CHECK(mentions(hex2.reason, "fit no case"));

  CaseReport kb = classify_case(k23());
  CHECK(kb.which == FuchsianCase::none);
  CHECK(mentions(kb.reason, "gonality"));

  CaseReport g0r = classify_case(g0());
  CHECK(g0r.which == FuchsianCase::none);
  CHECK_FALSE(g0r.parameters.has_value());
  CHECK(mentions(g0r.reason, "disconnected"));

  CHECK(mentions(classify_case(theta()).reason, "biregular"));
  CHECK(mentions(classify_case(heawood_uneven()).reason, "differ within"));

  CHECK(show(FuchsianCase::i) == "i");
  CHECK(show(FuchsianCase::ii) == "ii");
  CHECK(show(FuchsianCase::iii) == "iii");
  CHECK(show(FuchsianCase::none) == "none");
}

TEST_CASE("links verify over small balls") {
  LinkReport hw = verify_links(heawood(2, 2), 1);
  INFO((hw.failures.empty() ? "" : hw.failures.front()));
  CHECK(hw.ok());
  // 15 ball chambers with distinct centers; panel and rank-2 cosets by the
  // single-syllable count: 14 + 14*13 and 21 + 14*18
  CHECK(hw.rank0 == 15);
  CHECK(hw.rank1 == 196);
  CHECK(hw.rank2 == 273);

  LinkReport hex = verify_links(cycle(6, 3), 1);
  INFO((hex.failures.empty() ? "" : hex.failures.front()));
  CHECK(hex.ok());

  LinkReport hwm = verify_links(heawood(3, 4), 1);
  INFO((hwm.failures.empty() ? "" : hwm.failures.front()));
  CHECK(hwm.ok());

  CHECK_THROWS_AS(verify_links(k23(), 1), domain_error);
  CHECK_THROWS_AS(verify_links(heawood(2, 2), -1), input_error);
}

TEST_CASE("cell incidence counts over the base chamber") {
  IncidenceReport hw = edge_cell_incidence(heawood(2, 2), 1);
  CHECK(hw.which == FuchsianCase::ii);
  CHECK(hw.side_multiplicity == std::map<std::string, int>{{"d1", 3},
                                                           {"d2", 3}});

  IncidenceReport hex = edge_cell_incidence(cycle(6, 3), 1);
  CHECK(hex.which == FuchsianCase::iii);
  CHECK(hex.side_multiplicity == std::map<std::string, int>{{"p1", 3},
                                                            {"p2", 3}});

  IncidenceReport hwm = edge_cell_incidence(heawood(3, 4), 1);
  CHECK(hwm.which == FuchsianCase::i);
  CHECK(hwm.side_multiplicity ==
        std::map<std::string, int>{
            {"d1", 3}, {"d2", 3}, {"p1", 3}, {"p2", 4}});

  IncidenceReport hw3 = edge_cell_incidence(heawood(3, 3), 1);
  CHECK(hw3.side_multiplicity ==
        std::map<std::string, int>{
            {"d1", 3}, {"d2", 3}, {"p1", 3}, {"p2", 3}});

  CHECK_THROWS_AS(edge_cell_incidence(cycle(6, 2), 1), domain_error);
  CHECK_THROWS_AS(edge_cell_incidence(heawood(2, 2), 0), input_error);
}

TEST_CASE("star rigidity and induced squares") {
  CHECK(star_rigid(single_edge()));
  CHECK(star_rigid(cycle(6, 2)));
  CHECK(star_rigid(cycle(3, 2)));
  CHECK(star_rigid(cube()));
  CHECK(star_rigid(k4()));
  // the reflection across a 4-cycle diagonal fixes both neighbours of the
  // swapped pair
  CHECK_FALSE(star_rigid(cycle(4, 2)));
  // the isolated vertex has no neighbours, so any symmetry of the rest
  // violates rigidity there
  CHECK_FALSE(star_rigid(g0()));
  CHECK_FALSE(star_rigid(star4()));
  CHECK_FALSE(star_rigid(heawood(2, 2)));
  CHECK_FALSE(star_rigid(k23()));

  CHECK(has_induced_4cycle(cycle(4, 2)));
  CHECK(has_induced_4cycle(k23()));
  CHECK(has_induced_4cycle(cube()));
  CHECK_FALSE(has_induced_4cycle(heawood(2, 2)));
  CHECK_FALSE(has_induced_4cycle(k4()));
  CHECK_FALSE(has_induced_4cycle(g0()));
  CHECK_FALSE(has_induced_4cycle(cycle(6, 2)));
  CHECK_FALSE(has_induced_4cycle(theta()));
}

TEST_CASE("edge subdivision") {
  DefiningGraph sub = subdivide_edges(heawood(2, 2), 2);
  REQUIRE(sub.size() == 35);
  int mid = sub.id_of("a0-b0");
  REQUIRE(mid >= 0);
  CHECK(sub.order(mid) == 2);
  CHECK(sub.adjacent(sub.id_of("a0"), mid));
  CHECK(sub.adjacent(mid, sub.id_of("b0")));
  PolygonReport rep = polygon_report(sub);
  CHECK(rep.is_gen_mgon);
  CHECK(rep.m == 6);
  CHECK(rep.girth == 12);
  CHECK(rep.bidegrees == std::make_pair(3, 2));
  CHECK_FALSE(rep.thick);

  DefiningGraph chain = subdivide_edges(single_edge(), 3);
  REQUIRE(chain.size() == 4);
  int m1 = chain.id_of("a-b:1"), m2 = chain.id_of("a-b:2");
  REQUIRE(m1 >= 0);
  REQUIRE(m2 >= 0);
  CHECK(chain.adjacent(chain.id_of("a"), m1));
  CHECK(chain.adjacent(m1, m2));
  CHECK(chain.adjacent(m2, chain.id_of("b")));
  CHECK(mentions(polygon_report(chain).reason, "no circuit"));

  DefiningGraph same = subdivide_edges(k23(), 1);
  CHECK(same.size() == 5);
  CHECK(mentions(classify_case(same).reason, "gonality"));

  CHECK_THROWS_AS(subdivide_edges(k23(), 0), input_error);
}

TEST_CASE("circuit enumeration is canonical") {
  std::vector<std::vector<int>> hexes =
      detail::circuits_of_length(heawood(2, 2), 6);
  CHECK(hexes.size() == 28);
  for (const std::vector<int>& c : hexes) {
    CHECK(*std::min_element(c.begin(), c.end()) == c.front());
    CHECK(c[1] < c.back());
  }
  CHECK(detail::circuits_of_length(cube(), 4).size() == 6);
  CHECK(detail::circuits_of_length(cube(), 6).size() == 16);
  std::vector<std::vector<int>> lone =
      detail::circuits_of_length(cycle(6, 2), 6);
  REQUIRE(lone.size() == 1);
  CHECK(lone.front() == std::vector<int>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("fuchsian battery passes on the fixture graphs") {
  std::vector<std::pair<DefiningGraph, int>> runs;
  runs.push_back({g0(), 2});
  runs.push_back({heawood(2, 2), 1});
  runs.push_back({heawood(3, 4), 1});
  runs.push_back({cycle(6, 3), 2});
  runs.push_back({cycle(4, 2), 2});
  runs.push_back({cube(), 2});
  runs.push_back({theta(), 2});
  runs.push_back({k23(), 2});
  runs.push_back({cycle(3, 2), 2});
  runs.push_back({single_edge(), 2});
  for (const auto& [g, radius] : runs) {
    std::vector<CheckResult> rs = verify_fuchsian(g, radius, 20260817);
    for (const CheckResult& r : rs) {
      INFO(g.name(0) << " sized " << g.size() << ": " << r.name << ": "
                     << (r.failures.empty() ? "" : r.failures.front()));
      CHECK(r.ok());
    }
    CHECK(all_ok(rs));
  }
}
