#pragma once

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rab/building.hpp"

namespace rab {

namespace detail {

inline std::vector<std::pair<int, int>> graph_edges(const DefiningGraph& g) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < g.size(); ++a)
    for (int b = a + 1; b < g.size(); ++b)
      if (g.adjacent(a, b)) out.push_back({a, b});
  return out;
}

inline std::vector<int> bfs_distances(const DefiningGraph& g, int src) {
  std::vector<int> dist(g.size(), -1);
  std::deque<int> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int v : vmembers(g.nbrs(u)))
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push_back(v);
      }
  }
  return dist;
}

// Length of the shortest circuit through the edge (a,b): the edge plus the
// shortest a-b path that avoids it. 0 when the edge is a bridge.
inline int shortest_circuit_through(const DefiningGraph& g, int a, int b) {
  std::vector<int> dist(g.size(), -1);
  std::deque<int> q{a};
  dist[a] = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int v : vmembers(g.nbrs(u))) {
      if ((u == a && v == b) || (u == b && v == a)) continue;
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push_back(v);
      }
    }
  }
  return dist[b] < 0 ? 0 : dist[b] + 1;
}

// Faithful copy of a vertex group, with the table materialized so the copy
// does not depend on how the original was stored.
inline DefiningGraph::VertexGroup copy_group(const DefiningGraph& g, int v) {
  DefiningGraph::VertexGroup grp{g.name(v), g.order(v), {}};
  grp.table.assign(grp.order, std::vector<int>(grp.order, 0));
  for (int x = 0; x < grp.order; ++x)
    for (int y = 0; y < grp.order; ++y) grp.table[x][y] = g.mul(v, x, y);
  return grp;
}

}  // namespace detail

// What the defining graph looks like as a candidate generalized polygon:
// it qualifies iff it is connected, bipartite, and its girth is twice its
// diameter (with diameter at least 2). The gonality is then the diameter.
struct PolygonReport {
  bool is_gen_mgon = false;
  int m = 0;      // graph diameter, 0 when disconnected
  int girth = 0;  // length of a shortest circuit, 0 when there is none
  std::vector<int> side1, side2;  // two-coloring; side1 holds vertex 0
  std::optional<std::pair<int, int>> bidegrees;  // per-side degree if regular
  bool thick = false;                            // every degree at least 3
  std::string reason;  // first disqualifier when is_gen_mgon is false
};

inline PolygonReport polygon_report(const DefiningGraph& g) {
  PolygonReport r;
  const int n = g.size();
  int mindeg = n;
  for (int v = 0; v < n; ++v) mindeg = std::min(mindeg, vcount(g.nbrs(v)));
  r.thick = mindeg >= 3;

  int diam = 0;
  for (int v = 0; v < n; ++v)
    for (int d : detail::bfs_distances(g, v)) {
      if (d < 0) {
        r.reason = "graph is disconnected";
        return r;
      }
      diam = std::max(diam, d);
    }
  r.m = diam;

  std::vector<int> color(n, -1);
  color[0] = 0;
  std::deque<int> q{0};
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int v : vmembers(g.nbrs(u))) {
      if (color[v] < 0) {
        color[v] = 1 - color[u];
        q.push_back(v);
      } else if (color[v] == color[u]) {
        r.reason = "graph is not bipartite";
        return r;
      }
    }
  }
  for (int v = 0; v < n; ++v)
    (color[v] == 0 ? r.side1 : r.side2).push_back(v);
  auto common_degree = [&](const std::vector<int>& side) -> int {
    if (side.empty()) return 0;
    int d = vcount(g.nbrs(side.front()));
    for (int v : side)
      if (vcount(g.nbrs(v)) != d) return 0;
    return d;
  };
  int d1 = common_degree(r.side1), d2 = common_degree(r.side2);
  if (d1 > 0 && d2 > 0) r.bidegrees = {d1, d2};

  for (auto [a, b] : detail::graph_edges(g)) {
    int c = detail::shortest_circuit_through(g, a, b);
    if (c > 0 && (r.girth == 0 || c < r.girth)) r.girth = c;
  }

  if (r.m < 2) {
    r.reason = "diameter must be at least 2";
  } else if (r.girth == 0) {
    r.reason = "graph has no circuit";
  } else if (r.girth != 2 * r.m) {
    r.reason = "girth " + std::to_string(r.girth) +
               " is not twice the diameter " + std::to_string(r.m);
  } else {
    r.is_gen_mgon = true;
  }
  return r;
}

enum class FuchsianCase { none, i, ii, iii };

inline std::string show(FuchsianCase c) {
  switch (c) {
    case FuchsianCase::i:
      return "i";
    case FuchsianCase::ii:
      return "ii";
    case FuchsianCase::iii:
      return "iii";
    default:
      return "none";
  }
}

// Outcome of the per-vertex link pass over a ball of the building.
struct LinkReport {
  long long rank0 = 0, rank1 = 0, rank2 = 0;  // vertices checked per rank
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Classification of the building over a biregular generalized m-gon with
// side-uniform group orders. parameters holds (d1, d2, p1, p2): the degree
// and the group order on each side of the bipartition.
struct CaseReport {
  FuchsianCase which = FuchsianCase::none;
  PolygonReport polygon;
  std::optional<std::array<int, 4>> parameters;
  std::optional<LinkReport> link_check;  // filled by callers that run it
  std::string reason;                    // why no case was assigned
};

// Case (i): degrees and orders all exceed 2. Case (ii): all orders are 2 and
// degrees exceed 2. Case (iii): all degrees are 2 and orders exceed 2.
// Everything else, including gonality below 3, gets no case.
inline CaseReport classify_case(const DefiningGraph& g) {
  CaseReport r;
  r.polygon = polygon_report(g);
  if (!r.polygon.is_gen_mgon) {
    r.reason = "not a generalized m-gon: " + r.polygon.reason;
    return r;
  }
  if (r.polygon.m < 3) {
    r.reason = "gonality must be at least 3";
    return r;
  }
  if (!r.polygon.bidegrees) {
    r.reason = "sides are not biregular";
    return r;
  }
  auto uniform_order = [&](const std::vector<int>& side) -> int {
    int p = g.order(side.front());
    for (int v : side)
      if (g.order(v) != p) return 0;
    return p;
  };
  int p1 = uniform_order(r.polygon.side1);
  int p2 = uniform_order(r.polygon.side2);
  if (p1 == 0 || p2 == 0) {
    r.reason = "vertex group orders differ within a side";
    return r;
  }
  auto [d1, d2] = *r.polygon.bidegrees;
  r.parameters = {{d1, d2, p1, p2}};
  if (d1 > 2 && d2 > 2 && p1 > 2 && p2 > 2) {
    r.which = FuchsianCase::i;
  } else if (p1 == 2 && p2 == 2 && d1 > 2 && d2 > 2) {
    r.which = FuchsianCase::ii;
  } else if (d1 == 2 && d2 == 2 && p1 > 2 && p2 > 2) {
    r.which = FuchsianCase::iii;
  } else {
    r.reason = "parameters d1=" + std::to_string(d1) +
               " d2=" + std::to_string(d2) + " p1=" + std::to_string(p1) +
               " p2=" + std::to_string(p2) + " fit no case";
  }
  return r;
}

// Per-vertex link conditions over the ball: the link of a chamber center is
// the defining graph itself, and the links of panel and rank-2 vertices are
// complete bipartite with each pair joined by exactly one square. Gonality
// at least 3 forces a triangle-free graph, so no vertex has rank above 2.
inline LinkReport verify_links(const DefiningGraph& g, int radius) {
  if (radius < 0) throw input_error("radius must be nonnegative");
  CaseReport cr = classify_case(g);
  if (cr.which == FuchsianCase::none)
    throw domain_error("graph does not classify as a Fuchsian case: " +
                       cr.reason);
  LinkReport rep;
  auto fail = [&](std::string s) {
    if (rep.failures.size() < 16) rep.failures.push_back(std::move(s));
  };
  std::set<BVertex> verts;
  for (const Chamber& c : chamber_ball(g, radius))
    for (const BVertex& v : chamber_vertices(c)) verts.insert(v);
  for (const BVertex& v : verts) {
    if (rank(v) == 0) {
      ++rep.rank0;
      Chamber c{v.rep};
      for (auto [a, b] : detail::graph_edges(g)) {
        BVertex w = vertex_of(c, vbit(a) | vbit(b));
        if (!leq(vertex_of(c, vbit(a)), w) || !leq(vertex_of(c, vbit(b)), w))
          fail("chamber link square is incoherent at " + show(v) + " over " +
               g.name(a) + "," + g.name(b));
      }
    } else if (rank(v) == 1) {
      ++rep.rank1;
      int i = vmembers(v.type_std)[0];
      std::vector<Chamber> panel = chambers_containing(v);
      if (static_cast<int>(panel.size()) != g.order(i))
        fail("panel has the wrong chamber count at " + show(v));
      std::vector<BVertex> uppers;
      for (int j : vmembers(g.nbrs(i)))
        uppers.push_back(
            BVertex{coset_min_rep(v.rep, v.type_std | vbit(j)),
                    v.type_std | vbit(j)});
      for (const BVertex& w : uppers)
        if (!leq(v, w)) fail("upper vertex does not dominate " + show(v));
      for (const Chamber& d : panel)
        for (const BVertex& w : uppers)
          if (!vertex_in_chamber(w, d))
            fail("panel link is not complete bipartite at " + show(v));
    } else if (rank(v) == 2) {
      ++rep.rank2;
      std::vector<int> mem = vmembers(v.type_std);
      int i = mem[0], j = mem[1];
      std::vector<Chamber> res = chambers_containing(v);
      if (static_cast<int>(res.size()) != g.order(i) * g.order(j))
        fail("rank-2 residue has the wrong chamber count at " + show(v));
      std::map<Element, std::set<size_t>> ipanels, jpanels;
      for (size_t t = 0; t < res.size(); ++t) {
        ipanels[coset_min_rep(res[t].label, vbit(i))].insert(t);
        jpanels[coset_min_rep(res[t].label, vbit(j))].insert(t);
      }
      if (static_cast<int>(ipanels.size()) != g.order(j) ||
          static_cast<int>(jpanels.size()) != g.order(i))
        fail("residue link has wrong part sizes at " + show(v));
      for (const auto& [ra, ta] : ipanels)
        for (const auto& [rb, tb] : jpanels) {
          int meet = 0;
          for (size_t x : ta)
            if (tb.count(x)) ++meet;
          if (meet != 1)
            fail("residue link pair is joined by " + std::to_string(meet) +
                 " squares at " + show(v));
        }
    }
  }
  return rep;
}

// Multiplicity of each side orbit of a hyperbolic 2-cell: how many 2-cells
// contain a representative side. Keys d1/d2 are chamber-to-panel sides and
// p1/p2 are panel-to-rank-2 sides, split by the bipartition side carrying
// the panel's type.
struct IncidenceReport {
  FuchsianCase which = FuchsianCase::none;
  std::map<std::string, int> side_multiplicity;
};

namespace detail {

using CellSide = std::pair<BVertex, BVertex>;

inline CellSide make_side(BVertex a, BVertex b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

}  // namespace detail

// The 2-cells are square unions determined by the case: single squares in
// case (i), the four squares around a rank-2 vertex in case (ii), and the
// ring of squares around a chamber center in case (iii). Counting is
// anchored at the base chamber; every cell meeting its boundary sits within
// one step, so any radius >= 1 gives exact counts.
inline IncidenceReport edge_cell_incidence(const DefiningGraph& g,
                                           int radius) {
  if (radius < 1) throw input_error("radius must be at least 1");
  CaseReport cr = classify_case(g);
  if (cr.which == FuchsianCase::none)
    throw domain_error("graph does not classify as a Fuchsian case: " +
                       cr.reason);
  const std::vector<std::pair<int, int>> edges = detail::graph_edges(g);

  auto square_sides = [&](const Chamber& d, int a, int b) {
    BVertex x = center(d);
    BVertex va = vertex_of(d, vbit(a)), vb = vertex_of(d, vbit(b));
    BVertex w = vertex_of(d, vbit(a) | vbit(b));
    return std::vector<detail::CellSide>{
        detail::make_side(x, va), detail::make_side(x, vb),
        detail::make_side(va, w), detail::make_side(vb, w)};
  };
  auto around_rank2 = [&](const BVertex& w) {
    std::vector<detail::CellSide> out;
    for (const Chamber& d : chambers_containing(w))
      for (int t : vmembers(w.type_std))
        out.push_back(detail::make_side(center(d), vertex_of(d, vbit(t))));
    return out;
  };
  auto around_center = [&](const Chamber& d) {
    std::vector<detail::CellSide> out;
    for (auto [a, b] : edges) {
      BVertex w = vertex_of(d, vbit(a) | vbit(b));
      out.push_back(detail::make_side(vertex_of(d, vbit(a)), w));
      out.push_back(detail::make_side(vertex_of(d, vbit(b)), w));
    }
    return out;
  };

  std::map<detail::CellSide, int> count;
  auto add = [&](const std::vector<detail::CellSide>& sides) {
    for (const detail::CellSide& s : sides) ++count[s];
  };
  std::vector<Chamber> ball = chamber_ball(g, radius);
  std::vector<detail::CellSide> rep_sides;
  Chamber base = base_chamber(g);
  if (cr.which == FuchsianCase::i) {
    for (const Chamber& d : ball)
      for (auto [a, b] : edges) add(square_sides(d, a, b));
    rep_sides = square_sides(base, edges[0].first, edges[0].second);
  } else if (cr.which == FuchsianCase::ii) {
    std::set<BVertex> anchors;
    for (const Chamber& d : ball)
      for (auto [a, b] : edges) anchors.insert(vertex_of(d, vbit(a) | vbit(b)));
    for (const BVertex& w : anchors) add(around_rank2(w));
    rep_sides = around_rank2(
        vertex_of(base, vbit(edges[0].first) | vbit(edges[0].second)));
  } else {
    for (const Chamber& d : ball) add(around_center(d));
    rep_sides = around_center(base);
  }

  IncidenceReport out;
  out.which = cr.which;
  VSet s1 = 0;
  for (int v : cr.polygon.side1) s1 |= vbit(v);
  std::map<std::string, std::set<int>> orbit_counts;
  for (const detail::CellSide& s : rep_sides) {
    bool has_center = rank(s.first) == 0 || rank(s.second) == 0;
    const BVertex& panel = rank(s.first) == 1 ? s.first : s.second;
    int i = vmembers(panel.type_std)[0];
    std::string key =
        std::string(has_center ? "d" : "p") + (vin(s1, i) ? "1" : "2");
    orbit_counts[key].insert(count.at(s));
  }
  for (const auto& [key, vals] : orbit_counts) {
    if (vals.size() != 1)
      throw domain_error("side multiplicities differ within the " + key +
                         " orbit");
    out.side_multiplicity[key] = *vals.begin();
  }
  return out;
}

// Replaces every edge by a path of k edges through k-1 fresh order-2
// vertices. Subdividing a thick generalized m-gon this way yields a
// generalized km-gon that is no longer thick.
inline DefiningGraph subdivide_edges(const DefiningGraph& g, int k) {
  if (k < 1) throw input_error("subdivision factor must be at least 1");
  std::vector<DefiningGraph::VertexGroup> groups;
  for (int v = 0; v < g.size(); ++v) groups.push_back(detail::copy_group(g, v));
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : detail::graph_edges(g)) {
    int prev = a;
    for (int t = 1; t < k; ++t) {
      int mid = static_cast<int>(groups.size());
      std::string nm = g.name(a) + "-" + g.name(b);
      if (k > 2) nm += ":" + std::to_string(t);
      groups.push_back({std::move(nm), 2, {}});
      edges.push_back({prev, mid});
      prev = mid;
    }
    edges.push_back({prev, b});
  }
  return DefiningGraph(std::move(groups), edges);
}

// True when some four vertices induce a circuit: exactly four of the six
// pairs are edges and the two non-edges are disjoint.
inline bool has_induced_4cycle(const DefiningGraph& g) {
  const int n = g.size();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
          int verts[4] = {a, b, c, d};
          int missing = 0;
          std::pair<int, int> gaps[2];
          for (int x = 0; x < 4; ++x)
            for (int y = x + 1; y < 4; ++y)
              if (!g.adjacent(verts[x], verts[y])) {
                if (missing < 2) gaps[missing] = {verts[x], verts[y]};
                ++missing;
              }
          if (missing != 2) continue;
          if (gaps[0].first != gaps[1].first &&
              gaps[0].first != gaps[1].second &&
              gaps[0].second != gaps[1].first &&
              gaps[0].second != gaps[1].second)
            return true;
        }
  return false;
}

namespace detail {

// Backtracking search for a non-identity graph automorphism extending the
// partial images in img (-1 means unassigned). Candidates must match the
// assigned vertices' adjacencies exactly.
inline bool nontrivial_completion(const DefiningGraph& g, std::vector<int>& img,
                                  VSet used) {
  const int n = g.size();
  int u = -1;
  for (int v = 0; v < n; ++v)
    if (img[v] < 0) {
      u = v;
      break;
    }
  if (u < 0) {
    for (int v = 0; v < n; ++v)
      if (img[v] != v) return true;
    return false;
  }
  for (int c = 0; c < n; ++c) {
    if (vin(used, c)) continue;
    if (vcount(g.nbrs(c)) != vcount(g.nbrs(u))) continue;
    bool fits = true;
    for (int x = 0; x < n && fits; ++x)
      if (img[x] >= 0 && g.adjacent(u, x) != g.adjacent(c, img[x]))
        fits = false;
    if (!fits) continue;
    img[u] = c;
    if (nontrivial_completion(g, img, used | vbit(c))) return true;
    img[u] = -1;
  }
  return false;
}

}  // namespace detail

// True when, for every vertex, the only graph automorphism fixing each of
// that vertex's neighbours is the identity. The vertex itself need not be
// fixed: a reflection that swaps a vertex across its fixed neighbours is
// the typical violation.
inline bool star_rigid(const DefiningGraph& g) {
  const int n = g.size();
  for (int v = 0; v < n; ++v) {
    std::vector<int> img(n, -1);
    VSet used = 0;
    for (int u : vmembers(g.nbrs(v))) {
      img[u] = u;
      used |= vbit(u);
    }
    if (detail::nontrivial_completion(g, img, used)) return false;
  }
  return true;
}

}  // namespace rab
