#pragma once

#include <bit>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rab/building.hpp"

namespace rab {

// An edge with a chosen direction; toward_larger points it from the type-J1
// vertex to the type-J2 vertex.
struct OrientedEdge {
  Cube edge;
  bool toward_larger;
  friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
  friend std::strong_ordering operator<=>(const OrientedEdge& a,
                                          const OrientedEdge& b) {
    if (auto c = a.edge <=> b.edge; c != 0) return c;
    return a.toward_larger <=> b.toward_larger;
  }
};

inline BVertex initial_vertex(const OrientedEdge& e) {
  return e.toward_larger ? bottom_vertex(e.edge) : top_vertex(e.edge);
}

inline BVertex terminal_vertex(const OrientedEdge& e) {
  return e.toward_larger ? top_vertex(e.edge) : bottom_vertex(e.edge);
}

// The direction an edge adds to its lower type.
inline int edge_label(const Cube& e) {
  if (dimension(e) != 1)
    throw domain_error("edge label needs a dimension-1 cube");
  return std::countr_zero(e.j2 & ~e.j1);
}

// Identity of the hyperplane dual to an edge: the label i together with the
// minimal representative of gamma.Gamma_{perp(i)} for any chamber C_gamma
// containing the edge. Two edges are parallel iff their ids are equal.
struct HyperplaneId {
  Element rep;
  int label;
  friend bool operator==(const HyperplaneId&, const HyperplaneId&) = default;
  friend std::strong_ordering operator<=>(const HyperplaneId& a,
                                          const HyperplaneId& b) {
    if (auto c = a.rep <=> b.rep; c != 0) return c;
    return a.label <=> b.label;
  }
};

inline HyperplaneId hyperplane_of(const Cube& e) {
  int i = edge_label(e);
  const DefiningGraph& g = *e.rep.graph();
  return HyperplaneId{coset_min_rep(e.rep, g.perp(vbit(i))), i};
}

inline bool parallel(const Cube& e1, const Cube& e2) {
  return hyperplane_of(e1) == hyperplane_of(e2);
}

// Oriented parallelism: elementary parallelisms inside a 2-cube match the
// toward-larger orientations with each other, so an oriented class is an
// unoriented class plus the shared direction flag.
inline bool oriented_parallel(const OrientedEdge& e1, const OrientedEdge& e2) {
  return e1.toward_larger == e2.toward_larger &&
         hyperplane_of(e1.edge) == hyperplane_of(e2.edge);
}

inline std::string show(const HyperplaneId& h) {
  return "H(" + show(h.rep) + "," + h.rep.graph()->name(h.label) + ")";
}

// The hyperplanes dual to the edges below v, sorted without repeats.
inline std::vector<HyperplaneId> hyperplanes_below(const BVertex& v) {
  std::vector<HyperplaneId> out;
  for (const Cube& e : lower_edges(v)) out.push_back(hyperplane_of(e));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Oriented edges whose initial vertex is v: upper edges point up, lower
// edges point down.
inline std::vector<OrientedEdge> oriented_edges_from(const BVertex& v) {
  std::vector<OrientedEdge> out;
  for (const Cube& e : lower_edges(v)) out.push_back(OrientedEdge{e, false});
  for (const Cube& e : upper_edges(v)) out.push_back(OrientedEdge{e, true});
  return out;
}

// Left translation, acting on cubes, oriented edges, and hyperplane ids.
inline Cube translate(const Element& t, const Cube& q) {
  return Cube{coset_min_rep(multiply(t, q.rep), q.j1), q.j1, q.j2};
}

inline OrientedEdge translate(const Element& t, const OrientedEdge& e) {
  return OrientedEdge{translate(t, e.edge), e.toward_larger};
}

inline HyperplaneId translate(const Element& t, const HyperplaneId& h) {
  const DefiningGraph& g = *h.rep.graph();
  return HyperplaneId{coset_min_rep(multiply(t, h.rep), g.perp(vbit(h.label))),
                      h.label};
}

// Whether two edges incident at v are the two sides of a 2-cube meeting at
// v. The square exists iff the labels differ, the joint type is spherical,
// and some chamber contains both edges; its type interval is then
// [union - both labels, union].
inline bool corner_at(const BVertex& v, const Cube& e1, const Cube& e2) {
  auto touches = [&](const Cube& e) {
    return bottom_vertex(e) == v || top_vertex(e) == v;
  };
  if (!touches(e1) || !touches(e2))
    throw domain_error("corner test needs edges incident at the vertex");
  if (edge_label(e1) == edge_label(e2)) return false;
  const DefiningGraph& g = *v.rep.graph();
  if (!g.is_spherical(e1.j2 | e2.j2)) return false;
  for (const Chamber& c : residue(e1.j1, Chamber{e1.rep}))
    if (same_coset(c.label, e2.rep, e2.j1)) return true;
  return false;
}

// Trivial image in every vertex group. Such elements form the kernel of the
// coordinatewise projection, a normal subgroup of index prod |G_i|.
inline bool in_coordinate_kernel(const Element& a) {
  const DefiningGraph& g = *a.graph();
  for (int v = 0; v < g.size(); ++v)
    if (!retract(a, vbit(v)).is_identity()) return false;
  return true;
}

inline std::vector<Element> coordinate_kernel_ball(const DefiningGraph& g,
                                                   int radius) {
  std::vector<Element> out;
  for (const Element& x : enumerate_ball(g, radius))
    if (in_coordinate_kernel(x)) out.push_back(x);
  return out;
}

// Products of the generators and their inverses whose canonical length stays
// within maxlen, grown to a fixpoint. Always contains the identity; may miss
// short subgroup elements only reachable through longer products.
inline std::vector<Element> subgroup_box(const DefiningGraph& g,
                                         const std::vector<Element>& generators,
                                         int maxlen) {
  std::vector<Element> gens;
  for (const Element& x : generators) {
    detail::check_same_graph(x, identity(g));
    gens.push_back(x);
    gens.push_back(invert(x));
  }
  std::set<Element> seen{identity(g)};
  std::vector<Element> frontier{identity(g)};
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (const Element& x : frontier)
      for (const Element& s : gens) {
        Element y = multiply(x, s);
        if (y.length() <= maxlen && seen.insert(y).second)
          next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

struct SpecialViolation {
  std::string kind;  // "cleanliness" or "niceness"
  std::string witness;
};

struct SpecialReport {
  int ball_radius = 0;
  int max_word_length = 0;
  long long group_elements = 0;
  long long configurations_checked = 0;
  std::vector<SpecialViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks the two parts of acting specially for each listed element, over all
// edge configurations in the radius ball:
//  - cleanliness: g never maps one of two distinct oriented edges with a
//    common initial vertex to an edge oriented-parallel to the other;
//  - niceness: whenever g e1 is parallel to e1' and e2 is parallel to e2',
//    with e1,e2 the sides of a square at v and e1',e2' incident at a common
//    vertex, then e1',e2' are also the sides of a square.
// A finite box of evidence, not a proof.
inline SpecialReport check_special_elements(const DefiningGraph& g,
                                            const std::vector<Element>& box,
                                            int radius) {
  SpecialReport rep;
  rep.ball_radius = radius;
  for (const Element& x : box)
    rep.max_word_length = std::max(rep.max_word_length, x.length());
  rep.group_elements = static_cast<long long>(box.size());

  std::set<BVertex> vset;
  for (const Chamber& c : chamber_ball(g, radius))
    for (const BVertex& v : chamber_vertices(c)) vset.insert(v);

  // Cleanliness.
  for (const BVertex& v : vset) {
    std::vector<OrientedEdge> oes = oriented_edges_from(v);
    std::vector<HyperplaneId> ids;
    for (const OrientedEdge& e : oes) ids.push_back(hyperplane_of(e.edge));
    for (const Element& t : box)
      for (size_t a = 0; a < oes.size(); ++a) {
        HyperplaneId moved = translate(t, ids[a]);
        for (size_t b = 0; b < oes.size(); ++b) {
          if (a == b) continue;
          ++rep.configurations_checked;
          if (moved == ids[b] &&
              oes[a].toward_larger == oes[b].toward_larger)
            rep.violations.push_back(SpecialViolation{
                "cleanliness", "g=" + show(t) + " v=" + show(v) +
                                   " e1=" + show(oes[a].edge) +
                                   " e2=" + show(oes[b].edge)});
        }
      }
  }

  // Niceness. Indexing incident pairs by their hyperplane pair restricts the
  // sweep to configurations where the premise holds; all others pass
  // vacuously.
  struct IncidentPair {
    BVertex v;
    Cube e1, e2;
    bool corner;
  };
  std::vector<IncidentPair> pairs;
  std::map<std::pair<HyperplaneId, HyperplaneId>, std::vector<size_t>> by_ids;
  std::vector<std::pair<BVertex, std::pair<Cube, Cube>>> corners;
  for (const BVertex& v : vset) {
    std::vector<Cube> edges = edges_at(v);
    for (const Cube& e1 : edges)
      for (const Cube& e2 : edges) {
        if (e1 == e2) continue;
        bool corner = corner_at(v, e1, e2);
        by_ids[{hyperplane_of(e1), hyperplane_of(e2)}].push_back(pairs.size());
        pairs.push_back(IncidentPair{v, e1, e2, corner});
        if (corner) corners.push_back({v, {e1, e2}});
      }
  }
  for (const auto& [v, es] : corners) {
    HyperplaneId h2 = hyperplane_of(es.second);
    for (const Element& t : box) {
      auto hit = by_ids.find({translate(t, hyperplane_of(es.first)), h2});
      if (hit == by_ids.end()) continue;
      for (size_t n : hit->second) {
        ++rep.configurations_checked;
        if (!pairs[n].corner)
          rep.violations.push_back(SpecialViolation{
              "niceness", "g=" + show(t) + " v=" + show(v) +
                              " e1=" + show(es.first) +
                              " e2=" + show(es.second) +
                              " v'=" + show(pairs[n].v) +
                              " e1'=" + show(pairs[n].e1) +
                              " e2'=" + show(pairs[n].e2)});
      }
    }
  }
  return rep;
}

inline SpecialReport check_special(const DefiningGraph& g,
                                   const std::vector<Element>& generators,
                                   int radius) {
  return check_special_elements(g, subgroup_box(g, generators, radius), radius);
}

}  // namespace rab
