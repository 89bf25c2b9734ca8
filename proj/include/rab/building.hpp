#pragma once

#include <optional>
#include <vector>

#include "rab/element.hpp"

namespace rab {

// A chamber C_gamma of the building, identified by its canonical label.
struct Chamber {
  Element label;
  friend bool operator==(const Chamber&, const Chamber&) = default;
  friend std::strong_ordering operator<=>(const Chamber& a, const Chamber& b) {
    return a.label <=> b.label;
  }
};

inline Chamber base_chamber(const DefiningGraph& g) {
  return Chamber{identity(g)};
}

// A vertex of the building: the coset rep.Gamma_J with its standard type J.
// rep is the coset-minimal representative, so equal structs are equal
// vertices and conversely. rank = |J|.
struct BVertex {
  Element rep;
  VSet type_std;
  friend bool operator==(const BVertex&, const BVertex&) = default;
  friend std::strong_ordering operator<=>(const BVertex& a, const BVertex& b) {
    if (auto c = a.rep <=> b.rep; c != 0) return c;
    return a.type_std <=> b.type_std;
  }
};

inline int rank(const BVertex& v) { return vcount(v.type_std); }

// A cube spans the vertices with types between j1 and j2 in one chamber;
// rep is minimal for j1, so equal structs are equal cubes. dim = |j2 - j1|.
struct Cube {
  Element rep;
  VSet j1;
  VSet j2;
  friend bool operator==(const Cube&, const Cube&) = default;
  friend std::strong_ordering operator<=>(const Cube& a, const Cube& b) {
    if (auto c = a.rep <=> b.rep; c != 0) return c;
    if (auto c = a.j1 <=> b.j1; c != 0) return c;
    return a.j2 <=> b.j2;
  }
};

inline int dimension(const Cube& q) { return vcount(q.j2 & ~q.j1); }

inline BVertex bottom_vertex(const Cube& q) { return BVertex{q.rep, q.j1}; }

inline BVertex top_vertex(const Cube& q) {
  return BVertex{coset_min_rep(q.rep, q.j2), q.j2};
}

// A gallery stored as its start chamber and the syllables read along it;
// chamber k is start.label times the first k letters.
struct Gallery {
  Chamber start;
  std::vector<Syllable> letters;
};

// Identity of a level-equivalence class: the perp-closed coset of any member
// vertex, plus the common standard type.
struct LevelClassId {
  Element rep;
  VSet type_std;
  friend bool operator==(const LevelClassId&, const LevelClassId&) = default;
  friend std::strong_ordering operator<=>(const LevelClassId& a,
                                          const LevelClassId& b) {
    if (auto c = a.rep <=> b.rep; c != 0) return c;
    return a.type_std <=> b.type_std;
  }
};

// The vertex of standard type J in chamber C.
inline BVertex vertex_of(const Chamber& c, VSet J) {
  c.label.graph()->check_spherical(J);
  return BVertex{coset_min_rep(c.label, J), J};
}

inline BVertex center(const Chamber& c) { return BVertex{c.label, 0}; }

inline bool vertex_in_chamber(const BVertex& v, const Chamber& c) {
  return same_coset(v.rep, c.label, v.type_std);
}

// One vertex per spherical type, in spherical-set order.
inline std::vector<BVertex> chamber_vertices(const Chamber& c) {
  const DefiningGraph& g = *c.label.graph();
  std::vector<BVertex> out;
  for (VSet J : g.spherical_sets()) out.push_back(vertex_of(c, J));
  return out;
}

// Nonempty iff delta = label1^-1 label2 has spherical support; then Jmin is
// that support and the shared vertices are those whose type contains Jmin.
inline std::optional<std::pair<VSet, std::vector<BVertex>>>
chamber_intersection(const Chamber& c1, const Chamber& c2) {
  detail::check_same_graph(c1.label, c2.label);
  const DefiningGraph& g = *c1.label.graph();
  Element delta = multiply(invert(c1.label), c2.label);
  VSet jmin = delta.support();
  if (!g.is_spherical(jmin)) return std::nullopt;
  std::vector<BVertex> shared;
  for (VSet J : g.spherical_sets())
    if ((jmin & ~J) == 0) shared.push_back(vertex_of(c1, J));
  return std::make_pair(jmin, std::move(shared));
}

// i when the two chambers differ by a single i-syllable, otherwise nothing.
inline std::optional<int> adjacency(const Chamber& c1, const Chamber& c2) {
  Element delta = multiply(invert(c1.label), c2.label);
  if (delta.length() != 1) return std::nullopt;
  return delta.word()[0].vertex;
}

inline std::vector<Chamber> gallery_chambers(const Gallery& gal) {
  const DefiningGraph& g = *gal.start.label.graph();
  std::vector<Chamber> out{gal.start};
  Element cur = gal.start.label;
  for (const Syllable& s : gal.letters) {
    g.check_vertex(s.vertex);
    if (s.elt <= 0 || s.elt >= g.order(s.vertex))
      throw input_error("gallery letter out of range");
    cur = multiply(cur, normal_form(g, {s}));
    out.push_back(Chamber{cur});
  }
  return out;
}

// The canonical gallery from c1 to c2: its letters spell the canonical word
// of label1^-1 label2, so it stays inside every residue containing both ends.
inline Gallery gallery_between(const Chamber& c1, const Chamber& c2) {
  Element delta = multiply(invert(c1.label), c2.label);
  return Gallery{c1, delta.word()};
}

// Exact membership of d in the J-residue of c.
inline bool residue_contains(VSet J, const Chamber& c, const Chamber& d) {
  return same_coset(c.label, d.label, J);
}

// The chambers {C_{label.w} : w in Gamma_J}. Finite exactly when J is
// spherical; a non-spherical J needs a radius bound on |w|.
inline std::vector<Chamber> residue(VSet J, const Chamber& c,
                                    std::optional<int> radius = std::nullopt) {
  const DefiningGraph& g = *c.label.graph();
  g.check_subset(J);
  std::vector<Chamber> out;
  if (g.is_spherical(J)) {
    for (const Element& w : group_elements(g, J))
      out.push_back(Chamber{multiply(c.label, w)});
  } else {
    if (!radius)
      throw input_error("infinite residue needs an enumeration radius");
    std::set<Element> seen{identity(g)};
    std::vector<Element> layer{identity(g)};
    for (int d = 0; d < *radius && !layer.empty(); ++d) {
      std::vector<Element> next;
      for (const Element& x : layer)
        for (int v : vmembers(J))
          for (int e = 1; e < g.order(v); ++e) {
            Element y = multiply(x, normal_form(g, {{v, e}}));
            if (y.length() == d + 1 && seen.insert(y).second) next.push_back(y);
          }
      layer = std::move(next);
    }
    for (const Element& w : seen) out.push_back(Chamber{multiply(c.label, w)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// All chambers containing v (the J-residue of any one of them).
inline std::vector<Chamber> chambers_containing(const BVertex& v) {
  return residue(v.type_std, Chamber{v.rep});
}

// u <= v iff type(u) is contained in type(v) and some chamber contains both.
// The chambers containing u are u.rep Gamma_{J1}, those containing v are
// v.rep Gamma_{J2}; with J1 inside J2 the cosets meet iff u.rep^-1 v.rep
// lies in Gamma_{J2}.
inline bool leq(const BVertex& u, const BVertex& v) {
  if (u.type_std & ~v.type_std) return false;
  return same_coset(u.rep, v.rep, v.type_std);
}

// The minimal vertex of the (nonempty) intersection of two chambers.
inline BVertex wedge(const Chamber& c1, const Chamber& c2) {
  Element delta = multiply(invert(c1.label), c2.label);
  VSet jmin = delta.support();
  if (!c1.label.graph()->is_spherical(jmin))
    throw domain_error("chambers do not intersect");
  return vertex_of(c1, jmin);
}

// The dimension-1 cubes joining v to a vertex of one lower rank, across all
// chambers containing v.
inline std::vector<Cube> lower_edges(const BVertex& v) {
  std::vector<Cube> out;
  for (const Chamber& c : chambers_containing(v))
    for (int m : vmembers(v.type_std)) {
      VSet j1 = v.type_std & ~vbit(m);
      out.push_back(Cube{coset_min_rep(c.label, j1), j1, v.type_std});
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline int lower_degree(const BVertex& v) {
  return static_cast<int>(lower_edges(v).size());
}

// The dimension-1 cubes joining v to a vertex of one higher rank. There is
// exactly one per direction the type can grow, shared by every chamber
// containing v.
inline std::vector<Cube> upper_edges(const BVertex& v) {
  const DefiningGraph& g = *v.rep.graph();
  std::vector<Cube> out;
  for (int m : vmembers(g.perp(v.type_std)))
    out.push_back(Cube{v.rep, v.type_std, v.type_std | vbit(m)});
  return out;
}

// All dimension-1 cubes incident to v, lower ones first.
inline std::vector<Cube> edges_at(const BVertex& v) {
  std::vector<Cube> out = lower_edges(v);
  std::vector<Cube> up = upper_edges(v);
  out.insert(out.end(), up.begin(), up.end());
  return out;
}

// Same-type vertices sitting in i-adjacent chambers for some i orthogonal to
// the type. Writing delta for the quotient of the reps, such an i exists iff
// delta lies in Gamma_{J u {i}} with nontrivial G_i part.
inline bool level_adjacent(const BVertex& v1, const BVertex& v2) {
  if (v1.type_std != v2.type_std || v1 == v2) return false;
  const DefiningGraph& g = *v1.rep.graph();
  Element delta = multiply(invert(v1.rep), v2.rep);
  for (int m : vmembers(g.perp(v1.type_std))) {
    if (delta.support() & ~(v1.type_std | vbit(m))) continue;
    if (!retract(delta, vbit(m)).is_identity()) return true;
  }
  return false;
}

// Identity of the level-equivalence class of v: two vertices are related by
// a chain of level adjacencies iff they have the same type and the same
// perp-closed coset.
inline LevelClassId level_class(const BVertex& v) {
  const DefiningGraph& g = *v.rep.graph();
  return LevelClassId{coset_min_rep(v.rep, g.perp_closed(v.type_std)),
                      v.type_std};
}

// The rank-1 vertices below u within a chamber containing u: one per member
// of u's type. A representative minimal for the type is minimal for every
// singleton inside it.
inline std::vector<BVertex> one_downset(const BVertex& u) {
  std::vector<BVertex> out;
  for (int m : vmembers(u.type_std)) out.push_back(BVertex{u.rep, vbit(m)});
  return out;
}

// The product decomposition of the perp-closed residue around C: chambers
// C_{g.g1} with g1 in Gamma_J and C_{g.g2} with g2 in Gamma_{J-perp} pair
// off to C_{g.g1.g2}.
inline Chamber product_map(VSet J, const Chamber& c, const Chamber& c1,
                           const Chamber& c2) {
  const DefiningGraph& g = *c.label.graph();
  g.check_spherical(J);
  if (!residue_contains(J, c, c1))
    throw domain_error("first factor is not in the J-residue");
  if (!residue_contains(g.perp(J), c, c2))
    throw domain_error("second factor is not in the perp-residue");
  Element gamma2 = multiply(invert(c.label), c2.label);
  return Chamber{multiply(c1.label, gamma2)};
}

inline std::pair<Chamber, Chamber> product_split(VSet J, const Chamber& c,
                                                 const Chamber& d) {
  const DefiningGraph& g = *c.label.graph();
  g.check_spherical(J);
  Element delta = multiply(invert(c.label), d.label);
  if (delta.support() & ~g.perp_closed(J))
    throw domain_error("chamber is not in the perp-closed residue");
  Element g1 = retract(delta, J);
  Element g2 = retract(delta, g.perp(J));
  return {Chamber{multiply(c.label, g1)}, Chamber{multiply(c.label, g2)}};
}

// The unique chamber containing v inside the perp-residue of c, where c is
// any chamber of the perp-closed residue around v. Writing the offset
// c relative to v.rep as delta = delta_J
// . delta_perp, the section through v is reached by the Gamma_J part alone.
inline Chamber chamber_through(const BVertex& v, const Chamber& c) {
  const DefiningGraph& g = *v.rep.graph();
  Element delta = multiply(invert(v.rep), c.label);
  if (delta.support() & ~g.perp_closed(v.type_std))
    throw domain_error("chamber is not in the class residue of the vertex");
  return Chamber{multiply(v.rep, retract(delta, v.type_std))};
}

// Left translation by a group element.
inline Chamber translate(const Element& t, const Chamber& c) {
  return Chamber{multiply(t, c.label)};
}

inline BVertex translate(const Element& t, const BVertex& v) {
  return BVertex{coset_min_rep(multiply(t, v.rep), v.type_std), v.type_std};
}

// All chambers whose labels have length <= radius, in canonical order.
inline std::vector<Chamber> chamber_ball(const DefiningGraph& g, int radius) {
  std::vector<Chamber> out;
  for (const Element& x : enumerate_ball(g, radius)) out.push_back(Chamber{x});
  return out;
}

inline std::string show(const BVertex& v) {
  return show(v.rep) + ":" + show_set(*v.rep.graph(), v.type_std);
}

inline std::string show(const Cube& q) {
  const DefiningGraph& g = *q.rep.graph();
  return "[" + show(q.rep) + " " + show_set(g, q.j1) + "->" +
         show_set(g, q.j2) + "]";
}

}  // namespace rab
