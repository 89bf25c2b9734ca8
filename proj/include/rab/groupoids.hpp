#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rab/building.hpp"

namespace rab {

// A groupoid condition failed; the message names the condition and a witness.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A center-preserving cubical isomorphism between two chambers. Such a map is
// determined by the chamber pair plus the induced permutation of vertex
// types: the vertex of standard type K in `from` goes to the vertex of type
// sigma(K) in `to`. For the type map to carry cubes to cubes, sigma has to be
// an automorphism of the defining graph.
struct ChamberMap {
  Chamber from;
  Chamber to;
  std::vector<int> sigma;
  friend bool operator==(const ChamberMap&, const ChamberMap&) = default;
};

inline VSet sigma_image(const std::vector<int>& sigma, VSet J) {
  VSet out = 0;
  for (int m : vmembers(J)) out |= vbit(sigma[m]);
  return out;
}

inline std::vector<int> identity_permutation(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline ChamberMap identity_chamber_map(const Chamber& c) {
  return ChamberMap{c, c, identity_permutation(c.label.graph()->size())};
}

// Rejects maps whose sigma is not an adjacency- and order-preserving
// permutation. Those are exactly the type maps center-preserving cubical
// isomorphisms can induce: order preservation is the lower-degree condition,
// because the lower degree of a rank-1 vertex of type {m} is |G_m|.
inline void check_chamber_map(const ChamberMap& f) {
  detail::check_same_graph(f.from.label, f.to.label);
  const DefiningGraph& g = *f.from.label.graph();
  if (!g.is_graph_automorphism(f.sigma))
    throw validation_error(
        "degree: chamber map type permutation is not a graph automorphism");
  for (int m = 0; m < g.size(); ++m)
    if (g.order(f.sigma[m]) != g.order(m))
      throw validation_error("degree: chamber map sends " + g.name(m) +
                             " to " + g.name(f.sigma[m]) +
                             " across different group orders");
}

inline BVertex apply(const ChamberMap& f, const BVertex& v) {
  if (!vertex_in_chamber(v, f.from))
    throw domain_error("vertex is not in the source chamber");
  return vertex_of(f.to, sigma_image(f.sigma, v.type_std));
}

// compose(b, a) is b after a.
inline ChamberMap compose(const ChamberMap& b, const ChamberMap& a) {
  if (a.to != b.from) throw domain_error("chamber maps do not chain");
  std::vector<int> s(a.sigma.size());
  for (size_t m = 0; m < s.size(); ++m) s[m] = b.sigma[a.sigma[m]];
  return ChamberMap{a.from, b.to, std::move(s)};
}

inline ChamberMap inverse(const ChamberMap& f) {
  std::vector<int> s(f.sigma.size());
  for (size_t m = 0; m < s.size(); ++m) s[f.sigma[m]] = static_cast<int>(m);
  return ChamberMap{f.to, f.from, std::move(s)};
}

// True when the map is the identity on every vertex the two chambers share.
// The shared vertices are those whose type contains the support of the label
// quotient, so this is equivalent to sigma fixing each such type setwise.
inline bool fixes_intersection(const ChamberMap& f) {
  auto shared = chamber_intersection(f.from, f.to);
  if (!shared) return true;
  for (const BVertex& v : shared->second)
    if (apply(f, v) != v) return false;
  return true;
}

// Conjugation by left translation. Left multiplication preserves types, so
// the type permutation is unchanged.
inline ChamberMap translate(const Element& t, const ChamberMap& f) {
  return ChamberMap{translate(t, f.from), translate(t, f.to), f.sigma};
}

inline std::string show(const ChamberMap& f) {
  const DefiningGraph& g = *f.from.label.graph();
  std::string s = show(f.from.label) + "=>" + show(f.to.label) + " (";
  for (int m = 0; m < g.size(); ++m) {
    if (m) s += " ";
    s += g.name(f.sigma[m]);
  }
  return s + ")";
}

// A residue-groupoid: compatible center-preserving isomorphisms phi_{C1,C2}
// between the chambers of a J-residue, stored on adjacent pairs and composed
// along galleries on demand. For a non-spherical J the chamber list is a
// gallery ball inside the residue and `radius` records the bound; radius -1
// means the full residue.
struct ResidueGroupoid {
  VSet J = 0;
  Chamber base;
  std::vector<Chamber> chambers;
  std::map<std::pair<Element, Element>, ChamberMap> adjacent_maps;
  int radius = -1;
  friend bool operator==(const ResidueGroupoid&, const ResidueGroupoid&) =
      default;
};

inline const ChamberMap& adjacent_map(const ResidueGroupoid& phi,
                                      const Chamber& c1, const Chamber& c2) {
  auto it = phi.adjacent_maps.find({c1.label, c2.label});
  if (it == phi.adjacent_maps.end())
    throw domain_error("no adjacent map for the chamber pair " +
                       show(c1.label) + ", " + show(c2.label));
  return it->second;
}

// The full groupoid map, composed along a gallery of adjacent chambers inside
// the stored enumeration. Path independence is exactly the groupoid cocycle,
// so once the groupoid validates every path gives the same answer.
inline ChamberMap groupoid_map(const ResidueGroupoid& phi, const Chamber& c1,
                               const Chamber& c2) {
  if (c1 == c2) return identity_chamber_map(c1);
  if (auto it = phi.adjacent_maps.find({c1.label, c2.label});
      it != phi.adjacent_maps.end())
    return it->second;
  std::map<Chamber, ChamberMap> reached;
  reached.emplace(c1, identity_chamber_map(c1));
  std::vector<Chamber> layer{c1};
  while (!layer.empty()) {
    std::vector<Chamber> next;
    for (const Chamber& d : layer)
      for (const Chamber& e : phi.chambers) {
        if (reached.count(e) || !adjacency(d, e)) continue;
        ChamberMap m = compose(adjacent_map(phi, d, e), reached.at(d));
        if (e == c2) return m;
        reached.emplace(e, std::move(m));
        next.push_back(e);
      }
    layer = std::move(next);
  }
  throw domain_error("chambers are not connected inside the enumeration");
}

namespace detail {

// Maps from fixed[0] to every chamber, composed along a breadth-first
// spanning tree of the adjacency graph. Requires the enumeration connected.
inline std::map<Chamber, ChamberMap> tree_maps(const ResidueGroupoid& phi) {
  std::map<Chamber, ChamberMap> reached;
  if (phi.chambers.empty()) return reached;
  const Chamber& root = phi.chambers.front();
  reached.emplace(root, identity_chamber_map(root));
  std::vector<Chamber> layer{root};
  while (!layer.empty()) {
    std::vector<Chamber> next;
    for (const Chamber& d : layer)
      for (const Chamber& e : phi.chambers) {
        if (reached.count(e) || !adjacency(d, e)) continue;
        reached.emplace(e, compose(adjacent_map(phi, d, e), reached.at(d)));
        next.push_back(e);
      }
    layer = std::move(next);
  }
  if (reached.size() != phi.chambers.size())
    throw validation_error(
        "cocycle: the chamber enumeration is not gallery-connected");
  return reached;
}

}  // namespace detail

// Full validation of the groupoid conditions over the stored enumeration:
// every ordered adjacent pair carries a well-formed map, composition is
// path-independent (which makes identity and commutativity automatic for the
// composed maps), and the composed map of every intersecting pair fixes the
// shared vertices. Throws naming the failing condition and a witness.
inline void validate_groupoid(const ResidueGroupoid& phi) {
  for (const auto& [key, f] : phi.adjacent_maps) {
    check_chamber_map(f);
    if (f.from.label != key.first || f.to.label != key.second)
      throw validation_error("map stored under the wrong chamber pair: " +
                             show(f));
    if (!adjacency(f.from, f.to))
      throw validation_error("map stored for a non-adjacent pair: " + show(f));
    if (!residue_contains(phi.J, phi.base, f.from))
      throw validation_error("map leaves the residue: " + show(f));
  }
  for (const Chamber& a : phi.chambers)
    for (const Chamber& b : phi.chambers)
      if (adjacency(a, b) &&
          !phi.adjacent_maps.count({a.label, b.label}))
        throw validation_error("missing adjacent map for " + show(a.label) +
                               ", " + show(b.label));
  // Path independence: every adjacent step must agree with the spanning-tree
  // maps. Every gallery loop decomposes into these one-step comparisons.
  std::map<Chamber, ChamberMap> f = detail::tree_maps(phi);
  for (const auto& [key, m] : phi.adjacent_maps)
    if (compose(m, f.at(m.from)) != f.at(m.to))
      throw validation_error(
          "commutativity: composition is path-dependent across " + show(m));
  for (const Chamber& a : phi.chambers)
    for (const Chamber& b : phi.chambers) {
      if (a == b) continue;
      if (!chamber_intersection(a, b)) continue;
      ChamberMap m = compose(f.at(b), inverse(f.at(a)));
      if (!fixes_intersection(m))
        throw validation_error("intersection: map moves a shared vertex: " +
                               show(m));
    }
}

// Builds the groupoid generated by maps on adjacent pairs after checking the
// closure conditions that make gallery composition well-defined: every map
// preserves lower degrees (degree), opposite maps are mutually inverse
// (inverse), composition is consistent inside each rank-1 residue (cocycle),
// maps across square configurations commute (square), and each map fixes the
// vertices its pair shares (intersection). Passing these forces a unique
// consistent value for every non-adjacent pair.
inline ResidueGroupoid extend_groupoid(VSet J, const Chamber& base,
                                       const std::vector<ChamberMap>& maps,
                                       std::vector<Chamber> chambers = {},
                                       int radius = -1) {
  const DefiningGraph& g = *base.label.graph();
  g.check_subset(J);
  if (chambers.empty())
    chambers = residue(J, base,
                       radius < 0 ? std::nullopt : std::optional<int>(radius));
  std::sort(chambers.begin(), chambers.end());
  ResidueGroupoid phi{J, base, chambers, {}, radius};
  for (const ChamberMap& m : maps) {
    check_chamber_map(m);
    if (!adjacency(m.from, m.to))
      throw validation_error("map given for a non-adjacent pair: " + show(m));
    if (!std::binary_search(chambers.begin(), chambers.end(), m.from) ||
        !std::binary_search(chambers.begin(), chambers.end(), m.to))
      throw validation_error("map leaves the chamber set: " + show(m));
    if (!phi.adjacent_maps.emplace(std::pair{m.from.label, m.to.label}, m)
             .second)
      throw validation_error("duplicate map for one chamber pair: " + show(m));
  }
  for (const Chamber& a : chambers)
    for (const Chamber& b : chambers)
      if (adjacency(a, b) && !phi.adjacent_maps.count({a.label, b.label}))
        throw validation_error("missing adjacent map for " + show(a.label) +
                               ", " + show(b.label));

  for (const auto& [key, m] : phi.adjacent_maps) {
    if (adjacent_map(phi, m.to, m.from) != inverse(m))
      throw validation_error("inverse: opposite maps disagree at " + show(m));
    if (!fixes_intersection(m))
      throw validation_error("intersection: map moves a shared vertex: " +
                             show(m));
  }

  // Rank-1 residues: chambers sharing the coset of one vertex direction are
  // pairwise adjacent; composition inside each must close.
  for (int i = 0; i < g.size(); ++i) {
    if (!vin(J, i)) continue;
    std::map<Element, std::vector<Chamber>> buckets;
    for (const Chamber& c : chambers)
      buckets[coset_min_rep(c.label, vbit(i))].push_back(c);
    for (const auto& [rep, cs] : buckets)
      for (const Chamber& a : cs)
        for (const Chamber& b : cs)
          for (const Chamber& c : cs) {
            if (a == b || b == c || a == c) continue;
            if (compose(adjacent_map(phi, b, c), adjacent_map(phi, a, b)) !=
                adjacent_map(phi, a, c))
              throw validation_error("cocycle: composition breaks inside a " +
                                     g.name(i) + " residue at " +
                                     show(a.label) + ", " + show(b.label) +
                                     ", " + show(c.label));
          }
  }

  // Squares: an i-step followed by an orthogonal j-step commutes with taking
  // the steps in the other order.
  for (const Chamber& c1 : chambers)
    for (const Chamber& c2 : chambers) {
      auto i = adjacency(c1, c2);
      if (!i) continue;
      Element delta = multiply(invert(c1.label), c2.label);
      for (const Chamber& d1 : chambers) {
        auto j = adjacency(c1, d1);
        if (!j || !g.adjacent(*i, *j)) continue;
        Chamber d2{multiply(d1.label, delta)};
        if (!std::binary_search(chambers.begin(), chambers.end(), d2))
          continue;
        if (compose(adjacent_map(phi, c2, d2), adjacent_map(phi, c1, c2)) !=
            compose(adjacent_map(phi, d1, d2), adjacent_map(phi, c1, d1)))
          throw validation_error("square: steps " + g.name(*i) + ", " +
                                 g.name(*j) + " do not commute at " +
                                 show(c1.label));
      }
    }
  return phi;
}

// The groupoid induced by the group itself: phi_{C1,C2} is the restriction
// of left multiplication by label2 . label1^-1, which preserves types, so
// every sigma is the identity.
inline ResidueGroupoid gamma_groupoid(VSet J, const Chamber& base,
                                      int radius = -1) {
  std::vector<Chamber> cs = residue(
      J, base, radius < 0 ? std::nullopt : std::optional<int>(radius));
  ResidueGroupoid out{J, base, cs, {}, radius};
  std::vector<int> id = identity_permutation(base.label.graph()->size());
  for (const Chamber& a : cs)
    for (const Chamber& b : cs)
      if (adjacency(a, b))
        out.adjacent_maps.emplace(std::pair{a.label, b.label},
                                  ChamberMap{a, b, id});
  return out;
}

// The action of the group on groupoids: conjugate every map by the
// translation.
inline ResidueGroupoid translate_groupoid(const Element& t,
                                          const ResidueGroupoid& phi) {
  ResidueGroupoid out{phi.J, translate(t, phi.base), {}, {}, phi.radius};
  for (const Chamber& c : phi.chambers)
    out.chambers.push_back(translate(t, c));
  std::sort(out.chambers.begin(), out.chambers.end());
  for (const auto& [key, f] : phi.adjacent_maps) {
    ChamberMap m = translate(t, f);
    out.adjacent_maps.emplace(std::pair{m.from.label, m.to.label},
                              std::move(m));
  }
  return out;
}

// Restriction to the sub-residue of base2 in the directions J2: keeps the
// chambers lying in it and the maps between them.
inline ResidueGroupoid restrict_groupoid(const ResidueGroupoid& phi, VSet J2,
                                         const Chamber& base2) {
  ResidueGroupoid out{J2, base2, {}, {}, phi.radius};
  for (const Chamber& c : phi.chambers)
    if (residue_contains(J2, base2, c)) out.chambers.push_back(c);
  for (const Chamber& a : out.chambers)
    for (const Chamber& b : out.chambers)
      if (adjacency(a, b))
        out.adjacent_maps.emplace(std::pair{a.label, b.label},
                                  groupoid_map(phi, a, b));
  return out;
}

// All vertex permutations preserving adjacency and group orders: the
// candidate type maps for chamber maps.
inline std::vector<std::vector<int>> graph_automorphisms(
    const DefiningGraph& g) {
  if (g.size() > 10)
    throw domain_error("automorphism enumeration is limited to 10 vertices");
  std::vector<int> p = identity_permutation(g.size());
  std::vector<std::vector<int>> out;
  do {
    if (!g.is_graph_automorphism(p)) continue;
    bool orders = true;
    for (int m = 0; m < g.size(); ++m)
      orders = orders && g.order(p[m]) == g.order(m);
    if (orders) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Every groupoid on the finite residue of chambers containing v, in a stable
// order. A groupoid is determined by the maps from one base chamber to the
// others; candidates are the order-preserving automorphisms, pruned by the
// intersection condition on every chamber pair.
inline std::vector<ResidueGroupoid> all_residue_groupoids(const BVertex& v) {
  const DefiningGraph& g = *v.rep.graph();
  std::vector<Chamber> cs = chambers_containing(v);
  std::vector<std::vector<int>> autos = graph_automorphisms(g);
  size_t m = cs.size();
  double combos = 1;
  for (size_t t = 1; t < m; ++t) combos *= static_cast<double>(autos.size());
  if (combos > 1e6)
    throw domain_error("too many groupoid candidates to enumerate");

  // h[t] = sigma of the map from cs[0] to cs[t]; the pair map between
  // cs[s], cs[t] then has sigma h[t] . h[s]^-1.
  std::vector<size_t> pick(m, 0);
  std::vector<std::vector<size_t>> assignments;
  auto pair_ok = [&](size_t s, size_t t) {
    std::vector<int> sig(g.size());
    for (int q = 0; q < g.size(); ++q)
      sig[autos[pick[s]][q]] = autos[pick[t]][q];
    return fixes_intersection(ChamberMap{cs[s], cs[t], std::move(sig)});
  };
  auto descend = [&](auto&& self, size_t t) -> void {
    if (t == m) {
      assignments.push_back(pick);
      return;
    }
    for (size_t k = 0; k < autos.size(); ++k) {
      pick[t] = k;
      bool ok = true;
      for (size_t s = 0; s < t && ok; ++s) ok = pair_ok(s, t) && pair_ok(t, s);
      if (ok) self(self, t + 1);
    }
    pick[t] = 0;
  };
  descend(descend, 1);

  std::vector<ResidueGroupoid> out;
  for (const std::vector<size_t>& h : assignments) {
    ResidueGroupoid phi{v.type_std, cs.front(), cs, {}, -1};
    for (size_t s = 0; s < m; ++s)
      for (size_t t = 0; t < m; ++t) {
        if (!adjacency(cs[s], cs[t])) continue;
        std::vector<int> sig(g.size());
        for (int q = 0; q < g.size(); ++q) sig[autos[h[s]][q]] = autos[h[t]][q];
        phi.adjacent_maps.emplace(std::pair{cs[s].label, cs[t].label},
                                  ChamberMap{cs[s], cs[t], std::move(sig)});
      }
    out.push_back(std::move(phi));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Class order and ascent

// Ordering data for the class hierarchy, realized for the group itself: the
// orbit label of a rank-1 class is its vertex, ranked by a chosen total
// order. Whole classes compare by the binary value of their label sets,
// which is the max-of-symmetric-difference rule.
struct ClassOrder {
  const DefiningGraph* graph = nullptr;
  std::vector<int> label_of;
};

// vertex_order lists the vertices from smallest to largest.
inline ClassOrder class_order_for_gamma(const DefiningGraph& g,
                                        const std::vector<int>& vertex_order) {
  if (static_cast<int>(vertex_order.size()) != g.size())
    throw input_error("vertex order must list every vertex once");
  ClassOrder ord{&g, std::vector<int>(g.size(), -1)};
  for (int r = 0; r < g.size(); ++r) {
    g.check_vertex(vertex_order[r]);
    if (ord.label_of[vertex_order[r]] != -1)
      throw input_error("vertex order repeats a vertex");
    ord.label_of[vertex_order[r]] = r;
  }
  return ord;
}

inline int q_label(const ClassOrder& ord, const BVertex& v) {
  if (rank(v) != 1) throw domain_error("q labels rank-1 vertices");
  return ord.label_of[vmembers(v.type_std)[0]];
}

// Binary value of the label set of J.
inline std::uint64_t orbit_key(const ClassOrder& ord, VSet J) {
  std::uint64_t k = 0;
  for (int m : vmembers(J)) k |= std::uint64_t{1} << ord.label_of[m];
  return k;
}

// The class order on orbits, which are the standard types here.
inline bool class_preceq(const ClassOrder& ord, VSet J1, VSet J2) {
  return orbit_key(ord, J1) <= orbit_key(ord, J2);
}

// The unique chamber containing both a vertex and a rank-1 vertex orthogonal
// to it.
inline Chamber common_chamber(const BVertex& v, const BVertex& u) {
  for (const Chamber& c : chambers_containing(u))
    if (vertex_in_chamber(v, c)) return c;
  throw domain_error("vertices do not share a chamber");
}

// The ascent of v by u: the vertex of their common chamber whose type keeps
// the members of t(v) labeled above u's label, plus u's own vertex. Its type
// always contains t(u) and sits inside t(v) | t(u).
inline BVertex ascent(const BVertex& v, const BVertex& u,
                      const ClassOrder& ord) {
  const DefiningGraph& g = *v.rep.graph();
  if (rank(u) != 1) throw domain_error("ascent needs a rank-1 second vertex");
  int i = vmembers(u.type_std)[0];
  if (!vin(g.perp(v.type_std), i))
    throw domain_error("ascent direction is not orthogonal to the vertex");
  Chamber c = common_chamber(v, u);
  VSet K = u.type_std;
  for (int m : vmembers(v.type_std))
    if (ord.label_of[m] > ord.label_of[i]) K |= vbit(m);
  return vertex_of(c, K);
}

// ---------------------------------------------------------------------------
// Hierarchy

// The hierarchy assigning to each level class the left-multiplication
// groupoid on its class residue. Equivariance and the restriction rule hold
// because every map is left multiplication by the label quotient;
// build_gamma_hierarchy verifies both on a bounded configuration sweep.
struct GammaHierarchy {
  ClassOrder ord;
};

// The map the hierarchy assigns to a chamber pair through the class groupoid
// of w. Checks that the pair really lies in the class residue of w.
inline ChamberMap hierarchy_map(const GammaHierarchy& h, const BVertex& w,
                                const Chamber& c1, const Chamber& c2) {
  (void)h;  // every class groupoid here is left multiplication
  const DefiningGraph& g = *w.rep.graph();
  VSet closed = g.perp_closed(w.type_std);
  if (!residue_contains(closed, Chamber{w.rep}, c1) ||
      !residue_contains(closed, Chamber{w.rep}, c2))
    throw domain_error("chamber pair is outside the class residue of " +
                       show(w));
  return ChamberMap{c1, c2, identity_permutation(g.size())};
}

// The class groupoid of v, enumerated out to the given gallery radius when
// the class residue is infinite.
inline ResidueGroupoid hierarchy_groupoid(const GammaHierarchy& h,
                                          const BVertex& v, int radius = -1) {
  const DefiningGraph& g = *v.rep.graph();
  LevelClassId cls = level_class(v);
  (void)h;
  return gamma_groupoid(g.perp_closed(cls.type_std), Chamber{cls.rep}, radius);
}

namespace detail {

// Sweeps the hierarchy laws over every admissible configuration touching the
// chamber ball: conjugating by a translation matches relabeling the class,
// and the map for a pair agrees between a class and its ascent. Returns the
// number of configurations checked; throws on any violation.
inline long long sweep_hierarchy(const GammaHierarchy& h, int radius) {
  const DefiningGraph& g = *h.ord.graph;
  long long checked = 0;
  std::vector<Chamber> ball = chamber_ball(g, radius);
  std::vector<Element> box = enumerate_ball(g, 1);
  for (const Chamber& c : ball)
    for (const BVertex& v : chamber_vertices(c))
      for (const BVertex& u : chamber_vertices(c)) {
        if (rank(u) != 1) continue;
        int i = vmembers(u.type_std)[0];
        if (!vin(g.perp(v.type_std), i)) continue;
        BVertex w = ascent(v, u, h.ord);
        if (!class_preceq(h.ord, v.type_std, w.type_std) ||
            v.type_std == w.type_std)
          throw validation_error("internal: ascent fails to raise " + show(v));
        for (int e = 1; e < g.order(i); ++e) {
          Chamber cprime{multiply(c.label, normal_form(g, {{i, e}}))};
          ChamberMap lower = hierarchy_map(h, v, c, cprime);
          if (lower != hierarchy_map(h, w, c, cprime))
            throw validation_error(
                "internal: hierarchy restriction breaks at " + show(v));
          for (const Element& t : box) {
            if (hierarchy_map(h, translate(t, v), translate(t, c),
                              translate(t, cprime)) != translate(t, lower))
              throw validation_error(
                  "internal: hierarchy equivariance breaks at " + show(v));
            ++checked;
          }
          ++checked;
        }
      }
  return checked;
}

}  // namespace detail

// Builds the left-multiplication hierarchy and verifies its two laws on a
// bounded sweep. A failure signals an implementation bug, not bad input.
inline GammaHierarchy build_gamma_hierarchy(const ClassOrder& ord,
                                            int check_radius = 1) {
  GammaHierarchy h{ord};
  detail::sweep_hierarchy(h, check_radius);
  return h;
}

// The groupoid the hierarchy induces on the perp-residue of a chamber: each
// adjacent-pair map comes from the class groupoid of the ascended type
// vertex, and the pairs are closed up by gallery composition.
inline ResidueGroupoid phi_from_hierarchy(VSet J, const Chamber& cprime,
                                          const GammaHierarchy& h,
                                          int radius = -1) {
  const DefiningGraph& g = *cprime.label.graph();
  g.check_spherical(J);
  VSet P = g.perp(J);
  std::vector<Chamber> cs = residue(
      P, cprime, radius < 0 ? std::nullopt : std::optional<int>(radius));
  std::vector<ChamberMap> maps;
  for (const Chamber& a : cs)
    for (const Chamber& b : cs) {
      if (!adjacency(a, b)) continue;
      BVertex u = wedge(a, b);
      BVertex v1 = vertex_of(a, J);
      maps.push_back(hierarchy_map(h, ascent(v1, u, h.ord), a, b));
    }
  return extend_groupoid(P, cprime, maps, cs, radius);
}

// Extends a groupoid psi on the chambers through one vertex v to the class
// residue of v: steps orthogonal to the type borrow the hierarchy maps,
// steps inside the type are conjugated through the projection onto the
// section through v. The closure conditions are re-validated on the result.
inline ResidueGroupoid barpsi_extend(const ResidueGroupoid& psi,
                                     const GammaHierarchy& h,
                                     int radius = -1) {
  const DefiningGraph& g = *psi.base.label.graph();
  VSet J = psi.J;
  g.check_spherical(J);
  BVertex v = vertex_of(psi.base, J);
  VSet closed = g.perp_closed(J);
  Chamber root{coset_min_rep(v.rep, closed)};
  std::vector<Chamber> cs = residue(
      closed, root, radius < 0 ? std::nullopt : std::optional<int>(radius));

  // The hierarchy map between chambers of one perp-section, composed along
  // the canonical gallery.
  auto phi_general = [&](const Chamber& c1, const Chamber& c2) -> ChamberMap {
    ChamberMap f = identity_chamber_map(c1);
    std::vector<Chamber> gal = gallery_chambers(gallery_between(c1, c2));
    for (size_t k = 1; k < gal.size(); ++k) {
      BVertex u = wedge(gal[k - 1], gal[k]);
      BVertex v1 = vertex_of(gal[k - 1], J);
      f = compose(hierarchy_map(h, ascent(v1, u, h.ord), gal[k - 1], gal[k]),
                  f);
    }
    return f;
  };

  std::vector<ChamberMap> maps;
  for (const Chamber& a : cs)
    for (const Chamber& b : cs) {
      auto i = adjacency(a, b);
      if (!i) continue;
      if (vin(J, *i)) {
        Chamber a1 = chamber_through(v, a);
        Chamber b1 = chamber_through(v, b);
        ChamberMap down = phi_general(a, a1);
        ChamberMap across = groupoid_map(psi, a1, b1);
        ChamberMap up = inverse(phi_general(b, b1));
        maps.push_back(compose(up, compose(across, down)));
      } else {
        BVertex u = wedge(a, b);
        BVertex v1 = vertex_of(a, J);
        maps.push_back(hierarchy_map(h, ascent(v1, u, h.ord), a, b));
      }
    }
  return extend_groupoid(closed, root, maps, cs, radius);
}

// ---------------------------------------------------------------------------
// Holonomy

// The finite set of groupoids on the chambers through v, together with the
// permutation each element induces by extending, translating back, and
// restricting. perms[k][a] is the index of the image of groupoids[a] under
// elements[k].
struct HolonomyAction {
  BVertex vertex;
  std::vector<ResidueGroupoid> groupoids;
  std::vector<Element> elements;
  std::vector<std::vector<int>> perms;
};

namespace detail {

// (t . barpsi) restricted back to the chambers through v, as the list of its
// adjacent-pair maps.
inline std::map<std::pair<Element, Element>, ChamberMap> holonomy_image(
    const ResidueGroupoid& barpsi, const Element& t, const BVertex& v) {
  std::map<std::pair<Element, Element>, ChamberMap> out;
  Element tinv = invert(t);
  std::vector<Chamber> cs = chambers_containing(v);
  for (const Chamber& a : cs)
    for (const Chamber& b : cs) {
      if (!adjacency(a, b)) continue;
      ChamberMap m = translate(
          t, groupoid_map(barpsi, translate(tinv, a), translate(tinv, b)));
      out.emplace(std::pair{a.label, b.label}, std::move(m));
    }
  return out;
}

inline int holonomy_index(const std::vector<ResidueGroupoid>& all,
                          const std::map<std::pair<Element, Element>,
                                         ChamberMap>& maps) {
  for (size_t k = 0; k < all.size(); ++k)
    if (all[k].adjacent_maps == maps) return static_cast<int>(k);
  throw validation_error("holonomy image is not a groupoid on the residue");
}

}  // namespace detail

// The holonomy action of the given elements at the residue of v. Every
// element has to stabilize the level class of v. The permutation identity
// Y(s)Y(t) = Y(st) is verified on all ordered pairs of the supplied
// elements; a failure throws.
inline HolonomyAction groupoid_holonomy(const std::vector<Element>& elements,
                                        const BVertex& v,
                                        const GammaHierarchy& h) {
  const DefiningGraph& g = *v.rep.graph();
  LevelClassId cls = level_class(v);
  for (const Element& t : elements)
    if (level_class(translate(t, v)) != cls)
      throw domain_error("element does not stabilize the class of " + show(v));

  // Radius covering every translate of the chambers through v used below,
  // including the pairwise products.
  std::vector<Element> all_elements = elements;
  for (const Element& s : elements)
    for (const Element& t : elements)
      all_elements.push_back(multiply(s, t));
  Element rootinv = invert(cls.rep);
  int radius = 1;
  for (const Element& t : all_elements) {
    Element tinv = invert(t);
    for (const Chamber& c : chambers_containing(v)) {
      Element off = multiply(rootinv, multiply(tinv, c.label));
      radius = std::max(radius, static_cast<int>(off.length()));
    }
  }

  HolonomyAction act{v, all_residue_groupoids(v), elements, {}};
  std::vector<ResidueGroupoid> extended;
  for (const ResidueGroupoid& psi : act.groupoids)
    extended.push_back(barpsi_extend(psi, h, radius));

  auto perm_of = [&](const Element& t) {
    std::vector<int> p;
    for (const ResidueGroupoid& bar : extended)
      p.push_back(
          detail::holonomy_index(act.groupoids,
                                 detail::holonomy_image(bar, t, v)));
    return p;
  };
  for (const Element& t : elements) act.perms.push_back(perm_of(t));
  for (size_t s = 0; s < elements.size(); ++s)
    for (size_t t = 0; t < elements.size(); ++t) {
      std::vector<int> prod = perm_of(multiply(elements[s], elements[t]));
      for (size_t a = 0; a < prod.size(); ++a)
        if (act.perms[s][act.perms[t][a]] != prod[a])
          throw validation_error("holonomy composition breaks at " +
                                 show(elements[s]) + ", " + show(elements[t]));
    }
  return act;
}

}  // namespace rab
