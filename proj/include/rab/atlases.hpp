#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rab/building.hpp"
#include "rab/groupoids.hpp"

namespace rab {

// ---------------------------------------------------------------------------
// Typing maps
// ---------------------------------------------------------------------------

// A typing map retypes every vertex while behaving locally like the standard
// typing: inside each chamber the types are an order-preserving graph
// automorphism of the standard ones, and chambers sharing a vertex assign it
// the same type. Stored as per-chamber twists relative to the standard
// typing; chambers absent from the table use `global` when set and the
// identity otherwise. The global slot makes constant twists representable,
// which a sparse per-chamber table cannot be on the whole building.
struct TypingMap {
  std::vector<int> global;                  // empty means identity
  std::map<Chamber, std::vector<int>> tau;  // per-chamber overrides
  friend bool operator==(const TypingMap&, const TypingMap&) = default;
};

namespace detail {

inline void check_typing_twist(const DefiningGraph& g,
                               const std::vector<int>& sigma,
                               const std::string& where) {
  if (!g.is_graph_automorphism(sigma))
    throw validation_error("typing: the twist at " + where +
                           " is not a graph automorphism");
  for (int m = 0; m < g.size(); ++m)
    if (g.order(sigma[m]) != g.order(m))
      throw validation_error("typing: the twist at " + where +
                             " pairs " + g.name(m) + " with " +
                             g.name(sigma[m]) + " across different orders");
}

inline bool is_identity_permutation(const std::vector<int>& sigma) {
  for (size_t m = 0; m < sigma.size(); ++m)
    if (sigma[m] != static_cast<int>(m)) return false;
  return true;
}

inline std::vector<int> inverse_permutation(const std::vector<int>& sigma) {
  std::vector<int> out(sigma.size());
  for (size_t m = 0; m < sigma.size(); ++m)
    out[sigma[m]] = static_cast<int>(m);
  return out;
}

}  // namespace detail

inline std::vector<int> tau_at(const DefiningGraph& g, const TypingMap& t,
                               const Chamber& c) {
  auto it = t.tau.find(c);
  if (it != t.tau.end()) return it->second;
  if (!t.global.empty()) return t.global;
  return identity_permutation(g.size());
}

inline void set_tau(const DefiningGraph& g, TypingMap& t, const Chamber& c,
                    std::vector<int> sigma) {
  detail::check_typing_twist(g, sigma, "chamber " + show(c.label));
  std::vector<int> dflt =
      t.global.empty() ? identity_permutation(g.size()) : t.global;
  if (sigma == dflt)
    t.tau.erase(c);
  else
    t.tau[c] = std::move(sigma);
}

// The type of a vertex, read in its canonical chamber. Every chamber
// containing the vertex must agree with this value; validate_typing checks
// that.
inline VSet vertex_type(const DefiningGraph& g, const TypingMap& t,
                        const BVertex& v) {
  return sigma_image(tau_at(g, t, Chamber{v.rep}), v.type_std);
}

// Checks the typing-map conditions exhaustively on a ball: every stored
// twist is admissible, every ball chamber types each of its vertices the
// way the vertex's canonical chamber does, and level-adjacent rank-1
// vertices get equal types. The last condition follows from the others on
// the full building; sparse tables only cover part of it, so it is checked
// directly.
inline void validate_typing(const DefiningGraph& g, const TypingMap& t,
                            int radius = 2) {
  if (!t.global.empty())
    detail::check_typing_twist(g, t.global, "the global twist");
  for (const auto& [c, sig] : t.tau)
    detail::check_typing_twist(g, sig, "chamber " + show(c.label));
  std::vector<Chamber> ball = chamber_ball(g, radius);
  std::set<BVertex> verts;
  for (const Chamber& c : ball) {
    std::vector<int> tc = tau_at(g, t, c);
    for (const BVertex& v : chamber_vertices(c)) {
      if (sigma_image(tc, v.type_std) != vertex_type(g, t, v))
        throw validation_error("typing: chambers " + show(c.label) + " and " +
                               show(v.rep) + " type the vertex " + show(v) +
                               " differently");
      verts.insert(v);
    }
  }
  std::map<LevelClassId, std::pair<BVertex, VSet>> class_type;
  for (const BVertex& v : verts) {
    VSet tv = vertex_type(g, t, v);
    auto [it, inserted] =
        class_type.emplace(level_class(v), std::pair{v, tv});
    if (!inserted && it->second.second != tv)
      throw validation_error("typing: vertices " + show(it->second.first) +
                             " and " + show(v) +
                             " in one level class are typed differently");
  }
}

// The typing read off a groupoid on the full chamber set: the twist at a
// chamber is the type permutation of its map to the groupoid's base chamber.
inline TypingMap typing_from_groupoid(const ResidueGroupoid& phi) {
  TypingMap out;
  for (const Chamber& c : phi.chambers) {
    std::vector<int> sig = groupoid_map(phi, c, phi.base).sigma;
    if (!detail::is_identity_permutation(sig)) out.tau[c] = sig;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Typed atlases
// ---------------------------------------------------------------------------

// Column labeling of the class residue of a rank-1 vertex of standard type
// {j} and twisted type {i}. The residue factors as (j-panel coordinate) x
// (orthogonal coordinate); the columns are the |G_j| panel coordinates and
// the labeling is a bijection onto G_i. It induces the left-regular action:
// gelt moves the column labeled h to the column labeled gelt.h, keeping the
// orthogonal coordinate. Labelings differing by a right translation of the
// labels induce the same action, so they are stored normalized with the
// identity column labeled by the identity.
using ColumnLabels = std::map<Element, Element>;

// A typed atlas: a typing map plus one simply transitive panel action per
// level class of rank-1 vertices. Classes absent from the table act by the
// default labeling, which matches the index-th element of the acting group
// against the inverse of the index-th column; for the standard typing that
// is right multiplication by the inverse, the action the group itself
// induces. The conditions are class-local, so any assignment of valid
// labelings is a valid atlas.
struct TypedAtlas {
  TypingMap typing;
  std::map<LevelClassId, ColumnLabels> actions;
  friend bool operator==(const TypedAtlas&, const TypedAtlas&) = default;
};

inline TypedAtlas standard_atlas(const DefiningGraph& g) {
  (void)g;  // both tables empty: standard typing, default actions everywhere
  return {};
}

namespace detail {

// The data the atlas needs about the class of a rank-1 vertex.
struct ClassFrame {
  int j = -1;      // standard type member
  int i = -1;      // twisted type member
  Element root;    // minimal representative of the perp-closed coset
  VSet closed = 0;
};

inline ColumnLabels default_labels(const DefiningGraph& g, int j, int i) {
  ColumnLabels out;
  std::vector<Element> cols = group_elements(g, vbit(j));
  std::vector<Element> vals = group_elements(g, vbit(i));
  for (size_t a = 0; a < cols.size(); ++a) out[cols[a]] = invert(vals[a]);
  return out;
}

inline ColumnLabels normalize_labels(ColumnLabels labels,
                                     const DefiningGraph& g) {
  auto it = labels.find(identity(g));
  if (it == labels.end())
    throw validation_error("atlas: labeling is missing the identity column");
  Element h = invert(it->second);
  if (h.is_identity()) return labels;
  for (auto& [w, lab] : labels) lab = multiply(lab, h);
  return labels;
}

inline const Element& label_of(const ColumnLabels& labels,
                               const Element& col) {
  auto it = labels.find(col);
  if (it == labels.end())
    throw validation_error("atlas: labeling is missing column " + show(col));
  return it->second;
}

inline bool is_abelian(const DefiningGraph& g, int v) {
  for (int x = 0; x < g.order(v); ++x)
    for (int y = 0; y < x; ++y)
      if (g.mul(v, x, y) != g.mul(v, y, x)) return false;
  return true;
}

}  // namespace detail

// The product coordinates of a chamber in the class residue of a rank-1
// vertex: (column, section) with the column in G_j and the section in the
// orthogonal factor. The chamber label factors as root.column.section.
inline std::pair<Element, Element> residue_coordinates(const BVertex& v,
                                                       const Chamber& d) {
  const DefiningGraph& g = *v.rep.graph();
  if (rank(v) != 1)
    throw domain_error("residue coordinates need a rank-1 vertex");
  VSet closed = g.perp_closed(v.type_std);
  Element root = coset_min_rep(v.rep, closed);
  Element nu = multiply(invert(root), d.label);
  if (nu.support() & ~closed)
    throw domain_error("chamber is not in the class residue of the vertex");
  Element section = coset_min_rep(nu, v.type_std);
  return {multiply(invert(section), nu), section};
}

namespace detail {

inline ClassFrame class_frame(const DefiningGraph& g, const TypedAtlas& atlas,
                              const BVertex& v) {
  if (rank(v) != 1) throw domain_error("atlas actions live on rank-1 classes");
  ClassFrame f;
  f.j = vmembers(v.type_std)[0];
  f.closed = g.perp_closed(v.type_std);
  f.root = coset_min_rep(v.rep, f.closed);
  f.i = vmembers(vertex_type(g, atlas.typing, v))[0];
  return f;
}

}  // namespace detail

// The stored or default column labeling of the class of v.
inline ColumnLabels class_labels(const DefiningGraph& g,
                                 const TypedAtlas& atlas, const BVertex& v) {
  detail::ClassFrame fr = detail::class_frame(g, atlas, v);
  auto it = atlas.actions.find(level_class(v));
  if (it != atlas.actions.end()) return it->second;
  return detail::default_labels(g, fr.j, fr.i);
}

// Stores a labeling for the class of v, normalized; entries equal to the
// default are pruned so that equal atlases have equal tables.
inline void set_class_labels(const DefiningGraph& g, TypedAtlas& atlas,
                             const BVertex& v, ColumnLabels labels) {
  detail::ClassFrame fr = detail::class_frame(g, atlas, v);
  std::vector<Element> cols = group_elements(g, vbit(fr.j));
  if (labels.size() != cols.size())
    throw validation_error("atlas: labeling has the wrong column count");
  std::set<Element> used;
  for (const Element& w : cols) {
    auto it = labels.find(w);
    if (it == labels.end())
      throw validation_error("atlas: labeling is missing column " + show(w));
    if (it->second.support() & ~vbit(fr.i))
      throw validation_error("atlas: label " + show(it->second) +
                             " is outside the acting group");
    if (!used.insert(it->second).second)
      throw validation_error("atlas: duplicate label " + show(it->second));
  }
  labels = detail::normalize_labels(std::move(labels), g);
  LevelClassId cls = level_class(v);
  if (labels == detail::default_labels(g, fr.j, fr.i))
    atlas.actions.erase(cls);
  else
    atlas.actions[cls] = std::move(labels);
}

// The panel action of the class of v: gelt in G_i moves d to the chamber in
// the same class residue whose column label is gelt times d's own, with the
// same orthogonal coordinate.
inline Chamber atlas_apply(const DefiningGraph& g, const TypedAtlas& atlas,
                           const BVertex& v, const Element& gelt,
                           const Chamber& d) {
  detail::ClassFrame fr = detail::class_frame(g, atlas, v);
  if (gelt.support() & ~vbit(fr.i))
    throw domain_error("element is outside the acting vertex group");
  ColumnLabels labels = class_labels(g, atlas, v);
  auto [col, section] = residue_coordinates(v, d);
  Element target = multiply(gelt, detail::label_of(labels, col));
  for (const auto& [w, lab] : labels)
    if (lab == target)
      return Chamber{multiply(fr.root, multiply(w, section))};
  throw validation_error("atlas: labeling at " + show(v) +
                         " does not cover the acting group");
}

// ---------------------------------------------------------------------------
// Atlas words of galleries
// ---------------------------------------------------------------------------

// One letter: the twisted type of the crossed panel plus the nonidentity
// element of that vertex group moving the first chamber to the second.
struct AtlasLetter {
  int vertex;
  Element element;
  friend bool operator==(const AtlasLetter&, const AtlasLetter&) = default;
  friend std::strong_ordering operator<=>(const AtlasLetter&,
                                          const AtlasLetter&) = default;
};

inline std::string show(const AtlasLetter& s) {
  return "(" + s.element.graph()->name(s.vertex) + "," + show(s.element) + ")";
}

inline AtlasLetter atlas_letter(const DefiningGraph& g,
                                const TypedAtlas& atlas, const Chamber& c1,
                                const Chamber& c2) {
  if (!adjacency(c1, c2))
    throw domain_error("letters exist only for adjacent chamber pairs");
  BVertex v = wedge(c1, c2);
  detail::ClassFrame fr = detail::class_frame(g, atlas, v);
  ColumnLabels labels = class_labels(g, atlas, v);
  Element l1 = detail::label_of(labels, residue_coordinates(v, c1).first);
  Element l2 = detail::label_of(labels, residue_coordinates(v, c2).first);
  return AtlasLetter{fr.i, multiply(l2, invert(l1))};
}

inline std::vector<AtlasLetter> atlas_word(const DefiningGraph& g,
                                           const TypedAtlas& atlas,
                                           const Gallery& gal) {
  std::vector<Chamber> cs = gallery_chambers(gal);
  std::vector<AtlasLetter> out;
  for (size_t k = 0; k + 1 < cs.size(); ++k)
    out.push_back(atlas_letter(g, atlas, cs[k], cs[k + 1]));
  return out;
}

namespace detail {

inline Chamber apply_letter(const DefiningGraph& g, const TypedAtlas& atlas,
                            const Chamber& d, const AtlasLetter& s) {
  g.check_vertex(s.vertex);
  if (s.element.is_identity() || (s.element.support() & ~vbit(s.vertex)))
    throw domain_error(
        "letter element is not a nonidentity element of its vertex group");
  std::vector<int> tau = tau_at(g, atlas.typing, d);
  int j = -1;
  for (int m = 0; m < g.size(); ++m)
    if (tau[m] == s.vertex) {
      j = m;
      break;
    }
  return atlas_apply(g, atlas, vertex_of(d, vbit(j)), s.element, d);
}

}  // namespace detail

// Replays a word from a start chamber: each letter crosses the panel of the
// unique vertex carrying the letter's type. The resulting gallery is the
// only one with this word and start.
inline Gallery gallery_from_word(const DefiningGraph& g,
                                 const TypedAtlas& atlas,
                                 const std::vector<AtlasLetter>& word,
                                 const Chamber& start) {
  Gallery out{start, {}};
  Chamber cur = start;
  for (const AtlasLetter& s : word) {
    Chamber next = detail::apply_letter(g, atlas, cur, s);
    Element step = multiply(invert(cur.label), next.label);
    out.letters.push_back(step.word()[0]);
    cur = next;
  }
  return out;
}

// The end chamber of the gallery read from start2 by the word of gal. It
// depends only on the end chambers of gal, not on the route between them.
inline Chamber transfer_gallery(const DefiningGraph& g,
                                const TypedAtlas& atlas1,
                                const TypedAtlas& atlas2, const Gallery& gal,
                                const Chamber& start2) {
  Gallery image =
      gallery_from_word(g, atlas2, atlas_word(g, atlas1, gal), start2);
  return gallery_chambers(image).back();
}

// ---------------------------------------------------------------------------
// Atlas validation
// ---------------------------------------------------------------------------

// Validates the typing and every class meeting the ball: the labeling is a
// normalized bijection from the columns onto the acting group, and the
// induced action on the panel through each witness chamber is a
// homomorphism, keeps the orthogonal coordinate, and is simply transitive.
inline void validate_atlas(const DefiningGraph& g, const TypedAtlas& atlas,
                           int radius = 2) {
  validate_typing(g, atlas.typing, radius);
  std::set<LevelClassId> seen;
  for (const Chamber& d : chamber_ball(g, radius))
    for (int j = 0; j < g.size(); ++j) {
      BVertex v = vertex_of(d, vbit(j));
      if (!seen.insert(level_class(v)).second) continue;
      detail::ClassFrame fr = detail::class_frame(g, atlas, v);
      if (g.order(fr.i) != g.order(fr.j))
        throw validation_error("atlas: the class of " + show(v) +
                               " pairs groups of different orders");
      ColumnLabels labels = class_labels(g, atlas, v);
      std::vector<Element> cols = group_elements(g, vbit(fr.j));
      std::vector<Element> vals = group_elements(g, vbit(fr.i));
      if (labels.size() != cols.size())
        throw validation_error("atlas: wrong column count at " + show(v));
      std::set<Element> used;
      for (const Element& w : cols) {
        auto it = labels.find(w);
        if (it == labels.end())
          throw validation_error("atlas: missing column " + show(w) + " at " +
                                 show(v));
        if (it->second.support() & ~vbit(fr.i))
          throw validation_error("atlas: label outside the acting group at " +
                                 show(v));
        if (!used.insert(it->second).second)
          throw validation_error("atlas: duplicate label at " + show(v));
      }
      if (!labels.at(identity(g)).is_identity())
        throw validation_error("atlas: labeling at " + show(v) +
                               " is not normalized");
      std::vector<Chamber> panel = residue(v.type_std, d);
      std::set<Chamber> images;
      Element sect = residue_coordinates(v, d).second;
      for (const Element& a : vals) {
        Chamber e = atlas_apply(g, atlas, v, a, d);
        images.insert(e);
        if (residue_coordinates(v, e).second != sect)
          throw validation_error(
              "atlas: action moves the orthogonal coordinate at " + show(v));
        for (const Element& b : vals)
          if (atlas_apply(g, atlas, v, b, e) !=
              atlas_apply(g, atlas, v, multiply(b, a), d))
            throw validation_error("atlas: action is not a homomorphism at " +
                                   show(v));
      }
      if (images != std::set<Chamber>(panel.begin(), panel.end()))
        throw validation_error(
            "atlas: action is not simply transitive on the panel at " +
            show(v));
    }
}

// ---------------------------------------------------------------------------
// Atlases from groupoids
// ---------------------------------------------------------------------------

// The atlas induced by a groupoid on the full chamber set: typing from the
// maps to the base chamber, actions from the seeds (default labelings for
// classes without a seed, matched to the induced types). The groupoid is
// validated first; its intersection property is what makes the typing
// consistent.
inline TypedAtlas atlas_from_groupoid(
    const DefiningGraph& g, const ResidueGroupoid& phi,
    const std::map<LevelClassId, ColumnLabels>& seeds = {}) {
  if (phi.J != g.all())
    throw domain_error("an atlas needs a groupoid on the full chamber set");
  try {
    validate_groupoid(phi);
  } catch (const validation_error& e) {
    throw domain_error(std::string("groupoid is not consistent: ") + e.what());
  }
  TypedAtlas out;
  out.typing = typing_from_groupoid(phi);
  for (const auto& [cls, labels] : seeds)
    set_class_labels(g, out, BVertex{cls.rep, cls.type_std}, labels);
  return out;
}

// The type permutation a translation induces on the base chamber after
// pulling back through the groupoid: the composite of the groupoid map from
// the translated base with left translation. A homomorphism into the
// automorphisms of the base chamber; its kernel is the part of the group
// whose holonomy the groupoid cannot see.
inline std::vector<int> chamber_holonomy(const DefiningGraph& g,
                                         const ResidueGroupoid& phi,
                                         const Element& lambda) {
  (void)g;
  return groupoid_map(phi, translate(lambda, phi.base), phi.base).sigma;
}

// A groupoid on a ball that twists by a fixed involution once per crossing
// of a chosen order-2 letter. The twist must fix the closed star of the
// letter pointwise (the intersection condition on those steps) and square
// to the identity (loop closure in the thin panel). Crossing counts are
// gallery-invariant, so composition is path-independent.
inline ResidueGroupoid parity_twist_groupoid(const DefiningGraph& g, int m,
                                             const std::vector<int>& alpha,
                                             int radius) {
  g.check_vertex(m);
  if (g.order(m) != 2)
    throw domain_error("parity twist needs an order-2 letter");
  detail::check_typing_twist(g, alpha, "the parity twist");
  for (int x : vmembers(g.star(m)))
    if (alpha[x] != x)
      throw domain_error(
          "twist must fix the closed star of the letter pointwise");
  for (int x = 0; x < g.size(); ++x)
    if (alpha[alpha[x]] != x)
      throw domain_error("parity twist must be an involution");
  ResidueGroupoid phi;
  phi.J = g.all();
  phi.base = base_chamber(g);
  phi.chambers = chamber_ball(g, radius);
  phi.radius = radius;
  std::vector<int> id = identity_permutation(g.size());
  for (const Chamber& c1 : phi.chambers)
    for (const Chamber& c2 : phi.chambers) {
      if (c1 == c2) continue;
      std::optional<int> step = adjacency(c1, c2);
      if (!step) continue;
      phi.adjacent_maps[{c1.label, c2.label}] =
          ChamberMap{c1, c2, *step == m ? alpha : id};
    }
  return phi;
}

// ---------------------------------------------------------------------------
// Automorphism extension
// ---------------------------------------------------------------------------

// A ball-sized realization of a rank-preserving automorphism: one
// center-preserving isomorphism per chamber within gallery distance
// `radius` of `from`. Images are exact chambers and may leave the ball.
struct AtlasExtension {
  Chamber from;
  Chamber to;
  int radius = 0;
  std::vector<ChamberMap> table;  // sorted by source chamber
  friend bool operator==(const AtlasExtension&, const AtlasExtension&) =
      default;
};

inline const ChamberMap& extension_at(const AtlasExtension& f,
                                      const Chamber& c) {
  auto it = std::lower_bound(
      f.table.begin(), f.table.end(), c,
      [](const ChamberMap& m, const Chamber& x) { return m.from < x; });
  if (it == f.table.end() || it->from != c)
    throw domain_error("chamber is outside the computed table");
  return *it;
}

inline Chamber extension_image(const AtlasExtension& f, const Chamber& c) {
  return extension_at(f, c).to;
}

inline BVertex extension_image(const AtlasExtension& f, const BVertex& v) {
  for (const Chamber& c : chambers_containing(v)) {
    auto it = std::lower_bound(
        f.table.begin(), f.table.end(), c,
        [](const ChamberMap& m, const Chamber& x) { return m.from < x; });
    if (it != f.table.end() && it->from == c) return apply(*it, v);
  }
  throw domain_error("vertex is outside the computed table");
}

// The unique type-matching seed between two atlas-typed chambers: the
// vertex of twisted type K in c goes to the vertex with the same type in
// cprime.
inline std::vector<int> seed_permutation(const DefiningGraph& g,
                                         const TypedAtlas& atlas1,
                                         const Chamber& c,
                                         const TypedAtlas& atlas2,
                                         const Chamber& cprime) {
  std::vector<int> t1 = tau_at(g, atlas1.typing, c);
  std::vector<int> t2inv =
      detail::inverse_permutation(tau_at(g, atlas2.typing, cprime));
  std::vector<int> out(g.size());
  for (int m = 0; m < g.size(); ++m) out[m] = t2inv[t1[m]];
  return out;
}

// Extends the seed isomorphism c -> cprime to the radius ball by gallery
// transfer: walk the adjacency graph from c, read each step's letter in
// atlas1, and replay it from the image in atlas2. Every edge of the ball is
// replayed, so a chamber reached twice checks that the transfer is
// path-independent; per-chamber vertex maps are the type-matching ones. The
// result is the restriction of the unique atlas-carrying extension of the
// seed.
inline AtlasExtension extend_automorphism(const DefiningGraph& g,
                                          const std::vector<int>& f_sigma,
                                          const Chamber& c,
                                          const Chamber& cprime,
                                          const TypedAtlas& atlas1,
                                          const TypedAtlas& atlas2,
                                          int radius) {
  if (f_sigma != seed_permutation(g, atlas1, c, atlas2, cprime))
    throw domain_error("seed permutation does not match the typing maps");
  if (radius < 0) throw input_error("extension radius must be >= 0");
  std::map<Chamber, Chamber> image{{c, cprime}};
  std::deque<std::pair<Chamber, int>> frontier{{c, 0}};
  while (!frontier.empty()) {
    auto [d, dist] = frontier.front();
    frontier.pop_front();
    const Chamber dimg = image.at(d);
    const bool boundary = dist == radius;
    for (int j = 0; j < g.size(); ++j)
      for (int e = 1; e < g.order(j); ++e) {
        Chamber nb{multiply(d.label, normal_form(g, {{j, e}}))};
        if (boundary && !image.count(nb)) continue;
        Chamber nbimg =
            detail::apply_letter(g, atlas2, dimg, atlas_letter(g, atlas1, d, nb));
        auto [it, inserted] = image.emplace(nb, nbimg);
        if (inserted)
          frontier.emplace_back(nb, dist + 1);
        else if (it->second != nbimg)
          throw validation_error(
              "internal: gallery transfer is path-dependent at " +
              show(nb.label));
      }
  }
  AtlasExtension out{c, cprime, radius, {}};
  for (const auto& [d, dimg] : image) {
    std::vector<int> a = tau_at(g, atlas1.typing, d);
    std::vector<int> binv =
        detail::inverse_permutation(tau_at(g, atlas2.typing, dimg));
    std::vector<int> sigma(g.size());
    for (int m = 0; m < g.size(); ++m) sigma[m] = binv[a[m]];
    out.table.push_back(ChamberMap{d, dimg, std::move(sigma)});
  }
  return out;
}

// Gallery transfer preserves word lengths, so the inverse table is again a
// ball table of the same radius around the image seed.
inline AtlasExtension invert_extension(const AtlasExtension& f) {
  AtlasExtension out{f.to, f.from, f.radius, {}};
  for (const ChamberMap& m : f.table) out.table.push_back(inverse(m));
  std::sort(out.table.begin(), out.table.end(),
            [](const ChamberMap& a, const ChamberMap& b) {
              return a.from < b.from;
            });
  return out;
}

// b after a on a's table; b must cover a's images.
inline AtlasExtension compose_extensions(const AtlasExtension& b,
                                         const AtlasExtension& a) {
  AtlasExtension out{a.from, extension_image(b, a.to), a.radius, {}};
  for (const ChamberMap& m : a.table)
    out.table.push_back(compose(extension_at(b, m.to), m));
  return out;
}

// ---------------------------------------------------------------------------
// The action on atlases
// ---------------------------------------------------------------------------

// The image atlas under left translation. Types are carried along; each
// stored labeling is re-indexed by the column shift of its translated class
// and re-normalized. Default labelings are carried to default labelings, so
// the sparse tables stay exact.
inline TypedAtlas pushforward(const DefiningGraph& g, const Element& t,
                              const TypedAtlas& atlas) {
  TypedAtlas out;
  out.typing.global = atlas.typing.global;
  for (const auto& [c, sig] : atlas.typing.tau)
    out.typing.tau[translate(t, c)] = sig;
  for (const auto& [cls, labels] : atlas.actions) {
    BVertex v{cls.rep, cls.type_std};
    BVertex tv = translate(t, v);
    LevelClassId cls2 = level_class(tv);
    Element nu = multiply(invert(cls2.rep), multiply(t, cls.rep));
    Element mu = multiply(invert(coset_min_rep(nu, cls.type_std)), nu);
    ColumnLabels moved;
    for (const auto& [w, lab] : labels) moved[multiply(mu, w)] = lab;
    moved = detail::normalize_labels(std::move(moved), g);
    detail::ClassFrame fr = detail::class_frame(g, out, tv);
    if (moved != detail::default_labels(g, fr.j, fr.i))
      out.actions[cls2] = std::move(moved);
  }
  return out;
}

// The image atlas under an extension table, materialized for every rank-1
// class meeting the radius ball around the image seed. The table must cover
// that ball, the panels of its chambers, and their preimages; lookups
// outside it throw.
inline TypedAtlas pushforward(const DefiningGraph& g, const AtlasExtension& f,
                              const TypedAtlas& atlas, int radius) {
  TypedAtlas out;
  for (const ChamberMap& m : f.table) {
    std::vector<int> a = tau_at(g, atlas.typing, m.from);
    std::vector<int> sinv = detail::inverse_permutation(m.sigma);
    std::vector<int> tau2(g.size());
    for (int k = 0; k < g.size(); ++k) tau2[k] = a[sinv[k]];
    if (!detail::is_identity_permutation(tau2)) out.typing.tau[m.to] = tau2;
  }
  AtlasExtension finv = invert_extension(f);
  std::set<LevelClassId> seen;
  for (const Chamber& b : chamber_ball(g, radius)) {
    Chamber d2 = translate(f.to.label, b);
    for (int j2 = 0; j2 < g.size(); ++j2) {
      BVertex v2 = vertex_of(d2, vbit(j2));
      if (!seen.insert(level_class(v2)).second) continue;
      const ChamberMap& back = extension_at(finv, d2);
      BVertex v = apply(back, v2);
      Chamber d = back.to;
      detail::ClassFrame fr = detail::class_frame(g, atlas, v);
      ColumnLabels labels;
      for (const Element& a : group_elements(g, vbit(fr.i))) {
        Chamber y = atlas_apply(g, atlas, v, a, d);
        labels[residue_coordinates(v2, extension_image(f, y)).first] = a;
      }
      if (labels.size() != static_cast<size_t>(g.order(j2)))
        throw validation_error(
            "internal: transported action is not column-regular at " +
            show(v2));
      labels = detail::normalize_labels(std::move(labels), g);
      // the transported twisted type of the class is the source one; the
      // canonical chamber of v2 may sit outside the table, so do not look
      // it up through the new typing
      if (labels != detail::default_labels(g, j2, fr.i))
        out.actions[level_class(v2)] = std::move(labels);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Twisted atlases and the commensuration demonstration
// ---------------------------------------------------------------------------

// A constant retyping: every chamber carries the same admissible twist,
// actions stay default. Consistent because every chamber agrees.
inline TypedAtlas constant_twist_atlas(const DefiningGraph& g,
                                       std::vector<int> sigma) {
  detail::check_typing_twist(g, sigma, "the global twist");
  TypedAtlas out;
  if (!detail::is_identity_permutation(sigma))
    out.typing.global = std::move(sigma);
  return out;
}

// Standard typing with the panel actions twisted by group inversion on
// every class meeting the radius ball whose vertex group is abelian of
// order >= 3 (inversion is a homomorphism only for abelian groups, and the
// twist is trivial at order 2). Classes outside the ball keep the default,
// which is a valid atlas because the conditions are class-local.
inline TypedAtlas inversion_twist_atlas(const DefiningGraph& g, int radius) {
  TypedAtlas out;
  for (const Chamber& d : chamber_ball(g, radius))
    for (int j = 0; j < g.size(); ++j) {
      if (g.order(j) < 3 || !detail::is_abelian(g, j)) continue;
      BVertex v = vertex_of(d, vbit(j));
      LevelClassId cls = level_class(v);
      if (out.actions.count(cls)) continue;
      ColumnLabels labels;
      for (const Element& w : group_elements(g, vbit(j))) labels[w] = w;
      out.actions[cls] = std::move(labels);
    }
  return out;
}

struct CommensurationSample {
  Element lambda;  // seed label of the sampled lattice element
  Element gamma;   // the group element its conjugate agrees with
  bool ok = false;
  std::string witness;  // empty when ok, else the first disagreement
};

struct CommensurationReport {
  int radius = 0;
  std::size_t ball_size = 0;
  std::size_t conjugator_ball = 0;
  bool conjugator_found = false;
  std::string witness;  // empty unless the conjugator computation failed
  std::vector<CommensurationSample> samples;
  bool all_ok = false;
};

// End-to-end demonstration that the stabilizer of a twisted atlas is
// conjugate into the group: computes the conjugator as the extension
// carrying the twisted atlas to the standard one at the base chamber,
// realizes each sampled lattice element as the self-extension of the
// twisted atlas seeded at its label, and checks that the conjugated map
// agrees exactly with a left translation on the radius ball, vertex types
// included.
inline CommensurationReport commensuration_demo(
    const DefiningGraph& g, const TypedAtlas& twisted,
    const std::vector<Element>& lambdas, int radius) {
  CommensurationReport rep;
  rep.radius = radius;
  Chamber base = base_chamber(g);
  TypedAtlas plain = standard_atlas(g);
  int reach = radius;
  for (const Element& lam : lambdas)
    reach = std::max(reach, radius + lam.length());
  AtlasExtension conj;
  try {
    conj = extend_automorphism(
        g, seed_permutation(g, twisted, base, plain, base), base, base,
        twisted, plain, reach);
  } catch (const std::runtime_error& e) {
    rep.witness = e.what();
    return rep;
  }
  rep.conjugator_found = true;
  rep.conjugator_ball = conj.table.size();
  AtlasExtension conj_inv = invert_extension(conj);
  std::vector<Chamber> ball = chamber_ball(g, radius);
  rep.ball_size = ball.size();
  std::vector<int> id = identity_permutation(g.size());
  for (const Element& lam : lambdas) {
    CommensurationSample s;
    s.lambda = lam;
    Chamber seed_to{lam};
    AtlasExtension lam_ext = extend_automorphism(
        g, seed_permutation(g, twisted, base, twisted, seed_to), base,
        seed_to, twisted, twisted, radius);
    auto conjugated = [&](const Chamber& d) {
      const ChamberMap& back = extension_at(conj_inv, d);
      const ChamberMap& mid = extension_at(lam_ext, back.to);
      return compose(extension_at(conj, mid.to), compose(mid, back));
    };
    s.gamma = conjugated(base).to.label;
    s.ok = true;
    for (const Chamber& d : ball) {
      ChamberMap m = conjugated(d);
      if (m.to.label != multiply(s.gamma, d.label) || m.sigma != id) {
        s.ok = false;
        s.witness = "disagrees with the translation at " + show(d.label);
        break;
      }
    }
    rep.samples.push_back(std::move(s));
  }
  rep.all_ok = rep.conjugator_found;
  for (const CommensurationSample& s : rep.samples)
    if (!s.ok) rep.all_ok = false;
  return rep;
}

}  // namespace rab
