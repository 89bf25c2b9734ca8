#pragma once

#include <compare>
#include <set>
#include <string>
#include <vector>

#include "rab/defining_graph.hpp"

namespace rab {

// One letter of a word: a non-identity element of a vertex group.
struct Syllable {
  int vertex;
  int elt;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

// An element of the graph product, stored as its canonical reduced word.
// Reduced: no two syllables on the same vertex separated only by syllables
// on adjacent vertices. Canonical: leftmost-minimal order (see normal_form).
// Elements compare by (length, then lexicographic on syllables); this is the
// deterministic order used by every enumeration in the library.
class Element {
 public:
  Element() : g_(nullptr) {}
  explicit Element(const DefiningGraph* g) : g_(g) {}
  Element(const DefiningGraph* g, std::vector<Syllable> canonical_word)
      : g_(g), w_(std::move(canonical_word)) {}

  const DefiningGraph* graph() const { return g_; }
  const std::vector<Syllable>& word() const { return w_; }
  int length() const { return static_cast<int>(w_.size()); }
  bool is_identity() const { return w_.empty(); }

  VSet support() const {
    VSet s = 0;
    for (const auto& syl : w_) s |= vbit(syl.vertex);
    return s;
  }

  friend bool operator==(const Element& a, const Element& b) {
    return a.w_ == b.w_;
  }
  friend std::strong_ordering operator<=>(const Element& a, const Element& b) {
    if (auto c = a.w_.size() <=> b.w_.size(); c != 0) return c;
    return a.w_ <=> b.w_;
  }

 private:
  const DefiningGraph* g_;
  std::vector<Syllable> w_;
};

namespace detail {

// Appends s to a reduced word, keeping it reduced: merge with the rightmost
// same-vertex syllable if every syllable after it commutes with s, dropping
// the pair when the product is the identity; otherwise push s at the end.
inline void append_reduced(const DefiningGraph& g, std::vector<Syllable>& w,
                           Syllable s) {
  for (int q = static_cast<int>(w.size()) - 1; q >= 0; --q) {
    if (w[q].vertex == s.vertex) {
      int merged = g.mul(s.vertex, w[q].elt, s.elt);
      if (merged == 0)
        w.erase(w.begin() + q);
      else
        w[q].elt = merged;
      return;
    }
    if (!g.adjacent(w[q].vertex, s.vertex)) break;
  }
  w.push_back(s);
}

// Leftmost-minimal order on a reduced word: repeatedly emit, among the
// syllables that can shuffle to the front (all earlier syllables commute
// with them), the one with the smallest vertex index. Frontable syllables
// have pairwise distinct vertices, so the choice is unique.
inline void canonicalize(const DefiningGraph& g, std::vector<Syllable>& w) {
  std::vector<Syllable> out;
  out.reserve(w.size());
  while (!w.empty()) {
    int best = -1;
    VSet blocked = 0;  // vertices not commuting with everything before them
    for (int p = 0; p < static_cast<int>(w.size()); ++p) {
      if (!(blocked & vbit(w[p].vertex)) &&
          (best < 0 || w[p].vertex < w[best].vertex))
        best = p;
      blocked |= ~g.nbrs(w[p].vertex);
    }
    out.push_back(w[best]);
    w.erase(w.begin() + best);
  }
  w = std::move(out);
}

inline Element make(const DefiningGraph& g, std::vector<Syllable> reduced) {
  canonicalize(g, reduced);
  return Element(&g, std::move(reduced));
}

inline void check_same_graph(const Element& a, const Element& b) {
  if (a.graph() != b.graph()) throw input_error("elements of different graphs");
}

}  // namespace detail

inline Element identity(const DefiningGraph& g) { return Element(&g); }

// Compact display form: "1" for the identity, else syllables joined by dots,
// each vertex name with a ^power suffix for element indices above 1.
inline std::string show(const Element& a) {
  if (a.is_identity()) return "1";
  std::string out;
  for (const auto& s : a.word()) {
    if (!out.empty()) out += '.';
    out += a.graph()->name(s.vertex);
    if (s.elt != 1) out += '^' + std::to_string(s.elt);
  }
  return out;
}

// Canonical form of an arbitrary syllable sequence. The moves delete
// identity syllables, merge same-vertex neighbours and swap commuting
// neighbours; two inputs map to equal outputs iff they are connected by
// such moves.
inline Element normal_form(const DefiningGraph& g,
                           const std::vector<Syllable>& raw) {
  std::vector<Syllable> w;
  for (const auto& s : raw) {
    g.check_vertex(s.vertex);
    if (s.elt <= 0 || s.elt >= g.order(s.vertex))
      throw input_error("syllable element index out of range");
    detail::append_reduced(g, w, s);
  }
  return detail::make(g, std::move(w));
}

inline Element multiply(const Element& a, const Element& b) {
  detail::check_same_graph(a, b);
  const DefiningGraph& g = *a.graph();
  std::vector<Syllable> w = a.word();
  for (const auto& s : b.word()) detail::append_reduced(g, w, s);
  return detail::make(g, std::move(w));
}

inline Element invert(const Element& a) {
  const DefiningGraph& g = *a.graph();
  std::vector<Syllable> w;
  w.reserve(a.word().size());
  for (auto it = a.word().rbegin(); it != a.word().rend(); ++it)
    w.push_back({it->vertex, g.inv_elt(it->vertex, it->elt)});
  return detail::make(g, std::move(w));
}

inline Element multiply(const Element& a, const Element& b, const Element& c) {
  return multiply(multiply(a, b), c);
}

// The retraction onto the subgroup generated by the vertices in J: deletes
// every syllable outside J. A group homomorphism.
inline Element retract(const Element& a, VSet J) {
  const DefiningGraph& g = *a.graph();
  g.check_subset(J);
  std::vector<Syllable> w;
  for (const auto& s : a.word())
    if (vin(J, s.vertex)) detail::append_reduced(g, w, s);
  return detail::make(g, std::move(w));
}

// The unique shortest element of the coset a * <G_j : j in J>, computed by
// right-stripping: a syllable whose vertex lies in J and which commutes past
// everything to its right can be deleted without leaving the coset. Deletion
// keeps the word reduced, and a maximal syllable exists in a reduced word
// iff the element has a reduced expression ending with it, so a plain scan
// finds every strippable syllable.
inline Element coset_min_rep(const Element& a, VSet J) {
  const DefiningGraph& g = *a.graph();
  g.check_subset(J);
  std::vector<Syllable> w = a.word();
  bool changed = true;
  while (changed) {
    changed = false;
    VSet seen_right = 0;  // vertices with a non-commuting syllable to the right
    for (int p = static_cast<int>(w.size()) - 1; p >= 0; --p) {
      if (vin(J, w[p].vertex) && !vin(seen_right, w[p].vertex)) {
        w.erase(w.begin() + p);
        changed = true;
        break;
      }
      seen_right |= ~g.nbrs(w[p].vertex);
    }
  }
  return detail::make(g, std::move(w));
}

// True iff a and b lie in the same left coset of <G_j : j in J>.
inline bool same_coset(const Element& a, const Element& b, VSet J) {
  detail::check_same_graph(a, b);
  return (multiply(invert(a), b).support() & ~J) == 0;
}

// All canonical elements of syllable length <= radius, in canonical order.
inline std::vector<Element> enumerate_ball(const DefiningGraph& g, int radius) {
  if (radius < 0) throw input_error("radius must be nonnegative");
  std::set<Element> seen{identity(g)};
  std::vector<Element> layer{identity(g)};
  for (int d = 0; d < radius && !layer.empty(); ++d) {
    std::vector<Element> next;
    for (const Element& x : layer)
      for (int v = 0; v < g.size(); ++v)
        for (int e = 1; e < g.order(v); ++e) {
          std::vector<Syllable> w = x.word();
          detail::append_reduced(g, w, {v, e});
          if (static_cast<int>(w.size()) != d + 1) continue;
          Element y = detail::make(g, std::move(w));
          if (seen.insert(y).second) next.push_back(y);
        }
    layer = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

// All elements of the direct product subgroup <G_j : j in J>, J spherical.
// Canonical words list one syllable per vertex in increasing vertex order.
inline std::vector<Element> group_elements(const DefiningGraph& g, VSet J) {
  g.check_spherical(J);
  std::vector<int> verts = vmembers(J);
  std::vector<Element> out{identity(g)};
  for (int v : verts) {
    std::vector<Element> next;
    for (const Element& x : out)
      for (int e = 0; e < g.order(v); ++e) {
        if (e == 0) {
          next.push_back(x);
          continue;
        }
        std::vector<Syllable> w = x.word();
        w.push_back({v, e});
        next.push_back(Element(&g, std::move(w)));
      }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rab
