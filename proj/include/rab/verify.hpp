#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "rab/atlases.hpp"
#include "rab/building.hpp"
#include "rab/fuchsian.hpp"
#include "rab/groupoids.hpp"
#include "rab/hyperplanes.hpp"

namespace rab {

// Outcome of one named battery of checks.
struct CheckResult {
  std::string name;
  long long checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

inline bool all_ok(const std::vector<CheckResult>& rs) {
  for (const auto& r : rs)
    if (!r.ok()) return false;
  return true;
}

namespace detail {

constexpr size_t kMaxWitnesses = 8;

struct Checker {
  CheckResult result;
  explicit Checker(std::string name) { result.name = std::move(name); }
  template <class Witness>
  void expect(bool cond, Witness&& witness) {
    ++result.checked;
    if (!cond && result.failures.size() < kMaxWitnesses)
      result.failures.push_back(witness());
  }
  void expect(bool cond, const char* witness) {
    ++result.checked;
    if (!cond && result.failures.size() < kMaxWitnesses)
      result.failures.emplace_back(witness);
  }
};

inline Element random_element(const DefiningGraph& g, std::mt19937_64& rng,
                              int maxlen) {
  std::uniform_int_distribution<int> len_d(0, maxlen);
  std::vector<Syllable> w;
  int len = len_d(rng);
  for (int p = 0; p < len; ++p) {
    int v = std::uniform_int_distribution<int>(0, g.size() - 1)(rng);
    w.push_back({v, std::uniform_int_distribution<int>(1, g.order(v) - 1)(rng)});
  }
  return normal_form(g, w);
}

inline VSet random_subset(const DefiningGraph& g, std::mt19937_64& rng) {
  return std::uniform_int_distribution<VSet>(0, g.all())(rng) & g.all();
}

// Deterministic small sample of chambers from a ball: the identity, the
// whole ball when it is small, otherwise seeded picks.
inline std::vector<Chamber> sample_chambers(const std::vector<Chamber>& ball,
                                            size_t want, std::mt19937_64& rng) {
  if (ball.size() <= want) return ball;
  std::vector<Chamber> out{ball.front()};
  std::uniform_int_distribution<size_t> d(0, ball.size() - 1);
  std::set<size_t> used{0};
  while (out.size() < want) {
    size_t k = d(rng);
    if (used.insert(k).second) out.push_back(ball[k]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// words suite

inline std::vector<CheckResult> verify_words(const DefiningGraph& g,
                                             std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);

  {
    // Exhaustive rewriting closure on short words: two words are equal in the
    // group iff connected by delete/merge/swap moves; the canonical form must
    // be the (length, lex) minimum of each class. Skipped for big alphabets.
    detail::Checker c("rewriting closure matches canonical forms");
    std::vector<Syllable> alphabet;
    for (int v = 0; v < g.size(); ++v)
      for (int e = 1; e < g.order(v); ++e) alphabet.push_back({v, e});
    int maxlen = 4;
    size_t universe_bound = 1;
    for (int d = 0; d < maxlen; ++d) universe_bound *= alphabet.size();
    if (universe_bound > 200000) maxlen = 3;

    std::vector<std::vector<Syllable>> words{{}};
    for (int len = 1, lo = 0; len <= maxlen; ++len) {
      int hi = static_cast<int>(words.size());
      for (int p = lo; p < hi; ++p)
        for (const Syllable& s : alphabet) {
          auto w = words[p];
          w.push_back(s);
          words.push_back(std::move(w));
        }
      lo = hi;
    }
    std::map<std::vector<Syllable>, int> index;
    for (size_t n = 0; n < words.size(); ++n)
      index[words[n]] = static_cast<int>(n);

    std::vector<int> parent(words.size());
    for (size_t n = 0; n < words.size(); ++n) parent[n] = static_cast<int>(n);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (size_t n = 0; n < words.size(); ++n) {
      const auto& w = words[n];
      for (size_t p = 0; p + 1 < w.size(); ++p) {
        if (w[p].vertex == w[p + 1].vertex) {
          int prod = g.mul(w[p].vertex, w[p].elt, w[p + 1].elt);
          std::vector<Syllable> m(w.begin(), w.begin() + p);
          if (prod != 0) m.push_back({w[p].vertex, prod});
          m.insert(m.end(), w.begin() + p + 2, w.end());
          parent[find(static_cast<int>(n))] = find(index.at(m));
        } else if (g.adjacent(w[p].vertex, w[p + 1].vertex)) {
          auto m = w;
          std::swap(m[p], m[p + 1]);
          parent[find(static_cast<int>(n))] = find(index.at(m));
        }
      }
    }
    auto word_less = [](const std::vector<Syllable>& a,
                        const std::vector<Syllable>& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    };
    std::map<int, std::vector<Syllable>> class_min;
    std::vector<std::vector<Syllable>> nf(words.size());
    for (size_t n = 0; n < words.size(); ++n) {
      nf[n] = normal_form(g, words[n]).word();
      int root = find(static_cast<int>(n));
      auto it = class_min.find(root);
      if (it == class_min.end() || word_less(words[n], it->second))
        class_min[root] = words[n];
    }
    std::map<std::vector<Syllable>, int> nf_root;
    for (size_t n = 0; n < words.size(); ++n) {
      int root = find(static_cast<int>(n));
      c.expect(nf[n] == class_min.at(root),
               [&] { return "canonical form is not the class minimum at word #" +
                            std::to_string(n); });
      auto [it, fresh] = nf_root.emplace(nf[n], root);
      (void)fresh;
      c.expect(it->second == root,
               [&] { return "distinct move classes share a canonical form at word #" +
                            std::to_string(n); });
    }
    out.push_back(std::move(c.result));
  }

  {
    detail::Checker c("group laws on random elements");
    Element e = identity(g);
    for (int trial = 0; trial < 300; ++trial) {
      Element a = detail::random_element(g, rng, 8);
      Element b = detail::random_element(g, rng, 8);
      c.expect(multiply(a, invert(a)) == e,
               [&] { return "a.a^-1 != 1 for a=" + show(a); });
      c.expect(multiply(multiply(a, b), invert(b)) == a,
               [&] { return "(ab)b^-1 != a for a=" + show(a) + " b=" + show(b); });
      c.expect(invert(multiply(a, b)) == multiply(invert(b), invert(a)),
               [&] { return "inverse antihomomorphism fails for a=" + show(a) +
                            " b=" + show(b); });
    }
    out.push_back(std::move(c.result));
  }

  {
    detail::Checker c("retract laws on random elements");
    for (int trial = 0; trial < 1000; ++trial) {
      Element a = detail::random_element(g, rng, 8);
      Element b = detail::random_element(g, rng, 8);
      VSet j1 = detail::random_subset(g, rng);
      VSet j2 = detail::random_subset(g, rng);
      c.expect(retract(multiply(a, b), j1) ==
                   multiply(retract(a, j1), retract(b, j1)),
               [&] { return "retract not a homomorphism at a=" + show(a) +
                            " b=" + show(b) + " J=" + show_set(g, j1); });
      c.expect(retract(retract(a, j1), j2) == retract(a, j1 & j2),
               [&] { return "retract nesting fails at a=" + show(a); });
      c.expect((retract(a, j1).support() & ~j1) == 0,
               [&] { return "retract leaks outside J at a=" + show(a); });
    }
    out.push_back(std::move(c.result));
  }

  {
    detail::Checker c("coset representative laws on random elements");
    for (int trial = 0; trial < 1000; ++trial) {
      Element a = detail::random_element(g, rng, 8);
      VSet J = detail::random_subset(g, rng);
      Element m = coset_min_rep(a, J);
      Element t = retract(detail::random_element(g, rng, 4), J);
      c.expect(coset_min_rep(m, J) == m,
               [&] { return "not idempotent at a=" + show(a) + " J=" + show_set(g, J); });
      c.expect((multiply(invert(m), a).support() & ~J) == 0,
               [&] { return "representative leaves the coset at a=" + show(a); });
      c.expect(m.length() <= a.length(),
               [&] { return "representative longer than input at a=" + show(a); });
      c.expect(coset_min_rep(multiply(a, t), J) == m,
               [&] { return "not constant on the coset at a=" + show(a) +
                            " t=" + show(t); });
      c.expect(multiply(a, t).length() >= m.length(),
               [&] { return "coset member shorter than representative at a=" +
                            show(a); });
    }
    out.push_back(std::move(c.result));
  }

  {
    detail::Checker c("ball growth");
    int expect1 = 1;
    for (int v = 0; v < g.size(); ++v) expect1 += g.order(v) - 1;
    size_t prev = 0;
    for (int r = 0; r <= 3; ++r) {
      auto ball = enumerate_ball(g, r);
      c.expect(ball.size() >= prev, "ball sizes must be monotone");
      c.expect(std::is_sorted(ball.begin(), ball.end()),
               "ball enumeration must be sorted");
      if (r == 1)
        c.expect(static_cast<int>(ball.size()) == expect1,
                 "radius-1 ball must have 1 + sum(|G_i|-1) elements");
      prev = ball.size();
    }
    out.push_back(std::move(c.result));
  }

  return out;
}

// ---------------------------------------------------------------------------
// building suite

inline std::vector<CheckResult> verify_building(const DefiningGraph& g,
                                                int radius,
                                                std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);
  const std::vector<Chamber> ball = chamber_ball(g, radius);
  const std::vector<VSet> sphericals = g.spherical_sets();

  // Deduplicated vertices and cubes seen in the ball.
  std::vector<BVertex> verts;
  std::vector<Cube> cubes;
  for (const Chamber& c : ball) {
    for (VSet J : sphericals) verts.push_back(vertex_of(c, J));
    for (VSet j2 : sphericals)
      for (VSet j1 = j2;; j1 = (j1 - 1) & j2) {
        cubes.push_back(Cube{coset_min_rep(c.label, j1), j1, j2});
        if (j1 == 0) break;
      }
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  std::sort(cubes.begin(), cubes.end());
  cubes.erase(std::unique(cubes.begin(), cubes.end()), cubes.end());

  {
    // Vertex identity is exact: two (label, type) pairs name one vertex iff
    // the labels differ by a Gamma_J factor, witnessed via retract.
    detail::Checker c("vertex identity matches coset equivalence");
    int pair_radius = std::min(radius, 3);
    auto small = chamber_ball(g, pair_radius);
    for (const Chamber& c1 : small)
      for (const Chamber& c2 : small) {
        Element delta = multiply(invert(c1.label), c2.label);
        for (VSet J : sphericals) {
          bool alg = retract(delta, J) == delta;
          bool rep = vertex_of(c1, J) == vertex_of(c2, J);
          c.expect(alg == rep, [&] {
            return "vertex identity disagrees at " + show(c1.label) + ", " +
                   show(c2.label) + ", J=" + show_set(g, J);
          });
        }
      }
    out.push_back(std::move(c.result));
  }

  {
    // Chamber intersections: nonempty iff the offset has spherical support,
    // and then the shared vertices are exactly those above the minimal type.
    detail::Checker c("chamber intersections have a minimal type");
    for (const Chamber& c1 : ball)
      for (const Chamber& c2 : ball) {
        auto got = chamber_intersection(c1, c2);
        std::vector<BVertex> brute;
        for (VSet J : sphericals) {
          BVertex v = vertex_of(c1, J);
          if (vertex_in_chamber(v, c2)) brute.push_back(v);
        }
        if (!got) {
          c.expect(brute.empty(), [&] {
            return "reported disjoint but vertices are shared: " +
                   show(c1.label) + " vs " + show(c2.label);
          });
          continue;
        }
        auto [jmin, shared] = *got;
        std::sort(shared.begin(), shared.end());
        std::sort(brute.begin(), brute.end());
        c.expect(shared == brute, [&] {
          return "shared vertex set wrong for " + show(c1.label) + " vs " +
                 show(c2.label);
        });
        bool min_ok = true;
        bool attained = false;
        for (const BVertex& v : brute) {
          if (jmin & ~v.type_std) min_ok = false;
          if (v.type_std == jmin) attained = true;
        }
        c.expect(min_ok && attained, [&] {
          return "minimal type wrong for " + show(c1.label) + " vs " +
                 show(c2.label);
        });
      }
    out.push_back(std::move(c.result));
  }

  {
    // Residues nest by intersection of their defining sets.
    detail::Checker c("residue membership nests by intersection");
    auto bases = detail::sample_chambers(ball, 10, rng);
    std::vector<VSet> subsets;
    if (g.size() <= 8)
      for (VSet J = 0; J <= g.all(); ++J) subsets.push_back(J);
    else {
      subsets = sphericals;
      for (int k = 0; k < 10; ++k)
        subsets.push_back(detail::random_subset(g, rng));
    }
    for (const Chamber& base : bases)
      for (VSet j1 : subsets)
        for (VSet j2 : subsets)
          for (const Chamber& d :
               detail::sample_chambers(ball, 40, rng)) {
            bool both = residue_contains(j1, base, d) &&
                        residue_contains(j2, base, d);
            bool meet = residue_contains(j1 & j2, base, d);
            c.expect(both == meet, [&] {
              return "residue nesting fails at base=" + show(base.label) +
                     " D=" + show(d.label) + " J1=" + show_set(g, j1) +
                     " J2=" + show_set(g, j2);
            });
          }
    // Set version over spherical pairs.
    for (const Chamber& base : detail::sample_chambers(ball, 6, rng))
      for (VSet j1 : sphericals)
        for (VSet j2 : sphericals) {
          auto r1 = residue(j1, base);
          auto r2 = residue(j2, base);
          std::vector<Chamber> meet;
          std::set_intersection(r1.begin(), r1.end(), r2.begin(), r2.end(),
                                std::back_inserter(meet));
          c.expect(meet == residue(j1 & j2, base), [&] {
            return "residue set intersection fails at base=" +
                   show(base.label) + " J1=" + show_set(g, j1) +
                   " J2=" + show_set(g, j2);
          });
        }
    out.push_back(std::move(c.result));
  }

  {
    // Product decomposition of perp-closed residues.
    detail::Checker c("perp-closed residues split as products");
    const int rp = std::min(radius, 2);
    for (const Chamber& base : detail::sample_chambers(ball, 6, rng))
      for (VSet J : sphericals) {
        auto rj = residue(J, base);
        auto rperp = residue(g.perp(J), base, rp);
        std::vector<std::pair<Chamber, Chamber>> pairs;
        std::set<Chamber> images;
        for (const Chamber& c1 : rj)
          for (const Chamber& c2 : rperp) {
            Chamber b = product_map(J, base, c1, c2);
            pairs.push_back({c1, c2});
            c.expect(images.insert(b).second, [&] {
              return "product map not injective at base=" + show(base.label) +
                     " J=" + show_set(g, J);
            });
            auto [s1, s2] = product_split(J, base, b);
            c.expect(s1 == c1 && s2 == c2, [&] {
              return "split does not invert the product at base=" +
                     show(base.label) + " J=" + show_set(g, J);
            });
          }
        // Sections through the base are the factors themselves.
        for (const Chamber& c1 : rj)
          c.expect(product_map(J, base, c1, base) == c1,
                   "J-section through the base must be the identity");
        for (const Chamber& c2 : rperp)
          c.expect(product_map(J, base, base, c2) == c2,
                   "perp-section through the base must be the identity");
        // Adjacency passes to exactly one factor.
        for (size_t a = 0; a < pairs.size(); ++a)
          for (size_t b = 0; b < pairs.size(); ++b) {
            auto adj = adjacency(product_map(J, base, pairs[a].first,
                                             pairs[a].second),
                                 product_map(J, base, pairs[b].first,
                                             pairs[b].second));
            auto adj1 = adjacency(pairs[a].first, pairs[b].first);
            auto adj2 = adjacency(pairs[a].second, pairs[b].second);
            bool factor = (adj1 && pairs[a].second == pairs[b].second) ||
                          (adj2 && pairs[a].first == pairs[b].first);
            c.expect(adj.has_value() == factor, [&] {
              return "product adjacency disagrees at base=" +
                     show(base.label) + " J=" + show_set(g, J);
            });
          }
        // Image sections agree with residues around the images.
        for (const Chamber& c2 : rperp) {
          std::vector<Chamber> sec;
          for (const Chamber& c1 : rj)
            sec.push_back(product_map(J, base, c1, c2));
          std::sort(sec.begin(), sec.end());
          c.expect(sec == residue(J, c2), [&] {
            return "J-section is not the J-residue of the second factor at " +
                   show(c2.label);
          });
        }
        for (const Chamber& c1 : rj) {
          std::vector<Chamber> sec;
          for (const Chamber& c2 : rperp)
            sec.push_back(product_map(J, base, c1, c2));
          std::sort(sec.begin(), sec.end());
          c.expect(sec == residue(g.perp(J), c1, rp), [&] {
            return "perp-section is not the perp-residue of the first factor at " +
                   show(c1.label);
          });
        }
      }
    out.push_back(std::move(c.result));
  }

  {
    // Poset structure: order iff a cube of the right dimension joins the two
    // vertices; membership is upward closed; wedges are minimal.
    detail::Checker c("vertex poset matches cube structure");
    // A cube of dimension rk(v)-rk(u) contains u and v iff its type interval
    // is exactly [t(u), t(v)], so the witness pairs are the bottom/top pairs.
    std::set<std::pair<BVertex, BVertex>> cube_pairs;
    for (const Cube& q : cubes)
      cube_pairs.insert(
          {BVertex{q.rep, q.j1}, BVertex{coset_min_rep(q.rep, q.j2), q.j2}});
    for (const BVertex& u : verts)
      for (const BVertex& v : verts) {
        bool cube_witness = cube_pairs.count({u, v}) > 0;
        c.expect(leq(u, v) == cube_witness, [&] {
          return "order/cube mismatch at " + show(u.rep) + ":" +
                 show_set(g, u.type_std) + " vs " + show(v.rep) + ":" +
                 show_set(g, v.type_std);
        });
      }
    // Upward closure of chamber membership.
    for (const Chamber& ch : ball)
      for (VSet J : sphericals) {
        BVertex u = vertex_of(ch, J);
        for (const BVertex& v : verts)
          if (leq(u, v))
            c.expect(vertex_in_chamber(v, ch), [&] {
              return "chamber of " + show(u.rep) + " misses upper vertex " +
                     show(v.rep) + ":" + show_set(g, v.type_std);
            });
      }
    // Wedge is the minimal shared vertex; adjacency reads off its type.
    for (const Chamber& c1 : ball)
      for (const Chamber& c2 : ball) {
        auto got = chamber_intersection(c1, c2);
        auto adj = adjacency(c1, c2);
        if (!got) {
          c.expect(!adj, "adjacent chambers must intersect");
          continue;
        }
        BVertex w = wedge(c1, c2);
        for (const BVertex& v : got->second)
          c.expect(leq(w, v), [&] {
            return "wedge not minimal for " + show(c1.label) + " vs " +
                   show(c2.label);
          });
        bool is_iadj = adj.has_value();
        c.expect(is_iadj == (rank(w) == 1 && c1 != c2),
                 [&] {
                   return "adjacency iff rank-1 wedge fails at " +
                          show(c1.label) + " vs " + show(c2.label);
                 });
        if (adj)
          c.expect(w.type_std == vbit(*adj), [&] {
            return "adjacency label disagrees with wedge type at " +
                   show(c1.label) + " vs " + show(c2.label);
          });
      }
    out.push_back(std::move(c.result));
  }

  {
    // Level adjacency: algebraic test vs the geometric definition, and the
    // closure equals equality of class ids.
    detail::Checker c("level classes match their coset ids");
    std::vector<std::vector<Chamber>> vchambers(verts.size());
    for (size_t n = 0; n < verts.size(); ++n)
      vchambers[n] = chambers_containing(verts[n]);
    std::vector<int> parent(verts.size());
    for (size_t n = 0; n < verts.size(); ++n) parent[n] = static_cast<int>(n);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (size_t a = 0; a < verts.size(); ++a)
      for (size_t b = 0; b < verts.size(); ++b) {
        const BVertex& v1 = verts[a];
        const BVertex& v2 = verts[b];
        bool fast = level_adjacent(v1, v2);
        // Geometric definition: adjacent chambers around the two vertices,
        // both vertices off the intersection, with a common upper vertex one
        // rank up inside the intersection.
        bool slow = false;
        if (v1 != v2 && rank(v1) == rank(v2)) {
          for (const Chamber& c1 : vchambers[a]) {
            if (slow) break;
            for (const Chamber& c2 : vchambers[b]) {
              if (!adjacency(c1, c2)) continue;
              auto inter = chamber_intersection(c1, c2);
              if (vertex_in_chamber(v1, c2) || vertex_in_chamber(v2, c1))
                continue;
              for (const BVertex& u : inter->second)
                if (leq(v1, u) && leq(v2, u) &&
                    rank(u) == rank(v1) + 1 && rank(v2) == rank(v1))
                  slow = true;
              if (slow) break;
            }
          }
        }
        c.expect(fast == slow, [&] {
          return "level adjacency disagrees at " + show(v1.rep) + ":" +
                 show_set(g, v1.type_std) + " vs " + show(v2.rep) + ":" +
                 show_set(g, v2.type_std);
        });
        if (fast) {
          c.expect(level_class(v1) == level_class(v2),
                   "level-adjacent vertices must share a class id");
          parent[find(static_cast<int>(a))] = find(static_cast<int>(b));
        }
      }
    // Conversely, equal ids must be connected inside the ball.
    std::map<LevelClassId, int> class_root;
    for (size_t n = 0; n < verts.size(); ++n) {
      LevelClassId id = level_class(verts[n]);
      auto [it, fresh] = class_root.emplace(id, find(static_cast<int>(n)));
      if (!fresh)
        c.expect(it->second == find(static_cast<int>(n)), [&] {
          return "class id " + show(id.rep) + ":" + show_set(g, id.type_std) +
                 " splits into several adjacency components";
        });
    }
    // Rank-0 vertices form a single class; maximal types are singletons.
    LevelClassId zero{identity(g), 0};
    for (const BVertex& v : verts) {
      if (rank(v) == 0)
        c.expect(level_class(v) == zero,
                 "rank-0 vertices must share one class");
      if (g.perp(v.type_std) == 0 && rank(v) > 0) {
        bool lonely = true;
        for (const BVertex& w : verts)
          if (w != v && level_class(w) == level_class(v)) lonely = false;
        c.expect(lonely, "maximal-type classes must be singletons");
      }
    }
    out.push_back(std::move(c.result));
  }

  {
    // Around a class, each member's chamber set meets each perp-residue once.
    detail::Checker c("class members pick unique perp sections");
    std::map<LevelClassId, std::vector<BVertex>> classes;
    for (const BVertex& v : verts) classes[level_class(v)].push_back(v);
    for (const auto& [id, members] : classes)
      for (const BVertex& v1 : members)
        for (const BVertex& v2 : members)
          for (const Chamber& c1 : chambers_containing(v1)) {
            int hits = 0;
            for (const Chamber& d : chambers_containing(v2))
              if (residue_contains(g.perp(v2.type_std), c1, d)) ++hits;
            c.expect(hits == 1, [&] {
              return "perp residue of " + show(c1.label) + " meets the class " +
                     "member " + show(v2.rep) + " " + std::to_string(hits) +
                     " times";
            });
            Chamber direct = chamber_through(v2, c1);
            c.expect(vertex_in_chamber(v2, direct) &&
                         residue_contains(g.perp(v2.type_std), c1, direct),
                     "direct perp section formula is wrong");
          }
    out.push_back(std::move(c.result));
  }

  {
    // Left translation preserves the whole structure.
    detail::Checker c("left translation preserves structure");
    auto sample = detail::sample_chambers(ball, 14, rng);
    for (int trial = 0; trial < 50; ++trial) {
      Element t = detail::random_element(g, rng, 4);
      for (const Chamber& c1 : sample)
        for (const Chamber& c2 : sample) {
          Chamber t1{multiply(t, c1.label)}, t2{multiply(t, c2.label)};
          c.expect(adjacency(c1, c2) == adjacency(t1, t2),
                   "translation must preserve adjacency labels");
          auto i1 = chamber_intersection(c1, c2);
          auto i2 = chamber_intersection(t1, t2);
          c.expect(i1.has_value() == i2.has_value() &&
                       (!i1 || i1->first == i2->first),
                   "translation must preserve intersection types");
        }
      for (const Chamber& ch : sample)
        for (VSet J : sphericals) {
          BVertex v = vertex_of(ch, J);
          BVertex tv = vertex_of(Chamber{multiply(t, ch.label)}, J);
          LevelClassId a = level_class(v);
          LevelClassId b = level_class(tv);
          c.expect(b.rep == coset_min_rep(multiply(t, a.rep),
                                          g.perp_closed(J)) &&
                       b.type_std == a.type_std,
                   "translation must act on class ids");
        }
      // Product map is equivariant.
      Chamber base = sample[trial % sample.size()];
      for (VSet J : sphericals) {
        auto rj = residue(J, base);
        auto rp = residue(g.perp(J), base, 1);
        Chamber tbase{multiply(t, base.label)};
        for (const Chamber& c1 : rj)
          for (const Chamber& c2 : rp) {
            Chamber lhs{multiply(t, product_map(J, base, c1, c2).label)};
            Chamber rhs = product_map(J, tbase, Chamber{multiply(t, c1.label)},
                                      Chamber{multiply(t, c2.label)});
            c.expect(lhs == rhs, "translation must commute with products");
          }
      }
    }
    out.push_back(std::move(c.result));
  }

  return out;
}

// ---------------------------------------------------------------------------
// hyperplanes suite

namespace detail {

// The four dimension-1 faces of a square, as two opposite pairs.
inline std::array<std::pair<Cube, Cube>, 2> square_sides(const Cube& q) {
  auto dirs = vmembers(q.j2 & ~q.j1);
  VSet p = vbit(dirs[0]), r = vbit(dirs[1]);
  Cube pa{q.rep, q.j1, q.j1 | p};
  Cube pb{coset_min_rep(q.rep, q.j1 | r), q.j1 | r, q.j2};
  Cube ra{q.rep, q.j1, q.j1 | r};
  Cube rb{coset_min_rep(q.rep, q.j1 | p), q.j1 | p, q.j2};
  return {{{pa, pb}, {ra, rb}}};
}

// Cubes of the given dimension in one chamber.
inline std::vector<Cube> chamber_cubes(const Chamber& c, int dim) {
  const DefiningGraph& g = *c.label.graph();
  std::vector<Cube> out;
  for (VSet j2 : g.spherical_sets())
    for (VSet j1 = j2;; j1 = (j1 - 1) & j2) {
      if (vcount(j2 & ~j1) == dim)
        out.push_back(Cube{coset_min_rep(c.label, j1), j1, j2});
      if (j1 == 0) break;
    }
  return out;
}

inline std::vector<BVertex> ball_vertices(const DefiningGraph& g, int radius) {
  std::set<BVertex> vset;
  for (const Chamber& c : chamber_ball(g, radius))
    for (const BVertex& v : chamber_vertices(c)) vset.insert(v);
  return {vset.begin(), vset.end()};
}

}  // namespace detail

inline std::vector<CheckResult> verify_hyperplanes(const DefiningGraph& g,
                                                   int radius,
                                                   std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);
  const std::vector<Chamber> ball = chamber_ball(g, radius);

  std::set<Cube> edge_set, square_set;
  for (const Chamber& c : ball) {
    for (const Cube& e : detail::chamber_cubes(c, 1)) edge_set.insert(e);
    for (const Cube& q : detail::chamber_cubes(c, 2)) square_set.insert(q);
  }
  std::vector<Cube> edges(edge_set.begin(), edge_set.end());
  std::map<Cube, int> edge_index;
  for (size_t n = 0; n < edges.size(); ++n)
    edge_index[edges[n]] = static_cast<int>(n);

  {
    // The elementary-parallelism closure (opposite sides of squares) must
    // coincide with equality of hyperplane ids, and labels must be constant
    // along every elementary step.
    detail::Checker c("parallelism closure matches hyperplane ids");
    std::vector<int> parent(edges.size());
    for (size_t n = 0; n < edges.size(); ++n) parent[n] = static_cast<int>(n);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const Cube& q : square_set)
      for (const auto& [f1, f2] : detail::square_sides(q)) {
        c.expect(edge_label(f1) == edge_label(f2), [&] {
          return "opposite sides with different labels in " + show(q);
        });
        auto i1 = edge_index.find(f1);
        auto i2 = edge_index.find(f2);
        c.expect(i1 != edge_index.end() && i2 != edge_index.end(), [&] {
          return "face of an enumerated square missing from the edge set at " +
                 show(q);
        });
        if (i1 != edge_index.end() && i2 != edge_index.end())
          parent[find(i1->second)] = find(i2->second);
      }
    std::map<int, HyperplaneId> root_id;
    std::map<HyperplaneId, int> id_root;
    for (size_t n = 0; n < edges.size(); ++n) {
      HyperplaneId h = hyperplane_of(edges[n]);
      int root = find(static_cast<int>(n));
      auto [it, fresh] = root_id.emplace(root, h);
      c.expect(fresh || it->second == h, [&] {
        return "closure class maps to two ids at " + show(edges[n]);
      });
      auto [jt, fresh2] = id_root.emplace(h, root);
      c.expect(fresh2 || jt->second == root, [&] {
        return "id " + show(h) + " splits into several closure classes at " +
               show(edges[n]);
      });
      c.expect(h.label == edge_label(edges[n]) &&
                   h.rep == coset_min_rep(h.rep, g.perp(vbit(h.label))),
               [&] { return "malformed id at " + show(edges[n]); });
    }
    out.push_back(std::move(c.result));
  }

  {
    // Inside every square the toward-larger orientations of the two parallel
    // sides correspond: the other two sides join initial to initial and
    // terminal to terminal.
    detail::Checker c("squares orient their parallel sides consistently");
    for (const Cube& q : square_set) {
      auto sides = detail::square_sides(q);
      for (int k = 0; k < 2; ++k) {
        const auto& [f1, f2] = sides[k];
        const auto& [g1, g2] = sides[1 - k];
        c.expect(bottom_vertex(f1) == bottom_vertex(g1) &&
                     bottom_vertex(f2) == top_vertex(g1) &&
                     top_vertex(f1) == bottom_vertex(g2) &&
                     top_vertex(f2) == top_vertex(g2),
                 [&] { return "side vertices misaligned in " + show(q); });
        c.expect(oriented_parallel(OrientedEdge{f1, true},
                                   OrientedEdge{f2, true}) &&
                     !oriented_parallel(OrientedEdge{f1, true},
                                        OrientedEdge{f2, false}),
                 [&] { return "orientation flag not preserved in " + show(q); });
      }
    }
    out.push_back(std::move(c.result));
  }

  {
    // Every chamber meets exactly one i-hyperplane for each label i.
    detail::Checker c("chambers meet one hyperplane per label");
    for (const Chamber& ch : ball) {
      std::map<int, std::set<HyperplaneId>> per_label;
      for (const Cube& e : detail::chamber_cubes(ch, 1))
        per_label[edge_label(e)].insert(hyperplane_of(e));
      c.expect(static_cast<int>(per_label.size()) == g.size(), [&] {
        return "chamber " + show(ch.label) + " misses a label";
      });
      for (const auto& [i, ids] : per_label)
        c.expect(ids.size() == 1, [&] {
          return "chamber " + show(ch.label) + " meets " +
                 std::to_string(ids.size()) + " hyperplanes with label " +
                 g.name(i);
        });
    }
    out.push_back(std::move(c.result));
  }

  {
    // Two edges at a common vertex span a square there iff their labels are
    // adjacent; cross-checked against a brute-force square search.
    detail::Checker c("corners happen exactly at adjacent labels");
    for (const BVertex& v : detail::ball_vertices(g, std::min(radius, 2))) {
      std::vector<Cube> es = edges_at(v);
      std::vector<Chamber> around = chambers_containing(v);
      for (const Cube& e1 : es)
        for (const Cube& e2 : es) {
          if (e1 == e2) continue;
          bool fast = corner_at(v, e1, e2);
          bool expected = g.adjacent(edge_label(e1), edge_label(e2));
          bool brute = false;
          for (const Chamber& ch : around) {
            for (const Cube& q : detail::chamber_cubes(ch, 2)) {
              auto sides = detail::square_sides(q);
              auto has = [&](const Cube& e) {
                return sides[0].first == e || sides[0].second == e ||
                       sides[1].first == e || sides[1].second == e;
              };
              if (has(e1) && has(e2)) brute = true;
            }
            if (brute) break;
          }
          c.expect(fast == expected && brute == expected, [&] {
            return "corner test disagrees at v=" + show(v) + " e1=" +
                   show(e1) + " e2=" + show(e2);
          });
        }
    }
    out.push_back(std::move(c.result));
  }

  {
    // The set of hyperplanes below a vertex identifies its level class.
    detail::Checker c("lower hyperplanes identify level classes");
    std::vector<BVertex> verts = detail::ball_vertices(g, std::min(radius, 2));
    std::vector<std::vector<HyperplaneId>> below(verts.size());
    std::vector<LevelClassId> cls(verts.size());
    for (size_t n = 0; n < verts.size(); ++n) {
      below[n] = hyperplanes_below(verts[n]);
      cls[n] = level_class(verts[n]);
      if (rank(verts[n]) == 0)
        c.expect(below[n].empty(), "rank-0 vertices have no lower edges");
    }
    for (size_t a = 0; a < verts.size(); ++a)
      for (size_t b = 0; b < verts.size(); ++b)
        c.expect((below[a] == below[b]) == (cls[a] == cls[b]), [&] {
          return "hyperplane criterion disagrees with class ids at " +
                 show(verts[a]) + " vs " + show(verts[b]);
        });
    out.push_back(std::move(c.result));
  }

  {
    // The coordinatewise projection: kernel membership is closed under the
    // group operations and conjugation, and the quotient realizes the full
    // direct product when that is small enough to enumerate.
    detail::Checker c("coordinate projections split off the finite quotient");
    for (int trial = 0; trial < 200; ++trial) {
      Element a = detail::random_element(g, rng, 6);
      Element b = detail::random_element(g, rng, 6);
      for (int v = 0; v < g.size(); ++v)
        c.expect(retract(multiply(a, b), vbit(v)) ==
                     multiply(retract(a, vbit(v)), retract(b, vbit(v))),
                 [&] { return "projection fails at a=" + show(a) +
                              " b=" + show(b) + " v=" + g.name(v); });
    }
    std::vector<Element> kern = coordinate_kernel_ball(g, std::min(radius + 1, 4));
    for (const Element& a : kern)
      for (const Element& b : kern)
        c.expect(in_coordinate_kernel(multiply(a, invert(b))),
                 "kernel not closed under the group operations");
    for (const Element& a : kern)
      for (int trial = 0; trial < 10; ++trial) {
        Element t = detail::random_element(g, rng, 4);
        c.expect(in_coordinate_kernel(multiply(t, a, invert(t))),
                 "kernel not closed under conjugation");
      }
    long long index = 1;
    for (int v = 0; v < g.size(); ++v) index *= g.order(v);
    if (g.size() <= 6 && index <= 4096) {
      std::set<std::vector<Element>> tuples;
      for (const Element& x : enumerate_ball(g, g.size())) {
        std::vector<Element> t;
        for (int v = 0; v < g.size(); ++v) t.push_back(retract(x, vbit(v)));
        tuples.insert(std::move(t));
      }
      c.expect(static_cast<long long>(tuples.size()) == index,
               [&] { return "projection image has size " +
                            std::to_string(tuples.size()) + ", expected " +
                            std::to_string(index); });
    }
    out.push_back(std::move(c.result));
  }

  return out;
}

// ---------------------------------------------------------------------------
// special-action suite

inline std::vector<CheckResult> verify_special(const DefiningGraph& g,
                                               int radius) {
  std::vector<CheckResult> out;
  auto harvest = [](std::string name, const SpecialReport& rep,
                    bool niceness_only) {
    detail::Checker c(std::move(name));
    c.result.checked = rep.configurations_checked;
    for (const SpecialViolation& v : rep.violations) {
      if (niceness_only && v.kind != "niceness") continue;
      if (c.result.failures.size() < detail::kMaxWitnesses)
        c.result.failures.push_back(v.kind + ": " + v.witness);
    }
    return c.result;
  };

  out.push_back(harvest("identity acts cleanly and nicely",
                        check_special(g, {}, radius), false));
  out.push_back(harvest(
      "the coordinate kernel acts cleanly and nicely",
      check_special(g, coordinate_kernel_ball(g, radius), radius), false));

  std::vector<Element> gens;
  for (int v = 0; v < g.size(); ++v)
    for (int e = 1; e < g.order(v); ++e)
      gens.push_back(normal_form(g, {{v, e}}));
  out.push_back(harvest("the full group transports corners",
                        check_special(g, gens, std::min(radius, 2)), true));
  return out;
}

// ---------------------------------------------------------------------------
// groupoid suite

inline std::vector<CheckResult> verify_groupoids(const DefiningGraph& g,
                                                 int radius,
                                                 std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);
  const std::vector<Chamber> ball = chamber_ball(g, std::min(radius, 2));
  const std::vector<VSet> sphericals = g.spherical_sets();
  const std::vector<int> id = identity_permutation(g.size());

  {
    // Left multiplication satisfies every groupoid condition on every
    // spherical residue, and composing its adjacent maps along any gallery
    // gives back the type-preserving translation.
    detail::Checker c("left multiplication induces residue groupoids");
    std::vector<Chamber> bases = detail::sample_chambers(ball, 6, rng);
    for (VSet J : sphericals)
      for (const Chamber& base : bases) {
        ResidueGroupoid phi = gamma_groupoid(J, base);
        try {
          validate_groupoid(phi);
          c.expect(true, "");
        } catch (const validation_error& e) {
          std::string msg = e.what();
          c.expect(false, [&] { return msg; });
        }
        for (const Chamber& a : phi.chambers)
          for (const Chamber& b : phi.chambers) {
            ChamberMap m = groupoid_map(phi, a, b);
            c.expect(m == ChamberMap{a, b, id}, [&] {
              return "composed map is not the translation: " + show(m);
            });
          }
      }
    out.push_back(c.result);
  }

  {
    // Handing extend_groupoid only the adjacent maps reproduces the full
    // groupoid, for finite residues and for a bounded infinite one.
    detail::Checker c("gallery extension rebuilds groupoids");
    std::vector<std::pair<VSet, int>> cases;
    for (VSet J : sphericals) cases.push_back({J, -1});
    if (!g.is_spherical(g.all())) cases.push_back({g.all(), std::min(radius, 2)});
    for (auto [J, rad] : cases) {
      ResidueGroupoid phi = gamma_groupoid(J, Chamber{identity(g)}, rad);
      std::vector<ChamberMap> maps;
      for (const auto& [key, m] : phi.adjacent_maps) maps.push_back(m);
      try {
        c.expect(extend_groupoid(J, phi.base, maps, {}, rad) == phi,
                 "extension differs from the groupoid it came from");
      } catch (const validation_error& e) {
        std::string msg = e.what();
        c.expect(false, [&] { return msg; });
      }
    }
    out.push_back(c.result);
  }

  {
    // Seeded bad inputs are rejected with the right condition. The moved
    // shared vertex needs an automorphism moving a vertex; graphs without
    // one still exercise the completeness and well-formedness rejections.
    detail::Checker c("extension rejects seeded violations");
    std::vector<std::vector<int>> autos;
    try {
      autos = graph_automorphisms(g);
    } catch (const domain_error&) {
      autos = {id};
    }
    for (const auto& sig : autos) {
      if (sig == id) continue;
      int m = 0;
      while (sig[m] == m) ++m;
      std::vector<int> siginv(sig.size());
      for (size_t q = 0; q < sig.size(); ++q) siginv[sig[q]] = static_cast<int>(q);
      std::vector<Chamber> cs = residue(vbit(m), Chamber{identity(g)});
      std::vector<ChamberMap> maps;
      for (const Chamber& a : cs)
        for (const Chamber& b : cs) {
          if (a == b) continue;
          bool abase = a == cs.front();
          bool bbase = b == cs.front();
          maps.push_back(ChamberMap{
              a, b, abase && !bbase ? sig : (!abase && bbase ? siginv : id)});
        }
      std::string msg;
      try {
        extend_groupoid(vbit(m), cs.front(), maps, cs);
      } catch (const validation_error& e) {
        msg = e.what();
      }
      c.expect(msg.find("intersection") != std::string::npos, [&] {
        return "twist across " + g.name(m) + " slipped through: " + msg;
      });
      break;
    }
    for (VSet J : sphericals) {
      if (vcount(J) != 1) continue;
      ResidueGroupoid phi = gamma_groupoid(J, Chamber{identity(g)});
      std::vector<ChamberMap> maps;
      for (const auto& [key, m] : phi.adjacent_maps) maps.push_back(m);
      maps.pop_back();
      std::string msg;
      try {
        extend_groupoid(J, phi.base, maps, phi.chambers);
      } catch (const validation_error& e) {
        msg = e.what();
      }
      c.expect(msg.find("missing") != std::string::npos,
               "an incomplete set of adjacent maps slipped through");
      std::vector<int> collapse(g.size(), 0);
      std::string msg2;
      try {
        check_chamber_map(ChamberMap{phi.chambers.front(),
                                     phi.chambers.back(), collapse});
      } catch (const validation_error& e) {
        msg2 = e.what();
      }
      c.expect(msg2.find("degree") != std::string::npos,
               "a non-permutation type map slipped through");
      break;
    }
    out.push_back(c.result);
  }

  {
    // Across an i-step, the vertex of an orthogonal rank-1 type lands on a
    // level-adjacent vertex of the same type.
    detail::Checker c("maps keep orthogonal rank-1 vertices on their level");
    for (const Chamber& a : ball)
      for (const Chamber& b : ball) {
        auto i = adjacency(a, b);
        if (!i) continue;
        ChamberMap f{a, b, id};
        for (int j : vmembers(g.perp(vbit(*i)))) {
          BVertex v1 = vertex_of(a, vbit(j));
          BVertex v2 = apply(f, v1);
          c.expect(v2 == vertex_of(b, vbit(j)) && level_adjacent(v1, v2),
                   [&] {
                     return "vertex " + show(v1) + " leaves its level across " +
                            g.name(*i);
                   });
        }
      }
    out.push_back(c.result);
  }

  {
    // Conjugating by translations is an action matching the translated base.
    detail::Checker c("translation acts on groupoids");
    for (int trial = 0; trial < 6; ++trial) {
      Element t1 = detail::random_element(g, rng, radius);
      Element t2 = detail::random_element(g, rng, radius);
      VSet J = sphericals[std::uniform_int_distribution<size_t>(
          0, sphericals.size() - 1)(rng)];
      ResidueGroupoid phi = gamma_groupoid(J, Chamber{identity(g)});
      c.expect(translate_groupoid(t1, phi) ==
                   gamma_groupoid(J, Chamber{t1}),
               "translated groupoid misses the translated base");
      c.expect(translate_groupoid(t1, translate_groupoid(t2, phi)) ==
                   translate_groupoid(multiply(t1, t2), phi),
               "translation does not compose as an action");
    }
    out.push_back(c.result);
  }

  {
    // Every groupoid on the chambers through a vertex passes the full
    // validation; the enumeration is pruned by the intersection condition.
    detail::Checker c("vertex groupoids pass full validation");
    for (VSet J : sphericals) {
      if (!J) continue;
      BVertex v = vertex_of(Chamber{identity(g)}, J);
      try {
        for (const ResidueGroupoid& psi : all_residue_groupoids(v)) {
          try {
            validate_groupoid(psi);
            c.expect(true, "");
          } catch (const validation_error& e) {
            std::string msg = e.what();
            c.expect(false, [&] { return msg; });
          }
        }
      } catch (const domain_error&) {
        // enumeration too large for this graph; other batteries still apply
      }
    }
    out.push_back(c.result);
  }

  return out;
}

// ---------------------------------------------------------------------------
// hierarchy suite

inline std::vector<CheckResult> verify_hierarchy(const DefiningGraph& g,
                                                 int radius,
                                                 std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);
  std::vector<int> order(g.size());
  std::iota(order.begin(), order.end(), 0);
  const ClassOrder ord = class_order_for_gamma(g, order);
  const std::vector<VSet> sphericals = g.spherical_sets();
  const std::vector<Chamber> ball = chamber_ball(g, std::min(radius, 2));

  {
    // The order on classes is total, monotone in the type, and its top
    // spherical type has empty perp, hence a singleton class.
    detail::Checker c("the class order is total with one top");
    for (VSet J1 : sphericals)
      for (VSet J2 : sphericals) {
        if (J1 == J2) continue;
        c.expect(orbit_key(ord, J1) != orbit_key(ord, J2),
                 "two classes share an order key");
        if ((J1 & ~J2) == 0)
          c.expect(orbit_key(ord, J1) < orbit_key(ord, J2),
                   "a subtype fails to come first");
      }
    VSet top = 0;
    for (VSet J : sphericals)
      if (orbit_key(ord, J) > orbit_key(ord, top)) top = J;
    c.expect(g.perp(top) == 0, "the top class is not a singleton");
    out.push_back(c.result);
  }

  {
    // Ascent stays in the common chamber, keeps the type sandwich, strictly
    // raises the class, and rewrites the rank-1 downset by the order cutoff.
    detail::Checker c("ascent raises classes through the chamber");
    for (const Chamber& ch : ball)
      for (const BVertex& v : chamber_vertices(ch))
        for (const BVertex& u : chamber_vertices(ch)) {
          if (rank(u) != 1) continue;
          int i = vmembers(u.type_std)[0];
          if (!vin(g.perp(v.type_std), i)) continue;
          BVertex w = ascent(v, u, ord);
          bool sandwich = (u.type_std & ~w.type_std) == 0 &&
                          (w.type_std & ~(v.type_std | u.type_std)) == 0;
          c.expect(sandwich && vertex_in_chamber(w, ch) &&
                       orbit_key(ord, w.type_std) > orbit_key(ord, v.type_std),
                   [&] { return "ascent misplaces " + show(v); });
          std::vector<BVertex> got;
          for (int m : vmembers(w.type_std)) got.push_back(vertex_of(ch, vbit(m)));
          std::vector<BVertex> want{u};
          for (int m : vmembers(v.type_std))
            if (ord.label_of[m] > ord.label_of[i])
              want.push_back(vertex_of(ch, vbit(m)));
          std::sort(got.begin(), got.end());
          std::sort(want.begin(), want.end());
          c.expect(got == want,
                   [&] { return "downset cutoff fails at " + show(v); });
          if (rank(v) == 0)
            c.expect(w == u, [&] { return "rank-0 ascent moved off " + show(u); });
        }
    out.push_back(c.result);
  }

  {
    // Translating the inputs translates the ascent.
    detail::Checker c("ascent is translation-equivariant");
    for (int trial = 0; trial < 5; ++trial) {
      Element t = detail::random_element(g, rng, radius);
      for (const Chamber& ch : chamber_ball(g, 1))
        for (const BVertex& v : chamber_vertices(ch))
          for (const BVertex& u : chamber_vertices(ch)) {
            if (rank(u) != 1) continue;
            int i = vmembers(u.type_std)[0];
            if (!vin(g.perp(v.type_std), i)) continue;
            c.expect(ascent(translate(t, v), translate(t, u), ord) ==
                         translate(t, ascent(v, u, ord)),
                     [&] { return "ascent breaks under " + show(t); });
          }
    }
    out.push_back(c.result);
  }

  {
    // Ascending by a smaller direction first is absorbed by a larger
    // adjacent one.
    detail::Checker c("ascent composes across the order");
    for (const Chamber& ch : chamber_ball(g, 1))
      for (const BVertex& v : chamber_vertices(ch)) {
        VSet p = g.perp(v.type_std);
        for (int i : vmembers(p))
          for (int j : vmembers(p)) {
            if (!g.adjacent(i, j) || ord.label_of[i] >= ord.label_of[j])
              continue;
            BVertex u1 = vertex_of(ch, vbit(i));
            BVertex u2 = vertex_of(ch, vbit(j));
            c.expect(ascent(ascent(v, u1, ord), u2, ord) ==
                         ascent(v, u2, ord),
                     [&] { return "double ascent breaks at " + show(v); });
          }
      }
    out.push_back(c.result);
  }

  {
    // Across an i-step the type-J vertices of the two chambers ascend to the
    // same vertex through the wedge, and to level-adjacent vertices through
    // matching orthogonal rank-1 directions.
    detail::Checker c("adjacent chambers ascend together");
    for (const Chamber& c1 : ball)
      for (const Chamber& c2 : ball) {
        auto i = adjacency(c1, c2);
        if (!i) continue;
        BVertex u = wedge(c1, c2);
        for (VSet J : sphericals) {
          if (!J || (J & ~g.perp(vbit(*i)))) continue;
          BVertex v1 = vertex_of(c1, J);
          BVertex v2 = vertex_of(c2, J);
          c.expect(ascent(v1, u, ord) == ascent(v2, u, ord),
                   [&] { return "wedge ascent splits at " + show(v1); });
          for (int j : vmembers(g.perp(J | vbit(*i)))) {
            BVertex w1 = ascent(v1, vertex_of(c1, vbit(j)), ord);
            BVertex w2 = ascent(v2, vertex_of(c2, vbit(j)), ord);
            c.expect(w1 != w2 && level_adjacent(w1, w2), [&] {
              return "parallel ascents leave the level at " + show(v1);
            });
          }
        }
      }
    out.push_back(c.result);
  }

  {
    // The hierarchy laws: class groupoids restrict along ascents and
    // conjugating by a translation relabels the class.
    detail::Checker c("class groupoids restrict and translate");
    GammaHierarchy h{ord};
    try {
      c.result.checked = detail::sweep_hierarchy(h, std::min(radius, 2));
    } catch (const validation_error& e) {
      std::string msg = e.what();
      c.expect(false, [&] { return msg; });
    }
    out.push_back(c.result);
  }

  GammaHierarchy h = build_gamma_hierarchy(ord, 1);

  {
    // The groupoid the hierarchy induces on a perp residue is again left
    // multiplication.
    detail::Checker c("hierarchy groupoids on perp residues");
    for (VSet J : sphericals) {
      VSet p = g.perp(J);
      int rad = g.is_spherical(p) ? -1 : std::min(radius, 2);
      for (const Chamber& base :
           {Chamber{identity(g)},
            Chamber{detail::random_element(g, rng, radius)}}) {
        try {
          c.expect(phi_from_hierarchy(J, base, h, rad) ==
                       gamma_groupoid(p, base, rad),
                   "induced groupoid is not left multiplication");
        } catch (const validation_error& e) {
          std::string msg = e.what();
          c.expect(false, [&] { return msg; });
        }
      }
    }
    out.push_back(c.result);
  }

  {
    // Extending the left-multiplication groupoid on the chambers through a
    // vertex reproduces left multiplication on the whole class residue, and
    // restricting back returns the original.
    detail::Checker c("vertex groupoid extension round trip");
    for (VSet J : sphericals) {
      if (!J) continue;
      BVertex v = vertex_of(Chamber{identity(g)}, J);
      VSet closed = g.perp_closed(J);
      int rad = g.is_spherical(closed) ? -1 : std::min(radius, 2);
      ResidueGroupoid psi = gamma_groupoid(J, Chamber{v.rep});
      try {
        ResidueGroupoid bar = barpsi_extend(psi, h, rad);
        c.expect(bar == gamma_groupoid(closed, Chamber{level_class(v).rep}, rad),
                 "extension is not left multiplication");
        ResidueGroupoid back = restrict_groupoid(bar, J, Chamber{v.rep});
        c.expect(back.chambers == psi.chambers &&
                     back.adjacent_maps == psi.adjacent_maps,
                 "restriction does not return the vertex groupoid");
      } catch (const validation_error& e) {
        std::string msg = e.what();
        c.expect(false, [&] { return msg; });
      }
    }
    out.push_back(c.result);
  }

  {
    // The holonomy action: permutations compose, and elements of the group
    // fix the left-multiplication groupoid.
    detail::Checker c("holonomy is a permutation homomorphism");
    for (VSet J : sphericals) {
      if (vcount(J) != 1) continue;
      BVertex v = vertex_of(Chamber{identity(g)}, J);
      VSet closed = g.perp_closed(J);
      std::vector<Element> elements;
      for (const Element& t : enumerate_ball(g, 1))
        if ((t.support() & ~closed) == 0) elements.push_back(t);
      try {
        HolonomyAction act = groupoid_holonomy(elements, v, h);
        int idx0 = -1;
        for (size_t k = 0; k < act.groupoids.size(); ++k) {
          bool plain = true;
          for (const auto& [key, m] : act.groupoids[k].adjacent_maps)
            plain = plain && m.sigma == order;
          if (plain) idx0 = static_cast<int>(k);
        }
        c.expect(idx0 >= 0, "no left-multiplication groupoid in the listing");
        for (const std::vector<int>& p : act.perms)
          c.expect(idx0 >= 0 && p[idx0] == idx0,
                   "a group element moves the left-multiplication groupoid");
      } catch (const validation_error& e) {
        std::string msg = e.what();
        c.expect(false, [&] { return msg; });
      }
      for (int m = 0; m < g.size(); ++m) {
        if (vin(closed, m)) continue;
        bool rejected = false;
        try {
          groupoid_holonomy({normal_form(g, {{m, 1}})}, v, h);
        } catch (const domain_error&) {
          rejected = true;
        }
        c.expect(rejected, "an element moving the class was accepted");
        break;
      }
    }
    out.push_back(c.result);
  }

  return out;
}

// ---------------------------------------------------------------------------
// atlases suite

inline std::vector<CheckResult> verify_atlases(const DefiningGraph& g,
                                               int radius,
                                               std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);
  TypedAtlas plain = standard_atlas(g);
  Chamber base = base_chamber(g);
  std::vector<Chamber> ball = chamber_ball(g, radius);
  std::vector<int> id = identity_permutation(g.size());
  // standard when no vertex group is abelian of order >= 3; the checks then
  // exercise the default tables twice
  TypedAtlas twisted = inversion_twist_atlas(g, radius + 1);

  auto pick_chamber = [&]() {
    return ball[std::uniform_int_distribution<size_t>(0, ball.size() - 1)(
        rng)];
  };
  auto random_gallery = [&](int start_len, int word_len) {
    Gallery gal{Chamber{detail::random_element(g, rng, start_len)}, {}};
    int len = std::uniform_int_distribution<int>(0, word_len)(rng);
    for (int p = 0; p < len; ++p) {
      int v = std::uniform_int_distribution<int>(0, g.size() - 1)(rng);
      gal.letters.push_back(
          {v, std::uniform_int_distribution<int>(1, g.order(v) - 1)(rng)});
    }
    return gal;
  };

  {
    detail::Checker c("standard and inversion atlases validate");
    for (const TypedAtlas* at : {&plain, &twisted}) {
      try {
        validate_atlas(g, *at, radius);
        c.expect(true, "");
      } catch (const validation_error& e) {
        std::string msg = e.what();
        c.expect(false, [&] { return msg; });
      }
    }
    out.push_back(c.result);
  }

  {
    detail::Checker c("standard actions are right multiplications");
    for (const Chamber& d : detail::sample_chambers(ball, 8, rng))
      for (int j = 0; j < g.size(); ++j) {
        BVertex v = vertex_of(d, vbit(j));
        for (const Element& a : group_elements(g, vbit(j)))
          c.expect(atlas_apply(g, plain, v, a, d) ==
                       Chamber{multiply(d.label, invert(a))},
                   [&] { return show(d.label) + " times " + show(a); });
      }
    out.push_back(c.result);
  }

  {
    detail::Checker c("translations commute with the standard actions");
    for (int t = 0; t < 20; ++t) {
      Chamber d = pick_chamber();
      Element tr = detail::random_element(g, rng, radius);
      int j = std::uniform_int_distribution<int>(0, g.size() - 1)(rng);
      Element a{normal_form(
          g, {{j, std::uniform_int_distribution<int>(1, g.order(j) - 1)(
                      rng)}})};
      BVertex v = vertex_of(d, vbit(j));
      c.expect(translate(tr, atlas_apply(g, plain, v, a, d)) ==
                   atlas_apply(g, plain, translate(tr, v), a,
                               translate(tr, d)),
               [&] { return show(tr) + " against " + show(d.label); });
    }
    out.push_back(c.result);
  }

  {
    detail::Checker c("atlas words replay to their galleries");
    for (int t = 0; t < 30; ++t) {
      Gallery gal = random_gallery(radius, 3);
      for (const TypedAtlas* at : {&plain, &twisted}) {
        Gallery back =
            gallery_from_word(g, *at, atlas_word(g, *at, gal), gal.start);
        c.expect(gallery_chambers(back) == gallery_chambers(gal),
                 [&] { return show(gal.start.label); });
      }
    }
    out.push_back(c.result);
  }

  {
    detail::Checker c("letters invert and carry the typed support");
    for (int t = 0; t < 20; ++t) {
      Chamber d = pick_chamber();
      int j = std::uniform_int_distribution<int>(0, g.size() - 1)(rng);
      int e = std::uniform_int_distribution<int>(1, g.order(j) - 1)(rng);
      Chamber d2{multiply(d.label, normal_form(g, {{j, e}}))};
      for (const TypedAtlas* at : {&plain, &twisted}) {
        AtlasLetter fwd = atlas_letter(g, *at, d, d2);
        AtlasLetter bwd = atlas_letter(g, *at, d2, d);
        c.expect(!fwd.element.is_identity() &&
                     !(fwd.element.support() & ~vbit(fwd.vertex)),
                 [&] { return show(fwd); });
        c.expect(fwd.vertex == tau_at(g, at->typing, d)[j],
                 [&] { return show(fwd); });
        c.expect(bwd.element == invert(fwd.element) &&
                     bwd.vertex == fwd.vertex,
                 [&] { return show(bwd); });
      }
    }
    out.push_back(c.result);
  }

  {
    detail::Checker c("gallery transfer depends only on the endpoints");
    for (int t = 0; t < 15; ++t) {
      Gallery gal = random_gallery(radius, 3);
      Chamber end = gallery_chambers(gal).back();
      Gallery direct = gallery_between(gal.start, end);
      Chamber s2{detail::random_element(g, rng, radius)};
      for (const TypedAtlas* a1 : {&plain, &twisted})
        for (const TypedAtlas* a2 : {&plain, &twisted})
          c.expect(transfer_gallery(g, *a1, *a2, gal, s2) ==
                       transfer_gallery(g, *a1, *a2, direct, s2),
                   [&] { return show(gal.start.label) + " to " +
                                show(end.label); });
    }
    out.push_back(c.result);
  }

  {
    detail::Checker c("extensions reproduce translations on the ball");
    for (int t = 0; t < 5; ++t) {
      Element gamma = detail::random_element(g, rng, radius);
      AtlasExtension ext = extend_automorphism(
          g, seed_permutation(g, plain, base, plain, Chamber{gamma}), base,
          Chamber{gamma}, plain, plain, radius);
      c.expect(ext.table.size() == ball.size(), "table misses the ball");
      bool good = true;
      for (const ChamberMap& m : ext.table)
        good = good && m.to.label == multiply(gamma, m.from.label) &&
               m.sigma == id;
      c.expect(good, [&] { return show(gamma); });
    }
    out.push_back(c.result);
  }

  {
    detail::Checker c("extension tables are deterministic and admissible");
    AtlasExtension ext1 =
        extend_automorphism(g, id, base, base, twisted, plain, radius);
    AtlasExtension ext2 =
        extend_automorphism(g, id, base, base, twisted, plain, radius);
    c.expect(ext1 == ext2, "two runs disagree");
    for (const ChamberMap& m : ext1.table) {
      try {
        check_chamber_map(m);
        c.expect(true, "");
      } catch (const validation_error& e) {
        std::string msg = e.what();
        c.expect(false, [&] { return msg; });
      }
    }
    AtlasExtension round =
        compose_extensions(invert_extension(ext1), ext1);
    bool fixed = true;
    for (const ChamberMap& m : round.table)
      fixed = fixed && m.from == m.to && m.sigma == id;
    c.expect(fixed, "inverse does not cancel the extension");
    out.push_back(c.result);
  }

  {
    detail::Checker c("groupoid-induced atlases validate");
    int rad = std::min(radius, 2);
    ResidueGroupoid phi0 = gamma_groupoid(g.all(), base, rad);
    c.expect(atlas_from_groupoid(g, phi0) == plain,
             "left multiplication does not induce the standard atlas");
    // a parity twist needs an order-2 letter and an involution fixing its
    // closed star pointwise; skip graphs without one
    int letter = -1;
    std::vector<int> alpha;
    try {
      for (int m = 0; m < g.size() && letter < 0; ++m) {
        if (g.order(m) != 2) continue;
        for (const std::vector<int>& p : graph_automorphisms(g)) {
          if (p == id) continue;
          bool fits = true;
          for (int x = 0; x < g.size(); ++x)
            fits = fits && p[p[x]] == x && (!vin(g.star(m), x) || p[x] == x);
          if (fits) {
            letter = m;
            alpha = p;
            break;
          }
        }
      }
    } catch (const domain_error&) {
      letter = -1;
    }
    if (letter >= 0) {
      ResidueGroupoid phi = parity_twist_groupoid(g, letter, alpha, radius);
      try {
        validate_groupoid(phi);
        TypedAtlas at = atlas_from_groupoid(g, phi);
        validate_atlas(g, at, radius);
        c.expect(true, "");
        c.expect(!at.typing.tau.empty(), "parity twist left no trace");
        for (int t = 0; t < 5; ++t) {
          Element l1 = detail::random_element(g, rng, radius / 2);
          Element l2 = detail::random_element(g, rng, radius / 2);
          ChamberMap left =
              groupoid_map(phi, Chamber{multiply(l1, l2)}, base);
          ChamberMap right =
              compose(groupoid_map(phi, Chamber{l1}, base),
                      translate(l1, groupoid_map(phi, Chamber{l2}, base)));
          c.expect(left == right, [&] {
            return show(l1) + " and " + show(l2);
          });
        }
      } catch (const validation_error& e) {
        std::string msg = e.what();
        c.expect(false, [&] { return msg; });
      }
    }
    out.push_back(c.result);
  }

  {
    detail::Checker c("pushforwards compose along translations");
    for (int t = 0; t < 3; ++t) {
      Element a = detail::random_element(g, rng, 2);
      Element b = detail::random_element(g, rng, 2);
      c.expect(pushforward(g, a, plain) == plain,
               "the standard atlas moved");
      c.expect(pushforward(g, multiply(a, b), twisted) ==
                   pushforward(g, a, pushforward(g, b, twisted)),
               [&] { return show(a) + " after " + show(b); });
    }
    out.push_back(c.result);
  }

  {
    detail::Checker c("typed panel adjacency is typing independent");
    std::vector<TypedAtlas> atlases{twisted};
    try {
      for (const std::vector<int>& p : graph_automorphisms(g))
        if (p != id) {
          atlases.push_back(constant_twist_atlas(g, p));
          break;
        }
    } catch (const domain_error&) {
    }
    for (const TypedAtlas& at : atlases)
      for (const Chamber& d : detail::sample_chambers(ball, 6, rng)) {
        std::vector<int> tau = tau_at(g, at.typing, d);
        for (int j1 = 0; j1 < g.size(); ++j1)
          for (int j2 = j1 + 1; j2 < g.size(); ++j2)
            c.expect(g.adjacent(tau[j1], tau[j2]) == g.adjacent(j1, j2),
                     [&] { return g.name(j1) + " with " + g.name(j2); });
      }
    out.push_back(c.result);
  }

  return out;
}

// ---------------------------------------------------------------------------
// fuchsian suite

namespace detail {

inline void circuit_dfs(const DefiningGraph& g, std::vector<int>& path,
                        VSet used, int length,
                        std::vector<std::vector<int>>& out) {
  if (static_cast<int>(path.size()) == length) {
    if (g.adjacent(path.back(), path.front()) && path[1] < path.back())
      out.push_back(path);
    return;
  }
  for (int v : vmembers(g.nbrs(path.back()))) {
    if (v <= path.front() || vin(used, v)) continue;
    path.push_back(v);
    circuit_dfs(g, path, used | vbit(v), length, out);
    path.pop_back();
  }
}

// Every circuit of the given length, listed once: the smallest vertex comes
// first and the second entry is below the last, which kills rotations and
// reflections.
inline std::vector<std::vector<int>> circuits_of_length(const DefiningGraph& g,
                                                        int length) {
  std::vector<std::vector<int>> out;
  if (length < 3) return out;
  for (int s = 0; s < g.size(); ++s) {
    std::vector<int> path{s};
    circuit_dfs(g, path, vbit(s), length, out);
  }
  return out;
}

// Direct circuit test for a generalized m-gon: connected and bipartite, every
// pair of edges (equal pairs included) lies on a common 2m-circuit, and any
// two 2m-circuits sharing vertices admit an isomorphism fixing the shared
// vertices, realized by one of the 4m dihedral alignments.
inline bool circuit_gen_mgon(const DefiningGraph& g, int m) {
  if (m < 2) return false;
  std::vector<std::pair<int, int>> edges = graph_edges(g);
  if (edges.empty()) return false;
  for (int d : bfs_distances(g, 0))
    if (d < 0) return false;
  std::vector<int> color(g.size(), -1);
  color[0] = 0;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : vmembers(g.nbrs(u))) {
      if (color[v] < 0) {
        color[v] = 1 - color[u];
        stack.push_back(v);
      } else if (color[v] == color[u]) {
        return false;
      }
    }
  }
  const int L = 2 * m;
  std::vector<std::vector<int>> circuits = circuits_of_length(g, L);
  std::vector<std::set<std::pair<int, int>>> circuit_edges;
  std::vector<VSet> circuit_verts;
  for (const std::vector<int>& c : circuits) {
    std::set<std::pair<int, int>> es;
    VSet vs = 0;
    for (int t = 0; t < L; ++t) {
      int a = c[t], b = c[(t + 1) % L];
      es.insert({std::min(a, b), std::max(a, b)});
      vs |= vbit(c[t]);
    }
    circuit_edges.push_back(std::move(es));
    circuit_verts.push_back(vs);
  }
  for (size_t e1 = 0; e1 < edges.size(); ++e1)
    for (size_t e2 = e1; e2 < edges.size(); ++e2) {
      bool found = false;
      for (const auto& es : circuit_edges)
        if (es.count(edges[e1]) && es.count(edges[e2])) {
          found = true;
          break;
        }
      if (!found) return false;
    }
  for (size_t i = 0; i < circuits.size(); ++i)
    for (size_t j = i + 1; j < circuits.size(); ++j) {
      VSet shared = circuit_verts[i] & circuit_verts[j];
      if (!shared) continue;
      const std::vector<int>&c1 = circuits[i], &c2 = circuits[j];
      bool aligned = false;
      for (int s = 0; s < L && !aligned; ++s)
        for (int dir : {1, -1}) {
          bool fixes = true;
          for (int t = 0; t < L && fixes; ++t)
            if (vin(shared, c1[t]) &&
                c2[((s + dir * t) % L + L) % L] != c1[t])
              fixes = false;
          if (fixes) {
            aligned = true;
            break;
          }
        }
      if (!aligned) return false;
    }
  return true;
}

}  // namespace detail

inline std::vector<CheckResult> verify_fuchsian(const DefiningGraph& g,
                                                int radius,
                                                std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);
  PolygonReport rep = polygon_report(g);
  CaseReport cr = classify_case(g);

  {
    // The BFS-based report must agree with the direct circuit test at the
    // graph's own diameter. Skipped for big graphs: the circuit enumeration
    // is exponential.
    detail::Checker c("polygon detection matches the circuit test");
    if (g.size() <= 16) {
      int m = std::max(2, rep.m);
      c.expect(detail::circuit_gen_mgon(g, m) == rep.is_gen_mgon,
               [&] { return "disagreement at m=" + std::to_string(m); });
    }
    out.push_back(c.result);
  }

  {
    detail::Checker c("subdividing a thick polygon doubles the gonality");
    size_t edge_count = detail::graph_edges(g).size();
    if (rep.is_gen_mgon && rep.thick && g.size() + edge_count <= 64) {
      DefiningGraph sub = subdivide_edges(g, 2);
      PolygonReport srep = polygon_report(sub);
      c.expect(srep.is_gen_mgon, [&] { return srep.reason; });
      c.expect(srep.m == 2 * rep.m && srep.girth == 2 * srep.m,
               [&] { return "m=" + std::to_string(srep.m) + " girth=" +
                            std::to_string(srep.girth); });
      c.expect(!srep.thick, "midpoints have degree 2");
    }
    out.push_back(c.result);
  }

  {
    // The case and the multiset of per-side (degree, order) pairs cannot
    // depend on vertex ids.
    detail::Checker c("classification is invariant under relabeling");
    auto side_pairs = [](const std::array<int, 4>& p) {
      std::pair<int, int> a{p[0], p[2]}, b{p[1], p[3]};
      return a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
    };
    std::vector<int> perm(g.size());
    std::iota(perm.begin(), perm.end(), 0);
    for (int t = 0; t < 10; ++t) {
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<DefiningGraph::VertexGroup> groups(g.size());
      for (int v = 0; v < g.size(); ++v)
        groups[perm[v]] = detail::copy_group(g, v);
      std::vector<std::pair<int, int>> edges;
      for (auto [a, b] : detail::graph_edges(g))
        edges.push_back({perm[a], perm[b]});
      CaseReport hr = classify_case(DefiningGraph(std::move(groups), edges));
      c.expect(hr.which == cr.which,
               [&] { return "case " + show(cr.which) + " became " +
                            show(hr.which); });
      c.expect(cr.parameters.has_value() == hr.parameters.has_value() &&
                   (!cr.parameters || side_pairs(*cr.parameters) ==
                                          side_pairs(*hr.parameters)),
               "side parameters changed");
    }
    out.push_back(c.result);
  }

  {
    detail::Checker c("links and cell counts match the classification");
    if (cr.which != FuchsianCase::none) {
      LinkReport lr = verify_links(g, radius);
      c.expect(lr.ok(), [&] {
        return lr.ok() ? std::string{} : lr.failures.front();
      });
      c.expect(lr.rank0 > 0 && lr.rank1 > 0 && lr.rank2 > 0,
               "ball misses a rank");
      IncidenceReport ir = edge_cell_incidence(g, std::max(1, radius));
      auto [d1, d2, p1, p2] = *cr.parameters;
      std::map<std::string, int> want;
      if (cr.which != FuchsianCase::iii) want = {{"d1", d1}, {"d2", d2}};
      if (cr.which != FuchsianCase::ii) {
        want["p1"] = p1;
        want["p2"] = p2;
      }
      c.expect(ir.side_multiplicity == want, [&] {
        std::string got;
        for (const auto& [k, v] : ir.side_multiplicity)
          got += " " + k + "=" + std::to_string(v);
        return "multiplicities" + got;
      });
    }
    out.push_back(c.result);
  }

  {
    // has_induced_4cycle scans 4-subsets; the cross-check looks for two
    // non-adjacent vertices with two non-adjacent common neighbours.
    // star_rigid prunes with a backtracker; the cross-check filters raw
    // permutations on small graphs.
    detail::Checker c("rigidity and square scans agree with direct search");
    bool pairs = false;
    for (int a = 0; a < g.size() && !pairs; ++a)
      for (int b = a + 1; b < g.size() && !pairs; ++b) {
        if (g.adjacent(a, b)) continue;
        std::vector<int> common = vmembers(g.nbrs(a) & g.nbrs(b));
        for (size_t x = 0; x < common.size() && !pairs; ++x)
          for (size_t y = x + 1; y < common.size(); ++y)
            if (!g.adjacent(common[x], common[y])) {
              pairs = true;
              break;
            }
      }
    c.expect(has_induced_4cycle(g) == pairs, "induced square scans disagree");
    if (g.size() <= 8) {
      bool rigid = true;
      std::vector<int> p(g.size());
      std::iota(p.begin(), p.end(), 0);
      do {
        bool aut = true;
        for (int a = 0; a < g.size() && aut; ++a)
          for (int b = a + 1; b < g.size() && aut; ++b)
            if (g.adjacent(a, b) != g.adjacent(p[a], p[b])) aut = false;
        bool id = true;
        for (int a = 0; a < g.size(); ++a) id = id && p[a] == a;
        if (!aut || id) continue;
        for (int v = 0; v < g.size() && rigid; ++v) {
          bool fixes_nbrs = true;
          for (int u : vmembers(g.nbrs(v))) fixes_nbrs = fixes_nbrs && p[u] == u;
          if (fixes_nbrs) rigid = false;
        }
      } while (std::next_permutation(p.begin(), p.end()) && rigid);
      c.expect(star_rigid(g) == rigid, "rigidity scans disagree");
    }
    out.push_back(c.result);
  }

  return out;
}

}  // namespace rab
