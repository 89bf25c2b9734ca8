#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rab {

// Thrown for malformed inputs (bad indices, bad tables, mismatched graphs).
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown for well-formed inputs outside an operation's domain
// (e.g. a chamber not in the residue being queried).
struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Subset of the vertex set I as a bitmask. Limits |I| to 64.
using VSet = std::uint64_t;

inline constexpr VSet vbit(int v) { return VSet{1} << v; }
inline constexpr bool vin(VSet s, int v) { return (s >> v) & 1; }
inline int vcount(VSet s) { return std::popcount(s); }

inline std::vector<int> vmembers(VSet s) {
  std::vector<int> out;
  for (int v = 0; s; ++v, s >>= 1)
    if (s & 1) out.push_back(v);
  return out;
}

class DefiningGraph;
inline std::string show_set(const DefiningGraph& g, VSet J);

// A finite simple graph with a finite group attached to each vertex.
// Groups are either cyclic of order p (no table) or given by a full
// multiplication table with identity at index 0.
class DefiningGraph {
 public:
  struct VertexGroup {
    std::string name;
    int order = 0;
    std::vector<std::vector<int>> table;  // empty for cyclic groups
  };

  DefiningGraph(std::vector<VertexGroup> groups,
                const std::vector<std::pair<int, int>>& edges)
      : groups_(std::move(groups)) {
    const int n = static_cast<int>(groups_.size());
    if (n < 1) throw input_error("graph needs at least one vertex");
    if (n > 64) throw input_error("at most 64 vertices supported");
    for (int v = 0; v < n; ++v) validate_group(v);
    adj_.assign(n, 0);
    for (auto [a, b] : edges) {
      if (a < 0 || a >= n || b < 0 || b >= n)
        throw input_error("edge endpoint out of range");
      if (a == b) throw input_error("loops are not allowed");
      if (vin(adj_[a], b)) throw input_error("duplicate edge");
      adj_[a] |= vbit(b);
      adj_[b] |= vbit(a);
    }
    inv_.resize(n);
    for (int v = 0; v < n; ++v) {
      inv_[v].assign(groups_[v].order, -1);
      for (int x = 0; x < groups_[v].order; ++x)
        for (int y = 0; y < groups_[v].order; ++y)
          if (mul(v, x, y) == 0) inv_[v][x] = y;
      for (int x = 0; x < groups_[v].order; ++x)
        if (inv_[v][x] < 0) throw input_error("group element has no inverse");
    }
  }

  int size() const { return static_cast<int>(groups_.size()); }
  VSet all() const { return size() == 64 ? ~VSet{0} : (vbit(size()) - 1); }

  const std::string& name(int v) const { return groups_[v].name; }
  int id_of(const std::string& nm) const {
    for (int v = 0; v < size(); ++v)
      if (groups_[v].name == nm) return v;
    return -1;
  }

  int order(int v) const { return groups_[v].order; }

  int mul(int v, int x, int y) const {
    const auto& grp = groups_[v];
    if (x < 0 || x >= grp.order || y < 0 || y >= grp.order)
      throw input_error("group element index out of range");
    if (grp.table.empty()) return (x + y) % grp.order;
    return grp.table[x][y];
  }

  int inv_elt(int v, int x) const {
    if (x < 0 || x >= groups_[v].order)
      throw input_error("group element index out of range");
    return inv_[v][x];
  }

  bool adjacent(int a, int b) const { return vin(adj_[a], b); }

  // Neighbours of v as a set; never contains v itself.
  VSet nbrs(int v) const { return adj_[v]; }

  // v together with its neighbours.
  VSet star(int v) const { return adj_[v] | vbit(v); }

  void check_vertex(int v) const {
    if (v < 0 || v >= size()) throw input_error("vertex index out of range");
  }

  void check_subset(VSet J) const {
    if (J & ~all()) throw input_error("subset contains unknown vertices");
  }

  // J is spherical when its members are pairwise adjacent (cliques incl. the
  // empty set).
  bool is_spherical(VSet J) const {
    check_subset(J);
    for (VSet rest = J; rest;) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      if (rest & ~adj_[v]) return false;
    }
    return true;
  }

  void check_spherical(VSet J) const {
    if (!is_spherical(J)) throw input_error("subset is not spherical");
  }

  // All spherical subsets, ordered by (size, numeric mask value).
  std::vector<VSet> spherical_sets() const {
    std::vector<VSet> out{0};
    std::vector<VSet> layer{0};
    while (!layer.empty()) {
      std::vector<VSet> next;
      for (VSet J : layer) {
        int lo = J ? 64 - std::countl_zero(J) : 0;
        for (int v = lo; v < size(); ++v) {
          if (vin(J, v)) continue;
          if (J & ~adj_[v]) continue;
          next.push_back(J | vbit(v));
        }
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      out.insert(out.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    return out;
  }

  // perp_closed(J) = intersection over j in J of ({j} union nbrs(j));
  // perp_closed(empty) = I by convention.
  VSet perp_closed(VSet J) const {
    check_spherical(J);
    VSet acc = all();
    for (int v : vmembers(J)) acc &= star(v);
    return acc;
  }

  // perp(J) = perp_closed(J) minus J; perp(empty) = I.
  VSet perp(VSet J) const { return perp_closed(J) & ~J; }

  // sigma must be a bijection I -> I preserving adjacency.
  bool is_graph_automorphism(const std::vector<int>& sigma) const {
    const int n = size();
    if (static_cast<int>(sigma.size()) != n) return false;
    VSet seen = 0;
    for (int v = 0; v < n; ++v) {
      if (sigma[v] < 0 || sigma[v] >= n || vin(seen, sigma[v])) return false;
      seen |= vbit(sigma[v]);
    }
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (adjacent(a, b) != adjacent(sigma[a], sigma[b])) return false;
    return true;
  }

 private:
  void validate_group(int v) {
    auto& grp = groups_[v];
    if (grp.order < 2) throw input_error("vertex group must have order >= 2");
    if (grp.table.empty()) return;
    const int p = grp.order;
    if (static_cast<int>(grp.table.size()) != p)
      throw input_error("multiplication table has wrong size");
    for (const auto& row : grp.table) {
      if (static_cast<int>(row.size()) != p)
        throw input_error("multiplication table has wrong size");
      for (int x : row)
        if (x < 0 || x >= p) throw input_error("table entry out of range");
    }
    for (int x = 0; x < p; ++x)
      if (grp.table[0][x] != x || grp.table[x][0] != x)
        throw input_error("table identity must be element 0");
    for (int x = 0; x < p; ++x)
      for (int y = 0; y < p; ++y)
        for (int z = 0; z < p; ++z)
          if (grp.table[grp.table[x][y]][z] != grp.table[x][grp.table[y][z]])
            throw input_error("multiplication table is not associative");
  }

  std::vector<VertexGroup> groups_;
  std::vector<VSet> adj_;
  std::vector<std::vector<int>> inv_;
};

inline std::string show_set(const DefiningGraph& g, VSet J) {
  std::string out = "{";
  for (int v : vmembers(J)) {
    if (out.size() > 1) out += ',';
    out += g.name(v);
  }
  return out + "}";
}

}  // namespace rab
