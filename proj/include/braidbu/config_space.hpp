#pragma once

#include <algorithm>
#include <cstddef>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "braidbu/error.hpp"
#include "braidbu/graph.hpp"
#include "braidbu/permutation.hpp"

namespace braidbu {

/// A cell e_1 x ... x e_m of G^m, stored as graph cell ids (see Graph).
using ConfCell = std::vector<int>;

/// One codimension-1 face pair of a cube: the edge coordinate at `position`
/// replaced by its low endpoint (`low`) or its high endpoint (`high`). Both
/// are indices into the cells of the next lower dimension.
struct Facet {
  int position = 0;
  int low = 0;
  int high = 0;
};

/// sigma . (y_1, ..., y_m) = (y_{sigma(1)}, ..., y_{sigma(m)}).
inline ConfCell act(const Permutation& sigma, const ConfCell& c) {
  if (sigma.size() != static_cast<int>(c.size())) throw InvalidInput("act: permutation size differs from cell size");
  ConfCell out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[static_cast<std::size_t>(sigma.map0(static_cast<int>(i)))];
  return out;
}

/// c_1^k . c, i.e. the tuple rotated left by k places.
inline ConfCell rotate(const ConfCell& c, int k) {
  const int m = static_cast<int>(c.size());
  ConfCell out(c.size());
  for (int i = 0; i < m; ++i) out[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(((i + k) % m + m) % m)];
  return out;
}

inline int cell_dimension(const Graph& g, const ConfCell& c) {
  return static_cast<int>(std::count_if(c.begin(), c.end(), [&](int x) { return !g.is_vertex_cell(x); }));
}

inline std::string format_cell(const Graph& g, const ConfCell& c) {
  std::string out = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += g.cell_name(c[i]);
  }
  return out + ")";
}

/// Vertex of `c` obtained by sliding every edge coordinate to its low
/// endpoint (the "source" corner of the cube).
inline ConfCell low_corner(const Graph& g, const ConfCell& c) {
  ConfCell out = c;
  for (auto& x : out) x = g.closure(x).first;
  return out;
}

/// Abrams' discrete configuration space DF_m(G) as a cubical complex.
///
/// Cells of each dimension are sorted lexicographically by their tuple of
/// graph cell ids, so indices are deterministic.
class CubeComplex {
 public:
  CubeComplex() = default;

  CubeComplex(Graph graph, int particles) : graph_(std::move(graph)), particles_(particles) {
    if (particles < 1) throw InvalidParameter("need at least one particle");
    base_ = static_cast<std::uint64_t>(graph_.num_cells());
    enumerate();
  }

  const Graph& graph() const { return graph_; }
  int particles() const { return particles_; }
  int dimension() const { return static_cast<int>(cells_.size()) - 1; }

  int count(int dim) const {
    return dim < 0 || dim > dimension() ? 0 : static_cast<int>(cells_[static_cast<std::size_t>(dim)].size());
  }

  const ConfCell& cell(int dim, int index) const {
    return cells_.at(static_cast<std::size_t>(dim)).at(static_cast<std::size_t>(index));
  }

  /// Facets of a cell, one entry per edge coordinate, by increasing position.
  const std::vector<Facet>& facets(int dim, int index) const {
    return facets_.at(static_cast<std::size_t>(dim)).at(static_cast<std::size_t>(index));
  }

  /// Index (within its dimension) of a tuple, if it is a cell of the complex.
  std::optional<int> find(const ConfCell& c) const {
    if (static_cast<int>(c.size()) != particles_) return std::nullopt;
    auto it = index_.find(key(c));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  int index_of(const ConfCell& c) const {
    auto i = find(c);
    if (!i) throw InvalidInput("cell " + format_cell(graph_, c) + " is not in the complex");
    return *i;
  }

  /// The lexicographically smallest 0-cell; (0, 1, ..., m-1) for graphs whose
  /// first m vertices are pairwise distinct (always the case here).
  int base_vertex() const { return 0; }

  std::string describe(int dim, int index) const { return format_cell(graph_, cell(dim, index)); }

 private:
  std::uint64_t key(const ConfCell& c) const {
    std::uint64_t k = 0;
    for (int x : c) k = k * base_ + static_cast<std::uint64_t>(x);
    return k;
  }

  void enumerate() {
    const int m = particles_;
    ConfCell current;
    std::vector<int> used(static_cast<std::size_t>(graph_.num_vertices()), 0);
    std::vector<std::vector<ConfCell>> by_dim;

    // Depth-first over coordinates, keeping closures pairwise disjoint.
    auto rec = [&](auto&& self, int depth) -> void {
      if (depth == m) {
        const int d = cell_dimension(graph_, current);
        if (static_cast<int>(by_dim.size()) <= d) by_dim.resize(static_cast<std::size_t>(d) + 1);
        by_dim[static_cast<std::size_t>(d)].push_back(current);
        return;
      }
      for (int c = 0; c < graph_.num_cells(); ++c) {
        auto [lo, hi] = graph_.closure(c);
        if (used[static_cast<std::size_t>(lo)] || used[static_cast<std::size_t>(hi)]) continue;
        used[static_cast<std::size_t>(lo)] = used[static_cast<std::size_t>(hi)] = 1;
        current.push_back(c);
        self(self, depth + 1);
        current.pop_back();
        used[static_cast<std::size_t>(lo)] = used[static_cast<std::size_t>(hi)] = 0;
      }
    };
    rec(rec, 0);

    if (m > 0) {
      std::uint64_t limit = 1;
      for (int i = 0; i < m; ++i) {
        if (limit > std::numeric_limits<std::uint64_t>::max() / base_) throw InvalidParameter("complex too large to index");
        limit *= base_;
      }
    }

    cells_ = std::move(by_dim);
    for (auto& list : cells_) std::sort(list.begin(), list.end());
    for (std::size_t d = 0; d < cells_.size(); ++d) {
      for (std::size_t i = 0; i < cells_[d].size(); ++i) index_.emplace(key(cells_[d][i]), static_cast<int>(i));
    }

    facets_.resize(cells_.size());
    for (std::size_t d = 0; d < cells_.size(); ++d) {
      facets_[d].resize(cells_[d].size());
      for (std::size_t i = 0; i < cells_[d].size(); ++i) {
        const ConfCell& c = cells_[d][i];
        for (int r = 0; r < m; ++r) {
          const int x = c[static_cast<std::size_t>(r)];
          if (graph_.is_vertex_cell(x)) continue;
          auto [lo, hi] = graph_.closure(x);
          ConfCell f = c;
          f[static_cast<std::size_t>(r)] = lo;
          const int low = index_.at(key(f));
          f[static_cast<std::size_t>(r)] = hi;
          const int high = index_.at(key(f));
          facets_[d][i].push_back(Facet{r, low, high});
        }
      }
    }
  }

  Graph graph_;
  int particles_ = 0;
  std::uint64_t base_ = 1;
  std::vector<std::vector<ConfCell>> cells_;
  std::vector<std::vector<std::vector<Facet>>> facets_;
  std::unordered_map<std::uint64_t, int> index_;
};

inline CubeComplex build_dconf(const Graph& g, int m) {
  if (m < 1) throw InvalidParameter("build_dconf: m must be positive");
  if (!is_sufficiently_subdivided(g, m)) {
    throw PreconditionViolation("build_dconf: graph is not " + std::to_string(m) + "-sufficiently subdivided");
  }
  return CubeComplex(g, m);
}

/// DF_m(G) / Z_m, where Z_m is generated by c_1 = (1 2 ... m) acting by
/// rotation of coordinates.
///
/// Each orbit is represented by the member whose low corner has the smallest
/// first coordinate (for vertices: the tuple with smallest first entry; for a
/// critical edge: the member whose source vertex is canonical).
class QuotientComplex {
 public:
  QuotientComplex() = default;

  explicit QuotientComplex(const CubeComplex& up) : particles_(up.particles()), graph_(up.graph()) {
    const int m = up.particles();
    const auto dims = static_cast<std::size_t>(up.dimension() + 1);
    orbit_of_.resize(dims);
    reps_.resize(dims);
    members_.resize(dims);
    for (std::size_t d = 0; d < dims; ++d) {
      const int n = up.count(static_cast<int>(d));
      orbit_of_[d].assign(static_cast<std::size_t>(n), -1);
      for (int i = 0; i < n; ++i) {
        if (orbit_of_[d][static_cast<std::size_t>(i)] >= 0) continue;
        const ConfCell& c = up.cell(static_cast<int>(d), i);
        std::vector<int> orbit;
        int best = -1;
        int best_first = 0;
        for (int k = 0; k < m; ++k) {
          const ConfCell r = rotate(c, k);
          const int j = up.index_of(r);
          orbit.push_back(j);
          const int first = graph_.vertex_ordinal(low_corner(graph_, r)[0]);
          if (best < 0 || first < best_first) {
            best = j;
            best_first = first;
          }
        }
        std::vector<int> sorted = orbit;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
          throw StructuralError("Z_m action is not free on cell " + up.describe(static_cast<int>(d), i));
        }
        const int id = static_cast<int>(reps_[d].size());
        for (int j : orbit) orbit_of_[d][static_cast<std::size_t>(j)] = id;
        reps_[d].push_back(best);
        // members_[d][id][k] = index of c_1^k . rep
        std::vector<int> by_power;
        const ConfCell& rep = up.cell(static_cast<int>(d), best);
        for (int k = 0; k < m; ++k) by_power.push_back(up.index_of(rotate(rep, k)));
        members_[d].push_back(std::move(by_power));
      }
    }
    facets_.resize(dims);
    for (std::size_t d = 0; d < dims; ++d) {
      for (int rep : reps_[d]) {
        std::vector<Facet> fs;
        for (const Facet& f : up.facets(static_cast<int>(d), rep)) {
          fs.push_back(Facet{f.position, orbit_of_[d - 1][static_cast<std::size_t>(f.low)],
                             orbit_of_[d - 1][static_cast<std::size_t>(f.high)]});
        }
        facets_[d].push_back(std::move(fs));
      }
    }
  }

  int particles() const { return particles_; }
  const Graph& graph() const { return graph_; }
  int dimension() const { return static_cast<int>(reps_.size()) - 1; }
  int count(int dim) const {
    return dim < 0 || dim > dimension() ? 0 : static_cast<int>(reps_[static_cast<std::size_t>(dim)].size());
  }

  /// Orbit index of an upstairs cell.
  int orbit_of(int dim, int cell) const {
    return orbit_of_.at(static_cast<std::size_t>(dim)).at(static_cast<std::size_t>(cell));
  }

  /// Upstairs index of the canonical representative.
  int representative(int dim, int orbit) const {
    return reps_.at(static_cast<std::size_t>(dim)).at(static_cast<std::size_t>(orbit));
  }

  /// Upstairs index of c_1^k . representative, k in 0..m-1.
  int member(int dim, int orbit, int k) const {
    const int m = particles_;
    return members_.at(static_cast<std::size_t>(dim)).at(static_cast<std::size_t>(orbit)).at(
        static_cast<std::size_t>(((k % m) + m) % m));
  }

  /// Facets of the orbit, read off its representative and projected.
  const std::vector<Facet>& facets(int dim, int orbit) const {
    return facets_.at(static_cast<std::size_t>(dim)).at(static_cast<std::size_t>(orbit));
  }

  int base_vertex() const { return orbit_of(0, 0); }

 private:
  int particles_ = 0;
  Graph graph_;
  std::vector<std::vector<int>> orbit_of_;
  std::vector<std::vector<int>> reps_;
  std::vector<std::vector<std::vector<int>>> members_;
  std::vector<std::vector<std::vector<Facet>>> facets_;
};

inline QuotientComplex build_quotient(const CubeComplex& c) { return QuotientComplex(c); }

/// Anything with count(dim) and facets(dim, index).
template <class C>
concept CellComplex = requires(const C& c, int d, int i) {
  { c.count(d) } -> std::convertible_to<int>;
  { c.facets(d, i) } -> std::convertible_to<const std::vector<Facet>&>;
};

/// Alternating sum of cell counts; independent of any gradient field.
template <CellComplex C>
long chi_oracle(const C& complex) {
  long chi = 0;
  for (int d = 0; d <= complex.dimension(); ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(complex.count(d));
  return chi;
}

/// Small union-find used for component counts and spanning-tree checks.
class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)), sets_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  /// Returns false when x and y were already joined.
  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    parent_[static_cast<std::size_t>(y)] = x;
    --sets_;
    return true;
  }
  int sets() const { return sets_; }

 private:
  std::vector<int> parent_;
  int sets_;
};

/// Connected components of the 1-skeleton.
template <CellComplex C>
int components(const C& complex) {
  DisjointSets sets(complex.count(0));
  for (int e = 0; e < complex.count(1); ++e) {
    const Facet& f = complex.facets(1, e).front();
    sets.unite(f.low, f.high);
  }
  return sets.sets();
}

}  // namespace braidbu
