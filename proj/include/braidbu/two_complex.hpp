#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "braidbu/config_space.hpp"
#include "braidbu/error.hpp"
#include "braidbu/free_group.hpp"

namespace braidbu {

struct SignedEdge {
  int edge = 0;
  int sign = 1;  // +1 traverses source -> target
  friend bool operator==(const SignedEdge&, const SignedEdge&) = default;
};

/// The 2-skeleton of a cube complex: oriented edges and squares given by their
/// boundary loops. Enough to compute the fundamental group.
struct TwoComplex {
  struct Edge {
    int source = 0;
    int target = 0;
  };
  int num_vertices = 0;
  std::vector<Edge> edges;
  std::vector<std::array<SignedEdge, 4>> squares;

  int start_of(SignedEdge s) const {
    const auto& e = edges.at(static_cast<std::size_t>(s.edge));
    return s.sign > 0 ? e.source : e.target;
  }
  int end_of(SignedEdge s) const {
    const auto& e = edges.at(static_cast<std::size_t>(s.edge));
    return s.sign > 0 ? e.target : e.source;
  }
};

/// Builds the 2-skeleton of a cube complex or of its quotient.
///
/// For a square with edge coordinates at positions r < s the boundary loop,
/// starting at the all-low corner, is
///   (e_r, lo_s) (hi_r, e_s) (e_r, hi_s)^-1 (lo_r, e_s)^-1.
template <CellComplex C>
TwoComplex two_skeleton(const C& complex) {
  TwoComplex out;
  out.num_vertices = complex.count(0);
  for (int e = 0; e < complex.count(1); ++e) {
    const Facet& f = complex.facets(1, e).front();
    out.edges.push_back({f.low, f.high});
  }
  for (int s = 0; s < complex.count(2); ++s) {
    const auto& fs = complex.facets(2, s);
    const Facet& r = fs[0];
    const Facet& t = fs[1];
    out.squares.push_back({SignedEdge{t.low, 1}, SignedEdge{r.high, 1}, SignedEdge{t.high, -1}, SignedEdge{r.low, -1}});
  }
  return out;
}

/// An edge path in a TwoComplex.
struct EdgePath {
  int start = 0;
  std::vector<SignedEdge> steps;

  int end(const TwoComplex& k) const {
    int v = start;
    for (const auto& s : steps) {
      if (k.start_of(s) != v) throw InvalidInput("edge path is not contiguous");
      v = k.end_of(s);
    }
    return v;
  }

  EdgePath inverse(const TwoComplex& k) const {
    EdgePath out{end(k), {}};
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) out.steps.push_back({it->edge, -it->sign});
    return out;
  }

  EdgePath& append(const EdgePath& other) {
    steps.insert(steps.end(), other.steps.begin(), other.steps.end());
    return *this;
  }
};

/// How an edge enters the presentation of pi_1.
enum class EdgeRole { tree, generator, rewritten };

/// A free presentation of pi_1 of a 2-complex: a maximal tree, one generator
/// per remaining edge that survives, and, for every other edge, a square used
/// to rewrite it in terms of edges that are later in the collapse order.
///
/// The group is free on the generators exactly when every square is used to
/// rewrite some edge; the constructors enforce that.
class Pi1Presentation {
 public:
  Pi1Presentation() = default;

  /// `roles[e]`: tree/generator/rewritten; `rewrite_square[e]`: the square
  /// used for rewritten edges; `generator_edges`: generator order.
  Pi1Presentation(const TwoComplex& k, int base, std::vector<EdgeRole> roles, std::vector<int> rewrite_square,
                  std::vector<int> generator_edges)
      : complex_(k),
        base_(base),
        roles_(std::move(roles)),
        rewrite_square_(std::move(rewrite_square)),
        generator_edges_(std::move(generator_edges)) {
    generator_of_edge_.assign(complex_.edges.size(), -1);
    for (std::size_t g = 0; g < generator_edges_.size(); ++g) {
      const int e = generator_edges_[g];
      if (roles_.at(static_cast<std::size_t>(e)) != EdgeRole::generator) {
        throw StructuralError("generator edge not marked as generator");
      }
      generator_of_edge_[static_cast<std::size_t>(e)] = static_cast<int>(g);
    }
    build_tree();
    build_rewrites();
  }

  const TwoComplex& complex() const { return complex_; }
  int base() const { return base_; }
  int rank() const { return static_cast<int>(generator_edges_.size()); }
  int generator_edge(int g) const { return generator_edges_.at(static_cast<std::size_t>(g)); }
  int generator_of_edge(int e) const { return generator_of_edge_.at(static_cast<std::size_t>(e)); }
  EdgeRole role(int e) const { return roles_.at(static_cast<std::size_t>(e)); }

  /// Tree path from the base vertex to v.
  EdgePath path_from_base(int v) const {
    EdgePath up{v, {}};
    int cur = v;
    while (cur != base_) {
      const SignedEdge s = parent_step_.at(static_cast<std::size_t>(cur));
      if (s.edge < 0) throw StructuralError("vertex not reached by the maximal tree");
      up.steps.push_back({s.edge, -s.sign});
      cur = complex_.start_of(s);
    }
    return up.inverse(complex_);
  }

  /// The canonical loop of generator g: tree path to its source, the edge,
  /// tree path back.
  EdgePath basis_loop(int g) const {
    const int e = generator_edge(g);
    const auto& ed = complex_.edges.at(static_cast<std::size_t>(e));
    EdgePath loop = path_from_base(ed.source);
    loop.steps.push_back({e, 1});
    loop.append(path_from_base(ed.target).inverse(complex_));
    return loop;
  }

  /// Loop representing a word in the generators.
  EdgePath loop_of(const FreeWord& w) const {
    EdgePath out{base_, {}};
    for (const auto& l : w.letters()) {
      EdgePath piece = basis_loop(l.generator);
      out.append(l.exponent > 0 ? piece : piece.inverse(complex_));
    }
    return out;
  }

  /// Word of the element of pi_1 represented by an edge (tree paths to both
  /// of its endpoints implied).
  const FreeWord& edge_word(int e) const { return edge_words_.at(static_cast<std::size_t>(e)); }

  /// Reads off a closed edge path based at the base vertex.
  FreeWord express_loop(const EdgePath& path) const {
    if (path.start != base_ || path.end(complex_) != base_) {
      throw InvalidInput("express_loop: path is not a loop at the base vertex");
    }
    FreeWord w;
    for (const auto& s : path.steps) w *= s.sign > 0 ? edge_word(s.edge) : edge_word(s.edge).inverse();
    return w;
  }

  /// Tree edges span and contain no cycle.
  bool tree_is_spanning() const {
    DisjointSets sets(complex_.num_vertices);
    int count = 0;
    for (std::size_t e = 0; e < roles_.size(); ++e) {
      if (roles_[e] != EdgeRole::tree) continue;
      ++count;
      if (!sets.unite(complex_.edges[e].source, complex_.edges[e].target)) return false;
    }
    return sets.sets() == 1 && count == complex_.num_vertices - 1;
  }

 private:
  void build_tree() {
    std::vector<std::vector<SignedEdge>> adj(static_cast<std::size_t>(complex_.num_vertices));
    for (std::size_t e = 0; e < complex_.edges.size(); ++e) {
      if (roles_[e] != EdgeRole::tree) continue;
      adj[static_cast<std::size_t>(complex_.edges[e].source)].push_back({static_cast<int>(e), 1});
      adj[static_cast<std::size_t>(complex_.edges[e].target)].push_back({static_cast<int>(e), -1});
    }
    parent_step_.assign(static_cast<std::size_t>(complex_.num_vertices), SignedEdge{-1, 1});
    std::vector<bool> seen(static_cast<std::size_t>(complex_.num_vertices), false);
    std::deque<int> q{base_};
    seen[static_cast<std::size_t>(base_)] = true;
    while (!q.empty()) {
      const int v = q.front();
      q.pop_front();
      for (const auto& s : adj[static_cast<std::size_t>(v)]) {
        const int w = complex_.end_of(s);
        if (seen[static_cast<std::size_t>(w)]) continue;
        seen[static_cast<std::size_t>(w)] = true;
        parent_step_[static_cast<std::size_t>(w)] = s;
        q.push_back(w);
      }
    }
  }

  void build_rewrites() {
    const std::size_t n = complex_.edges.size();
    edge_words_.assign(n, FreeWord{});
    std::vector<int> state(n, 0);  // 0 = pending, 1 = in progress, 2 = done
    auto solve = [&](auto&& self, int e) -> void {
      auto& st = state[static_cast<std::size_t>(e)];
      if (st == 2) return;
      if (st == 1) throw StructuralError("rewriting edges through squares does not terminate");
      st = 1;
      switch (roles_[static_cast<std::size_t>(e)]) {
        case EdgeRole::tree:
          break;
        case EdgeRole::generator:
          edge_words_[static_cast<std::size_t>(e)] = FreeWord::generator(generator_of_edge(e));
          break;
        case EdgeRole::rewritten: {
          const auto& sq = complex_.squares.at(static_cast<std::size_t>(rewrite_square_[static_cast<std::size_t>(e)]));
          std::size_t at = 4;
          for (std::size_t i = 0; i < 4; ++i) {
            if (sq[i].edge == e) at = i;
          }
          if (at == 4) throw StructuralError("rewrite square does not contain its edge");
          // sq is a relator; e^sign * rest == 1, so e^sign == rest^-1.
          FreeWord rest;
          for (std::size_t j = 1; j < 4; ++j) {
            const SignedEdge s = sq[(at + j) % 4];
            self(self, s.edge);
            const FreeWord& w = edge_words_[static_cast<std::size_t>(s.edge)];
            rest *= s.sign > 0 ? w : w.inverse();
          }
          edge_words_[static_cast<std::size_t>(e)] = sq[at].sign > 0 ? rest.inverse() : rest;
          break;
        }
      }
      st = 2;
    };
    for (std::size_t e = 0; e < n; ++e) solve(solve, static_cast<int>(e));
  }

  TwoComplex complex_;
  int base_ = 0;
  std::vector<EdgeRole> roles_;
  std::vector<int> rewrite_square_;
  std::vector<int> generator_edges_;
  std::vector<int> generator_of_edge_;
  std::vector<SignedEdge> parent_step_;
  std::vector<FreeWord> edge_words_;
};

/// Presentation obtained by elementary collapses: repeatedly remove a square
/// through a free edge (an edge lying on exactly one remaining square), then
/// take a breadth-first spanning tree of the surviving graph.
///
/// Throws StructuralError if some square cannot be collapsed, i.e. when this
/// procedure does not certify that pi_1 is free.
inline Pi1Presentation collapse_presentation(const TwoComplex& k, int base, std::vector<bool> square_alive = {}) {
  const std::size_t ne = k.edges.size();
  if (square_alive.empty()) square_alive.assign(k.squares.size(), true);
  std::vector<std::vector<int>> cofaces(ne);
  std::size_t live_squares = 0;
  for (std::size_t s = 0; s < k.squares.size(); ++s) {
    if (!square_alive[s]) continue;
    ++live_squares;
    for (const auto& b : k.squares[s]) cofaces[static_cast<std::size_t>(b.edge)].push_back(static_cast<int>(s));
  }
  std::vector<int> live(ne, 0);
  for (std::size_t e = 0; e < ne; ++e) live[e] = static_cast<int>(cofaces[e].size());
  std::vector<EdgeRole> roles(ne, EdgeRole::generator);
  std::vector<int> rewrite(ne, -1);

  std::deque<int> q;
  for (std::size_t e = 0; e < ne; ++e) {
    if (live[e] == 1) q.push_back(static_cast<int>(e));
  }
  std::size_t collapsed = 0;
  while (!q.empty()) {
    const int e = q.front();
    q.pop_front();
    if (live[static_cast<std::size_t>(e)] != 1 || roles[static_cast<std::size_t>(e)] == EdgeRole::rewritten) continue;
    int sq = -1;
    for (int s : cofaces[static_cast<std::size_t>(e)]) {
      if (square_alive[static_cast<std::size_t>(s)]) sq = s;
    }
    square_alive[static_cast<std::size_t>(sq)] = false;
    ++collapsed;
    roles[static_cast<std::size_t>(e)] = EdgeRole::rewritten;
    rewrite[static_cast<std::size_t>(e)] = sq;
    for (const auto& b : k.squares[static_cast<std::size_t>(sq)]) {
      if (--live[static_cast<std::size_t>(b.edge)] == 1 && roles[static_cast<std::size_t>(b.edge)] != EdgeRole::rewritten) {
        q.push_back(b.edge);
      }
    }
  }
  if (collapsed != live_squares) {
    throw StructuralError("collapse_presentation: " + std::to_string(live_squares - collapsed) +
                          " squares cannot be collapsed; pi_1 is not presented as free");
  }

  // Spanning tree of the surviving graph.
  std::vector<std::vector<SignedEdge>> adj(static_cast<std::size_t>(k.num_vertices));
  for (std::size_t e = 0; e < ne; ++e) {
    if (roles[e] == EdgeRole::rewritten) continue;
    adj[static_cast<std::size_t>(k.edges[e].source)].push_back({static_cast<int>(e), 1});
    adj[static_cast<std::size_t>(k.edges[e].target)].push_back({static_cast<int>(e), -1});
  }
  std::vector<bool> seen(static_cast<std::size_t>(k.num_vertices), false);
  std::deque<int> bfs{base};
  seen[static_cast<std::size_t>(base)] = true;
  while (!bfs.empty()) {
    const int v = bfs.front();
    bfs.pop_front();
    for (const auto& s : adj[static_cast<std::size_t>(v)]) {
      const int w = k.end_of(s);
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = true;
      roles[static_cast<std::size_t>(s.edge)] = EdgeRole::tree;
      bfs.push_back(w);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw InvalidInput("collapse_presentation: complex is disconnected");
  }
  std::vector<int> generators;
  for (std::size_t e = 0; e < ne; ++e) {
    if (roles[e] == EdgeRole::generator) generators.push_back(static_cast<int>(e));
  }
  return Pi1Presentation(k, base, std::move(roles), std::move(rewrite), std::move(generators));
}

/// Collapse presentation of a cube complex of any dimension: cells of
/// dimension >= 3 are first collapsed away through free faces, top-down, and
/// the squares they consume are dropped before the edge-level collapse.
template <CellComplex C>
Pi1Presentation collapse_presentation(const C& complex, int base) {
  const int top = complex.dimension();
  std::vector<std::vector<bool>> alive(static_cast<std::size_t>(top + 1));
  for (int d = 0; d <= top; ++d) alive[static_cast<std::size_t>(d)].assign(static_cast<std::size_t>(complex.count(d)), true);
  for (int d = top; d >= 3; --d) {
    const int faces = complex.count(d - 1);
    std::vector<std::vector<int>> cofaces(static_cast<std::size_t>(faces));
    for (int c = 0; c < complex.count(d); ++c) {
      for (const Facet& f : complex.facets(d, c)) {
        cofaces[static_cast<std::size_t>(f.low)].push_back(c);
        cofaces[static_cast<std::size_t>(f.high)].push_back(c);
      }
    }
    std::vector<int> live(static_cast<std::size_t>(faces));
    for (int f = 0; f < faces; ++f) live[static_cast<std::size_t>(f)] = static_cast<int>(cofaces[static_cast<std::size_t>(f)].size());
    std::deque<int> q;
    for (int f = 0; f < faces; ++f) {
      if (live[static_cast<std::size_t>(f)] == 1) q.push_back(f);
    }
    auto& upper = alive[static_cast<std::size_t>(d)];
    auto& lower = alive[static_cast<std::size_t>(d - 1)];
    while (!q.empty()) {
      const int f = q.front();
      q.pop_front();
      if (live[static_cast<std::size_t>(f)] != 1 || !lower[static_cast<std::size_t>(f)]) continue;
      int cell = -1;
      for (int c : cofaces[static_cast<std::size_t>(f)]) {
        if (upper[static_cast<std::size_t>(c)]) cell = c;
      }
      upper[static_cast<std::size_t>(cell)] = false;
      lower[static_cast<std::size_t>(f)] = false;
      for (const Facet& g : complex.facets(d, cell)) {
        for (int face : {g.low, g.high}) {
          if (--live[static_cast<std::size_t>(face)] == 1 && lower[static_cast<std::size_t>(face)]) q.push_back(face);
        }
      }
    }
    if (std::find(upper.begin(), upper.end(), true) != upper.end()) {
      throw StructuralError("collapse_presentation: some " + std::to_string(d) + "-cells cannot be collapsed");
    }
  }
  std::vector<bool> squares = top >= 2 ? alive[2] : std::vector<bool>{};
  return collapse_presentation(two_skeleton(complex), base, std::move(squares));
}

}  // namespace braidbu
