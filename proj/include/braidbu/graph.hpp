#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "braidbu/error.hpp"

namespace braidbu {

inline constexpr int kInfiniteOrdinal = std::numeric_limits<int>::max();

struct GraphEdge {
  std::string name;
  int low = 0;   // endpoint with the smaller vertex ordinal (edge source)
  int high = 0;  // endpoint with the larger vertex ordinal (edge target)
  int ordinal = kInfiniteOrdinal;
  bool in_tree = true;
};

/// A finite connected graph with a distinguished spanning tree.
///
/// Vertices are 0..V-1. Vertex ordinals come from a breadth-first sweep of the
/// spanning tree from vertex 0; a tree edge gets the ordinal of its endpoint
/// farther from the root, and every non-tree edge gets the ordinal infinity.
/// Edges are oriented from the smaller-ordinal endpoint to the larger one.
///
/// Cells of the graph are numbered uniformly: vertex v is cell v and edge e is
/// cell V + e. Immutable after construction.
class Graph {
 public:
  struct EdgeSpec {
    std::string name;
    int u = 0;
    int v = 0;
    bool in_tree = true;
  };

  Graph() = default;

  Graph(int num_vertices, const std::vector<EdgeSpec>& specs) : num_vertices_(num_vertices) {
    if (num_vertices < 1) throw InvalidInput("graph needs at least one vertex");
    std::map<std::string, int> names;
    for (const auto& s : specs) {
      if (s.u < 0 || s.u >= num_vertices || s.v < 0 || s.v >= num_vertices) {
        throw InvalidInput("edge '" + s.name + "' has an endpoint out of range");
      }
      if (s.u == s.v) throw InvalidInput("edge '" + s.name + "' is a self-loop");
      if (s.name.empty()) throw InvalidInput("edge names must be non-empty");
      if (!names.emplace(s.name, static_cast<int>(edges_.size())).second) {
        throw InvalidInput("duplicate edge name '" + s.name + "'");
      }
      edges_.push_back(GraphEdge{s.name, s.u, s.v, kInfiniteOrdinal, s.in_tree});
    }
    assign_ordinals();
  }

  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_cells() const { return num_vertices_ + num_edges(); }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  const GraphEdge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }

  int euler_characteristic() const { return num_vertices_ - num_edges(); }

  int vertex_ordinal(int v) const { return vertex_ordinal_.at(static_cast<std::size_t>(v)); }

  /// Neighbour of v along the spanning tree towards vertex 0; -1 at the root.
  int tree_parent(int v) const { return tree_parent_.at(static_cast<std::size_t>(v)); }

  /// Tree edge joining v to its parent; -1 at the root.
  int tree_edge_to_parent(int v) const { return parent_edge_.at(static_cast<std::size_t>(v)); }

  std::optional<int> find_edge(const std::string& name) const {
    for (int e = 0; e < num_edges(); ++e) {
      if (edges_[static_cast<std::size_t>(e)].name == name) return e;
    }
    return std::nullopt;
  }

  std::vector<int> non_tree_edges() const {
    std::vector<int> out;
    for (int e = 0; e < num_edges(); ++e) {
      if (!edges_[static_cast<std::size_t>(e)].in_tree) out.push_back(e);
    }
    return out;
  }

  std::vector<int> degrees() const {
    std::vector<int> deg(static_cast<std::size_t>(num_vertices_), 0);
    for (const auto& e : edges_) {
      ++deg[static_cast<std::size_t>(e.low)];
      ++deg[static_cast<std::size_t>(e.high)];
    }
    return deg;
  }

  /// Vertices of degree at least 3.
  std::vector<int> essential_vertices() const {
    std::vector<int> out;
    auto deg = degrees();
    for (int v = 0; v < num_vertices_; ++v) {
      if (deg[static_cast<std::size_t>(v)] >= 3) out.push_back(v);
    }
    return out;
  }

  bool is_tree() const { return non_tree_edges().empty(); }

  // Cell helpers.
  bool is_vertex_cell(int cell) const { return cell < num_vertices_; }
  int edge_of_cell(int cell) const { return cell - num_vertices_; }
  int cell_of_edge(int e) const { return num_vertices_ + e; }

  /// Endpoints of the closure of a cell (both entries equal for a vertex).
  std::pair<int, int> closure(int cell) const {
    if (is_vertex_cell(cell)) return {cell, cell};
    const auto& e = edge(edge_of_cell(cell));
    return {e.low, e.high};
  }

  /// Ordinal of a cell: vertex ordinal, or edge ordinal (infinity off-tree).
  int cell_ordinal(int cell) const {
    return is_vertex_cell(cell) ? vertex_ordinal(cell) : edge(edge_of_cell(cell)).ordinal;
  }

  std::string cell_name(int cell) const {
    return is_vertex_cell(cell) ? std::to_string(cell) : edge(edge_of_cell(cell)).name;
  }

  std::optional<int> parse_cell(const std::string& token) const {
    if (!token.empty() && std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      int v = std::stoi(token);
      if (v < num_vertices_) return v;
      return std::nullopt;
    }
    if (auto e = find_edge(token)) return cell_of_edge(*e);
    return std::nullopt;
  }

  /// Adjacency lists (neighbour, edge index) over all edges.
  std::vector<std::vector<std::pair<int, int>>> adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(num_vertices_));
    for (int e = 0; e < num_edges(); ++e) {
      const auto& ed = edges_[static_cast<std::size_t>(e)];
      adj[static_cast<std::size_t>(ed.low)].push_back({ed.high, e});
      adj[static_cast<std::size_t>(ed.high)].push_back({ed.low, e});
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    return adj;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    if (a.num_vertices_ != b.num_vertices_ || a.edges_.size() != b.edges_.size()) return false;
    for (std::size_t i = 0; i < a.edges_.size(); ++i) {
      const auto& x = a.edges_[i];
      const auto& y = b.edges_[i];
      if (x.name != y.name || x.low != y.low || x.high != y.high || x.in_tree != y.in_tree) return false;
    }
    return true;
  }

 private:
  void assign_ordinals() {
    const auto n = static_cast<std::size_t>(num_vertices_);
    std::vector<std::vector<std::pair<int, int>>> tree_adj(n);
    int tree_edges = 0;
    for (int e = 0; e < num_edges(); ++e) {
      const auto& ed = edges_[static_cast<std::size_t>(e)];
      if (!ed.in_tree) continue;
      ++tree_edges;
      tree_adj[static_cast<std::size_t>(ed.low)].push_back({ed.high, e});
      tree_adj[static_cast<std::size_t>(ed.high)].push_back({ed.low, e});
    }
    if (tree_edges != num_vertices_ - 1) throw InvalidInput("tree edges do not form a spanning tree");
    for (auto& list : tree_adj) std::sort(list.begin(), list.end());

    vertex_ordinal_.assign(n, -1);
    tree_parent_.assign(n, -1);
    parent_edge_.assign(n, -1);
    std::deque<int> queue{0};
    vertex_ordinal_[0] = 0;
    int next = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (auto [w, e] : tree_adj[static_cast<std::size_t>(v)]) {
        if (vertex_ordinal_[static_cast<std::size_t>(w)] >= 0) continue;
        vertex_ordinal_[static_cast<std::size_t>(w)] = next++;
        tree_parent_[static_cast<std::size_t>(w)] = v;
        parent_edge_[static_cast<std::size_t>(w)] = e;
        queue.push_back(w);
      }
    }
    if (next != num_vertices_) throw InvalidInput("tree edges do not form a spanning tree");

    for (auto& ed : edges_) {
      if (vertex_ordinal(ed.low) > vertex_ordinal(ed.high)) std::swap(ed.low, ed.high);
    }
    for (int v = 1; v < num_vertices_; ++v) {
      edges_[static_cast<std::size_t>(parent_edge_[static_cast<std::size_t>(v)])].ordinal = vertex_ordinal(v);
    }
  }

  int num_vertices_ = 0;
  std::vector<GraphEdge> edges_;
  std::vector<int> vertex_ordinal_;
  std::vector<int> tree_parent_;
  std::vector<int> parent_edge_;
};

/// The m-sufficiently subdivided S^1 v I: vertices 0..2m-1, tree edges a_i
/// joining i-1 and i (ordinal i), and the loop edge "a" joining m-1 and 2m-1.
inline Graph make_lollipop(int m) {
  if (m < 2) throw InvalidParameter("make_lollipop: m must be at least 2");
  std::vector<Graph::EdgeSpec> specs;
  for (int i = 1; i <= 2 * m - 1; ++i) specs.push_back({"a" + std::to_string(i), i - 1, i, true});
  specs.push_back({"a", m - 1, 2 * m - 1, false});
  return Graph(2 * m, specs);
}

/// True iff `g` is exactly make_lollipop(m) for m = V/2.
inline bool is_lollipop(const Graph& g) {
  if (g.num_vertices() < 4 || g.num_vertices() % 2 != 0) return false;
  return g == make_lollipop(g.num_vertices() / 2);
}

/// Path on n vertices 0 - 1 - ... - (n-1).
inline Graph make_path(int n) {
  if (n < 2) throw InvalidParameter("make_path: need at least 2 vertices");
  std::vector<Graph::EdgeSpec> specs;
  for (int i = 1; i < n; ++i) specs.push_back({"e" + std::to_string(i), i - 1, i, true});
  return Graph(n, specs);
}

/// Cycle on n vertices; the closing edge (n-1, 0) is the non-tree edge.
inline Graph make_cycle(int n) {
  if (n < 2) throw InvalidParameter("make_cycle: need at least 2 vertices");
  std::vector<Graph::EdgeSpec> specs;
  for (int i = 1; i < n; ++i) specs.push_back({"e" + std::to_string(i), i - 1, i, true});
  specs.push_back({"c", n - 1, 0, false});
  return Graph(n, specs);
}

/// Star with `legs` legs of `leg_length` edges each, centre 0, vertices
/// numbered breadth-first.
inline Graph make_star(int legs, int leg_length) {
  if (legs < 3) throw InvalidParameter("make_star: need at least 3 legs");
  if (leg_length < 1) throw InvalidParameter("make_star: leg length must be positive");
  std::vector<Graph::EdgeSpec> specs;
  auto vertex = [legs](int leg, int depth) { return depth == 0 ? 0 : (depth - 1) * legs + leg + 1; };
  int count = 1;
  for (int depth = 1; depth <= leg_length; ++depth) {
    for (int leg = 0; leg < legs; ++leg) {
      specs.push_back({"e" + std::to_string(count), vertex(leg, depth - 1), vertex(leg, depth), true});
      ++count;
    }
  }
  return Graph(legs * leg_length + 1, specs);
}

/// The two subdivision conditions for replacing the configuration space of
/// m points by its discrete model: (i) any path between distinct essential
/// vertices touches at least m vertices, and (ii) any essential cycle touches
/// at least m + 1 vertices.
inline bool is_sufficiently_subdivided(const Graph& g, int m) {
  const auto adj = g.adjacency();
  const int n = g.num_vertices();
  auto bfs = [&](int source) {
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    std::deque<int> q{source};
    dist[static_cast<std::size_t>(source)] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (auto [w, e] : adj[static_cast<std::size_t>(v)]) {
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
          q.push_back(w);
        }
      }
    }
    return dist;
  };

  const auto essential = g.essential_vertices();
  for (int u : essential) {
    auto dist = bfs(u);
    for (int v : essential) {
      if (v == u) continue;
      // A shortest path has dist + 1 vertices; every other path has more.
      if (dist[static_cast<std::size_t>(v)] >= 0 && dist[static_cast<std::size_t>(v)] + 1 < m) return false;
    }
  }

  // Girth: the shortest cycle through an edge (x, y) is 1 + the shortest
  // x-y path avoiding that edge; it has as many vertices as edges.
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    std::deque<int> q{ed.low};
    dist[static_cast<std::size_t>(ed.low)] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (auto [w, f] : adj[static_cast<std::size_t>(v)]) {
        if (f == e || dist[static_cast<std::size_t>(w)] >= 0) continue;
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
        q.push_back(w);
      }
    }
    const int d = dist[static_cast<std::size_t>(ed.high)];
    if (d >= 0 && d + 1 < m + 1) return false;
  }
  return true;
}

/// A graph admitting a free Z_n action has Euler characteristic divisible by n.
inline bool check_free_action_divisibility(long chi, int n) {
  if (n < 1) throw InvalidParameter("group order must be positive");
  return chi % n == 0;
}

/// Line format: "V <count>" followed by "E <name> <u> <v> [loop]" lines.
inline void write_graph(std::ostream& out, const Graph& g) {
  out << "V " << g.num_vertices() << '\n';
  for (const auto& e : g.edges()) {
    out << "E " << e.name << ' ' << e.low << ' ' << e.high;
    if (!e.in_tree) out << " loop";
    out << '\n';
  }
}

inline std::string to_text(const Graph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

inline Graph read_graph(std::istream& in) {
  std::string line;
  std::optional<int> count;
  std::vector<Graph::EdgeSpec> specs;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string tag;
    if (!(tokens >> tag)) continue;
    if (tag == "V") {
      int v = 0;
      if (count || !(tokens >> v)) throw InvalidInput("line " + std::to_string(line_no) + ": bad V record");
      count = v;
    } else if (tag == "E") {
      Graph::EdgeSpec s;
      if (!(tokens >> s.name >> s.u >> s.v)) throw InvalidInput("line " + std::to_string(line_no) + ": bad E record");
      std::string flag;
      if (tokens >> flag) {
        if (flag != "loop") throw InvalidInput("line " + std::to_string(line_no) + ": unknown flag '" + flag + "'");
        s.in_tree = false;
      }
      specs.push_back(s);
    } else {
      throw InvalidInput("line " + std::to_string(line_no) + ": unknown record '" + tag + "'");
    }
  }
  if (!count) throw InvalidInput("missing V record");
  return Graph(*count, specs);
}

inline Graph graph_from_text(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

}  // namespace braidbu
