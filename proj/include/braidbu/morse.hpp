#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "braidbu/config_space.hpp"
#include "braidbu/error.hpp"
#include "braidbu/graph.hpp"
#include "braidbu/permutation.hpp"

namespace braidbu {

enum class CellKind { critical, redundant, collapsible };

inline const char* to_string(CellKind k) {
  switch (k) {
    case CellKind::critical:
      return "critical";
    case CellKind::redundant:
      return "redundant";
    case CellKind::collapsible:
      return "collapsible";
  }
  return "?";
}

/// Classification of one cell. For paired cells, `partner` indexes the paired
/// cell one dimension up (redundant) or down (collapsible), and the pivot is
/// the coordinate position and graph cell that the pairing changes.
struct CellClass {
  CellKind kind = CellKind::critical;
  int partner = -1;
  int pivot_position = -1;
  int pivot_cell = -1;
};

/// The standard blocking rule: the vertex at `position` is blocked when it is
/// the root or its tree parent lies in the closure of another coordinate.
struct FarleySabalkaBlocking {
  bool operator()(const Graph& g, const ConfCell& c, int position) const {
    const int v = c[static_cast<std::size_t>(position)];
    if (g.vertex_ordinal(v) == 0) return true;
    const int parent = g.tree_parent(v);
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (static_cast<int>(j) == position) continue;
      auto [lo, hi] = g.closure(c[j]);
      if (lo == parent || hi == parent) return true;
    }
    return false;
  }
};

/// The pairing move for one cell, before looking up indices: which
/// coordinate to change and what to put there.
struct PairingMove {
  CellKind kind = CellKind::critical;
  int position = -1;
  int replacement = -1;  // graph cell placed at `position`
};

/// Decides the kind of a cell from vertex/edge ordinals alone.
///
/// Redundant: the smallest unblocked vertex lies below every tree edge; it is
/// replaced by the edge to its parent. Collapsible: the smallest tree edge lies
/// below every unblocked vertex; it is replaced by its far endpoint.
/// Otherwise critical.
template <class Blocking = FarleySabalkaBlocking>
PairingMove pairing_move(const Graph& g, const ConfCell& c, const Blocking& blocked = {}) {
  int min_free_vertex = kInfiniteOrdinal;
  int vertex_position = -1;
  int min_tree_edge = kInfiniteOrdinal;
  int edge_position = -1;
  for (std::size_t r = 0; r < c.size(); ++r) {
    const int x = c[r];
    const int ord = g.cell_ordinal(x);
    if (g.is_vertex_cell(x)) {
      if (ord < min_free_vertex && !blocked(g, c, static_cast<int>(r))) {
        min_free_vertex = ord;
        vertex_position = static_cast<int>(r);
      }
    } else if (ord < min_tree_edge) {
      min_tree_edge = ord;
      edge_position = static_cast<int>(r);
    }
  }
  if (vertex_position >= 0 && min_free_vertex < min_tree_edge) {
    const int v = c[static_cast<std::size_t>(vertex_position)];
    return {CellKind::redundant, vertex_position, g.cell_of_edge(g.tree_edge_to_parent(v))};
  }
  if (edge_position >= 0 && min_tree_edge < min_free_vertex) {
    const int e = g.edge_of_cell(c[static_cast<std::size_t>(edge_position)]);
    return {CellKind::collapsible, edge_position, g.edge(e).high};
  }
  return {CellKind::critical, -1, -1};
}

/// Classification of every cell of a complex, indexed like the complex.
struct GradientField {
  std::vector<std::vector<CellClass>> cells;

  const CellClass& at(int dim, int index) const {
    return cells.at(static_cast<std::size_t>(dim)).at(static_cast<std::size_t>(index));
  }

  std::vector<int> critical(int dim) const {
    std::vector<int> out;
    if (dim < 0 || dim >= static_cast<int>(cells.size())) return out;
    const auto& list = cells[static_cast<std::size_t>(dim)];
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i].kind == CellKind::critical) out.push_back(static_cast<int>(i));
    }
    return out;
  }

  int count(int dim, CellKind kind) const {
    if (dim < 0 || dim >= static_cast<int>(cells.size())) return 0;
    const auto& list = cells[static_cast<std::size_t>(dim)];
    return static_cast<int>(std::count_if(list.begin(), list.end(), [&](const CellClass& c) { return c.kind == kind; }));
  }
};

/// Classifies a single cell of DF_m of the lollipop.
template <class Blocking = FarleySabalkaBlocking>
CellClass classify_cell(const ConfCell& c, const CubeComplex& complex, const Blocking& blocked = {}) {
  if (!complex.find(c)) throw InvalidInput("classify_cell: " + format_cell(complex.graph(), c) + " is not a cell");
  const Graph& g = complex.graph();
  const PairingMove move = pairing_move(g, c, blocked);
  CellClass out{move.kind, -1, move.position, move.replacement};
  if (move.kind == CellKind::critical) return out;
  ConfCell partner = c;
  partner[static_cast<std::size_t>(move.position)] = move.replacement;
  auto idx = complex.find(partner);
  if (!idx) {
    throw StructuralError("pairing of " + format_cell(g, c) + " leaves the complex");
  }
  out.partner = *idx;
  return out;
}

/// The discrete gradient field on DF_m(lollipop).
///
/// Throws StructuralError if the pairing is not an involution between
/// redundant d-cells and collapsible (d+1)-cells.
template <class Blocking = FarleySabalkaBlocking>
GradientField build_field(const CubeComplex& complex, const Blocking& blocked = {}) {
  if (!is_lollipop(complex.graph())) throw PreconditionViolation("build_field: graph must be a lollipop");
  GradientField field;
  const int top = complex.dimension();
  field.cells.resize(static_cast<std::size_t>(top + 1));
  for (int d = 0; d <= top; ++d) {
    auto& list = field.cells[static_cast<std::size_t>(d)];
    list.reserve(static_cast<std::size_t>(complex.count(d)));
    for (int i = 0; i < complex.count(d); ++i) list.push_back(classify_cell(complex.cell(d, i), complex, blocked));
  }
  for (int d = 0; d <= top; ++d) {
    for (int i = 0; i < complex.count(d); ++i) {
      const CellClass& c = field.at(d, i);
      if (c.kind == CellKind::critical) continue;
      const int pd = c.kind == CellKind::redundant ? d + 1 : d - 1;
      const CellKind expect = c.kind == CellKind::redundant ? CellKind::collapsible : CellKind::redundant;
      if (pd < 0 || pd > top || field.at(pd, c.partner).kind != expect || field.at(pd, c.partner).partner != i) {
        throw StructuralError("gradient pairing is not an involution at " + complex.describe(d, i));
      }
    }
  }
  return field;
}

/// The induced field on DF_m / Z_m: an orbit inherits the class of its
/// canonical representative. Every other orbit member is checked to agree.
inline GradientField build_quotient_field(const CubeComplex& up, const GradientField& up_field,
                                          const QuotientComplex& quotient) {
  GradientField field;
  const int top = quotient.dimension();
  const int m = quotient.particles();
  field.cells.resize(static_cast<std::size_t>(top + 1));
  for (int d = 0; d <= top; ++d) {
    for (int o = 0; o < quotient.count(d); ++o) {
      const int rep = quotient.representative(d, o);
      const CellClass& rc = up_field.at(d, rep);
      CellClass out = rc;
      const int pd = rc.kind == CellKind::redundant ? d + 1 : d - 1;
      if (rc.kind != CellKind::critical) out.partner = quotient.orbit_of(pd, rc.partner);
      for (int k = 1; k < m; ++k) {
        const CellClass& mc = up_field.at(d, quotient.member(d, o, k));
        const bool same = mc.kind == rc.kind &&
                          (rc.kind == CellKind::critical || quotient.orbit_of(pd, mc.partner) == out.partner);
        if (!same) throw StructuralError("gradient field is not Z_m-equivariant at " + up.describe(d, rep));
      }
      field.cells[static_cast<std::size_t>(d)].push_back(out);
    }
  }
  return field;
}

/// sigma_v(i) = rank of v_i among the coordinates (1-based), so that
/// v = sigma_v . (sorted v).
inline Permutation associated_permutation(const Graph& g, const ConfCell& v) {
  std::vector<int> order(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return g.cell_ordinal(v[static_cast<std::size_t>(x)]) < g.cell_ordinal(v[static_cast<std::size_t>(y)]);
  });
  std::vector<int> rank(v.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[static_cast<std::size_t>(order[r])] = static_cast<int>(r);
  return Permutation::from_zero_based(std::move(rank));
}

/// Plain integer version, for tuples that are not graph cells.
inline Permutation associated_permutation(const std::vector<int>& values) {
  std::vector<int> order(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return values[static_cast<std::size_t>(x)] < values[static_cast<std::size_t>(y)]; });
  std::vector<int> rank(values.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[static_cast<std::size_t>(order[r])] = static_cast<int>(r);
  return Permutation::from_zero_based(std::move(rank));
}

/// O_b = (0, 1, ..., b-2, a, m, m+1, ..., 2m-b-1) in make_lollipop(m).
inline ConfCell standard_critical_edge(const Graph& g, int m, int b) {
  if (b < 1 || b > m) throw InvalidParameter("standard_critical_edge: type must lie in 1..m");
  const auto loop = g.find_edge("a");
  if (!loop) throw PreconditionViolation("standard_critical_edge: graph has no loop edge a");
  ConfCell out;
  for (int i = 0; i <= b - 2; ++i) out.push_back(i);
  out.push_back(g.cell_of_edge(*loop));
  for (int i = m; i <= 2 * m - b - 1; ++i) out.push_back(i);
  return out;
}

/// Type b of a critical edge, read off its coordinate set.
inline int edge_type(const Graph& g, const ConfCell& x) {
  const int m = static_cast<int>(x.size());
  ConfCell sorted = x;
  std::sort(sorted.begin(), sorted.end());
  for (int b = 1; b <= m; ++b) {
    ConfCell o = standard_critical_edge(g, m, b);
    std::sort(o.begin(), o.end());
    if (o == sorted) return b;
  }
  throw InvalidInput("edge_type: " + format_cell(g, x) + " is not a critical edge of any type");
}

struct CriticalEdge {
  int index = 0;  // 1-cell index in the complex
  ConfCell cell;
  int type = 0;
  int source = 0;  // 0-cell index, loop edge at its low endpoint
  int target = 0;  // 0-cell index, loop edge at its high endpoint
  Permutation sigma_source;
  Permutation sigma_target;
};

inline std::vector<CriticalEdge> critical_edges(const CubeComplex& complex, const GradientField& field) {
  const Graph& g = complex.graph();
  std::vector<CriticalEdge> out;
  for (int e : field.critical(1)) {
    CriticalEdge x;
    x.index = e;
    x.cell = complex.cell(1, e);
    x.type = edge_type(g, x.cell);
    const Facet& f = complex.facets(1, e).front();
    x.source = f.low;
    x.target = f.high;
    x.sigma_source = associated_permutation(g, complex.cell(0, f.low));
    x.sigma_target = associated_permutation(g, complex.cell(0, f.high));
    out.push_back(std::move(x));
  }
  return out;
}

struct CriticalCensus {
  std::vector<int> by_dimension;
  std::vector<int> edges_by_type;  // index b - 1
};

inline CriticalCensus critical_census(const CubeComplex& complex, const GradientField& field) {
  CriticalCensus c;
  for (int d = 0; d <= complex.dimension(); ++d) c.by_dimension.push_back(field.count(d, CellKind::critical));
  c.edges_by_type.assign(static_cast<std::size_t>(complex.particles()), 0);
  for (const auto& x : critical_edges(complex, field)) ++c.edges_by_type[static_cast<std::size_t>(x.type - 1)];
  return c;
}

/// Census on the quotient; edge types are read off orbit representatives.
inline CriticalCensus critical_census(const CubeComplex& up, const QuotientComplex& quotient,
                                      const GradientField& field) {
  CriticalCensus c;
  for (int d = 0; d <= quotient.dimension(); ++d) c.by_dimension.push_back(field.count(d, CellKind::critical));
  c.edges_by_type.assign(static_cast<std::size_t>(quotient.particles()), 0);
  for (int o : field.critical(1)) {
    const int b = edge_type(up.graph(), up.cell(1, quotient.representative(1, o)));
    ++c.edges_by_type[static_cast<std::size_t>(b - 1)];
  }
  return c;
}

/// Trees of the maximal forest: vertices joined by collapsible 1-cells (the
/// images of redundant vertices under the pairing).
struct Forest {
  std::vector<int> tree_of_vertex;
  std::vector<Permutation> labels;  // per tree
  std::vector<int> edges;           // 1-cells in the forest
  int size() const { return static_cast<int>(labels.size()); }
};

namespace detail {
template <CellComplex C, class Label>
Forest assemble_forest(const C& complex, const GradientField& field, Label label_of_vertex) {
  DisjointSets sets(complex.count(0));
  Forest f;
  for (int e = 0; e < complex.count(1); ++e) {
    if (field.at(1, e).kind != CellKind::collapsible) continue;
    const Facet& fc = complex.facets(1, e).front();
    if (!sets.unite(fc.low, fc.high)) throw StructuralError("forest contains a cycle");
    f.edges.push_back(e);
  }
  std::map<int, int> tree_id;
  f.tree_of_vertex.assign(static_cast<std::size_t>(complex.count(0)), -1);
  for (int v = 0; v < complex.count(0); ++v) {
    const int root = sets.find(v);
    auto [it, fresh] = tree_id.emplace(root, f.size());
    Permutation label = label_of_vertex(v);
    if (fresh) {
      f.labels.push_back(label);
    } else if (f.labels[static_cast<std::size_t>(it->second)] != label) {
      throw StructuralError("forest tree mixes vertices with different associated permutations");
    }
    f.tree_of_vertex[static_cast<std::size_t>(v)] = it->second;
  }
  return f;
}
}  // namespace detail

inline Forest build_forest(const CubeComplex& complex, const GradientField& field) {
  return detail::assemble_forest(complex, field,
                                 [&](int v) { return associated_permutation(complex.graph(), complex.cell(0, v)); });
}

/// Quotient forest; trees are labeled by canonical coset representatives.
inline Forest build_forest(const CubeComplex& up, const QuotientComplex& quotient, const GradientField& field) {
  return detail::assemble_forest(quotient, field, [&](int v) {
    return canonical_coset_representative(associated_permutation(up.graph(), up.cell(0, quotient.representative(0, v))));
  });
}

struct PermutationCheck {
  bool ok = true;
  int checked = 0;
  std::string failure;
};

/// Checks sigma_target = sigma_source * c_b^-1 on every critical edge, and the
/// reconstruction x = sigma_source . O_b.
inline PermutationCheck check_target_permutations(const CubeComplex& complex, const GradientField& field) {
  PermutationCheck out;
  const Graph& g = complex.graph();
  const int m = complex.particles();
  for (const auto& x : critical_edges(complex, field)) {
    ++out.checked;
    const Permutation expected = x.sigma_source * rotation_cycle(m, x.type).inverse();
    if (expected != x.sigma_target) {
      out.ok = false;
      out.failure = "target permutation mismatch at " + format_cell(g, x.cell);
      return out;
    }
    if (act(x.sigma_source, standard_critical_edge(g, m, x.type)) != x.cell) {
      out.ok = false;
      out.failure = "reconstruction from O_b fails at " + format_cell(g, x.cell);
      return out;
    }
  }
  return out;
}

/// Coset version on the quotient: [sigma_target] = [sigma_source] c_b^-1,
/// with source and target read from the quotient's own facets.
inline PermutationCheck check_target_permutations(const CubeComplex& up, const QuotientComplex& quotient,
                                                  const GradientField& field) {
  PermutationCheck out;
  const Graph& g = up.graph();
  const int m = quotient.particles();
  auto coset_of_vertex = [&](int orbit) {
    return canonical_coset_representative(associated_permutation(g, up.cell(0, quotient.representative(0, orbit))));
  };
  for (int o : field.critical(1)) {
    ++out.checked;
    const ConfCell& rep = up.cell(1, quotient.representative(1, o));
    const int b = edge_type(g, rep);
    const Facet& f = quotient.facets(1, o).front();
    const Permutation source = coset_of_vertex(f.low);
    const Permutation target = coset_of_vertex(f.high);
    if (canonical_coset_representative(source * rotation_cycle(m, b).inverse()) != target) {
      out.ok = false;
      out.failure = "coset target mismatch at orbit of " + format_cell(g, rep);
      return out;
    }
  }
  return out;
}

}  // namespace braidbu
