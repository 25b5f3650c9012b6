#include <gtest/gtest.h>

#include "braidbu/morse.hpp"

using namespace braidbu;

namespace {

ConfCell cell_of(const Graph& g, std::initializer_list<const char*> names) {
  ConfCell c;
  for (const char* n : names) c.push_back(*g.parse_cell(n));
  return c;
}

struct Fixture {
  explicit Fixture(int m) : graph(make_lollipop(m)), complex(build_dconf(graph, m)), field(build_field(complex)) {}
  Graph graph;
  CubeComplex complex;
  GradientField field;
};

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

TEST(Classify, SizeTwoExamples) {
  const Fixture f(2);
  const Graph& g = f.graph;
  EXPECT_EQ(classify_cell(cell_of(g, {"0", "1"}), f.complex).kind, CellKind::critical);

  const CellClass redundant = classify_cell(cell_of(g, {"2", "0"}), f.complex);
  EXPECT_EQ(redundant.kind, CellKind::redundant);
  EXPECT_EQ(f.complex.cell(1, redundant.partner), cell_of(g, {"a2", "0"}));

  EXPECT_EQ(classify_cell(cell_of(g, {"a", "0"}), f.complex).kind, CellKind::critical);
  EXPECT_EQ(classify_cell(cell_of(g, {"a2", "0"}), f.complex).kind, CellKind::collapsible);
}

TEST(Classify, RejectsNonCells) {
  const Fixture f(2);
  EXPECT_THROW(classify_cell(cell_of(f.graph, {"0", "a1"}), f.complex), InvalidInput);
}

TEST(Field, PairingIsAnInvolution) {
  for (int m = 2; m <= 3; ++m) {
    const Fixture f(m);
    for (int d = 0; d <= f.complex.dimension(); ++d) {
      for (int i = 0; i < f.complex.count(d); ++i) {
        const CellClass& c = f.field.at(d, i);
        if (c.kind == CellKind::redundant) {
          const CellClass& up = f.field.at(d + 1, c.partner);
          EXPECT_EQ(up.kind, CellKind::collapsible);
          EXPECT_EQ(up.partner, i);
        } else if (c.kind == CellKind::collapsible) {
          const CellClass& down = f.field.at(d - 1, c.partner);
          EXPECT_EQ(down.kind, CellKind::redundant);
          EXPECT_EQ(down.partner, i);
        }
      }
    }
  }
}

TEST(Field, CriticalCountsAtSmallSizes) {
  EXPECT_EQ(Fixture(2).field.critical(0).size(), 2u);
  EXPECT_EQ(Fixture(3).field.critical(0).size(), 6u);
}

TEST(Field, RequiresLollipop) {
  const CubeComplex c = build_dconf(make_path(4), 2);
  EXPECT_THROW(build_field(c), PreconditionViolation);
}

TEST(Field, EquivariantUnderRotation) {
  const Fixture f(3);
  for (int d = 0; d <= f.complex.dimension(); ++d) {
    for (int i = 0; i < f.complex.count(d); ++i) {
      const ConfCell& c = f.complex.cell(d, i);
      const CellClass& here = f.field.at(d, i);
      for (int k = 1; k < 3; ++k) {
        const int j = f.complex.index_of(rotate(c, k));
        const CellClass& there = f.field.at(d, j);
        ASSERT_EQ(here.kind, there.kind) << f.complex.describe(d, i);
        if (here.kind == CellKind::critical) continue;
        const int pd = here.kind == CellKind::redundant ? d + 1 : d - 1;
        EXPECT_EQ(f.complex.cell(pd, there.partner), rotate(f.complex.cell(pd, here.partner), k));
      }
    }
  }
}

TEST(QuotientField, InheritsKinds) {
  const Fixture f(3);
  const QuotientComplex q = build_quotient(f.complex);
  const GradientField down = build_quotient_field(f.complex, f.field, q);
  EXPECT_EQ(down.critical(0).size(), 2u);
  EXPECT_EQ(down.critical(1).size(), 6u);
  for (int o = 0; o < q.count(1); ++o) {
    EXPECT_EQ(down.at(1, o).kind, f.field.at(1, q.representative(1, o)).kind);
  }
}

TEST(EdgeType, Examples) {
  const Graph two = make_lollipop(2);
  EXPECT_EQ(edge_type(two, cell_of(two, {"a", "2"})), 1);
  EXPECT_EQ(edge_type(two, cell_of(two, {"0", "a"})), 2);
  const Graph three = make_lollipop(3);
  EXPECT_EQ(edge_type(three, cell_of(three, {"0", "a", "3"})), 2);
  EXPECT_EQ(edge_type(three, cell_of(three, {"3", "0", "a"})), 2);
  // (0,a,4) is redundant: vertex 4 is unblocked.
  const CubeComplex c = build_dconf(three, 3);
  EXPECT_EQ(classify_cell(cell_of(three, {"0", "a", "4"}), c).kind, CellKind::redundant);
  EXPECT_THROW(edge_type(three, cell_of(three, {"0", "a", "4"})), InvalidInput);
  EXPECT_EQ(standard_critical_edge(three, 3, 2), cell_of(three, {"0", "a", "3"}));
  EXPECT_EQ(standard_critical_edge(three, 3, 1), cell_of(three, {"a", "3", "4"}));
}

TEST(AssociatedPermutation, Examples) {
  EXPECT_EQ(associated_permutation(std::vector<int>{8, 2, 5, 9, 4, 3}).to_cycle_string(), "(153462)");
  EXPECT_TRUE(associated_permutation(std::vector<int>{1, 4, 7}).is_identity());
}

TEST(AssociatedPermutation, RecoversActingPermutation) {
  const Graph g = make_lollipop(3);
  const ConfCell sorted = cell_of(g, {"0", "2", "4"});
  for (const auto& sigma : Permutation::all(3)) {
    EXPECT_EQ(associated_permutation(g, act(sigma, sorted)), sigma) << sigma.to_cycle_string();
  }
}

TEST(Census, ExactPerType) {
  for (int m = 2; m <= 3; ++m) {
    const Fixture f(m);
    const CriticalCensus census = critical_census(f.complex, f.field);
    EXPECT_EQ(census.by_dimension[0], factorial(m));
    EXPECT_EQ(census.by_dimension[1], m * factorial(m));
    for (std::size_t d = 2; d < census.by_dimension.size(); ++d) EXPECT_EQ(census.by_dimension[d], 0);
    for (long count : census.edges_by_type) EXPECT_EQ(count, factorial(m));
  }
}

TEST(Forest, TreesLabelledByPermutations) {
  for (int m = 2; m <= 3; ++m) {
    const Fixture f(m);
    const Forest forest = build_forest(f.complex, f.field);
    EXPECT_EQ(forest.size(), factorial(m));
    for (int v = 0; v < f.complex.count(0); ++v) {
      const Permutation label = forest.labels.at(static_cast<std::size_t>(forest.tree_of_vertex.at(static_cast<std::size_t>(v))));
      EXPECT_EQ(associated_permutation(f.graph, f.complex.cell(0, v)), label);
    }
  }
}

TEST(Forest, QuotientLabelsAreCanonicalCosets) {
  const Fixture f(3);
  const QuotientComplex q = build_quotient(f.complex);
  const GradientField down = build_quotient_field(f.complex, f.field, q);
  const Forest forest = build_forest(f.complex, q, down);
  ASSERT_EQ(forest.size(), 2);
  std::vector<std::string> labels;
  for (const auto& p : forest.labels) labels.push_back(p.to_cycle_string());
  std::sort(labels.begin(), labels.end());
  EXPECT_EQ(labels, (std::vector<std::string>{"()", "(23)"}));
}

TEST(TargetPermutations, HoldOnAllCriticalEdges) {
  for (int m = 2; m <= 3; ++m) {
    const Fixture f(m);
    const PermutationCheck up = check_target_permutations(f.complex, f.field);
    EXPECT_TRUE(up.ok) << up.failure;
    EXPECT_EQ(up.checked, m * factorial(m));
    const QuotientComplex q = build_quotient(f.complex);
    const PermutationCheck down = check_target_permutations(f.complex, q, build_quotient_field(f.complex, f.field, q));
    EXPECT_TRUE(down.ok) << down.failure;
    EXPECT_EQ(down.checked, m * factorial(m - 1));
  }
}

TEST(Mutation, RootOnlyBlockingBreaksThePairing) {
  const Graph g = make_lollipop(2);
  const CubeComplex c = build_dconf(g, 2);
  auto root_only = [](const Graph& graph, const ConfCell& cell, int position) {
    return graph.vertex_ordinal(cell[static_cast<std::size_t>(position)]) == 0;
  };
  EXPECT_THROW(build_field(c, root_only), StructuralError);
}
